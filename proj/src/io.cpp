#include "brp/io.hpp"

#include "brp/error.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

namespace brp {

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("missing field '") + key + "'");
  return j.at(key);
}

int require_int(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_number_integer()) throw ValidationError(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

std::vector<Rational> rationals_from_json(const Json& j) {
  if (!j.is_array()) throw ValidationError("expected an array of rationals");
  std::vector<Rational> out;
  for (const Json& v : j) out.push_back(coeff_from_json(v));
  return out;
}

Json rationals_to_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const Rational& q : v) out.push_back(to_string(q));
  return out;
}

Polynomial polynomial_from_json(const Json& j, int e) {
  if (!j.is_object()) throw ValidationError("polynomial must be an object of exponents to coefficients");
  Polynomial p(e);
  for (const auto& [key, value] : j.items()) {
    Polynomial::Exponents ex;
    std::stringstream ss(key);
    std::string part;
    while (std::getline(ss, part, ',')) {
      try {
        std::size_t used = 0;
        ex.push_back(std::stoi(part, &used));
        if (used != part.size()) throw std::invalid_argument(part);
      } catch (const std::logic_error&) {
        throw ValidationError("malformed monomial exponents '" + key + "'");
      }
    }
    if (static_cast<int>(ex.size()) != e)
      throw ValidationError("monomial '" + key + "' needs " + std::to_string(e) + " exponents");
    p.add_term(ex, coeff_from_json(value));
  }
  return p;
}

Json polynomial_to_json(const Polynomial& p) {
  Json out = Json::object();
  for (const auto& [ex, c] : p.terms()) {
    std::string key;
    for (std::size_t i = 0; i < ex.size(); ++i) key += (i ? "," : "") + std::to_string(ex[i]);
    out[key] = to_string(c);
  }
  return out;
}

Json resolve(const Json& j, const std::filesystem::path& base_dir) {
  if (j.is_string() && j.get<std::string>() != "exp") return read_json_file(base_dir / j.get<std::string>());
  return j;
}

}  // namespace

Json coeff_to_json(const Rational& c, Mode mode) {
  if (mode == Mode::exact) return to_string(c);
  return static_cast<double>(c);
}

Rational coeff_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number_float()) {
    const double x = j.get<double>();
    if (!std::isfinite(x)) throw ValidationError("non-finite coefficient");
    return Rational(x);
  }
  throw ValidationError("coefficient must be a rational string or a number");
}

Json to_json(const LinCombQ& x, Mode mode) {
  Json out = Json::array();
  for (const auto& [f, c] : x) out.push_back({{"forest", render(f)}, {"coeff", coeff_to_json(c, mode)}});
  return out;
}

Json to_json(const TensorLinCombQ& x, Mode mode) {
  Json out = Json::array();
  for (const auto& [k, c] : x)
    out.push_back({{"left", render(k.first)}, {"right", render(k.second)}, {"coeff", coeff_to_json(c, mode)}});
  return out;
}

LinCombQ lincomb_from_json(const Json& j, int d) {
  if (!j.is_array()) throw ValidationError("linear combination must be an array");
  LinCombQ out;
  for (const Json& term : j) {
    const Json& f = require(term, "forest");
    if (!f.is_string()) throw ValidationError("forest must be a string");
    out.add(parse_forest(f.get<std::string>(), d), coeff_from_json(require(term, "coeff")));
  }
  return out;
}

Json to_json(const FunctionalQ& a, Mode mode) {
  Json out = {{"N", a.truncation()},
              {"d", a.labels()},
              {"mode", mode == Mode::exact ? "exact" : "numeric"},
              {"entries", Json::array()}};
  for (const auto& [f, c] : a.entries())
    out["entries"].push_back({{"forest", render(f)}, {"coeff", coeff_to_json(c, mode)}});
  return out;
}

Json to_json(const BranchedSignature& sig, Mode mode) {
  Json out = to_json(sig.value, mode);
  out["s"] = to_string(sig.s);
  out["t"] = to_string(sig.t);
  return out;
}

FunctionalQ functional_from_json(const Json& j) {
  const int N = require_int(j, "N");
  const int d = require_int(j, "d");
  if (j.contains("mode")) {
    const Json& m = j.at("mode");
    if (m != "exact" && m != "numeric") throw ValidationError("mode must be 'exact' or 'numeric'");
  }
  FunctionalQ out(N, d);
  const Json& entries = require(j, "entries");
  if (!entries.is_array()) throw ValidationError("entries must be an array");
  for (const Json& e : entries) {
    const Json& f = require(e, "forest");
    if (!f.is_string()) throw ValidationError("forest must be a string");
    const Forest forest = parse_forest(f.get<std::string>(), d);
    try {
      out.set(forest, coeff_from_json(require(e, "coeff")));
    } catch (const DomainError& err) {
      throw ValidationError(err.what());
    }
  }
  return out;
}

Json to_json(const PiecewiseLinearPath& path) {
  Json points = Json::array();
  for (const auto& p : path.points()) points.push_back(rationals_to_json(p));
  return {{"d", path.dim()}, {"times", rationals_to_json(path.times())}, {"points", points}};
}

PiecewiseLinearPath path_from_json(const Json& j) {
  const int d = require_int(j, "d");
  std::vector<Rational> times = rationals_from_json(require(j, "times"));
  const Json& pts = require(j, "points");
  if (!pts.is_array()) throw ValidationError("points must be an array");
  std::vector<std::vector<Rational>> points;
  for (const Json& p : pts) {
    points.push_back(rationals_from_json(p));
    if (static_cast<int>(points.back().size()) != d)
      throw ValidationError("every point needs " + std::to_string(d) + " coordinates");
  }
  return PiecewiseLinearPath(std::move(times), std::move(points));
}

Json to_json(const Field& f) {
  if (std::holds_alternative<ExpField>(f)) return "exp";
  const auto& pf = std::get<PolyVectorField>(f);
  Json comps = Json::array();
  for (const PolyMap& fa : pf.fields()) {
    Json c = Json::array();
    for (const Polynomial& p : fa.components()) c.push_back(polynomial_to_json(p));
    comps.push_back(c);
  }
  return {{"e", pf.state_dim()}, {"d", pf.driver_dim()}, {"components", comps}};
}

Field field_from_json(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "exp") return ExpField{};
    throw ValidationError("unknown field '" + j.get<std::string>() + "'");
  }
  const int e = require_int(j, "e");
  const int d = require_int(j, "d");
  if (e < 1 || d < 1) throw ValidationError("field needs e >= 1 and d >= 1");
  const Json& comps = require(j, "components");
  if (!comps.is_array() || static_cast<int>(comps.size()) != d)
    throw ValidationError("components must list d vector fields");
  std::vector<PolyMap> fields;
  for (const Json& fa : comps) {
    if (!fa.is_array() || static_cast<int>(fa.size()) != e)
      throw ValidationError("each vector field needs e polynomial components");
    std::vector<Polynomial> ps;
    for (const Json& p : fa) ps.push_back(polynomial_from_json(p, e));
    fields.emplace_back(std::move(ps));
  }
  return PolyVectorField(e, std::move(fields));
}

ExperimentConfig config_from_json(const Json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw ValidationError("experiment config must be an object");
  ExperimentConfig cfg;
  cfg.field = field_from_json(resolve(require(j, "field"), base_dir));
  cfg.path = path_from_json(resolve(require(j, "path"), base_dir));
  cfg.y0 = rationals_from_json(require(j, "y0"));
  const Json& degrees = require(j, "degrees");
  if (!degrees.is_array()) throw ValidationError("degrees must be an array");
  for (const Json& n : degrees) {
    if (!n.is_number_integer()) throw ValidationError("degrees must be integers");
    cfg.degrees.push_back(n.get<int>());
  }
  if (j.contains("base_point")) cfg.base_point = coeff_from_json(j.at("base_point"));
  else cfg.base_point = cfg.path->start();
  cfg.scales = rationals_from_json(require(j, "scales"));
  if (j.contains("tolerance")) cfg.tolerance = j.at("tolerance").get<double>();
  if (j.contains("p")) cfg.p = j.at("p").get<double>();
  if (j.contains("allow_closed_form")) cfg.allow_closed_form = j.at("allow_closed_form").get<bool>();
  for (const auto& [key, value] : j.items()) {
    static const std::vector<std::string> known{"field", "path", "y0", "degrees", "base_point",
                                                "scales", "tolerance", "p", "allow_closed_form"};
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ValidationError("unknown config field '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

void write_rows_csv(std::ostream& out, const std::vector<RemainderRow>& rows) {
  out << "N,s,t,omega,remainder,slope_window,bound_ratio\n";
  for (const auto& r : rows) {
    out << r.N << ',' << to_string(r.s) << ',' << to_string(r.t) << ',' << to_string(r.omega) << ','
        << to_string(r.remainder) << ',' << to_string(r.slope_window) << ','
        << to_string(r.bound_ratio) << '\n';
  }
}

Json read_json_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ValidationError("cannot open " + file.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("invalid JSON in " + file.string() + ": " + e.what());
  }
}

}  // namespace brp
