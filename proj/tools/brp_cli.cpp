// brp: command-line access to trees, the two Hopf structures, signatures and
// the remainder harness. Exit codes: 0 ok, 1 invalid input, 2 failed check.

#include "brp/chargroup.hpp"
#include "brp/elemdiff.hpp"
#include "brp/error.hpp"
#include "brp/harness.hpp"
#include "brp/hopf.hpp"
#include "brp/io.hpp"
#include "brp/signature.hpp"
#include "brp/tree.hpp"

#include <CLI11.hpp>

#include <climits>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>

namespace {

using namespace brp;

constexpr int exit_invalid = 1;
constexpr int exit_check = 2;

void fail(const std::string& kind, const std::string& msg) {
  std::cerr << "error[" << kind << "]: " << msg << '\n';
}

Mode parse_mode(const std::string& m) { return m == "numeric" ? Mode::numeric : Mode::exact; }

void print(const Json& j) { std::cout << j.dump(2) << '\n'; }

int cmd_trees(int n, int d, bool count_only) {
  if (n < 0 || d < 1) throw DomainError("trees needs n >= 0 and d >= 1");
  const BigInt expected = count_trees(n, d);
  if (!count_only) {
    const auto trees = enumerate_trees(n, d);
    for (const Tree& t : trees) std::cout << render(t) << '\n';
    if (BigInt(trees.size()) != expected)
      throw CheckFailure("enumeration gave " + std::to_string(trees.size()) +
                         " trees, recurrence gives " + expected.str());
  }
  std::cout << expected << '\n';
  return 0;
}

int cmd_duality(int n, int d) {
  const DualityReport r = verify_duality_up_to(n, d);
  std::cout << "forests " << r.forests_checked << " pairs " << r.pairs_checked << " discrepancies "
            << r.discrepancies.size() << '\n';
  for (const auto& x : r.discrepancies) {
    std::cout << render(x.rho) << " : " << render(x.left) << " (x) " << render(x.right)
              << " coproduct " << to_string(x.coproduct_coeff) << " dual " << to_string(x.dual_coeff)
              << '\n';
  }
  if (!r.holds()) throw CheckFailure("duality violated for " + std::to_string(r.discrepancies.size()) + " pairs");
  return 0;
}

int cmd_sig(const std::string& file, int N, const std::vector<std::string>& interval, Mode mode) {
  const auto path = path_from_json(read_json_file(file));
  Rational s = path.start(), t = path.end();
  if (!interval.empty()) {
    s = parse_rational(interval.at(0));
    t = parse_rational(interval.at(1));
  }
  print(to_json(branched_signature(path, s, t, N), mode));
  return 0;
}

int cmd_grouplike(const std::string& file, Mode mode) {
  const FunctionalQ sig = functional_from_json(read_json_file(file));
  if (!is_character(sig)) throw ValidationError("input is not a character");
  const FunctionalQ b = sigma_rescale(sig, RescaleDirection::to_grouplike);
  if (!is_grouplike(b)) throw CheckFailure("sigma-rescaled character is not grouplike");
  print(to_json(b, mode));
  return 0;
}

int cmd_taylor(const std::string& field_file, const std::string& path_file, int N,
               const std::vector<std::string>& y0_text, const std::vector<std::string>& interval,
               bool with_reference, Mode mode) {
  const Field field = field_from_json(read_json_file(field_file));
  const auto path = path_from_json(read_json_file(path_file));
  if (driver_dim(field) != path.dim()) throw ValidationError("field and path driver dimensions differ");
  std::vector<Rational> y0;
  for (const auto& v : y0_text) y0.push_back(parse_rational(v));
  if (static_cast<int>(y0.size()) != state_dim(field)) throw ValidationError("--y0 has the wrong dimension");
  Rational s = path.start(), t = path.end();
  if (!interval.empty()) {
    s = parse_rational(interval.at(0));
    t = parse_rational(interval.at(1));
  }
  const auto sig = branched_signature(path, s, t, N);

  Json out = {{"N", N}, {"s", to_string(s)}, {"t", to_string(t)}};
  Vector<HighPrec> approx;
  if (const auto* pf = std::get_if<PolyVectorField>(&field); pf && mode == Mode::exact) {
    Vector<Rational> y(static_cast<Eigen::Index>(y0.size()));
    for (std::size_t i = 0; i < y0.size(); ++i) y(static_cast<Eigen::Index>(i)) = y0[i];
    const Vector<Rational> b = bseries_increment(*pf, sig.value, y, N);
    Json vals = Json::array();
    approx.resize(b.size());
    for (Eigen::Index i = 0; i < b.size(); ++i) {
      vals.push_back(to_string(b(i)));
      approx(i) = HighPrec(b(i));
    }
    out["bseries"] = vals;
  } else {
    Vector<HighPrec> y(static_cast<Eigen::Index>(y0.size()));
    for (std::size_t i = 0; i < y0.size(); ++i) y(static_cast<Eigen::Index>(i)) = HighPrec(y0[i]);
    approx = std::holds_alternative<ExpField>(field)
                 ? Vector<HighPrec>::Constant(1, exp_field_bseries_increment(sig.value, y(0), N))
                 : bseries_increment(std::get<PolyVectorField>(field), sig.value, y, N);
    Json vals = Json::array();
    for (Eigen::Index i = 0; i < approx.size(); ++i) vals.push_back(static_cast<double>(approx(i)));
    out["bseries"] = vals;
  }
  if (with_reference) {
    Vector<HighPrec> y(static_cast<Eigen::Index>(y0.size()));
    for (std::size_t i = 0; i < y0.size(); ++i) y(static_cast<Eigen::Index>(i)) = HighPrec(y0[i]);
    const FlowResult ref = flow(field, path, y, s, t);
    Json vals = Json::array();
    HighPrec sq = 0;
    for (Eigen::Index i = 0; i < ref.state.size(); ++i) {
      vals.push_back(static_cast<double>(ref.state(i)));
      sq += (ref.state(i) - approx(i)) * (ref.state(i) - approx(i));
    }
    out["reference"] = vals;
    out["remainder"] = static_cast<double>(HighPrec(sqrt(sq)));
    out["omega"] = path.one_variation(s, t);
  }
  print(out);
  return 0;
}

int cmd_remainder(const std::string& file, const std::string& csv) {
  const ExperimentConfig cfg =
      config_from_json(read_json_file(file), std::filesystem::path(file).parent_path());
  const auto rows = remainder_experiment(cfg);
  if (csv.empty() || csv == "-") {
    write_rows_csv(std::cout, rows);
    return 0;
  }
  std::ofstream out(csv);
  if (!out) throw ValidationError("cannot write " + csv);
  write_rows_csv(out, rows);
  for (const auto& [N, slope] : order_fit_by_degree(rows))
    std::cout << "N " << N << " slope " << to_string(slope) << " expected " << N + 1 << '\n';
  return 0;
}

int cmd_optimality(int n_max, const std::string& t) {
  std::cout << "N,t,remainder,bound,ratio,bseries_remainder\n";
  for (const auto& r : optimality_probe(n_max, parse_rational(t))) {
    std::cout << r.N << ',' << to_string(r.t) << ',' << to_string(r.remainder) << ','
              << to_string(r.bound) << ',' << to_string(r.ratio) << ',' << to_string(r.bseries_remainder)
              << '\n';
  }
  return 0;
}

int cmd_neoclassical(const std::vector<double>& ps, int n_max, const std::vector<std::string>& grid,
                     const std::string& constant) {
  const std::map<std::string, NeoClassicalConstant> constants{
      {"1", NeoClassicalConstant::one}, {"p", NeoClassicalConstant::p}, {"p2", NeoClassicalConstant::p_squared}};
  if (!constants.contains(constant)) throw ValidationError("--constant must be 1, p or p2");
  const auto c = constants.at(constant);
  std::vector<double> values;
  for (const auto& g : grid) values.push_back(static_cast<double>(parse_rational(g)));
  std::size_t failures = 0;
  std::cout << "p,n,a,b,lhs,rhs,holds\n";
  for (double p : ps)
    for (int n = 0; n <= n_max; ++n)
      for (double a : values)
        for (double b : values) {
          const auto r = neoclassical_check(p, a, b, n, c);
          failures += !r.holds;
          std::cout << to_string(p) << ',' << n << ',' << to_string(a) << ',' << to_string(b) << ','
                    << to_string(r.lhs) << ',' << to_string(r.rhs) << ',' << (r.holds ? 1 : 0) << '\n';
        }
  if (failures) throw CheckFailure(std::to_string(failures) + " grid points violate the inequality");
  return 0;
}

int cmd_freegens(int maxdeg, int d) {
  const GeneratorTable table = extract_free_generators(maxdeg, d);
  for (int n = 1; n <= table.max_degree(); ++n) {
    std::cout << "degree " << n << " count " << table.counts[n - 1] << " :";
    for (const Tree& g : table.generators[n - 1]) std::cout << ' ' << render(g);
    std::cout << '\n';
  }
  return 0;
}

int cmd_wordbound(double p, int d, int n) {
  if (!(p >= 1)) throw DomainError("wordbound needs p >= 1");
  if (d < 1 || n < 0) throw DomainError("wordbound needs d >= 1 and n >= 0");
  const int floor_p = static_cast<int>(std::floor(p));
  const auto l = free_generator_counts(floor_p, 1);
  const WordCountReport r = word_counts(l, d, n);
  std::cout << "l";
  for (const auto& x : l) std::cout << ' ' << x;
  std::cout << "\nK_p " << r.kp << '\n';
  for (int k = 0; k <= n; ++k)
    std::cout << "T_" << k << ' ' << r.counts[k] << (r.bound_holds[k] ? "" : " exceeds (K_p d)^n") << '\n';
  if (!r.all_bounds_hold()) throw CheckFailure("word count bound violated");
  return 0;
}

int cmd_decay(const std::string& file, int N, int levels, double p) {
  const auto path = path_from_json(read_json_file(file));
  const auto alphabet = extract_free_generators(std::max(1, static_cast<int>(std::floor(p))), path.dim())
                            .alphabet(static_cast<int>(std::floor(p)));
  const DecayReport r = factorial_decay_report(path, N, levels, alphabet, p);
  std::cout << "beta " << to_string(r.beta) << "\nfitted_constant " << to_string(r.fitted_constant)
            << "\ns,t,word,degree,value,omega,bound_shape,ratio\n";
  for (const auto& row : r.rows) {
    std::string word;
    for (const Tree& t : row.word) word += (word.empty() ? "" : " ") + render(t);
    std::cout << to_string(row.s) << ',' << to_string(row.t) << ",\"" << word << "\"," << row.word_degree
              << ',' << to_string(row.value) << ',' << to_string(row.omega) << ','
              << to_string(row.bound_shape) << ',' << to_string(row.ratio) << '\n';
  }
  return 0;
}

int run(int argc, char** argv) {
  CLI::App app{"Branched rough path toolkit: trees, Hopf algebras, signatures, Taylor remainders"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  // Label range when parsing free-standing forests; labels are checked against it.
  int label_d = INT_MAX;
  // Algebra subcommands default to exact output, the harness-facing ones to numeric.
  std::map<CLI::App*, std::string> modes;
  auto add_mode = [&](CLI::App* sub, const char* def) {
    modes[sub] = def;
    sub->add_option("--mode", modes[sub], "exact or numeric")->check(CLI::IsMember({"exact", "numeric"}));
  };

  int n = 0, d = 1;
  bool count_only = false;
  auto* trees = app.add_subcommand("trees", "enumerate trees of degree n over labels 1..d, then their count");
  trees->add_option("n", n)->required();
  trees->add_option("d", d)->required();
  trees->add_flag("--count", count_only, "print only the count");

  std::string forest_a, forest_b;
  auto* sigma = app.add_subcommand("sigma", "symmetry factor of a forest");
  sigma->add_option("FOREST", forest_a)->required();
  sigma->add_option("--d", label_d, "largest admissible label");

  bool use_cuts = false;
  auto* ck = app.add_subcommand("ck", "Connes-Kreimer coproduct, branches (x) trunk");
  ck->add_option("FOREST", forest_a)->required();
  ck->add_option("--d", label_d, "largest admissible label");
  ck->add_flag("--cuts", use_cuts, "enumerate admissible cuts instead of the recursion");
  add_mode(ck, "exact");

  auto* gl = app.add_subcommand("gl", "Grossman-Larson product A * B");
  gl->add_option("A", forest_a)->required();
  gl->add_option("B", forest_b)->required();
  gl->add_option("--d", label_d, "largest admissible label");
  add_mode(gl, "exact");

  auto* duality = app.add_subcommand("duality", "check the CK/GL duality on all forests up to degree n");
  duality->add_option("n", n)->required();
  duality->add_option("d", d)->required();

  std::string file_a, file_b, out_file;
  int N = 0;
  std::vector<std::string> interval, y0;
  auto* sig = app.add_subcommand("sig", "branched signature of a piecewise-linear path");
  sig->add_option("PATH", file_a)->required()->check(CLI::ExistingFile);
  sig->add_option("--N", N)->required();
  sig->add_option("--interval", interval)->expected(2);
  add_mode(sig, "exact");

  auto* grouplike = app.add_subcommand("grouplike", "sigma-rescale a character and check it is grouplike");
  grouplike->add_option("SIG", file_a)->required()->check(CLI::ExistingFile);
  add_mode(grouplike, "exact");

  bool with_reference = false;
  auto* taylor = app.add_subcommand("taylor", "degree-N tree expansion of the RDE solution");
  taylor->add_option("FIELD", file_a)->required()->check(CLI::ExistingFile);
  taylor->add_option("PATH", file_b)->required()->check(CLI::ExistingFile);
  taylor->add_option("--N", N)->required();
  taylor->add_option("--y0", y0)->required();
  taylor->add_option("--interval", interval)->expected(2);
  taylor->add_flag("--reference", with_reference, "also solve numerically and report the remainder");
  add_mode(taylor, "numeric");

  auto* remainder = app.add_subcommand("remainder", "remainder-order experiment, rows as CSV");
  remainder->add_option("CONFIG", file_a)->required()->check(CLI::ExistingFile);
  remainder->add_option("-o", out_file, "CSV output (default stdout)");

  int n_max = 0;
  std::string t_text = "1/20";
  auto* optimality = app.add_subcommand("optimality", "exponential-field remainder against t^(N+1)/(N+1)");
  optimality->add_option("--Nmax", n_max)->required();
  optimality->add_option("--t", t_text);

  std::vector<double> ps;
  std::vector<std::string> grid{"0", "1/4", "1/2", "1", "2"};
  std::string constant = "p";
  auto* neo = app.add_subcommand("neoclassical", "neo-classical inequality over a grid of a, b");
  neo->add_option("--p", ps)->required();
  neo->add_option("--n", n)->required();
  neo->add_option("--grid", grid);
  neo->add_option("--constant", constant, "p (sharp), p2, or 1 to exhibit failures");

  int maxdeg = 0;
  auto* freegens = app.add_subcommand("freegens", "free generators of the GL algebra by degree");
  freegens->add_option("--maxdeg", maxdeg)->required();
  freegens->add_option("--d", d)->required();

  double p = 1;
  auto* wordbound = app.add_subcommand("wordbound", "word counts T_n against (K_p d)^n");
  wordbound->add_option("--p", p)->required();
  wordbound->add_option("--d", d)->required();
  wordbound->add_option("--n", n)->required();

  int levels = 0;
  auto* decay = app.add_subcommand("decay", "factorial-decay report over dyadic subintervals");
  decay->add_option("PATH", file_a)->required()->check(CLI::ExistingFile);
  decay->add_option("--N", N)->required();
  decay->add_option("--levels", levels)->required();
  decay->add_option("--p", p);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    fail("usage", e.what());
    return exit_invalid;
  }

  Mode mode = Mode::exact;
  for (const auto& [sub, text] : modes)
    if (sub->parsed()) mode = parse_mode(text);
  if (trees->parsed()) return cmd_trees(n, d, count_only);
  if (sigma->parsed()) {
    std::cout << symmetry_factor(parse_forest(forest_a, label_d)) << '\n';
    return 0;
  }
  if (ck->parsed()) {
    const Forest f = parse_forest(forest_a, label_d);
    print(to_json(use_cuts ? ck_coproduct_cuts(f) : ck_coproduct(f), mode));
    return 0;
  }
  if (gl->parsed()) {
    print(to_json(gl_product(parse_forest(forest_a, label_d), parse_forest(forest_b, label_d)), mode));
    return 0;
  }
  if (duality->parsed()) return cmd_duality(n, d);
  if (sig->parsed()) return cmd_sig(file_a, N, interval, mode);
  if (grouplike->parsed()) return cmd_grouplike(file_a, mode);
  if (taylor->parsed()) return cmd_taylor(file_a, file_b, N, y0, interval, with_reference, mode);
  if (remainder->parsed()) return cmd_remainder(file_a, out_file);
  if (optimality->parsed()) return cmd_optimality(n_max, t_text);
  if (neo->parsed()) return cmd_neoclassical(ps, n, grid, constant);
  if (freegens->parsed()) return cmd_freegens(maxdeg, d);
  if (wordbound->parsed()) return cmd_wordbound(p, d, n);
  if (decay->parsed()) return cmd_decay(file_a, N, levels, p);
  return exit_invalid;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const brp::ParseError& e) {
    fail("parse", e.what());
  } catch (const brp::ResourceLimit& e) {
    fail("resource", e.what());
  } catch (const brp::ValidationError& e) {
    fail("validation", e.what());
  } catch (const nlohmann::json::exception& e) {
    fail("validation", e.what());
  } catch (const brp::CheckFailure& e) {
    fail("check", e.what());
    return exit_check;
  } catch (const brp::NumericalError& e) {
    fail("numerical", e.what());
    return exit_check;
  }
  return exit_invalid;
}
