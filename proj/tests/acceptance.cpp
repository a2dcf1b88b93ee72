// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "brp/chargroup.hpp"
#include "brp/elemdiff.hpp"
#include "brp/harness.hpp"
#include "brp/hopf.hpp"
#include "brp/signature.hpp"
#include "brp/tree.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <string>

using namespace brp;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, const std::function<Outcome()>& body, double time_limit = 0) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (time_limit > 0 && secs >= time_limit) {
    o.pass = false;
    o.detail += " (over the " + std::to_string(static_cast<int>(time_limit)) + " s budget)";
  }
  failures += !o.pass;
  std::printf("%s  %2d  %-34s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", id, title, secs, o.detail.c_str());
  std::fflush(stdout);
}

std::vector<PiecewiseLinearPath> chen_paths() {
  std::mt19937 rng(20240601);
  std::vector<PiecewiseLinearPath> paths;
  for (int i = 0; i < 10; ++i) paths.push_back(oracle::random_path(rng, 2, 3));
  return paths;
}

/// Knots of the path plus the eighths of [0, 1].
std::vector<Rational> split_grid(const PiecewiseLinearPath& path) {
  std::set<Rational> g(path.times().begin(), path.times().end());
  for (int k = 0; k <= 8; ++k) g.insert(Rational(k, 8));
  return {g.begin(), g.end()};
}

void all_words(const std::vector<Tree>& letters, int n, Word& prefix, std::vector<Word>& out) {
  if (n == 0) {
    out.push_back(prefix);
    return;
  }
  for (const Tree& t : letters) {
    if (t.degree() > n) continue;
    prefix.push_back(t);
    all_words(letters, n - t.degree(), prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

int main() {
  criterion(1, "tree counts A000081, n <= 8", [] {
    const long long expected[] = {1, 1, 2, 4, 9, 20, 48, 115};
    std::ostringstream got;
    bool ok = true;
    for (int n = 1; n <= 8; ++n) {
      const BigInt c = count_trees(n, 1);
      const std::size_t listed = enumerate_trees(n, 1).size();
      const std::size_t brute = oracle::trees_by_parent_arrays(n, 1).size();
      ok = ok && c == expected[n - 1] && listed == brute && BigInt(listed) == c;
      got << c << (n < 8 ? "," : "");
    }
    return Outcome{ok, got.str()};
  }, 5);

  criterion(2, "CK/GL duality, exact", [] {
    const auto r1 = verify_duality_up_to(5, 1);
    const auto r2 = verify_duality_up_to(4, 2);
    std::ostringstream s;
    s << r1.forests_checked << "+" << r2.forests_checked << " forests, "
      << r1.discrepancies.size() + r2.discrepancies.size() << " discrepancies";
    return Outcome{r1.holds() && r2.holds(), s.str()};
  }, 60);

  criterion(3, "recursive coproduct == cuts", [] {
    std::size_t checked = 0, bad = 0;
    for (const auto& [nmax, d] : {std::pair{5, 1}, std::pair{4, 2}})
      for (int n = 1; n <= nmax; ++n)
        for (const Forest& f : enumerate_forests(n, d)) {
          ++checked;
          bad += !(ck_coproduct(f) == ck_coproduct_cuts(f));
        }
    return Outcome{bad == 0, std::to_string(checked) + " forests, " + std::to_string(bad) + " mismatches"};
  });

  criterion(4, "Chen identity, 10 paths d=2 N=4", [] {
    std::size_t splits = 0, bad = 0;
    for (const auto& path : chen_paths()) {
      const auto whole = branched_signature(path, path.start(), path.end(), 4).value;
      for (const Rational& u : split_grid(path)) {
        ++splits;
        const auto left = branched_signature(path, path.start(), u, 4).value;
        const auto right = branched_signature(path, u, path.end(), 4).value;
        bad += !(group_mul(left, right) == whole);
      }
    }
    return Outcome{bad == 0, std::to_string(splits) + " splits, " + std::to_string(bad) + " failures"};
  });

  criterion(5, "sigma-rescaled signatures grouplike", [] {
    std::size_t checked = 0, bad = 0;
    for (const auto& path : chen_paths()) {
      for (const Rational& u : split_grid(path)) {
        if (u == path.start()) continue;
        ++checked;
        const auto sig = branched_signature(path, path.start(), u, 4).value;
        bad += !is_grouplike(sigma_rescale(sig, RescaleDirection::to_grouplike));
      }
    }
    return Outcome{bad == 0, std::to_string(checked) + " signatures, " + std::to_string(bad) + " failures"};
  });

  criterion(6, "F^w = psi_f(product)(I), |w| <= 4", [] {
    std::mt19937 rng(606);
    std::vector<Tree> letters;
    for (int n = 1; n <= 4; ++n)
      for (const Tree& t : enumerate_trees(n, 2)) letters.push_back(t);
    std::vector<Word> words;
    Word prefix;
    for (int n = 0; n <= 4; ++n) all_words(letters, n, prefix, words);
    std::size_t bad = 0;
    for (int trial = 0; trial < 2; ++trial) {
      const PolyVectorField f = oracle::random_field(rng, 2, 2, 2);
      for (const Word& w : words) bad += !check_word_identity(f, w);
    }
    return Outcome{bad == 0, std::to_string(2 * words.size()) + " identities, " + std::to_string(bad) + " failures"};
  });

  criterion(7, "B-series of f(y)=y is exp series", [] {
    const PolyVectorField f(1, {PolyMap({Polynomial::coordinate(1, 0)})});
    const auto path = PiecewiseLinearPath::linear({Rational(1)});
    const auto sig = branched_signature(path, Rational(0), Rational(1), 6);
    Vector<Rational> y0(1);
    y0(0) = 1;
    Rational partial = 1, fact = 1;
    bool ok = true;
    std::string n3;
    for (int N = 1; N <= 6; ++N) {
      fact *= N;
      partial += 1 / fact;
      const Rational b = bseries_increment(f, sig.value, y0, N)(0);
      ok = ok && b == partial;
      if (N == 3) n3 = to_string(b);
    }
    return Outcome{ok, "N=3 gives " + n3};
  });

  criterion(8, "remainder order, logistic field", [] {
    ExperimentConfig cfg;
    const Polynomial y = Polynomial::coordinate(1, 0);
    cfg.field = PolyVectorField(1, {PolyMap({y - y * y})});
    cfg.path = PiecewiseLinearPath::linear({Rational(1)});
    cfg.y0 = {Rational(1, 2)};
    cfg.degrees = {1, 2, 3, 4};
    // The solution through y0 = 1/2 at t = 0 is odd about that point, which kills
    // every second Taylor coefficient there; expand at s = 1/2 instead.
    cfg.base_point = Rational(1, 2);
    for (int k = 3; k <= 10; ++k) cfg.scales.emplace_back(1, 1 << k);
    cfg.tolerance = 1e-12;
    const auto rows = remainder_experiment(cfg);
    bool ok = true;
    std::ostringstream s;
    for (const auto& [N, slope] : order_fit_by_degree(rows)) {
      ok = ok && slope >= N + 0.8 && slope <= N + 1.2;
      s << "N=" << N << ":" << to_string(std::round(slope * 1000) / 1000) << " ";
    }
    return Outcome{ok, s.str()};
  }, 60);

  criterion(9, "optimality ratios, t = 0.05", [] {
    bool ok = true;
    std::ostringstream s;
    for (const auto& r : optimality_probe(6, Rational(1, 20))) {
      ok = ok && r.ratio >= 0.85 && r.ratio <= 1.01;
      s << to_string(std::round(r.ratio * 10000) / 10000) << " ";
    }
    return Outcome{ok, s.str()};
  });

  criterion(10, "neo-classical inequality, constant p", [] {
    bool ok = true;
    double worst_equality = 0;
    std::size_t checked = 0;
    for (double p : {1.0, 1.5, 2.0, 3.0})
      for (int n = 0; n <= 10; ++n)
        for (double a : {0.0, 0.25, 0.5, 1.0, 2.0})
          for (double b : {0.0, 0.25, 0.5, 1.0, 2.0}) {
            const auto r = neoclassical_check(p, a, b, n);
            ++checked;
            ok = ok && r.holds;
            if (p == 1.0 && r.rhs > 0)
              worst_equality = std::max(worst_equality, std::abs(r.lhs - r.rhs) / r.rhs);
          }
    ok = ok && worst_equality <= 1e-12;
    return Outcome{ok, std::to_string(checked) + " points, p=1 rel. gap " + to_string(worst_equality)};
  });

  criterion(11, "free generator counts", [] {
    const auto l1 = free_generator_counts(4, 1);
    const auto l2 = free_generator_counts(2, 2);
    bool ok = l1 == std::vector<BigInt>{1, 1, 1, 2} && l2 == std::vector<BigInt>{2, 3};
    const auto s1 = oracle::generator_counts_by_series(4, 1);
    const auto s2 = oracle::generator_counts_by_series(2, 2);
    for (int i = 0; i < 4; ++i) ok = ok && l1[i] == s1[i];
    for (int i = 0; i < 2; ++i) ok = ok && l2[i] == s2[i];
    const auto g1 = extract_free_generators(4, 1);
    const auto g2 = extract_free_generators(2, 2);
    for (int i = 0; i < 4; ++i) ok = ok && BigInt(g1.generators[i].size()) == l1[i];
    for (int i = 0; i < 2; ++i) ok = ok && BigInt(g2.generators[i].size()) == l2[i];
    return Outcome{ok, "d=1: 1,1,1,2  d=2: 2,3"};
  });

  criterion(12, "word counts and K_p bound", [] {
    const auto l = free_generator_counts(2, 1);
    const auto r = word_counts(l, 1, 12);
    const bool ok = l == std::vector<BigInt>{1, 1} &&
                    std::vector<BigInt>(r.counts.begin(), r.counts.begin() + 5) ==
                        std::vector<BigInt>{1, 1, 2, 3, 5} &&
                    r.kp == 2 && r.all_bounds_hold();
    return Outcome{ok, "K_2=" + std::to_string(r.kp) + ", T_12=" + r.counts[12].str()};
  });

  criterion(13, "factorial-decay report", [] {
    std::mt19937 rng(1313);
    const auto path = oracle::random_path(rng, 2, 3);
    const auto alphabet = extract_free_generators(1, 2).alphabet(1);
    const auto report = factorial_decay_report(path, 4, 3, alphabet);
    const bool ok = !report.rows.empty() && std::isfinite(report.fitted_constant);
    return Outcome{ok, std::to_string(report.rows.size()) + " rows, fitted constant " +
                           to_string(report.fitted_constant) + " (report only)"};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
