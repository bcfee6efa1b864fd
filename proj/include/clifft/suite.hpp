#pragma once

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "clifft/algebra.hpp"
#include "clifft/corpus.hpp"
#include "clifft/expr.hpp"
#include "clifft/expr_corpus.hpp"
#include "clifft/field.hpp"
#include "clifft/grid.hpp"
#include "clifft/roots.hpp"
#include "clifft/transform.hpp"
#include "clifft/uncertainty.hpp"

// Full verification battery. Every tolerance is pinned here; callers only
// format the results.

namespace clifft::suite {

struct CriterionResult {
  int index;
  std::string name;
  bool pass;
  std::string detail;
};

namespace detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

inline Multivector random_int_mv(const Signature& sig, std::mt19937& rng) {
  Multivector m(sig);
  for (std::size_t mask = 0; mask < sig.blade_count(); ++mask) {
    m[static_cast<blade_t>(mask)] = static_cast<double>(static_cast<int>(rng() % 17) - 8);
  }
  return m;
}

inline double sup_abs_diff(const Multivector& a, const Multivector& b) {
  double worst = 0.0;
  const auto ca = a.coeffs();
  const auto cb = b.coeffs();
  for (std::size_t k = 0; k < ca.size(); ++k) {
    worst = std::max(worst, std::abs(ca[k] - cb[k]));
  }
  return worst;
}

inline SampledField gaussian_field(const Signature& sig, const Grid& g, double t) {
  SampledField f(sig, g);
  std::vector<int> idx(g.dim());
  for (std::size_t node = 0; node < f.node_count(); ++node) {
    g.unflatten(node, idx);
    double s = 0.0;
    for (int d = 0; d < g.dim(); ++d) {
      const double x = g.coord(d, idx[d]);
      s += x * x;
    }
    f.at(node, 0) = std::exp(-t * s);
  }
  return f;
}

inline Multivector random_vector(const Signature& sig, std::mt19937& rng, double amp) {
  std::uniform_real_distribution<double> comp(-amp, amp);
  std::vector<double> xs(sig.dim());
  for (double& x : xs) x = comp(rng);
  return make_vector(sig, xs);
}

struct FieldCorpus {
  Signature sig;
  ValidatedRoot root;
  Grid grid;
  std::vector<SampledField> fields;
};

// Gaussian plus 20 random Hermite-Gaussian fields per dimension.
inline FieldCorpus corpus_1d() {
  const Signature sig(0, 1);
  const Grid g({-8.0}, {8.0}, {256});
  FieldCorpus c{sig, validate_root(Multivector::basis(sig, 0b1)), g, {}};
  c.fields.push_back(gaussian_field(sig, g, 0.5));
  for (auto& f : hermite_corpus(sig, g, 20, 7)) c.fields.push_back(std::move(f));
  return c;
}

inline FieldCorpus corpus_2d() {
  const Signature sig(0, 2);
  const Grid g({-6.0, -6.0}, {6.0, 6.0}, {64, 64});
  FieldCorpus c{sig, validate_root(Multivector::basis(sig, 0b11)), g, {}};
  c.fields.push_back(gaussian_field(sig, g, 0.5));
  for (auto& f : hermite_corpus(sig, g, 20, 8)) c.fields.push_back(std::move(f));
  return c;
}

}  // namespace detail

/// Generator relations, associativity, reverse anti-automorphism, the
/// scalar-part identity for the coefficient pairing, and Cauchy-Schwarz on
/// random integer-coefficient multivectors. Integer inputs keep every check
/// exact, so the bound is met with no slack consumed.
inline CriterionResult algebra_exactness() {
  constexpr double kTol = 1e-12;
  constexpr int kPairs = 10'000;
  double worst = 0.0;
  int sigs = 0;

  for (int n = 1; n <= 6; ++n) {
    for (int p = 0; p <= n; ++p) {
      const Signature sig(p, n - p);
      ++sigs;

      for (int k = 1; k <= n; ++k) {
        for (int l = 1; l <= n; ++l) {
          const auto ek = Multivector::basis(sig, blade_t{1} << (k - 1));
          const auto el = Multivector::basis(sig, blade_t{1} << (l - 1));
          Multivector anti = ek * el;
          anti += el * ek;
          Multivector expect(sig);
          if (k == l) expect[0] = 2.0 * sig.metric(k);
          worst = std::max(worst, detail::sup_abs_diff(anti, expect));
        }
      }

      std::mt19937 rng(1000 + 16 * n + p);
      for (int t = 0; t < kPairs; ++t) {
        const auto M = detail::random_int_mv(sig, rng);
        const auto N = detail::random_int_mv(sig, rng);
        const auto P = detail::random_int_mv(sig, rng);

        const auto MN = M * N;
        worst = std::max(worst, detail::sup_abs_diff(MN * P, M * (N * P)));
        worst = std::max(worst, detail::sup_abs_diff(principal_reverse(MN),
                                                     principal_reverse(N) * principal_reverse(M)));

        const double dot = coeff_dot(M, N);
        worst = std::max(worst, std::abs(dot - grade_project(M * principal_reverse(N), 0)[0]));
        worst = std::max(worst, std::max(0.0, dot * dot - coeff_dot(M, M) * coeff_dot(N, N)));
      }
    }
  }

  return {1, "algebra-exactness",
          worst <= kTol,
          std::to_string(sigs) + " signatures x " + std::to_string(kPairs) +
              " triples, max residue " + detail::num(worst)};
}

/// Commuting/anticommuting decomposition against every enumerated blade root.
inline CriterionResult split_identities() {
  constexpr double kTol = 1e-12;
  constexpr int kTrials = 1'000;
  double worst = 0.0;
  int roots = 0;

  for (int n = 1; n <= 6; ++n) {
    for (int p = 0; p <= n; ++p) {
      const Signature sig(p, n - p);
      const auto sig_roots = enumerate_blade_roots(sig);
      roots += static_cast<int>(sig_roots.size());
      if (sig_roots.empty()) continue;

      std::mt19937 rng(2000 + 16 * n + p);
      for (int t = 0; t < kTrials; ++t) {
        const auto A = detail::random_int_mv(sig, rng);
        for (const auto& r : sig_roots) {
          const auto [plus, minus] = split_commuting(A, r);
          Multivector sum = plus;
          sum += minus;
          worst = std::max(worst, detail::sup_abs_diff(sum, A));
          worst = std::max(worst, detail::sup_abs_diff(r.i() * plus, plus * r.i()));
          worst = std::max(worst, detail::sup_abs_diff(r.i() * minus, -(minus * r.i())));
        }
      }
    }
  }

  return {2, "split-identities",
          worst <= kTol,
          std::to_string(roots) + " roots x " + std::to_string(kTrials) +
              " multivectors, max residue " + detail::num(worst)};
}

/// Gaussians transform to Gaussians: e^{-x^2/2} maps to sqrt(2pi) e^{-w^2/2}
/// and e^{-x^2} maps to sqrt(pi) e^{-w^2/4}.
inline CriterionResult gaussian_eigenfunction() {
  constexpr double kTol = 1e-6;
  const Signature sig(0, 1);
  const auto r = validate_root(Multivector::basis(sig, 0b1));
  const Grid g({-10.0}, {10.0}, {512});

  const auto sup_err = [&](double t, double amp, double decay) {
    const auto F = cft(detail::gaussian_field(sig, g, t), r);
    const Grid& wg = F.data.grid();
    double worst = 0.0;
    for (int k = 0; k < wg.extent(0); ++k) {
      const double w = wg.coord(0, k);
      if (std::abs(w) > 5.0) continue;
      const std::size_t node = static_cast<std::size_t>(k);
      const double c = F.data.at(node, 0) - amp * std::exp(-decay * w * w);
      const double s = F.data.at(node, 1);
      worst = std::max(worst, std::sqrt(c * c + s * s));
    }
    return worst;
  };

  const double e1 = sup_err(0.5, std::sqrt(2.0 * M_PI), 0.5);
  const double e2 = sup_err(1.0, std::sqrt(M_PI), 0.25);
  const double worst = std::max(e1, e2);
  return {3, "gaussian-eigenfunction", worst <= kTol,
          "sup error " + detail::num(worst) + " over |w| <= 5"};
}

/// Energy identity at n = 1 and n = 2 on the Gaussian-plus-Hermite corpus.
inline CriterionResult parseval_energy() {
  double worst = 0.0;
  bool pass = true;
  int count = 0;
  for (const auto& c : {detail::corpus_1d(), detail::corpus_2d()}) {
    for (const auto& f : c.fields) {
      const auto rep = check_parseval(f, c.root);
      pass = pass && rep.pass;
      worst = std::max(worst, std::abs(rep.ratio - 1.0));
      ++count;
    }
  }
  return {4, "parseval-energy", pass,
          std::to_string(count) + " fields, worst relative deviation " + detail::num(worst)};
}

/// Round trip through the transform and its inverse on the same corpus.
inline CriterionResult inversion_round_trip() {
  double worst = 0.0;
  bool pass = true;
  int count = 0;
  for (const auto& c : {detail::corpus_1d(), detail::corpus_2d()}) {
    for (const auto& f : c.fields) {
      const auto rep = check_inversion(f, c.root);
      pass = pass && rep.pass;
      worst = std::max(worst, rep.lhs);
      ++count;
    }
  }
  return {5, "inversion-round-trip", pass,
          std::to_string(count) + " fields, worst sup error " + detail::num(worst)};
}

/// FFT path agrees with literal quadrature, then beats it by at least 20x
/// at N = 4096.
inline CriterionResult fast_path_oracle() {
  constexpr double kRelTol = 1e-9;
  constexpr double kMinSpeedup = 20.0;
  constexpr double kMaxDirectSeconds = 60.0;

  double worst_rel = 0.0;
  {
    const Signature sig(0, 1);
    const auto r = validate_root(Multivector::basis(sig, 0b1));
    const Grid g({-8.0}, {8.0}, {64});
    for (auto& f : hermite_corpus(sig, g, 3, 21)) {
      const auto fast = cft_fast(f, r);
      const auto direct = cft_direct(f, r);
      worst_rel = std::max(
          worst_rel, sup_difference(fast.data, direct.data) / sup_modulus(direct.data));
    }
  }
  {
    const Signature sig(0, 2);
    const auto r = validate_root(Multivector::basis(sig, 0b11));
    const Grid g({-6.0, -6.0}, {6.0, 6.0}, {32, 32});
    for (auto& f : hermite_corpus(sig, g, 3, 22)) {
      const auto fast = cft_fast(f, r);
      const auto direct = cft_direct(f, r);
      worst_rel = std::max(
          worst_rel, sup_difference(fast.data, direct.data) / sup_modulus(direct.data));
    }
  }

  const Signature sig(0, 1);
  const auto r = validate_root(Multivector::basis(sig, 0b1));
  const Grid big({-8.0}, {8.0}, {4096});
  const auto f = detail::gaussian_field(sig, big, 0.5);

  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  const auto direct = cft_direct(f, r);
  const auto t1 = clock::now();
  double fast_best = 1e300;
  Spectrum fast = cft_fast(f, r);
  for (int rep = 0; rep < 5; ++rep) {
    const auto ta = clock::now();
    fast = cft_fast(f, r);
    const auto tb = clock::now();
    fast_best = std::min(fast_best, std::chrono::duration<double>(tb - ta).count());
  }
  const double direct_s = std::chrono::duration<double>(t1 - t0).count();
  const double speedup = direct_s / std::max(fast_best, 1e-9);
  // keeps the timing honest: the benchmarked transforms must agree too
  worst_rel = std::max(worst_rel,
                       sup_difference(fast.data, direct.data) / sup_modulus(direct.data));

  const bool pass =
      worst_rel <= kRelTol && speedup >= kMinSpeedup && direct_s <= kMaxDirectSeconds;
  return {6, "fast-path-oracle", pass,
          "rel error " + detail::num(worst_rel) + ", speedup " + detail::num(speedup) +
              "x (direct " + detail::num(direct_s) + " s)"};
}

/// Transforming a directional derivative multiplies the spectrum by the
/// frequency pairing; the residual shrinks at second order in h.
inline CriterionResult derivative_convergence() {
  constexpr double kTolCoarse = 5e-3;
  constexpr double kTolFine = 1.5e-3;
  const Signature sig(0, 1);
  const auto r = validate_root(Multivector::basis(sig, 0b1));
  const auto dev_at = [&](int n) {
    const Grid g({-10.0}, {10.0}, {n});
    const auto f = detail::gaussian_field(sig, g, 0.5);
    return check_derivative_property(f, Multivector::basis(sig, 0b1), r).lhs;
  };
  const double coarse = dev_at(512);
  const double fine = dev_at(1024);
  const bool pass = coarse <= kTolCoarse && fine <= kTolFine;
  return {7, "derivative-convergence", pass,
          "L2 deviation " + detail::num(coarse) + " at N=512, " + detail::num(fine) +
              " at N=1024"};
}

/// Second-moment lower bounds: equality family, random directional sweep,
/// and the radial full-norm form.
inline CriterionResult heisenberg_suite() {
  constexpr double kEqTol = 1e-4;
  constexpr double kFullTol1 = 1e-4;
  constexpr double kFullTol2 = 1e-3;

  bool pass = true;
  std::string fail;

  {
    const Signature sig(0, 1);
    const auto r = validate_root(Multivector::basis(sig, 0b1));
    const Grid g({-10.0}, {10.0}, {512});
    for (double k : {0.25, 0.5, 1.0, 2.0}) {
      for (int c0 = 0; c0 < 2; ++c0) {
        SampledField f(sig, g);
        for (int j = 0; j < g.extent(0); ++j) {
          const double x = g.coord(0, j);
          const double env = std::exp(-k * x * x);
          const std::size_t node = static_cast<std::size_t>(j);
          if (c0 == 0) {
            f.at(node, 0) = env;
          } else {
            f.at(node, 0) = 2.0 * env;  // amplitude 2 + e1
            f.at(node, 1) = env;
          }
        }
        const auto rep = heisenberg_equality_gap(f, r, Multivector::basis(sig, 0b1));
        if (std::abs(rep.ratio - 1.0) > kEqTol) {
          pass = false;
          if (fail.empty()) fail = "equality gap " + detail::num(std::abs(rep.ratio - 1.0));
        }
      }
    }
  }

  int checks = 0;
  {
    const Signature sig(0, 2);
    const Grid g({-6.0, -6.0}, {6.0, 6.0}, {64, 64});
    const auto r = validate_root(Multivector::basis(sig, 0b11));
    const auto fields = hermite_corpus(sig, g, 100, 9);
    std::mt19937 rng(10);
    std::vector<std::pair<Multivector, Multivector>> dirs;
    for (int k = 0; k < 10; ++k) {
      dirs.emplace_back(detail::random_vector(sig, rng, 1.0),
                        detail::random_vector(sig, rng, 1.0));
    }
    for (const auto& f : fields) {
      for (const auto& [a, b] : dirs) {
        const auto rep = heisenberg_directional(f, r, a, b);
        ++checks;
        if (!rep.pass) {
          pass = false;
          if (fail.empty()) fail = "directional ratio " + detail::num(rep.ratio);
        }
      }
      const auto full = heisenberg_full(f, r);
      if (!full.pass) {
        pass = false;
        if (fail.empty()) fail = "full-norm ratio " + detail::num(full.ratio);
      }
    }
  }

  {
    const Signature s1(0, 1);
    const auto r1 = validate_root(Multivector::basis(s1, 0b1));
    const auto rep1 =
        heisenberg_full(detail::gaussian_field(s1, Grid({-10.0}, {10.0}, {512}), 0.5), r1);
    if (std::abs(rep1.ratio - 1.0) > kFullTol1) {
      pass = false;
      if (fail.empty()) fail = "1-D full-norm ratio " + detail::num(rep1.ratio);
    }
    const Signature s2(0, 2);
    const auto r2 = validate_root(Multivector::basis(s2, 0b11));
    const auto rep2 = heisenberg_full(
        detail::gaussian_field(s2, Grid({-8.0, -8.0}, {8.0, 8.0}, {128, 128}), 0.5), r2);
    if (std::abs(rep2.ratio - 2.0) > kFullTol2) {
      pass = false;
      if (fail.empty()) fail = "2-D full-norm ratio " + detail::num(rep2.ratio);
    }
  }

  return {8, "heisenberg-suite", pass,
          pass ? "8 equality cases, " + std::to_string(checks) + " directional checks, full-norm ok"
               : fail};
}

/// Complex kernel modulus never exceeds sqrt(1+|i|^2) e^{|x||b|}.
inline CriterionResult kernel_bound_sweep() {
  constexpr double kSlack = 1e-12;
  constexpr int kTotal = 10'000;

  struct Case {
    Signature sig;
    ValidatedRoot root;
  };
  std::vector<Case> cases;
  std::mt19937 seed_rng(31);
  for (int n = 1; n <= 4; ++n) {
    for (int p = 0; p <= n; ++p) {
      const Signature sig(p, n - p);
      for (const auto& r : enumerate_blade_roots(sig)) cases.push_back({sig, r});
      const int q = n - p;
      if (q >= 2) {
        // non-blade roots: unit vectors in the span of the negative generators
        std::uniform_real_distribution<double> comp(-1.0, 1.0);
        for (int extra = 0; extra < 2; ++extra) {
          Multivector v(sig);
          double nrm = 0.0;
          for (int l = 0; l < q; ++l) {
            const double c = comp(seed_rng);
            v[blade_t{1} << (p + l)] = c;
            nrm += c * c;
          }
          v *= 1.0 / std::sqrt(nrm);
          cases.push_back({sig, validate_root(v)});
        }
      }
      if (p == 3 && q == 0) {
        // non-blade roots: unit bivectors
        std::uniform_real_distribution<double> comp(-1.0, 1.0);
        for (int extra = 0; extra < 2; ++extra) {
          Multivector bv(sig);
          double nrm = 0.0;
          for (blade_t mask : {blade_t{0b011}, blade_t{0b101}, blade_t{0b110}}) {
            const double c = comp(seed_rng);
            bv[mask] = c;
            nrm += c * c;
          }
          bv *= 1.0 / std::sqrt(nrm);
          cases.push_back({sig, validate_root(bv)});
        }
      }
    }
  }

  const int per_case = kTotal / static_cast<int>(cases.size()) + 1;
  int violations = 0;
  int draws = 0;
  double worst_margin = -1e300;
  std::mt19937 rng(32);
  for (const auto& c : cases) {
    for (int t = 0; t < per_case; ++t) {
      const auto x = detail::random_vector(c.sig, rng, 1.5);
      const auto a = detail::random_vector(c.sig, rng, 1.5);
      const auto b = detail::random_vector(c.sig, rng, 1.5);
      const double mod = complex_kernel(x, a, b, c.root).modulus();
      const double bound = complex_kernel_bound(x, b, c.root);
      worst_margin = std::max(worst_margin, mod - bound);
      if (mod > bound + kSlack) ++violations;
      ++draws;
    }
  }

  return {9, "kernel-bound-sweep", violations == 0,
          std::to_string(draws) + " draws over " + std::to_string(cases.size()) +
              " roots, worst margin " + detail::num(worst_margin) + ", " +
              std::to_string(violations) + " violations"};
}

/// Gaussian decay rigidity: the critical family is recognized with the right
/// decay, over-claimed hypotheses are flagged, weak decay is unconstrained,
/// and the zero field satisfies the supercritical conclusion.
inline CriterionResult hardy_suite() {
  constexpr double kDecayTol = 1e-3;
  constexpr double kResidualTol = 1e-6;
  const Signature sig(0, 1);
  const auto r = validate_root(Multivector::basis(sig, 0b1));

  bool pass = true;
  std::string fail;
  const auto note = [&](const std::string& msg) {
    pass = false;
    if (fail.empty()) fail = msg;
  };

  const Grid wide({-14.0}, {14.0}, {512});
  for (double t : {0.25, 0.5, 1.0, 2.0}) {
    const auto f = detail::gaussian_field(sig, wide, t);
    const auto rep = hardy_check(f, r, t, 1.0 / (4.0 * t), 2.0);
    if (rep.cls != HardyClass::critical || !rep.pass ||
        std::abs(rep.fitted_decay - t) > kDecayTol * std::max(1.0, t) ||
        rep.residual > kResidualTol) {
      note("family t=" + detail::num(t) + " class " + to_string(rep.cls) + " decay " +
           detail::num(rep.fitted_decay));
    }
  }

  const Grid mid({-12.0}, {12.0}, {256});
  const auto gauss = detail::gaussian_field(sig, mid, 0.5);
  const auto over = hardy_check(gauss, r, 0.7, 0.7, 1.0);
  if (over.cls != HardyClass::hypotheses_violated) {
    note("over-claimed case reported " + to_string(over.cls));
  }
  const auto sub = hardy_check(gauss, r, 0.1, 0.1, 1.0);
  if (sub.cls != HardyClass::subcritical || !sub.pass) {
    note("subcritical case reported " + to_string(sub.cls));
  }
  const auto zero = hardy_check(SampledField(sig, mid), r, 1.0, 1.0, 1.0);
  if (zero.cls != HardyClass::supercritical || !zero.pass) {
    note("zero field reported " + to_string(zero.cls));
  }

  return {10, "hardy-suite", pass,
          pass ? "critical family recovered, boundary cases classified" : fail};
}

/// Expression corpus evaluates exactly and reprints to a fixed point;
/// malformed inputs fail with the right byte offset.
inline CriterionResult parser_corpus() {
  int exact = 0;
  const auto cases = expr_corpus::expression_cases();
  for (const auto& c : cases) {
    try {
      const ScalarExpr e = ScalarExpr::parse(c.text);
      const ScalarExpr reparsed = ScalarExpr::parse(e.str());
      if (e.eval(c.xs) == c.want && reparsed.eval(c.xs) == c.want && reparsed.str() == e.str()) {
        ++exact;
      }
    } catch (const std::exception&) {
    }
  }

  int positioned = 0;
  const auto bad = expr_corpus::malformed_cases();
  for (const auto& c : bad) {
    try {
      (void)ScalarExpr::parse(c.text);
    } catch (const SyntaxError& e) {
      if (e.offset == c.offset) ++positioned;
    } catch (const std::exception&) {
    }
  }

  const bool pass =
      exact == static_cast<int>(cases.size()) && positioned == static_cast<int>(bad.size());
  return {11, "parser-corpus", pass,
          std::to_string(exact) + "/" + std::to_string(cases.size()) + " exact, " +
              std::to_string(positioned) + "/" + std::to_string(bad.size()) +
              " malformed positioned"};
}

inline std::vector<CriterionResult> run_all(
    const std::function<void(const CriterionResult&)>& on_done = {}) {
  std::vector<CriterionResult> results;
  const auto push = [&](CriterionResult r) {
    if (on_done) on_done(r);
    results.push_back(std::move(r));
  };
  push(algebra_exactness());
  push(split_identities());
  push(gaussian_eigenfunction());
  push(parseval_energy());
  push(inversion_round_trip());
  push(fast_path_oracle());
  push(derivative_convergence());
  push(heisenberg_suite());
  push(kernel_bound_sweep());
  push(hardy_suite());
  push(parser_corpus());
  return results;
}

}  // namespace clifft::suite
