// Batch front end: define multivector fields by expression, run the
// transform, verification checks, and benchmarks, and emit JSON/CSV/SVG.
//
// Exit codes: 0 success or passing check, 1 failing check, 2 flag or parse
// error (messages carry byte offsets where available), 3 numeric
// precondition failure (invalid root, bad grid, evaluation error).

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "clifft/algebra.hpp"
#include "clifft/corpus.hpp"
#include "clifft/expr.hpp"
#include "clifft/field.hpp"
#include "clifft/grid.hpp"
#include "clifft/io.hpp"
#include "clifft/roots.hpp"
#include "clifft/suite.hpp"
#include "clifft/svg.hpp"
#include "clifft/transform.hpp"
#include "clifft/uncertainty.hpp"

using namespace clifft;

namespace {

// Flag-value syntax problem: always exit code 2.
class FlagError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double parse_double_at(const std::string& text, std::size_t& pos, const std::string& flag) {
  double v = 0.0;
  const char* begin = text.data() + pos;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{}) {
    throw FlagError(flag + ": expected a number at offset " + std::to_string(pos) + " in \"" +
                    text + "\"");
  }
  pos = static_cast<std::size_t>(ptr - text.data());
  return v;
}

void expect_char(const std::string& text, std::size_t& pos, char c, const std::string& flag) {
  if (pos >= text.size() || text[pos] != c) {
    throw FlagError(flag + ": expected '" + std::string(1, c) + "' at offset " +
                    std::to_string(pos) + " in \"" + text + "\"");
  }
  ++pos;
}

Signature parse_signature_flag(const std::string& text) {
  std::size_t pos = 0;
  const double p = parse_double_at(text, pos, "--signature");
  expect_char(text, pos, ',', "--signature");
  const double q = parse_double_at(text, pos, "--signature");
  if (pos != text.size()) {
    throw FlagError("--signature: trailing characters at offset " + std::to_string(pos) +
                    " in \"" + text + "\"");
  }
  if (p != std::floor(p) || q != std::floor(q) || p < 0 || q < 0) {
    throw FlagError("--signature: p and q must be nonnegative integers in \"" + text + "\"");
  }
  try {
    return Signature(static_cast<int>(p), static_cast<int>(q));
  } catch (const std::exception& e) {
    throw FlagError(std::string("--signature: ") + e.what());
  }
}

// "min:max:N" per axis, axes separated by commas.
Grid parse_grid_flag(const std::string& text) {
  std::vector<double> lo, hi;
  std::vector<int> shape;
  std::size_t pos = 0;
  while (true) {
    lo.push_back(parse_double_at(text, pos, "--grid"));
    expect_char(text, pos, ':', "--grid");
    hi.push_back(parse_double_at(text, pos, "--grid"));
    expect_char(text, pos, ':', "--grid");
    const double n = parse_double_at(text, pos, "--grid");
    if (n != std::floor(n) || n < 1) {
      throw FlagError("--grid: sample count must be a positive integer in \"" + text + "\"");
    }
    shape.push_back(static_cast<int>(n));
    if (pos == text.size()) break;
    expect_char(text, pos, ',', "--grid");
  }
  return Grid(std::move(lo), std::move(hi), std::move(shape));
}

std::vector<double> parse_components_flag(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (true) {
    out.push_back(parse_double_at(text, pos, flag));
    if (pos == text.size()) break;
    expect_char(text, pos, ',', flag);
  }
  return out;
}

Multivector parse_vector_flag(const std::string& text, const Signature& sig,
                              const std::string& flag) {
  const auto comps = parse_components_flag(text, flag);
  if (comps.size() != static_cast<std::size_t>(sig.dim())) {
    throw FlagError(flag + ": expected " + std::to_string(sig.dim()) +
                    " components for Cl(" + std::to_string(sig.p()) + "," +
                    std::to_string(sig.q()) + "), got " + std::to_string(comps.size()));
  }
  return make_vector(sig, comps);
}

// Multivector literal: JSON object, plain number, or blade spelling.
Multivector parse_mv_literal(const std::string& text, const Signature& sig,
                             const std::string& flag) {
  if (!text.empty() && text.front() == '{') {
    try {
      const Multivector m = io::multivector_from_json(io::parse_json_text(text, flag));
      if (!(m.signature() == sig)) {
        throw FlagError(flag + ": literal signature does not match --signature");
      }
      return m;
    } catch (const IoError& e) {
      throw FlagError(flag + ": " + e.what());
    }
  }
  {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec == std::errc{} && ptr == text.data() + text.size()) {
      return Multivector::scalar(sig, v);
    }
  }
  try {
    return Multivector::basis(sig, parse_blade(text, sig));
  } catch (const BladeParseError& e) {
    throw FlagError(flag + ": bad blade \"" + text + "\": " + e.what() + " at offset " +
                    std::to_string(e.offset));
  }
}

ValidatedRoot parse_root_flag(const std::string& text, const Signature& sig) {
  // validate_root failures propagate and map to exit code 3
  return validate_root(parse_mv_literal(text, sig, "--root"));
}

// "blade=expr,blade=expr". Commas never occur inside the expression grammar,
// so a top-level split is unambiguous. Offsets are reported relative to the
// whole flag value.
std::map<blade_t, ScalarExpr> parse_expr_flag(const std::string& text, const Signature& sig) {
  std::map<blade_t, ScalarExpr> comps;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    const std::string piece = text.substr(start, end - start);
    const std::size_t eq = piece.find('=');
    if (eq == std::string::npos) {
      throw FlagError("--expr: expected blade=expression at offset " + std::to_string(start) +
                      " in \"" + text + "\"");
    }
    blade_t blade = 0;
    try {
      blade = parse_blade(piece.substr(0, eq), sig);
    } catch (const BladeParseError& e) {
      throw FlagError("--expr: bad blade at offset " + std::to_string(start + e.offset) +
                      " in \"" + text + "\"");
    }
    try {
      ScalarExpr ex = ScalarExpr::parse(piece.substr(eq + 1));
      if (!comps.emplace(blade, std::move(ex)).second) {
        throw FlagError("--expr: duplicate blade \"" + piece.substr(0, eq) + "\"");
      }
    } catch (const SyntaxError& e) {
      throw FlagError("--expr: " + std::string(e.what()) + " (offset " +
                      std::to_string(start + eq + 1 + e.offset) + " in the flag value)");
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  if (comps.empty()) throw FlagError("--expr: no components given");
  return comps;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
  } else {
    io::write_text_file(out_path, text);
  }
}

// Spectrum slice rendered as one polyline per blade plus the modulus.
std::string render_spectrum_svg(const SampledField& data, const std::string& title) {
  auto [xs, series] = svg::field_series(data, 0);
  svg::Series mod{"modulus", std::vector<double>(xs.size(), 0.0)};
  for (std::size_t k = 0; k < xs.size(); ++k) {
    double s = 0.0;
    for (const auto& sr : series) s += sr.ys[k] * sr.ys[k];
    mod.ys[k] = std::sqrt(s);
  }
  series.push_back(std::move(mod));
  return svg::render_line_plot(title, "w1", xs, series);
}

struct FieldArgs {
  std::string signature;
  std::string root;
  std::string expr;
  std::string grid;
};

void add_field_flags(CLI::App* cmd, FieldArgs& args) {
  cmd->add_option("--signature", args.signature, "algebra signature p,q");
  cmd->add_option("--root", args.root, "square root of -1: blade spelling or multivector JSON");
  cmd->add_option("--expr", args.expr, "field components: blade=expression[,blade=expression]");
  cmd->add_option("--grid", args.grid, "sampling box: min:max:N per axis, comma separated");
}

void require_flag(const std::string& value, const char* name) {
  if (value.empty()) throw FlagError(std::string(name) + " is required for this operation");
}

struct BuiltField {
  Signature sig;
  ValidatedRoot root;
  SampledField field;
};

BuiltField build_field(const FieldArgs& args) {
  require_flag(args.signature, "--signature");
  require_flag(args.root, "--root");
  require_flag(args.expr, "--expr");
  require_flag(args.grid, "--grid");
  const Signature sig = parse_signature_flag(args.signature);
  const Grid grid = parse_grid_flag(args.grid);
  auto comps = parse_expr_flag(args.expr, sig);
  ValidatedRoot root = parse_root_flag(args.root, sig);
  SampledField f = sample_field(comps, grid, sig);
  return {sig, std::move(root), std::move(f)};
}

int run_transform(const FieldArgs& fargs, const std::string& method, const std::string& out,
                  const std::string& plot, const std::string& csv) {
  BuiltField bf = build_field(fargs);
  Spectrum F = method == "direct" ? cft_direct(bf.field, bf.root)
               : method == "fast" ? cft_fast(bf.field, bf.root)
                                  : cft(bf.field, bf.root);
  emit(io::dump_json(io::spectrum_to_json(F)), out);
  if (!plot.empty()) {
    io::write_text_file(plot, render_spectrum_svg(F.data, "spectrum"));
  }
  if (!csv.empty()) {
    io::write_text_file(csv, io::field_to_csv(F.data));
  }
  return 0;
}

VerificationReport verify_kernel_bound(const std::string& signature, const std::string& root,
                                       int trials, unsigned seed) {
  struct Case {
    Signature sig;
    ValidatedRoot root;
  };
  std::vector<Case> cases;
  if (!signature.empty()) {
    const Signature sig = parse_signature_flag(signature);
    if (!root.empty()) {
      cases.push_back({sig, parse_root_flag(root, sig)});
    } else {
      for (const auto& r : enumerate_blade_roots(sig)) cases.push_back({sig, r});
    }
    if (cases.empty()) {
      throw FlagError("--signature: Cl(" + std::to_string(sig.p()) + "," +
                      std::to_string(sig.q()) + ") has no blade roots; pass --root");
    }
  } else {
    for (int n = 1; n <= 4; ++n) {
      for (int p = 0; p <= n; ++p) {
        const Signature sig(p, n - p);
        for (const auto& r : enumerate_blade_roots(sig)) cases.push_back({sig, r});
      }
    }
  }

  constexpr double kSlack = 1e-12;
  std::mt19937 rng(seed);
  int violations = 0;
  double worst = -1e300;
  const int per_case = std::max(1, trials / static_cast<int>(cases.size()));
  int draws = 0;
  for (const auto& c : cases) {
    for (int t = 0; t < per_case; ++t) {
      const auto x = suite::detail::random_vector(c.sig, rng, 1.5);
      const auto a = suite::detail::random_vector(c.sig, rng, 1.5);
      const auto b = suite::detail::random_vector(c.sig, rng, 1.5);
      const double mod = complex_kernel(x, a, b, c.root).modulus();
      const double bound = complex_kernel_bound(x, b, c.root);
      worst = std::max(worst, mod - bound);
      if (mod > bound + kSlack) ++violations;
      ++draws;
    }
  }

  VerificationReport rep;
  rep.name = "kernel-bound";
  rep.lhs = worst;
  rep.rhs = kSlack;
  rep.ratio = VerificationReport::compute_ratio(rep.lhs, rep.rhs);
  rep.tolerance = kSlack;
  rep.pass = violations == 0;
  rep.diagnostics["draws"] = draws;
  rep.diagnostics["roots"] = static_cast<double>(cases.size());
  rep.diagnostics["violations"] = violations;
  return rep;
}

VerificationReport verify_split(const std::string& signature, const std::string& root, int trials,
                                unsigned seed) {
  require_flag(signature, "--signature");
  const Signature sig = parse_signature_flag(signature);
  std::vector<ValidatedRoot> roots;
  if (!root.empty()) {
    roots.push_back(parse_root_flag(root, sig));
  } else {
    roots = enumerate_blade_roots(sig);
    if (roots.empty()) {
      throw FlagError("--signature: Cl(" + std::to_string(sig.p()) + "," +
                      std::to_string(sig.q()) + ") has no blade roots; pass --root");
    }
  }

  constexpr double kTol = 1e-12;
  std::mt19937 rng(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const auto A = suite::detail::random_int_mv(sig, rng);
    for (const auto& r : roots) {
      const auto [plus, minus] = split_commuting(A, r);
      Multivector sum = plus;
      sum += minus;
      worst = std::max(worst, suite::detail::sup_abs_diff(sum, A));
      worst = std::max(worst, suite::detail::sup_abs_diff(r.i() * plus, plus * r.i()));
      worst = std::max(worst, suite::detail::sup_abs_diff(r.i() * minus, -(minus * r.i())));
    }
  }

  VerificationReport rep;
  rep.name = "split";
  rep.lhs = worst;
  rep.rhs = 0.0;
  rep.ratio = VerificationReport::compute_ratio(worst, 0.0);
  rep.tolerance = kTol;
  rep.pass = worst <= kTol;
  rep.diagnostics["trials"] = trials;
  rep.diagnostics["roots"] = static_cast<double>(roots.size());
  return rep;
}

struct VerifyArgs {
  FieldArgs field;
  std::string check;
  std::string suite_name;
  std::string a, b;
  double p = 0.0, q = 0.0, C = 1.0;
  double scale = 2.0;
  int trials = 0;
  unsigned seed = 0;
  std::string out;
};

int run_verify(const VerifyArgs& va) {
  if (!va.suite_name.empty()) {
    if (va.suite_name != "paper") {
      throw FlagError("--suite: unknown suite \"" + va.suite_name + "\"");
    }
    nlohmann::json arr = nlohmann::json::array();
    bool all_pass = true;
    suite::run_all([&](const suite::CriterionResult& r) {
      if (va.out.empty()) {
        std::printf("[%s] %2d %s: %s\n", r.pass ? "pass" : "FAIL", r.index, r.name.c_str(),
                    r.detail.c_str());
        std::fflush(stdout);
      }
      nlohmann::json item;
      item["index"] = r.index;
      item["name"] = r.name;
      item["pass"] = r.pass;
      item["detail"] = r.detail;
      arr.push_back(std::move(item));
      all_pass = all_pass && r.pass;
    });
    if (!va.out.empty()) io::write_text_file(va.out, arr.dump(2) + "\n");
    return all_pass ? 0 : 1;
  }

  require_flag(va.check, "--check");
  const int trials = va.trials;

  if (va.check == "kernel-bound") {
    const auto rep = verify_kernel_bound(va.field.signature, va.field.root,
                                         trials > 0 ? trials : 10000, va.seed);
    emit(io::dump_json(io::report_to_json(rep)), va.out);
    return rep.pass ? 0 : 1;
  }
  if (va.check == "split") {
    const auto rep =
        verify_split(va.field.signature, va.field.root, trials > 0 ? trials : 1000, va.seed);
    emit(io::dump_json(io::report_to_json(rep)), va.out);
    return rep.pass ? 0 : 1;
  }

  BuiltField bf = build_field(va.field);

  if (va.check == "hardy") {
    if (!(va.p > 0.0) || !(va.q > 0.0)) {
      throw FlagError("--check hardy requires positive --p and --q");
    }
    const HardyReport rep = hardy_check(bf.field, bf.root, va.p, va.q, va.C);
    emit(io::dump_json(io::hardy_report_to_json(rep)), va.out);
    return rep.pass ? 0 : 1;
  }

  VerificationReport rep;
  if (va.check == "heisenberg") {
    require_flag(va.a, "--a");
    require_flag(va.b, "--b");
    rep = heisenberg_directional(bf.field, bf.root, parse_vector_flag(va.a, bf.sig, "--a"),
                                 parse_vector_flag(va.b, bf.sig, "--b"));
  } else if (va.check == "heisenberg-full") {
    rep = heisenberg_full(bf.field, bf.root);
  } else if (va.check == "parseval") {
    rep = check_parseval(bf.field, bf.root);
  } else if (va.check == "inversion") {
    rep = check_inversion(bf.field, bf.root);
  } else if (va.check == "derivative") {
    require_flag(va.a, "--a");
    rep = check_derivative_property(bf.field, parse_vector_flag(va.a, bf.sig, "--a"), bf.root);
  } else if (va.check == "scaling") {
    rep = check_scaling(bf.field, va.scale, bf.root);
  } else if (va.check == "linearity") {
    std::mt19937 rng(va.seed);
    const SampledField other = random_hermite_gaussian(bf.sig, bf.field.grid(), rng);
    std::uniform_real_distribution<double> comp(-1.0, 1.0);
    Multivector alpha(bf.sig), beta(bf.sig);
    for (std::size_t m = 0; m < bf.sig.blade_count(); ++m) {
      alpha[static_cast<blade_t>(m)] = comp(rng);
      beta[static_cast<blade_t>(m)] = comp(rng);
    }
    rep = check_linearity(bf.field, other, alpha, beta, bf.root);
  } else {
    throw FlagError("--check: unknown check \"" + va.check + "\"");
  }
  emit(io::dump_json(io::report_to_json(rep)), va.out);
  return rep.pass ? 0 : 1;
}

int run_algebra(const std::string& signature, const std::vector<std::string>& product,
                const std::string& reverse, const std::vector<std::string>& outer,
                const std::vector<std::string>& dot, const std::vector<std::string>& grade,
                const std::string& out) {
  require_flag(signature, "--signature");
  const Signature sig = parse_signature_flag(signature);
  const int ops = static_cast<int>(!product.empty()) + static_cast<int>(!reverse.empty()) +
                  static_cast<int>(!outer.empty()) + static_cast<int>(!dot.empty()) +
                  static_cast<int>(!grade.empty());
  if (ops != 1) {
    throw FlagError("algebra: pass exactly one of --product, --outer, --dot, --reverse, --grade");
  }

  if (!dot.empty()) {
    const double v = coeff_dot(parse_mv_literal(dot[0], sig, "--dot"),
                               parse_mv_literal(dot[1], sig, "--dot"));
    emit(io::format_double(v) + "\n", out);
    return 0;
  }

  Multivector result(sig);
  if (!product.empty()) {
    result = parse_mv_literal(product[0], sig, "--product") *
             parse_mv_literal(product[1], sig, "--product");
  } else if (!outer.empty()) {
    result = parse_mv_literal(outer[0], sig, "--outer") ^
             parse_mv_literal(outer[1], sig, "--outer");
  } else if (!reverse.empty()) {
    result = principal_reverse(parse_mv_literal(reverse, sig, "--reverse"));
  } else {
    std::size_t pos = 0;
    const double k = parse_double_at(grade[0], pos, "--grade");
    if (pos != grade[0].size() || k != std::floor(k) || k < 0) {
      throw FlagError("--grade: first argument must be a nonnegative integer");
    }
    try {
      result = grade_project(parse_mv_literal(grade[1], sig, "--grade"), static_cast<int>(k));
    } catch (const std::out_of_range& e) {
      throw FlagError(std::string("--grade: ") + e.what());
    }
  }
  emit(io::dump_json(io::multivector_to_json(result)), out);
  return 0;
}

int run_roots(const std::string& signature, const std::string& validate, const std::string& out) {
  require_flag(signature, "--signature");
  const Signature sig = parse_signature_flag(signature);

  if (!validate.empty()) {
    const Multivector candidate = parse_mv_literal(validate, sig, "--validate");
    try {
      const ValidatedRoot r = validate_root(candidate);
      emit(io::dump_json(io::root_to_json(r)), out);
      return 0;
    } catch (const RootValidationError& e) {
      std::cerr << "not a usable root: " << e.what() << "\n";
      return 1;
    }
  }

  const auto roots = enumerate_blade_roots(sig);
  if (out.empty()) {
    for (const auto& r : roots) {
      std::printf("%s\n", io::root_to_json(r).get<std::string>().c_str());
    }
  } else {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : roots) arr.push_back(io::root_to_json(r));
    io::write_text_file(out, arr.dump(2) + "\n");
  }
  return 0;
}

double median_run_seconds(const std::function<void()>& op) {
  using clock = std::chrono::steady_clock;
  // grow the batch until one sample is long enough to trust the clock
  int batch = 1;
  for (;;) {
    const auto t0 = clock::now();
    for (int k = 0; k < batch; ++k) op();
    const double s = std::chrono::duration<double>(clock::now() - t0).count();
    if (s >= 1e-3 || batch >= (1 << 20)) break;
    batch *= 2;
  }
  std::vector<double> samples;
  for (int run = 0; run < 5; ++run) {
    const auto t0 = clock::now();
    for (int k = 0; k < batch; ++k) op();
    samples.push_back(std::chrono::duration<double>(clock::now() - t0).count() / batch);
  }
  std::sort(samples.begin(), samples.end());
  return samples[samples.size() / 2];
}

int run_bench(const std::string& op, const std::string& sizes_flag, unsigned seed,
              const std::string& out) {
  require_flag(op, "--op");
  require_flag(sizes_flag, "--sizes");
  std::vector<int> sizes;
  {
    std::size_t pos = 0;
    while (true) {
      const double v = parse_double_at(sizes_flag, pos, "--sizes");
      if (v != std::floor(v) || v < 2) {
        throw FlagError("--sizes: sizes must be integers >= 2");
      }
      sizes.push_back(static_cast<int>(v));
      if (pos == sizes_flag.size()) break;
      expect_char(sizes_flag, pos, ',', "--sizes");
    }
  }

  volatile double sink = 0.0;
  std::string csv = "op,size,median_seconds,throughput\n";
  for (int size : sizes) {
    double median = 0.0;
    if (op == "product") {
      int n = 0;
      while ((1 << n) < size) ++n;
      if ((1 << n) != size || n < 1 || n > Signature::max_dim) {
        throw FlagError("--sizes: product sizes are blade counts, a power of two up to 1024");
      }
      const Signature sig((n + 1) / 2, n / 2);
      std::mt19937 rng(seed + static_cast<unsigned>(size));
      const auto A = suite::detail::random_int_mv(sig, rng);
      const auto B = suite::detail::random_int_mv(sig, rng);
      median = median_run_seconds([&] { sink = sink + (A * B)[0]; });
    } else if (op == "cft-direct" || op == "cft-fast") {
      const Signature sig(0, 1);
      const auto r = validate_root(Multivector::basis(sig, 0b1));
      const Grid g({-8.0}, {8.0}, {size});
      std::mt19937 rng(seed + static_cast<unsigned>(size));
      const SampledField f = random_hermite_gaussian(sig, g, rng);
      if (op == "cft-direct") {
        median = median_run_seconds([&] { sink = sink + cft_direct(f, r).data.at(0, 0); });
      } else {
        median = median_run_seconds([&] { sink = sink + cft_fast(f, r).data.at(0, 0); });
      }
    } else {
      throw FlagError("--op: unknown operation \"" + op + "\"");
    }
    char row[128];
    std::snprintf(row, sizeof(row), "%s,%d,%.6e,%.6e\n", op.c_str(), size, median,
                  static_cast<double>(size) / median);
    csv += row;
  }
  (void)sink;
  emit(csv, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clifford algebra Fourier transform toolkit"};
  app.require_subcommand(1);

  // algebra
  std::string alg_signature, alg_reverse, alg_out;
  std::vector<std::string> alg_product, alg_outer, alg_dot, alg_grade;
  auto* alg = app.add_subcommand("algebra", "evaluate algebra operations on multivector literals");
  alg->add_option("--signature", alg_signature, "algebra signature p,q");
  alg->add_option("--product", alg_product, "geometric product of two literals")->expected(2);
  alg->add_option("--outer", alg_outer, "outer product of two literals")->expected(2);
  alg->add_option("--dot", alg_dot, "coefficient pairing of two literals")->expected(2);
  alg->add_option("--reverse", alg_reverse, "principal reverse of a literal");
  alg->add_option("--grade", alg_grade, "grade projection: k and a literal")->expected(2);
  alg->add_option("--out", alg_out, "write the result here instead of stdout");

  // roots
  std::string roots_signature, roots_validate, roots_out;
  auto* roots = app.add_subcommand("roots", "enumerate or validate square roots of -1");
  roots->add_option("--signature", roots_signature, "algebra signature p,q");
  roots->add_option("--validate", roots_validate, "candidate root literal to validate");
  roots->add_option("--out", roots_out, "write the result here instead of stdout");

  // transform
  FieldArgs tr_field;
  std::string tr_method = "auto", tr_out, tr_plot, tr_csv;
  auto* tr = app.add_subcommand("transform", "sample a field and compute its spectrum");
  add_field_flags(tr, tr_field);
  tr->add_option("--method", tr_method, "direct, fast, or auto")
      ->check(CLI::IsMember({"direct", "fast", "auto"}));
  tr->add_option("--out", tr_out, "spectrum JSON path (stdout stays silent)");
  tr->add_option("--plot", tr_plot, "SVG plot of the spectrum along the first axis");
  tr->add_option("--csv", tr_csv, "CSV dump of the spectrum samples");

  // verify
  VerifyArgs va;
  auto* ver = app.add_subcommand("verify", "run a verification check or the full battery");
  add_field_flags(ver, va.field);
  ver->add_option("--check", va.check,
                  "heisenberg, heisenberg-full, hardy, parseval, inversion, derivative, "
                  "linearity, scaling, kernel-bound, or split")
      ->check(CLI::IsMember({"heisenberg", "heisenberg-full", "hardy", "parseval", "inversion",
                             "derivative", "linearity", "scaling", "kernel-bound", "split"}));
  ver->add_option("--suite", va.suite_name, "run a named battery (paper)");
  ver->add_option("--a", va.a, "first direction vector, comma separated components");
  ver->add_option("--b", va.b, "second direction vector");
  ver->add_option("--p", va.p, "spatial decay rate");
  ver->add_option("--q", va.q, "spectral decay rate");
  ver->add_option("--C", va.C, "decay bound constant")->capture_default_str();
  ver->add_option("--scale", va.scale, "dilation factor for --check scaling")
      ->capture_default_str();
  ver->add_option("--trials", va.trials, "random draws for sweeping checks");
  ver->add_option("--seed", va.seed, "random seed for generated inputs")->capture_default_str();
  ver->add_option("--out", va.out, "report JSON path (stdout stays silent)");

  // bench
  std::string bench_op, bench_sizes, bench_out;
  unsigned bench_seed = 0;
  auto* ben = app.add_subcommand("bench", "time transform and product kernels");
  ben->add_option("--op", bench_op, "cft-direct, cft-fast, or product")
      ->check(CLI::IsMember({"cft-direct", "cft-fast", "product"}));
  ben->add_option("--sizes", bench_sizes, "comma separated problem sizes");
  ben->add_option("--seed", bench_seed, "random seed for generated inputs")
      ->capture_default_str();
  ben->add_option("--out", bench_out, "CSV path (stdout stays silent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (alg->parsed()) {
      return run_algebra(alg_signature, alg_product, alg_reverse, alg_outer, alg_dot, alg_grade,
                         alg_out);
    }
    if (roots->parsed()) return run_roots(roots_signature, roots_validate, roots_out);
    if (tr->parsed()) return run_transform(tr_field, tr_method, tr_out, tr_plot, tr_csv);
    if (ver->parsed()) return run_verify(va);
    if (ben->parsed()) return run_bench(bench_op, bench_sizes, bench_seed, bench_out);
  } catch (const FlagError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const BladeParseError& e) {
    std::cerr << e.what() << " at offset " << e.offset << "\n";
    return 2;
  } catch (const SyntaxError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const RootValidationError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const GridError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const TransformError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const FieldEvalError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const EvalError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const FieldError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 3;
  }
  return 0;
}
