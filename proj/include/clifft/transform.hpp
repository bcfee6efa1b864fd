// The Clifford-Fourier transform of sampled fields with respect to a
// validated root i:
//
//   F{f}(w) = integral of f(x) (cos u - sin u i) dx,   u = sum_l x^l w^l
//
// with the (2pi)^{-n} factor on the inverse only. Two forward paths: literal
// quadrature over every (x, w) pair, and a per-blade FFT that lands on the
// same values for the DFT-natural frequency grid. The direct path is the
// correctness oracle for the fast one.

#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "clifft/field.hpp"
#include "clifft/kahan.hpp"
#include "clifft/report.hpp"
#include "clifft/roots.hpp"

namespace clifft {

struct TransformError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline bool is_pow2(int n) { return n >= 2 && (n & (n - 1)) == 0; }

/// Frequency box paired with a spatial grid: per axis, N midpoint nodes at
/// w_k = (k - N/2) 2pi/(N h). Direct and fast paths are comparable node for
/// node on this grid.
inline Grid dft_frequency_grid(const Grid& xg) {
  const int m = xg.dim();
  std::vector<double> lo(m), hi(m);
  std::vector<int> shape(m);
  for (int d = 0; d < m; ++d) {
    const int n = xg.extent(d);
    const double hw = 2.0 * M_PI / (n * xg.spacing(d));
    lo[d] = -(n / 2 + 0.5) * hw;
    hi[d] = lo[d] + n * hw;
    shape[d] = n;
  }
  return Grid(lo, hi, shape);
}

struct Spectrum {
  SampledField data;
  ValidatedRoot root;
};

namespace detail {

/// Iterative radix-2 complex FFT, power-of-two length only. sign = -1 for
/// the forward kernel e^{-2pi i jk/N}; the inverse is unscaled.
inline void fft_pow2(std::vector<std::complex<double>>& a, int sign) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * M_PI / static_cast<double>(len);
    for (std::size_t i = 0; i < n; i += len)
      for (std::size_t k = 0; k < len / 2; ++k) {
        const auto w = std::polar(1.0, ang * static_cast<double>(k));
        const auto u = a[i + k];
        const auto v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
      }
  }
}

/// FFT along every axis of a row-major multi-dimensional array.
inline void fft_all_axes(std::vector<std::complex<double>>& a, const Grid& g,
                         int sign) {
  const int m = g.dim();
  std::vector<std::complex<double>> line;
  for (int d = 0; d < m; ++d) {
    const int n = g.extent(d);
    const std::size_t step = g.stride(d);
    const std::size_t lines = a.size() / static_cast<std::size_t>(n);
    line.assign(static_cast<std::size_t>(n), {});
    for (std::size_t l = 0; l < lines; ++l) {
      // Base index of the l-th line along axis d.
      const std::size_t block = l / step;
      const std::size_t offset = l % step;
      const std::size_t base = block * step * static_cast<std::size_t>(n) + offset;
      for (int k = 0; k < n; ++k) line[static_cast<std::size_t>(k)] = a[base + k * step];
      fft_pow2(line, sign);
      for (int k = 0; k < n; ++k) a[base + k * step] = line[static_cast<std::size_t>(k)];
    }
  }
}

inline std::vector<double> flat_coords(const Grid& g) {
  const int m = g.dim();
  const std::size_t count = g.node_count();
  std::vector<double> xs(count * static_cast<std::size_t>(m));
  std::vector<int> idx(m);
  for (std::size_t node = 0; node < count; ++node) {
    g.unflatten(node, idx);
    for (int d = 0; d < m; ++d) xs[node * m + d] = g.coord(d, idx[d]);
  }
  return xs;
}

}  // namespace detail

/// Literal quadrature: for every frequency node, a compensated sum of
/// f(x) kernel(u(x,w)) over all spatial nodes in row-major order.
inline Spectrum cft_direct(const SampledField& f, const ValidatedRoot& r,
                           const Grid& wgrid) {
  if (!(f.signature() == r.signature()))
    throw SignatureMismatch("field and root signatures differ");
  if (wgrid.dim() != f.grid().dim())
    throw TransformError("frequency grid dimension differs from the field's");

  const int m = f.grid().dim();
  const std::size_t nx = f.node_count();
  const std::size_t nw = wgrid.node_count();
  const std::size_t nb = f.stride();
  const double vol = f.grid().volume_element();

  // f(x) kernel(u) = cos(u) f(x) - sin(u) (f(x) i); precompute f i once.
  const SampledField fi = right_mul(f, r.i());
  const auto xs = detail::flat_coords(f.grid());
  const auto ws = detail::flat_coords(wgrid);

  Spectrum out{SampledField(f.signature(), wgrid), r};
  std::vector<KahanSum> acc(nb);
  for (std::size_t wn = 0; wn < nw; ++wn) {
    const double* w = ws.data() + wn * m;
    for (auto& a : acc) a = KahanSum();
    for (std::size_t xn = 0; xn < nx; ++xn) {
      const double* x = xs.data() + xn * m;
      double u = 0.0;
      for (int d = 0; d < m; ++d) u += x[d] * w[d];
      const double c = std::cos(u);
      const double s = std::sin(u);
      const double* fv = f.node_data(xn);
      const double* gv = fi.node_data(xn);
      for (blade_t b = 0; b < nb; ++b) acc[b].add(c * fv[b] - s * gv[b]);
    }
    double* dst = out.data.node_data(wn);
    for (blade_t b = 0; b < nb; ++b) dst[b] = vol * acc[b].value();
  }
  return out;
}

inline Spectrum cft_direct(const SampledField& f, const ValidatedRoot& r) {
  return cft_direct(f, r, dft_frequency_grid(f.grid()));
}

/// FFT path on the DFT-natural frequency grid. One complex DFT per blade;
/// the midpoint origin enters as the phase e^{-j w.x0} per output node.
inline Spectrum cft_fast(const SampledField& f, const ValidatedRoot& r) {
  if (!(f.signature() == r.signature()))
    throw SignatureMismatch("field and root signatures differ");
  const Grid& xg = f.grid();
  const int m = xg.dim();
  for (int d = 0; d < m; ++d)
    if (!is_pow2(xg.extent(d)))
      throw TransformError("fast path needs power-of-two extents");

  const Grid wg = dft_frequency_grid(xg);
  const std::size_t count = xg.node_count();
  const std::size_t nb = f.stride();
  const double vol = xg.volume_element();

  // Z_b(w_k) = vol e^{-j w_k.x0} DFT_b[bin(k)]; C = Re Z, S = -Im Z.
  std::vector<std::vector<std::complex<double>>> dft(nb);
  std::vector<std::complex<double>> buf(count);
  for (blade_t b = 0; b < nb; ++b) {
    for (std::size_t node = 0; node < count; ++node)
      buf[node] = f.at(node, b);
    detail::fft_all_axes(buf, xg, -1);
    dft[b] = buf;
  }

  Spectrum out{SampledField(f.signature(), wg), r};
  const auto& table = detail::CayleyTable::get(f.signature());
  std::vector<int> idx(m);
  std::vector<double> cbuf(nb), sbuf(nb);
  const std::size_t nb_total = nb;
  for (std::size_t wn = 0; wn < wg.node_count(); ++wn) {
    wg.unflatten(wn, idx);
    std::size_t bin = 0;
    double phase = 0.0;
    for (int d = 0; d < m; ++d) {
      const int n = xg.extent(d);
      const int shifted = ((idx[d] - n / 2) % n + n) % n;
      bin += static_cast<std::size_t>(shifted) * xg.stride(d);
      phase -= wg.coord(d, idx[d]) * xg.coord(d, 0);
    }
    const std::complex<double> ph = std::polar(vol, phase);
    for (blade_t b = 0; b < nb_total; ++b) {
      const std::complex<double> z = ph * dft[b][bin];
      cbuf[b] = z.real();
      sbuf[b] = -z.imag();
    }
    // F = C - S i with the root multiplied in from the right.
    double* dst = out.data.node_data(wn);
    for (blade_t b = 0; b < nb_total; ++b) dst[b] = cbuf[b];
    for (blade_t a = 0; a < nb_total; ++a) {
      if (sbuf[a] == 0.0) continue;
      const std::int8_t* row = table.row(a);
      for (blade_t b = 0; b < nb_total; ++b) {
        const double ib = r.i()[b];
        if (ib != 0.0) dst[a ^ b] -= row[b] * sbuf[a] * ib;
      }
    }
  }
  return out;
}

/// Inverse transform (2pi)^{-n} vol_w sum_w F(w) kernel(-u(x,w)) by literal
/// quadrature.
inline SampledField icft_direct(const Spectrum& F, const Grid& xgrid) {
  const SampledField& S = F.data;
  const int m = S.grid().dim();
  if (xgrid.dim() != m)
    throw TransformError("output grid dimension differs from the spectrum's");
  const std::size_t nw = S.node_count();
  const std::size_t nx = xgrid.node_count();
  const std::size_t nb = S.stride();
  const double scale =
      S.grid().volume_element() / std::pow(2.0 * M_PI, m);

  const SampledField Fi = right_mul(S, F.root.i());
  const auto xs = detail::flat_coords(xgrid);
  const auto ws = detail::flat_coords(S.grid());

  SampledField out(S.signature(), xgrid);
  std::vector<KahanSum> acc(nb);
  for (std::size_t xn = 0; xn < nx; ++xn) {
    const double* x = xs.data() + xn * m;
    for (auto& a : acc) a = KahanSum();
    for (std::size_t wn = 0; wn < nw; ++wn) {
      const double* w = ws.data() + wn * m;
      double u = 0.0;
      for (int d = 0; d < m; ++d) u += x[d] * w[d];
      const double c = std::cos(u);
      const double s = std::sin(u);
      const double* fv = S.node_data(wn);
      const double* gv = Fi.node_data(wn);
      for (blade_t b = 0; b < nb; ++b) acc[b].add(c * fv[b] + s * gv[b]);
    }
    double* dst = out.node_data(xn);
    for (blade_t b = 0; b < nb; ++b) dst[b] = scale * acc[b].value();
  }
  return out;
}

/// Inverse via per-blade inverse FFT; only valid when xgrid generates the
/// spectrum's frequency grid. Same value as icft_direct up to roundoff.
inline SampledField icft_fast(const Spectrum& F, const Grid& xgrid) {
  const SampledField& S = F.data;
  const int m = S.grid().dim();
  if (!(dft_frequency_grid(xgrid) == S.grid()))
    throw TransformError("fast inverse needs the matching DFT grid pair");
  for (int d = 0; d < m; ++d)
    if (!is_pow2(xgrid.extent(d)))
      throw TransformError("fast path needs power-of-two extents");

  const std::size_t count = S.node_count();
  const std::size_t nb = S.stride();
  const double scale =
      S.grid().volume_element() / std::pow(2.0 * M_PI, m);

  const SampledField Fi = right_mul(S, F.root.i());
  const Grid& wg = S.grid();

  SampledField out(S.signature(), xgrid);
  std::vector<std::complex<double>> buf(count);
  std::vector<int> idx(m);
  for (blade_t b = 0; b < nb; ++b) {
    // V(w_k) = (F_b - j G_b) e^{+j w_k.x0}, scattered to DFT bin order.
    std::fill(buf.begin(), buf.end(), std::complex<double>());
    for (std::size_t wn = 0; wn < count; ++wn) {
      wg.unflatten(wn, idx);
      std::size_t bin = 0;
      double phase = 0.0;
      for (int d = 0; d < m; ++d) {
        const int n = xgrid.extent(d);
        const int shifted = ((idx[d] - n / 2) % n + n) % n;
        bin += static_cast<std::size_t>(shifted) * xgrid.stride(d);
        phase += wg.coord(d, idx[d]) * xgrid.coord(d, 0);
      }
      buf[bin] = std::complex<double>(S.at(wn, b), -Fi.at(wn, b)) *
                 std::polar(1.0, phase);
    }
    detail::fft_all_axes(buf, xgrid, +1);
    for (std::size_t xn = 0; xn < count; ++xn)
      out.at(xn, b) = scale * buf[xn].real();
  }
  return out;
}

/// Inverse transform; picks the FFT path when the grids form a DFT pair with
/// power-of-two extents, otherwise integrates directly.
inline SampledField icft(const Spectrum& F, const Grid& xgrid) {
  bool fast = dft_frequency_grid(xgrid) == F.data.grid();
  for (int d = 0; fast && d < xgrid.dim(); ++d)
    if (!is_pow2(xgrid.extent(d))) fast = false;
  return fast ? icft_fast(F, xgrid) : icft_direct(F, xgrid);
}

/// Forward transform on the DFT grid, FFT when the shape allows.
inline Spectrum cft(const SampledField& f, const ValidatedRoot& r) {
  for (int d = 0; d < f.grid().dim(); ++d)
    if (!is_pow2(f.grid().extent(d))) return cft_direct(f, r);
  return cft_fast(f, r);
}

inline double sup_difference(const SampledField& a, const SampledField& b) {
  a.require_compatible(b);
  double sup = 0.0;
  for (std::size_t node = 0; node < a.node_count(); ++node) {
    double d = 0.0;
    const double* av = a.node_data(node);
    const double* bv = b.node_data(node);
    for (blade_t k = 0; k < a.stride(); ++k)
      d += (av[k] - bv[k]) * (av[k] - bv[k]);
    sup = std::max(sup, d);
  }
  return std::sqrt(sup);
}

/// Energy identity in squared form: norm_sq(f) = (2pi)^{-n} norm_sq(F f).
inline VerificationReport check_parseval(const SampledField& f,
                                         const ValidatedRoot& r) {
  VerificationReport rep;
  rep.name = "parseval";
  const auto F = cft(f, r);
  const double lhs = norm_sq(f);
  const double rhs =
      norm_sq(F.data) / std::pow(2.0 * M_PI, f.grid().dim());
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.ratio = VerificationReport::compute_ratio(lhs, rhs);
  rep.tolerance = 1e-6;
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  rep.pass = scale == 0.0 || std::abs(lhs - rhs) <= rep.tolerance * scale;
  rep.diagnostics["spatial_energy"] = lhs;
  rep.diagnostics["spectral_energy_scaled"] = rhs;
  return rep;
}

/// Inner-product identity <f,g> = (2pi)^{-n} <Ff, Fg> (scalar parts).
inline VerificationReport check_plancherel(const SampledField& f,
                                           const SampledField& g,
                                           const ValidatedRoot& r) {
  VerificationReport rep;
  rep.name = "plancherel";
  const auto Ff = cft(f, r);
  const auto Fg = cft(g, r);
  const double lhs = inner(f, g).scalar;
  const double rhs =
      inner(Ff.data, Fg.data).scalar / std::pow(2.0 * M_PI, f.grid().dim());
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.ratio = VerificationReport::compute_ratio(lhs, rhs);
  rep.tolerance = 1e-6;
  const double scale = std::max({std::abs(lhs), std::abs(rhs),
                                 std::sqrt(norm_sq(f) * norm_sq(g))});
  rep.pass = scale == 0.0 || std::abs(lhs - rhs) <= rep.tolerance * scale;
  return rep;
}

/// Round trip icft(cft(f)) vs f in the max norm.
inline VerificationReport check_inversion(const SampledField& f,
                                          const ValidatedRoot& r) {
  VerificationReport rep;
  rep.name = "inversion";
  const auto F = cft(f, r);
  const auto back = icft(F, f.grid());
  const double dev = sup_difference(back, f);
  rep.lhs = dev;
  rep.rhs = 1e-6;
  rep.tolerance = 1e-6;
  rep.ratio = VerificationReport::compute_ratio(dev, rep.rhs);
  rep.pass = dev <= rep.tolerance;
  rep.diagnostics["sup_error"] = dev;
  rep.diagnostics["sup_f"] = sup_modulus(f);
  return rep;
}

/// F{f(a.)}(w) vs |a|^{-n} F{f}(w/a) on the frequencies both sides share.
inline VerificationReport check_scaling(const SampledField& f, double a,
                                        const ValidatedRoot& r) {
  if (a == 0.0) throw TransformError("scaling factor must be nonzero");
  VerificationReport rep;
  rep.name = "scaling";

  const auto g = scale_argument(f, a);
  const auto Fg = cft(g, r);          // nodes w'_k = |a| w_k
  const auto Ff = cft(f, r);          // nodes w_k
  const int m = f.grid().dim();
  const double amp = std::pow(std::abs(a), -m);

  // w'_k / a = w_k for a > 0, and the mirror node w_{N-k} for a < 0 (the
  // k = 0 row has no mirror and is skipped).
  const Grid& wg = Ff.data.grid();
  std::vector<int> idx(m);
  double worst = 0.0;
  double scale = 0.0;
  for (std::size_t wn = 0; wn < wg.node_count(); ++wn)
    scale = std::max(scale, std::sqrt(Ff.data.node_modulus_sq(wn)) * amp);
  for (std::size_t wn = 0; wn < Fg.data.node_count(); ++wn) {
    Fg.data.grid().unflatten(wn, idx);
    std::size_t src = 0;
    bool ok = true;
    for (int d = 0; d < m; ++d) {
      int k = idx[d];
      if (a < 0.0) {
        if (k == 0) { ok = false; break; }
        k = wg.extent(d) - k;
      }
      src += static_cast<std::size_t>(k) * wg.stride(d);
    }
    if (!ok) continue;
    double diff = 0.0;
    const double* lhsv = Fg.data.node_data(wn);
    const double* rhsv = Ff.data.node_data(src);
    for (blade_t b = 0; b < f.stride(); ++b) {
      const double d2 = lhsv[b] - amp * rhsv[b];
      diff += d2 * d2;
    }
    worst = std::max(worst, std::sqrt(diff));
  }
  rep.lhs = scale > 0.0 ? worst / scale : worst;
  rep.rhs = 1e-6;
  rep.tolerance = 1e-6;
  rep.ratio = VerificationReport::compute_ratio(rep.lhs, rep.rhs);
  rep.pass = rep.lhs <= rep.tolerance;
  rep.diagnostics["max_abs_deviation"] = worst;
  rep.diagnostics["spectrum_scale"] = scale;
  return rep;
}

/// F{a.grad f}(w) vs pairing(a,w) F{f}(w) i, relative L2.
inline VerificationReport check_derivative_property(const SampledField& f,
                                                    const Multivector& a,
                                                    const ValidatedRoot& r) {
  VerificationReport rep;
  rep.name = "derivative";
  const auto lhs = cft(directional_derivative(f, a), r);
  const auto Ff = cft(f, r);

  SampledField rhs = right_mul(Ff.data, r.i());
  const Grid& wg = rhs.grid();
  const int m = wg.dim();
  std::vector<int> idx(m);
  for (std::size_t wn = 0; wn < rhs.node_count(); ++wn) {
    wg.unflatten(wn, idx);
    double u = 0.0;
    for (int d = 0; d < m; ++d)
      u += a[blade_t{1} << d] * wg.coord(d, idx[d]);
    double* dst = rhs.node_data(wn);
    for (blade_t b = 0; b < rhs.stride(); ++b) dst[b] *= u;
  }

  const double num = std::sqrt(norm_sq(lhs.data - rhs));
  const double den = std::sqrt(norm_sq(rhs));
  rep.lhs = den > 0.0 ? num / den : num;
  rep.rhs = 5e-3;
  rep.tolerance = 5e-3;
  rep.ratio = VerificationReport::compute_ratio(rep.lhs, rep.rhs);
  rep.pass = rep.lhs <= rep.tolerance;
  rep.diagnostics["l2_deviation"] = num;
  rep.diagnostics["l2_reference"] = den;
  return rep;
}

/// Left linearity F{a h1 + b h2} = a F{h1} + b F{h2}, and right linearity
/// through the commuting split: F^i{h a} = F^i{h} a_plus + F^{-i}{h} a_minus.
inline VerificationReport check_linearity(const SampledField& h1,
                                          const SampledField& h2,
                                          const Multivector& alpha,
                                          const Multivector& beta,
                                          const ValidatedRoot& r) {
  h1.require_compatible(h2);
  VerificationReport rep;
  rep.name = "linearity";

  const auto F1 = cft(h1, r);
  const auto F2 = cft(h2, r);

  const auto left_lhs = cft(left_mul(alpha, h1) + left_mul(beta, h2), r);
  const auto left_rhs = left_mul(alpha, F1.data) + left_mul(beta, F2.data);
  const double left_dev = sup_difference(left_lhs.data, left_rhs);

  const auto neg = validate_root(-r.i());
  const auto F1n = cft(h1, neg);
  auto [a_plus, a_minus] = split_commuting(alpha, r);
  const auto right_lhs = cft(right_mul(h1, alpha), r);
  const auto right_rhs =
      right_mul(F1.data, a_plus) + right_mul(F1n.data, a_minus);
  const double right_dev = sup_difference(right_lhs.data, right_rhs);

  double scale = sup_modulus(F1.data) * (1.0 + modulus(alpha)) +
                 sup_modulus(F2.data) * (1.0 + modulus(beta));
  if (scale == 0.0) scale = 1.0;
  rep.lhs = std::max(left_dev, right_dev) / scale;
  rep.rhs = 1e-9;
  rep.tolerance = 1e-9;
  rep.ratio = VerificationReport::compute_ratio(rep.lhs, rep.rhs);
  rep.pass = rep.lhs <= rep.tolerance;
  rep.diagnostics["left_deviation"] = left_dev;
  rep.diagnostics["right_deviation"] = right_dev;
  rep.diagnostics["scale"] = scale;
  return rep;
}

}  // namespace clifft
