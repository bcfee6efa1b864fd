// Dense real Clifford algebra Cl(p,q).
//
// Blades are indexed by bitmask: bit l-1 set means generator e_l is present,
// and the blade is the product of its generators in ascending index order.
// A multivector is a flat array of 2^n real coefficients over that basis.

#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace clifft {

using blade_t = std::uint32_t;

struct SignatureMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Metric signature of Cl(p,q): generators 1..p square to +1, p+1..p+q to -1.
class Signature {
 public:
  static constexpr int max_dim = 10;

  Signature() = default;
  Signature(int p, int q) : p_(p), q_(q) {
    if (p < 0 || q < 0 || p + q > max_dim)
      throw std::invalid_argument("Signature: need p,q >= 0 and p+q <= " +
                                  std::to_string(max_dim));
  }

  int p() const { return p_; }
  int q() const { return q_; }
  int dim() const { return p_ + q_; }
  std::size_t blade_count() const { return std::size_t{1} << dim(); }

  /// Square of generator e_k (k is 1-based).
  double metric(int k) const { return k <= p_ ? 1.0 : -1.0; }

  /// Bitmask of the generators that square to -1.
  blade_t negative_mask() const {
    const blade_t all = static_cast<blade_t>(blade_count() - 1);
    const blade_t pos = (blade_t{1} << p_) - 1;
    return all & ~pos;
  }

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  int p_ = 0;
  int q_ = 0;
};

inline int grade_of(blade_t mask) { return std::popcount(mask); }

/// Parity sign from sorting the concatenated generator word a|b into
/// canonical ascending order (counts transpositions of adjacent generators).
inline int reorder_sign(blade_t a, blade_t b) {
  int swaps = 0;
  a >>= 1;
  while (a != 0) {
    swaps += std::popcount(a & b);
    a >>= 1;
  }
  return (swaps & 1) ? -1 : 1;
}

struct BladeProduct {
  int sign;      // +1 or -1
  blade_t mask;  // a XOR b
};

/// Product of two basis blades: reorder parity times one metric factor for
/// each generator the operands share.
inline BladeProduct blade_mul(blade_t a, blade_t b, const Signature& sig) {
  int sign = reorder_sign(a, b);
  if (std::popcount(a & b & sig.negative_mask()) & 1) sign = -sign;
  return {sign, a ^ b};
}

/// Sign carried by the principal reverse on blade `mask`: generator-order
/// reversal parity combined with one metric factor per generator.
inline int reverse_sign(blade_t mask, const Signature& sig) {
  const int k = grade_of(mask);
  int sign = ((k * (k - 1) / 2) & 1) ? -1 : 1;
  if (std::popcount(mask & sig.negative_mask()) & 1) sign = -sign;
  return sign;
}

/// Canonical blade spelling: "1" for the scalar, else "e1e3..." ascending.
inline std::string format_blade(blade_t mask) {
  if (mask == 0) return "1";
  std::string out;
  for (int l = 1; mask != 0; ++l, mask >>= 1)
    if (mask & 1) out += "e" + std::to_string(l);
  return out;
}

struct BladeParseError : std::invalid_argument {
  BladeParseError(const std::string& what, std::size_t offset)
      : std::invalid_argument(what), offset(offset) {}
  std::size_t offset;
};

/// Parse "1", "e1", "e1e2", ... Requires strictly ascending generator
/// indices within 1..n.
inline blade_t parse_blade(std::string_view text, const Signature& sig) {
  if (text == "1") return 0;
  blade_t mask = 0;
  std::size_t pos = 0;
  int prev = 0;
  while (pos < text.size()) {
    if (text[pos] != 'e')
      throw BladeParseError("expected 'e' in blade spelling", pos);
    std::size_t start = ++pos;
    int idx = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      idx = idx * 10 + (text[pos] - '0');
      ++pos;
      if (idx > Signature::max_dim)
        throw BladeParseError("generator index out of range", start);
    }
    if (pos == start)
      throw BladeParseError("expected generator index after 'e'", pos);
    if (idx < 1 || idx > sig.dim())
      throw BladeParseError("no such generator e" + std::to_string(idx) +
                                " in Cl(" + std::to_string(sig.p()) + "," +
                                std::to_string(sig.q()) + ")",
                            start);
    if (idx <= prev)
      throw BladeParseError("generator indices must be strictly ascending",
                            start);
    prev = idx;
    mask |= blade_t{1} << (idx - 1);
  }
  if (mask == 0) throw BladeParseError("empty blade spelling", 0);
  return mask;
}

namespace detail {

/// Cached table of blade-product signs for one signature.
class CayleyTable {
 public:
  static const CayleyTable& get(const Signature& sig) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<CayleyTable>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[{sig.p(), sig.q()}];
    if (!slot) slot = std::unique_ptr<CayleyTable>(new CayleyTable(sig));
    return *slot;
  }

  const std::int8_t* row(blade_t a) const { return signs_.data() + (std::size_t{a} << n_); }
  int sign(blade_t a, blade_t b) const { return row(a)[b]; }

 private:
  explicit CayleyTable(const Signature& sig) : n_(sig.dim()) {
    const std::size_t count = sig.blade_count();
    signs_.resize(count * count);
    for (blade_t a = 0; a < count; ++a)
      for (blade_t b = 0; b < count; ++b)
        signs_[(std::size_t{a} << n_) | b] =
            static_cast<std::int8_t>(blade_mul(a, b, sig).sign);
  }

  int n_;
  std::vector<std::int8_t> signs_;
};

}  // namespace detail

/// Element of Cl(p,q) as a dense coefficient array indexed by blade mask.
class Multivector {
 public:
  explicit Multivector(Signature sig)
      : sig_(sig), c_(sig.blade_count(), 0.0) {}

  static Multivector scalar(Signature sig, double value) {
    Multivector m(sig);
    m.c_[0] = value;
    return m;
  }

  static Multivector basis(Signature sig, blade_t mask, double coeff = 1.0) {
    Multivector m(sig);
    if (mask >= sig.blade_count())
      throw std::invalid_argument("Multivector::basis: blade mask out of range");
    m.c_[mask] = coeff;
    return m;
  }

  const Signature& signature() const { return sig_; }
  std::size_t size() const { return c_.size(); }

  friend bool operator==(const Multivector& a, const Multivector& b) {
    return a.sig_ == b.sig_ && a.c_ == b.c_;
  }

  double operator[](blade_t mask) const { return c_[mask]; }
  double& operator[](blade_t mask) { return c_[mask]; }

  std::span<const double> coeffs() const { return c_; }
  std::span<double> coeffs() { return c_; }

  Multivector& operator+=(const Multivector& o) {
    require_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Multivector& operator-=(const Multivector& o) {
    require_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Multivector& operator*=(double s) {
    for (double& v : c_) v *= s;
    return *this;
  }

  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator*(Multivector a, double s) { return a *= s; }
  friend Multivector operator*(double s, Multivector a) { return a *= s; }
  friend Multivector operator-(Multivector a) { return a *= -1.0; }

  void require_same(const Multivector& o) const {
    if (!(sig_ == o.sig_))
      throw SignatureMismatch("multivector operands have different signatures");
  }

 private:
  Signature sig_;
  std::vector<double> c_;
};

inline Multivector geometric_product(const Multivector& M, const Multivector& N) {
  M.require_same(N);
  const Signature& sig = M.signature();
  const auto& table = detail::CayleyTable::get(sig);
  const std::size_t count = sig.blade_count();
  Multivector out(sig);
  for (blade_t a = 0; a < count; ++a) {
    const double ma = M[a];
    if (ma == 0.0) continue;
    const std::int8_t* row = table.row(a);
    for (blade_t b = 0; b < count; ++b)
      out[a ^ b] += row[b] * ma * N[b];
  }
  return out;
}

inline Multivector operator*(const Multivector& a, const Multivector& b) {
  return geometric_product(a, b);
}

/// Grade-k part. Throws for k outside 0..n.
inline Multivector grade_project(const Multivector& M, int k) {
  const int n = M.signature().dim();
  if (k < 0 || k > n)
    throw std::invalid_argument("grade_project: grade out of range");
  Multivector out(M.signature());
  for (blade_t mask = 0; mask < M.size(); ++mask)
    if (grade_of(mask) == k) out[mask] = M[mask];
  return out;
}

/// Outer product, the grade-(k+s) parts of the products of grade parts.
/// Only blade pairs with disjoint generator sets contribute.
inline Multivector outer_product(const Multivector& A, const Multivector& B) {
  A.require_same(B);
  const auto& table = detail::CayleyTable::get(A.signature());
  const std::size_t count = A.size();
  Multivector out(A.signature());
  for (blade_t a = 0; a < count; ++a) {
    const double ca = A[a];
    if (ca == 0.0) continue;
    const std::int8_t* row = table.row(a);
    for (blade_t b = 0; b < count; ++b) {
      if ((a & b) != 0) continue;
      out[a | b] += row[b] * ca * B[b];
    }
  }
  return out;
}

inline Multivector operator^(const Multivector& a, const Multivector& b) {
  return outer_product(a, b);
}

/// Principal reverse: generator-order reversal combined with one metric
/// factor per generator. Plays the role of conjugation for Cl(p,q).
inline Multivector principal_reverse(const Multivector& M) {
  Multivector out(M.signature());
  for (blade_t mask = 0; mask < M.size(); ++mask)
    out[mask] = reverse_sign(mask, M.signature()) * M[mask];
  return out;
}

/// Coefficient pairing sum_A M_A N_A; equals the scalar part of M * ~N.
inline double coeff_dot(const Multivector& M, const Multivector& N) {
  M.require_same(N);
  double sum = 0.0;
  for (blade_t mask = 0; mask < M.size(); ++mask) sum += M[mask] * N[mask];
  return sum;
}

/// Scalar part of the geometric product, <MN>_0.
inline double scalar_product(const Multivector& M, const Multivector& N) {
  M.require_same(N);
  const auto& table = detail::CayleyTable::get(M.signature());
  double sum = 0.0;
  // <e_a e_b>_0 needs a == b.
  for (blade_t mask = 0; mask < M.size(); ++mask)
    sum += table.sign(mask, mask) * M[mask] * N[mask];
  return sum;
}

inline double modulus_sq(const Multivector& M) { return coeff_dot(M, M); }
inline double modulus(const Multivector& M) { return std::sqrt(modulus_sq(M)); }

inline bool is_vector(const Multivector& M) {
  for (blade_t mask = 0; mask < M.size(); ++mask)
    if (grade_of(mask) != 1 && M[mask] != 0.0) return false;
  return true;
}

inline Multivector make_vector(Signature sig, std::span<const double> comps) {
  if (comps.size() != static_cast<std::size_t>(sig.dim()))
    throw std::invalid_argument("make_vector: need one component per generator");
  Multivector m(sig);
  for (int l = 0; l < sig.dim(); ++l) m[blade_t{1} << l] = comps[l];
  return m;
}

inline std::vector<double> vector_coeffs(const Multivector& M) {
  std::vector<double> out(M.signature().dim());
  for (int l = 0; l < M.signature().dim(); ++l) out[l] = M[blade_t{1} << l];
  return out;
}

/// Euclidean pairing sum_l a^l b^l of two grade-1 vectors (a * ~b for
/// vectors). This, not the metric dot, is the weight used by the transform
/// phase and the uncertainty integrals.
inline double pairing(const Multivector& a, const Multivector& b) {
  a.require_same(b);
  if (!is_vector(a) || !is_vector(b))
    throw std::invalid_argument("pairing: arguments must be grade-1 vectors");
  double sum = 0.0;
  for (int l = 0; l < a.signature().dim(); ++l) {
    const blade_t mask = blade_t{1} << l;
    sum += a[mask] * b[mask];
  }
  return sum;
}

}  // namespace clifft
