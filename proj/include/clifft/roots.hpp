// Square roots of -1 and the transform kernel built on them.
//
// A usable root i must satisfy i*i = -1 and reverse(i) = -i. Both gates are
// checked to 1e-12 on unit-scale coefficients; blade roots pass exactly.

#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <utility>
#include <vector>

#include "clifft/algebra.hpp"

namespace clifft {

struct RootValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
/// i*i differs from -1.
struct NotARoot : RootValidationError {
  using RootValidationError::RootValidationError;
};
/// i*i = -1 holds but reverse(i) differs from -i.
struct ReverseConditionFailed : RootValidationError {
  using RootValidationError::RootValidationError;
};

inline constexpr double kRootTol = 1e-12;

class ValidatedRoot {
 public:
  const Multivector& i() const { return i_; }
  /// Inverse of i. Fixed to -i, which is exact whenever i*i = -1.
  const Multivector& i_inv() const { return inv_; }
  double modulus_sq() const { return mod_sq_; }
  const Signature& signature() const { return i_.signature(); }

  friend ValidatedRoot validate_root(const Multivector& M);

 private:
  explicit ValidatedRoot(Multivector i)
      : i_(std::move(i)), inv_(-i_), mod_sq_(clifft::modulus_sq(i_)) {}

  Multivector i_;
  Multivector inv_;
  double mod_sq_;
};

inline ValidatedRoot validate_root(const Multivector& M) {
  const auto sq = M * M;
  const auto minus_one = Multivector::scalar(M.signature(), -1.0);
  const double dev = modulus(sq - minus_one);
  if (dev > kRootTol) {
    char msg[96];
    std::snprintf(msg, sizeof(msg), "square differs from -1 by %.3g (tolerance %.0e)", dev,
                  kRootTol);
    throw NotARoot(msg);
  }
  if (modulus(principal_reverse(M) + M) > kRootTol)
    throw ReverseConditionFailed("principal reverse differs from negation");
  return ValidatedRoot(M);
}

/// All single blades e_A (positive orientation) that validate, in ascending
/// mask order.
inline std::vector<ValidatedRoot> enumerate_blade_roots(const Signature& sig) {
  std::vector<ValidatedRoot> roots;
  for (blade_t mask = 0; mask < sig.blade_count(); ++mask) {
    if (blade_mul(mask, mask, sig).sign != -1) continue;
    if (reverse_sign(mask, sig) != -1) continue;
    roots.push_back(validate_root(Multivector::basis(sig, mask)));
  }
  return roots;
}

/// Unique decomposition A = A_plus + A_minus with A_plus commuting and
/// A_minus anticommuting with the root.
inline std::pair<Multivector, Multivector> split_commuting(
    const Multivector& A, const ValidatedRoot& r) {
  A.require_same(r.i());
  const auto conj = r.i_inv() * A * r.i();
  auto plus = 0.5 * (A + conj);
  auto minus = 0.5 * (A - conj);
  return {std::move(plus), std::move(minus)};
}

/// e^{-i u} = cos(u) - sin(u) i.
inline Multivector kernel(double u, const ValidatedRoot& r) {
  auto out = r.i() * (-std::sin(u));
  out[0] += std::cos(u);
  return out;
}

/// Element of the complexification: re + j im with an external j, j*j = -1,
/// j commuting with everything and reverse extended by j~ = -j.
struct ComplexMultivector {
  Multivector re;
  Multivector im;

  double modulus_sq() const {
    return clifft::modulus_sq(re) + clifft::modulus_sq(im);
  }
  double modulus() const { return std::sqrt(modulus_sq()); }
};

/// Kernel at the complexified frequency z = a + j b: with u = pairing(x,a)
/// - j pairing(x,b), returns cos(u) - sin(u) i.
inline ComplexMultivector complex_kernel(const Multivector& x,
                                         const Multivector& a,
                                         const Multivector& b,
                                         const ValidatedRoot& r) {
  const std::complex<double> u(pairing(x, a), -pairing(x, b));
  const auto cu = std::cos(u);
  const auto su = std::sin(u);
  ComplexMultivector out{r.i() * (-su.real()), r.i() * (-su.imag())};
  out.re[0] += cu.real();
  out.im[0] += cu.imag();
  return out;
}

/// Upper bound sqrt(1+|i|^2) e^{|x||b|} on the complex kernel modulus.
inline double complex_kernel_bound(const Multivector& x, const Multivector& b,
                                   const ValidatedRoot& r) {
  return std::sqrt(1.0 + r.modulus_sq()) * std::exp(modulus(x) * modulus(b));
}

}  // namespace clifft
