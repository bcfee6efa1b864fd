#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "clifft/roots.hpp"
#include "oracles.hpp"

using namespace clifft;

namespace {

Multivector unit_negative_vector(const Signature& sig, std::mt19937& rng) {
  // Unit vectors supported on the generators squaring to -1 are roots:
  // v*v = -|v|^2 and reverse(v) = -v.
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  Multivector v(sig);
  double norm_sq = 0.0;
  for (int l = sig.p() + 1; l <= sig.dim(); ++l) {
    const double c = coeff(rng);
    v[blade_t{1} << (l - 1)] = c;
    norm_sq += c * c;
  }
  return v * (1.0 / std::sqrt(norm_sq));
}

}  // namespace

TEST_CASE("root validation", "[roots]") {
  SECTION("accepted examples") {
    CHECK_NOTHROW(validate_root(Multivector::basis(Signature(0, 1), 0b1)));
    CHECK_NOTHROW(validate_root(Multivector::basis(Signature(2, 0), 0b11)));
    CHECK_NOTHROW(validate_root(Multivector::basis(Signature(3, 0), 0b111)));
  }

  SECTION("a generator with positive square is rejected") {
    CHECK_THROWS_AS(validate_root(Multivector::basis(Signature(2, 0), 0b01)),
                    NotARoot);
  }

  SECTION("square and reverse failures are reported separately") {
    const Signature cl11(1, 1);
    Multivector m(cl11);
    m[0b01] = 1.0;
    m[0b10] = std::sqrt(2.0);
    // m*m = (1 - 2) = -1 but reverse(m) = e1 - sqrt(2) e2 != -m.
    CHECK_THROWS_AS(validate_root(m), ReverseConditionFailed);
  }

  SECTION("negation of a valid root validates") {
    for (const auto& r : enumerate_blade_roots(Signature(2, 2)))
      CHECK_NOTHROW(validate_root(-r.i()));
  }

  SECTION("cached inverse multiplies back to 1") {
    const auto r = validate_root(Multivector::basis(Signature(2, 0), 0b11));
    auto prod = r.i_inv() * r.i();
    CHECK(modulus(prod - Multivector::scalar(r.signature(), 1.0)) <= 1e-12);
  }

  SECTION("validated roots have unit modulus") {
    // |i|^2 = coeff_dot(i,i) = <i * reverse(i)>_0 = -<i*i>_0 = 1, so the
    // validation conditions force unit modulus up to the gate tolerance.
    std::mt19937 rng(201);
    for (int p = 0; p <= 4; ++p)
      for (int q = 0; p + q <= 4; ++q)
        for (const auto& r : enumerate_blade_roots(Signature(p, q)))
          CHECK(r.modulus_sq() == 1.0);
    const auto vr = validate_root(unit_negative_vector(Signature(0, 3), rng));
    CHECK(std::abs(vr.modulus_sq() - 1.0) <= 1e-12);
  }
}

TEST_CASE("blade root enumeration", "[roots]") {
  SECTION("small signatures") {
    auto r20 = enumerate_blade_roots(Signature(2, 0));
    REQUIRE(r20.size() == 1);
    CHECK(r20[0].i()[0b11] == 1.0);

    auto r01 = enumerate_blade_roots(Signature(0, 1));
    REQUIRE(r01.size() == 1);
    CHECK(r01[0].i()[0b1] == 1.0);

    CHECK(enumerate_blade_roots(Signature(1, 0)).empty());
  }

  SECTION("every enumerated root passes both gates exactly") {
    for (int p = 0; p <= 6; ++p)
      for (int q = 0; p + q <= 6; ++q) {
        const Signature sig(p, q);
        blade_t prev = 0;
        for (const auto& r : enumerate_blade_roots(sig)) {
          blade_t mask = 0;
          for (blade_t m = 0; m < sig.blade_count(); ++m)
            if (r.i()[m] != 0.0) mask = m;
          CHECK(mask >= prev);
          prev = mask;
          auto sq = r.i() * r.i();
          CHECK(modulus(sq - Multivector::scalar(sig, -1.0)) == 0.0);
          CHECK(modulus(principal_reverse(r.i()) + r.i()) == 0.0);
        }
      }
  }
}

TEST_CASE("commuting split", "[roots]") {
  SECTION("scalars and the root itself sit in the plus part") {
    const auto r = validate_root(Multivector::basis(Signature(0, 1), 0b1));
    auto [p1, m1] = split_commuting(Multivector::scalar(r.signature(), 1.0), r);
    CHECK(p1[0] == 1.0);
    CHECK(modulus(m1) == 0.0);
    auto [p2, m2] = split_commuting(r.i(), r);
    CHECK(modulus(p2 - r.i()) == 0.0);
    CHECK(modulus(m2) == 0.0);
  }

  SECTION("a vector anticommutes with the plane bivector containing it") {
    const auto r = validate_root(Multivector::basis(Signature(2, 0), 0b11));
    auto e1 = Multivector::basis(r.signature(), 0b01);
    auto [plus, minus] = split_commuting(e1, r);
    CHECK(modulus(plus) == 0.0);
    CHECK(modulus(minus - e1) == 0.0);
  }

  SECTION("sum, commutation, and idempotence on random multivectors") {
    std::mt19937 rng(202);
    for (int p = 0; p <= 4; ++p)
      for (int q = 0; p + q <= 4; ++q) {
        const Signature sig(p, q);
        for (const auto& r : enumerate_blade_roots(sig))
          for (int trial = 0; trial < 25; ++trial) {
            auto a = oracle::random_unit_scale_mv(sig, rng);
            auto [plus, minus] = split_commuting(a, r);
            REQUIRE(modulus(plus + minus - a) <= 1e-12);
            REQUIRE(modulus(plus * r.i() - r.i() * plus) <= 1e-12);
            REQUIRE(modulus(minus * r.i() + r.i() * minus) <= 1e-12);
            auto [pp, pm] = split_commuting(plus, r);
            REQUIRE(modulus(pp - plus) <= 1e-12);
            REQUIRE(modulus(pm) <= 1e-12);
          }
      }
  }
}

TEST_CASE("kernel evaluation", "[roots]") {
  const auto r = validate_root(Multivector::basis(Signature(0, 1), 0b1));

  SECTION("special angles") {
    auto k0 = kernel(0.0, r);
    CHECK(k0[0] == 1.0);
    CHECK(k0[0b1] == 0.0);
    auto khalf = kernel(M_PI / 2, r);
    CHECK(std::abs(khalf[0]) <= 1e-15);
    CHECK(khalf[0b1] == -1.0);
    auto kpi = kernel(M_PI, r);
    CHECK(std::abs(kpi[0] + 1.0) <= 1e-15);
    CHECK(std::abs(kpi[0b1]) <= 1e-15);
  }

  SECTION("modulus identity") {
    const double u = 1.234;
    const double want =
        std::cos(u) * std::cos(u) + r.modulus_sq() * std::sin(u) * std::sin(u);
    CHECK(std::abs(modulus_sq(kernel(u, r)) - want) <= 1e-15);
  }

  SECTION("group law and inverse") {
    std::mt19937 rng(203);
    std::uniform_real_distribution<double> angle(-10.0, 10.0);
    const auto r2 = validate_root(Multivector::basis(Signature(2, 0), 0b11));
    for (const auto& root : {r, r2})
      for (int trial = 0; trial < 200; ++trial) {
        const double u = angle(rng), v = angle(rng);
        auto prod = kernel(u, root) * kernel(v, root);
        REQUIRE(modulus(prod - kernel(u + v, root)) <= 1e-12);
        auto inv = kernel(u, root) * kernel(-u, root);
        REQUIRE(modulus(inv - Multivector::scalar(root.signature(), 1.0)) <=
                1e-12);
      }
  }
}

TEST_CASE("complexified kernel and its modulus bound", "[roots]") {
  SECTION("real frequency reduces to the real kernel") {
    const Signature sig(0, 1);
    const auto r = validate_root(Multivector::basis(sig, 0b1));
    auto x = make_vector(sig, std::vector<double>{0.7});
    auto a = make_vector(sig, std::vector<double>{1.3});
    auto b = Multivector(sig);
    auto ck = complex_kernel(x, a, b, r);
    CHECK(modulus(ck.re - kernel(pairing(x, a), r)) <= 1e-15);
    CHECK(modulus(ck.im) == 0.0);
  }

  SECTION("pure imaginary frequency gives hyperbolic growth") {
    const Signature sig(0, 1);
    const auto r = validate_root(Multivector::basis(sig, 0b1));
    auto x = make_vector(sig, std::vector<double>{1.0});
    auto b = make_vector(sig, std::vector<double>{1.0});
    auto ck = complex_kernel(x, Multivector(sig), b, r);
    const double want = std::sqrt(std::cosh(1.0) * std::cosh(1.0) +
                                  std::sinh(1.0) * std::sinh(1.0));
    CHECK(std::abs(ck.modulus() - want) <= 1e-12);
    CHECK(std::abs(ck.modulus() - 1.9397) <= 1e-3);
    const double bound = complex_kernel_bound(x, b, r);
    CHECK(std::abs(bound - std::sqrt(2.0) * std::exp(1.0)) <= 1e-4);
    CHECK(ck.modulus() <= bound + 1e-12);
  }

  SECTION("rejects non-vector arguments") {
    const Signature sig(2, 0);
    const auto r = validate_root(Multivector::basis(sig, 0b11));
    auto x = Multivector::basis(sig, 0b01);
    CHECK_THROWS_AS(complex_kernel(x, Multivector::basis(sig, 0b11), Multivector(sig), r),
                    std::invalid_argument);
  }

  SECTION("bound holds on random draws across signatures") {
    std::mt19937 rng(204);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    for (int p = 0; p <= 4; ++p)
      for (int q = 0; p + q <= 4; ++q) {
        const Signature sig(p, q);
        if (sig.dim() == 0) continue;
        std::vector<ValidatedRoot> roots = enumerate_blade_roots(sig);
        if (q >= 2) roots.push_back(validate_root(unit_negative_vector(sig, rng)));
        for (const auto& root : roots)
          for (int trial = 0; trial < 50; ++trial) {
            std::vector<double> xv(sig.dim()), av(sig.dim()), bv(sig.dim());
            for (auto& v : xv) v = coeff(rng);
            for (auto& v : av) v = coeff(rng);
            for (auto& v : bv) v = coeff(rng);
            auto x = make_vector(sig, xv);
            auto a = make_vector(sig, av);
            auto b = make_vector(sig, bv);
            REQUIRE(complex_kernel(x, a, b, root).modulus() <=
                    complex_kernel_bound(x, b, root) + 1e-12);
          }
      }
  }
}
