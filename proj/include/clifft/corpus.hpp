// Deterministic random test fields: low-degree polynomials times centered
// or shifted gaussians. Smooth, decaying, and resolvable on modest grids,
// which is what the energy and uncertainty checks need.

#pragma once

#include <random>
#include <vector>

#include "clifft/field.hpp"

namespace clifft {

/// P(x - mu) e^{-t|x - mu|^2} with a separable degree-2 polynomial per
/// active blade. Always returns a nonzero field.
inline SampledField random_hermite_gaussian(const Signature& sig,
                                            const Grid& grid,
                                            std::mt19937& rng,
                                            bool allow_shift = true) {
  std::uniform_real_distribution<double> decay(0.3, 1.0);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::uniform_real_distribution<double> shift(-1.0, 1.0);

  const int m = grid.dim();
  const double t = decay(rng);
  std::vector<double> mu(m, 0.0);
  if (allow_shift)
    for (int d = 0; d < m; ++d) mu[d] = shift(rng);

  const std::size_t nb = sig.blade_count();
  std::uniform_int_distribution<std::size_t> blade_pick(0, nb - 1);
  const int actives = 1 + static_cast<int>(rng() % 2);
  std::vector<blade_t> blades;
  for (int k = 0; k < actives; ++k)
    blades.push_back(static_cast<blade_t>(blade_pick(rng)));

  // poly[b][d] = quadratic coefficients for blade b along axis d.
  std::vector<std::vector<std::array<double, 3>>> poly(blades.size());
  for (auto& per_axis : poly) {
    per_axis.resize(m);
    for (auto& c : per_axis) c = {coeff(rng) + 0.5, coeff(rng), coeff(rng)};
  }

  SampledField f(sig, grid);
  const std::size_t count = grid.node_count();
  std::vector<int> idx(m);
  for (std::size_t node = 0; node < count; ++node) {
    grid.unflatten(node, idx);
    double r2 = 0.0;
    std::vector<double> y(m);
    for (int d = 0; d < m; ++d) {
      y[d] = grid.coord(d, idx[d]) - mu[d];
      r2 += y[d] * y[d];
    }
    const double envelope = std::exp(-t * r2);
    for (std::size_t b = 0; b < blades.size(); ++b) {
      double v = envelope;
      for (int d = 0; d < m; ++d) {
        const auto& c = poly[b][d];
        v *= c[0] + c[1] * y[d] + c[2] * y[d] * y[d];
      }
      f.at(node, blades[b]) += v;
    }
  }
  return f;
}

inline std::vector<SampledField> hermite_corpus(const Signature& sig,
                                                const Grid& grid, int count,
                                                unsigned seed,
                                                bool allow_shift = true) {
  std::mt19937 rng(seed);
  std::vector<SampledField> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k)
    out.push_back(random_hermite_gaussian(sig, grid, rng, allow_shift));
  return out;
}

}  // namespace clifft
