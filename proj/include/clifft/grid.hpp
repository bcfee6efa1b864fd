// Uniform midpoint grids over a box in R^m, m in 1..3. Node k along an axis
// sits at min + (k + 1/2) h, so every node is a cell center and the midpoint
// quadrature weight is the constant cell volume.

#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace clifft {

struct GridError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class Grid {
 public:
  static constexpr int max_dim = 3;

  Grid(std::vector<double> min, std::vector<double> max,
       std::vector<int> shape)
      : min_(std::move(min)), max_(std::move(max)), shape_(std::move(shape)) {
    const std::size_t m = min_.size();
    if (m < 1 || m > max_dim)
      throw GridError("grid dimension must be 1..3, got " + std::to_string(m));
    if (max_.size() != m || shape_.size() != m)
      throw GridError("grid min/max/shape lengths differ");
    h_.resize(m);
    stride_.assign(m, 1);
    for (std::size_t d = 0; d < m; ++d) {
      if (shape_[d] < 2)
        throw GridError("grid needs at least 2 samples per axis");
      if (!(max_[d] > min_[d]))
        throw GridError("grid needs max > min on every axis");
      h_[d] = (max_[d] - min_[d]) / shape_[d];
    }
    for (int d = static_cast<int>(m) - 2; d >= 0; --d)
      stride_[d] = stride_[d + 1] * static_cast<std::size_t>(shape_[d + 1]);
  }

  int dim() const { return static_cast<int>(shape_.size()); }
  int extent(int d) const { return shape_[d]; }
  double lo(int d) const { return min_[d]; }
  double hi(int d) const { return max_[d]; }
  double spacing(int d) const { return h_[d]; }
  /// Row-major stride of axis d (last axis varies fastest).
  std::size_t stride(int d) const { return stride_[d]; }

  double volume_element() const {
    double v = 1.0;
    for (double h : h_) v *= h;
    return v;
  }

  std::size_t node_count() const {
    std::size_t n = 1;
    for (int s : shape_) n *= static_cast<std::size_t>(s);
    return n;
  }

  double coord(int d, int k) const { return min_[d] + (k + 0.5) * h_[d]; }

  void unflatten(std::size_t flat, std::span<int> idx) const {
    for (int d = dim() - 1; d >= 0; --d) {
      idx[d] = static_cast<int>(flat % static_cast<std::size_t>(shape_[d]));
      flat /= static_cast<std::size_t>(shape_[d]);
    }
  }

  std::vector<double> node(std::size_t flat) const {
    std::vector<int> idx(dim());
    unflatten(flat, idx);
    std::vector<double> x(dim());
    for (int d = 0; d < dim(); ++d) x[d] = coord(d, idx[d]);
    return x;
  }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.min_ == b.min_ && a.max_ == b.max_ && a.shape_ == b.shape_;
  }

 private:
  std::vector<double> min_, max_;
  std::vector<int> shape_;
  std::vector<double> h_;
  std::vector<std::size_t> stride_;
};

}  // namespace clifft
