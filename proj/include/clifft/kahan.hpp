#pragma once

namespace clifft {

/// Kahan compensated accumulator. Callers feed terms in a fixed order so
/// results are bit-reproducible across runs.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - c_;
    const double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

}  // namespace clifft
