// Expression corpus shared by the unit tests and the verification battery.
// Expected values are computed by direct C++ arithmetic mirroring the tree
// the grammar assigns to each input, so comparisons are exact.

#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace clifft::expr_corpus {

struct ExprCase {
  const char* text;
  std::vector<double> xs;
  double want;
};

inline std::vector<ExprCase> expression_cases() {
  using std::cos;
  using std::exp;
  using std::fabs;
  using std::pow;
  using std::sin;
  using std::sqrt;
  const double pi = M_PI;
  const double e = M_E;
  return {
      {"1+2*3", {}, 7.0},
      {"(1+2)*3", {}, 9.0},
      {"2^3^2", {}, pow(2.0, pow(3.0, 2.0))},
      {"-2^2", {}, -pow(2.0, 2.0)},
      {"2^-2", {}, pow(2.0, -2.0)},
      {"1-2-3", {}, -4.0},
      {"12/4/3", {}, 12.0 / 4.0 / 3.0},
      {"1-2*3+4", {}, -1.0},
      {"10/4", {}, 2.5},
      {"0.5*4", {}, 2.0},
      {".25*8", {}, 2.0},
      {"pi", {}, pi},
      {"2*pi", {}, 2.0 * pi},
      {"e", {}, e},
      {"e^2", {}, pow(e, 2.0)},
      {"exp(1)", {}, exp(1.0)},
      {"exp(-0.5*x1^2)", {0.0}, 1.0},
      {"exp(-0.5*x1^2)", {1.0}, exp(-0.5 * pow(1.0, 2.0))},
      {"sin(pi/2)", {}, sin(pi / 2.0)},
      {"cos(0)", {}, 1.0},
      {"sqrt(16)", {}, 4.0},
      {"abs(-3.5)", {}, 3.5},
      {"sqrt(x1^2+x2^2)", {3.0, 4.0}, 5.0},
      {"x1*x2*x3", {2.0, 3.0, 4.0}, 24.0},
      {"x1/x2", {1.0, 3.0}, 1.0 / 3.0},
      {"2*x1+3*x2", {1.5, 2.5}, 2.0 * 1.5 + 3.0 * 2.5},
      {"exp(x1)*exp(x2)", {0.3, 0.7}, exp(0.3) * exp(0.7)},
      {"sin(x1)^2+cos(x1)^2", {0.8}, pow(sin(0.8), 2.0) + pow(cos(0.8), 2.0)},
      {"1/(1+x1^2)", {2.0}, 1.0 / (1.0 + pow(2.0, 2.0))},
      {"-x1", {7.0}, -7.0},
      {"--x1", {7.0}, 7.0},
      {"-(x1+1)", {2.0}, -3.0},
      {"(x1+x2)^2", {1.0, 2.0}, pow(3.0, 2.0)},
      {"abs(x1-x2)", {2.0, 5.0}, 3.0},
      {"exp(-(x1-1)^2)", {1.0}, 1.0},
      {"x1^0.5", {4.0}, pow(4.0, 0.5)},
      {"2^0.5", {}, pow(2.0, 0.5)},
      {"1e3", {}, 1000.0},
      {"x1^2*exp(-x1^2/2)", {1.5},
       pow(1.5, 2.0) * exp(-pow(1.5, 2.0) / 2.0)},
      {"sqrt(abs(x1))", {-9.0}, 3.0},
      {"cos(pi*x1)", {0.5}, cos(pi * 0.5)},
      {"(1+2)*(3+4)", {}, 21.0},
      {"((x1))", {5.0}, 5.0},
      {"3.25e-2", {}, 3.25e-2},
      {"x2", {1.0, 9.0}, 9.0},
      {"e^x1", {2.0}, pow(e, 2.0)},
      {"exp(1)-e", {}, exp(1.0) - e},
      {"2*3^2", {}, 2.0 * pow(3.0, 2.0)},
      {"(2*3)^2", {}, pow(6.0, 2.0)},
      {"1/3*3", {}, 1.0 / 3.0 * 3.0},
  };
}

struct BadExprCase {
  const char* text;
  std::size_t offset;
};

inline std::vector<BadExprCase> malformed_cases() {
  return {
      {"exp(", 4}, {"", 0},      {"1+", 2},    {"(1+2", 4},  {"1++2", 2},
      {"foo(1)", 0}, {"x0+1", 0}, {"1*/2", 2}, {"sin 1", 4}, {"2..5", 2},
  };
}

}  // namespace clifft::expr_corpus
