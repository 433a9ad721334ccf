#include <cmath>
#include <numbers>


#include "biaxial/specfun.hpp"

namespace biaxial {

bool is_nonpositive_integer(double x, double tol) {
  return x <= tol && std::abs(x - std::round(x)) <= tol;
}

double rgamma(double x) {
  if (is_nonpositive_integer(x)) return 0.0;
  if (x > 170.0) return std::exp(-std::lgamma(x));
  return 1.0 / std::tgamma(x);
}

double digamma(double x) {
  if (is_nonpositive_integer(x)) throw PoleError("digamma: pole at non-positive integer");
  if (x < 0.0) {
    // psi(x) = psi(1-x) - pi cot(pi x)
    return digamma(1.0 - x) - std::numbers::pi / std::tan(std::numbers::pi * x);
  }
  double acc = 0.0;
  while (x < 10.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double r = 1.0 / (x * x);
  // Bernoulli tail: -sum B_2k / (2k x^2k)
  const double tail =
      r * (-1.0 / 12 +
           r * (1.0 / 120 +
                r * (-1.0 / 252 +
                     r * (1.0 / 240 + r * (-1.0 / 132 + r * (691.0 / 32760 + r * (-1.0 / 12)))))));
  return acc + std::log(x) - 0.5 / x + tail;
}

}  // namespace biaxial
