#pragma once

// Scalar special functions: Pochhammer symbol, digamma, the Gauss function
// 2F1 on (-inf, 1] and the Appell function F2, both through its double series
// and through the product-of-2F1 expansion that reaches the quadrant
// x <= 0, y <= 0 where the fundamental solution lives.

#include <algorithm>
#include <cmath>
#include <memory>
#include <string_view>
#include <vector>

#include "biaxial/errors.hpp"

namespace biaxial {

/// Rising factorial (a)_n = a (a+1) ... (a+n-1), (a)_0 = 1.
template <class T = double>
T pochhammer(T a, unsigned n) {
  T p = T(1);
  for (unsigned k = 0; k < n; ++k) p *= a + T(k);
  return p;
}

/// psi(x) = Gamma'(x)/Gamma(x). Throws PoleError at x = 0, -1, -2, ...
double digamma(double x);

/// 1/Gamma(x), zero at the poles of Gamma.
double rgamma(double x);

bool is_nonpositive_integer(double x, double tol = 0.0);

struct HyperParams2F1 {
  double a, b, c;
};

struct HyperParamsF2 {
  double a, b1, b2, c1, c2;
};

/// Which evaluation route gauss_2f1 took; reported by the CLI.
enum class Branch2F1 {
  Trivial,      // z == 0
  Series,       // direct power series, 0 < z < z_switch
  Pfaff,        // z < 0 mapped to z/(z-1)
  GaussSum,     // z == 1
  NearOne,      // linear transformation about 1-z, c-a-b non-integer
  Logarithmic,  // c-a-b integer: digamma expansion about 1-z
};

std::string_view to_string(Branch2F1 b);

struct Value2F1 {
  double value;
  Branch2F1 branch;
};

/// Numerical policy shared by the hypergeometric series.
struct SeriesPolicy {
  static constexpr double tol = 1e-14;
  static constexpr int max_terms = 100000;
  static constexpr double z_switch = 0.75;
  static constexpr double integer_tol = 1e-12;
};

/// 2F1 with fixed parameters; gamma-function constants of the
/// transformations are computed once so repeated evaluation is cheap.
class Gauss2F1 {
 public:
  explicit Gauss2F1(HyperParams2F1 p);

  double operator()(double z) const { return evaluate(z).value; }
  Value2F1 evaluate(double z) const;
  /// Same, with the complement w = 1 - z supplied by the caller; near z = 1
  /// this keeps the digits that 1 - z would lose.
  Value2F1 evaluate(double z, double w) const;
  const HyperParams2F1& params() const { return p_; }

 private:
  double near_one(double w, Branch2F1& branch) const;
  double pfaff(double z, double w, Branch2F1& branch) const;

  Gauss2F1(HyperParams2F1 p, bool with_pfaff);

  HyperParams2F1 p_;
  bool polynomial_ = false;
  std::shared_ptr<const Gauss2F1> pfaff_;  // F(c-a, b; c; .) for z < 0
  double s_;            // c - a - b
  int s_int_ = 0;       // rounded s when integral
  bool s_integral_ = false;
  double conn1_ = 0.0;  // Gamma(c)Gamma(s)/(Gamma(c-a)Gamma(c-b))
  double conn2_ = 0.0;  // Gamma(c)Gamma(-s)/(Gamma(a)Gamma(b))
};

/// Gauss hypergeometric function for real z <= 1.
/// Throws DomainError for z > 1 and PoleError for z == 1 with c-a-b <= 0.
double gauss_2f1(HyperParams2F1 p, double z);
Value2F1 gauss_2f1_branch(HyperParams2F1 p, double z);

/// Truncated direct series, templated so tests can run it in long double.
template <class T>
T gauss_2f1_power_series(T a, T b, T c, T z, int max_terms = SeriesPolicy::max_terms) {
  T sum = T(1), term = T(1);
  int small = 0;
  for (int k = 0; k < max_terms; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z;
    sum += term;
    if (std::abs(term) <= T(SeriesPolicy::tol) * std::abs(sum)) {
      if (++small == 3) return sum;
    } else {
      small = 0;
    }
  }
  throw ConvergenceError("2F1 power series did not converge");
}

struct SeriesStats {
  int terms = 0;          // diagonals (double series) or outer terms (product expansion)
  double tail_bound = 0;  // estimated magnitude of the neglected tail
};

/// Direct double series of F2; requires |x| + |y| < 1.
/// The stopping rule bounds the tail by the geometric majorant of the
/// diagonal sums D_N = sum_{m+n=N} |t_{mn}|.
template <class T>
T appell_f2_double_series(const HyperParamsF2& p, T x, T y, SeriesStats* stats = nullptr,
                          T tol = T(SeriesPolicy::tol), int max_diagonals = 20000);

double appell_f2_series(const HyperParamsF2& p, double x, double y);

/// F2 on {x <= 0, y <= 0} union {|x| + |y| < 1}.
/// In the negative quadrant it uses the product-of-2F1 expansion when the
/// outer ratio x y/((1-x)(1-y)) is small and an Euler-integral route otherwise.
double appell_f2(const HyperParamsF2& p, double x, double y);

enum class F2Route { Trivial, Product, Euler, Series };
std::string_view to_string(F2Route r);
/// The route appell_f2 takes at (x, y); throws as appell_f2 does.
F2Route appell_f2_route(const HyperParamsF2& p, double x, double y);

/// Product expansion alone (x, y <= 0), for diagnostics and tests.
double appell_f2_product(const HyperParamsF2& p, double x, double y, SeriesStats* stats = nullptr);

/// Euler integral route alone (x, y <= 0), for diagnostics and tests.
double appell_f2_euler(const HyperParamsF2& p, double x, double y);

/// d^{m+n} F2 / dx^m dy^n via the parameter-shift formula.
double appell_f2_derivative(const HyperParamsF2& p, double x, double y, unsigned m, unsigned n);

// ---------------------------------------------------------------------------

template <class T>
T appell_f2_double_series(const HyperParamsF2& p, T x, T y, SeriesStats* stats, T tol,
                          int max_diagonals) {
  using std::abs;
  if (!(abs(x) + abs(y) < T(1)))
    throw DomainError("appell_f2_series: requires |x| + |y| < 1");
  const T a = p.a, b1 = p.b1, b2 = p.b2, c1 = p.c1, c2 = p.c2;
  // row[m] holds t(m, N-m) for the current diagonal N.
  std::vector<T> row{T(1)};
  row.reserve(1024);
  T sum = T(1);
  T prev_diag = T(1);
  T rho_max = T(0);
  int quiet = 0;
  for (int N = 0; N < max_diagonals; ++N) {
    const T aN = a + T(N);
    const T next_first = row[N] * aN * (b1 + T(N)) / ((c1 + T(N)) * T(N + 1)) * x;
    T diag = T(0), dsum = T(0);
    for (int m = 0; m <= N; ++m) {
      const int n = N - m;
      row[m] *= aN * (b2 + T(n)) / ((c2 + T(n)) * T(n + 1)) * y;
      dsum += row[m];
      diag += abs(row[m]);
    }
    row.push_back(next_first);
    dsum += next_first;
    diag += abs(next_first);
    sum += dsum;
    const T rho = prev_diag > T(0) ? diag / prev_diag : T(0);
    prev_diag = diag;
    if (N >= 8) {
      rho_max = (quiet == 0) ? rho : std::max(rho_max, rho);
      const T bound = rho_max < T(1) ? diag * rho_max / (T(1) - rho_max) : T(INFINITY);
      if ((diag <= tol * abs(sum) && bound <= tol * abs(sum)) || diag == T(0)) {
        if (++quiet == 3) {
          if (stats) {
            stats->terms = N + 2;
            stats->tail_bound = static_cast<double>(bound);
          }
          return sum;
        }
      } else {
        quiet = 0;
      }
    }
  }
  throw ConvergenceError("appell_f2_series: diagonal cap reached");
}

}  // namespace biaxial
