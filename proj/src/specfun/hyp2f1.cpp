#include <algorithm>
#include <cmath>
#include <initializer_list>

#include <boost/math/special_functions/gamma.hpp>

#include "biaxial/specfun.hpp"

namespace biaxial {

namespace {

// prod Gamma(num) / prod Gamma(den), evaluated in log space with signs.
// A pole in a denominator makes the ratio vanish; a pole in a numerator is
// the caller's responsibility.
double gamma_ratio(std::initializer_list<double> num, std::initializer_list<double> den) {
  double log_mag = 0.0;
  int sign = 1;
  for (double x : den) {
    if (is_nonpositive_integer(x)) return 0.0;
    int s = 1;
    log_mag -= boost::math::lgamma(x, &s);
    sign *= s;
  }
  for (double x : num) {
    if (is_nonpositive_integer(x)) throw PoleError("gamma_ratio: Gamma pole in numerator");
    int s = 1;
    log_mag += boost::math::lgamma(x, &s);
    sign *= s;
  }
  return sign * std::exp(log_mag);
}

double polynomial_sum(double a, double b, double c, double z) {
  // one of a, b is a non-positive integer; the series terminates
  double sum = 1.0, term = 1.0;
  for (int k = 0;; ++k) {
    const double f = (a + k) * (b + k);
    if (f == 0.0) break;
    term *= f / ((c + k) * (k + 1)) * z;
    sum += term;
  }
  return sum;
}

}  // namespace

std::string_view to_string(Branch2F1 b) {
  switch (b) {
    case Branch2F1::Trivial: return "trivial";
    case Branch2F1::Series: return "series";
    case Branch2F1::Pfaff: return "pfaff";
    case Branch2F1::GaussSum: return "gauss-sum";
    case Branch2F1::NearOne: return "near-one";
    case Branch2F1::Logarithmic: return "logarithmic";
  }
  return "?";
}

Gauss2F1::Gauss2F1(HyperParams2F1 p) : Gauss2F1(p, true) {}

Gauss2F1::Gauss2F1(HyperParams2F1 p, bool with_pfaff) : p_(p), s_(p.c - p.a - p.b) {
  if (is_nonpositive_integer(p.c, SeriesPolicy::integer_tol))
    throw DomainError("2F1: c must not be a non-positive integer");
  polynomial_ = is_nonpositive_integer(p.a) || is_nonpositive_integer(p.b);
  if (polynomial_) return;
  const double sr = std::round(s_);
  s_integral_ = std::abs(s_ - sr) <= SeriesPolicy::integer_tol;
  if (s_integral_) {
    s_int_ = static_cast<int>(sr);
  } else {
    conn1_ = gamma_ratio({p.c, s_}, {p.c - p.a, p.c - p.b});
    conn2_ = gamma_ratio({p.c, -s_}, {p.a, p.b});
  }
  if (with_pfaff)
    pfaff_ = std::shared_ptr<const Gauss2F1>(new Gauss2F1({p.c - p.a, p.b, p.c}, false));
}

Value2F1 Gauss2F1::evaluate(double z) const { return evaluate(z, 1.0 - z); }

Value2F1 Gauss2F1::evaluate(double z, double w) const {
  const auto& [a, b, c] = p_;
  if (std::isnan(z)) throw DomainError("2F1: NaN argument");
  if (z > 1.0) throw DomainError("2F1: argument must satisfy z <= 1");
  if (z == 0.0) return {1.0, Branch2F1::Trivial};
  if (polynomial_) return {polynomial_sum(a, b, c, z), Branch2F1::Series};
  if (w == 0.0) {
    if (!(s_ > 0.0)) throw PoleError("2F1(1): requires c - a - b > 0");
    return {gamma_ratio({c, s_}, {c - a, c - b}), Branch2F1::GaussSum};
  }
  Branch2F1 br = Branch2F1::Series;
  if (z < 0.0) {
    const double v = pfaff(z, w, br);
    return {v, br};
  }
  if (z < SeriesPolicy::z_switch) return {gauss_2f1_power_series<double>(a, b, c, z), br};
  const double v = near_one(w, br);
  return {v, br};
}

double Gauss2F1::pfaff(double z, double w, Branch2F1& branch) const {
  // F(a,b;c;z) = (1-z)^{-b} F(c-a, b; c; z/(z-1))
  const Gauss2F1* other = pfaff_.get();
  std::unique_ptr<Gauss2F1> local;
  if (!other) {
    local.reset(new Gauss2F1({p_.c - p_.a, p_.b, p_.c}, false));
    other = local.get();
  }
  // the complement 1 - z/(z-1) = 1/w is passed exactly; z/(z-1) itself
  // rounds to 1 once |z| exceeds ~1e16
  const double zt = std::min(z / (z - 1.0), std::nextafter(1.0, 0.0));
  const Value2F1 inner = other->evaluate(zt, 1.0 / w);
  branch = Branch2F1::Pfaff;
  return std::pow(w, -p_.b) * inner.value;
}

double Gauss2F1::near_one(double w, Branch2F1& branch) const {
  const auto& [a, b, c] = p_;
  if (!s_integral_) {
    branch = Branch2F1::NearOne;
    const double t1 = gauss_2f1_power_series<double>(a, b, 1.0 - s_, w);
    const double t2 = gauss_2f1_power_series<double>(c - a, c - b, 1.0 + s_, w);
    return conn1_ * t1 + conn2_ * std::pow(w, s_) * t2;
  }
  branch = Branch2F1::Logarithmic;
  const int m = s_int_;
  if (m < 0) {
    // Euler: F(a,b;c;z) = (1-z)^{c-a-b} F(c-a, c-b; c; z), whose excess is -m > 0
    Gauss2F1 euler({c - a, c - b, c}, false);
    Branch2F1 ignored;
    return std::pow(w, s_) * euler.near_one(w, ignored);
  }
  const double lw = std::log(w);
  if (m == 0) {
    // F(a,b;a+b;z) = Gamma(a+b)/(Gamma(a)Gamma(b)) *
    //   sum_j (a)_j (b)_j/(j!)^2 [2 psi(1+j) - psi(a+j) - psi(b+j) - ln(1-z)] (1-z)^j
    const double pre = gamma_ratio({a + b}, {a, b});
    double psi1 = digamma(1.0), psia = digamma(a), psib = digamma(b);
    double coef = 1.0, sum = 0.0;
    int quiet = 0;
    for (int j = 0; j < SeriesPolicy::max_terms; ++j) {
      const double term = coef * (2.0 * psi1 - psia - psib - lw);
      sum += term;
      if (std::abs(term) <= SeriesPolicy::tol * std::abs(sum)) {
        if (++quiet == 3) return pre * sum;
      } else {
        quiet = 0;
      }
      coef *= (a + j) * (b + j) / ((j + 1.0) * (j + 1.0)) * w;
      psi1 += 1.0 / (j + 1.0);
      psia += 1.0 / (a + j);
      psib += 1.0 / (b + j);
    }
    throw ConvergenceError("2F1 logarithmic series did not converge");
  }
  // c = a + b + m, m >= 1
  double finite = 0.0;
  {
    double coef = 1.0;
    for (int n = 0; n < m; ++n) {
      finite += coef;
      coef *= (a + n) * (b + n) / ((n + 1.0) * (1.0 - m + n)) * w;
    }
    finite *= std::tgamma(static_cast<double>(m)) * gamma_ratio({a + b + m}, {a + m, b + m});
  }
  const double pre = gamma_ratio({a + b + m}, {a, b});
  double psi_n1 = digamma(1.0), psi_nm1 = digamma(m + 1.0);
  double psi_a = digamma(a + m), psi_b = digamma(b + m);
  double coef = 1.0 / std::tgamma(m + 1.0);  // (a+m)_n (b+m)_n / (n! (n+m)!)
  double sum = 0.0;
  int quiet = 0;
  for (int n = 0; n < SeriesPolicy::max_terms; ++n) {
    const double term = coef * (lw - psi_n1 - psi_nm1 + psi_a + psi_b);
    sum += term;
    if (std::abs(term) <= SeriesPolicy::tol * std::abs(sum)) {
      if (++quiet == 3) break;
    } else {
      quiet = 0;
    }
    coef *= (a + m + n) * (b + m + n) / ((n + 1.0) * (n + m + 1.0)) * w;
    psi_n1 += 1.0 / (n + 1.0);
    psi_nm1 += 1.0 / (n + m + 1.0);
    psi_a += 1.0 / (a + m + n);
    psi_b += 1.0 / (b + m + n);
  }
  const double sign_m = (m % 2 == 0) ? 1.0 : -1.0;  // (z-1)^m = (-w)^m
  return finite - sign_m * std::pow(w, m) * pre * sum;
}

double gauss_2f1(HyperParams2F1 p, double z) { return Gauss2F1(p).evaluate(z).value; }

Value2F1 gauss_2f1_branch(HyperParams2F1 p, double z) { return Gauss2F1(p).evaluate(z); }

}  // namespace biaxial
