#pragma once

// Reference implementations that share no code with the library. They are
// slow and simple on purpose.

#include <cmath>
#include <functional>

namespace oracle {

/// J_n(x) from its power series in long double (fine for x <~ 20).
inline double bessel_series(int n, double x) {
  long double term = 1.0L, half = 0.5L * x;
  for (int k = 1; k <= n; ++k) term *= half / k;
  long double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= -half * half / (static_cast<long double>(k) * (k + n));
    sum += term;
    if (std::fabs(static_cast<double>(term)) < 1e-22) break;
  }
  return static_cast<double>(sum);
}

/// Plain bisection; assumes a sign change on [a, b].
inline double bisect(const std::function<double(double)>& f, double a, double b) {
  double fa = f(a);
  for (int i = 0; i < 200 && b - a > 1e-15 * std::fabs(b); ++i) {
    const double m = 0.5 * (a + b), fm = f(m);
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

/// Composite Simpson rule with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

/// Classic fixed-step RK4 for y'' = a(t, y, y').
template <class Acc>
void rk4_second_order(Acc acc, double& y, double& v, double t0, double t1, int steps) {
  const double h = (t1 - t0) / steps;
  double t = t0;
  for (int i = 0; i < steps; ++i) {
    const double k1y = v, k1v = acc(t, y, v);
    const double k2y = v + 0.5 * h * k1v, k2v = acc(t + 0.5 * h, y + 0.5 * h * k1y, k2y);
    const double k3y = v + 0.5 * h * k2v, k3v = acc(t + 0.5 * h, y + 0.5 * h * k2y, k3y);
    const double k4y = v + h * k3v, k4v = acc(t + h, y + h * k3y, k4y);
    y += h / 6.0 * (k1y + 2 * k2y + 2 * k3y + k4y);
    v += h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
    t += h;
  }
}

}  // namespace oracle
