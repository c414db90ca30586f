#include "dce/bessel.hpp"

#include <cmath>
#include <string>

#include "dce/error.hpp"
#include "dce/numerics.hpp"

namespace dce {

double bessel_j(int n, double x) {
  if (n < 0) return (n % 2 == 0 ? 1.0 : -1.0) * bessel_j(-n, x);
  return std::cyl_bessel_j(static_cast<double>(n), x);
}

double bessel_j_prime(int n, double x) {
  if (n == 0) return -bessel_j(1, x);
  return 0.5 * (bessel_j(n - 1, x) - bessel_j(n + 1, x));
}

double bessel_j_second(int n, double x) {
  // Bessel's equation: x^2 J'' + x J' + (x^2 - n^2) J = 0.
  return -bessel_j_prime(n, x) / x - (1.0 - double(n) * n / (x * x)) * bessel_j(n, x);
}

double bessel_root(BesselKind kind, int n, int m) {
  if (n < 0) throw DomainError("bessel_root: order n must be >= 0");
  if (m < 1) throw DomainError("bessel_root: root index m must be >= 1");

  auto f = [&](double x) {
    return kind == BesselKind::J ? bessel_j(n, x) : bessel_j_prime(n, x);
  };
  auto df = [&](double x) {
    return kind == BesselKind::J ? bessel_j_prime(n, x) : bessel_j_second(n, x);
  };

  // Neighbouring roots are at least ~2.5 apart for every order, so a 0.2
  // scan step cannot step over a pair.
  constexpr double step = 0.2;
  double x = (n == 0) ? 0.1 : double(n) * 0.9 + 0.05;
  double fx = f(x);
  int found = 0;
  for (int guard = 0; guard < 1000000; ++guard) {
    const double x2 = x + step;
    const double f2 = f(x2);
    if (fx == 0.0 || (fx > 0) != (f2 > 0)) {
      ++found;
      if (found == m) {
        if (fx == 0.0) return x;
        return num::newton_bracketed(f, df, x, x2, 1e-14);
      }
    }
    x = x2;
    fx = f2;
  }
  throw NumericError("bessel_root: scan exhausted for n=" + std::to_string(n) +
                     ", m=" + std::to_string(m));
}

}  // namespace dce
