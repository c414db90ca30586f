#include "dce/numerics.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <memory>
#include <tuple>

#include "dce/error.hpp"

namespace dce::num {

double newton_bracketed(const std::function<double(double)>& f,
                        const std::function<double(double)>& df, double lo,
                        double hi, double xtol, int max_iter) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0)) {
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "root not bracketed: f(%.17g)=%.6g, f(%.17g)=%.6g", lo, flo,
                  hi, fhi);
    throw NumericError(buf);
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < max_iter; ++it) {
    const double fx = f(x);
    if (fx == 0.0) return x;
    if ((fx > 0) == (flo > 0)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
    }
    const double d = df(x);
    double next = (d != 0.0) ? x - fx / d : lo - 1.0;
    bool newton_ok = next > lo && next < hi;
    if (!newton_ok) next = 0.5 * (lo + hi);
    const double step = std::abs(next - x);
    x = next;
    if (step <= xtol || (hi - lo) <= xtol) {
      if (newton_ok) {
        // One more Newton polish from the converged point.
        const double d2 = df(x);
        if (d2 != 0.0) {
          const double polished = x - f(x) / d2;
          if (polished >= lo && polished <= hi) x = polished;
        }
      }
      return x;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "newton_bracketed: no convergence in [%.17g, %.17g]", lo, hi);
  throw NumericError(buf);
}

double bisect(const std::function<double(double)>& f, double lo, double hi,
              double xtol, int max_iter) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "bisect: root not bracketed in [%.17g, %.17g]",
                  lo, hi);
    throw NumericError(buf);
  }
  for (int it = 0; it < max_iter && hi - lo > xtol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

namespace {

struct GslCall {
  const std::function<double(double)>* f;
  std::exception_ptr error;
};

// Exceptions must not unwind through GSL's C frames.
double gsl_trampoline(double x, void* p) {
  auto* call = static_cast<GslCall*>(p);
  if (call->error) return std::numeric_limits<double>::quiet_NaN();
  try {
    return (*call->f)(x);
  } catch (...) {
    call->error = std::current_exception();
    return std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double rel_tol,
                           std::span<const double> breaks,
                           unsigned max_depth) {
  static const auto silence = gsl_set_error_handler_off();
  (void)silence;
  std::vector<double> edges{a};
  for (double x : breaks)
    if (x > a && x < b) edges.push_back(x);
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());

  // QAG per break segment: the integrands here have sharp interior features but no
  // endpoint singularities, which is where QAGP's extrapolation misfires.
  const std::size_t limit = std::size_t{1} << std::min(max_depth, 14u);
  std::unique_ptr<gsl_integration_workspace, decltype(&gsl_integration_workspace_free)> ws(
      gsl_integration_workspace_alloc(limit), &gsl_integration_workspace_free);
  GslCall call{&f, nullptr};
  gsl_function gf{&gsl_trampoline, &call};
  double value = 0.0, error = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    double v = 0.0, e = 0.0;
    const int status = gsl_integration_qag(&gf, edges[i], edges[i + 1], 1e-300, rel_tol, limit,
                                           GSL_INTEG_GAUSS15, ws.get(), &v, &e);
    if (call.error) std::rethrow_exception(call.error);
    // GSL_EROUND: the value is as accurate as round-off allows.
    if ((status != GSL_SUCCESS && status != GSL_EROUND) || !std::isfinite(v)) {
      throw NumericError("quadrature did not converge on [" + std::to_string(edges[i]) + ", " +
                         std::to_string(edges[i + 1]) + "]: " + gsl_strerror(status) +
                         "; value " + std::to_string(v) + ", error estimate " +
                         std::to_string(e) + ", " + std::to_string(ws->size) + " panels");
    }
    value += v;
    error += e;
  }
  return {value, error};
}

std::vector<std::pair<double, double>> gauss_legendre(std::size_t n, double a,
                                                      double b) {
  // Golub-Welsch would need an eigen solver; Newton on P_n is simpler here.
  std::vector<std::pair<double, double>> out(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (std::size_t i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = (n == 1) ? x : p1;
      const double pnm1 = (n == 1) ? 1.0 : p0;
      dp = n * (x * pn - pnm1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    out[i] = {mid + half * x, half * 2.0 / ((1.0 - x * x) * dp * dp)};
  }
  return out;
}

namespace {

template <class Stepper>
std::vector<double> drive_ode(const OdeRhs& rhs, std::vector<double> y0,
                              double t0, double t1, const OdeOptions& opts,
                              const OdeObserver& observe) {
  namespace odeint = boost::numeric::odeint;
  using State = std::vector<double>;
  auto system = [&rhs](const State& y, State& dydt, double t) {
    dydt.resize(y.size());
    rhs(t, y, dydt);
  };
  auto controlled = odeint::make_controlled<Stepper>(opts.abs_tol, opts.rel_tol);
  const double dir = t1 > t0 ? 1.0 : -1.0;
  double dt = dir * std::min(std::abs(opts.initial_step), std::abs(t1 - t0));
  double t = t0;
  State y = std::move(y0);
  std::size_t fails = 0;
  while (dir * (t1 - t) > 0) {
    if (dir * (t + dt - t1) > 0) dt = t1 - t;
    if (opts.max_step > 0 && std::abs(dt) > opts.max_step) dt = dir * opts.max_step;
    const double t_before = t;
    const auto res = controlled.try_step(system, y, t, dt);
    if (res == odeint::success) {
      fails = 0;
      if (observe) observe(t, y);
    } else {
      ++fails;
    }
    if (std::abs(dt) < 1e-14 * std::max(1.0, std::abs(t)) || fails > 500) {
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "ODE step size collapsed near t=%.17g (dt=%.3g)", t_before, dt);
      throw NumericError(buf);
    }
  }
  return y;
}

}  // namespace

std::vector<double> integrate_ode(const OdeRhs& rhs, std::vector<double> y0,
                                  double t0, double t1, const OdeOptions& opts,
                                  const OdeObserver& observe) {
  namespace odeint = boost::numeric::odeint;
  using State = std::vector<double>;
  if (t1 == t0) return y0;
  if (opts.method == OdeMethod::Fehlberg78) {
    return drive_ode<odeint::runge_kutta_fehlberg78<State>>(rhs, std::move(y0), t0,
                                                            t1, opts, observe);
  }
  return drive_ode<odeint::runge_kutta_dopri5<State>>(rhs, std::move(y0), t0, t1,
                                                      opts, observe);
}

std::vector<std::size_t> find_peaks(std::span<const double> y,
                                    double min_prominence) {
  std::vector<std::size_t> peaks;
  const std::size_t n = y.size();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(y[i] > y[i - 1] && y[i] >= y[i + 1])) continue;
    // Plateau handling: skip if the right neighbour equals and we are not at
    // the plateau's first sample (already covered by the > on the left).
    double left_min = y[i];
    for (std::size_t j = i; j-- > 0;) {
      if (y[j] > y[i]) break;
      left_min = std::min(left_min, y[j]);
    }
    double right_min = y[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      if (y[j] > y[i]) break;
      right_min = std::min(right_min, y[j]);
    }
    const double prominence = y[i] - std::max(left_min, right_min);
    if (prominence >= min_prominence) peaks.push_back(i);
  }
  return peaks;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) throw DomainError("fit_line needs at least two points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0) throw DomainError("fit_line: degenerate abscissae");
  LineFit out;
  out.slope = sxy / sxx;
  out.intercept = my - out.slope * mx;
  return out;
}

std::vector<double> fd_weights(double x0, std::span<const double> x,
                               int order) {
  const std::size_t n = x.size();
  const int m = order;
  // c[j][k]: weight of node j for derivative k.
  std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = x[0] - x0;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const int mn = std::min<int>(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - x0;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (std::size_t j = 0; j < n; ++j) w[j] = c[j][m];
  return w;
}

double uniform_derivative(std::span<const double> y, double t0, double dt,
                          double t, int order, std::size_t width) {
  if (y.size() < width) {
    throw NumericError("need at least " + std::to_string(width) +
                       " samples for a finite-difference stencil, have " +
                       std::to_string(y.size()));
  }
  const double pos = (t - t0) / dt;
  long first = std::lround(pos) - long(width / 2);
  first = std::clamp(first, 0L, long(y.size() - width));
  std::vector<double> nodes(width);
  for (std::size_t j = 0; j < width; ++j) nodes[j] = double(first + long(j)) - pos;
  const auto w = fd_weights(0.0, nodes, order);
  double acc = 0.0;
  for (std::size_t j = 0; j < width; ++j) acc += w[j] * y[first + j];
  return acc / std::pow(dt, order);
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = a;
    return v;
  }
  for (std::size_t i = 0; i < n; ++i) v[i] = a + (b - a) * double(i) / double(n - 1);
  return v;
}

std::vector<double> logspace(double la, double lb, std::size_t n) {
  auto v = linspace(la, lb, n);
  for (auto& x : v) x = std::pow(10.0, x);
  return v;
}

}  // namespace dce::num
