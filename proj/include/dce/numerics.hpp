#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dce::num {

/// Root of `f` on [lo, hi] where f(lo) and f(hi) have opposite signs.
/// Newton steps using `df` are taken whenever they stay inside the current
/// bracket; otherwise the step falls back to bisection. Stops when the
/// bracket or the Newton update is below `xtol` (absolute).
/// Throws NumericError if the endpoints do not bracket a sign change.
double newton_bracketed(const std::function<double(double)>& f,
                        const std::function<double(double)>& df, double lo,
                        double hi, double xtol, int max_iter = 200);

/// Pure bisection with the same bracketing contract.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              double xtol, int max_iter = 400);

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Globally adaptive Gauss-Kronrod integral of f over [a, b] to the given
/// relative tolerance (GSL QAG, 7/15 rule). Interior `breaks` split [a, b] so
/// that known steep features sit on panel edges; each piece gets a budget of
/// 2^min(max_depth, 14) panels. Throws NumericError when the
/// tolerance cannot be reached; exceptions from f propagate unchanged.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double rel_tol,
                           std::span<const double> breaks = {},
                           unsigned max_depth = 12);

/// Fixed Gauss-Legendre rule with n nodes on [a, b].
std::vector<std::pair<double, double>> gauss_legendre(std::size_t n, double a,
                                                      double b);

/// State-space ODE y' = rhs(t, y) integrated adaptively from t0 to t1 with a
/// Dormand-Prince 5(4) or Fehlberg 7(8) pair. `observe` (optional) is called after each
/// accepted step. Throws NumericError if the step size collapses.
using OdeRhs = std::function<void(double t, const std::vector<double>& y,
                                  std::vector<double>& dydt)>;
using OdeObserver = std::function<void(double t, const std::vector<double>& y)>;

enum class OdeMethod { DormandPrince45, Fehlberg78 };

struct OdeOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  double initial_step = 1e-3;
  double max_step = 0.0;  // 0 = unlimited
  OdeMethod method = OdeMethod::DormandPrince45;
};

std::vector<double> integrate_ode(const OdeRhs& rhs, std::vector<double> y0,
                                  double t0, double t1,
                                  const OdeOptions& opts = {},
                                  const OdeObserver& observe = {});

/// Indices of local maxima whose topographic prominence is at least
/// `min_prominence` (same definition as the usual peak-finding tools).
std::vector<std::size_t> find_peaks(std::span<const double> y,
                                    double min_prominence);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Ordinary least-squares line through (x, y).
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Finite-difference weights (Fornberg's recursion) for the `order`-th
/// derivative at x0 from values on arbitrary distinct `nodes`.
std::vector<double> fd_weights(double x0, std::span<const double> nodes,
                               int order);

/// Derivative of `order` at t from uniform samples y[i] at t0 + i*dt, using
/// an `width`-point stencil centred on t where possible (shifted near the
/// ends). Throws NumericError if there are fewer than `width` samples.
double uniform_derivative(std::span<const double> y, double t0, double dt,
                          double t, int order, std::size_t width = 11);

std::vector<double> linspace(double a, double b, std::size_t n);
std::vector<double> logspace(double log10_a, double log10_b, std::size_t n);

}  // namespace dce::num
