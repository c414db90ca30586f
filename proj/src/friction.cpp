#include "dce/friction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "dce/numerics.hpp"
#include "dce/units.hpp"

namespace dce::friction {

using std::numbers::pi;
using cplx = std::complex<double>;

DielectricModel DielectricModel::drude(double wp, double gamma) {
  if (!(wp > 0)) throw DomainError("Drude model needs wp > 0");
  if (gamma < 0) throw DomainError("Drude model violates passivity: gamma < 0");
  DielectricModel m;
  m.kind_ = Kind::Drude;
  m.wp_ = wp;
  m.gamma_ = gamma;
  return m;
}

DielectricModel DielectricModel::lorentz(double w0, double wp, double gamma) {
  if (!(wp > 0) || w0 < 0) throw DomainError("Lorentz model needs wp > 0, w0 >= 0");
  if (gamma < 0) throw DomainError("Lorentz model violates passivity: gamma < 0");
  DielectricModel m;
  m.kind_ = Kind::Lorentz;
  m.w0_ = w0;
  m.wp_ = wp;
  m.gamma_ = gamma;
  return m;
}

DielectricModel DielectricModel::tabulated(std::vector<double> omega,
                                           std::vector<cplx> eps) {
  if (omega.size() != eps.size() || omega.size() < 2)
    throw DomainError("tabulated permittivity needs >= 2 matching samples");
  for (std::size_t i = 1; i < omega.size(); ++i)
    if (!(omega[i] > omega[i - 1]))
      throw DomainError("tabulated permittivity grid must be strictly increasing");
  DielectricModel m;
  m.kind_ = Kind::Tabulated;
  m.grid_ = std::move(omega);
  m.values_ = std::move(eps);
  m.check_passive();
  return m;
}

DielectricModel DielectricModel::constant(cplx eps) {
  DielectricModel m;
  m.kind_ = Kind::Constant;
  m.eps_const_ = eps;
  m.check_passive();
  return m;
}

cplx DielectricModel::operator()(double w) const {
  switch (kind_) {
    case Kind::Drude:
      return 1.0 - wp_ * wp_ / (w * cplx(w, gamma_));
    case Kind::Lorentz:
      return 1.0 + wp_ * wp_ / cplx(w0_ * w0_ - w * w, -gamma_ * w);
    case Kind::Constant:
      return eps_const_;
    case Kind::Tabulated: {
      if (w < grid_.front() || w > grid_.back()) {
        throw RangeError("permittivity requested at w = " + std::to_string(w) +
                         " outside the tabulated grid");
      }
      auto it = std::upper_bound(grid_.begin(), grid_.end(), w);
      std::size_t i = it == grid_.end() ? grid_.size() - 1 : std::size_t(it - grid_.begin());
      const double x0 = grid_[i - 1], x1 = grid_[i];
      const double f = (w - x0) / (x1 - x0);
      return values_[i - 1] * (1.0 - f) + values_[i] * f;
    }
  }
  return {1.0, 0.0};
}

void DielectricModel::check_passive() const {
  if ((kind_ == Kind::Drude || kind_ == Kind::Lorentz) && gamma_ < 0)
    throw DomainError("permittivity model is not passive: gamma < 0");
  if (kind_ == Kind::Constant && eps_const_.imag() < 0)
    throw DomainError("permittivity model is not passive: Im eps < 0");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (grid_[i] > 0 && values_[i].imag() < 0) {
      throw DomainError("tabulated permittivity is not passive at w = " +
                        std::to_string(grid_[i]));
    }
  }
}

double DielectricModel::surface_resonance() const {
  if (kind_ == Kind::Drude) return wp_ / std::sqrt(2.0);
  if (kind_ == Kind::Lorentz) return std::sqrt(w0_ * w0_ + 0.5 * wp_ * wp_);
  return 0.0;
}

double surface_response(const DielectricModel& m, double w) {
  if (w < 0) throw DomainError("surface_response needs w >= 0");
  if (w == 0.0 && (m.kind() == DielectricModel::Kind::Drude)) return 0.0;
  const cplx e = m(w);
  if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) return 0.0;
  const cplx den = e + 1.0;
  if (std::abs(den) < 1e-300 || (e.imag() == 0.0 && den.real() == 0.0)) {
    throw NumericError("surface response pole eps = -1 at w = " + std::to_string(w));
  }
  // Im[(e - 1)/(e + 1)] = 2 Im e / |e + 1|^2
  return 2.0 * e.imag() / std::norm(den);
}

double beta_squared(const DielectricModel& m, double k, double w,
                    double mode_density) {
  if (!(mode_density > 0)) throw DomainError("mode density must be > 0");
  return 4.0 * k * w * si::epsilon0 / pi * surface_response(m, w) / mode_density;
}

double transition_probability(double k, double kx, double d, double v,
                              double beta2_u, double omega_u, double beta2_l,
                              double omega_l, double t) {
  const double e0 = si::epsilon0;
  const double pref = beta2_u * beta2_l / (4.0 * k * k * e0 * e0) *
                      std::exp(-2.0 * d * std::abs(k)) / (4.0 * omega_u * omega_l);
  const double D = omega_u + omega_l - kx * v;
  const double x = 0.5 * D * t;
  // 4 sin^2(D t / 2) / D^2 = t^2 sinc^2(D t / 2)
  const double sinc = std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
  return pref * t * t * sinc * sinc;
}

double transition_rate_coefficient(double k, double d, double beta2_u,
                                   double omega_u, double beta2_l,
                                   double omega_l) {
  const double e0 = si::epsilon0;
  const double pref = beta2_u * beta2_l / (4.0 * k * k * e0 * e0) *
                      std::exp(-2.0 * d * std::abs(k)) / (4.0 * omega_u * omega_l);
  // sin^2(D t/2)/(D/2)^2 -> pi t delta(D)
  return pref * pi;
}

double spectral_overlap(const DielectricModel& m, double u, double rel_tol) {
  if (u <= 0.0) return 0.0;
  const auto f = [&](double w) {
    return surface_response(m, w) * surface_response(m, u - w);
  };
  // Symmetric under w -> u - w: integrate the lower half.
  const double half = 0.5 * u;
  std::vector<double> breaks;
  const double ws = m.surface_resonance(), g = m.width();
  if (ws > 0) {
    for (double c : {ws, u - ws}) {
      for (double off : {-5.0 * g, 0.0, 5.0 * g}) {
        const double b = c + off;
        if (b > 0 && b < half) breaks.push_back(b);
      }
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  }
  return 2.0 * num::integrate(f, 0.0, half, rel_tol, breaks, 14).value;
}

namespace {

double k_cutoff(double d) {
  // k^2 e^{-2kd} below 1e-12 of its peak value e^{-2}/d^2.
  const auto g = [](double x) { return 2.0 * std::log(x) - 2.0 * x + 2.0 + 12.0 * std::log(10.0); };
  const double x = num::bisect(g, 1.0, 100.0, 1e-12);
  return x / d;
}

double prefactor() { return si::hbar / pi / (4.0 * pi * pi); }

}  // namespace

FrictionResult friction_force(const FrictionScenario& s, double rel_tol) {
  if (!(s.d > 0)) throw DomainError("gap d must be > 0");
  if (s.v < 0) throw DomainError("speed v must be >= 0");
  s.model.check_passive();
  FrictionResult r;
  r.k_cut = k_cutoff(s.d);
  const double wr = s.model.surface_resonance();
  if (wr > 0 && s.v / s.d > 0.01 * wr) {
    r.non_retarded_ok = false;
    r.warnings.push_back("v/d is not small compared to the surface resonance");
  }
  if (s.v == 0.0) return r;

  // theta in (-pi/2, pi/2) folded onto [0, pi/2).
  const auto nodes = num::gauss_legendre(48, 0.0, 0.5 * pi);
  double total = 0.0, err = 0.0;
  for (const auto& [theta, wt] : nodes) {
    const double c = std::cos(theta);
    const auto fk = [&](double k) {
      return k * k * std::exp(-2.0 * k * s.d) * spectral_overlap(s.model, k * s.v * c, rel_tol * 0.1);
    };
    const double bk[] = {1.0 / s.d, 3.0 / s.d, 8.0 / s.d};
    const auto q = num::integrate(fk, 0.0, r.k_cut, rel_tol, bk, 14);
    total += 2.0 * wt * c * q.value;
    err += 2.0 * wt * c * q.error_estimate;
  }
  r.force = prefactor() * total;
  r.error_estimate = prefactor() * err;
  return r;
}

MonteCarloResult friction_force_monte_carlo(const FrictionScenario& s,
                                            std::uint64_t samples,
                                            std::uint64_t seed) {
  if (!(s.d > 0)) throw DomainError("gap d must be > 0");
  s.model.check_passive();
  MonteCarloResult r;
  r.samples = samples;
  if (s.v == 0.0 || samples == 0) return r;
  constexpr std::uint64_t block = 1u << 16;
  const double scale = 2.0 / std::pow(2.0 * s.d, 3);  // int k^2 e^{-2kd} dk
  double sum = 0.0, sum2 = 0.0;
  for (std::uint64_t b = 0; b * block < samples; ++b) {
    std::seed_seq ss{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(b),
                     std::uint32_t(b >> 32)};
    std::mt19937_64 rng(ss);
    std::gamma_distribution<double> kdist(3.0, 1.0 / (2.0 * s.d));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const std::uint64_t n = std::min(block, samples - b * block);
    for (std::uint64_t i = 0; i < n; ++i) {
      const double theta = (unif(rng) - 0.5) * pi;
      const double k = kdist(rng);
      const double u = k * s.v * std::cos(theta);
      const double w = unif(rng) * u;
      const double val = pi * std::cos(theta) * scale * u *
                         surface_response(s.model, w) * surface_response(s.model, u - w);
      sum += val;
      sum2 += val * val;
    }
  }
  const double N = double(samples);
  const double mean = sum / N;
  const double var = std::max(0.0, sum2 / N - mean * mean);
  r.force = prefactor() * mean;
  r.std_error = prefactor() * std::sqrt(var / N);
  return r;
}

}  // namespace dce::friction
