#include "dce/cavity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

namespace dce::cavity {

namespace {

double parity(int a, int b) { return ((a + b) % 2 == 0) ? 1.0 : -1.0; }

struct Channel {
  Polarization pol;
  int nx, ny;
  auto operator<=>(const Channel&) const = default;
};

Channel channel_of(const ModeIndex& m) { return {m.pol, m.nx, m.ny}; }

std::vector<ModeSpectrum> spectra(const CavityGeometry& g,
                                  const std::vector<ModeIndex>& modes) {
  std::vector<ModeSpectrum> s;
  s.reserve(modes.size());
  for (const auto& m : modes) {
    validate(m, g);
    s.push_back(mode_spectrum(g, m));
  }
  return s;
}

std::size_t index_of(const std::vector<ModeIndex>& modes, const ModeIndex& m) {
  auto it = std::find(modes.begin(), modes.end(), m);
  if (it == modes.end()) {
    throw PreconditionError("seed mode " + to_string(m) +
                            " is not in the truncation set");
  }
  return std::size_t(it - modes.begin());
}

std::vector<cplx> free_state(std::size_t n, std::size_t seed, double w, double t,
                             bool derivative) {
  std::vector<cplx> v(n, cplx(0.0));
  const cplx q = std::exp(cplx(0.0, -w * t)) / std::sqrt(2.0 * w);
  v[seed] = derivative ? cplx(0.0, -w) * q : q;
  return v;
}

}  // namespace

double coupling_g(int mz, int jz) {
  if (mz < 1 || jz < 1) throw DomainError("coupling_g needs mz, jz >= 1");
  if (mz == jz) return 0.0;
  return parity(mz, jz) * 2.0 * mz * jz / double(jz * jz - mz * mz);
}

DriveMatrices drive_matrices(const CavityGeometry& g,
                             const std::vector<ModeIndex>& modes, double Omega) {
  const auto sp = spectra(g, modes);
  const std::size_t n = modes.size();
  DriveMatrices d{Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto& mi = modes[i];
      const auto& mj = modes[j];
      if (!mi.same_transverse(mj)) continue;
      const double kz2 = sp[i].kz * sp[i].kz;
      if (mi.pol == Polarization::TM) {
        const double s = parity(mi.nz, mj.nz);
        d.a_sin(i, j) = 2.0 * s * (kz2 - Omega * Omega);
        d.b_cos(i, j) = 2.0 * Omega * s;
      } else {
        const double gij = coupling_g(mi.nz, mj.nz);
        d.a_sin(i, j) = (i == j ? 2.0 * kz2 : 0.0) - Omega * Omega * gij;
        d.b_cos(i, j) = 2.0 * Omega * gij;
      }
    }
  }
  return d;
}

const char* to_string(ResonanceClass c) noexcept {
  switch (c) {
    case ResonanceClass::Uncoupled: return "Uncoupled";
    case ResonanceClass::CoupledSet: return "CoupledSet";
    case ResonanceClass::OffResonance: return "OffResonance";
  }
  return "?";
}

ResonanceReport find_resonances(const CavityGeometry& g, double Omega,
                                Polarization pol, int bound, double tol) {
  if (!(Omega > 0)) throw DomainError("drive frequency must be > 0");
  const auto modes = enumerate_modes(g, pol, bound);
  const auto sp = spectra(g, modes);
  ResonanceReport r;
  const double scale = tol * Omega;
  const auto check = [&](double mismatch, const std::string& what) {
    const double d = std::abs(mismatch);
    if (d <= scale) return true;
    if (d <= 10.0 * scale) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.3e", d / Omega);
      r.warnings.push_back("near miss (relative " + std::string(buf) + "): " + what);
    }
    return false;
  };

  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (check(2.0 * sp[i].omega - Omega, "2 w" + to_string(modes[i]) + " = Omega"))
      r.resonant.push_back(modes[i]);
  }
  std::map<Channel, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < modes.size(); ++i) groups[channel_of(modes[i])].push_back(i);
  for (const auto& [ch, idx] : groups) {
    for (std::size_t a = 0; a < idx.size(); ++a) {
      for (std::size_t b = a + 1; b < idx.size(); ++b) {
        const auto& ma = modes[idx[a]];
        const auto& mb = modes[idx[b]];
        const double wa = sp[idx[a]].omega, wb = sp[idx[b]].omega;
        const std::string label = to_string(ma) + ", " + to_string(mb);
        if (check(wa + wb - Omega, "w_m + w_j = Omega for " + label))
          r.pairs.push_back({ma, mb, true});
        else if (check(std::abs(wa - wb) - Omega, "|w_m - w_j| = Omega for " + label))
          r.pairs.push_back({ma, mb, false});
      }
    }
  }
  if (!r.pairs.empty())
    r.cls = ResonanceClass::CoupledSet;
  else if (!r.resonant.empty())
    r.cls = ResonanceClass::Uncoupled;
  return r;
}

std::vector<ModeIndex> resonance_closure(const ResonanceReport& r,
                                         const ModeIndex& seed) {
  std::set<ModeIndex> seen{seed};
  std::vector<ModeIndex> todo{seed};
  while (!todo.empty()) {
    const ModeIndex m = todo.back();
    todo.pop_back();
    for (const auto& p : r.pairs) {
      const ModeIndex* other = nullptr;
      if (p.m == m) other = &p.j;
      else if (p.j == m) other = &p.m;
      if (other && seen.insert(*other).second) todo.push_back(*other);
    }
  }
  return {seen.begin(), seen.end()};
}

std::vector<ModeIndex> truncation_set(const CavityGeometry& g,
                                      const std::vector<ModeIndex>& core,
                                      int extra) {
  if (extra < 0) throw DomainError("truncation buffer must be >= 0");
  std::map<Channel, std::pair<int, int>> range;
  for (const auto& m : core) {
    validate(m, g);
    auto [it, fresh] = range.try_emplace(channel_of(m), m.nz, m.nz);
    if (!fresh) {
      it->second.first = std::min(it->second.first, m.nz);
      it->second.second = std::max(it->second.second, m.nz);
    }
  }
  std::set<ModeIndex> out(core.begin(), core.end());
  for (const auto& [ch, r] : range) {
    const int floor_nz = ch.pol == Polarization::TM ? 0 : 1;
    for (int nz = std::max(floor_nz, r.first - extra); nz <= r.second + extra; ++nz)
      out.insert({ch.pol, ch.nx, ch.ny, nz});
  }
  return {out.begin(), out.end()};
}

ModeAmplitudeState integrate_modes(const CavityGeometry& g,
                                   const MotionProfile& profile,
                                   const std::vector<ModeIndex>& seeds,
                                   const std::vector<ModeIndex>& modes,
                                   double t_final, const num::OdeOptions& opts) {
  if (profile.form() == MotionProfile::Form::Tabulated)
    throw DomainError("integrate_modes needs a harmonic motion profile");
  if (modes.empty()) throw PreconditionError("empty truncation set");
  const std::size_t nm = modes.size();
  const auto sp = spectra(g, modes);
  const double eps = profile.eps(), Omega = profile.Omega();
  const double t0 = profile.t_start();
  const double t_stop = std::min(t_final, profile.t_end());
  const auto d = drive_matrices(g, modes, Omega);

  ModeAmplitudeState s;
  s.modes = modes;
  for (const auto& x : sp) s.omega.push_back(x.omega);
  for (const auto& n : seeds) s.seeds.push_back(index_of(modes, n));
  const std::size_t ns = s.seeds.size();

  // Free evolution until the wall starts.
  const double t_begin = std::min(t0, t_final);
  for (std::size_t k = 0; k < ns; ++k) {
    const std::size_t n = s.seeds[k];
    s.Q.push_back(free_state(nm, n, s.omega[n], t_begin, false));
    s.Qdot.push_back(free_state(nm, n, s.omega[n], t_begin, true));
  }
  s.t = t_begin;
  if (t_final <= t0 || eps == 0.0) {
    if (t_final > t_begin) {
      for (std::size_t k = 0; k < ns; ++k) {
        const std::size_t n = s.seeds[k];
        s.Q[k] = free_state(nm, n, s.omega[n], t_final, false);
        s.Qdot[k] = free_state(nm, n, s.omega[n], t_final, true);
      }
      s.t = t_final;
    }
    s.moving = t_final > t0 && t_final < profile.t_end() && eps != 0.0;
    return s;
  }

  // Basis-derivative jump when L' switches: Q' -> Q' +/- (eps/2) cos(phase) b Q.
  const auto kick = [&](double sign, double phase) {
    const double c = 0.5 * eps * std::cos(phase) * sign;
    for (std::size_t k = 0; k < ns; ++k) {
      std::vector<cplx> dq(nm, cplx(0.0));
      for (std::size_t i = 0; i < nm; ++i)
        for (std::size_t j = 0; j < nm; ++j) dq[i] += c * d.b_cos(i, j) * s.Q[k][j];
      for (std::size_t i = 0; i < nm; ++i) s.Qdot[k][i] += dq[i];
    }
  };
  kick(+1.0, 0.0);

  // y layout: [seed][mode][ReQ, ImQ, ReQ', ImQ'].
  std::vector<double> y(ns * nm * 4);
  for (std::size_t k = 0; k < ns; ++k)
    for (std::size_t i = 0; i < nm; ++i) {
      double* p = &y[(k * nm + i) * 4];
      p[0] = s.Q[k][i].real();
      p[1] = s.Q[k][i].imag();
      p[2] = s.Qdot[k][i].real();
      p[3] = s.Qdot[k][i].imag();
    }
  std::vector<double> w2(nm);
  for (std::size_t i = 0; i < nm; ++i) w2[i] = s.omega[i] * s.omega[i];

  const num::OdeRhs rhs = [&](double t, const std::vector<double>& yy,
                              std::vector<double>& dy) {
    const double sn = eps * std::sin(Omega * (t - t0));
    const double cs = eps * std::cos(Omega * (t - t0));
    for (std::size_t k = 0; k < ns; ++k) {
      const double* base = &yy[k * nm * 4];
      double* out = &dy[k * nm * 4];
      for (std::size_t i = 0; i < nm; ++i) {
        double fr = -w2[i] * base[i * 4 + 0];
        double fi = -w2[i] * base[i * 4 + 1];
        for (std::size_t j = 0; j < nm; ++j) {
          const double a = sn * d.a_sin(i, j), b = cs * d.b_cos(i, j);
          if (a == 0.0 && b == 0.0) continue;
          fr += a * base[j * 4 + 0] + b * base[j * 4 + 2];
          fi += a * base[j * 4 + 1] + b * base[j * 4 + 3];
        }
        out[i * 4 + 0] = base[i * 4 + 2];
        out[i * 4 + 1] = base[i * 4 + 3];
        out[i * 4 + 2] = fr;
        out[i * 4 + 3] = fi;
      }
    }
  };
  num::OdeOptions o = opts;
  double wmax = 0.0;
  for (double w : s.omega) wmax = std::max(wmax, w);
  wmax = std::max(wmax, Omega);
  if (o.max_step <= 0.0) o.max_step = 1.0 / wmax;
  o.initial_step = std::min(o.initial_step, 0.01 / wmax);
  y = num::integrate_ode(rhs, std::move(y), t0, t_stop, o);

  for (std::size_t k = 0; k < ns; ++k)
    for (std::size_t i = 0; i < nm; ++i) {
      const double* p = &y[(k * nm + i) * 4];
      s.Q[k][i] = {p[0], p[1]};
      s.Qdot[k][i] = {p[2], p[3]};
    }
  s.t = t_stop;
  s.moving = t_stop < profile.t_end();
  if (s.moving) return s;

  kick(-1.0, Omega * (t_stop - t0));
  if (t_final > t_stop) {
    const double dt = t_final - t_stop;
    for (std::size_t k = 0; k < ns; ++k)
      for (std::size_t i = 0; i < nm; ++i) {
        const double w = s.omega[i];
        const cplx q = s.Q[k][i], qd = s.Qdot[k][i];
        s.Q[k][i] = q * std::cos(w * dt) + qd * std::sin(w * dt) / w;
        s.Qdot[k][i] = -q * w * std::sin(w * dt) + qd * std::cos(w * dt);
      }
    s.t = t_final;
  }
  return s;
}

Bogoliubov extract_bogoliubov(const ModeAmplitudeState& s) {
  if (s.moving) {
    throw PreconditionError("Bogoliubov coefficients need the wall at rest; t = " +
                            std::to_string(s.t) + " is inside the motion window");
  }
  Bogoliubov b;
  b.modes = s.modes;
  b.seeds = s.seeds;
  const cplx I(0.0, 1.0);
  for (std::size_t k = 0; k < s.Q.size(); ++k) {
    std::vector<cplx> al, be;
    for (std::size_t i = 0; i < s.modes.size(); ++i) {
      const double w = s.omega[i];
      // Multiplying Q by i*w (rather than dividing Q' by it) cancels exactly for a free mode.
      const cplx iwQ = I * w * s.Q[k][i];
      const cplx A = std::exp(-I * w * s.t) * (iwQ + s.Qdot[k][i]) / (2.0 * I * w);
      const cplx B = std::exp(I * w * s.t) * (iwQ - s.Qdot[k][i]) / (2.0 * I * w);
      al.push_back(std::sqrt(2.0 * w) * B);
      be.push_back(std::sqrt(2.0 * w) * A);
    }
    b.alpha.push_back(std::move(al));
    b.beta.push_back(std::move(be));
  }
  return b;
}

std::vector<double> Bogoliubov::photon_numbers() const {
  std::vector<double> N(modes.size(), 0.0);
  for (const auto& row : beta)
    for (std::size_t m = 0; m < row.size(); ++m) N[m] += std::norm(row[m]);
  return N;
}

double Bogoliubov::unitarity_defect() const {
  double worst = 0.0;
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    double s = 0.0;
    for (std::size_t m = 0; m < modes.size(); ++m)
      s += std::norm(alpha[k][m]) - std::norm(beta[k][m]);
    worst = std::max(worst, std::abs(s - 1.0));
  }
  return worst;
}

Eigen::MatrixXd msa_matrix(const CavityGeometry& g,
                           const std::vector<ModeIndex>& modes, double Omega,
                           double tol, Warnings* warnings) {
  const auto sp = spectra(g, modes);
  const auto d = drive_matrices(g, modes, Omega);
  const std::size_t n = modes.size();
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  const double scale = tol * Omega;
  const auto fires = [&](double mismatch) {
    const double e = std::abs(mismatch);
    if (e > scale && e <= 10.0 * scale && warnings) {
      warnings->push_back("near-miss frequency condition left out of the slow equations");
    }
    return e <= scale;
  };
  for (std::size_t m = 0; m < n; ++m) {
    const double wm = sp[m].omega;
    for (std::size_t j = 0; j < n; ++j) {
      const double a = d.a_sin(m, j), b = d.b_cos(m, j);
      if (a == 0.0 && b == 0.0) continue;
      const double wj = sp[j].omega;
      if (fires(wm - wj - Omega)) {
        const double c = (-a + wj * b) / (4.0 * wm);
        M(m, j) += c;
        M(n + m, n + j) += c;
      }
      if (fires(wm - wj + Omega)) {
        const double c = (a + wj * b) / (4.0 * wm);
        M(m, j) += c;
        M(n + m, n + j) += c;
      }
      if (fires(wm + wj - Omega)) {
        const double c = -(a + wj * b) / (4.0 * wm);
        M(m, n + j) += c;
        M(n + m, j) += c;
      }
    }
  }
  return M;
}

SlowAmplitudeState msa_evolve(const CavityGeometry& g,
                              const MotionProfile& profile,
                              const std::vector<ModeIndex>& modes, double t,
                              MsaMethod method, double tol) {
  if (modes.empty()) throw PreconditionError("empty resonant set");
  SlowAmplitudeState s;
  s.modes = modes;
  s.t = t;
  for (const auto& m : modes) {
    validate(m, g);
    s.omega.push_back(mode_spectrum(g, m).omega);
  }
  const std::size_t n = modes.size();
  const Eigen::MatrixXd M = msa_matrix(g, modes, profile.Omega(), tol, &s.warnings);
  const double tau = std::max(0.0, std::min(t, profile.t_end()) - profile.t_start());
  const double eps = profile.eps();

  Eigen::MatrixXd Y0 = Eigen::MatrixXd::Zero(2 * n, n);
  for (std::size_t k = 0; k < n; ++k) Y0(n + k, k) = 1.0 / std::sqrt(2.0 * s.omega[k]);

  Eigen::MatrixXd Y;
  if (method == MsaMethod::MatrixExponential) {
    const Eigen::MatrixXd P = (eps * tau * M).exp();
    Y = P * Y0;
  } else {
    std::vector<double> y(Y0.data(), Y0.data() + Y0.size());
    const Eigen::MatrixXd EM = eps * M;
    const num::OdeRhs rhs = [&](double, const std::vector<double>& yy,
                                std::vector<double>& dy) {
      Eigen::Map<const Eigen::MatrixXd> Yin(yy.data(), 2 * n, n);
      Eigen::Map<Eigen::MatrixXd> Yout(dy.data(), 2 * n, n);
      Yout = EM * Yin;
    };
    num::OdeOptions o{1e-15, 1e-13, 1e-3, 0.0};
    if (tau > 0) y = num::integrate_ode(rhs, std::move(y), 0.0, tau, o);
    Y = Eigen::Map<Eigen::MatrixXd>(y.data(), 2 * n, n);
  }
  for (std::size_t k = 0; k < n; ++k) {
    s.seeds.push_back(k);
    std::vector<double> A(n), B(n);
    for (std::size_t m = 0; m < n; ++m) {
      A[m] = Y(m, k);
      B[m] = Y(n + m, k);
    }
    s.A.push_back(std::move(A));
    s.B.push_back(std::move(B));
  }
  return s;
}

std::vector<double> SlowAmplitudeState::photon_numbers() const {
  std::vector<double> N(modes.size(), 0.0);
  for (const auto& row : A)
    for (std::size_t m = 0; m < row.size(); ++m) N[m] += 2.0 * omega[m] * row[m] * row[m];
  return N;
}

double growth_rate(const CavityGeometry& g, const ModeIndex& m) {
  validate(m, g);
  const auto sp = mode_spectrum(g, m);
  const double kz2 = sp.kz * sp.kz, w = sp.omega;
  if (m.pol == Polarization::TM) return (2.0 * w * w - kz2) / (2.0 * w);
  return kz2 / (2.0 * w);
}

double photon_number_closed_form(const CavityGeometry& g, const ModeIndex& m,
                                 double eps, double t, double Omega, int bound) {
  validate(m, g);
  const double w = mode_spectrum(g, m).omega;
  if (std::abs(2.0 * w - Omega) > kResonanceTol * Omega) {
    throw DomainError("closed form needs Omega = 2 w for mode " + to_string(m));
  }
  const auto r = find_resonances(g, Omega, m.pol, std::max(bound, std::max({m.nx, m.ny, m.nz})));
  for (const auto& p : r.pairs) {
    if (p.m == m || p.j == m) {
      throw DomainError("mode " + to_string(m) + " is coupled to " +
                        to_string(p.m == m ? p.j : p.m) + "; use msa_evolve");
    }
  }
  const double x = std::sinh(growth_rate(g, m) * eps * t);
  return x * x;
}

double mathieu_reference(double omega, double kz, double eps, double Omega,
                         double t_final) {
  if (!(omega > 0)) throw DomainError("mathieu_reference: omega must be > 0");
  const double w2 = omega * omega, drive = 2.0 * eps * kz * kz;
  const double q0 = 1.0 / std::sqrt(2.0 * omega);
  // y = [ReQ, ImQ, ReQ', ImQ']
  std::vector<double> y{q0, 0.0, 0.0, -omega * q0};
  const num::OdeRhs rhs = [&](double t, const std::vector<double>& v,
                              std::vector<double>& d) {
    const double k = -w2 + drive * std::sin(Omega * t);
    d[0] = v[2];
    d[1] = v[3];
    d[2] = k * v[0];
    d[3] = k * v[1];
  };
  num::OdeOptions o{1e-13, 1e-11, 1e-3, 0.2 / std::max(omega, Omega)};
  if (t_final > 0) y = num::integrate_ode(rhs, std::move(y), 0.0, t_final, o);
  const cplx I(0.0, 1.0);
  const cplx Q(y[0], y[1]), Qd(y[2], y[3]);
  const cplx A = std::exp(-I * omega * t_final) * (Q + Qd / (I * omega)) / 2.0;
  return 2.0 * omega * std::norm(A);
}

double fit_growth_exponent(const std::vector<double>& t,
                           const std::vector<double>& N, double t_from) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < t.size() && i < N.size(); ++i) {
    if (t[i] >= t_from && N[i] > 0.0) {
      x.push_back(t[i]);
      y.push_back(std::log(N[i]));
    }
  }
  if (x.size() < 2) throw NumericError("growth fit needs at least two positive samples");
  return num::fit_line(x, y).slope;
}

}  // namespace dce::cavity
