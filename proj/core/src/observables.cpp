#include "polyspin/observables.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "polyspin/exact_spectrum.hpp"

namespace polyspin {

namespace {

// CGS constants.
constexpr double kHbar = 1.0546e-27;   // erg s
constexpr double kBoltzmann = 1.381e-16;  // erg/K
constexpr double kBohrMagneton = 9.274e-21;  // erg/G

// Free energy -kT ln Z via log-sum-exp over the eigenvalues.
double free_energy(const Matrix& h, double kt) {
  const EigenSystem sys = diagonalize(h);
  const double e0 = sys.values[0];
  double z = 0.0;
  for (int k = 0; k < sys.values.size(); ++k) {
    z += std::exp(-(sys.values[k] - e0) / kt);
  }
  return e0 - kt * std::log(z);
}

double chi_at_step(const Matrix& h0, const Matrix& x, double kt, double delta) {
  const double fp = free_energy(h0 - delta * x, kt);
  const double f0 = free_energy(h0, kt);
  const double fm = free_energy(h0 + delta * x, kt);
  return -(fp - 2.0 * f0 + fm) / (delta * delta);
}

Matrix site_moment_operator(const Configuration& config, const Vec3& dir) {
  const int n = config.n_sites();
  Matrix d = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k) d(k, k) = config.sites[k].dot(dir);
  return d;
}

}  // namespace

double susceptibility_fd(const Matrix& h0, const Matrix& x, double kt, double delta_h) {
  if (kt <= 0.0 || delta_h <= 0.0) {
    throw std::invalid_argument("susceptibility_fd: kt and delta_h must be positive");
  }
  const double coarse = chi_at_step(h0, x, kt, delta_h);
  const double fine = chi_at_step(h0, x, kt, 0.5 * delta_h);
  return (4.0 * fine - coarse) / 3.0;
}

double effective_susceptibility(const Configuration& config, SpinValue s, double w,
                                double kt, const Vec3& dir) {
  EffectiveParams params;
  params.w = w;
  const Matrix h0 = build_effective(config, s, params);
  const Matrix d = site_moment_operator(config, dir);
  const double delta = std::min(std::abs(w), kt) / 100.0;
  return susceptibility_fd(h0, d, kt, delta);
}

double low_t_susceptibility(const Configuration& config, SpinValue s, double w,
                            double kt, const Vec3& dir) {
  EffectiveParams params;
  params.w = w;
  const Matrix h0 = build_effective(config, s, params);
  const Matrix d = site_moment_operator(config, dir);
  const EigenSystem sys = diagonalize(h0);

  const int n = static_cast<int>(sys.values.size());
  const double spread = sys.values[n - 1] - sys.values[0];
  const double tol = 1e-8 * std::max(1.0, spread);
  int g0 = 1;
  while (g0 < n && sys.values[g0] - sys.values[0] <= tol) ++g0;

  const Matrix x_eig = sys.vectors.adjoint() * d * sys.vectors;
  double curie = 0.0;
  double van_vleck = 0.0;
  for (int i = 0; i < g0; ++i) {
    for (int j = 0; j < g0; ++j) curie += std::norm(x_eig(i, j));
    for (int m = g0; m < n; ++m) {
      van_vleck += 2.0 * std::norm(x_eig(i, m)) / (sys.values[m] - sys.values[0]);
    }
  }
  return curie / (g0 * kt) + van_vleck / g0;
}

double cef_susceptibility(SpinValue s, double phi, double kt, const Vec3& dir) {
  const Matrix h0 = cubic_cef_hamiltonian(s, phi);
  const Matrix x = spin_along(s, dir);
  const double delta = std::min(1.0, kt) / (100.0 * s.j());
  return susceptibility_fd(h0, x, kt, delta) / (s.j() * s.j());
}

OscillationSeries magnetization_oscillation(const Configuration& config, SpinValue s,
                                            double w, int k0,
                                            const std::vector<double>& times) {
  if (k0 < 0 || k0 >= config.n_sites()) {
    throw std::invalid_argument("magnetization_oscillation: k0 out of range");
  }
  EffectiveParams params;
  params.w = w;
  const Matrix h = build_effective(config, s, params);
  const EigenSystem sys = diagonalize(h);
  const int n = config.n_sites();

  Eigen::VectorXd d(n);
  for (int k = 0; k < n; ++k) d[k] = config.sites[k0].dot(config.sites[k]);

  // Overlap of eigenvector e with the initial site: c_e = <e|k0>.
  const Eigen::VectorXcd c = sys.vectors.row(k0).adjoint();

  OscillationSeries series;
  series.times = times;
  series.m.reserve(times.size());
  for (const double t : times) {
    Eigen::VectorXcd phase(n);
    for (int e = 0; e < n; ++e) {
      phase[e] = std::exp(Complex(0.0, -sys.values[e] * t)) * c[e];
    }
    const Eigen::VectorXcd amp = sys.vectors * phase;
    Complex m{0.0, 0.0};
    for (int k = 0; k < n; ++k) m += d[k] * std::norm(amp[k]);
    series.max_imag = std::max(series.max_imag, std::abs(m.imag()));
    series.m.push_back(m.real());
  }

  // Infinite-time average: phases between distinct eigenvalues average out,
  // degenerate pairs survive.
  const double scale = std::max(1.0, sys.values[n - 1] - sys.values[0]);
  double dc = 0.0;
  for (int k = 0; k < n; ++k) {
    int e = 0;
    while (e < n) {
      int e2 = e;
      Complex block{0.0, 0.0};
      while (e2 < n && sys.values[e2] - sys.values[e] <= 1e-10 * scale) {
        block += sys.vectors(k, e2) * c[e2];
        ++e2;
      }
      dc += d[k] * std::norm(block);
      e = e2;
    }
  }
  series.dc = dc;
  return series;
}

double relaxation_time(double delta_kelvin, double rho, double omega, double sound_speed,
                       double kt_kelvin) {
  if (delta_kelvin <= 0.0 || rho <= 0.0 || omega <= 0.0 || sound_speed <= 0.0) {
    throw std::invalid_argument("relaxation_time: inputs must be positive");
  }
  const double delta_erg = kBoltzmann * delta_kelvin;
  double tau = kHbar * rho * std::pow(sound_speed, 5) /
               (delta_erg * delta_erg * std::pow(omega, 3));
  if (kt_kelvin > 0.0) {
    const double kt_erg = kBoltzmann * kt_kelvin;
    if (kt_erg > kHbar * omega) {
      tau *= kHbar * omega / kt_erg;
    }
  }
  return tau;
}

double dipolar_broadening(double g, SpinValue s, double density, double fraction) {
  if (g <= 0.0 || density <= 0.0 || fraction < 0.0 || fraction > 1.0) {
    throw std::invalid_argument("dipolar_broadening: bad inputs");
  }
  const double moment = g * kBohrMagneton * s.j();
  return (4.0 / 9.0) * moment * moment * density * fraction / kHbar;
}

}  // namespace polyspin
