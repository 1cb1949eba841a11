#pragma once

#include <vector>

#include "polyspin/berry_effective.hpp"

namespace polyspin {

// -d^2F/dh^2 for H(h) = h0 - h * x, by symmetric finite differences in h with
// one Richardson step. Step size delta_h; temperature kt in the same energy
// units as h0.
double susceptibility_fd(const Matrix& h0, const Matrix& x, double kt, double delta_h);

// Zero-field susceptibility of the effective model along `dir`, in units of
// (g mu_B J)^2 per energy: the moment operator is diag(n_k . dir), so J drops
// out except through the link phases. Finite-difference step
// min(w, kt)/100 as pinned for the sweep protocols.
double effective_susceptibility(const Configuration& config, SpinValue s, double w,
                                double kt, const Vec3& dir);

// Same quantity from degenerate perturbation theory in the ground multiplet:
// Curie term beta <m^2> plus the van Vleck admixture term. Valid for
// kt much smaller than the gap above the ground multiplet.
double low_t_susceptibility(const Configuration& config, SpinValue s, double w,
                            double kt, const Vec3& dir);

// Susceptibility of the exact CEF model H = cubic_cef_hamiltonian(s, phi)
// - h (dir . J), reported in units (g mu_B J)^2: -d^2F/dh^2 / J^2. Step
// min(1, kt)/(100 J).
double cef_susceptibility(SpinValue s, double phi, double kt, const Vec3& dir);

struct OscillationSeries {
  std::vector<double> times;
  std::vector<double> m;        // site-projected moment, units g mu_B J
  double dc = 0.0;              // infinite-time average
  double max_imag = 0.0;        // numerical sanity: |imag part| before discard
};

// Coherent oscillation of the moment of a spin prepared at site k0:
// M(t)/(g mu_B J) = sum_k' (n_k0 . n_k') |<k'| exp(-i H t) |k0>|^2.
// Times in units hbar/w.
OscillationSeries magnetization_oscillation(const Configuration& config, SpinValue s,
                                            double w, int k0,
                                            const std::vector<double>& times);

// One-phonon relaxation time estimate tau = hbar rho s^5 / (Delta^2 omega^3),
// multiplied by hbar*omega/(kT) when kT exceeds hbar*omega. CGS-flavoured
// inputs: Delta in kelvin, rho in g/cm^3, omega in 1/s, sound speed in cm/s;
// kt_kelvin <= 0 requests the low-temperature form. Returns seconds.
double relaxation_time(double delta_kelvin, double rho, double omega, double sound_speed,
                       double kt_kelvin = 0.0);

// Dipolar broadening estimate delta_omega = (4/9) (g mu_B J)^2 n x / hbar in
// 1/s, for moment density n (cm^-3) and dilution fraction x. The bare
// product (g mu_B J)^2 n x / hbar sets the scale; the 4/9 is the adopted
// angular-average convention (the bare product would read about 4.0e10 x 1/s
// for g=2, J=7/2, n=1e22, where this estimate gives 1.78e10 x).
double dipolar_broadening(double g, SpinValue s, double density, double fraction);

}  // namespace polyspin
