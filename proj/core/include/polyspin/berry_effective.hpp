#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polyspin/geometry.hpp"

namespace polyspin {

// One tunneling phase per edge, for the a->b direction.
struct GaugePhases {
  std::vector<double> phase;
};

// Fix a gauge for the link phases of C(G,p) at spin J: every plaquette must
// enclose flux J*Omega (mod 2*pi). Tree links are set to zero phase and the
// rest solved for; throws numerical_error if any plaquette constraint ends up
// violated by more than `residual_tol`.
GaugePhases solve_gauge(const Configuration& config, SpinValue s,
                        double residual_tol = 1e-10);

struct EffectiveParams {
  double w = 1.0;                      // nearest-neighbour tunneling amplitude
  double two_path_omega = 0.0;         // solid angle between doubled paths (O3TwoPath)
  Vec3 field = Vec3::Zero();           // in energy units per unit J
};

// N x N tunneling Hamiltonian: H_kk' = w_kk' exp(i phi_kk') on links (with
// w_kk' = w on nearest-neighbour links and 2 w cos(J*Omega/2) on doubled
// two-path links) and -J h.n_k on the diagonal.
Matrix build_effective(const Configuration& config, SpinValue s,
                       const EffectiveParams& params = {},
                       const GaugePhases* gauge = nullptr);

struct Level {
  double value = 0.0;
  int multiplicity = 0;
};

struct Spectrum {
  std::vector<Level> levels;  // ascending
  // True when the level set is backed by a closed-form expression from the
  // reference solutions; numeric-only regimes (Y2 at even or integer J)
  // report false.
  bool verified = true;

  int total_multiplicity() const;
};

// Eigenvalues clustered into degenerate levels. Values closer than
// tol * max(1, spectral width) merge into one level.
Spectrum group_levels(const Eigen::VectorXd& values, double tol = 1e-8);

// Diagonalize the effective model and cluster degeneracies.
Spectrum effective_spectrum(const Configuration& config, SpinValue s,
                            const EffectiveParams& params = {}, double tol = 1e-8);

// Closed-form level sets, available for every configuration except O2/Y2
// need their alpha and O3TwoPath its omega from `params`. For Y2 the closed
// form covers odd integer J only; other J fall back to the numeric spectrum
// with verified = false. Axial (D_N,N) kinds accept an axial field, D4Ring an
// in-plane field; any other nonzero field throws std::invalid_argument.
Spectrum closed_form_spectrum(const Configuration& config, SpinValue s,
                              const EffectiveParams& params = {});

// Tr H^0 .. Tr H^kmax of the effective Hamiltonian (gauge invariant).
std::vector<double> trace_invariants(const Matrix& h, int kmax);

// Distance from J to the nearest multiple of s/2, in [0, s/4]: spins whose
// class values agree share a level set. Throws for aperiodic configurations
// (s_parameter == 0).
double equivalence_class(const Configuration& config, SpinValue s);

// |2 w cos(J*Omega/2)|, the magnitude of the doubled link amplitude when two
// congruent paths enclosing solid angle Omega interfere. Omega is capped by
// the enclosing face: pi/3 for octahedral, 2*pi/15 for icosahedral hosts.
double double_path_amplitude(double w, SpinValue s, double omega, Group host);

// Ground-state magnetic response of C(O,2) to a field along a parent
// four-fold axis, from the closed-form levels at x = J(alpha + 2*pi)/4.
// Either a spontaneous moment (units g mu_B J) or a linear susceptibility
// (units (g mu_B J)^2 / w).
struct GroundResponse {
  bool has_moment = false;
  double moment = 0.0;
  double susceptibility = 0.0;
};

GroundResponse o2_ground_response(SpinValue s, double alpha, double w);

// JSON-ready one-line summary of a spectrum.
std::string spectrum_to_json(const Configuration& config, SpinValue s,
                             const Spectrum& spec);

}  // namespace polyspin
