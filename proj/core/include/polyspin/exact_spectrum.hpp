#pragma once

#include <limits>
#include <vector>

#include "polyspin/spin_algebra.hpp"

namespace polyspin {

struct EigenSystem {
  Eigen::VectorXd values;   // ascending
  Matrix vectors;           // columns
};

// Self-adjoint diagonalization with a residual check:
// max_k |H v_k - E_k v_k| <= tol * max(1, |H|). Throws numerical_error on
// failure. Input must be hermitian to 1e-12 relative.
EigenSystem diagonalize(const Matrix& h, double residual_tol = 1e-9);

struct Multiplet {
  int first = 0;       // index of the lowest member
  int size = 0;
  double mean = 0.0;   // mean energy
  double width = 0.0;  // top minus bottom member
};

// Clustering of sorted eigenvalues: boundaries sit at every gap within a
// factor gap_ratio of the largest consecutive gap. Tuned for tunneling-split
// CEF spectra where inter-multiplet gaps share an order of magnitude and
// intra-multiplet splittings sit many orders below.
std::vector<Multiplet> detect_multiplets(const Eigen::VectorXd& values,
                                         double gap_ratio = 100.0);

struct PhiSweepRow {
  double phi = 0.0;
  double u = 0.0;                  // tan(phi)
  std::vector<double> levels;      // lowest few eigenvalues
  int multiplet_size = 0;          // size of the ground multiplet
  double rescale_r = 0.0;          // RMS of the centered ground multiplet
  double minus_ln_r_over_j = 0.0;  // -ln(R)/J, the apparent tunneling action
  double gap_ratio = 0.0;          // mean intra-multiplet spacing / gap above
};

// Sweep the cubic CEF mixing angle and report ground-multiplet structure.
std::vector<PhiSweepRow> sweep_phi(SpinValue s, const std::vector<double>& phi_values,
                                   int n_levels = 13);

struct SplittingFit {
  double exponent = 0.0;   // -ln((E1-E0)/4)/J
  double prefactor = 0.0;  // (E1-E0) / (4 exp(-J * expected)) when expected given
};

// Tunneling splitting of the six-fold ground multiplet at u = tan(phi):
// E0 is the bottom sub-level cluster of the ground multiplet, E1 the next.
// `expected_action` (if finite) is used to fill in the prefactor.
SplittingFit splitting_exponent(SpinValue s, double u,
                                double expected_action = std::numeric_limits<double>::quiet_NaN());

}  // namespace polyspin
