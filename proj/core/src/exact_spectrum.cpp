#include "polyspin/exact_spectrum.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace polyspin {

EigenSystem diagonalize(const Matrix& h, double residual_tol) {
  if (h.rows() != h.cols()) {
    throw std::invalid_argument("diagonalize: matrix must be square");
  }
  const double herm = hermiticity_error(h);
  const double scale = std::max(1.0, h.norm());
  if (herm > 1e-12 * scale) {
    throw std::invalid_argument("diagonalize: matrix is not hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw numerical_error("diagonalize: eigensolver failed");
  }
  EigenSystem sys{solver.eigenvalues(), solver.eigenvectors()};
  const double residual =
      (h * sys.vectors - sys.vectors * sys.values.asDiagonal()).norm();
  if (residual > residual_tol * scale) {
    throw numerical_error("diagonalize: residual " + std::to_string(residual));
  }
  return sys;
}

std::vector<Multiplet> detect_multiplets(const Eigen::VectorXd& values,
                                         double gap_ratio) {
  std::vector<Multiplet> multiplets;
  const int n = static_cast<int>(values.size());
  if (n == 0) return multiplets;

  // Cluster boundaries sit at gaps within a factor gap_ratio of the largest
  // consecutive gap. Inter-multiplet gaps share an order of magnitude while
  // intra-multiplet tunneling splittings sit many orders below, so this
  // separates them without an absolute scale.
  double gmax = 0.0;
  for (int k = 1; k < n; ++k) gmax = std::max(gmax, values[k] - values[k - 1]);
  const double cut = gmax / gap_ratio;

  int start = 0;
  for (int k = 1; k <= n; ++k) {
    const bool split = (k == n) || (gmax > 0.0 && values[k] - values[k - 1] > cut);
    if (split) {
      Multiplet m;
      m.first = start;
      m.size = k - start;
      m.mean = values.segment(start, m.size).mean();
      m.width = values[k - 1] - values[start];
      multiplets.push_back(m);
      start = k;
    }
  }
  return multiplets;
}

std::vector<PhiSweepRow> sweep_phi(SpinValue s, const std::vector<double>& phi_values,
                                   int n_levels) {
  std::vector<PhiSweepRow> rows;
  rows.reserve(phi_values.size());
  for (const double phi : phi_values) {
    const Matrix h = cubic_cef_hamiltonian(s, phi);
    const EigenSystem sys = diagonalize(h);
    PhiSweepRow row;
    row.phi = phi;
    row.u = std::tan(phi);
    const int keep = std::min<int>(n_levels, sys.values.size());
    row.levels.assign(sys.values.data(), sys.values.data() + keep);

    const auto multiplets = detect_multiplets(sys.values, 10.0);
    const Multiplet& ground = multiplets.front();
    row.multiplet_size = ground.size;

    const Eigen::VectorXd member =
        sys.values.segment(ground.first, ground.size);
    const Eigen::VectorXd centered = member.array() - member.mean();
    row.rescale_r = std::sqrt(centered.squaredNorm() / ground.size);
    row.minus_ln_r_over_j = row.rescale_r > 0.0
                                ? -std::log(row.rescale_r) / s.j()
                                : std::numeric_limits<double>::infinity();

    if (multiplets.size() > 1 && ground.size > 0) {
      const double inter =
          sys.values[multiplets[1].first] - sys.values[ground.size - 1];
      const double intra =
          ground.size > 1 ? ground.width / (ground.size - 1) : 0.0;
      row.gap_ratio = intra / inter;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

SplittingFit splitting_exponent(SpinValue s, double u, double expected_action) {
  const double phi = std::atan(u);
  const Matrix h = cubic_cef_hamiltonian(s, phi);
  const EigenSystem sys = diagonalize(h);
  const auto multiplets = detect_multiplets(sys.values, 10.0);
  if (multiplets.empty()) {
    throw numerical_error("splitting_exponent: no levels");
  }
  if (multiplets.front().size != 6) {
    throw std::invalid_argument(
        "splitting_exponent: ground multiplet is not six-fold; u must lie in "
        "the single-path window");
  }

  // Tunneling splits the ground multiplet into sub-clusters spaced by the
  // hopping amplitude; the two lowest cluster means give |w| = (E1-E0)/4.
  const Multiplet& ground = multiplets.front();
  const Eigen::VectorXd cluster = sys.values.segment(ground.first, ground.size);
  const auto sub = detect_multiplets(cluster, 3.0);
  if (sub.size() < 2) {
    throw numerical_error("splitting_exponent: ground multiplet is unresolved");
  }
  const double delta = sub[1].mean - sub[0].mean;
  if (delta <= 0.0) {
    throw numerical_error("splitting_exponent: non-positive splitting");
  }
  SplittingFit fit;
  fit.exponent = -std::log(delta / 4.0) / s.j();
  if (std::isfinite(expected_action)) {
    fit.prefactor = (delta / 4.0) / std::exp(-s.j() * expected_action);
  }
  return fit;
}

}  // namespace polyspin
