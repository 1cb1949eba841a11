#include "polyspin/spin_algebra.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace polyspin {

namespace {

constexpr Complex kI{0.0, 1.0};

// Mean of the products over all distinct orderings of the factor multiset.
// `powers` holds the exponent of Jx, Jy, Jz in that order.
Matrix symmetrized_product(const SpinOperators& ops, const std::array<int, 3>& powers) {
  std::vector<int> word;
  for (int axis = 0; axis < 3; ++axis) {
    word.insert(word.end(), powers[axis], axis);
  }
  std::sort(word.begin(), word.end());

  const Matrix* factors[3] = {&ops.jx, &ops.jy, &ops.jz};
  const int dim = ops.jz.rows();
  Matrix sum = Matrix::Zero(dim, dim);
  long count = 0;
  do {
    Matrix term = Matrix::Identity(dim, dim);
    for (int axis : word) {
      term = term * (*factors[axis]);
    }
    sum += term;
    ++count;
  } while (std::next_permutation(word.begin(), word.end()));
  return sum / static_cast<double>(count);
}

Matrix matrix_power4(const Matrix& m) {
  Matrix m2 = m * m;
  return m2 * m2;
}

}  // namespace

SpinOperators spin_operators(SpinValue s) {
  const int dim = s.dim();
  const double j = s.j();
  SpinOperators ops;
  ops.jz = Matrix::Zero(dim, dim);
  ops.jplus = Matrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) {
    ops.jz(k, k) = j - k;  // m runs from +J down to -J
  }
  // <m+1| J+ |m> = sqrt(J(J+1) - m(m+1))
  for (int k = 1; k < dim; ++k) {
    const double m = j - k;
    ops.jplus(k - 1, k) = std::sqrt(s.casimir() - m * (m + 1.0));
  }
  ops.jminus = ops.jplus.adjoint();
  ops.jx = 0.5 * (ops.jplus + ops.jminus);
  ops.jy = -0.5 * kI * (ops.jplus - ops.jminus);
  return ops;
}

Matrix spin_along(SpinValue s, const Vec3& axis) {
  const SpinOperators ops = spin_operators(s);
  return axis.x() * ops.jx + axis.y() * ops.jy + axis.z() * ops.jz;
}

Matrix rotation_operator(SpinValue s, const Vec3& axis, double angle) {
  const double norm = axis.norm();
  if (norm < 1e-14) {
    throw std::invalid_argument("rotation_operator: axis must be nonzero");
  }
  // n.J is hermitian, so exponentiate through its eigenbasis.
  Eigen::SelfAdjointEigenSolver<Matrix> solver(spin_along(s, axis / norm));
  const Eigen::VectorXd& lambda = solver.eigenvalues();
  Eigen::VectorXcd phases(lambda.size());
  for (int k = 0; k < lambda.size(); ++k) {
    phases[k] = std::exp(-kI * angle * lambda[k]);
  }
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

Matrix stevens_operator(SpinValue s, Stevens which) {
  const SpinOperators ops = spin_operators(s);
  const int dim = s.dim();
  const double x = s.casimir();
  const Matrix id = Matrix::Identity(dim, dim);
  const Matrix jz2 = ops.jz * ops.jz;

  switch (which) {
    case Stevens::O40: {
      // 35 Jz^4 - (30X - 25) Jz^2 + (3X^2 - 6X)
      return 35.0 * matrix_power4(ops.jz) - (30.0 * x - 25.0) * jz2 +
             (3.0 * x * x - 6.0 * x) * id;
    }
    case Stevens::O44: {
      return 0.5 * (matrix_power4(ops.jplus) + matrix_power4(ops.jminus));
    }
    case Stevens::O60: {
      // 231 Jz^6 - (315X - 735) Jz^4 + (105X^2 - 525X + 294) Jz^2
      //   - 5X^3 + 40X^2 - 60X
      const Matrix jz4 = jz2 * jz2;
      const Matrix jz6 = jz4 * jz2;
      return 231.0 * jz6 - (315.0 * x - 735.0) * jz4 +
             (105.0 * x * x - 525.0 * x + 294.0) * jz2 +
             (-5.0 * x * x * x + 40.0 * x * x - 60.0 * x) * id;
    }
    case Stevens::O64: {
      // (1/4) [ (11 Jz^2 - X - 38)(J+^4 + J-^4) + h.c. ]
      const Matrix prefactor = 11.0 * jz2 - (x + 38.0) * id;
      const Matrix ladder = matrix_power4(ops.jplus) + matrix_power4(ops.jminus);
      const Matrix half = prefactor * ladder;
      return 0.25 * (half + half.adjoint());
    }
  }
  throw std::invalid_argument("stevens_operator: unknown operator");
}

Matrix cubic_quartic_stevens(SpinValue s) {
  return stevens_operator(s, Stevens::O40) + 5.0 * stevens_operator(s, Stevens::O44);
}

Matrix cubic_sextic_stevens(SpinValue s) {
  return stevens_operator(s, Stevens::O60) - 21.0 * stevens_operator(s, Stevens::O64);
}

Matrix invariant_operator(SpinValue s, Invariant which) {
  const SpinOperators ops = spin_operators(s);

  switch (which) {
    case Invariant::CubicFourth: {
      return matrix_power4(ops.jx) + matrix_power4(ops.jy) + matrix_power4(ops.jz);
    }
    case Invariant::CubicSixth: {
      const Matrix jx2 = ops.jx * ops.jx;
      const Matrix jy2 = ops.jy * ops.jy;
      const Matrix jz2 = ops.jz * ops.jz;
      return jx2 * jx2 * jx2 + jy2 * jy2 * jy2 + jz2 * jz2 * jz2 +
             30.0 * symmetrized_product(ops, {2, 2, 2});
    }
    case Invariant::IcosahedralSixth: {
      const Matrix jx2 = ops.jx * ops.jx;
      const Matrix jy2 = ops.jy * ops.jy;
      const Matrix jz2 = ops.jz * ops.jz;
      Matrix result = jx2 * jx2 * jx2 + jy2 * jy2 * jy2 + jz2 * jz2 * jz2 +
                      30.0 * symmetrized_product(ops, {2, 2, 2});
      const double c = 3.0 * std::sqrt(5.0);
      result -= c * (symmetrized_product(ops, {4, 2, 0}) - symmetrized_product(ops, {2, 4, 0}) +
                     symmetrized_product(ops, {0, 4, 2}) - symmetrized_product(ops, {0, 2, 4}) +
                     symmetrized_product(ops, {2, 0, 4}) - symmetrized_product(ops, {4, 0, 2}));
      return result;
    }
  }
  throw std::invalid_argument("invariant_operator: unknown invariant");
}

Matrix cubic_cef_hamiltonian(SpinValue s, double phi) {
  if (s.two_j == 0) {
    throw std::invalid_argument("cubic_cef_hamiltonian: needs 2J >= 1");
  }
  const double x = s.casimir();
  return -std::cos(phi) / (x * x) * cubic_quartic_stevens(s) -
         (5.0 / 14.0) * std::sin(phi) / (x * x * x) * cubic_sextic_stevens(s);
}

Matrix zeeman_hamiltonian(SpinValue s, const Vec3& field) {
  const SpinOperators ops = spin_operators(s);
  return -(field.x() * ops.jx + field.y() * ops.jy + field.z() * ops.jz);
}

double hermiticity_error(const Matrix& m) {
  return (m - m.adjoint().eval()).cwiseAbs().maxCoeff();
}

}  // namespace polyspin
