#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace polyspin {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vec3 = Eigen::Vector3d;

// Numerical failure distinct from bad input: solvers that did not converge,
// residual checks that did not hold, etc. The CLI maps this to exit code 3.
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Spin magnitude stored as 2J so half-integer values stay exact.
struct SpinValue {
  int two_j;

  explicit SpinValue(int two_j_in) : two_j(two_j_in) {
    if (two_j < 0) {
      throw std::invalid_argument("SpinValue: 2J must be a non-negative integer");
    }
  }

  double j() const { return 0.5 * two_j; }
  int dim() const { return two_j + 1; }
  bool half_integer() const { return (two_j % 2) != 0; }
  // J(J+1)
  double casimir() const { return 0.25 * two_j * (two_j + 2); }
};

// Angular momentum matrices in the |J,m> basis, row/column 0 holding m = +J
// and descending to m = -J. Units of hbar.
struct SpinOperators {
  Matrix jx, jy, jz, jplus, jminus;
};

SpinOperators spin_operators(SpinValue s);

// Component of J along a unit direction.
Matrix spin_along(SpinValue s, const Vec3& axis);

// exp(-i * angle * n.J), the active rotation by `angle` about unit vector n.
// For half-integer J a 2*pi rotation is -1.
Matrix rotation_operator(SpinValue s, const Vec3& axis, double angle);

enum class Stevens { O40, O44, O60, O64 };

Matrix stevens_operator(SpinValue s, Stevens which);

// The cubic-axis combinations O40 + 5*O44 and O60 - 21*O64, which commute
// with the full octahedral rotation group when z is a four-fold axis.
Matrix cubic_quartic_stevens(SpinValue s);
Matrix cubic_sextic_stevens(SpinValue s);

enum class Invariant {
  CubicFourth,       // Jx^4 + Jy^4 + Jz^4
  CubicSixth,        // Jx^6+Jy^6+Jz^6 + 30*sym(Jx^2 Jy^2 Jz^2)
  IcosahedralSixth,  // degree-6 invariant of the icosahedral group, see below
};

// Polynomial rotation invariants with every mixed term fully symmetrized over
// operator orderings. IcosahedralSixth is oriented so the icosahedron
// vertices sit at (+-alpha, +-beta, 0) and cyclic permutations, with
// alpha^2 = (5+sqrt5)/10, beta^2 = (5-sqrt5)/10; its classical value on that
// vertex set is -1/5 at the minimum normalization used here.
Matrix invariant_operator(SpinValue s, Invariant which);

// Crystal-field Hamiltonian interpolating between the pure quartic and pure
// sextic cubic invariants:
//   H(phi) = -cos(phi) * (O40 + 5 O44)/X^2 - (5/14) sin(phi) * (O60 - 21 O64)/X^3
// with X = J(J+1). Classically this is -20[cos(phi) p4 + sin(phi) p6] up to a
// constant, where p4 = sum n_i^4 and p6 = 33 nx^2 ny^2 nz^2 + 1.5 p4 - 0.5,
// so the classical minima are controlled by u = tan(phi) alone.
Matrix cubic_cef_hamiltonian(SpinValue s, double phi);

// -(h . J): Zeeman coupling for a field given in energy units (g mu_B absorbed).
Matrix zeeman_hamiltonian(SpinValue s, const Vec3& field);

// max |M - M^dagger| entrywise; cheap hermiticity diagnostic.
double hermiticity_error(const Matrix& m);

}  // namespace polyspin
