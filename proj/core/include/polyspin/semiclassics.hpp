#pragma once

#include <vector>

#include "polyspin/geometry.hpp"

namespace polyspin {

// Transverse imaginary momentum kappa(theta) of the least-action path between
// adjacent four-fold minima of the cubic potential at u = tan(phi) in
// (-2/3, 1/15), parameterized by the polar angle theta in [0, pi/2] along the
// geodesic. Solved from energy conservation by bisection to 1e-12.
double kappa_profile(double u, double theta);

// Action constant c(u) = integral of kappa over the geodesic; the tunneling
// splitting scales as exp(-J c(u)). c(0) = ln(3)/2. Increases with u across
// the window: the barrier between four-fold wells flattens toward u = -2/3
// and steepens toward the double-path boundary at u = 1/15.
double action_c(double u, double abs_tol = 1e-8);

// Same quantity for adjacent icosahedral minima of the pure icosahedral
// sextic invariant; the geodesic spans arccos(1/sqrt5).
double action_c_icosahedral(double abs_tol = 1e-8);

// Number of full oscillations of the doubled-link ground gap as the two-path
// solid angle sweeps from 0 to its cap: J * Omega_max / (4 pi).
double oscillation_count(Group host, SpinValue s);

}  // namespace polyspin
