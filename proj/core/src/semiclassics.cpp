#include "polyspin/semiclassics.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "polyspin/spin_algebra.hpp"

namespace polyspin {

namespace {

constexpr double kPi = std::numbers::pi;

// Smallest nonnegative root of f, assuming f(0) <= 0 and that f turns
// positive somewhere in (0, y_max). Scans for the first sign change, then
// bisects. Returns a negative value when no sign change exists.
double first_root(const std::function<double(double)>& f, double y_max) {
  const int n_scan = 4000;
  const double dy = y_max / n_scan;
  double lo = 0.0;
  double f_lo = f(lo);
  // At a path endpoint the turning point sits at 0 and roundoff can push
  // f(0) marginally positive; that is a zero root, not a failure.
  if (f_lo >= 0.0) return 0.0;
  double hi = -1.0;
  for (int k = 1; k <= n_scan; ++k) {
    const double y = k * dy;
    const double fy = f(y);
    if (f_lo <= 0.0 && fy > 0.0) {
      hi = y;
      break;
    }
    lo = y;
    f_lo = fy;
  }
  if (hi < 0.0) return -1.0;
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Adaptive Simpson quadrature with the standard Richardson acceptance test.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

}  // namespace

double kappa_profile(double u, double theta) {
  if (!(u > -2.0 / 3.0) || !(u < 1.0 / 15.0)) {
    throw std::invalid_argument("kappa_profile: u outside (-2/3, 1/15)");
  }
  if (theta < -1e-12 || theta > kPi / 2.0 + 1e-12) {
    throw std::invalid_argument("kappa_profile: theta outside [0, pi/2]");
  }
  const double s2 = std::pow(std::sin(2.0 * theta), 2);
  const double c4 = 1.0 - 0.5 * s2;

  // Path n = (sin(t) r, i kappa, cos(t) r), r = sqrt(1 + kappa^2). Energy
  // conservation at the well value reads s4 + u p6 = 1 + u with
  // s4 = r^4 c4 + kappa^4 and p6 = 33 q + 1.5 s4 - 0.5,
  // q = -kappa^2 r^4 s2 / 4; collected in y = kappa^2:
  const double lead = 1.0 + 1.5 * u;
  const auto f = [&](double y) {
    const double r2 = 1.0 + y;
    return lead * (r2 * r2 * c4 + y * y - 1.0) - 33.0 * u * y * r2 * r2 * s2 / 4.0;
  };
  const double y = first_root(f, 4.0);
  if (y < 0.0) {
    throw numerical_error("kappa_profile: no turning point found");
  }
  return std::sqrt(y);
}

double action_c(double u, double abs_tol) {
  return integrate([u](double theta) { return kappa_profile(u, theta); }, 0.0,
                   kPi / 2.0, abs_tol);
}

double action_c_icosahedral(double abs_tol) {
  // Vertices (+-alpha, +-beta, 0) and cyclic; the geodesic between the
  // adjacent pair (alpha, +-beta, 0) runs in the z = 0 plane through the
  // two-fold axis x, spanning arccos(1/sqrt5).
  const double r5 = std::sqrt(5.0);
  const double alpha = std::sqrt((5.0 + r5) / 10.0);
  const double beta = std::sqrt((5.0 - r5) / 10.0);
  const double psi0 = std::atan2(beta, alpha);

  // Icosahedral sextic invariant, normalized to -1/5 at the vertices:
  // P = sum n_i^6 + 30 nx^2 ny^2 nz^2
  //     - 3 sqrt5 (x^4 y^2 - x^2 y^4 + y^4 z^2 - y^2 z^4 + z^4 x^2 - z^2 x^4).
  // On the path n = (cos(psi) r, sin(psi) r, i kappa) every term is real.
  const auto kappa_at = [&](double psi) {
    const double cp = std::cos(psi);
    const double sp = std::sin(psi);
    const auto f = [&](double y) {
      const double r2 = 1.0 + y;
      const double x2 = cp * cp * r2;
      const double y2 = sp * sp * r2;
      const double z2 = -y;
      const double p = x2 * x2 * x2 + y2 * y2 * y2 + z2 * z2 * z2 +
                       30.0 * x2 * y2 * z2 -
                       3.0 * r5 *
                           (x2 * x2 * y2 - x2 * y2 * y2 + y2 * y2 * z2 -
                            y2 * z2 * z2 + z2 * z2 * x2 - z2 * x2 * x2);
      return -(p + 0.2);  // P decreases with y near the path; flip so f(0) <= 0
    };
    const double y = first_root(f, 4.0);
    if (y < 0.0) {
      throw numerical_error("action_c_icosahedral: no turning point found");
    }
    return std::sqrt(y);
  };
  return 2.0 * integrate(kappa_at, 0.0, psi0, abs_tol);
}

double oscillation_count(Group host, SpinValue s) {
  double omega_max = 0.0;
  switch (host) {
    case Group::O: omega_max = kPi / 3.0; break;
    case Group::Y: omega_max = 2.0 * kPi / 15.0; break;
    default:
      throw std::invalid_argument("oscillation_count: host must be O or Y");
  }
  return s.j() * omega_max / (4.0 * kPi);
}

}  // namespace polyspin
