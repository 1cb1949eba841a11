#include "polyspin/berry_effective.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include <Eigen/Dense>

namespace polyspin {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

// Spanning tree over the site graph; returns a flag per edge.
std::vector<bool> spanning_tree(const Configuration& config) {
  std::vector<int> root(config.sites.size());
  for (size_t k = 0; k < root.size(); ++k) root[k] = static_cast<int>(k);
  const auto find = [&](int a) {
    while (root[a] != a) a = root[a] = root[root[a]];
    return a;
  };
  std::vector<bool> in_tree(config.edges.size(), false);
  for (size_t e = 0; e < config.edges.size(); ++e) {
    const int ra = find(config.edges[e].a);
    const int rb = find(config.edges[e].b);
    if (ra != rb) {
      root[ra] = rb;
      in_tree[e] = true;
    }
  }
  return in_tree;
}

bool has_two_path_links(const Configuration& config) {
  return std::any_of(config.edges.begin(), config.edges.end(),
                     [](const Edge& e) { return e.kind == EdgeKind::NextNearest; });
}

double signed_two_path_amplitude(const Configuration& config, SpinValue s,
                                 const EffectiveParams& params) {
  const double cap = config.group == Group::Y ? 2.0 * kPi / 15.0 : kPi / 3.0;
  if (params.two_path_omega < 0.0 || params.two_path_omega > cap + 1e-12) {
    throw std::invalid_argument("two-path solid angle must lie in [0, " +
                                std::to_string(cap) + "]");
  }
  return 2.0 * params.w * std::cos(s.j() * params.two_path_omega / 2.0);
}

// True when the level set for this spin is pinned by a reference closed form.
bool covered_by_closed_form(const Configuration& config, SpinValue s) {
  if (config.kind != ConfigKind::Y2) return true;
  return s.two_j % 4 == 2;  // odd integer J only
}

struct LevelBuilder {
  std::vector<std::pair<double, int>> entries;

  void add(double value, int mult) { entries.emplace_back(value, mult); }

  Spectrum finish(double tol = 1e-9) {
    std::sort(entries.begin(), entries.end());
    double width = entries.empty() ? 0.0 : entries.back().first - entries.front().first;
    const double merge = tol * std::max(1.0, width);
    Spectrum spec;
    for (const auto& [value, mult] : entries) {
      if (!spec.levels.empty() && value - spec.levels.back().value <= merge) {
        Level& last = spec.levels.back();
        last.value = (last.value * last.multiplicity + value * mult) /
                     (last.multiplicity + mult);
        last.multiplicity += mult;
      } else {
        spec.levels.push_back({value, mult});
      }
    }
    return spec;
  }
};

// Distance folded into [0, s/2] in units of 2J: the class label of two_j
// under the spectral period s (in two_j units) and reflection.
int folded_two_j(int two_j, int s) {
  int r = two_j % s;
  if (r < 0) r += s;
  return std::min(r, s - r);
}

// cos(pi m / den) and sin(pi m / den) for integer m, reduced mod 2 den and
// read from exact tables for den in {2, 3, 4, 6}. The closed forms only query
// trig at these lattice angles; naive cos(k*pi + ...) would smear the
// tabulated integer and half-integer classes by a few ulp.
int reduce_half_turns(long long m, int den) {
  const int period = 2 * den;
  int r = static_cast<int>(m % period);
  if (r < 0) r += period;
  return r;
}

double cospi_frac(long long m, int den) {
  static const double r2h = 0.5 * std::sqrt(2.0);
  static const double r3h = 0.5 * std::sqrt(3.0);
  static const double t2[4] = {1.0, 0.0, -1.0, 0.0};
  static const double t3[6] = {1.0, 0.5, -0.5, -1.0, -0.5, 0.5};
  static const double t4[8] = {1.0, r2h, 0.0, -r2h, -1.0, -r2h, 0.0, r2h};
  static const double t6[12] = {1.0, r3h, 0.5,  0.0, -0.5, -r3h,
                                -1.0, -r3h, -0.5, 0.0, 0.5,  r3h};
  const int r = reduce_half_turns(m, den);
  switch (den) {
    case 2: return t2[r];
    case 3: return t3[r];
    case 4: return t4[r];
    case 6: return t6[r];
    default: throw std::logic_error("cospi_frac: unsupported denominator");
  }
}

double sinpi_frac(long long m, int den) {
  static const double r2h = 0.5 * std::sqrt(2.0);
  static const double r3h = 0.5 * std::sqrt(3.0);
  static const double t2[4] = {0.0, 1.0, 0.0, -1.0};
  static const double t3[6] = {0.0, r3h, r3h, 0.0, -r3h, -r3h};
  static const double t4[8] = {0.0, r2h, 1.0, r2h, 0.0, -r2h, -1.0, -r2h};
  static const double t6[12] = {0.0, 0.5,  r3h,  1.0, r3h,  0.5,
                                0.0, -0.5, -r3h, -1.0, -r3h, -0.5};
  const int r = reduce_half_turns(m, den);
  switch (den) {
    case 2: return t2[r];
    case 3: return t3[r];
    case 4: return t4[r];
    case 6: return t6[r];
    default: throw std::logic_error("sinpi_frac: unsupported denominator");
  }
}

double dirichlet_axial_level(int n_links, int two_j) {
  // Product forms of sum_k exp(-4*pi*i*J*k/N) for N = 2, 4, 6.
  switch (n_links) {
    case 2: return 2.0 * cospi_frac(two_j, 2);
    case 4: return 4.0 * cospi_frac(two_j, 2) * cospi_frac(two_j, 4);
    case 6: return 2.0 * cospi_frac(two_j, 2) * (1.0 + 2.0 * cospi_frac(two_j, 3));
    default: throw std::logic_error("dirichlet_axial_level: unsupported link count");
  }
}

Spectrum closed_form_axial(const Configuration& config, SpinValue s,
                           const EffectiveParams& params) {
  const Vec3 axis = config.sites[0];
  const Vec3 transverse = params.field - params.field.dot(axis) * axis;
  if (transverse.norm() > 1e-14) {
    throw std::invalid_argument("closed_form_spectrum: axial networks take an axial field");
  }
  const double e0 = params.w * dirichlet_axial_level(config.p, s.two_j);
  const double hj = params.field.dot(axis) * s.j();
  const double e = std::sqrt(e0 * e0 + hj * hj);
  LevelBuilder b;
  b.add(-e, 1);
  b.add(e, 1);
  return b.finish();
}

Spectrum closed_form_ring(const Configuration& config, SpinValue s,
                          const EffectiveParams& params) {
  const int n = config.n_sites();
  const double j = s.j();
  LevelBuilder b;
  if (params.field.norm() < 1e-14) {
    for (int k = 0; k < n; ++k) {
      // 2 pi (k + J) / n = pi (2k + 2J) / n with n = 4 or 6.
      b.add(2.0 * params.w * cospi_frac(2LL * k + s.two_j, n), 1);
    }
    return b.finish();
  }
  if (config.kind != ConfigKind::D4Ring || std::abs(params.field.z()) > 1e-14) {
    throw std::invalid_argument(
        "closed_form_spectrum: ring fields are closed-form only for D4-2 in plane");
  }
  const double hbar_j = params.field.norm() * j;
  const double phi_h = std::atan2(params.field.y(), params.field.x());
  const double w = params.w;
  const double inner = std::sqrt(4.0 * std::pow(w, 4) * std::pow(cospi_frac(s.two_j, 2), 2) +
                                 2.0 * hbar_j * hbar_j * w * w +
                                 0.25 * std::pow(hbar_j, 4) * std::pow(std::cos(2.0 * phi_h), 2));
  for (int s1 : {-1, 1})
    for (int s2 : {-1, 1}) {
      const double e2 = 2.0 * w * w + 0.5 * hbar_j * hbar_j + s2 * inner;
      b.add(s1 * std::sqrt(std::max(e2, 0.0)), 1);
    }
  return b.finish();
}

// Six-level closed form for the octahedron network, evaluated at the lattice
// angles x = pi (J + 2k) = pi m / 2 with m = 2J + 4k.
Spectrum closed_form_octahedron(SpinValue s, double w) {
  LevelBuilder b;
  for (int k = 0; k < 6; ++k) {
    const long long m = s.two_j + 4LL * k;
    const double c23 = cospi_frac(m, 3);  // cos(2x/3)
    const double c12 = cospi_frac(m, 4);  // cos(x/2)
    const double c13 = cospi_frac(m, 6);  // cos(x/3)
    const double s23 = sinpi_frac(m, 3);
    const double s12 = sinpi_frac(m, 4);
    const double chi = c23 * c12 - std::sqrt(c13 * c13 + s23 * s23 * s12 * s12);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    b.add(sign * 2.0 * w * chi, 1);
  }
  return b.finish();
}

// Eight-level closed form for the cube network, at x = pi (J + 3k) = pi m / 2
// with m = 2J + 6k.
Spectrum closed_form_cube(SpinValue s, double w) {
  LevelBuilder b;
  for (int k = 0; k < 4; ++k) {
    const long long m = s.two_j + 6LL * k;
    const double cx = cospi_frac(m, 2);   // cos(x)
    const double c23 = cospi_frac(m, 3);  // cos(2x/3)
    const double c12 = cospi_frac(m, 4);  // cos(x/2)
    const double c13 = cospi_frac(m, 6);  // cos(x/3)
    const double s12 = sinpi_frac(m, 4);
    const double s13 = sinpi_frac(m, 6);
    const double rho = std::sqrt(4.0 * s12 * s12 * s13 * s13 + 1.0);
    double val = 3.0 + 2.0 * cx * c23 + 4.0 * c12 * c13 * rho;
    // At half-integer J two of the levels vanish identically; the O(1)
    // cancellation above leaves ~1e-15 which the sqrt would blow up to 1e-8.
    if (std::abs(val) < 4e-14) val = 0.0;
    const double e = w * std::sqrt(std::max(val, 0.0));
    b.add(e, 1);
    b.add(-e, 1);
  }
  return b.finish();
}

Spectrum closed_form_cube_two_path(const Configuration& config, SpinValue s,
                                   const EffectiveParams& params) {
  const double x = signed_two_path_amplitude(config, s, params) / params.w;
  const double w = params.w;
  const double r3 = std::sqrt(3.0);
  const double r6 = std::sqrt(6.0);
  LevelBuilder b;
  switch (folded_two_j(s.two_j, 12)) {
    case 0:
      b.add(-3.0 * w * (1.0 - x), 1);
      b.add(-w * (1.0 + x), 3);
      b.add(w * (1.0 - x), 3);
      b.add(3.0 * w * (1.0 + x), 1);
      break;
    case 2:
      b.add(-2.0 * w * (1.0 - 0.5 * x), 3);
      b.add(-3.0 * w * x, 2);
      b.add(2.0 * w * (1.0 + 0.5 * x), 3);
      break;
    case 4:
      b.add(-2.0 * w * (1.0 + 0.5 * x), 3);
      b.add(3.0 * w * x, 2);
      b.add(2.0 * w * (1.0 - 0.5 * x), 3);
      break;
    case 6:
      b.add(-3.0 * w * (1.0 + x), 1);
      b.add(-w * (1.0 - x), 3);
      b.add(w * (1.0 + x), 3);
      b.add(3.0 * w * (1.0 - x), 1);
      break;
    case 1:
      b.add(-w * (r6 - x * r3), 2);
      b.add(-w * x * r3, 4);
      b.add(w * (r6 + x * r3), 2);
      break;
    case 3: {
      const double e = w * std::sqrt(3.0 * (1.0 + x * x));
      b.add(-e, 4);
      b.add(e, 4);
      break;
    }
    case 5:
      b.add(-w * (r6 + x * r3), 2);
      b.add(w * x * r3, 4);
      b.add(w * (r6 - x * r3), 2);
      break;
    default:
      throw std::logic_error("closed_form_cube_two_path: bad class");
  }
  return b.finish();
}

Spectrum closed_form_icosahedron(SpinValue s, double w) {
  const double r5 = std::sqrt(5.0);
  const double c1 = std::cos(kPi / 10.0);
  const double c3 = std::cos(3.0 * kPi / 10.0);
  LevelBuilder b;
  switch (folded_two_j(s.two_j, 20)) {
    case 0:
      b.add(-r5 * w, 3); b.add(-w, 5); b.add(r5 * w, 3); b.add(5.0 * w, 1);
      break;
    case 2:
      b.add(-r5 * w, 4); b.add(0.5 * (r5 - 3.0) * w, 5); b.add(0.5 * (5.0 + r5) * w, 3);
      break;
    case 4:
      b.add(-r5 * w, 4); b.add(0.5 * (r5 - 5.0) * w, 3); b.add(0.5 * (r5 + 3.0) * w, 5);
      break;
    case 6:
      b.add(-0.5 * (r5 + 3.0) * w, 5); b.add(0.5 * (5.0 - r5) * w, 3); b.add(r5 * w, 4);
      break;
    case 8:
      b.add(-0.5 * (5.0 + r5) * w, 3); b.add(0.5 * (3.0 - r5) * w, 5); b.add(r5 * w, 4);
      break;
    case 10:
      b.add(-5.0 * w, 1); b.add(-r5 * w, 3); b.add(w, 5); b.add(r5 * w, 3);
      break;
    case 1:
      b.add(-2.0 * c1 * w, 6); b.add((3.0 - r5) * c1 * w, 4); b.add(2.0 * r5 * c1 * w, 2);
      break;
    case 3:
      b.add(-2.0 * r5 * c3 * w, 2); b.add(-2.0 * c3 * w, 6); b.add((3.0 + r5) * c3 * w, 4);
      break;
    case 5:
      b.add(-r5 * w, 6); b.add(r5 * w, 6);
      break;
    case 7:
      b.add(-(3.0 + r5) * c3 * w, 4); b.add(2.0 * c3 * w, 6); b.add(2.0 * r5 * c3 * w, 2);
      break;
    case 9:
      b.add(-2.0 * r5 * c1 * w, 2); b.add((r5 - 3.0) * c1 * w, 4); b.add(2.0 * c1 * w, 6);
      break;
    default:
      throw std::logic_error("closed_form_icosahedron: bad class");
  }
  return b.finish();
}

Spectrum closed_form_dodecahedron(SpinValue s, double w) {
  const double r5 = std::sqrt(5.0);
  const double r13 = std::sqrt(13.0);
  const double r3 = std::sqrt(3.0);
  const double r6 = std::sqrt(6.0);
  const double r7 = std::sqrt(7.0);
  LevelBuilder b;
  switch (folded_two_j(s.two_j, 12)) {
    case 0:
      b.add(-r5 * w, 3); b.add(-2.0 * w, 4); b.add(0.0, 4); b.add(w, 5);
      b.add(r5 * w, 3); b.add(3.0 * w, 1);
      break;
    case 2:
      b.add(-0.5 * (1.0 + r13) * w, 5); b.add(-w, 4); b.add(0.5 * (3.0 - r5) * w, 3);
      b.add(0.5 * (-1.0 + r13) * w, 5); b.add(0.5 * (3.0 + r5) * w, 3);
      break;
    case 4:
      b.add(-0.5 * (3.0 + r5) * w, 3); b.add(0.5 * (1.0 - r13) * w, 5);
      b.add(0.5 * (r5 - 3.0) * w, 3); b.add(w, 4); b.add(0.5 * (1.0 + r13) * w, 5);
      break;
    case 6:
      b.add(-3.0 * w, 1); b.add(-r5 * w, 3); b.add(-w, 5); b.add(0.0, 4);
      b.add(2.0 * w, 4); b.add(r5 * w, 3);
      break;
    case 1:
      b.add(-0.5 * (r3 + r7) * w, 6); b.add(0.5 * r3 * (1.0 - r5) * w, 2);
      b.add(0.5 * (-r3 + r7) * w, 6); b.add(r3 * w, 4); b.add(0.5 * r3 * (1.0 + r5) * w, 2);
      break;
    case 3:
      b.add(-r6 * w, 4); b.add(-w, 6); b.add(w, 6); b.add(r6 * w, 4);
      break;
    case 5:
      b.add(-0.5 * r3 * (1.0 + r5) * w, 2); b.add(-r3 * w, 4);
      b.add(0.5 * (r3 - r7) * w, 6); b.add(0.5 * r3 * (-1.0 + r5) * w, 2);
      b.add(0.5 * (r3 + r7) * w, 6);
      break;
    default:
      throw std::logic_error("closed_form_dodecahedron: bad class");
  }
  return b.finish();
}

Spectrum closed_form_cuboctahedron(const Configuration& config, SpinValue s, double w) {
  const double x = s.j() * (config.alpha + 2.0 * kPi) / 4.0;
  const double c = std::cos(x);
  LevelBuilder b;
  if (!s.half_integer()) {
    const double root = std::sqrt(8.0 - 7.0 * c * c);
    b.add(4.0 * c * w, 1);
    b.add(-2.0 * c * w, 2);
    b.add(2.0 * c * w, 3);
    b.add((-c + root) * w, 3);
    b.add((-c - root) * w, 3);
  } else {
    const double sn = std::sin(x);
    const double root = std::sqrt(2.0 + c * c);
    b.add(2.0 * (c + std::sqrt(2.0) * sn) * w, 2);
    b.add(2.0 * (c - std::sqrt(2.0) * sn) * w, 2);
    b.add((-c + root) * w, 4);
    b.add((-c - root) * w, 4);
  }
  return b.finish();
}

Spectrum closed_form_icosidodecahedron(const Configuration& config, SpinValue s, double w) {
  const double x = std::cos(s.j() * (config.alpha + 3.0 * kPi) / 5.0);
  const double r5 = std::sqrt(5.0);
  LevelBuilder b;
  b.add((1.0 + 2.0 * x) * w, 4);
  b.add((-1.0 + 2.0 * x) * w, 4);
  const double root0 = std::sqrt(4.0 - 3.0 * x * x);
  b.add((-x + root0) * w, 5);
  b.add((-x - root0) * w, 5);
  const double root_m = std::sqrt(4.0 + (5.0 - 4.0 * r5) * x * x);
  const double root_p = std::sqrt(4.0 + (5.0 + 4.0 * r5) * x * x);
  b.add(0.5 * (1.0 + r5) * (-x + root_m) * w, 3);
  b.add(0.5 * (1.0 + r5) * (-x - root_m) * w, 3);
  b.add(0.5 * (1.0 - r5) * (-x + root_p) * w, 3);
  b.add(0.5 * (1.0 - r5) * (-x - root_p) * w, 3);
  return b.finish();
}

Spectrum closed_form_hybrid(SpinValue s, double w) {
  const double r3 = std::sqrt(3.0);
  const double r6 = std::sqrt(6.0);
  LevelBuilder b;
  const auto add_pm = [&](double value, int mult) {
    b.add(value, mult);
    b.add(-value, mult);
  };
  switch (folded_two_j(s.two_j, 12)) {
    case 0:
      add_pm(2.0 * r3 * w, 1); add_pm(2.0 * w, 3); b.add(0.0, 6);
      break;
    case 2:
      add_pm((1.0 + r3) * w, 3); add_pm((r3 - 1.0) * w, 3); b.add(0.0, 2);
      break;
    case 4:
      add_pm(r6 * w, 2); add_pm(2.0 * w, 3); b.add(0.0, 4);
      break;
    case 6:
      add_pm(2.0 * w, 6); b.add(0.0, 2);
      break;
    case 1:
      add_pm(std::sqrt(6.0 + 2.0 * r3) * w, 2); add_pm(std::sqrt(3.0 - r3) * w, 4);
      b.add(0.0, 2);
      break;
    case 3:
      add_pm(r6 * w, 4); b.add(0.0, 6);
      break;
    case 5:
      add_pm(std::sqrt(6.0 - 2.0 * r3) * w, 2); add_pm(std::sqrt(3.0 + r3) * w, 4);
      b.add(0.0, 2);
      break;
    default:
      throw std::logic_error("closed_form_hybrid: bad class");
  }
  return b.finish();
}

void require_no_field(const EffectiveParams& params, const char* what) {
  if (params.field.norm() > 1e-14) {
    throw std::invalid_argument(std::string("closed_form_spectrum: no closed form with a "
                                            "field for ") + what);
  }
}

}  // namespace

int Spectrum::total_multiplicity() const {
  int total = 0;
  for (const Level& level : levels) total += level.multiplicity;
  return total;
}

GaugePhases solve_gauge(const Configuration& config, SpinValue s, double residual_tol) {
  const int n_edges = static_cast<int>(config.edges.size());
  const int n_plaq = static_cast<int>(config.plaquettes.size());
  const double j = s.j();

  // Plaquette/edge incidence and flux targets J*Omega.
  Eigen::MatrixXd incidence = Eigen::MatrixXd::Zero(n_plaq, n_edges);
  Eigen::VectorXd target(n_plaq);
  for (int p = 0; p < n_plaq; ++p) {
    const Plaquette& plaq = config.plaquettes[p];
    for (size_t k = 0; k < plaq.edge_ids.size(); ++k) {
      incidence(p, plaq.edge_ids[k]) += plaq.dirs[k];
    }
    target[p] = j * plaq.solid_angle;
  }

  // Tree links carry zero phase; the rest are unknowns.
  const std::vector<bool> in_tree = spanning_tree(config);
  std::vector<int> unknown;  // edge id per column
  for (int e = 0; e < n_edges; ++e) {
    if (!in_tree[e]) unknown.push_back(e);
  }
  const int n_unknown = static_cast<int>(unknown.size());
  Eigen::MatrixXd m(n_plaq, n_unknown);
  for (int c = 0; c < n_unknown; ++c) m.col(c) = incidence.col(unknown[c]);

  // The plaquette constraints are only consistent modulo 2*pi (closed
  // surfaces contribute multiples of 4*pi*J), so solve an independent row
  // subset exactly and check the rest against the nearest 2*pi multiple.
  std::vector<int> picked;
  Eigen::MatrixXd sel(0, n_unknown);
  for (int p = 0; p < n_plaq; ++p) {
    Eigen::MatrixXd candidate(sel.rows() + 1, n_unknown);
    candidate.topRows(sel.rows()) = sel;
    candidate.row(sel.rows()) = m.row(p);
    if (candidate.colPivHouseholderQr().rank() > sel.rows()) {
      sel = candidate;
      picked.push_back(p);
    }
  }
  Eigen::VectorXd rhs(picked.size());
  for (size_t k = 0; k < picked.size(); ++k) rhs[k] = target[picked[k]];

  const Eigen::VectorXd solution =
      sel.completeOrthogonalDecomposition().solve(rhs);

  GaugePhases gauge;
  gauge.phase.assign(n_edges, 0.0);
  for (int c = 0; c < n_unknown; ++c) gauge.phase[unknown[c]] = solution[c];

  for (int p = 0; p < n_plaq; ++p) {
    double flux = 0.0;
    const Plaquette& plaq = config.plaquettes[p];
    for (size_t k = 0; k < plaq.edge_ids.size(); ++k) {
      flux += plaq.dirs[k] * gauge.phase[plaq.edge_ids[k]];
    }
    const double defect = std::remainder(flux - target[p], 2.0 * kPi);
    if (std::abs(defect) > residual_tol) {
      throw numerical_error("solve_gauge: plaquette " + std::to_string(p) +
                            " flux defect " + std::to_string(defect));
    }
  }
  return gauge;
}

Matrix build_effective(const Configuration& config, SpinValue s,
                       const EffectiveParams& params, const GaugePhases* gauge) {
  GaugePhases local;
  if (gauge == nullptr) {
    local = solve_gauge(config, s);
    gauge = &local;
  }
  if (gauge->phase.size() != config.edges.size()) {
    throw std::invalid_argument("build_effective: gauge size mismatch");
  }

  const int n = config.n_sites();
  const double two_path =
      has_two_path_links(config) ? signed_two_path_amplitude(config, s, params) : 0.0;

  Matrix h = Matrix::Zero(n, n);
  for (size_t e = 0; e < config.edges.size(); ++e) {
    const Edge& edge = config.edges[e];
    const double amp = edge.kind == EdgeKind::Nearest ? params.w : two_path;
    const Complex hop = amp * std::exp(kI * gauge->phase[e]);
    h(edge.a, edge.b) += hop;
    h(edge.b, edge.a) += std::conj(hop);
  }
  for (int k = 0; k < n; ++k) {
    h(k, k) = -s.j() * params.field.dot(config.sites[k]);
  }
  return h;
}

Spectrum group_levels(const Eigen::VectorXd& values, double tol) {
  LevelBuilder b;
  for (int k = 0; k < values.size(); ++k) b.add(values[k], 1);
  return b.finish(tol);
}

Spectrum effective_spectrum(const Configuration& config, SpinValue s,
                            const EffectiveParams& params, double tol) {
  const Matrix h = build_effective(config, s, params);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw numerical_error("effective_spectrum: eigensolver failed");
  }
  Spectrum spec = group_levels(solver.eigenvalues(), tol);
  spec.verified = covered_by_closed_form(config, s);
  return spec;
}

Spectrum closed_form_spectrum(const Configuration& config, SpinValue s,
                              const EffectiveParams& params) {
  switch (config.kind) {
    case ConfigKind::D2Axial:
    case ConfigKind::D4Axial:
    case ConfigKind::D6Axial:
      return closed_form_axial(config, s, params);
    case ConfigKind::D4Ring:
    case ConfigKind::D6Ring:
      return closed_form_ring(config, s, params);
    case ConfigKind::O4:
      require_no_field(params, "O4");
      return closed_form_octahedron(s, params.w);
    case ConfigKind::O3:
      require_no_field(params, "O3");
      return closed_form_cube(s, params.w);
    case ConfigKind::O3TwoPath:
      require_no_field(params, "O3m");
      return closed_form_cube_two_path(config, s, params);
    case ConfigKind::O2:
      require_no_field(params, "O2");
      return closed_form_cuboctahedron(config, s, params.w);
    case ConfigKind::Y5:
      require_no_field(params, "Y5");
      return closed_form_icosahedron(s, params.w);
    case ConfigKind::Y3:
      require_no_field(params, "Y3");
      return closed_form_dodecahedron(s, params.w);
    case ConfigKind::Y2: {
      require_no_field(params, "Y2");
      if (!covered_by_closed_form(config, s)) {
        // Only odd integer J has a reference closed form; report the numeric
        // levels and flag them as such.
        Spectrum spec = effective_spectrum(config, s, params);
        spec.verified = false;
        return spec;
      }
      return closed_form_icosidodecahedron(config, s, params.w);
    }
    case ConfigKind::OctaCubeHybrid:
      require_no_field(params, "O4+3");
      return closed_form_hybrid(s, params.w);
  }
  throw std::invalid_argument("closed_form_spectrum: unknown configuration");
}

std::vector<double> trace_invariants(const Matrix& h, int kmax) {
  if (kmax < 0) {
    throw std::invalid_argument("trace_invariants: kmax must be non-negative");
  }
  std::vector<double> traces;
  Matrix power = Matrix::Identity(h.rows(), h.cols());
  traces.push_back(power.trace().real());
  for (int k = 1; k <= kmax; ++k) {
    power = power * h;
    traces.push_back(power.trace().real());
  }
  return traces;
}

double equivalence_class(const Configuration& config, SpinValue s) {
  if (config.s_parameter == 0) {
    throw std::invalid_argument("equivalence_class: " + config.name +
                                " spectra are not periodic in J");
  }
  return folded_two_j(s.two_j, config.s_parameter) / 2.0;
}

double double_path_amplitude(double w, SpinValue s, double omega, Group host) {
  double cap = 0.0;
  switch (host) {
    case Group::O: cap = kPi / 3.0; break;
    case Group::Y: cap = 2.0 * kPi / 15.0; break;
    default:
      throw std::invalid_argument("double_path_amplitude: host must be O or Y");
  }
  if (omega < 0.0 || omega > cap + 1e-12) {
    throw std::invalid_argument("double_path_amplitude: omega outside [0, cap]");
  }
  return std::abs(2.0 * w * std::cos(s.j() * omega / 2.0));
}

GroundResponse o2_ground_response(SpinValue s, double alpha, double w) {
  if (!(alpha > 0.0) || !(alpha < 2.0 * kPi / 3.0)) {
    throw std::invalid_argument("o2_ground_response: alpha outside (0, 2*pi/3)");
  }
  if (w <= 0.0) {
    throw std::invalid_argument("o2_ground_response: needs w > 0");
  }
  const double x = s.j() * (alpha + 2.0 * kPi) / 4.0;
  const double c = std::cos(x);
  GroundResponse resp;
  if (!s.half_integer()) {
    if (c > -0.5) {
      resp.has_moment = true;
      resp.moment = 2.0 * std::abs(std::sin(x)) / std::sqrt(2.0 * (8.0 - 7.0 * c * c));
    } else {
      resp.has_moment = false;
      resp.susceptibility = -1.0 / (3.0 * w * c);
    }
  } else {
    resp.has_moment = true;
    if (c < std::cos(3.0 * kPi / 8.0)) {
      resp.moment = 1.0 / 3.0;
    } else {
      const double root = std::sqrt(2.0 + c * c);
      const double num = c * c + 5.0 + 3.0 * c * root +
                         2.0 * std::sqrt(2.0) * std::abs(std::sin(x)) * (3.0 * c + root);
      resp.moment = (1.0 / 3.0) * std::sqrt(num / (2.0 * (2.0 + c * c)));
    }
  }
  return resp;
}

std::string spectrum_to_json(const Configuration& config, SpinValue s,
                             const Spectrum& spec) {
  char buf[64];
  std::string out = "{\"config\":\"" + config.name + "\",\"two_j\":" +
                    std::to_string(s.two_j) + ",\"levels\":[";
  for (size_t k = 0; k < spec.levels.size(); ++k) {
    if (k > 0) out += ",";
    std::snprintf(buf, sizeof(buf), "%.17g", spec.levels[k].value);
    out += "{\"value\":";
    out += buf;
    out += ",\"multiplicity\":" + std::to_string(spec.levels[k].multiplicity) + "}";
  }
  out += "],\"verified\":";
  out += spec.verified ? "true" : "false";
  out += "}";
  return out;
}

}  // namespace polyspin
