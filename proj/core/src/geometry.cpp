#include "polyspin/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace polyspin {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Vec3> octahedron_vertices() {
  return {{0, 0, 1}, {0, 0, -1}, {1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}};
}

std::vector<Vec3> cube_vertices() {
  std::vector<Vec3> v;
  const double r = 1.0 / std::sqrt(3.0);
  for (int sx : {1, -1})
    for (int sy : {1, -1})
      for (int sz : {1, -1}) v.push_back(Vec3(sx * r, sy * r, sz * r));
  return v;
}

std::vector<Vec3> icosahedron_vertices() {
  const double tau = 0.5 * (1.0 + std::sqrt(5.0));
  const double norm = std::sqrt(1.0 + tau * tau);
  std::vector<Vec3> v;
  for (int s1 : {1, -1})
    for (int s2 : {1, -1}) {
      v.push_back(Vec3(0, s1 / norm, s2 * tau / norm));
      v.push_back(Vec3(s1 / norm, s2 * tau / norm, 0));
      v.push_back(Vec3(s2 * tau / norm, 0, s1 / norm));
    }
  return v;
}

// Unordered site pairs whose dot product matches `target` within tolerance.
std::vector<Edge> edges_by_dot(const std::vector<Vec3>& sites, double target,
                               EdgeKind kind, double tol = 1e-9) {
  std::vector<Edge> edges;
  const int n = static_cast<int>(sites.size());
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (std::abs(sites[a].dot(sites[b]) - target) < tol) edges.push_back({a, b, kind});
  return edges;
}

// Indices of the `count` sites nearest the axis, sorted counter-clockwise
// around it as seen from outside the sphere.
std::vector<int> ring_around(const std::vector<Vec3>& sites, const Vec3& axis, int count) {
  std::vector<int> order(sites.size());
  for (size_t k = 0; k < sites.size(); ++k) order[k] = static_cast<int>(k);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return sites[a].dot(axis) > sites[b].dot(axis);
  });
  order.resize(count);

  Vec3 e1 = axis.cross(std::abs(axis.z()) < 0.9 ? Vec3(0, 0, 1) : Vec3(1, 0, 0)).normalized();
  Vec3 e2 = axis.cross(e1);  // (e1, e2, axis) right-handed gives CCW azimuth
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::atan2(sites[a].dot(e2), sites[a].dot(e1)) <
           std::atan2(sites[b].dot(e2), sites[b].dot(e1));
  });
  return order;
}

int find_edge(const std::vector<Edge>& edges, int a, int b, int& dir) {
  for (size_t k = 0; k < edges.size(); ++k) {
    if (edges[k].a == a && edges[k].b == b) {
      dir = 1;
      return static_cast<int>(k);
    }
    if (edges[k].a == b && edges[k].b == a) {
      dir = -1;
      return static_cast<int>(k);
    }
  }
  throw std::logic_error("find_edge: no such edge");
}

Plaquette loop_to_plaquette(const std::vector<Edge>& edges, const std::vector<int>& loop,
                            double solid_angle) {
  Plaquette p;
  p.solid_angle = solid_angle;
  const int n = static_cast<int>(loop.size());
  for (int k = 0; k < n; ++k) {
    int dir = 0;
    p.edge_ids.push_back(find_edge(edges, loop[k], loop[(k + 1) % n], dir));
    p.dirs.push_back(dir);
  }
  return p;
}

// Polyhedron faces as rings of `ring_size` sites around each axis direction,
// all with the same prescribed solid angle.
void add_face_plaquettes(Configuration& config, const std::vector<Vec3>& axes,
                         int ring_size, double solid_angle) {
  for (const Vec3& axis : axes) {
    const std::vector<int> loop = ring_around(config.sites, axis, ring_size);
    config.plaquettes.push_back(loop_to_plaquette(config.edges, loop, solid_angle));
  }
}

std::vector<Vec3> axis_directions_cubic_3fold() {
  std::vector<Vec3> axes;
  const double r = 1.0 / std::sqrt(3.0);
  for (int sx : {1, -1})
    for (int sy : {1, -1})
      for (int sz : {1, -1}) axes.push_back(Vec3(sx * r, sy * r, sz * r));
  return axes;
}

std::vector<Vec3> axis_directions_cubic_2fold() {
  std::vector<Vec3> axes;
  const double r = 1.0 / std::sqrt(2.0);
  for (int s1 : {1, -1})
    for (int s2 : {1, -1}) {
      axes.push_back(Vec3(s1 * r, s2 * r, 0));
      axes.push_back(Vec3(0, s1 * r, s2 * r));
      axes.push_back(Vec3(s2 * r, 0, s1 * r));
    }
  return axes;
}

// Centroid directions of the 20 icosahedron faces.
std::vector<Vec3> icosahedron_face_centers() {
  const std::vector<Vec3> v = icosahedron_vertices();
  const double adjacency = 1.0 / std::sqrt(5.0);  // dot of adjacent vertices
  std::vector<Vec3> centers;
  const int n = static_cast<int>(v.size());
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        if (std::abs(v[a].dot(v[b]) - adjacency) < 1e-9 &&
            std::abs(v[b].dot(v[c]) - adjacency) < 1e-9 &&
            std::abs(v[a].dot(v[c]) - adjacency) < 1e-9) {
          centers.push_back((v[a] + v[b] + v[c]).normalized());
        }
      }
  return centers;
}

Configuration make_axial(ConfigKind kind, Group group, int n_links, const Vec3& axis) {
  Configuration config;
  config.kind = kind;
  config.group = group;
  config.p = n_links;
  config.s_parameter = n_links;
  config.sites = {axis, -axis};
  for (int k = 0; k < n_links; ++k) config.edges.push_back({0, 1, EdgeKind::Nearest});
  // Lunes between consecutive links split the sphere into n equal fluxes.
  for (int k = 0; k < n_links; ++k) {
    Plaquette p;
    p.edge_ids = {k, (k + 1) % n_links};
    p.dirs = {1, -1};
    p.solid_angle = 4.0 * kPi / n_links;
    config.plaquettes.push_back(p);
  }
  return config;
}

Configuration make_ring(ConfigKind kind, Group group, int n_sites) {
  Configuration config;
  config.kind = kind;
  config.group = group;
  config.p = 2;
  config.s_parameter = 2;
  for (int k = 0; k < n_sites; ++k) {
    const double az = 2.0 * kPi * k / n_sites;
    config.sites.push_back(Vec3(std::cos(az), std::sin(az), 0));
  }
  for (int k = 0; k < n_sites; ++k)
    config.edges.push_back({k, (k + 1) % n_sites, EdgeKind::Nearest});

  // Upper and lower hemisphere, each enclosing 2*pi when traversed
  // counter-clockwise around its own pole.
  std::vector<int> upper(n_sites), lower(n_sites);
  for (int k = 0; k < n_sites; ++k) {
    upper[k] = k;
    lower[k] = (n_sites - k) % n_sites;
  }
  config.plaquettes.push_back(loop_to_plaquette(config.edges, upper, 2.0 * kPi));
  config.plaquettes.push_back(loop_to_plaquette(config.edges, lower, 2.0 * kPi));
  return config;
}

Configuration make_octahedron() {
  Configuration config;
  config.kind = ConfigKind::O4;
  config.group = Group::O;
  config.p = 4;
  config.s_parameter = 8;
  config.sites = octahedron_vertices();
  config.edges = edges_by_dot(config.sites, 0.0, EdgeKind::Nearest);
  add_face_plaquettes(config, axis_directions_cubic_3fold(), 3, kPi / 2.0);
  return config;
}

Configuration make_cube(bool two_path) {
  Configuration config;
  config.kind = two_path ? ConfigKind::O3TwoPath : ConfigKind::O3;
  config.group = Group::O;
  config.p = 3;
  config.s_parameter = two_path ? 12 : 6;
  config.sites = cube_vertices();
  config.edges = edges_by_dot(config.sites, 1.0 / 3.0, EdgeKind::Nearest);

  const std::vector<Vec3> face_axes = octahedron_vertices();
  if (!two_path) {
    add_face_plaquettes(config, face_axes, 4, 2.0 * kPi / 3.0);
    return config;
  }

  // Face diagonals carry the doubled two-path amplitude. Each face splits
  // into four overlapping triangles (two per diagonal), so the triangles
  // cover the sphere twice.
  for (const Vec3& axis : face_axes) {
    const std::vector<int> r = ring_around(config.sites, axis, 4);
    config.edges.push_back({r[0], r[2], EdgeKind::NextNearest});
    config.edges.push_back({r[1], r[3], EdgeKind::NextNearest});
  }
  for (const Vec3& axis : face_axes) {
    const std::vector<int> r = ring_around(config.sites, axis, 4);
    for (int k = 0; k < 4; ++k) {
      const std::vector<int> tri = {r[k], r[(k + 1) % 4], r[(k + 2) % 4]};
      config.plaquettes.push_back(loop_to_plaquette(config.edges, tri, kPi / 3.0));
    }
  }
  return config;
}

Configuration make_cuboctahedron(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 2.0 * kPi / 3.0)) {
    throw std::invalid_argument("make_configuration: O2 needs alpha in (0, 2*pi/3)");
  }
  Configuration config;
  config.kind = ConfigKind::O2;
  config.group = Group::O;
  config.p = 2;
  config.s_parameter = 0;
  config.alpha = alpha;
  const double r = 1.0 / std::sqrt(2.0);
  for (int s1 : {1, -1})
    for (int s2 : {1, -1}) {
      config.sites.push_back(Vec3(s1 * r, s2 * r, 0));
      config.sites.push_back(Vec3(0, s1 * r, s2 * r));
      config.sites.push_back(Vec3(s2 * r, 0, s1 * r));
    }
  config.edges = edges_by_dot(config.sites, 0.5, EdgeKind::Nearest);
  add_face_plaquettes(config, octahedron_vertices(), 4, alpha);
  add_face_plaquettes(config, axis_directions_cubic_3fold(), 3, kPi / 2.0 - 0.75 * alpha);
  return config;
}

Configuration make_icosahedron() {
  Configuration config;
  config.kind = ConfigKind::Y5;
  config.group = Group::Y;
  config.p = 5;
  config.s_parameter = 20;
  config.sites = icosahedron_vertices();
  config.edges = edges_by_dot(config.sites, 1.0 / std::sqrt(5.0), EdgeKind::Nearest);
  add_face_plaquettes(config, icosahedron_face_centers(), 3, kPi / 5.0);
  return config;
}

Configuration make_dodecahedron() {
  Configuration config;
  config.kind = ConfigKind::Y3;
  config.group = Group::Y;
  config.p = 3;
  config.s_parameter = 12;
  config.sites = icosahedron_face_centers();
  // Adjacent dodecahedron vertices: centers of icosahedron faces sharing an
  // edge, at dot sqrt(5)/3.
  config.edges = edges_by_dot(config.sites, std::sqrt(5.0) / 3.0, EdgeKind::Nearest);
  add_face_plaquettes(config, icosahedron_vertices(), 5, kPi / 3.0);
  return config;
}

Configuration make_icosidodecahedron(double alpha) {
  if (!(alpha > 0.0) || !(alpha < kPi / 3.0)) {
    throw std::invalid_argument("make_configuration: Y2 needs alpha in (0, pi/3)");
  }
  Configuration config;
  config.kind = ConfigKind::Y2;
  config.group = Group::Y;
  config.p = 2;
  config.s_parameter = 0;
  config.alpha = alpha;

  const std::vector<Vec3> icosa = icosahedron_vertices();
  const std::vector<Edge> icosa_edges =
      edges_by_dot(icosa, 1.0 / std::sqrt(5.0), EdgeKind::Nearest);
  for (const Edge& e : icosa_edges) {
    config.sites.push_back((icosa[e.a] + icosa[e.b]).normalized());
  }
  // Neighbouring edge midpoints share an icosahedron vertex and a face; they
  // sit at the largest pairwise dot, found numerically.
  double best = -1.0;
  for (size_t a = 0; a < config.sites.size(); ++a)
    for (size_t b = a + 1; b < config.sites.size(); ++b)
      best = std::max(best, config.sites[a].dot(config.sites[b]));
  config.edges = edges_by_dot(config.sites, best, EdgeKind::Nearest);

  add_face_plaquettes(config, icosa, 5, alpha);
  add_face_plaquettes(config, icosahedron_face_centers(), 3, kPi / 5.0 - 0.6 * alpha);
  return config;
}

Configuration make_hybrid() {
  Configuration config;
  config.kind = ConfigKind::OctaCubeHybrid;
  config.group = Group::O;
  config.p = 0;
  config.s_parameter = 12;
  config.sites = octahedron_vertices();
  const std::vector<Vec3> cube = cube_vertices();
  config.sites.insert(config.sites.end(), cube.begin(), cube.end());
  // Only octahedron-to-cube links: dot 1/sqrt(3).
  config.edges = edges_by_dot(config.sites, 1.0 / std::sqrt(3.0), EdgeKind::Nearest);
  // One rhombic plaquette per octahedron edge direction.
  add_face_plaquettes(config, axis_directions_cubic_2fold(), 4, kPi / 3.0);
  return config;
}

}  // namespace

int group_order(Group g) {
  switch (g) {
    case Group::D2: return 4;
    case Group::D4: return 8;
    case Group::D6: return 12;
    case Group::O: return 24;
    case Group::Y: return 60;
  }
  throw std::invalid_argument("group_order: unknown group");
}

std::string group_name(Group g) {
  switch (g) {
    case Group::D2: return "D2";
    case Group::D4: return "D4";
    case Group::D6: return "D6";
    case Group::O: return "O";
    case Group::Y: return "Y";
  }
  throw std::invalid_argument("group_name: unknown group");
}

namespace {
constexpr std::array<ConfigKind, 13> kAllKinds = {
    ConfigKind::D2Axial, ConfigKind::D4Axial, ConfigKind::D6Axial,
    ConfigKind::D4Ring,  ConfigKind::D6Ring,  ConfigKind::O4,
    ConfigKind::O3,      ConfigKind::O3TwoPath, ConfigKind::O2,
    ConfigKind::Y5,      ConfigKind::Y3,      ConfigKind::Y2,
    ConfigKind::OctaCubeHybrid};
}  // namespace

std::span<const ConfigKind> all_config_kinds() { return kAllKinds; }

std::string config_name(ConfigKind kind) {
  switch (kind) {
    case ConfigKind::D2Axial: return "D2-2";
    case ConfigKind::D4Axial: return "D4-4";
    case ConfigKind::D6Axial: return "D6-6";
    case ConfigKind::D4Ring: return "D4-2";
    case ConfigKind::D6Ring: return "D6-2";
    case ConfigKind::O4: return "O4";
    case ConfigKind::O3: return "O3";
    case ConfigKind::O3TwoPath: return "O3m";
    case ConfigKind::O2: return "O2";
    case ConfigKind::Y5: return "Y5";
    case ConfigKind::Y3: return "Y3";
    case ConfigKind::Y2: return "Y2";
    case ConfigKind::OctaCubeHybrid: return "O4+3";
  }
  throw std::invalid_argument("config_name: unknown kind");
}

ConfigKind config_from_name(const std::string& name) {
  for (ConfigKind kind : kAllKinds) {
    if (config_name(kind) == name) return kind;
  }
  throw std::invalid_argument("config_from_name: unknown configuration '" + name + "'");
}

Configuration make_configuration(ConfigKind kind, double alpha) {
  const bool needs_alpha = (kind == ConfigKind::O2 || kind == ConfigKind::Y2);
  if (needs_alpha && std::isnan(alpha)) {
    throw std::invalid_argument("make_configuration: " + config_name(kind) +
                                " needs an alpha parameter");
  }
  if (!needs_alpha && !std::isnan(alpha)) {
    throw std::invalid_argument("make_configuration: " + config_name(kind) +
                                " takes no alpha parameter");
  }

  Configuration config;
  switch (kind) {
    // For D2 every two-fold axis is equivalent; the x axis is the one the
    // irrep labels are anchored to.
    case ConfigKind::D2Axial: config = make_axial(kind, Group::D2, 2, Vec3(1, 0, 0)); break;
    case ConfigKind::D4Axial: config = make_axial(kind, Group::D4, 4, Vec3(0, 0, 1)); break;
    case ConfigKind::D6Axial: config = make_axial(kind, Group::D6, 6, Vec3(0, 0, 1)); break;
    case ConfigKind::D4Ring: config = make_ring(kind, Group::D4, 4); break;
    case ConfigKind::D6Ring: config = make_ring(kind, Group::D6, 6); break;
    case ConfigKind::O4: config = make_octahedron(); break;
    case ConfigKind::O3: config = make_cube(false); break;
    case ConfigKind::O3TwoPath: config = make_cube(true); break;
    case ConfigKind::O2: config = make_cuboctahedron(alpha); break;
    case ConfigKind::Y5: config = make_icosahedron(); break;
    case ConfigKind::Y3: config = make_dodecahedron(); break;
    case ConfigKind::Y2: config = make_icosidodecahedron(alpha); break;
    case ConfigKind::OctaCubeHybrid: config = make_hybrid(); break;
    default: throw std::invalid_argument("make_configuration: unknown kind");
  }
  config.name = config_name(kind);
  return config;
}

double spherical_polygon_area(std::span<const Vec3> corners) {
  const int n = static_cast<int>(corners.size());
  if (n < 3) {
    throw std::invalid_argument("spherical_polygon_area: need at least 3 corners");
  }
  double area = 0.0;
  for (int k = 1; k + 1 < n; ++k) {
    const Vec3& a = corners[0];
    const Vec3& b = corners[k];
    const Vec3& c = corners[k + 1];
    const double num = a.dot(b.cross(c));
    const double den = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
    area += 2.0 * std::atan2(num, den);
  }
  return area;
}

ExtremaClassification classify_extrema(double a, double b) {
  if (a == 0.0 && b == 0.0) {
    throw std::invalid_argument("classify_extrema: anisotropy coefficients are both zero");
  }
  const double depth6 = -a - b;
  const double depth8 = -a / 3.0 - 11.0 * b / 9.0;
  const double depth12 = -a / 2.0 - b / 4.0;
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  const double tol = 1e-12 * scale;

  const std::array<std::pair<double, int>, 3> depths = {
      std::make_pair(depth6, 6), std::make_pair(depth8, 8), std::make_pair(depth12, 12)};

  ExtremaClassification result;
  result.depth = depths[0].first;
  result.n_minima = depths[0].second;
  for (const auto& [depth, count] : depths) {
    if (depth < result.depth - tol) {
      result.depth = depth;
      result.n_minima = count;
    }
  }
  int ties = 0;
  for (const auto& [depth, count] : depths) {
    if (std::abs(depth - result.depth) <= tol) ++ties;
  }
  result.on_boundary = ties > 1;
  return result;
}

}  // namespace polyspin
