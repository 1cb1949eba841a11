#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "polyspin/spin_algebra.hpp"

namespace polyspin {

enum class Group { D2, D4, D6, O, Y };

// Order of the plain rotation group (the double group has twice this).
int group_order(Group g);
std::string group_name(Group g);

// Site networks on the unit sphere, labelled by point group and the order p
// of the axes the sites sit on. N = |G|/p sites.
enum class ConfigKind {
  D2Axial,         // (D2,2): 2 antipodal sites, 2 parallel links
  D4Axial,         // (D4,4): 2 antipodal sites, 4 parallel links
  D6Axial,         // (D6,6): 2 antipodal sites, 6 parallel links
  D4Ring,          // (D4,2): square ring on the equator
  D6Ring,          // (D6,2): hexagonal ring on the equator
  O4,              // octahedron vertices
  O3,              // cube vertices
  O3TwoPath,       // cube vertices, face diagonals as doubled two-path links
  O2,              // cuboctahedron vertices, square solid angle alpha free
  Y5,              // icosahedron vertices
  Y3,              // dodecahedron vertices
  Y2,              // icosidodecahedron vertices, pentagon solid angle alpha free
  OctaCubeHybrid,  // octahedron + cube vertices, 14 sites
};

ConfigKind config_from_name(const std::string& name);
std::string config_name(ConfigKind kind);
// All named configurations, in a fixed order.
std::span<const ConfigKind> all_config_kinds();

enum class EdgeKind { Nearest, NextNearest };

struct Edge {
  int a = 0;
  int b = 0;
  EdgeKind kind = EdgeKind::Nearest;
};

// Oriented elementary loop. Edges are traversed in order; dir +1 means a->b,
// -1 means b->a. solid_angle is the oriented spherical area enclosed,
// counter-clockwise seen from outside the sphere.
struct Plaquette {
  std::vector<int> edge_ids;
  std::vector<int> dirs;
  double solid_angle = 0.0;
};

struct Configuration {
  ConfigKind kind;
  std::string name;
  Group group;
  int p = 1;                  // order of the site axes
  std::vector<Vec3> sites;    // unit vectors
  std::vector<Edge> edges;
  std::vector<Plaquette> plaquettes;
  // Number of congruent plaquettes; spectra are periodic in J with period
  // s/2. Zero for O2/Y2 where a free plaquette angle breaks periodicity.
  int s_parameter = 0;
  double alpha = 0.0;         // plaquette angle parameter (O2/Y2 only)

  int n_sites() const { return static_cast<int>(sites.size()); }
};

// Build a named configuration. alpha is required for O2 (squares subtend
// alpha, triangles pi/2 - 3*alpha/4, 0 < alpha < 2*pi/3) and for Y2
// (pentagons subtend alpha, triangles pi/5 - 3*alpha/5, 0 < alpha < pi/3);
// it must be NaN or omitted for every other kind.
Configuration make_configuration(ConfigKind kind,
                                 double alpha = std::numeric_limits<double>::quiet_NaN());

// Oriented area of the spherical polygon with the given unit-vector corners,
// positive when the loop runs counter-clockwise seen from outside.
double spherical_polygon_area(std::span<const Vec3> corners);

// Classical extrema of -a*p4 - b*p6 on the sphere, with p4 = sum n_i^4 and
// p6 = 33 nx^2 ny^2 nz^2 + 1.5 p4 - 0.5. Minima sit on the four-fold axes
// (depth -a-b), three-fold axes (-a/3 - 11b/9) or two-fold axes (-a/2 - b/4).
struct ExtremaClassification {
  int n_minima = 0;        // 6, 8 or 12
  double depth = 0.0;      // energy at the minima
  bool on_boundary = false; // true when two depths tie within tolerance
};

ExtremaClassification classify_extrema(double a, double b);

}  // namespace polyspin
