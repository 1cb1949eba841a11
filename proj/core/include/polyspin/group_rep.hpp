#pragma once

#include <string>
#include <utility>
#include <vector>

#include "polyspin/geometry.hpp"

namespace polyspin {

// Which set of rotation axes a conjugacy class rotates about, used to decide
// whether the class fixes configuration sites. D-group dihedral axes come in
// two families; DihedralA is the one containing the x axis (and for p=2 the
// sites), DihedralB the staggered one.
enum class AxisFamily {
  None,       // identity and 2*pi classes
  Principal,  // z axis of a dihedral group
  DihedralA,
  DihedralB,
  TwoFold,    // two-fold axes of O or Y
  ThreeFold,  // three-fold axes of O or Y
  FourFold,   // four-fold axes of O
  FiveFold,   // five-fold axes of Y
};

struct ConjClass {
  std::string label;
  int size = 0;
  // Rotation angle in [0, 4*pi): theta + 2*pi labels the partner class that
  // differs by the 2*pi element of the double cover.
  double theta = 0.0;
  AxisFamily family = AxisFamily::None;
};

struct Irrep {
  std::string label;
  int dim = 0;
  bool double_valued = false;
  std::vector<double> chi;  // character per class; real for all these groups
};

struct CharacterTable {
  Group group;
  int order = 0;  // double group order, 2 * group_order(group)
  std::vector<ConjClass> classes;
  std::vector<Irrep> irreps;
};

// Embedded double-group character tables for D2, D4, D6, O, Y.
const CharacterTable& builtin_table(Group g);

// Axis family the sites of C(G,p) sit on; AxisFamily::None for p = 1.
AxisFamily site_axis_family(Group g, int p);

// Characters of the N-dimensional site representation of C(G,p) carried by
// coherent spin-J states: N on the identity, N*cos(2*pi*J) on the 2*pi class,
// 2*cos(J*theta) on rotation classes about site axes, zero elsewhere.
std::vector<double> main_rep_characters(Group g, int p, SpinValue s);

struct IrrepMultiplicity {
  std::string label;
  int dim = 0;
  int count = 0;
};

// Reduce the site representation of C(G,p) into double-group irreps. Only
// irreps with nonzero multiplicity are returned, in table order. Throws
// numerical_error if a multiplicity is further than 1e-8 from an integer.
std::vector<IrrepMultiplicity> decompose(Group g, int p, SpinValue s);

}  // namespace polyspin
