#include "polyspin/group_rep.hpp"

#include <cmath>
#include <numbers>

namespace polyspin {

namespace {

constexpr double kPi = std::numbers::pi;

// Rows follow Koster's conventions for the double groups: primed labels are
// the double-valued irreps. Class angles live in [0, 4*pi); theta + 2*pi is
// the partner class reached through the 2*pi element Q. Classes that merge a
// rotation with its Q-partner (all the C2-type classes below) keep a single
// theta; the site characters 2*cos(J*theta) and 2*cos(J*(theta + 2*pi))
// coincide there for every half-integer step J.

CharacterTable build_d2() {
  CharacterTable t;
  t.group = Group::D2;
  t.order = 8;
  t.classes = {
      {"E", 1, 0.0, AxisFamily::None},
      {"Q", 1, 2.0 * kPi, AxisFamily::None},
      {"2C2x", 2, kPi, AxisFamily::DihedralA},
      {"2C2y", 2, kPi, AxisFamily::DihedralB},
      {"2C2z", 2, kPi, AxisFamily::Principal},
  };
  t.irreps = {
      {"A", 1, false, {1, 1, 1, 1, 1}},
      {"B1", 1, false, {1, 1, -1, -1, 1}},
      {"B2", 1, false, {1, 1, -1, 1, -1}},
      {"B3", 1, false, {1, 1, 1, -1, -1}},
      {"E'", 2, true, {2, -2, 0, 0, 0}},
  };
  return t;
}

CharacterTable build_d4() {
  const double r2 = std::sqrt(2.0);
  CharacterTable t;
  t.group = Group::D4;
  t.order = 16;
  t.classes = {
      {"E", 1, 0.0, AxisFamily::None},
      {"Q", 1, 2.0 * kPi, AxisFamily::None},
      {"2C4", 2, kPi / 2.0, AxisFamily::Principal},
      {"2C4Q", 2, kPi / 2.0 + 2.0 * kPi, AxisFamily::Principal},
      {"2C2", 2, kPi, AxisFamily::Principal},
      {"4C2'", 4, kPi, AxisFamily::DihedralA},
      {"4C2''", 4, kPi, AxisFamily::DihedralB},
  };
  t.irreps = {
      {"A1", 1, false, {1, 1, 1, 1, 1, 1, 1}},
      {"A2", 1, false, {1, 1, 1, 1, 1, -1, -1}},
      {"B1", 1, false, {1, 1, -1, -1, 1, 1, -1}},
      {"B2", 1, false, {1, 1, -1, -1, 1, -1, 1}},
      {"E", 2, false, {2, 2, 0, 0, -2, 0, 0}},
      {"E1'", 2, true, {2, -2, r2, -r2, 0, 0, 0}},
      {"E2'", 2, true, {2, -2, -r2, r2, 0, 0, 0}},
  };
  return t;
}

CharacterTable build_d6() {
  const double r3 = std::sqrt(3.0);
  CharacterTable t;
  t.group = Group::D6;
  t.order = 24;
  t.classes = {
      {"E", 1, 0.0, AxisFamily::None},
      {"Q", 1, 2.0 * kPi, AxisFamily::None},
      {"2C6", 2, kPi / 3.0, AxisFamily::Principal},
      {"2C6Q", 2, kPi / 3.0 + 2.0 * kPi, AxisFamily::Principal},
      {"2C3", 2, 2.0 * kPi / 3.0, AxisFamily::Principal},
      {"2C3Q", 2, 2.0 * kPi / 3.0 + 2.0 * kPi, AxisFamily::Principal},
      {"2C2", 2, kPi, AxisFamily::Principal},
      {"6C2'", 6, kPi, AxisFamily::DihedralA},
      {"6C2''", 6, kPi, AxisFamily::DihedralB},
  };
  t.irreps = {
      {"A1", 1, false, {1, 1, 1, 1, 1, 1, 1, 1, 1}},
      {"A2", 1, false, {1, 1, 1, 1, 1, 1, 1, -1, -1}},
      {"B1", 1, false, {1, 1, -1, -1, 1, 1, -1, 1, -1}},
      {"B2", 1, false, {1, 1, -1, -1, 1, 1, -1, -1, 1}},
      {"E1", 2, false, {2, 2, 1, 1, -1, -1, -2, 0, 0}},
      {"E2", 2, false, {2, 2, -1, -1, -1, -1, 2, 0, 0}},
      {"E1'", 2, true, {2, -2, r3, -r3, 1, -1, 0, 0, 0}},
      {"E2'", 2, true, {2, -2, -r3, r3, 1, -1, 0, 0, 0}},
      {"E3'", 2, true, {2, -2, 0, 0, -2, 2, 0, 0, 0}},
  };
  return t;
}

CharacterTable build_o() {
  const double r2 = std::sqrt(2.0);
  CharacterTable t;
  t.group = Group::O;
  t.order = 48;
  t.classes = {
      {"E", 1, 0.0, AxisFamily::None},
      {"Q", 1, 2.0 * kPi, AxisFamily::None},
      {"6C2", 6, kPi, AxisFamily::FourFold},
      {"6C4", 6, kPi / 2.0, AxisFamily::FourFold},
      {"6C4Q", 6, kPi / 2.0 + 2.0 * kPi, AxisFamily::FourFold},
      {"8C3", 8, 2.0 * kPi / 3.0, AxisFamily::ThreeFold},
      {"8C3Q", 8, 2.0 * kPi / 3.0 + 2.0 * kPi, AxisFamily::ThreeFold},
      {"12C2'", 12, kPi, AxisFamily::TwoFold},
  };
  t.irreps = {
      {"A1", 1, false, {1, 1, 1, 1, 1, 1, 1, 1}},
      {"A2", 1, false, {1, 1, 1, -1, -1, 1, 1, -1}},
      {"E", 2, false, {2, 2, 2, 0, 0, -1, -1, 0}},
      {"F1", 3, false, {3, 3, -1, 1, 1, 0, 0, -1}},
      {"F2", 3, false, {3, 3, -1, -1, -1, 0, 0, 1}},
      {"E1'", 2, true, {2, -2, 0, r2, -r2, 1, -1, 0}},
      {"E2'", 2, true, {2, -2, 0, -r2, r2, 1, -1, 0}},
      {"G'", 4, true, {4, -4, 0, 0, 0, -1, 1, 0}},
  };
  return t;
}

CharacterTable build_y() {
  const double tau = 0.5 * (1.0 + std::sqrt(5.0));
  CharacterTable t;
  t.group = Group::Y;
  t.order = 120;
  t.classes = {
      {"E", 1, 0.0, AxisFamily::None},
      {"Q", 1, 2.0 * kPi, AxisFamily::None},
      {"12C5", 12, 2.0 * kPi / 5.0, AxisFamily::FiveFold},
      {"12C5Q", 12, 2.0 * kPi / 5.0 + 2.0 * kPi, AxisFamily::FiveFold},
      {"12C5^2", 12, 4.0 * kPi / 5.0, AxisFamily::FiveFold},
      {"12C5^2Q", 12, 4.0 * kPi / 5.0 + 2.0 * kPi, AxisFamily::FiveFold},
      {"20C3", 20, 2.0 * kPi / 3.0, AxisFamily::ThreeFold},
      {"20C3Q", 20, 2.0 * kPi / 3.0 + 2.0 * kPi, AxisFamily::ThreeFold},
      {"30C2", 30, kPi, AxisFamily::TwoFold},
  };
  t.irreps = {
      {"A", 1, false, {1, 1, 1, 1, 1, 1, 1, 1, 1}},
      {"F1", 3, false, {3, 3, tau, tau, 1 - tau, 1 - tau, 0, 0, -1}},
      {"F2", 3, false, {3, 3, 1 - tau, 1 - tau, tau, tau, 0, 0, -1}},
      {"G", 4, false, {4, 4, -1, -1, -1, -1, 1, 1, 0}},
      {"H", 5, false, {5, 5, 0, 0, 0, 0, -1, -1, 1}},
      {"E1'", 2, true, {2, -2, tau, -tau, tau - 1, 1 - tau, 1, -1, 0}},
      {"E2'", 2, true, {2, -2, 1 - tau, tau - 1, -tau, tau, 1, -1, 0}},
      {"G'", 4, true, {4, -4, 1, -1, -1, 1, -1, 1, 0}},
      {"I'", 6, true, {6, -6, -1, 1, 1, -1, 0, 0, 0}},
  };
  return t;
}

}  // namespace

const CharacterTable& builtin_table(Group g) {
  static const CharacterTable d2 = build_d2();
  static const CharacterTable d4 = build_d4();
  static const CharacterTable d6 = build_d6();
  static const CharacterTable o = build_o();
  static const CharacterTable y = build_y();
  switch (g) {
    case Group::D2: return d2;
    case Group::D4: return d4;
    case Group::D6: return d6;
    case Group::O: return o;
    case Group::Y: return y;
  }
  throw std::invalid_argument("builtin_table: unknown group");
}

AxisFamily site_axis_family(Group g, int p) {
  if (p == 1) return AxisFamily::None;
  switch (g) {
    case Group::D2:
      if (p == 2) return AxisFamily::DihedralA;  // sites on the x axis
      break;
    case Group::D4:
      if (p == 4) return AxisFamily::Principal;
      if (p == 2) return AxisFamily::DihedralA;
      break;
    case Group::D6:
      if (p == 6) return AxisFamily::Principal;
      if (p == 2) return AxisFamily::DihedralA;
      break;
    case Group::O:
      if (p == 4) return AxisFamily::FourFold;
      if (p == 3) return AxisFamily::ThreeFold;
      if (p == 2) return AxisFamily::TwoFold;
      break;
    case Group::Y:
      if (p == 5) return AxisFamily::FiveFold;
      if (p == 3) return AxisFamily::ThreeFold;
      if (p == 2) return AxisFamily::TwoFold;
      break;
  }
  throw std::invalid_argument("site_axis_family: no C(" + group_name(g) + "," +
                              std::to_string(p) + ") configuration");
}

std::vector<double> main_rep_characters(Group g, int p, SpinValue s) {
  const CharacterTable& table = builtin_table(g);
  const AxisFamily family = site_axis_family(g, p);
  const int n_sites = group_order(g) / p;
  const double j = s.j();

  std::vector<double> chi(table.classes.size(), 0.0);
  for (size_t k = 0; k < table.classes.size(); ++k) {
    const ConjClass& cls = table.classes[k];
    if (cls.label == "E") {
      chi[k] = n_sites;
    } else if (cls.label == "Q") {
      chi[k] = n_sites * std::cos(2.0 * kPi * j);
    } else if (cls.family == family) {
      // Each rotation about a site axis fixes the two antipodal sites on it
      // (one site and its 2*pi-partner phase for the axial p = N networks).
      chi[k] = 2.0 * std::cos(j * cls.theta);
    }
  }
  return chi;
}

std::vector<IrrepMultiplicity> decompose(Group g, int p, SpinValue s) {
  const CharacterTable& table = builtin_table(g);
  const std::vector<double> chi_w = main_rep_characters(g, p, s);

  std::vector<IrrepMultiplicity> result;
  for (const Irrep& irrep : table.irreps) {
    double m = 0.0;
    for (size_t k = 0; k < table.classes.size(); ++k) {
      m += table.classes[k].size * chi_w[k] * irrep.chi[k];
    }
    m /= table.order;
    const double rounded = std::round(m);
    if (std::abs(m - rounded) > 1e-8) {
      throw numerical_error("decompose: non-integer multiplicity " + std::to_string(m) +
                            " for irrep " + irrep.label);
    }
    const int count = static_cast<int>(rounded);
    if (count < 0) {
      throw numerical_error("decompose: negative multiplicity for irrep " + irrep.label);
    }
    if (count > 0) {
      result.push_back({irrep.label, irrep.dim, count});
    }
  }
  return result;
}

}  // namespace polyspin
