#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "doctest.h"
#include "polyspin/group_rep.hpp"
#include "test_util.hpp"

using namespace polyspin;

namespace {

// Reference decompositions of the site representations, one row per spin
// class. Keyed as {irrep label -> multiplicity}; entries not listed are zero.
struct DecompRow {
  Group g;
  int p;
  int two_j;
  std::map<std::string, int> counts;
};

const std::vector<DecompRow>& reference_rows() {
  static const std::vector<DecompRow> rows = {
      // Octahedral hosts.
      {Group::O, 4, 0, {{"A1", 1}, {"E", 1}, {"F1", 1}}},
      {Group::O, 4, 2, {{"F1", 1}, {"F2", 1}}},
      {Group::O, 4, 4, {{"A2", 1}, {"E", 1}, {"F2", 1}}},
      {Group::O, 4, 1, {{"E1'", 1}, {"G'", 1}}},
      {Group::O, 4, 3, {{"E2'", 1}, {"G'", 1}}},
      {Group::O, 3, 0, {{"A1", 1}, {"A2", 1}, {"F1", 1}, {"F2", 1}}},
      {Group::O, 3, 2, {{"E", 1}, {"F1", 1}, {"F2", 1}}},
      {Group::O, 3, 1, {{"E1'", 1}, {"E2'", 1}, {"G'", 1}}},
      {Group::O, 3, 3, {{"G'", 2}}},
      {Group::O, 2, 0, {{"A1", 1}, {"E", 1}, {"F1", 1}, {"F2", 2}}},
      {Group::O, 2, 2, {{"A2", 1}, {"E", 1}, {"F1", 2}, {"F2", 1}}},
      {Group::O, 2, 1, {{"E1'", 1}, {"E2'", 1}, {"G'", 2}}},
      {Group::O, 1, 0, {{"A1", 1}, {"A2", 1}, {"E", 2}, {"F1", 3}, {"F2", 3}}},
      {Group::O, 1, 1, {{"E1'", 2}, {"E2'", 2}, {"G'", 4}}},
      // Icosahedral hosts.
      {Group::Y, 5, 0, {{"A", 1}, {"F1", 1}, {"F2", 1}, {"H", 1}}},
      {Group::Y, 5, 2, {{"F1", 1}, {"G", 1}, {"H", 1}}},
      {Group::Y, 5, 4, {{"F2", 1}, {"G", 1}, {"H", 1}}},
      {Group::Y, 5, 1, {{"E1'", 1}, {"G'", 1}, {"I'", 1}}},
      {Group::Y, 5, 3, {{"E2'", 1}, {"G'", 1}, {"I'", 1}}},
      {Group::Y, 5, 5, {{"I'", 2}}},
      {Group::Y, 3, 0, {{"A", 1}, {"F1", 1}, {"F2", 1}, {"G", 2}, {"H", 1}}},
      {Group::Y, 3, 2, {{"F1", 1}, {"F2", 1}, {"G", 1}, {"H", 2}}},
      {Group::Y, 3, 1, {{"E1'", 1}, {"E2'", 1}, {"G'", 1}, {"I'", 2}}},
      {Group::Y, 3, 3, {{"G'", 2}, {"I'", 2}}},
      {Group::Y, 2, 0, {{"A", 1}, {"F1", 1}, {"F2", 1}, {"G", 2}, {"H", 3}}},
      {Group::Y, 2, 2, {{"F1", 2}, {"F2", 2}, {"G", 2}, {"H", 2}}},
      {Group::Y, 2, 1, {{"E1'", 1}, {"E2'", 1}, {"G'", 2}, {"I'", 3}}},
      {Group::Y, 1, 0, {{"A", 1}, {"F1", 3}, {"F2", 3}, {"G", 4}, {"H", 5}}},
      {Group::Y, 1, 1, {{"E1'", 2}, {"E2'", 2}, {"G'", 4}, {"I'", 6}}},
      // Dihedral hosts.
      {Group::D2, 2, 0, {{"A", 1}, {"B3", 1}}},
      {Group::D2, 2, 2, {{"B1", 1}, {"B2", 1}}},
      {Group::D2, 2, 1, {{"E'", 1}}},
      {Group::D2, 1, 0, {{"A", 1}, {"B1", 1}, {"B2", 1}, {"B3", 1}}},
      {Group::D2, 1, 1, {{"E'", 2}}},
      {Group::D4, 4, 0, {{"A1", 1}, {"A2", 1}}},
      {Group::D4, 4, 2, {{"E", 1}}},
      {Group::D4, 4, 4, {{"B1", 1}, {"B2", 1}}},
      {Group::D4, 4, 1, {{"E1'", 1}}},
      {Group::D4, 4, 3, {{"E2'", 1}}},
      {Group::D4, 2, 0, {{"A1", 1}, {"B1", 1}, {"E", 1}}},
      {Group::D4, 2, 2, {{"A2", 1}, {"B2", 1}, {"E", 1}}},
      {Group::D4, 2, 1, {{"E1'", 1}, {"E2'", 1}}},
      {Group::D4, 1, 0, {{"A1", 1}, {"A2", 1}, {"B1", 1}, {"B2", 1}, {"E", 2}}},
      {Group::D4, 1, 1, {{"E1'", 2}, {"E2'", 2}}},
      {Group::D6, 6, 0, {{"A1", 1}, {"A2", 1}}},
      {Group::D6, 6, 2, {{"E1", 1}}},
      {Group::D6, 6, 4, {{"E2", 1}}},
      {Group::D6, 6, 6, {{"B1", 1}, {"B2", 1}}},
      {Group::D6, 6, 1, {{"E1'", 1}}},
      {Group::D6, 6, 3, {{"E3'", 1}}},
      {Group::D6, 6, 5, {{"E2'", 1}}},
      {Group::D6, 2, 0, {{"A1", 1}, {"B1", 1}, {"E1", 1}, {"E2", 1}}},
      {Group::D6, 2, 2, {{"A2", 1}, {"B2", 1}, {"E1", 1}, {"E2", 1}}},
      {Group::D6, 2, 1, {{"E1'", 1}, {"E2'", 1}, {"E3'", 1}}},
      {Group::D6, 1, 0, {{"A1", 1}, {"A2", 1}, {"B1", 1}, {"B2", 1}, {"E1", 2}, {"E2", 2}}},
      {Group::D6, 1, 1, {{"E1'", 2}, {"E2'", 2}, {"E3'", 2}}},
  };
  return rows;
}

}  // namespace

TEST_CASE("character tables satisfy the group axioms") {
  for (Group g : {Group::D2, Group::D4, Group::D6, Group::O, Group::Y}) {
    const auto& table = builtin_table(g);
    INFO(group_name(g));
    CHECK(table.order == 2 * group_order(g));

    int total = 0;
    for (const auto& cls : table.classes) total += cls.size;
    CHECK(total == table.order);

    // Column of the identity is the dimension; the 2*pi column is +-dim.
    int dim2 = 0;
    for (const auto& irrep : table.irreps) {
      CHECK(irrep.chi[0] == doctest::Approx(irrep.dim));
      CHECK(irrep.chi[1] == doctest::Approx(irrep.double_valued ? -irrep.dim : irrep.dim));
      dim2 += irrep.dim * irrep.dim;
    }
    CHECK(dim2 == table.order);

    // First orthogonality of rows.
    for (size_t i = 0; i < table.irreps.size(); ++i) {
      for (size_t j = 0; j < table.irreps.size(); ++j) {
        double dot = 0.0;
        for (size_t c = 0; c < table.classes.size(); ++c) {
          dot += table.classes[c].size * table.irreps[i].chi[c] * table.irreps[j].chi[c];
        }
        const double want = (i == j) ? table.order : 0.0;
        INFO("irreps ", table.irreps[i].label, " x ", table.irreps[j].label);
        CHECK(std::abs(dot - want) < 1e-9 * table.order);
      }
    }
  }
}

TEST_CASE("site representation characters have the coherent-state form") {
  const auto& table = builtin_table(Group::O);
  for (int two_j : {0, 1, 2, 3, 4}) {
    const SpinValue s(two_j);
    const auto chi = main_rep_characters(Group::O, 4, s);
    REQUIRE(chi.size() == table.classes.size());
    const double j = s.j();
    for (size_t c = 0; c < table.classes.size(); ++c) {
      const auto& cls = table.classes[c];
      double want = 0.0;
      if (cls.label == "E") {
        want = 6.0;
      } else if (cls.label == "Q") {
        want = 6.0 * std::cos(2.0 * std::numbers::pi * j);
      } else if (cls.family == AxisFamily::FourFold) {
        want = 2.0 * std::cos(j * cls.theta);
      }
      INFO("class ", cls.label);
      CHECK(std::abs(chi[c] - want) < 1e-12);
    }
  }
}

TEST_CASE("decompositions reproduce the reference tables") {
  for (const auto& row : reference_rows()) {
    const auto result = decompose(row.g, row.p, SpinValue(row.two_j));
    std::map<std::string, int> got;
    for (const auto& entry : result) {
      CHECK(entry.count > 0);
      got[entry.label] = entry.count;
    }
    INFO("C(", group_name(row.g), ",", row.p, ") at 2J = ", row.two_j);
    CHECK(got == row.counts);
  }
}

TEST_CASE("multiplicities weighted by dimension recover the site count") {
  const std::pair<Group, int> configs[] = {{Group::D2, 2}, {Group::D2, 1}, {Group::D4, 4},
                                           {Group::D4, 2}, {Group::D4, 1}, {Group::D6, 6},
                                           {Group::D6, 2}, {Group::D6, 1}, {Group::O, 4},
                                           {Group::O, 3},  {Group::O, 2},  {Group::O, 1},
                                           {Group::Y, 5},  {Group::Y, 3},  {Group::Y, 2},
                                           {Group::Y, 1}};
  for (const auto& [g, p] : configs) {
    const int n = group_order(g) / p;
    for (int two_j = 0; two_j <= 2 * p; ++two_j) {
      const auto result = decompose(g, p, SpinValue(two_j));
      int total = 0;
      for (const auto& entry : result) total += entry.count * entry.dim;
      INFO("C(", group_name(g), ",", p, ") at 2J = ", two_j);
      CHECK(total == n);
    }
  }
}

TEST_CASE("spin parity selects single or double valued irreps") {
  const std::pair<Group, int> configs[] = {
      {Group::O, 4}, {Group::O, 3}, {Group::Y, 5}, {Group::D4, 2}, {Group::D6, 6}};
  for (const auto& [g, p] : configs) {
    for (int two_j = 0; two_j <= 2 * p + 1; ++two_j) {
      const SpinValue s(two_j);
      const auto& table = builtin_table(g);
      for (const auto& entry : decompose(g, p, s)) {
        for (const auto& irrep : table.irreps) {
          if (irrep.label == entry.label) {
            INFO("C(", group_name(g), ",", p, ") 2J = ", two_j, " irrep ", entry.label);
            CHECK(irrep.double_valued == s.half_integer());
          }
        }
      }
    }
  }
}

TEST_CASE("decomposition is periodic in J with period p") {
  // Characters depend on J through cos(J theta) on p-fold site axes, so the
  // pattern repeats after J -> J + p (2J -> 2J + 2p) at most.
  const std::pair<Group, int> configs[] = {{Group::O, 4}, {Group::Y, 5}, {Group::D6, 2}};
  for (const auto& [g, p] : configs) {
    for (int two_j = 0; two_j < 2 * p; ++two_j) {
      const auto a = decompose(g, p, SpinValue(two_j));
      const auto b = decompose(g, p, SpinValue(two_j + 4 * p));
      REQUIRE(a.size() == b.size());
      for (size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k].label == b[k].label);
        CHECK(a[k].count == b[k].count);
      }
    }
  }
}
