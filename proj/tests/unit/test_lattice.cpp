#include <algorithm>
#include <array>
#include <set>
#include <tuple>

#include "doctest.h"
#include "fccfold/lattice.hpp"
#include "fccfold/rng.hpp"

using namespace fccfold;

namespace {

std::tuple<int, int, int> as_tuple(LatticePoint p) { return {p.x, p.y, p.z}; }

std::array<int, 9> matmul(const std::array<int, 9>& a, const std::array<int, 9>& b) {
  std::array<int, 9> r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) r[i * 3 + j] += a[i * 3 + k] * b[k * 3 + j];
  return r;
}

int det3(const std::array<int, 9>& m) {
  return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
         m[2] * (m[3] * m[7] - m[4] * m[6]);
}

}  // namespace

TEST_SUITE("lattice") {
  TEST_CASE("basis vectors are the fixed twelve, in order") {
    REQUIRE(kDirections == 12);
    const std::array<LatticePoint, 12> expected = {{{1, 1, 0},
                                                    {1, 0, 1},
                                                    {0, 1, 1},
                                                    {-1, -1, 0},
                                                    {-1, 0, -1},
                                                    {0, -1, -1},
                                                    {-1, 1, 0},
                                                    {1, -1, 0},
                                                    {-1, 0, 1},
                                                    {0, 1, -1},
                                                    {1, 0, -1},
                                                    {0, -1, 1}}};
    for (std::size_t i = 0; i < 12; ++i) CHECK(kBasis[i] == expected[i]);
  }

  TEST_CASE("each basis offset has squared length 2 and a negation in the set") {
    for (const LatticePoint& v : kBasis) {
      CHECK(squared_distance({0, 0, 0}, v) == 2);
      CHECK(basis_index(-v).has_value());
    }
  }

  TEST_CASE("neighbours of the origin") {
    const auto nb = neighbours({0, 0, 0});
    CHECK(nb.size() == 12);
    std::set<std::tuple<int, int, int>> distinct;
    for (const LatticePoint& p : nb) distinct.insert(as_tuple(p));
    CHECK(distinct.size() == 12);
    CHECK(distinct.count(as_tuple({1, 1, 0})) == 1);
    CHECK(distinct.count(as_tuple({0, -1, 1})) == 1);
    CHECK(distinct.count(as_tuple({2, 0, 0})) == 0);
  }

  TEST_CASE("neighbourhood is translation invariant") {
    RngStream rng(11);
    for (int t = 0; t < 50; ++t) {
      const LatticePoint p{static_cast<int>(rng.below(2001)) - 1000,
                           static_cast<int>(rng.below(2001)) - 1000,
                           static_cast<int>(rng.below(2001)) - 1000};
      const auto nb = neighbours(p);
      for (std::size_t i = 0; i < 12; ++i) {
        CHECK(nb[i] - p == kBasis[i]);
        CHECK(squared_distance(p, nb[i]) == 2);
      }
    }
  }

  TEST_CASE("contact predicate is exactly squared distance 2") {
    CHECK(is_contact({0, 0, 0}, {1, 0, 1}));
    CHECK_FALSE(is_contact({0, 0, 0}, {0, 0, 0}));
    CHECK_FALSE(is_contact({0, 0, 0}, {1, 1, 1}));
    CHECK_FALSE(is_contact({0, 0, 0}, {2, 0, 0}));
  }

  TEST_CASE("basis_index inverts the basis list and rejects non-basis offsets") {
    for (std::size_t i = 0; i < 12; ++i) {
      auto idx = basis_index(kBasis[i]);
      REQUIRE(idx.has_value());
      CHECK(*idx == i);
    }
    CHECK_FALSE(basis_index({0, 0, 0}).has_value());
    CHECK_FALSE(basis_index({2, 0, 0}).has_value());
    CHECK_FALSE(basis_index({1, 1, 1}).has_value());
  }

  TEST_CASE("the 24 rotations form a group stabilising the basis set") {
    const auto& rots = lattice_rotations();
    REQUIRE(rots.size() == 24);
    CHECK(rots[0].is_identity());

    std::set<std::array<int, 9>> distinct;
    for (const auto& r : rots) distinct.insert(r.m);
    CHECK(distinct.size() == 24);

    for (const auto& r : rots) {
      CHECK(det3(r.m) == 1);
      std::set<std::tuple<int, int, int>> image;
      for (std::size_t i = 0; i < 12; ++i) {
        const LatticePoint mapped = r.apply(kBasis[i]);
        image.insert(as_tuple(mapped));
        CHECK(mapped == kBasis[r.basis_map[i]]);
      }
      CHECK(image.size() == 12);
      for (const LatticePoint& v : kBasis) CHECK(image.count(as_tuple(v)) == 1);
    }

    for (const auto& a : rots) {
      bool has_inverse = false;
      for (const auto& b : rots) {
        const auto ab = matmul(a.m, b.m);
        CHECK(distinct.count(ab) == 1);
        if (ab == std::array<int, 9>{1, 0, 0, 0, 1, 0, 0, 0, 1}) has_inverse = true;
      }
      CHECK(has_inverse);
    }
  }

  TEST_CASE("occupancy index inserts, finds and frees") {
    OccupancyIndex occ;
    CHECK(occ.size() == 0);
    CHECK(occ.is_free({0, 0, 0}));

    RngStream rng(5);
    std::vector<LatticePoint> pts;
    for (int i = 0; i < 500; ++i) {
      LatticePoint p{static_cast<int>(rng.below(101)) - 50, static_cast<int>(rng.below(101)) - 50,
                     static_cast<int>(rng.below(101)) - 50};
      if (!occ.is_free(p)) continue;
      occ.insert(p, static_cast<int>(pts.size()));
      pts.push_back(p);
    }
    CHECK(occ.size() == pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      auto found = occ.find(pts[i]);
      REQUIRE(found.has_value());
      CHECK(*found == static_cast<int>(i));
      CHECK_FALSE(occ.is_free(pts[i]));
    }
    CHECK(occ.is_free({999, 999, 999}));
  }
}
