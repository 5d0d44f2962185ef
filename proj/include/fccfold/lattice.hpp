#pragma once

#include <array>
#include <cstdint>
#include <cstddef>
#include <optional>
#include <vector>

namespace fccfold {

struct LatticePoint {
  int x = 0;
  int y = 0;
  int z = 0;

  friend constexpr LatticePoint operator+(LatticePoint a, LatticePoint b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend constexpr LatticePoint operator-(LatticePoint a, LatticePoint b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend constexpr LatticePoint operator-(LatticePoint a) { return {-a.x, -a.y, -a.z}; }
  friend constexpr bool operator==(LatticePoint a, LatticePoint b) {
    return a.x == b.x && a.y == b.y && a.z == b.z;
  }
};

constexpr long long squared_distance(LatticePoint a, LatticePoint b) {
  const long long dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  return dx * dx + dy * dy + dz * dz;
}

// Face-centred cubic: the 12 nearest neighbours sit at squared distance 2.
constexpr bool is_contact(LatticePoint a, LatticePoint b) {
  return squared_distance(a, b) == 2;
}

// Neighbour offsets in a fixed order; every enumeration that picks the
// "first" candidate walks this order, so it must never be reordered.
inline constexpr std::array<LatticePoint, 12> kBasis = {{
    {1, 1, 0},  {1, 0, 1},  {0, 1, 1},  {-1, -1, 0}, {-1, 0, -1}, {0, -1, -1},
    {-1, 1, 0}, {1, -1, 0}, {-1, 0, 1}, {0, 1, -1},  {1, 0, -1},  {0, -1, 1},
}};

inline constexpr std::size_t kDirections = kBasis.size();

constexpr std::array<LatticePoint, 12> neighbours(LatticePoint p) {
  std::array<LatticePoint, 12> out{};
  for (std::size_t i = 0; i < kDirections; ++i) out[i] = p + kBasis[i];
  return out;
}

// Index of an exact basis offset, if it is one.
constexpr std::optional<std::uint8_t> basis_index(LatticePoint delta) {
  for (std::size_t i = 0; i < kDirections; ++i)
    if (kBasis[i] == delta) return static_cast<std::uint8_t>(i);
  return std::nullopt;
}

// A proper rotation of the lattice (determinant +1 signed permutation).
struct LatticeRotation {
  std::array<int, 9> m{};                   // row-major 3x3
  std::array<std::uint8_t, 12> basis_map{};  // image of each basis index

  constexpr LatticePoint apply(LatticePoint p) const {
    return {m[0] * p.x + m[1] * p.y + m[2] * p.z,
            m[3] * p.x + m[4] * p.y + m[5] * p.z,
            m[6] * p.x + m[7] * p.y + m[8] * p.z};
  }
  bool is_identity() const { return m == std::array<int, 9>{1, 0, 0, 0, 1, 0, 0, 0, 1}; }
};

// All 24 proper octahedral rotations, identity first, in a fixed order.
const std::array<LatticeRotation, 24>& lattice_rotations();

// Point -> chain-index map with open addressing; conformations are rebuilt
// rather than edited, so the table only ever grows.
class OccupancyIndex {
 public:
  OccupancyIndex() : OccupancyIndex(0) {}
  explicit OccupancyIndex(std::size_t expected);

  // p must currently be free.
  void insert(LatticePoint p, int index);
  std::optional<int> find(LatticePoint p) const;
  bool is_free(LatticePoint p) const { return !find(p).has_value(); }
  std::size_t size() const { return count_; }

 private:
  struct Slot {
    LatticePoint p;
    int index = -1;  // -1 marks an empty slot
  };
  std::vector<Slot> slots_;
  std::size_t mask_ = 0;
  std::size_t count_ = 0;

  static std::uint64_t hash(LatticePoint p);
  void grow();
};

}  // namespace fccfold
