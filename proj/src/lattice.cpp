#include "fccfold/lattice.hpp"

#include <cassert>
#include <cstdlib>

#include "fccfold/rng.hpp"

namespace fccfold {

namespace {

std::array<LatticeRotation, 24> build_rotations() {
  std::array<LatticeRotation, 24> out{};
  constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                               {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  std::size_t count = 0;
  // Fixed enumeration order; identity (perm 012, all +) lands first.
  for (const auto& perm : perms) {
    for (int signs = 0; signs < 8; ++signs) {
      std::array<int, 9> m{};
      for (int row = 0; row < 3; ++row)
        m[static_cast<std::size_t>(row) * 3 + perm[row]] = (signs >> row) & 1 ? -1 : 1;
      const int det = m[0] * (m[4] * m[8] - m[5] * m[7]) -
                      m[1] * (m[3] * m[8] - m[5] * m[6]) +
                      m[2] * (m[3] * m[7] - m[4] * m[6]);
      if (det != 1) continue;
      LatticeRotation rot{};
      rot.m = m;
      for (std::size_t i = 0; i < kDirections; ++i) {
        const auto image = basis_index(rot.apply(kBasis[i]));
        assert(image.has_value());  // signed permutations preserve the basis set
        rot.basis_map[i] = *image;
      }
      out[count++] = rot;
    }
  }
  assert(count == 24);
  return out;
}

}  // namespace

const std::array<LatticeRotation, 24>& lattice_rotations() {
  static const std::array<LatticeRotation, 24> rotations = build_rotations();
  return rotations;
}

OccupancyIndex::OccupancyIndex(std::size_t expected) {
  std::size_t cap = 16;
  while (cap < expected * 2) cap <<= 1;
  slots_.assign(cap, Slot{});
  mask_ = cap - 1;
}

std::uint64_t OccupancyIndex::hash(LatticePoint p) {
  // Coordinates stay within +-chain length, far inside 21 bits.
  const std::uint64_t packed = (static_cast<std::uint64_t>(p.x + 0x100000) << 42) |
                               (static_cast<std::uint64_t>(p.y + 0x100000) << 21) |
                               static_cast<std::uint64_t>(p.z + 0x100000);
  return splitmix64(packed);
}

void OccupancyIndex::insert(LatticePoint p, int index) {
  if ((count_ + 1) * 2 > slots_.size()) grow();
  std::size_t i = hash(p) & mask_;
  while (slots_[i].index >= 0) {
    assert(!(slots_[i].p == p));
    i = (i + 1) & mask_;
  }
  slots_[i] = {p, index};
  ++count_;
}

std::optional<int> OccupancyIndex::find(LatticePoint p) const {
  std::size_t i = hash(p) & mask_;
  while (slots_[i].index >= 0) {
    if (slots_[i].p == p) return slots_[i].index;
    i = (i + 1) & mask_;
  }
  return std::nullopt;
}

void OccupancyIndex::grow() {
  std::vector<Slot> old = std::move(slots_);
  slots_.assign(old.size() * 2, Slot{});
  mask_ = slots_.size() - 1;
  count_ = 0;
  for (const Slot& s : old)
    if (s.index >= 0) insert(s.p, s.index);
}

}  // namespace fccfold
