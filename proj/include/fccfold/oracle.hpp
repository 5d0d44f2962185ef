#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "fccfold/energy.hpp"
#include "fccfold/sequence.hpp"

namespace fccfold {

struct OracleOptions {
  bool symmetry_reduce = true;
  std::size_t max_length = 9;  // refuse longer chains (throws TooLong)
};

// Depth-first enumeration of all self-avoiding walks with n residues,
// pruned through the occupancy index. With symmetry_reduce only the
// canonical representative of each rotation class is emitted (first step
// fixed to basis 0, then a leaf-level lexicographic-minimum check).
void enumerate_saws(std::size_t n, const OracleOptions&,
                    const std::function<void(std::span<const std::uint8_t>)>& emit);

std::uint64_t count_saws(std::size_t n, bool symmetry_reduce,
                         std::size_t max_length = 9);

// Lexicographically smallest image of the direction string under the 24
// rotations.
std::vector<std::uint8_t> canonical_directions(std::span<const std::uint8_t> dirs);

struct OptimumResult {
  double energy;
  std::vector<std::uint8_t> argmin;  // first walk attaining the optimum
  std::uint64_t walks;               // walks scanned
};

// Ground truth by exhaustive scan. Energies are computed with a direct
// all-pairs pass over the walk's points, independent of the occupancy-probe
// evaluation route.
OptimumResult exact_optimum(const Sequence&, const ContactMatrix&,
                            const OracleOptions& = {});

}  // namespace fccfold
