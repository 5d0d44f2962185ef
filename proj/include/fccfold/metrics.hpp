#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fccfold/conformation.hpp"

namespace fccfold {

// One chain step (neighbouring residues) corresponds to 3.8 angstroms; a
// neighbour step has lattice length sqrt(2).
inline constexpr double kStepAngstroms = 3.8;
double lattice_unit_scale();  // 3.8 / sqrt(2)

struct NativeStructure {
  std::string id;
  std::vector<std::array<double, 3>> coords;  // angstroms
};

// Header "id n", then n lines "x y z". Throws NativeParseError.
NativeStructure parse_native(std::istream&);
NativeStructure load_native(const std::filesystem::path&);

std::vector<std::array<double, 3>> scaled_coords(const Conformation&);

// Root mean square deviation between the two intra-chain distance matrices
// (all residue pairs, no superposition). Throws LengthMismatch.
double rmsd(const Conformation& predicted, const NativeStructure& native);
double rmsd(std::span<const std::array<double, 3>> a, std::span<const std::array<double, 3>> b);

// (target - reference) / reference * 100; reference must be nonzero
// (throws ZeroReference). Reported at two decimals.
double relative_improvement(double target, double reference);

struct RunSummaryInput {
  double best_energy;
  const Conformation* best;  // may be null when no structure is wanted
};

struct RunSetSummary {
  std::size_t runs;
  double best_energy;               // lowest across runs
  double mean_energy;               // mean of per-run bests
  std::optional<double> best_rmsd;  // lowest rmsd across runs
  std::optional<double> rmsd_of_best;  // rmsd of the best-energy structure
};

// Aggregates per-run bests; rmsd fields appear when a native structure is
// given. Throws EmptyRunSet.
RunSetSummary summarize(std::span<const RunSummaryInput>, const NativeStructure* native);

}  // namespace fccfold
