#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fccfold/lattice.hpp"
#include "fccfold/model.hpp"
#include "fccfold/sequence.hpp"

namespace fccfold {

// A self-avoiding walk anchored at the origin. Points, direction string and
// occupancy index are kept coherent by construction: instances are immutable
// apart from the fitness cache, and every move builds a fresh instance.
class Conformation {
 public:
  // Directions are basis indices; n = dirs.size() + 1 residues.
  static std::optional<Conformation> try_from_directions(std::span<const std::uint8_t> dirs);
  static Conformation from_directions(std::span<const std::uint8_t> dirs);  // throws SelfCollision

  // Validates connectivity and self-avoidance, re-derives the direction
  // string, and translates the chain so it starts at the origin.
  static std::optional<Conformation> try_from_points(std::vector<LatticePoint> pts);

  static Conformation straight_chain(std::size_t n);  // all steps along basis 0

  std::size_t size() const { return points_.size(); }
  const std::vector<LatticePoint>& points() const { return points_; }
  const std::vector<std::uint8_t>& directions() const { return directions_; }
  const OccupancyIndex& occupancy() const { return occupancy_; }

  std::optional<double> fitness() const { return fitness_; }
  void set_fitness(double f) { fitness_ = f; }
  void clear_fitness() { fitness_.reset(); }

  // Translation-invariant identity: the direction string as letters
  // ('a' + basis index). No rotational folding, by design.
  std::string canonical_key() const;

  // One residue relocated; nullopt when the result is not a valid chain.
  std::optional<Conformation> with_point_moved(std::size_t pos, LatticePoint target) const;

 private:
  Conformation() = default;
  std::vector<LatticePoint> points_;
  std::vector<std::uint8_t> directions_;
  OccupancyIndex occupancy_;
  std::optional<double> fitness_;
};

// Fraction of chain steps whose directions differ; both chains must have the
// same length (throws LengthMismatch).
double diversity(const Conformation& a, const Conformation& b);

struct HydrophobicCentre {
  double x, y, z;
};

// Mean position of the hydrophobic residues (throws NoHydrophobicResidues).
HydrophobicCentre hydrophobic_centre(const Conformation&, const Sequence&);

double squared_distance_to(LatticePoint p, const HydrophobicCentre& c);

// Text dump: one "index x y z code" line per residue, then a trailer line
// "energy <value> model <name>". Values round-trip exactly.
void write_dump(std::ostream&, const Conformation&, const Sequence&, double energy,
                EnergyModel model);

struct DumpRecord {
  Conformation conformation;
  Sequence sequence;
  double energy;
  EnergyModel model;
};

DumpRecord read_dump(std::istream&);  // throws DumpParseError

}  // namespace fccfold
