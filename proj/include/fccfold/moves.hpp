#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "fccfold/conformation.hpp"
#include "fccfold/energy.hpp"
#include "fccfold/rng.hpp"

namespace fccfold {

enum class MoveKind : std::uint8_t { Crossover, Rotation, Diagonal, Pull, Tilt, Macro };
inline constexpr std::size_t kMoveKinds = 6;

std::string_view move_name(MoveKind);

// --- primitive operators ------------------------------------------------
// Every operator clones; a nullopt result means the move is infeasible (or
// inapplicable) at that position. Successful results are valid chains.

// Swap direction suffixes at splice point pos in [1, n-1]; each child is
// rebuilt from the origin and validated independently.
std::pair<std::optional<Conformation>, std::optional<Conformation>> splice(
    const Conformation& a, const Conformation& b, std::size_t pos);

// Both children or nothing.
std::optional<std::pair<Conformation, Conformation>> crossover(const Conformation& a,
                                                               const Conformation& b,
                                                               std::size_t pos);

// Rigidly rotate the suffix after pivot pos (pos in [1, n-2]) about the
// pivot point.
std::optional<Conformation> rotation_move(const Conformation&, std::size_t pos,
                                          const LatticeRotation&);

// Free points adjacent to both chain neighbours of residue pos, in basis
// order around points[pos-1]; pos in [1, n-2].
std::vector<LatticePoint> diagonal_targets(const Conformation&, std::size_t pos);

std::optional<Conformation> diagonal_move(const Conformation&, std::size_t pos,
                                          LatticePoint target);

// --- pull ----------------------------------------------------------------

// Side of the chain that gets dragged along (the opposite side anchors).
enum class PullSide : std::uint8_t { Head, Tail };

struct PullCandidate {
  std::size_t pos;
  PullSide side;
  LatticePoint l;                   // new position of residue pos
  std::optional<LatticePoint> c;    // new position of the dragged neighbour
};

// All applicable pulls at pos, deterministically ordered: nearer chain end
// first (tie: tail), then L and C in basis order. Single-residue moves are
// forced whenever L already touches the dragged-side neighbour, and pulls
// seeded at a chain end skip L cells touching the dragged neighbour's old
// site; together these keep every pull invertible by another pull.
std::vector<PullCandidate> pull_candidates(const Conformation&, std::size_t pos);

// Candidates from pull_candidates always apply cleanly.
Conformation apply_pull(const Conformation&, const PullCandidate&);

std::optional<Conformation> pull_move(const Conformation&, std::size_t pos,
                                      std::size_t choice);

// One pull at a uniformly random position with a uniformly random candidate;
// nullopt when the drawn position admits none.
std::optional<Conformation> random_pull(const Conformation&, RngStream&);

// --- tilt ----------------------------------------------------------------

// Shift the maximal collinear run through pos onto a parallel line (offset =
// basis index), dragging both flanks along vacated positions until the chain
// reconnects. Inapplicable when no collinear pair passes through pos.
std::optional<Conformation> tilt_move(const Conformation&, std::size_t pos,
                                      std::uint8_t offset);

// First feasible offset in basis order.
std::optional<Conformation> tilt_move(const Conformation&, std::size_t pos);

// --- exhaustive wrappers ---------------------------------------------------

struct MutationResult {
  Conformation conformation;
  double energy;
  std::optional<std::size_t> applied_at;  // nullopt: parent survived
};

// Applies op at every position (and every secondary choice, in fixed order),
// keeps the parent plus all feasible children, returns the lowest-energy
// candidate; ties resolve to the earliest candidate, so the parent wins ties.
MutationResult do_mutation(const Conformation& parent, MoveKind op, const Sequence&,
                           const ContactMatrix&);

struct CrossoverResult {
  Conformation first, second;
  double first_energy, second_energy;
};

// Splices at every position, pools both parents with all feasible children
// and returns the best two, lower energy first.
CrossoverResult do_crossover(const Conformation& a, const Conformation& b, const Sequence&,
                             const ContactMatrix&);

// --- macro-mutation --------------------------------------------------------

struct MacroParams {
  int repeat = 5;
  double p_polar = 0.20;  // probability an iteration works on the polar class
  bool hp_guided = true;  // false: first-feasible diagonal moves for all residues
};

struct MacroStep {
  std::size_t residue;
  HpClass cls;
  LatticePoint from, to;
  double d_old_sq, d_new_sq;  // squared distances to the pre-move centre (H only)
};

// Composite diagonal-move mutation. Guided mode: each iteration draws the
// working class (P with probability p_polar), computes the hydrophobic centre
// once, then walks residues of that class in chain order; polar residues take
// the first feasible diagonal move, hydrophobic residues take the first
// feasible move that does not increase the distance to the centre and end the
// iteration. Unguided mode ignores classes and the centre. Zero successful
// moves returns the input unchanged.
Conformation macro_mutation(const Conformation&, const Sequence&, const MacroParams&,
                            RngStream&, std::vector<MacroStep>* log = nullptr);

}  // namespace fccfold
