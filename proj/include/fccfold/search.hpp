#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "fccfold/conformation.hpp"
#include "fccfold/energy.hpp"
#include "fccfold/moves.hpp"
#include "fccfold/rng.hpp"
#include "fccfold/sequence.hpp"

namespace fccfold {

// Weight per operator, indexed by MoveKind order:
// crossover, rotation, diagonal, pull, tilt, macro.
using OperatorWeights = std::array<double, kMoveKinds>;

struct GaConfig {
  std::size_t population = 50;
  OperatorWeights weights{1, 1, 1, 1, 1, 1};
  double p_polar = 0.20;
  int macro_repeat = 5;
  int stagnation_window = 5;
  double walk_energy_lo = 0.05;
  double walk_energy_hi = 0.10;
  double walk_diversity_lo = 0.10;
  double walk_diversity_hi = 0.75;
  std::optional<std::uint64_t> max_generations;
  std::optional<double> max_seconds;
  std::uint64_t seed = 1;
  int init_restarts = 100;  // growth attempts per member before the fallback

  void validate() const;  // throws ConfigError
};

// Objective matrix plus macro-mutation guidance for a model variant.
struct VariantPolicy {
  const ContactMatrix& objective;
  bool macro_guided;
};
VariantPolicy variant_policy(EnergyModel);

// Categorical draw over the six operators.
MoveKind select_operator(const OperatorWeights&, RngStream&);

// Random-growth initial member: up to cfg.init_restarts attempts of uniform
// direction growth (abandoning an attempt at the first collision), then a
// straight-chain fallback.
Conformation grow_member(std::size_t n, int restarts, RngStream&);

// Duplicate-free evaluated population. Throws InitialisationFailed when a
// duplicate-free fill is impossible (tiny n with a large population).
std::vector<Conformation> initial_population(const Sequence&, const GaConfig&,
                                             EnergyModel, RngStream&);

// Relative energy change used by the stagnation walk: |e1 - e0| scaled by
// max(|e0|, |e1|); 0 when both energies are 0.
double relative_energy_change(double e0, double e1);

// Pull the member repeatedly (position sweeps) until both the energy band
// and the diversity band accept, or 10 n sweeps pass (then the original is
// returned unchanged).
Conformation walk_member(const Conformation&, const Sequence&, const ContactMatrix&,
                         const GaConfig&, RngStream&);

struct GenerationRecord {
  std::uint64_t generation;  // 1-based
  MoveKind op;
  double best_energy;   // population best this generation
  double mean_energy;
  double best_ever;
  bool walked;          // stagnation walk ran after this generation
  double elapsed_seconds;
};

struct RunResult {
  Conformation best;
  double best_energy;
  std::vector<GenerationRecord> trace;
  std::uint64_t generations;
  double elapsed_seconds;
};

// One-operator-per-generation GA over duplicate-free populations with
// stagnation recovery.
class GradedGa {
 public:
  GradedGa(Sequence seq, GaConfig cfg, EnergyModel model);

  void initialise();
  bool step();  // one generation; false once the budget is exhausted

  using Observer = std::function<void(const GradedGa&, const GenerationRecord&)>;
  RunResult run(const Observer& observer = {});

  const Sequence& sequence() const { return seq_; }
  const GaConfig& config() const { return cfg_; }
  EnergyModel model() const { return model_; }
  const std::vector<Conformation>& population() const { return pop_; }
  double best_ever() const { return best_energy_; }
  const Conformation& best_conformation() const { return best_; }
  std::uint64_t generation() const { return generation_; }
  const std::vector<GenerationRecord>& trace() const { return trace_; }

 private:
  Sequence seq_;
  GaConfig cfg_;
  EnergyModel model_;
  const ContactMatrix& objective_;
  bool macro_guided_;

  RngStream base_;
  RngStream scheduler_;

  std::vector<Conformation> pop_;
  Conformation best_;
  double best_energy_ = 0;
  bool has_best_ = false;
  std::uint64_t generation_ = 0;
  int stall_count_ = 0;
  std::vector<GenerationRecord> trace_;
  double start_time_ = 0;
  bool initialised_ = false;

  void add_member(std::vector<Conformation>& next, Conformation candidate,
                  const Conformation& parent, RngStream& rng) const;
  void note_best(const Conformation&);
  double now_seconds() const;
};

}  // namespace fccfold
