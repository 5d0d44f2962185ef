#include "fccfold/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>
#include <unordered_set>

#include "fccfold/errors.hpp"

namespace fccfold {

void GaConfig::validate() const {
  if (population < 1) throw ConfigError("population must be at least 1");
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0 || !std::isfinite(w)) throw ConfigError("operator weights must be finite and >= 0");
    total += w;
  }
  if (total <= 0.0) throw ConfigError("operator weights must not all be zero");
  if (p_polar < 0.0 || p_polar > 1.0) throw ConfigError("p_polar must lie in [0, 1]");
  if (macro_repeat < 0) throw ConfigError("macro repeat must be >= 0");
  if (stagnation_window < 1) throw ConfigError("stagnation window must be >= 1");
  if (!(0.0 <= walk_energy_lo && walk_energy_lo <= walk_energy_hi))
    throw ConfigError("walk energy band must satisfy 0 <= lo <= hi");
  if (!(0.0 <= walk_diversity_lo && walk_diversity_lo <= walk_diversity_hi))
    throw ConfigError("walk diversity band must satisfy 0 <= lo <= hi");
  if (max_seconds && *max_seconds <= 0.0) throw ConfigError("time budget must be positive");
  if (init_restarts < 1) throw ConfigError("init restarts must be >= 1");
}

VariantPolicy variant_policy(EnergyModel model) {
  switch (model) {
    case EnergyModel::Hp: return {objective_matrix(EnergyModel::Hp), true};
    case EnergyModel::Mj: return {objective_matrix(EnergyModel::Mj), false};
    case EnergyModel::Mh: return {objective_matrix(EnergyModel::Mh), true};
  }
  throw ConfigError("unknown energy model");
}

MoveKind select_operator(const OperatorWeights& weights, RngStream& rng) {
  double total = 0.0;
  for (double w : weights) total += w;
  const double x = rng.unit() * total;
  double acc = 0.0;
  std::size_t last_nonzero = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    last_nonzero = i;
    acc += weights[i];
    if (x < acc) return static_cast<MoveKind>(i);
  }
  return static_cast<MoveKind>(last_nonzero);  // x == total edge
}

Conformation grow_member(std::size_t n, int restarts, RngStream& rng) {
  std::vector<LatticePoint> pts;
  std::vector<std::uint8_t> dirs;
  for (int attempt = 0; attempt < restarts; ++attempt) {
    pts.assign(1, LatticePoint{0, 0, 0});
    dirs.clear();
    OccupancyIndex occ(n);
    occ.insert(pts[0], 0);
    bool ok = true;
    for (std::size_t step = 0; step + 1 < n; ++step) {
      const std::uint8_t d = static_cast<std::uint8_t>(rng.index(kDirections));
      const LatticePoint q = pts.back() + kBasis[d];
      if (!occ.is_free(q)) {
        ok = false;  // abandon the attempt at the first collision
        break;
      }
      dirs.push_back(d);
      pts.push_back(q);
      occ.insert(q, pts.size() - 1);
    }
    if (ok) return Conformation::from_directions(dirs);
  }
  return Conformation::straight_chain(n);
}

std::vector<Conformation> initial_population(const Sequence& seq, const GaConfig& cfg,
                                             EnergyModel model, RngStream& rng) {
  const VariantPolicy policy = variant_policy(model);
  const std::size_t n = seq.size();
  std::vector<Conformation> pop;
  pop.reserve(cfg.population);
  std::unordered_set<std::string> keys;

  constexpr int kFreshRetries = 100;   // regrowths after a duplicate key
  constexpr int kPerturbRetries = 1000;  // random pulls once regrowth stalls

  for (std::size_t k = 0; k < cfg.population; ++k) {
    RngStream member = rng.split(k);
    Conformation cand = grow_member(n, cfg.init_restarts, member);
    for (int t = 0; t < kFreshRetries && keys.count(cand.canonical_key()); ++t)
      cand = grow_member(n, cfg.init_restarts, member);
    for (int t = 0; t < kPerturbRetries && keys.count(cand.canonical_key()); ++t)
      if (auto p = random_pull(cand, member)) cand = std::move(*p);
    auto [it, fresh] = keys.insert(cand.canonical_key());
    if (!fresh)
      throw InitialisationFailed("could not fill a duplicate-free population of " +
                                 std::to_string(cfg.population) + " chains of length " +
                                 std::to_string(n));
    evaluate(cand, seq, policy.objective);
    pop.push_back(std::move(cand));
  }
  return pop;
}

double relative_energy_change(double e0, double e1) {
  const double denom = std::max(std::abs(e0), std::abs(e1));
  if (denom == 0.0) return 0.0;
  return std::abs(e1 - e0) / denom;
}

Conformation walk_member(const Conformation& conf, const Sequence& seq, const ContactMatrix& m,
                         const GaConfig& cfg, RngStream& rng) {
  const double e0 = energy_of(conf, seq, m);
  const std::size_t n = conf.size();
  Conformation work = conf;
  const std::size_t max_sweeps = 10 * n;
  for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
    for (std::size_t pos = 0; pos < n; ++pos) {
      const auto cands = pull_candidates(work, pos);
      if (cands.empty()) continue;
      work = apply_pull(work, cands[rng.index(cands.size())]);
      const double e1 = energy_of(work, seq, m);
      const double rel = relative_energy_change(e0, e1);
      const double div = diversity(conf, work);
      if (rel >= cfg.walk_energy_lo && rel <= cfg.walk_energy_hi &&
          div >= cfg.walk_diversity_lo && div <= cfg.walk_diversity_hi) {
        work.set_fitness(e1);
        return work;
      }
    }
  }
  return conf;  // both bands never accepted; keep the member as it was
}

GradedGa::GradedGa(Sequence seq, GaConfig cfg, EnergyModel model)
    : seq_(std::move(seq)),
      cfg_(cfg),
      model_(model),
      objective_(variant_policy(model).objective),
      macro_guided_(variant_policy(model).macro_guided),
      base_(cfg.seed),
      scheduler_(base_.split(2)),
      best_(Conformation::straight_chain(seq_.size())) {
  cfg_.validate();
}

void GradedGa::initialise() {
  RngStream init = base_.split(1);
  pop_ = initial_population(seq_, cfg_, model_, init);
  has_best_ = false;
  for (const Conformation& c : pop_) note_best(c);
  generation_ = 0;
  stall_count_ = 0;
  trace_.clear();
  start_time_ = now_seconds();
  initialised_ = true;
}

void GradedGa::note_best(const Conformation& c) {
  const double e = *c.fitness();
  if (!has_best_ || e < best_energy_) {
    best_ = c;
    best_energy_ = e;
    has_best_ = true;
  }
}

double GradedGa::now_seconds() const {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

// Admit a candidate into the next population, keeping keys unique: on a key
// clash the parent is re-perturbed by single random pulls (bounded), and
// admitted as-is when even that fails.
void GradedGa::add_member(std::vector<Conformation>& next, Conformation candidate,
                          const Conformation& parent, RngStream& rng) const {
  static constexpr int kPerturbAttempts = 20;
  std::unordered_set<std::string> keys;
  keys.reserve(next.size());
  for (const Conformation& c : next) keys.insert(c.canonical_key());
  if (!keys.count(candidate.canonical_key())) {
    next.push_back(std::move(candidate));
    return;
  }
  for (int t = 0; t < kPerturbAttempts; ++t) {
    auto p = random_pull(parent, rng);
    if (!p) continue;
    if (!keys.count(p->canonical_key())) {
      evaluate(*p, seq_, objective_);
      next.push_back(std::move(*p));
      return;
    }
  }
  next.push_back(parent);  // give up; admit the duplicate parent
}

bool GradedGa::step() {
  if (!initialised_) initialise();
  if (cfg_.max_generations && generation_ >= *cfg_.max_generations) return false;
  if (cfg_.max_seconds && now_seconds() - start_time_ >= *cfg_.max_seconds) return false;

  const MoveKind op = select_operator(cfg_.weights, scheduler_);
  RngStream gen_stream = base_.split(3).split(generation_ + 1);
  const std::size_t pop = cfg_.population;

  std::vector<Conformation> next;
  next.reserve(pop);

  if (op == MoveKind::Crossover) {
    std::uint64_t slot = 0;
    while (next.size() < pop) {
      RngStream pair_stream = gen_stream.split(slot++);
      const std::size_t i = pair_stream.index(pop);
      std::size_t j = i;
      if (pop > 1) {
        j = pair_stream.index(pop - 1);
        if (j >= i) ++j;  // uniform over partners distinct from i
      }
      const CrossoverResult res = do_crossover(pop_[i], pop_[j], seq_, objective_);
      add_member(next, res.first, pop_[i], pair_stream);
      if (next.size() < pop) add_member(next, res.second, pop_[j], pair_stream);
    }
  } else if (op == MoveKind::Macro) {
    const MacroParams params{cfg_.macro_repeat, cfg_.p_polar, macro_guided_};
    for (std::size_t m = 0; m < pop; ++m) {
      RngStream ms = gen_stream.split(m);
      Conformation child = macro_mutation(pop_[m], seq_, params, ms);
      evaluate(child, seq_, objective_);
      add_member(next, std::move(child), pop_[m], ms);
    }
  } else {
    for (std::size_t m = 0; m < pop; ++m) {
      RngStream ms = gen_stream.split(m);
      MutationResult res = do_mutation(pop_[m], op, seq_, objective_);
      add_member(next, std::move(res.conformation), pop_[m], ms);
    }
  }

  double old_best = *pop_[0].fitness();
  for (const Conformation& c : pop_) old_best = std::min(old_best, *c.fitness());
  double new_best = *next[0].fitness();
  for (const Conformation& c : next) {
    new_best = std::min(new_best, *c.fitness());
    note_best(c);
  }
  const bool improved = new_best < old_best;
  pop_ = std::move(next);
  stall_count_ = improved ? 0 : stall_count_ + 1;

  bool walked = false;
  if (stall_count_ >= cfg_.stagnation_window) {
    RngStream walk_stream = base_.split(4).split(generation_ + 1);
    for (std::size_t m = 0; m < pop; ++m) {
      RngStream ms = walk_stream.split(m);
      pop_[m] = walk_member(pop_[m], seq_, objective_, cfg_, ms);
    }
    // Walks can land two members on the same key; restore uniqueness the
    // same way admissions do.
    std::unordered_set<std::string> keys;
    for (std::size_t m = 0; m < pop; ++m) {
      if (keys.insert(pop_[m].canonical_key()).second) continue;
      RngStream ms = walk_stream.split(pop + m);
      for (int t = 0; t < 20; ++t) {
        auto p = random_pull(pop_[m], ms);
        if (!p) continue;
        if (!keys.count(p->canonical_key())) {
          evaluate(*p, seq_, objective_);
          pop_[m] = std::move(*p);
          break;
        }
      }
      keys.insert(pop_[m].canonical_key());
    }
    for (const Conformation& c : pop_) note_best(c);
    stall_count_ = 0;
    walked = true;
  }

  ++generation_;
  double gen_best = *pop_[0].fitness();
  double sum = 0.0;
  for (const Conformation& c : pop_) {
    gen_best = std::min(gen_best, *c.fitness());
    sum += *c.fitness();
  }
  trace_.push_back({generation_, op, gen_best, sum / static_cast<double>(pop), best_energy_,
                    walked, now_seconds() - start_time_});
  return true;
}

RunResult GradedGa::run(const Observer& observer) {
  if (!cfg_.max_generations && !cfg_.max_seconds)
    throw ConfigError("a run needs a generation or time budget");
  if (!initialised_) initialise();
  while (step())
    if (observer) observer(*this, trace_.back());
  return {best_, best_energy_, trace_, generation_, now_seconds() - start_time_};
}

}  // namespace fccfold
