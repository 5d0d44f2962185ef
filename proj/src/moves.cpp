#include "fccfold/moves.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "fccfold/errors.hpp"

namespace fccfold {

std::string_view move_name(MoveKind k) {
  switch (k) {
    case MoveKind::Crossover: return "crossover";
    case MoveKind::Rotation: return "rotation";
    case MoveKind::Diagonal: return "diagonal";
    case MoveKind::Pull: return "pull";
    case MoveKind::Tilt: return "tilt";
    case MoveKind::Macro: return "macro";
  }
  throw std::invalid_argument("bad move kind");
}

// --- crossover -------------------------------------------------------------

std::pair<std::optional<Conformation>, std::optional<Conformation>> splice(
    const Conformation& a, const Conformation& b, std::size_t pos) {
  const auto& da = a.directions();
  const auto& db = b.directions();
  if (da.size() != db.size())
    throw LengthMismatch("crossover needs equal-length chains");
  if (pos < 1 || pos > da.size())
    throw std::out_of_range("splice point out of range");
  std::vector<std::uint8_t> child(da.size());
  std::copy(da.begin(), da.begin() + static_cast<long>(pos), child.begin());
  std::copy(db.begin() + static_cast<long>(pos), db.end(), child.begin() + static_cast<long>(pos));
  auto first = Conformation::try_from_directions(child);
  std::copy(db.begin(), db.begin() + static_cast<long>(pos), child.begin());
  std::copy(da.begin() + static_cast<long>(pos), da.end(), child.begin() + static_cast<long>(pos));
  auto second = Conformation::try_from_directions(child);
  return {std::move(first), std::move(second)};
}

std::optional<std::pair<Conformation, Conformation>> crossover(const Conformation& a,
                                                               const Conformation& b,
                                                               std::size_t pos) {
  auto [first, second] = splice(a, b, pos);
  if (!first || !second) return std::nullopt;
  return std::make_pair(std::move(*first), std::move(*second));
}

// --- rotation ----------------------------------------------------------------

std::optional<Conformation> rotation_move(const Conformation& conf, std::size_t pos,
                                          const LatticeRotation& rot) {
  const std::size_t n = conf.size();
  if (pos >= n) throw std::out_of_range("pivot out of range");
  if (pos < 1 || pos > n - 2) return std::nullopt;
  std::vector<LatticePoint> pts = conf.points();
  const LatticePoint pivot = pts[pos];
  for (std::size_t j = pos + 1; j < n; ++j) pts[j] = rot.apply(pts[j] - pivot) + pivot;
  return Conformation::try_from_points(std::move(pts));
}

// --- diagonal -----------------------------------------------------------------

std::vector<LatticePoint> diagonal_targets(const Conformation& conf, std::size_t pos) {
  const std::size_t n = conf.size();
  if (pos >= n) throw std::out_of_range("position out of range");
  std::vector<LatticePoint> out;
  if (pos < 1 || pos > n - 2) return out;
  const LatticePoint a = conf.points()[pos - 1];
  const LatticePoint c = conf.points()[pos + 1];
  for (const LatticePoint& q : neighbours(a))
    if (is_contact(q, c) && conf.occupancy().is_free(q)) out.push_back(q);
  return out;
}

std::optional<Conformation> diagonal_move(const Conformation& conf, std::size_t pos,
                                          LatticePoint target) {
  const std::size_t n = conf.size();
  if (pos >= n) throw std::out_of_range("position out of range");
  if (pos < 1 || pos > n - 2) return std::nullopt;
  if (!conf.occupancy().is_free(target)) return std::nullopt;
  // with_point_moved re-validates bonds and self-avoidance
  return conf.with_point_moved(pos, target);
}

// --- pull ---------------------------------------------------------------------

namespace {

// Enumerate candidates for one side. Propagation runs toward `side`; the
// anchor neighbour sits on the other side.
void pull_side_candidates(const Conformation& conf, std::size_t pos, PullSide side,
                          std::vector<PullCandidate>& out) {
  const auto& pts = conf.points();
  const auto& occ = conf.occupancy();
  const std::size_t n = pts.size();
  const bool head = side == PullSide::Head;
  const bool has_anchor = head ? pos + 1 < n : pos > 0;
  const bool has_dragged = head ? pos > 0 : pos + 1 < n;
  const LatticePoint own = pts[pos];
  const LatticePoint anchor = has_anchor ? pts[head ? pos + 1 : pos - 1] : own;
  const LatticePoint dragged = has_dragged ? pts[head ? pos - 1 : pos + 1] : own;

  if (!has_dragged) {
    // Chain end moving toward its only neighbour: plain flips.
    for (const LatticePoint& l : neighbours(anchor))
      if (occ.is_free(l)) out.push_back({pos, side, l, std::nullopt});
    return;
  }

  if (has_anchor) {
    for (const LatticePoint& l : neighbours(anchor)) {
      if (!occ.is_free(l)) continue;
      if (is_contact(l, dragged)) {
        // L keeps the bond to the dragged neighbour: pos moves alone. A
        // two-point move from here would strand the drag without an inverse.
        out.push_back({pos, side, l, std::nullopt});
        continue;
      }
      // C rehomes the dragged neighbour; it must touch both L and the
      // vacated position of pos so the drag can reconnect through it.
      for (const LatticePoint& c : neighbours(l))
        if (is_contact(c, own) && occ.is_free(c))
          out.push_back({pos, side, l, c});
    }
    return;
  }
  // End without an anchor: the end residue steps to any free L two cells
  // out, its neighbour rehomed to a free C bridging L and the end's old
  // cell. L touching the dragged neighbour's old site is excluded; such
  // moves would block the unwinding drag of the inverse pull.
  for (const LatticePoint& c : neighbours(own)) {
    if (!occ.is_free(c)) continue;
    for (const LatticePoint& l : neighbours(c))
      if (occ.is_free(l) && !is_contact(l, dragged))
        out.push_back({pos, side, l, c});
  }
}

}  // namespace

std::vector<PullCandidate> pull_candidates(const Conformation& conf, std::size_t pos) {
  const std::size_t n = conf.size();
  if (pos >= n) throw std::out_of_range("position out of range");
  std::vector<PullCandidate> out;
  // Nearer end first; ties go toward the tail.
  const std::size_t head_len = pos, tail_len = n - 1 - pos;
  const PullSide first = head_len < tail_len ? PullSide::Head : PullSide::Tail;
  const PullSide second = first == PullSide::Head ? PullSide::Tail : PullSide::Head;
  pull_side_candidates(conf, pos, first, out);
  pull_side_candidates(conf, pos, second, out);
  return out;
}

Conformation apply_pull(const Conformation& conf, const PullCandidate& cand) {
  const auto& old = conf.points();
  const std::size_t n = old.size();
  std::vector<LatticePoint> pts = old;
  pts[cand.pos] = cand.l;
  if (cand.c) {
    const bool head = cand.side == PullSide::Head;
    const long step = head ? -1 : 1;
    long j = static_cast<long>(cand.pos) + step;
    pts[static_cast<std::size_t>(j)] = *cand.c;
    // Drag successive residues along vacated positions until the chain
    // reconnects.
    j += step;
    while (j >= 0 && j < static_cast<long>(n)) {
      const std::size_t uj = static_cast<std::size_t>(j);
      if (is_contact(old[uj], pts[static_cast<std::size_t>(j - step)])) break;
      pts[uj] = old[static_cast<std::size_t>(j - 2 * step)];
      j += step;
    }
  }
  auto result = Conformation::try_from_points(std::move(pts));
  if (!result) throw std::logic_error("pull candidate produced an invalid chain");
  return std::move(*result);
}

std::optional<Conformation> pull_move(const Conformation& conf, std::size_t pos,
                                      std::size_t choice) {
  const auto cands = pull_candidates(conf, pos);
  if (choice >= cands.size()) return std::nullopt;
  return apply_pull(conf, cands[choice]);
}

std::optional<Conformation> random_pull(const Conformation& conf, RngStream& rng) {
  const std::size_t pos = rng.index(conf.size());
  const auto cands = pull_candidates(conf, pos);
  if (cands.empty()) return std::nullopt;
  return apply_pull(conf, cands[rng.index(cands.size())]);
}

// --- tilt ---------------------------------------------------------------------

std::optional<Conformation> tilt_move(const Conformation& conf, std::size_t pos,
                                      std::uint8_t offset) {
  const auto& old = conf.points();
  const auto& dirs = conf.directions();
  const std::size_t n = old.size();
  if (pos >= n) throw std::out_of_range("position out of range");
  if (offset >= kDirections) throw std::out_of_range("offset out of range");
  if (pos + 1 >= n) return std::nullopt;  // no forward bond to tilt
  // Maximal straight run starting at pos.
  const std::uint8_t run_dir = dirs[pos];
  std::size_t e = pos + 1;
  while (e < n - 1 && dirs[e] == run_dir) ++e;
  const LatticePoint w = kBasis[offset];
  if (w == kBasis[run_dir] || w == -kBasis[run_dir]) return std::nullopt;  // same line

  std::vector<LatticePoint> pts = old;
  for (std::size_t j = pos; j <= e; ++j) {
    pts[j] = old[j] + w;
    if (!conf.occupancy().is_free(pts[j])) return std::nullopt;
  }
  // Pull the flanks along vacated positions until they reconnect.
  for (long j = static_cast<long>(pos) - 1; j >= 0; --j) {
    const std::size_t uj = static_cast<std::size_t>(j);
    if (is_contact(old[uj], pts[uj + 1])) break;
    pts[uj] = old[uj + 1];
  }
  for (std::size_t j = e + 1; j < n; ++j) {
    if (is_contact(old[j], pts[j - 1])) break;
    pts[j] = old[j - 1];
  }
  return Conformation::try_from_points(std::move(pts));
}

std::optional<Conformation> tilt_move(const Conformation& conf, std::size_t pos) {
  for (std::uint8_t offset = 0; offset < kDirections; ++offset)
    if (auto r = tilt_move(conf, pos, offset)) return r;
  return std::nullopt;
}

// --- exhaustive wrappers ---------------------------------------------------------

namespace {

struct BestTracker {
  Conformation best;
  double energy;
  std::optional<std::size_t> applied_at;

  // Strict improvement only: ties keep the earlier candidate, so the parent
  // beats equal children and lower positions beat higher ones.
  void offer(Conformation&& cand, double e, std::size_t pos) {
    if (e < energy) {
      best = std::move(cand);
      energy = e;
      applied_at = pos;
    }
  }
};

}  // namespace

MutationResult do_mutation(const Conformation& parent, MoveKind op, const Sequence& seq,
                           const ContactMatrix& m) {
  const std::size_t n = parent.size();
  BestTracker t{parent, energy_of(parent, seq, m), std::nullopt};

  switch (op) {
    case MoveKind::Rotation:
      for (std::size_t pos = 1; pos + 1 < n; ++pos)
        for (const LatticeRotation& rot : lattice_rotations()) {
          if (rot.is_identity()) continue;
          if (auto c = rotation_move(parent, pos, rot))
            t.offer(std::move(*c), energy_of(*c, seq, m), pos);
        }
      break;
    case MoveKind::Diagonal:
      for (std::size_t pos = 1; pos + 1 < n; ++pos)
        for (const LatticePoint& q : diagonal_targets(parent, pos))
          if (auto c = diagonal_move(parent, pos, q))
            t.offer(std::move(*c), energy_of(*c, seq, m), pos);
      break;
    case MoveKind::Pull:
      for (std::size_t pos = 0; pos < n; ++pos)
        for (const PullCandidate& cand : pull_candidates(parent, pos)) {
          Conformation c = apply_pull(parent, cand);
          const double e = energy_of(c, seq, m);
          t.offer(std::move(c), e, pos);
        }
      break;
    case MoveKind::Tilt:
      for (std::size_t pos = 0; pos + 1 < n; ++pos)
        for (std::uint8_t offset = 0; offset < kDirections; ++offset)
          if (auto c = tilt_move(parent, pos, offset))
            t.offer(std::move(*c), energy_of(*c, seq, m), pos);
      break;
    case MoveKind::Crossover:
    case MoveKind::Macro:
      throw std::invalid_argument("do_mutation handles point operators only");
  }
  t.best.set_fitness(t.energy);
  return {std::move(t.best), t.energy, t.applied_at};
}

CrossoverResult do_crossover(const Conformation& a, const Conformation& b, const Sequence& seq,
                             const ContactMatrix& m) {
  std::vector<std::pair<double, Conformation>> pool;
  pool.emplace_back(energy_of(a, seq, m), a);
  pool.emplace_back(energy_of(b, seq, m), b);
  for (std::size_t pos = 1; pos < a.directions().size() + 1; ++pos) {
    auto [first, second] = splice(a, b, pos);
    if (first) {
      const double e = energy_of(*first, seq, m);
      pool.emplace_back(e, std::move(*first));
    }
    if (second) {
      const double e = energy_of(*second, seq, m);
      pool.emplace_back(e, std::move(*second));
    }
  }
  // Stable: equal energies keep pool order (parents first, then lower splice
  // points).
  std::size_t i0 = 0;
  for (std::size_t i = 1; i < pool.size(); ++i)
    if (pool[i].first < pool[i0].first) i0 = i;
  std::size_t i1 = i0 == 0 ? 1 : 0;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (i == i0) continue;
    if (pool[i].first < pool[i1].first) i1 = i;
  }
  if (i1 < i0) std::swap(i0, i1);  // keep pool order among the chosen two
  CrossoverResult out{std::move(pool[i0].second), std::move(pool[i1].second), pool[i0].first,
                      pool[i1].first};
  if (out.second_energy < out.first_energy) {
    std::swap(out.first, out.second);
    std::swap(out.first_energy, out.second_energy);
  }
  out.first.set_fitness(out.first_energy);
  out.second.set_fitness(out.second_energy);
  return out;
}

// --- macro-mutation ------------------------------------------------------------

Conformation macro_mutation(const Conformation& conf, const Sequence& seq,
                            const MacroParams& params, RngStream& rng,
                            std::vector<MacroStep>* log) {
  if (conf.size() != seq.size())
    throw LengthMismatch("macro-mutation needs matching chain and sequence lengths");
  Conformation work = conf;
  const std::size_t n = work.size();
  const bool any_h = seq.hydrophobic_count() > 0;

  for (int iter = 0; iter < params.repeat; ++iter) {
    if (!params.hp_guided) {
      // Unguided: first feasible diagonal move for every residue, in order.
      for (std::size_t pos = 1; pos + 1 < n; ++pos) {
        const auto targets = diagonal_targets(work, pos);
        if (targets.empty()) continue;
        const LatticePoint from = work.points()[pos];
        work = *work.with_point_moved(pos, targets.front());
        if (log) log->push_back({pos, seq[pos].hp, from, targets.front(), 0, 0});
      }
      continue;
    }

    const HpClass wanted = rng.bernoulli(params.p_polar) ? HpClass::P : HpClass::H;
    HydrophobicCentre centre{0, 0, 0};
    if (any_h) centre = hydrophobic_centre(work, seq);  // once per iteration

    for (std::size_t pos = 1; pos + 1 < n; ++pos) {
      if (seq[pos].hp != wanted) continue;
      const auto targets = diagonal_targets(work, pos);
      if (targets.empty()) continue;
      const LatticePoint from = work.points()[pos];
      if (wanted == HpClass::P) {
        work = *work.with_point_moved(pos, targets.front());
        if (log) log->push_back({pos, HpClass::P, from, targets.front(), 0, 0});
        continue;  // keep sweeping polar residues
      }
      // Hydrophobic: first target that does not move away from the centre,
      // then end this iteration.
      const double d_old = squared_distance_to(from, centre);
      bool moved = false;
      for (const LatticePoint& q : targets) {
        const double d_new = squared_distance_to(q, centre);
        if (d_new <= d_old) {
          work = *work.with_point_moved(pos, q);
          if (log) log->push_back({pos, HpClass::H, from, q, d_old, d_new});
          moved = true;
          break;
        }
      }
      if (moved) break;
    }
  }
  return work;
}

}  // namespace fccfold
