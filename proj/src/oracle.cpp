#include "fccfold/oracle.hpp"

#include <algorithm>
#include <vector>

#include "fccfold/errors.hpp"

namespace fccfold {

namespace {

// Is `dirs` lexicographically minimal among its images under all proper
// lattice rotations? Early-exits per rotation at the first differing entry.
bool is_canonical(const std::vector<std::uint8_t>& dirs) {
  for (const LatticeRotation& rot : lattice_rotations()) {
    if (rot.is_identity()) continue;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      const std::uint8_t mapped = rot.basis_map[dirs[i]];
      if (mapped < dirs[i]) return false;  // a strictly smaller image exists
      if (mapped > dirs[i]) break;         // this rotation's image is larger
    }
  }
  return true;
}

template <typename Leaf>
void dfs(std::size_t n, const OracleOptions& opts, std::vector<std::uint8_t>& dirs,
         std::vector<LatticePoint>& pts, const Leaf& leaf) {
  if (pts.size() == n) {
    if (!opts.symmetry_reduce || is_canonical(dirs)) leaf(dirs, pts);
    return;
  }
  // Fixing the first step to basis 0 kills most of the rotation group up
  // front; the leaf-level canonical check removes the stabiliser's images.
  const std::uint8_t limit = (opts.symmetry_reduce && pts.size() == 1) ? 1 : kDirections;
  for (std::uint8_t d = 0; d < limit; ++d) {
    const LatticePoint q = pts.back() + kBasis[d];
    // Chains this short are fastest to probe with a linear scan.
    if (std::find(pts.begin(), pts.end(), q) != pts.end()) continue;
    dirs.push_back(d);
    pts.push_back(q);
    dfs(n, opts, dirs, pts, leaf);
    dirs.pop_back();
    pts.pop_back();
  }
}

void check_length(std::size_t n, const OracleOptions& opts) {
  if (n < 2) throw ConfigError("exhaustive enumeration needs a chain of at least 2 residues");
  if (n > opts.max_length) throw TooLong(n, opts.max_length);
}

template <typename Leaf>
void run_dfs(std::size_t n, const OracleOptions& opts, const Leaf& leaf) {
  std::vector<std::uint8_t> dirs;
  std::vector<LatticePoint> pts{LatticePoint{0, 0, 0}};
  dirs.reserve(n - 1);
  pts.reserve(n);
  dfs(n, opts, dirs, pts, leaf);
}

}  // namespace

void enumerate_saws(std::size_t n, const OracleOptions& opts,
                    const std::function<void(std::span<const std::uint8_t>)>& emit) {
  check_length(n, opts);
  run_dfs(n, opts,
          [&](const std::vector<std::uint8_t>& d, const std::vector<LatticePoint>&) { emit(d); });
}

std::uint64_t count_saws(std::size_t n, bool symmetry_reduce, std::size_t max_length) {
  OracleOptions opts;
  opts.symmetry_reduce = symmetry_reduce;
  opts.max_length = max_length;
  std::uint64_t count = 0;
  enumerate_saws(n, opts, [&](std::span<const std::uint8_t>) { ++count; });
  return count;
}

std::vector<std::uint8_t> canonical_directions(std::span<const std::uint8_t> dirs) {
  std::vector<std::uint8_t> best(dirs.begin(), dirs.end());
  std::vector<std::uint8_t> mapped(dirs.size());
  for (const LatticeRotation& rot : lattice_rotations()) {
    for (std::size_t i = 0; i < dirs.size(); ++i) mapped[i] = rot.basis_map[dirs[i]];
    if (mapped < best) best = mapped;
  }
  return best;
}

OptimumResult exact_optimum(const Sequence& seq, const ContactMatrix& m,
                            const OracleOptions& opts) {
  const std::size_t n = seq.size();
  check_length(n, opts);

  // Energies here come from a direct all-pairs scan over the coordinates,
  // deliberately independent of the occupancy-probe evaluation route.
  const auto direct_energy = [&](const std::vector<LatticePoint>& pts) {
    double e = 0.0;
    for (std::size_t i = 0; i + 2 < n; ++i)
      for (std::size_t j = i + 2; j < n; ++j)
        if (is_contact(pts[i], pts[j])) e += m.at(seq[i].index, seq[j].index);
    return e;
  };

  OptimumResult out;
  out.walks = 0;
  bool have = false;
  run_dfs(n, opts, [&](const std::vector<std::uint8_t>& d, const std::vector<LatticePoint>& p) {
    ++out.walks;
    const double e = direct_energy(p);
    if (!have || e < out.energy) {
      have = true;
      out.energy = e;
      out.argmin = d;
    }
  });
  return out;
}

}  // namespace fccfold
