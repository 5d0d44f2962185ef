#include "fccfold/metrics.hpp"

#include <cmath>
#include <fstream>
#include <istream>

#include "fccfold/errors.hpp"

namespace fccfold {

double lattice_unit_scale() { return kStepAngstroms / std::sqrt(2.0); }

std::vector<std::array<double, 3>> scaled_coords(const Conformation& conf) {
  const double s = lattice_unit_scale();
  std::vector<std::array<double, 3>> out;
  out.reserve(conf.size());
  for (const LatticePoint& p : conf.points()) out.push_back({p.x * s, p.y * s, p.z * s});
  return out;
}

namespace {

double pair_distance(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

}  // namespace

double rmsd(std::span<const std::array<double, 3>> a, std::span<const std::array<double, 3>> b) {
  const std::size_t n = a.size();
  if (n != b.size()) throw LengthMismatch("distance-matrix comparison needs equal lengths");
  if (n < 2) throw LengthMismatch("distance-matrix comparison needs at least two residues");
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = pair_distance(a[i], a[j]) - pair_distance(b[i], b[j]);
      sum += d * d;
      ++pairs;
    }
  return std::sqrt(sum / static_cast<double>(pairs));
}

double rmsd(const Conformation& conf, const NativeStructure& native) {
  const auto coords = scaled_coords(conf);
  return rmsd(std::span<const std::array<double, 3>>(coords),
              std::span<const std::array<double, 3>>(native.coords));
}

double relative_improvement(double target, double reference) {
  if (reference == 0.0) throw ZeroReference();
  return (target - reference) / reference * 100.0;
}

NativeStructure parse_native(std::istream& in) {
  NativeStructure out;
  long long n = 0;  // signed read rejects negative counts instead of wrapping
  if (!(in >> out.id >> n)) throw NativeParseError("bad header; expected: id count");
  if (n < 2) throw NativeParseError("reference structure needs at least two residues");
  if (n > 1000000) throw NativeParseError("implausible residue count " + std::to_string(n));
  const std::size_t count = static_cast<std::size_t>(n);
  out.coords.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::array<double, 3> v{};
    if (!(in >> v[0] >> v[1] >> v[2]))
      throw NativeParseError("short coordinate list; expected " + std::to_string(count) + " rows");
    out.coords.push_back(v);
  }
  double extra = 0.0;
  if (in >> extra) throw NativeParseError("trailing data after coordinate rows");
  return out;
}

NativeStructure load_native(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw NativeParseError("cannot open " + path.string());
  return parse_native(in);
}

RunSetSummary summarize(std::span<const RunSummaryInput> runs, const NativeStructure* native) {
  if (runs.empty()) throw EmptyRunSet();
  RunSetSummary out{};
  out.runs = runs.size();
  out.best_energy = runs[0].best_energy;
  double sum = 0.0;
  std::size_t argbest = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    sum += runs[i].best_energy;
    if (runs[i].best_energy < out.best_energy) {
      out.best_energy = runs[i].best_energy;
      argbest = i;
    }
  }
  out.mean_energy = sum / static_cast<double>(runs.size());
  if (native) {
    for (const RunSummaryInput& run : runs) {
      if (!run.best) continue;
      const double r = rmsd(*run.best, *native);
      if (!out.best_rmsd || r < *out.best_rmsd) out.best_rmsd = r;
    }
    if (runs[argbest].best) out.rmsd_of_best = rmsd(*runs[argbest].best, *native);
  }
  return out;
}

}  // namespace fccfold
