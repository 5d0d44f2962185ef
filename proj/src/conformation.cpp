#include "fccfold/conformation.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "fccfold/errors.hpp"

namespace fccfold {

std::optional<Conformation> Conformation::try_from_directions(std::span<const std::uint8_t> dirs) {
  Conformation c;
  c.points_.reserve(dirs.size() + 1);
  c.occupancy_ = OccupancyIndex(dirs.size() + 1);
  LatticePoint p{};
  c.points_.push_back(p);
  c.occupancy_.insert(p, 0);
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    p = p + kBasis[dirs[i]];
    if (!c.occupancy_.is_free(p)) return std::nullopt;
    c.occupancy_.insert(p, static_cast<int>(i + 1));
    c.points_.push_back(p);
  }
  c.directions_.assign(dirs.begin(), dirs.end());
  return c;
}

Conformation Conformation::from_directions(std::span<const std::uint8_t> dirs) {
  // Re-walk on failure to report the offending index.
  if (auto c = try_from_directions(dirs)) return std::move(*c);
  OccupancyIndex occ(dirs.size() + 1);
  LatticePoint p{};
  occ.insert(p, 0);
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    p = p + kBasis[dirs[i]];
    if (!occ.is_free(p)) throw SelfCollision(i + 1);
    occ.insert(p, static_cast<int>(i + 1));
  }
  throw SelfCollision(0);  // unreachable
}

std::optional<Conformation> Conformation::try_from_points(std::vector<LatticePoint> pts) {
  if (pts.size() < 2) return std::nullopt;  // a chain needs at least one step
  Conformation c;
  c.directions_.reserve(pts.size() - 1);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const auto d = basis_index(pts[i] - pts[i - 1]);
    if (!d) return std::nullopt;  // consecutive residues must be neighbours
    c.directions_.push_back(*d);
  }
  c.occupancy_ = OccupancyIndex(pts.size());
  const LatticePoint origin = pts.front();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const LatticePoint p = pts[i] - origin;
    if (!c.occupancy_.is_free(p)) return std::nullopt;
    c.occupancy_.insert(p, static_cast<int>(i));
    pts[i] = p;
  }
  c.points_ = std::move(pts);
  return c;
}

Conformation Conformation::straight_chain(std::size_t n) {
  std::vector<std::uint8_t> dirs(n > 0 ? n - 1 : 0, 0);
  return from_directions(dirs);
}

std::string Conformation::canonical_key() const {
  std::string key;
  key.reserve(directions_.size());
  for (std::uint8_t d : directions_) key.push_back(static_cast<char>('a' + d));
  return key;
}

std::optional<Conformation> Conformation::with_point_moved(std::size_t pos,
                                                           LatticePoint target) const {
  std::vector<LatticePoint> pts = points_;
  pts.at(pos) = target;
  return try_from_points(std::move(pts));
}

double diversity(const Conformation& a, const Conformation& b) {
  const auto& da = a.directions();
  const auto& db = b.directions();
  if (da.size() != db.size())
    throw LengthMismatch("diversity needs equal-length chains: " + std::to_string(da.size() + 1) +
                         " vs " + std::to_string(db.size() + 1));
  std::size_t diff = 0;
  for (std::size_t i = 0; i < da.size(); ++i)
    if (da[i] != db[i]) ++diff;
  return static_cast<double>(diff) / static_cast<double>(da.size());
}

HydrophobicCentre hydrophobic_centre(const Conformation& conf, const Sequence& seq) {
  double sx = 0, sy = 0, sz = 0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i].hp != HpClass::H) continue;
    const LatticePoint p = conf.points()[i];
    sx += p.x;
    sy += p.y;
    sz += p.z;
    ++count;
  }
  if (count == 0) throw NoHydrophobicResidues();
  const double n = static_cast<double>(count);
  return {sx / n, sy / n, sz / n};
}

double squared_distance_to(LatticePoint p, const HydrophobicCentre& c) {
  const double dx = p.x - c.x, dy = p.y - c.y, dz = p.z - c.z;
  return dx * dx + dy * dy + dz * dz;
}

void write_dump(std::ostream& out, const Conformation& conf, const Sequence& seq, double energy,
                EnergyModel model) {
  if (conf.size() != seq.size())
    throw LengthMismatch("dump needs matching chain and sequence lengths");
  char buf[128];
  for (std::size_t i = 0; i < conf.size(); ++i) {
    const LatticePoint p = conf.points()[i];
    std::snprintf(buf, sizeof buf, "%zu %d %d %d %c\n", i, p.x, p.y, p.z, seq[i].code);
    out << buf;
  }
  // %.17g round-trips doubles exactly
  std::snprintf(buf, sizeof buf, "energy %.17g model %s\n", energy,
                std::string(model_name(model)).c_str());
  out << buf;
}

DumpRecord read_dump(std::istream& in) {
  std::vector<LatticePoint> pts;
  std::string letters;
  std::string line;
  bool have_trailer = false;
  double energy = 0;
  EnergyModel model = EnergyModel::Mj;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    if (line.rfind("energy", 0) == 0) {
      std::string kw_energy, kw_model, name;
      if (!(ls >> kw_energy >> energy >> kw_model >> name) || kw_model != "model")
        throw DumpParseError("bad trailer line: " + line);
      model = parse_model(name);
      have_trailer = true;
      break;
    }
    std::size_t idx;
    LatticePoint p;
    char code;
    if (!(ls >> idx >> p.x >> p.y >> p.z >> code))
      throw DumpParseError("bad residue line: " + line);
    if (idx != pts.size()) throw DumpParseError("residue indices must count up from 0");
    pts.push_back(p);
    letters.push_back(code);
  }
  if (!have_trailer) throw DumpParseError("missing trailer line");
  auto conf = Conformation::try_from_points(std::move(pts));
  if (!conf) throw DumpParseError("dumped points do not form a valid chain");
  return {std::move(*conf), Sequence::from_letters(letters), energy, model};
}

}  // namespace fccfold
