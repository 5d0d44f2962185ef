#include "fccfold/energy.hpp"

#include <fstream>
#include <sstream>

#include "fccfold/errors.hpp"

#include "embedded_data.inc"

namespace fccfold {

ContactMatrix ContactMatrix::parse(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw MatrixParseError("missing header line");
  {
    std::istringstream hs(header);
    std::string name;
    for (int i = 0; i < 20; ++i) {
      if (!(hs >> name) || name != residue_names()[static_cast<std::size_t>(i)])
        throw MatrixParseError("header must list the 20 residue names in row order");
    }
    if (hs >> name) throw MatrixParseError("trailing token in header: " + name);
  }
  ContactMatrix m;
  for (int i = 0; i < 20; ++i) {
    std::string line;
    if (!std::getline(in, line)) throw MatrixParseError("missing matrix row " + std::to_string(i));
    std::istringstream ls(line);
    for (int j = 0; j <= i; ++j) {
      double v;
      if (!(ls >> v))
        throw MatrixParseError("row " + std::to_string(i) + " needs " + std::to_string(i + 1) +
                               " values");
      m.v_[static_cast<std::size_t>(i) * 20 + j] = v;
      m.v_[static_cast<std::size_t>(j) * 20 + i] = v;  // mirror
    }
    double extra;
    if (ls >> extra) throw MatrixParseError("row " + std::to_string(i) + " has extra values");
  }
  return m;
}

ContactMatrix ContactMatrix::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MatrixParseError("cannot open " + path.string());
  return parse(in);
}

const ContactMatrix& ContactMatrix::mj() {
  static const ContactMatrix m = [] {
    std::istringstream in{std::string(embedded::contact_matrix_text)};
    return parse(in);
  }();
  return m;
}

const ContactMatrix& ContactMatrix::hp() {
  static const ContactMatrix m = [] {
    ContactMatrix hp;
    for (int i = 0; i < 20; ++i) {
      const bool hi = classify(residue_code(i)) == HpClass::H;
      for (int j = 0; j < 20; ++j) {
        const bool hj = classify(residue_code(j)) == HpClass::H;
        hp.v_[static_cast<std::size_t>(i) * 20 + j] = (hi && hj) ? -1.0 : 0.0;
      }
    }
    return hp;
  }();
  return m;
}

std::string_view model_name(EnergyModel m) {
  switch (m) {
    case EnergyModel::Hp: return "hp";
    case EnergyModel::Mj: return "mj";
    case EnergyModel::Mh: return "mh";
  }
  throw ConfigError("bad model enum");
}

EnergyModel parse_model(std::string_view name) {
  if (name == "hp") return EnergyModel::Hp;
  if (name == "mj") return EnergyModel::Mj;
  if (name == "mh") return EnergyModel::Mh;
  throw ConfigError("unknown model '" + std::string(name) + "' (expected hp, mj or mh)");
}

const ContactMatrix& objective_matrix(EnergyModel model) {
  return model == EnergyModel::Hp ? ContactMatrix::hp() : ContactMatrix::mj();
}

double energy_of(const Conformation& conf, const Sequence& seq, const ContactMatrix& m) {
  const auto& pts = conf.points();
  const auto& occ = conf.occupancy();
  double sum = 0;
  for (std::size_t i = 0; i + 2 < pts.size(); ++i) {
    for (const LatticePoint& q : neighbours(pts[i])) {
      const auto j = occ.find(q);
      if (j && static_cast<std::size_t>(*j) >= i + 2)
        sum += m.at(seq[i].index, seq[static_cast<std::size_t>(*j)].index);
    }
  }
  return sum;
}

double energy_pairwise(const Conformation& conf, const Sequence& seq, const ContactMatrix& m) {
  const auto& pts = conf.points();
  double sum = 0;
  for (std::size_t i = 0; i + 2 < pts.size(); ++i)
    for (std::size_t j = i + 2; j < pts.size(); ++j)
      if (is_contact(pts[i], pts[j])) sum += m.at(seq[i].index, seq[j].index);
  return sum;
}

double evaluate(Conformation& conf, const Sequence& seq, const ContactMatrix& m) {
  const double e = energy_of(conf, seq, m);
  conf.set_fitness(e);
  return e;
}

double hp_energy(const Conformation& conf, const Sequence& seq) {
  return energy_of(conf, seq, ContactMatrix::hp());
}

double mj_energy(const Conformation& conf, const Sequence& seq) {
  return energy_of(conf, seq, ContactMatrix::mj());
}

}  // namespace fccfold
