#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>

#include "fccfold/conformation.hpp"
#include "fccfold/model.hpp"
#include "fccfold/sequence.hpp"

namespace fccfold {

// Symmetric 20x20 residue-pair potential.
class ContactMatrix {
 public:
  // Statistical contact potential, parsed from the text baked in at build
  // time (identical to data/mj_matrix.txt).
  static const ContactMatrix& mj();

  // -1 for hydrophobic-hydrophobic pairs, 0 otherwise.
  static const ContactMatrix& hp();

  // Header line with the 20 residue names in row order, then row k with k
  // values (lower triangle). Throws MatrixParseError.
  static ContactMatrix parse(std::istream&);
  static ContactMatrix load(const std::filesystem::path&);

  double at(int i, int j) const { return v_[static_cast<std::size_t>(i) * 20 + j]; }
  double pair(char a, char b) const { return at(residue_index(a), residue_index(b)); }

 private:
  std::array<double, 400> v_{};
};

// Search objective per model: Hp scores with hp(), Mj and Mh with mj().
const ContactMatrix& objective_matrix(EnergyModel);

// Sum of pair potentials over topological contacts: residues i, j with
// j >= i + 2 at squared distance 2. Probes the occupancy index, O(12 n).
double energy_of(const Conformation&, const Sequence&, const ContactMatrix&);

// Same sum via the all-pairs scan, O(n^2); reference route for tests.
double energy_pairwise(const Conformation&, const Sequence&, const ContactMatrix&);

// energy_of + stores the value in the conformation's fitness cache.
double evaluate(Conformation&, const Sequence&, const ContactMatrix&);

double hp_energy(const Conformation&, const Sequence&);
double mj_energy(const Conformation&, const Sequence&);

}  // namespace fccfold
