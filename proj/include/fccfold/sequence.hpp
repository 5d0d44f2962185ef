#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace fccfold {

enum class HpClass : std::uint8_t { H, P };

// Residue indices follow the contact-matrix row order.
int residue_index(char code);              // throws UnknownResidue
char residue_code(int index);
const std::array<std::string_view, 20>& residue_names();  // three-letter, same order
HpClass classify(char code);               // throws UnknownResidue

struct AminoAcid {
  char code;
  std::uint8_t index;  // contact-matrix row
  HpClass hp;
};

class Sequence {
 public:
  // Accepts bare residue letters or a single FASTA record (one optional
  // '>' header line). Uppercase only; whitespace is ignored; needs >= 2
  // residues. Throws UnknownResidue / EmptySequence.
  static Sequence parse(std::string_view text);
  static Sequence from_letters(std::string_view letters, std::string id = "");

  const std::string& id() const { return id_; }
  std::size_t size() const { return residues_.size(); }
  const AminoAcid& operator[](std::size_t i) const { return residues_[i]; }
  const std::vector<AminoAcid>& residues() const { return residues_; }

  std::string letters() const;
  std::string hp_string() const;  // 'H'/'P' per residue
  std::size_t hydrophobic_count() const;

  std::string to_fasta(std::size_t line_width = 60) const;

 private:
  std::string id_;
  std::vector<AminoAcid> residues_;
};

// Benchmark records compiled into the library (same bytes as the files
// under data/benchmarks/).
std::vector<std::string> bundled_ids();
Sequence bundled_sequence(std::string_view id);  // throws UnknownSequenceId

}  // namespace fccfold
