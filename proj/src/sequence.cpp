#include "fccfold/sequence.hpp"

#include <algorithm>
#include <cctype>
#include <string_view>

#include "fccfold/errors.hpp"

#include "embedded_data.inc"

namespace fccfold {

namespace {

// Row order of the contact matrix.
constexpr std::array<char, 20> kCodes = {'C', 'M', 'F', 'I', 'L', 'V', 'W', 'Y', 'A', 'G',
                                         'T', 'S', 'Q', 'N', 'E', 'D', 'H', 'R', 'K', 'P'};

constexpr std::array<std::string_view, 20> kNames = {
    "CYS", "MET", "PHE", "ILE", "LEU", "VAL", "TRP", "TYR", "ALA", "GLY",
    "THR", "SER", "GLN", "ASN", "GLU", "ASP", "HIS", "ARG", "LYS", "PRO"};

// Hydrophobic set: G A P V L I M F Y W. In matrix order that is rows 1..9
// plus PRO.
constexpr bool is_hydrophobic_index(int idx) { return (idx >= 1 && idx <= 9) || idx == 19; }

int lookup(char code) {
  for (std::size_t i = 0; i < kCodes.size(); ++i)
    if (kCodes[i] == code) return static_cast<int>(i);
  return -1;
}

}  // namespace

int residue_index(char code) {
  const int idx = lookup(code);
  if (idx < 0) throw UnknownResidue(code, 0);
  return idx;
}

char residue_code(int index) { return kCodes.at(static_cast<std::size_t>(index)); }

const std::array<std::string_view, 20>& residue_names() { return kNames; }

HpClass classify(char code) {
  return is_hydrophobic_index(residue_index(code)) ? HpClass::H : HpClass::P;
}

Sequence Sequence::from_letters(std::string_view letters, std::string id) {
  Sequence s;
  s.id_ = std::move(id);
  s.residues_.reserve(letters.size());
  for (std::size_t i = 0; i < letters.size(); ++i) {
    const char c = letters[i];
    const int idx = lookup(c);
    if (idx < 0) throw UnknownResidue(c, i);
    s.residues_.push_back({c, static_cast<std::uint8_t>(idx),
                           is_hydrophobic_index(idx) ? HpClass::H : HpClass::P});
  }
  if (s.residues_.size() < 2)
    throw EmptySequence("sequence needs at least 2 residues, got " +
                        std::to_string(s.residues_.size()));
  return s;
}

Sequence Sequence::parse(std::string_view text) {
  std::string id;
  std::string letters;
  std::size_t pos = 0;
  bool saw_header = false;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
    while (!line.empty() && line.front() == ' ') line.remove_prefix(1);
    if (line.empty()) continue;
    if (line.front() == '>') {
      if (saw_header || !letters.empty())
        throw EmptySequence("multi-record FASTA input is not supported");
      saw_header = true;
      line.remove_prefix(1);
      const std::size_t sp = line.find_first_of(" \t");
      id = std::string(line.substr(0, sp));
      continue;
    }
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) letters.push_back(c);
  }
  return from_letters(letters, std::move(id));
}

std::string Sequence::letters() const {
  std::string out;
  out.reserve(residues_.size());
  for (const AminoAcid& a : residues_) out.push_back(a.code);
  return out;
}

std::string Sequence::hp_string() const {
  std::string out;
  out.reserve(residues_.size());
  for (const AminoAcid& a : residues_) out.push_back(a.hp == HpClass::H ? 'H' : 'P');
  return out;
}

std::size_t Sequence::hydrophobic_count() const {
  return static_cast<std::size_t>(
      std::count_if(residues_.begin(), residues_.end(),
                    [](const AminoAcid& a) { return a.hp == HpClass::H; }));
}

std::string Sequence::to_fasta(std::size_t line_width) const {
  std::string out = ">" + id_ + "\n";
  const std::string seq = letters();
  for (std::size_t i = 0; i < seq.size(); i += line_width) {
    out += seq.substr(i, line_width);
    out += '\n';
  }
  return out;
}

std::vector<std::string> bundled_ids() {
  std::vector<std::string> out;
  for (const auto& rec : embedded::fasta_records) out.emplace_back(rec.id);
  return out;
}

Sequence bundled_sequence(std::string_view id) {
  for (const auto& rec : embedded::fasta_records)
    if (rec.id == id) return Sequence::parse(rec.text);
  throw UnknownSequenceId(std::string(id));
}

}  // namespace fccfold
