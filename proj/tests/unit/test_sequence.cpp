#include <map>
#include <set>
#include <string>

#include "doctest.h"
#include "fccfold/errors.hpp"
#include "fccfold/sequence.hpp"

using namespace fccfold;

TEST_SUITE("sequence") {
  TEST_CASE("hydrophobic and polar classes partition the twenty codes") {
    const std::string hydrophobic = "GAPVLIMFYW";
    const std::string polar = "STCNQKHRDE";
    for (char c : hydrophobic) CHECK(classify(c) == HpClass::H);
    for (char c : polar) CHECK(classify(c) == HpClass::P);
    CHECK(hydrophobic.size() + polar.size() == 20);
  }

  TEST_CASE("classify rejects non-residue letters") {
    for (char c : std::string("BJOUXZ?1 gs")) CHECK_THROWS_AS(classify(c), UnknownResidue);
  }

  TEST_CASE("residue index and code are inverse, matrix row order first") {
    const std::string row_order = "CMFILVWYAGTSQNEDHRKP";
    std::set<int> seen;
    for (std::size_t i = 0; i < row_order.size(); ++i) {
      const int idx = residue_index(row_order[i]);
      CHECK(idx == static_cast<int>(i));
      CHECK(residue_code(idx) == row_order[i]);
      seen.insert(idx);
    }
    CHECK(seen.size() == 20);
    const auto& names = residue_names();
    CHECK(names[0] == "CYS");
    CHECK(names[1] == "MET");
    CHECK(names[9] == "GLY");
    CHECK(names[19] == "PRO");
  }

  TEST_CASE("parse accepts bare letters and single FASTA records") {
    Sequence bare = Sequence::parse("GSGS");
    CHECK(bare.size() == 4);
    CHECK(bare.letters() == "GSGS");
    CHECK(bare.hp_string() == "HPHP");
    CHECK(bare.hydrophobic_count() == 2);

    Sequence fasta = Sequence::parse(">toy protein\nGS\nGS\n");
    CHECK(fasta.id() == "toy");
    CHECK(fasta.letters() == "GSGS");

    Sequence spaced = Sequence::parse("  G S\nG\tS ");
    CHECK(spaced.letters() == "GSGS");
  }

  TEST_CASE("histidine is a real residue and classifies polar") {
    Sequence s = Sequence::parse("HH");
    CHECK(s.size() == 2);
    CHECK(s.hp_string() == "PP");
  }

  TEST_CASE("parse rejects empty, too short and unknown input") {
    CHECK_THROWS_AS(Sequence::parse(""), EmptySequence);
    CHECK_THROWS_AS(Sequence::parse(">header only\n"), EmptySequence);
    CHECK_THROWS_AS(Sequence::parse("G"), EmptySequence);
    CHECK_THROWS_AS(Sequence::parse("GSXG"), UnknownResidue);
    CHECK_THROWS_AS(Sequence::parse("gs"), UnknownResidue);
    try {
      Sequence::parse("GSB");
    } catch (const UnknownResidue& e) {
      CHECK(e.code == 'B');
      CHECK(e.position == 2);
    }
  }

  TEST_CASE("bundled benchmark set has the frozen lengths and H-counts") {
    const std::map<std::string, std::pair<std::size_t, std::size_t>> expected = {
        {"1CTF", {74, 42}},   {"1ENH", {54, 20}},  {"1R69", {69, 30}},  {"1YPA", {64, 39}},
        {"2HFQ", {85, 39}},   {"2IGD", {61, 28}},  {"2J6A", {135, 69}}, {"3MQO", {120, 68}},
        {"3MQZ", {215, 120}}, {"3MR7", {189, 93}}, {"3MRO", {142, 68}}, {"3MSE", {180, 85}},
        {"3MX7", {90, 49}},   {"3NBM", {108, 62}}, {"3NO3", {238, 107}}, {"3NO7", {248, 123}},
        {"3ON7", {280, 147}}, {"3PNX", {160, 86}}, {"4PTI", {58, 30}},  {"4RXN", {54, 26}}};
    const auto ids = bundled_ids();
    REQUIRE(ids.size() == expected.size());
    for (const auto& id : ids) {
      REQUIRE(expected.count(id) == 1);
      const Sequence s = bundled_sequence(id);
      CHECK(s.id() == id);
      CHECK(s.size() == expected.at(id).first);
      CHECK(s.hydrophobic_count() == expected.at(id).second);
    }
    CHECK_THROWS_AS(bundled_sequence("9XYZ"), UnknownSequenceId);
  }

  TEST_CASE("bundled sequences round-trip through FASTA") {
    for (const auto& id : bundled_ids()) {
      const Sequence s = bundled_sequence(id);
      const Sequence back = Sequence::parse(s.to_fasta());
      CHECK(back.id() == s.id());
      CHECK(back.letters() == s.letters());
    }
  }

  TEST_CASE("to_fasta wraps residue lines at the requested width") {
    const Sequence s = bundled_sequence("1ENH");
    const std::string text = s.to_fasta(10);
    std::size_t line_start = text.find('\n') + 1;
    while (line_start < text.size()) {
      std::size_t line_end = text.find('\n', line_start);
      if (line_end == std::string::npos) line_end = text.size();
      CHECK(line_end - line_start <= 10);
      line_start = line_end + 1;
    }
  }
}
