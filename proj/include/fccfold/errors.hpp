#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fccfold {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnknownResidue : Error {
  UnknownResidue(char code, std::size_t position)
      : Error("unknown residue '" + std::string(1, code) + "' at position " +
              std::to_string(position)),
        code(code),
        position(position) {}
  char code;
  std::size_t position;
};

struct EmptySequence : Error {
  using Error::Error;
};

struct UnknownSequenceId : Error {
  explicit UnknownSequenceId(const std::string& id)
      : Error("no bundled sequence named '" + id + "'") {}
};

struct SelfCollision : Error {
  explicit SelfCollision(std::size_t index)
      : Error("chain revisits an occupied lattice point at residue " +
              std::to_string(index)),
        index(index) {}
  std::size_t index;
};

struct LengthMismatch : Error {
  using Error::Error;
};

struct NoHydrophobicResidues : Error {
  NoHydrophobicResidues() : Error("sequence has no hydrophobic residues") {}
};

struct MatrixParseError : Error {
  using Error::Error;
};

struct DumpParseError : Error {
  using Error::Error;
};

struct NativeParseError : Error {
  using Error::Error;
};

struct ZeroReference : Error {
  ZeroReference() : Error("relative improvement needs a nonzero reference energy") {}
};

struct EmptyRunSet : Error {
  EmptyRunSet() : Error("summary needs at least one run") {}
};

struct TooLong : Error {
  TooLong(std::size_t n, std::size_t cap)
      : Error("exhaustive enumeration capped at length " + std::to_string(cap) +
              ", got " + std::to_string(n)) {}
};

struct ConfigError : Error {
  using Error::Error;
};

struct InitialisationFailed : Error {
  using Error::Error;
};

}  // namespace fccfold
