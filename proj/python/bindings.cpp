// Python bindings for the main operations: sequences, conformations,
// energies, the search engine, the exhaustive oracle, and the deviation
// metric.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fccfold/conformation.hpp"
#include "fccfold/energy.hpp"
#include "fccfold/errors.hpp"
#include "fccfold/metrics.hpp"
#include "fccfold/model.hpp"
#include "fccfold/moves.hpp"
#include "fccfold/oracle.hpp"
#include "fccfold/rng.hpp"
#include "fccfold/search.hpp"
#include "fccfold/sequence.hpp"

namespace py = pybind11;
using namespace fccfold;

namespace {

std::vector<std::array<int, 3>> point_tuples(const Conformation& c) {
  std::vector<std::array<int, 3>> out;
  out.reserve(c.size());
  for (const LatticePoint& p : c.points()) out.push_back({p.x, p.y, p.z});
  return out;
}

std::vector<int> direction_ints(const Conformation& c) {
  return std::vector<int>(c.directions().begin(), c.directions().end());
}

Conformation conformation_from_directions(const std::vector<int>& dirs) {
  std::vector<std::uint8_t> d;
  d.reserve(dirs.size());
  for (int v : dirs) {
    if (v < 0 || v >= static_cast<int>(kDirections))
      throw ConfigError("direction index out of range: " + std::to_string(v));
    d.push_back(static_cast<std::uint8_t>(v));
  }
  return Conformation::from_directions(d);
}

}  // namespace

PYBIND11_MODULE(_fccfold, m) {
  m.doc() = "Lattice protein structure prediction on the face-centred cubic lattice";

  py::register_exception<Error>(m, "Error");

  py::class_<Sequence>(m, "Sequence")
      .def_static(
          "parse", [](const std::string& text) { return Sequence::parse(text); },
          py::arg("text"), "Parse FASTA text or a bare residue string")
      .def_static(
          "from_letters",
          [](const std::string& letters) { return Sequence::from_letters(letters); },
          py::arg("letters"))
      .def_property_readonly("id", &Sequence::id)
      .def_property_readonly("letters", &Sequence::letters)
      .def_property_readonly("hp_string", &Sequence::hp_string)
      .def_property_readonly("hydrophobic_count", &Sequence::hydrophobic_count)
      .def("__len__", &Sequence::size)
      .def("__repr__", [](const Sequence& s) {
        return "Sequence('" + s.letters() + "')";
      });

  py::class_<Conformation>(m, "Conformation")
      .def_static("from_directions", &conformation_from_directions, py::arg("directions"),
                  "Build a chain from basis direction indices (raises on collision)")
      .def_property_readonly("directions", &direction_ints)
      .def_property_readonly("points", &point_tuples)
      .def_property_readonly("canonical_key", &Conformation::canonical_key)
      .def("__len__", &Conformation::size)
      .def("__repr__", [](const Conformation& c) {
        return "Conformation(n=" + std::to_string(c.size()) + ")";
      });

  m.def("bundled_ids", &bundled_ids, "Identifiers of the built-in benchmark sequences");
  m.def("bundled_sequence", &bundled_sequence, py::arg("id"));

  m.def("hp_energy", &hp_energy, py::arg("conformation"), py::arg("sequence"),
        "Hydrophobic contact count, negated");
  m.def("mj_energy", &mj_energy, py::arg("conformation"), py::arg("sequence"),
        "Pairwise contact-potential energy");

  m.def(
      "grow",
      [](std::size_t n, std::uint64_t seed) {
        RngStream rng(seed);
        return grow_member(n, 100, rng);
      },
      py::arg("n"), py::arg("seed") = 1, "Random self-avoiding chain of n residues");

  m.def(
      "fold",
      [](const Sequence& seq, const std::string& model, std::size_t population,
         std::optional<std::uint64_t> generations, std::optional<double> seconds,
         std::uint64_t seed, double p_polar, int macro_repeat, int stagnation_window,
         std::optional<std::array<double, 6>> weights) {
        GaConfig cfg;
        cfg.population = population;
        cfg.max_generations = generations;
        cfg.max_seconds = seconds;
        cfg.seed = seed;
        cfg.p_polar = p_polar;
        cfg.macro_repeat = macro_repeat;
        cfg.stagnation_window = stagnation_window;
        if (weights) cfg.weights = *weights;
        if (!cfg.max_generations && !cfg.max_seconds)
          throw ConfigError("a budget is required: generations and/or seconds");
        cfg.validate();
        const EnergyModel em = parse_model(model);
        std::optional<RunResult> res;
        {
          py::gil_scoped_release release;
          GradedGa ga(seq, cfg, em);
          res = ga.run();
        }
        py::dict out;
        out["best_energy"] = res->best_energy;
        out["directions"] = direction_ints(res->best);
        out["points"] = point_tuples(res->best);
        out["generations"] = res->generations;
        py::list trace;
        for (const GenerationRecord& rec : res->trace) {
          py::dict row;
          row["generation"] = rec.generation;
          row["operator"] = std::string(move_name(rec.op));
          row["best_energy"] = rec.best_energy;
          row["mean_energy"] = rec.mean_energy;
          row["best_ever"] = rec.best_ever;
          row["walked"] = rec.walked;
          trace.append(row);
        }
        out["trace"] = trace;
        return out;
      },
      py::arg("sequence"), py::arg("model") = "mh", py::arg("population") = 50,
      py::arg("generations") = std::nullopt, py::arg("seconds") = std::nullopt,
      py::arg("seed") = 1, py::arg("p_polar") = 0.20, py::arg("macro_repeat") = 5,
      py::arg("stagnation_window") = 5, py::arg("weights") = std::nullopt,
      "Seeded genetic-algorithm search; returns the best structure and a per-generation trace");

  m.def(
      "exact_optimum",
      [](const Sequence& seq, const std::string& model) {
        const auto res = fccfold::exact_optimum(seq, objective_matrix(parse_model(model)), {});
        py::dict out;
        out["energy"] = res.energy;
        out["directions"] = std::vector<int>(res.argmin.begin(), res.argmin.end());
        out["walks"] = res.walks;
        return out;
      },
      py::arg("sequence"), py::arg("model") = "hp",
      "Exhaustive-enumeration ground truth for short chains");

  m.def(
      "count_saws",
      [](std::size_t n, bool reduce) { return count_saws(n, reduce); }, py::arg("n"),
      py::arg("reduce") = true,
      "Number of self-avoiding walks, optionally one representative per rotation class");

  m.def("scaled_coords", &scaled_coords, py::arg("conformation"),
        "Lattice coordinates scaled so one chain step is 3.8 angstroms");
  m.def(
      "rmsd",
      [](const std::vector<std::array<double, 3>>& a,
         const std::vector<std::array<double, 3>>& b) { return rmsd(a, b); },
      py::arg("a"), py::arg("b"),
      "Distance-matrix deviation over all residue pairs (no superposition)");
  m.def("relative_improvement", &relative_improvement, py::arg("target"), py::arg("reference"),
        "Percentage improvement of target over reference");
}
