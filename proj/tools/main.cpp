#include <algorithm>
#include <charconv>
#include <cmath>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fccfold/conformation.hpp"
#include "fccfold/energy.hpp"
#include "fccfold/errors.hpp"
#include "fccfold/metrics.hpp"
#include "fccfold/model.hpp"
#include "fccfold/oracle.hpp"
#include "fccfold/rng.hpp"
#include "fccfold/search.hpp"
#include "fccfold/sequence.hpp"

namespace {

using fccfold::Conformation;
using fccfold::EnergyModel;
using fccfold::GaConfig;
using fccfold::GradedGa;
using fccfold::RunResult;
using fccfold::Sequence;
using json = nlohmann::json;

// Shortest round-trip formatting keeps emitted numbers exact and
// platform-independent, so re-running a seeded config reproduces files
// byte for byte.
std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string fmt_fixed2(double v) {
  double r = std::round(v * 100.0) / 100.0;
  if (r == 0.0) r = 0.0;  // never print "-0.00"
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", r);
  return buf;
}

Sequence load_sequence(const std::string& source) {
  const auto& ids = fccfold::bundled_ids();
  if (std::find(ids.begin(), ids.end(), source) != ids.end())
    return fccfold::bundled_sequence(source);
  std::ifstream in(source);
  if (!in)
    throw fccfold::ConfigError("sequence source '" + source +
                               "' is neither a bundled id nor a readable file");
  std::ostringstream text;
  text << in.rdbuf();
  return Sequence::parse(text.str());
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// --- run ---------------------------------------------------------------

struct RunOptions {
  std::string seq_source;
  std::string model = "mh";
  std::string out_dir = "fccfold_out";
  std::string native_path;
  std::string config_path;
  GaConfig ga;
  unsigned runs = 1;
  std::optional<std::uint64_t> generations;
  std::optional<double> time_seconds;
  std::string op_weights;
};

std::array<double, 6> parse_weights(const std::string& text) {
  std::array<double, 6> w{};
  std::stringstream in(text);
  std::string part;
  std::size_t k = 0;
  while (std::getline(in, part, ',')) {
    if (k >= w.size()) throw fccfold::ConfigError("--op-weights needs exactly 6 values");
    std::size_t used = 0;
    w[k++] = std::stod(part, &used);
    if (used != part.size()) throw fccfold::ConfigError("bad weight '" + part + "'");
  }
  if (k != w.size()) throw fccfold::ConfigError("--op-weights needs exactly 6 values");
  return w;
}

// Fill fields the command line left untouched from a JSON config file;
// flags win over the file, the file wins over defaults.
void apply_config_file(const CLI::App& cmd, RunOptions& opt) {
  if (opt.config_path.empty()) return;
  std::ifstream in(opt.config_path);
  if (!in) throw fccfold::ConfigError("cannot open config file " + opt.config_path);
  json cfg;
  try {
    in >> cfg;
  } catch (const json::exception& e) {
    throw fccfold::ConfigError(std::string("bad config file: ") + e.what());
  }
  auto unset = [&](const char* flag) { return cmd.count(flag) == 0; };
  if (cfg.contains("seq") && unset("--seq")) opt.seq_source = cfg["seq"].get<std::string>();
  if (cfg.contains("model") && unset("--model")) opt.model = cfg["model"].get<std::string>();
  if (cfg.contains("out") && unset("--out")) opt.out_dir = cfg["out"].get<std::string>();
  if (cfg.contains("native") && unset("--native"))
    opt.native_path = cfg["native"].get<std::string>();
  if (cfg.contains("runs") && unset("--runs")) opt.runs = cfg["runs"].get<unsigned>();
  if (cfg.contains("pop_size") && unset("--pop-size"))
    opt.ga.population = cfg["pop_size"].get<std::size_t>();
  if (cfg.contains("generations") && unset("--generations"))
    opt.generations = cfg["generations"].get<std::uint64_t>();
  if (cfg.contains("time") && unset("--time")) opt.time_seconds = cfg["time"].get<double>();
  if (cfg.contains("seed") && unset("--seed")) opt.ga.seed = cfg["seed"].get<std::uint64_t>();
  if (cfg.contains("mm_repeat") && unset("--mm-repeat"))
    opt.ga.macro_repeat = cfg["mm_repeat"].get<int>();
  if (cfg.contains("p_polar") && unset("--p-polar"))
    opt.ga.p_polar = cfg["p_polar"].get<double>();
  if (cfg.contains("stagnation_window") && unset("--stagnation-window"))
    opt.ga.stagnation_window = cfg["stagnation_window"].get<int>();
  if (cfg.contains("op_weights") && unset("--op-weights")) {
    const auto w = cfg["op_weights"].get<std::vector<double>>();
    if (w.size() != 6) throw fccfold::ConfigError("op_weights needs exactly 6 values");
    std::copy(w.begin(), w.end(), opt.ga.weights.begin());
  }
}

json config_echo(const Sequence& seq, const GaConfig& ga, EnergyModel model) {
  json j;
  j["sequence"] = seq.id().empty() ? seq.letters() : seq.id();
  j["length"] = seq.size();
  j["model"] = std::string(fccfold::model_name(model));
  j["population"] = ga.population;
  j["weights"] = ga.weights;
  j["p_polar"] = ga.p_polar;
  j["macro_repeat"] = ga.macro_repeat;
  j["stagnation_window"] = ga.stagnation_window;
  j["walk_energy_band"] = {ga.walk_energy_lo, ga.walk_energy_hi};
  j["walk_diversity_band"] = {ga.walk_diversity_lo, ga.walk_diversity_hi};
  j["init_restarts"] = ga.init_restarts;
  if (ga.max_generations)
    j["generations"] = *ga.max_generations;
  else
    j["generations"] = nullptr;
  if (ga.max_seconds)
    j["time"] = *ga.max_seconds;
  else
    j["time"] = nullptr;
  return j;
}

void write_trace_csv(const std::filesystem::path& path, const RunResult& res) {
  std::ofstream out(path);
  out << "generation,best_energy,mean_energy,operator_used,stagnation_flag\n";
  for (const auto& rec : res.trace)
    out << rec.generation << ',' << fmt(rec.best_energy) << ',' << fmt(rec.mean_energy) << ','
        << fccfold::move_name(rec.op) << ',' << (rec.walked ? 1 : 0) << '\n';
}

int cmd_run(const CLI::App& cmd, RunOptions opt) {
  apply_config_file(cmd, opt);
  if (!opt.op_weights.empty()) opt.ga.weights = parse_weights(opt.op_weights);
  if (!opt.generations && !opt.time_seconds)
    throw fccfold::ConfigError("a budget is required: --generations and/or --time");
  if (opt.runs < 1) throw fccfold::ConfigError("--runs must be at least 1");
  opt.ga.max_generations = opt.generations;
  opt.ga.max_seconds = opt.time_seconds;
  opt.ga.validate();

  const EnergyModel model = fccfold::parse_model(opt.model);
  const Sequence seq = load_sequence(opt.seq_source);

  std::optional<fccfold::NativeStructure> native;
  if (!opt.native_path.empty()) {
    native = fccfold::load_native(opt.native_path);
    if (native->coords.size() != seq.size())
      throw fccfold::ConfigError("native structure has " +
                                 std::to_string(native->coords.size()) + " residues, sequence has " +
                                 std::to_string(seq.size()));
  }

  const std::filesystem::path out_dir(opt.out_dir);
  std::filesystem::create_directories(out_dir);

  const std::uint64_t master_seed = opt.ga.seed;
  const auto t0 = std::chrono::steady_clock::now();

  // Runs are independent: each gets a seed derived from the master seed and
  // its index, so any execution order (or thread count) gives the same files.
  std::vector<std::future<RunResult>> futures;
  futures.reserve(opt.runs);
  for (unsigned k = 1; k <= opt.runs; ++k) {
    GaConfig cfg = opt.ga;
    cfg.seed = fccfold::derive_seed(master_seed, k);
    futures.push_back(std::async(std::launch::async, [cfg, &seq, model, k, &out_dir, t0]() {
      GradedGa ga(seq, cfg, model);
      RunResult res = ga.run();
      write_trace_csv(out_dir / ("trace_" + std::to_string(k) + ".csv"), res);
      std::ofstream dump(out_dir / ("best_" + std::to_string(k) + ".dump"));
      fccfold::write_dump(dump, res.best, seq, res.best_energy, ga.model());
      std::clog << "run " << k << ": best " << fmt(res.best_energy) << " after "
                << res.generations << " generations, " << fmt_fixed2(elapsed_since(t0))
                << "s elapsed\n";
      return res;
    }));
  }

  std::vector<RunResult> results;
  results.reserve(opt.runs);
  for (auto& f : futures) results.push_back(f.get());

  {
    std::ofstream manifest(out_dir / "manifest.json");
    for (unsigned k = 1; k <= opt.runs; ++k) {
      json j = config_echo(seq, opt.ga, model);
      j["run"] = k;
      j["master_seed"] = master_seed;
      j["seed"] = fccfold::derive_seed(master_seed, k);
      manifest << j.dump() << '\n';
    }
  }

  std::vector<fccfold::RunSummaryInput> inputs;
  inputs.reserve(results.size());
  for (const RunResult& r : results) inputs.push_back({r.best_energy, &r.best});
  const fccfold::RunSetSummary summary =
      fccfold::summarize(inputs, native ? &*native : nullptr);

  {
    json j;
    j["runs"] = summary.runs;
    j["best_energy"] = summary.best_energy;
    j["mean_energy"] = summary.mean_energy;
    json per_run = json::array();
    for (const RunResult& r : results) per_run.push_back(r.best_energy);
    j["per_run_best"] = per_run;
    j["best_rmsd"] = summary.best_rmsd ? json(*summary.best_rmsd) : json(nullptr);
    j["rmsd_of_best"] = summary.rmsd_of_best ? json(*summary.rmsd_of_best) : json(nullptr);
    std::ofstream out(out_dir / "summary.json");
    out << j.dump() << '\n';
  }

  std::cout << "runs " << summary.runs << " best " << fmt(summary.best_energy) << " mean "
            << fmt(summary.mean_energy);
  if (summary.rmsd_of_best)
    std::cout << " best_rmsd " << fmt_fixed2(*summary.best_rmsd) << " rmsd_of_best "
              << fmt_fixed2(*summary.rmsd_of_best);
  std::cout << '\n';
  std::clog << "total " << fmt_fixed2(elapsed_since(t0)) << "s\n";
  return 0;
}

// --- bench ---------------------------------------------------------------

struct BenchOptions {
  std::vector<std::string> seq_sources;
  std::string out_path;
  GaConfig ga;
  unsigned runs = 3;
  std::optional<std::uint64_t> generations;
  std::optional<double> time_seconds;
};

int cmd_bench(BenchOptions opt) {
  if (!opt.generations && !opt.time_seconds)
    throw fccfold::ConfigError("a budget is required: --generations and/or --time");
  if (opt.runs < 1) throw fccfold::ConfigError("--runs must be at least 1");
  opt.ga.max_generations = opt.generations;
  opt.ga.max_seconds = opt.time_seconds;
  opt.ga.validate();

  constexpr std::array<EnergyModel, 3> kModels{EnergyModel::Hp, EnergyModel::Mj,
                                               EnergyModel::Mh};
  std::vector<Sequence> seqs;
  seqs.reserve(opt.seq_sources.size());
  for (const std::string& s : opt.seq_sources) seqs.push_back(load_sequence(s));

  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t master_seed = opt.ga.seed;

  // One future per (sequence, model, run); the derivation tag encodes the
  // triple so results do not depend on scheduling.
  std::vector<std::array<std::vector<double>, 3>> bests(seqs.size());
  std::vector<std::future<double>> futures;
  std::vector<std::array<std::size_t, 3>> slots;
  for (std::size_t si = 0; si < seqs.size(); ++si)
    for (std::size_t mi = 0; mi < kModels.size(); ++mi) {
      bests[si][mi].resize(opt.runs);
      for (unsigned k = 0; k < opt.runs; ++k) {
        GaConfig cfg = opt.ga;
        cfg.seed = fccfold::derive_seed(master_seed, (si * 3 + mi) * opt.runs + k + 1);
        const Sequence& seq = seqs[si];
        const EnergyModel model = kModels[mi];
        futures.push_back(std::async(std::launch::async, [cfg, &seq, model]() {
          GradedGa ga(seq, cfg, model);
          return ga.run().best_energy;
        }));
        slots.push_back({si, mi, k});
      }
    }
  for (std::size_t i = 0; i < futures.size(); ++i) {
    const auto [si, mi, k] = slots[i];
    bests[si][mi][k] = futures[i].get();
  }

  std::ostringstream csv;
  csv << "sequence,size,h,hp_best,hp_avg,mj_best,mj_avg,mh_best,mh_avg,ri\n";
  for (std::size_t si = 0; si < seqs.size(); ++si) {
    const Sequence& seq = seqs[si];
    csv << (seq.id().empty() ? seq.letters() : seq.id()) << ',' << seq.size() << ','
        << seq.hydrophobic_count();
    std::array<double, 3> avgs{};
    for (std::size_t mi = 0; mi < kModels.size(); ++mi) {
      const auto& runs = bests[si][mi];
      const double best = *std::min_element(runs.begin(), runs.end());
      double sum = 0.0;
      for (double e : runs) sum += e;
      avgs[mi] = sum / static_cast<double>(runs.size());
      csv << ',' << fmt(best) << ',' << fmt(avgs[mi]);
    }
    try {
      csv << ',' << fmt_fixed2(fccfold::relative_improvement(avgs[2], avgs[1])) << '%';
    } catch (const fccfold::ZeroReference&) {
      csv << ",n/a";
    }
    csv << '\n';
  }

  std::cout << csv.str();
  if (!opt.out_path.empty()) {
    std::ofstream out(opt.out_path);
    out << csv.str();
  }
  std::clog << "bench total " << fmt_fixed2(elapsed_since(t0)) << "s\n";
  return 0;
}

// --- oracle / rmsd / ri ----------------------------------------------------

int cmd_oracle(const std::string& seq_source, const std::string& model, std::size_t n_count) {
  if (n_count > 0) {
    std::cout << fccfold::count_saws(n_count, false) << '\n';
    return 0;
  }
  const Sequence seq = load_sequence(seq_source);
  const auto& matrix = fccfold::objective_matrix(fccfold::parse_model(model));
  const auto res = fccfold::exact_optimum(seq, matrix, {});
  std::string argmin;
  for (std::uint8_t d : res.argmin) argmin += static_cast<char>('a' + d);
  std::cout << seq.size() << ' ' << res.walks << ' ' << fmt(res.energy) << ' ' << argmin << '\n';
  return 0;
}

int cmd_rmsd(const std::string& dump_path, const std::string& native_path) {
  std::ifstream in(dump_path);
  if (!in) throw fccfold::ConfigError("cannot open dump file " + dump_path);
  const fccfold::DumpRecord rec = fccfold::read_dump(in);
  const fccfold::NativeStructure native = fccfold::load_native(native_path);
  std::cout << fmt_fixed2(fccfold::rmsd(rec.conformation, native)) << '\n';
  return 0;
}

int cmd_ri(double target, double reference) {
  std::cout << fmt_fixed2(fccfold::relative_improvement(target, reference)) << "%\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice protein structure prediction with a graded-energy genetic algorithm"};
  app.require_subcommand(1);

  RunOptions run_opt;
  CLI::App* run = app.add_subcommand("run", "Seeded search runs with trace and dump output");
  run->add_option("--seq", run_opt.seq_source, "Bundled sequence id or FASTA file");
  run->add_option("--model", run_opt.model, "Energy model: hp, mj or mh")
      ->default_str("mh");
  run->add_option("--pop-size", run_opt.ga.population, "Population size");
  run->add_option("--generations", run_opt.generations, "Generation budget");
  run->add_option("--time", run_opt.time_seconds, "Time budget in seconds");
  run->add_option("--runs", run_opt.runs, "Independent runs");
  run->add_option("--seed", run_opt.ga.seed, "Master seed");
  run->add_option("--out", run_opt.out_dir, "Output directory");
  run->add_option("--mm-repeat", run_opt.ga.macro_repeat, "Macro-mutation sweeps");
  run->add_option("--p-polar", run_opt.ga.p_polar, "Polar-class probability in macro-mutation");
  run->add_option("--stagnation-window", run_opt.ga.stagnation_window,
                  "Generations without improvement before the walk");
  run->add_option("--op-weights", run_opt.op_weights, "6 comma-separated operator weights");
  run->add_option("--native", run_opt.native_path, "Reference coordinates for deviation columns");
  run->add_option("--config", run_opt.config_path, "JSON config file (flags take precedence)");

  BenchOptions bench_opt;
  CLI::App* bench = app.add_subcommand("bench", "Compare the hp/mj/mh variants over seeded runs");
  bench->add_option("--seq", bench_opt.seq_sources, "Bundled ids or FASTA files")
      ->required();
  bench->add_option("--runs", bench_opt.runs, "Runs per sequence and variant");
  bench->add_option("--pop-size", bench_opt.ga.population, "Population size");
  bench->add_option("--generations", bench_opt.generations, "Generation budget");
  bench->add_option("--time", bench_opt.time_seconds, "Time budget in seconds");
  bench->add_option("--seed", bench_opt.ga.seed, "Master seed");
  bench->add_option("--out", bench_opt.out_path, "Also write the CSV to this file");

  std::string oracle_seq, oracle_model = "hp";
  std::size_t oracle_n = 0;
  CLI::App* oracle = app.add_subcommand("oracle", "Exhaustive enumeration ground truth");
  oracle->add_option("--seq", oracle_seq, "Bundled id or FASTA file (short chains only)");
  oracle->add_option("--model", oracle_model, "Energy model for the scan");
  oracle->add_option("--n", oracle_n, "Count all walks of this many residues instead");

  std::string rmsd_dump, rmsd_native;
  CLI::App* rmsd = app.add_subcommand("rmsd", "Distance-matrix deviation of a dump vs a reference");
  rmsd->add_option("dump", rmsd_dump, "Conformation dump file")->required();
  rmsd->add_option("native", rmsd_native, "Reference coordinate file")->required();

  double ri_target = 0.0, ri_reference = 0.0;
  CLI::App* ri = app.add_subcommand("ri", "Relative improvement of target over reference");
  ri->add_option("-t,--target", ri_target, "Target energy")->required();
  ri->add_option("-r,--reference", ri_reference, "Reference energy")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      if (run_opt.seq_source.empty() && run_opt.config_path.empty())
        throw fccfold::ConfigError("--seq is required (directly or via --config)");
      return cmd_run(*run, run_opt);
    }
    if (bench->parsed()) return cmd_bench(bench_opt);
    if (oracle->parsed()) {
      if (oracle_seq.empty() && oracle_n == 0)
        throw fccfold::ConfigError("oracle needs --seq or --n");
      return cmd_oracle(oracle_seq, oracle_model, oracle_n);
    }
    if (rmsd->parsed()) return cmd_rmsd(rmsd_dump, rmsd_native);
    if (ri->parsed()) return cmd_ri(ri_target, ri_reference);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
