#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "fccfold/energy.hpp"
#include "fccfold/errors.hpp"
#include "fccfold/search.hpp"
#include "helpers.hpp"

using namespace fccfold;
using fccfold::testing::conf_of;
using fccfold::testing::rebuild_and_check;

TEST_SUITE("search") {
  TEST_CASE("default configuration is valid") {
    GaConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.population == 50);
    CHECK(cfg.weights == OperatorWeights{1, 1, 1, 1, 1, 1});
    CHECK(cfg.p_polar == 0.20);
    CHECK(cfg.macro_repeat == 5);
    CHECK(cfg.stagnation_window == 5);
    CHECK(cfg.walk_energy_lo == 0.05);
    CHECK(cfg.walk_energy_hi == 0.10);
    CHECK(cfg.walk_diversity_lo == 0.10);
    CHECK(cfg.walk_diversity_hi == 0.75);
    CHECK(cfg.seed == 1);
  }

  TEST_CASE("configuration validation rejects out-of-range fields") {
    const GaConfig base;
    auto broken = [&](auto&& mutate) {
      GaConfig cfg = base;
      mutate(cfg);
      return cfg;
    };
    CHECK_THROWS_AS(broken([](GaConfig& c) { c.population = 0; }).validate(), ConfigError);
    CHECK_THROWS_AS(broken([](GaConfig& c) { c.weights[2] = -1.0; }).validate(), ConfigError);
    CHECK_THROWS_AS(broken([](GaConfig& c) { c.weights.fill(0.0); }).validate(), ConfigError);
    CHECK_THROWS_AS(
        broken([](GaConfig& c) { c.weights[0] = std::numeric_limits<double>::quiet_NaN(); })
            .validate(),
        ConfigError);
    CHECK_THROWS_AS(broken([](GaConfig& c) { c.p_polar = 1.5; }).validate(), ConfigError);
    CHECK_THROWS_AS(broken([](GaConfig& c) { c.p_polar = -0.1; }).validate(), ConfigError);
    CHECK_THROWS_AS(broken([](GaConfig& c) { c.macro_repeat = -1; }).validate(), ConfigError);
    CHECK_THROWS_AS(broken([](GaConfig& c) { c.stagnation_window = 0; }).validate(), ConfigError);
    CHECK_THROWS_AS(broken([](GaConfig& c) { c.walk_energy_lo = 0.2; }).validate(), ConfigError);
    CHECK_THROWS_AS(broken([](GaConfig& c) { c.walk_diversity_lo = -0.1; }).validate(),
                    ConfigError);
    CHECK_THROWS_AS(broken([](GaConfig& c) { c.max_seconds = 0.0; }).validate(), ConfigError);
    CHECK_THROWS_AS(broken([](GaConfig& c) { c.init_restarts = 0; }).validate(), ConfigError);
  }

  TEST_CASE("variant policy pairs each model with its objective and guidance") {
    CHECK(&variant_policy(EnergyModel::Hp).objective == &ContactMatrix::hp());
    CHECK(&variant_policy(EnergyModel::Mj).objective == &ContactMatrix::mj());
    CHECK(&variant_policy(EnergyModel::Mh).objective == &ContactMatrix::mj());
    CHECK(variant_policy(EnergyModel::Hp).macro_guided);
    CHECK_FALSE(variant_policy(EnergyModel::Mj).macro_guided);
    CHECK(variant_policy(EnergyModel::Mh).macro_guided);
  }

  TEST_CASE("operator selection follows the weights") {
    RngStream rng(11);
    const OperatorWeights uniform{1, 1, 1, 1, 1, 1};
    std::array<int, kMoveKinds> counts{};
    const int draws = 60000;
    for (int t = 0; t < draws; ++t) ++counts[static_cast<std::size_t>(select_operator(uniform, rng))];
    for (int c : counts) {
      CHECK(c > draws / 6 - 600);
      CHECK(c < draws / 6 + 600);
    }

    const OperatorWeights single{0, 0, 1, 0, 0, 0};
    for (int t = 0; t < 200; ++t) CHECK(select_operator(single, rng) == MoveKind::Diagonal);

    const OperatorWeights holes{1, 0, 1, 0, 1, 0};
    for (int t = 0; t < 2000; ++t) {
      const MoveKind op = select_operator(holes, rng);
      CHECK(op != MoveKind::Rotation);
      CHECK(op != MoveKind::Pull);
      CHECK(op != MoveKind::Macro);
    }
  }

  TEST_CASE("grown members are valid, sized, and reproducible") {
    for (int t = 0; t < 30; ++t) {
      RngStream r1 = RngStream(17).split(t);
      RngStream r2 = RngStream(17).split(t);
      const Conformation a = grow_member(20, 100, r1);
      const Conformation b = grow_member(20, 100, r2);
      CHECK(a.size() == 20);
      CHECK(a.canonical_key() == b.canonical_key());
      CHECK(rebuild_and_check(a));
    }
  }

  TEST_CASE("initial populations are duplicate-free, evaluated, and reproducible") {
    const Sequence seq = bundled_sequence("1ENH");
    GaConfig cfg;
    RngStream r1(23), r2(23);
    const auto pop = initial_population(seq, cfg, EnergyModel::Hp, r1);
    const auto again = initial_population(seq, cfg, EnergyModel::Hp, r2);
    REQUIRE(pop.size() == cfg.population);
    std::set<std::string> keys;
    for (std::size_t i = 0; i < pop.size(); ++i) {
      const Conformation& c = pop[i];
      CHECK(c.size() == seq.size());
      CHECK(rebuild_and_check(c));
      keys.insert(c.canonical_key());
      REQUIRE(c.fitness().has_value());
      CHECK(*c.fitness() == hp_energy(c, seq));
      CHECK(c.canonical_key() == again[i].canonical_key());
    }
    CHECK(keys.size() == pop.size());
  }

  TEST_CASE("a two-residue chain admits at most twelve distinct members") {
    const Sequence seq = Sequence::parse("GG");
    GaConfig cfg;
    cfg.population = 12;
    cfg.seed = 3;
    RngStream rng(cfg.seed);
    const auto pop = initial_population(seq, cfg, EnergyModel::Hp, rng);
    std::set<std::string> keys;
    for (const Conformation& c : pop) keys.insert(c.canonical_key());
    CHECK(keys.size() == 12);

    GaConfig too_many = cfg;
    too_many.population = 13;
    RngStream rng2(7);
    CHECK_THROWS_AS(initial_population(seq, too_many, EnergyModel::Hp, rng2),
                    InitialisationFailed);
  }

  TEST_CASE("relative energy change scales the gap by the larger magnitude") {
    CHECK(relative_energy_change(0.0, 0.0) == 0.0);
    CHECK(relative_energy_change(-4.0, -5.0) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(relative_energy_change(-5.0, -4.0) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(relative_energy_change(-4.0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(relative_energy_change(0.0, -4.0) == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("a walk with fully open bands accepts the first pull") {
    const Sequence seq = Sequence::parse("GSGGSGGS");
    const Conformation start = conf_of("abafddc");
    GaConfig cfg;
    cfg.walk_energy_lo = 0.0;
    cfg.walk_energy_hi = 1.0;
    cfg.walk_diversity_lo = 0.0;
    cfg.walk_diversity_hi = 1.0;

    RngStream walk_rng(31), replay(31);
    const Conformation out =
        walk_member(start, seq, ContactMatrix::hp(), cfg, walk_rng);

    const auto cands = pull_candidates(start, 0);
    REQUIRE(!cands.empty());
    const Conformation expected = apply_pull(start, cands[replay.index(cands.size())]);
    CHECK(out.points() == expected.points());
    REQUIRE(out.fitness().has_value());
    CHECK(*out.fitness() == hp_energy(out, seq));
  }

  TEST_CASE("a walk whose diversity band is unreachable returns the original") {
    // Diversity on 7 steps is a multiple of 1/7; nothing lies in [0.01, 0.02].
    const Sequence seq = Sequence::parse("GSGGSGGS");
    const Conformation start = conf_of("abafddc");
    GaConfig cfg;
    cfg.walk_energy_lo = 0.0;
    cfg.walk_energy_hi = 1.0;
    cfg.walk_diversity_lo = 0.01;
    cfg.walk_diversity_hi = 0.02;
    RngStream rng(37);
    const Conformation out = walk_member(start, seq, ContactMatrix::hp(), cfg, rng);
    CHECK(out.points() == start.points());
    CHECK(out.canonical_key() == start.canonical_key());
  }

  TEST_CASE("a zero-generation run reports the initial best") {
    const Sequence seq = Sequence::parse("GSGGSGG");
    GaConfig cfg;
    cfg.population = 20;
    cfg.max_generations = 0;
    cfg.seed = 5;
    GradedGa ga(seq, cfg, EnergyModel::Hp);
    const RunResult res = ga.run();
    CHECK(res.generations == 0);
    CHECK(res.trace.empty());

    RngStream init = RngStream(cfg.seed).split(1);
    const auto pop = initial_population(seq, cfg, EnergyModel::Hp, init);
    double best = 0.0;
    for (const Conformation& c : pop) best = std::min(best, *c.fitness());
    CHECK(res.best_energy == best);
    CHECK(res.best_energy == hp_energy(res.best, seq));
  }

  TEST_CASE("every generation keeps a duplicate-free valid population") {
    const Sequence seq = Sequence::parse("GSGGSGG");
    GaConfig cfg;
    cfg.population = 20;
    cfg.max_generations = 40;
    cfg.seed = 9;
    GradedGa ga(seq, cfg, EnergyModel::Hp);

    double prev_best_ever = 0.0;
    std::uint64_t seen = 0;
    const RunResult res = ga.run([&](const GradedGa& g, const GenerationRecord& rec) {
      ++seen;
      CHECK(rec.generation == seen);
      REQUIRE(g.population().size() == cfg.population);
      std::set<std::string> keys;
      double best = std::numeric_limits<double>::infinity();
      double sum = 0.0;
      for (const Conformation& c : g.population()) {
        CHECK(rebuild_and_check(c));
        keys.insert(c.canonical_key());
        REQUIRE(c.fitness().has_value());
        best = std::min(best, *c.fitness());
        sum += *c.fitness();
      }
      CHECK(keys.size() == cfg.population);
      CHECK(rec.best_energy == best);
      CHECK(rec.mean_energy ==
            doctest::Approx(sum / static_cast<double>(cfg.population)).epsilon(1e-12));
      CHECK(rec.best_ever <= prev_best_ever);
      CHECK(rec.best_ever <= rec.best_energy);
      prev_best_ever = rec.best_ever;
    });
    CHECK(seen == 40);
    CHECK(res.generations == 40);
    CHECK(res.trace.size() == 40);
    CHECK(res.best_energy == prev_best_ever);
  }

  TEST_CASE("identical seeds replay identical runs") {
    const Sequence seq = Sequence::parse("GSGGSGGS");
    GaConfig cfg;
    cfg.population = 16;
    cfg.max_generations = 25;
    cfg.seed = 1234;
    GradedGa g1(seq, cfg, EnergyModel::Mj);
    GradedGa g2(seq, cfg, EnergyModel::Mj);
    const RunResult r1 = g1.run();
    const RunResult r2 = g2.run();
    CHECK(r1.best_energy == r2.best_energy);
    CHECK(r1.best.canonical_key() == r2.best.canonical_key());
    REQUIRE(r1.trace.size() == r2.trace.size());
    for (std::size_t i = 0; i < r1.trace.size(); ++i) {
      CHECK(r1.trace[i].generation == r2.trace[i].generation);
      CHECK(r1.trace[i].op == r2.trace[i].op);
      CHECK(r1.trace[i].best_energy == r2.trace[i].best_energy);
      CHECK(r1.trace[i].mean_energy == r2.trace[i].mean_energy);
      CHECK(r1.trace[i].best_ever == r2.trace[i].best_ever);
      CHECK(r1.trace[i].walked == r2.trace[i].walked);
    }
  }

  TEST_CASE("a short run solves a small chain exactly and never overshoots") {
    // GSGGSGG has exact ground state -6 under the hydrophobic model.
    const double optimum = -6.0;
    for (std::uint64_t seed : {1, 2, 3}) {
      GaConfig cfg;
      cfg.population = 20;
      cfg.max_generations = 200;
      cfg.seed = seed;
      GradedGa ga(Sequence::parse("GSGGSGG"), cfg, EnergyModel::Hp);
      const RunResult res = ga.run();
      CHECK(res.best_energy == optimum);
      for (const GenerationRecord& rec : res.trace) CHECK(rec.best_ever >= optimum);
    }
  }

  TEST_CASE("the hybrid model optimizes and reports pairwise contact energies") {
    GaConfig cfg;
    cfg.population = 12;
    cfg.max_generations = 20;
    cfg.seed = 77;
    GradedGa ga(Sequence::parse("KECWMGAHRS"), cfg, EnergyModel::Mh);
    const RunResult res = ga.run();
    CHECK(res.best_energy == mj_energy(res.best, ga.sequence()));
    CHECK(res.trace.back().best_ever == res.best_energy);
  }

  TEST_CASE("stepping manually matches the generation budget") {
    GaConfig cfg;
    cfg.population = 10;
    cfg.max_generations = 3;
    cfg.seed = 2;
    GradedGa ga(Sequence::parse("GSGSGS"), cfg, EnergyModel::Hp);
    ga.initialise();
    CHECK(ga.generation() == 0);
    CHECK(ga.step());
    CHECK(ga.step());
    CHECK(ga.step());
    CHECK_FALSE(ga.step());
    CHECK(ga.generation() == 3);
    CHECK(ga.trace().size() == 3);
  }
}
