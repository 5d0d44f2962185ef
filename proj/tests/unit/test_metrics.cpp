#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "fccfold/errors.hpp"
#include "fccfold/metrics.hpp"
#include "fccfold/rng.hpp"
#include "helpers.hpp"

using namespace fccfold;
using fccfold::testing::conf_of;

namespace {

// Direct-summation distance-matrix deviation, kept deliberately naive.
double reference_rmsd(const std::vector<std::array<double, 3>>& a,
                      const std::vector<std::array<double, 3>>& b) {
  auto dist = [](const std::array<double, 3>& p, const std::array<double, 3>& q) {
    const double dx = p[0] - q[0], dy = p[1] - q[1], dz = p[2] - q[2];
    return std::sqrt(dx * dx + dy * dy + dz * dz);
  };
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const double d = dist(a[i], a[j]) - dist(b[i], b[j]);
      sum += d * d;
      ++pairs;
    }
  return std::sqrt(sum / static_cast<double>(pairs));
}

std::vector<std::array<double, 3>> random_coords(std::size_t n, RngStream& rng) {
  std::vector<std::array<double, 3>> out(n);
  for (auto& p : out)
    for (double& x : p) x = 20.0 * rng.unit() - 10.0;
  return out;
}

}  // namespace

TEST_SUITE("metrics") {
  TEST_CASE("one chain step spans 3.8 angstroms") {
    CHECK(lattice_unit_scale() == 3.8 / std::sqrt(2.0));
    const auto coords = scaled_coords(conf_of("abaf"));
    REQUIRE(coords.size() == 5);
    for (std::size_t i = 0; i + 1 < coords.size(); ++i) {
      const double dx = coords[i + 1][0] - coords[i][0];
      const double dy = coords[i + 1][1] - coords[i][1];
      const double dz = coords[i + 1][2] - coords[i][2];
      CHECK(std::sqrt(dx * dx + dy * dy + dz * dz) == doctest::Approx(3.8).epsilon(1e-12));
    }
  }

  TEST_CASE("identical structures deviate by exactly zero") {
    const auto coords = scaled_coords(conf_of("abafddc"));
    CHECK(rmsd(coords, coords) == 0.0);
    NativeStructure native{"self", coords};
    CHECK(rmsd(conf_of("abafddc"), native) == 0.0);
  }

  TEST_CASE("a single stretched pair deviates by the distance gap") {
    const std::vector<std::array<double, 3>> a = {{0, 0, 0}, {3.8, 0, 0}};
    const std::vector<std::array<double, 3>> b = {{0, 0, 0}, {7.6, 0, 0}};
    CHECK(rmsd(a, b) == doctest::Approx(3.8).epsilon(1e-12));
  }

  TEST_CASE("deviation matches a direct-summation reference on random inputs") {
    RngStream rng(13);
    for (std::size_t n : {2u, 5u, 17u, 40u}) {
      const auto a = random_coords(n, rng);
      const auto b = random_coords(n, rng);
      CHECK(rmsd(a, b) == doctest::Approx(reference_rmsd(a, b)).epsilon(1e-12));
    }
  }

  TEST_CASE("rigid motions leave the deviation unchanged") {
    RngStream rng(19);
    const auto a = random_coords(12, rng);
    const auto b = random_coords(12, rng);
    const double base = rmsd(a, b);

    // Rotate b about z by a fixed angle and translate it.
    const double s = std::sin(0.7), c = std::cos(0.7);
    auto moved = b;
    for (auto& p : moved) {
      const double x = p[0], y = p[1];
      p[0] = c * x - s * y + 5.0;
      p[1] = s * x + c * y - 3.0;
      p[2] += 11.0;
    }
    CHECK(rmsd(a, moved) == doctest::Approx(base).epsilon(1e-9));
  }

  TEST_CASE("length mismatches are rejected") {
    RngStream rng(23);
    const auto a = random_coords(5, rng);
    const auto b = random_coords(6, rng);
    CHECK_THROWS_AS(rmsd(a, b), LengthMismatch);
    NativeStructure native{"short", random_coords(4, rng)};
    CHECK_THROWS_AS(rmsd(conf_of("abaf"), native), LengthMismatch);
  }

  TEST_CASE("relative improvement reports the signed percentage gap") {
    CHECK(relative_improvement(-33.60, -31.21) == doctest::Approx(7.66).epsilon(1e-3));
    CHECK(relative_improvement(-35.67, -28.18) == doctest::Approx(26.58).epsilon(1e-3));
    CHECK(relative_improvement(-10.0, -10.0) == 0.0);
    CHECK(relative_improvement(-8.0, -10.0) == doctest::Approx(-20.0).epsilon(1e-12));
    CHECK_THROWS_AS(relative_improvement(-1.0, 0.0), ZeroReference);
  }

  TEST_CASE("native structures parse from header plus coordinate lines") {
    std::istringstream in("toy 3\n0 0 0\n3.8 0 0\n3.8 3.8 0\n");
    const NativeStructure native = parse_native(in);
    CHECK(native.id == "toy");
    REQUIRE(native.coords.size() == 3);
    CHECK(native.coords[1] == std::array<double, 3>{3.8, 0.0, 0.0});

    auto reject = [](const char* text) {
      std::istringstream bad(text);
      CHECK_THROWS_AS(parse_native(bad), NativeParseError);
    };
    reject("");
    reject("toy\n0 0 0\n");
    reject("toy 2\n0 0 0\n");
    reject("toy 2\n0 0 0\n1 2 x\n");
    reject("toy 2\n0 0 0\n1 2 0\n9\n");
    reject("toy 1\n0 0 0\n");
    reject("toy -1\n");
  }

  TEST_CASE("native structures load from disk") {
    const auto path = std::filesystem::temp_directory_path() / "fccfold_native_test.txt";
    {
      std::ofstream out(path);
      out << "disk 2\n0 0 0\n0 3.8 0\n";
    }
    const NativeStructure native = load_native(path);
    CHECK(native.id == "disk");
    CHECK(native.coords.size() == 2);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_native(path), Error);
  }

  TEST_CASE("run summaries aggregate per-run bests") {
    const Conformation best = conf_of("abafddc");
    const Conformation other = conf_of("aaaaaaa");
    const std::vector<RunSummaryInput> runs = {{-10.0, &other}, {-20.0, &best}};
    const RunSetSummary plain = summarize(runs, nullptr);
    CHECK(plain.runs == 2);
    CHECK(plain.best_energy == -20.0);
    CHECK(plain.mean_energy == doctest::Approx(-15.0).epsilon(1e-12));
    CHECK_FALSE(plain.best_rmsd.has_value());
    CHECK_FALSE(plain.rmsd_of_best.has_value());

    const NativeStructure native{"ref", scaled_coords(best)};
    const RunSetSummary with_native = summarize(runs, &native);
    REQUIRE(with_native.best_rmsd.has_value());
    REQUIRE(with_native.rmsd_of_best.has_value());
    CHECK(*with_native.rmsd_of_best == 0.0);
    CHECK(*with_native.best_rmsd == 0.0);
    CHECK(*with_native.best_rmsd <= rmsd(other, native));

    const std::vector<RunSummaryInput> single = {{-4.5, nullptr}};
    const RunSetSummary one = summarize(single, nullptr);
    CHECK(one.runs == 1);
    CHECK(one.best_energy == -4.5);
    CHECK(one.mean_energy == -4.5);

    CHECK_THROWS_AS(summarize({}, nullptr), EmptyRunSet);
  }
}
