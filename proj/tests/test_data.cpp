#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "insertnco/construct.hpp"
#include "insertnco/data.hpp"
#include "test_util.hpp"

using namespace insertnco;

namespace {

// Exhaustive minimum over all tours fixing node 0 first.
double brute_force_optimum(const Instance& instance) {
  std::vector<int> rest(instance.num_nodes() - 1);
  std::iota(rest.begin(), rest.end(), 1);
  double best = std::numeric_limits<double>::infinity();
  do {
    CyclicSolution tour;
    tour.order.push_back(0);
    tour.order.insert(tour.order.end(), rest.begin(), rest.end());
    best = std::min(best, tour_length(instance, tour));
  } while (std::next_permutation(rest.begin(), rest.end()));
  return best;
}

const char* kMiniTsp =
    "NAME : mini5\n"
    "TYPE : TSP\n"
    "DIMENSION : 5\n"
    "EDGE_WEIGHT_TYPE : EUC_2D\n"
    "NODE_COORD_SECTION\n"
    "1 0 0\n"
    "2 10 0\n"
    "3 10 10\n"
    "4 0 10\n"
    "5 5 5\n"
    "EOF\n";

const char* kMiniCvrp =
    "NAME : mini-cvrp\n"
    "TYPE : CVRP\n"
    "DIMENSION : 4\n"
    "EDGE_WEIGHT_TYPE : EUC_2D\n"
    "CAPACITY : 30\n"
    "NODE_COORD_SECTION\n"
    "1 0 0\n"
    "2 5 5\n"
    "3 5 -5\n"
    "4 -5 0\n"
    "DEMAND_SECTION\n"
    "1 0\n"
    "2 10\n"
    "3 20\n"
    "4 5\n"
    "DEPOT_SECTION\n"
    "1\n"
    "-1\n"
    "EOF\n";

}  // namespace

TEST_CASE("gen_uniform_tsp basics") {
  Rng rng(1);
  CHECK(gen_uniform_tsp(10, 0, rng).empty());
  const auto batch = gen_uniform_tsp(10, 5, rng);
  REQUIRE(batch.size() == 5);
  for (const auto& instance : batch) {
    CHECK(instance.num_nodes() == 10);
    for (const auto& c : instance.coords) {
      CHECK(c.x() >= 0.0);
      CHECK(c.x() < 1.0);
      CHECK(c.y() >= 0.0);
      CHECK(c.y() < 1.0);
    }
  }
  Rng r1(9), r2(9);
  const auto a = gen_uniform_tsp(6, 3, r1);
  const auto b = gen_uniform_tsp(6, 3, r2);
  for (int i = 0; i < 3; ++i) CHECK(instance_to_json(a[i]) == instance_to_json(b[i]));
}

TEST_CASE("gen_uniform_cvrp demand convention") {
  Rng rng(2);
  const auto batch = gen_uniform_cvrp(100, 2, 50, rng);
  for (const auto& instance : batch) {
    CHECK(instance.capacity == 50);
    CHECK(instance.demands[0] == 0.0);
    for (int i = 1; i <= 100; ++i) {
      CHECK(instance.demands[i] >= 1.0);
      CHECK(instance.demands[i] <= 9.0);
      CHECK(instance.demands[i] == std::floor(instance.demands[i]));
    }
  }
}

TEST_CASE("held_karp equals brute force on random n=9 instances") {
  Rng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const Instance instance = testutil::random_tsp(9, rng);
    const HeldKarpResult result = held_karp(instance);
    CHECK(std::abs(result.length - brute_force_optimum(instance)) < 1e-9);
    CHECK(tour_length(instance, result.tour) == doctest::Approx(result.length));
    validate_solution(instance, result.tour);
  }
}

TEST_CASE("held_karp elementary cases and guards") {
  CHECK(held_karp(testutil::square_tsp()).length == doctest::Approx(4.0));

  Instance triangle;
  triangle.kind = ProblemKind::Tsp;
  triangle.coords = {{0, 0}, {3, 0}, {0, 4}};
  CHECK(held_karp(triangle).length == doctest::Approx(12.0));

  Rng rng(5);
  const Instance big = testutil::random_tsp(21, rng);
  CHECK_THROWS_AS(held_karp(big), Error);
  const Instance cvrp = testutil::random_cvrp(5, 20, rng);
  CHECK_THROWS_AS(held_karp(cvrp), Error);
}

TEST_CASE("held_karp never loses to random tours") {
  Rng rng(77);
  const Instance instance = testutil::random_tsp(10, rng);
  const double optimum = held_karp(instance).length;
  std::vector<int> order(10);
  std::iota(order.begin(), order.end(), 0);
  for (int i = 0; i < 1000; ++i) {
    rng.shuffle(order);
    CHECK(optimum <= tour_length(instance, CyclicSolution{order}) + 1e-12);
  }
}

TEST_CASE("two_opt descent is a fixed point on its own output") {
  Rng rng(8);
  const Instance instance = testutil::random_tsp(30, rng);
  std::vector<int> order(30);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  const CyclicSolution once = two_opt_descent(instance, CyclicSolution{order});
  const CyclicSolution twice = two_opt_descent(instance, once);
  CHECK(once.order == twice.order);
  const CyclicSolution full = tsp_local_search(instance, once);
  CHECK(tsp_local_search(instance, full).order == full.order);
}

TEST_CASE("local_search_label reaches the optimum on most small instances") {
  Rng rng(13);
  int hits = 0;
  const int trials = 100;
  for (int trial = 0; trial < trials; ++trial) {
    const Instance instance = testutil::random_tsp(5 + trial % 8, rng);
    Rng label_rng(trial);
    const CyclicSolution label = local_search_label(instance, 3, label_rng);
    validate_solution(instance, label);
    const double optimum = held_karp(instance).length;
    CHECK(tour_length(instance, label) >= optimum - 1e-9);
    if (tour_length(instance, label) <= optimum + 1e-9) ++hits;
  }
  CHECK(hits >= 90);
}

TEST_CASE("local_search_label never loses to cheapest insertion") {
  Rng rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const Instance tsp = testutil::random_tsp(40, rng);
    Rng r1(trial), r2(trial);
    const double labeled = tour_length(tsp, local_search_label(tsp, 2, r1));
    const double constructed = tour_length(
        tsp, construct(tsp, cheapest_insertion_policy, SelectorKind::NearestEuclid, r2));
    CHECK(labeled <= constructed + 1e-9);

    const Instance cvrp = testutil::random_cvrp(25, 20, rng);
    Rng r3(trial), r4(trial);
    const CyclicSolution label = local_search_label(cvrp, 2, r3);
    validate_solution(cvrp, label);
    const double cvrp_constructed = tour_length(
        cvrp, construct(cvrp, cheapest_insertion_policy, SelectorKind::NearestEuclid, r4));
    CHECK(tour_length(cvrp, label) <= cvrp_constructed + 1e-9);
  }
}

TEST_CASE("parse_tsplib reads the EUC_2D subset") {
  const Instance instance = parse_tsplib(kMiniTsp);
  CHECK(instance.name == "mini5");
  CHECK(instance.num_nodes() == 5);
  CHECK(instance.coords[4] == Eigen::Vector2d(5, 5));

  SUBCASE("dimension mismatch") {
    std::string broken = kMiniTsp;
    broken.replace(broken.find("DIMENSION : 5"), 13, "DIMENSION : 6");
    CHECK_THROWS_AS(parse_tsplib(broken), Error);
  }
  SUBCASE("unsupported edge weights") {
    std::string broken = kMiniTsp;
    broken.replace(broken.find("EUC_2D"), 6, "EXPLICIT");
    try {
      parse_tsplib(broken);
      FAIL("expected UnsupportedEdgeWeightType");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::UnsupportedEdgeWeightType);
    }
  }
}

TEST_CASE("parse_cvrplib maps the depot to index 0") {
  const Instance instance = parse_cvrplib(kMiniCvrp);
  CHECK(instance.name == "mini-cvrp");
  CHECK(instance.num_nodes() == 4);
  CHECK(instance.num_customers() == 3);
  CHECK(instance.capacity == 30);
  CHECK(instance.demands == std::vector<double>{0, 10, 20, 5});

  SUBCASE("missing capacity") {
    std::string broken = kMiniCvrp;
    broken.replace(broken.find("CAPACITY : 30\n"), 14, "");
    CHECK_THROWS_AS(parse_cvrplib(broken), Error);
  }
  SUBCASE("depot demand normalized with a warning") {
    std::string tweaked = kMiniCvrp;
    tweaked.replace(tweaked.find("1 0\n"), 4, "1 3\n");
    const Instance fixed = parse_cvrplib(tweaked);
    CHECK(fixed.demands[0] == 0.0);
  }
  SUBCASE("missing demand entry") {
    std::string broken = kMiniCvrp;
    broken.replace(broken.find("4 5\n"), 4, "");
    try {
      parse_cvrplib(broken);
      FAIL("expected an error");
    } catch (const Error& e) {
      const bool expected = e.kind() == ErrorKind::MissingDemand ||
                            e.kind() == ErrorKind::MalformedSection;
      CHECK(expected);
    }
  }
}

TEST_CASE("tsplib coordinates survive the json round trip bit-exactly") {
  const Instance instance = parse_tsplib(kMiniTsp);
  const Instance back = instance_from_json(instance_to_json(instance));
  for (int i = 0; i < instance.num_nodes(); ++i) {
    CHECK(back.coords[i].x() == instance.coords[i].x());
    CHECK(back.coords[i].y() == instance.coords[i].y());
  }
}

TEST_CASE("dataset round trip and corrupt line reporting") {
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "insertnco_test_dataset.jsonl";
  Rng rng(3);
  std::vector<DatasetEntry> entries;
  DatasetEntry labeled;
  labeled.instance = testutil::random_tsp(7, rng);
  labeled.label = held_karp(labeled.instance).tour;
  entries.push_back(labeled);
  DatasetEntry unlabeled;
  unlabeled.instance = testutil::random_cvrp(5, 25, rng);
  entries.push_back(unlabeled);

  write_dataset(path.string(), entries);
  const auto back = read_dataset(path.string());
  REQUIRE(back.size() == 2);
  CHECK(back[0].label.has_value());
  CHECK(back[0].label->order == labeled.label->order);
  CHECK_FALSE(back[1].label.has_value());
  CHECK(dataset_entry_to_json(back[0]) == dataset_entry_to_json(entries[0]));
  CHECK(dataset_entry_to_json(back[1]) == dataset_entry_to_json(entries[1]));

  std::ofstream(path, std::ios::app) << "{not json}\n";
  try {
    read_dataset(path.string());
    FAIL("expected CorruptLine");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CorruptLine);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  fs::remove(path);
}
