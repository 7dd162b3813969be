#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "insertnco/construct.hpp"
#include "insertnco/data.hpp"
#include "test_util.hpp"

using namespace insertnco;

namespace {

Instance small_cvrp() {
  Instance cvrp;
  cvrp.kind = ProblemKind::Cvrp;
  cvrp.coords = {{0, 0}, {1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  cvrp.demands = {0, 4, 3, 2, 1};
  cvrp.capacity = 5;
  return cvrp;
}

// Construct with a per-step check that the length increase equals the
// reported insertion delta.
CyclicSolution checked_construct(const Instance& instance, const PositionPolicy& policy,
                                 SelectorKind selector, Rng& rng) {
  InsertionState state = instance.kind == ProblemKind::Tsp ? make_tsp_state(instance, 0)
                                                           : make_cvrp_state(instance);
  double length = tour_length(instance, to_solution(state));
  while (!state.unvisited.empty()) {
    select_next_node(state, selector, rng);
    const Position position = policy(state);
    const double delta = insertion_delta(state, position, state.current_node);
    insert_current(state, position);
    const double new_length = tour_length(instance, to_solution(state));
    REQUIRE(std::abs(new_length - (length + delta)) < 1e-9);
    if (!state.tsp()) {
      for (std::size_t r = 0; r < state.routes.size(); ++r)
        REQUIRE(state.route_remaining(static_cast<int>(r)) >= -1e-9);
    }
    length = new_length;
  }
  return to_solution(state);
}

}  // namespace

TEST_CASE("select_next_node strategies") {
  Instance instance;
  instance.kind = ProblemKind::Tsp;
  instance.coords = {{0, 0}, {2, 0}, {1, 0}, {3, 0}};
  InsertionState state = make_tsp_state(instance, 0);
  Rng rng(1);

  SUBCASE("nearest euclid picks the distance-1 node") {
    CHECK(select_next_node(state, SelectorKind::NearestEuclid, rng) == 2);
    CHECK(state.current_node == 2);
    CHECK(state.unvisited == std::vector<int>{1, 3});
  }
  SUBCASE("single unvisited node is forced") {
    select_next_node(state, SelectorKind::NearestEuclid, rng);
    insert_current(state, cheapest_insertion_policy(state));
    select_next_node(state, SelectorKind::NearestEuclid, rng);
    insert_current(state, cheapest_insertion_policy(state));
    for (const SelectorKind kind :
         {SelectorKind::NearestEuclid, SelectorKind::Random}) {
      InsertionState copy = state;
      Rng r(9);
      CHECK(select_next_node(copy, kind, r) == 3);
    }
  }
  SUBCASE("random selection replays with the seed") {
    Rng r1(5), r2(5);
    InsertionState s1 = make_tsp_state(instance, 0);
    InsertionState s2 = make_tsp_state(instance, 0);
    for (int i = 0; i < 3; ++i) {
      CHECK(select_next_node(s1, SelectorKind::Random, r1) ==
            select_next_node(s2, SelectorKind::Random, r2));
      insert_current(s1, cheapest_insertion_policy(s1));
      insert_current(s2, cheapest_insertion_policy(s2));
    }
  }
  SUBCASE("polar selection is rejected on TSP") {
    CHECK_THROWS_AS(select_next_node(state, SelectorKind::NearestPolar, rng), Error);
  }
  SUBCASE("empty unvisited set throws") {
    InsertionState s = make_tsp_state(instance, 0);
    Rng r(2);
    for (int i = 0; i < 3; ++i) {
      select_next_node(s, SelectorKind::Random, r);
      insert_current(s, cheapest_insertion_policy(s));
    }
    CHECK_THROWS_AS(select_next_node(s, SelectorKind::Random, r), Error);
  }
}

TEST_CASE("polar selection orders CVRP candidates by angle") {
  Instance cvrp;
  cvrp.kind = ProblemKind::Cvrp;
  // Depot at origin; last node on +x; node 2 at 90 degrees (close), node 3
  // at ~29 degrees (far).
  cvrp.coords = {{0, 0}, {1, 0}, {0, 1.05}, {3 * std::cos(0.5), 3 * std::sin(0.5)}};
  cvrp.demands = {0, 1, 1, 1};
  cvrp.capacity = 10;
  InsertionState state = make_cvrp_state(cvrp);
  REQUIRE(state.last_node == 1);
  Rng rng(1);
  // Node 3 is angularly closer to node 1 than node 2 even though it is
  // farther in Euclidean distance.
  InsertionState euclid_state = state;
  Rng r2(1);
  CHECK(select_next_node(euclid_state, SelectorKind::NearestEuclid, r2) == 2);
  CHECK(select_next_node(state, SelectorKind::NearestPolar, rng) == 3);
}

TEST_CASE("valid_positions enumerates cycle edges") {
  const Instance square = testutil::square_tsp();
  InsertionState state = make_tsp_state(square, 0);
  Rng rng(1);
  select_next_node(state, SelectorKind::NearestEuclid, rng);
  CHECK(valid_positions(state).size() == 1);  // the self-loop of a 1-node partial
  insert_current(state, valid_positions(state).front());

  select_next_node(state, SelectorKind::NearestEuclid, rng);
  CHECK(valid_positions(state).size() == 2);
  insert_current(state, cheapest_insertion_policy(state));

  select_next_node(state, SelectorKind::NearestEuclid, rng);
  CHECK(valid_positions(state).size() == 3);  // (pi1,pi2),(pi2,pi3),(pi3,pi1)
}

TEST_CASE("valid_positions filters CVRP routes by remaining capacity") {
  const Instance cvrp = small_cvrp();
  InsertionState state = make_cvrp_state(cvrp);  // route {1} or {4}: nearest is tied
  REQUIRE(state.routes.size() == 1);
  // Build a state by hand: route 0 = {1} (demand 4, remaining 1),
  // route 1 = {2} (demand 3, remaining 2). Current node 3 has demand 2.
  state = InsertionState{};
  state.instance = &cvrp;
  state.routes = {{1}, {2}};
  state.route_demand = {4, 3};
  state.is_unvisited.assign(5, 0);
  state.is_unvisited[4] = 1;
  state.unvisited = {4};
  state.last_node = 2;
  state.current_node = 3;

  const auto positions = valid_positions(state);
  // Oracle: enumerate all edges, keep those whose route still fits demand 2.
  std::vector<Position> expected;
  for (int r = 0; r < 2; ++r) {
    if (cvrp.capacity - state.route_demand[r] < 2.0) continue;
    for (int e = 0; e <= 1; ++e) expected.push_back({r, e, false});
  }
  expected.push_back({0, 0, true});
  REQUIRE(positions.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) CHECK(positions[i] == expected[i]);
  CHECK(positions.front().route == 1);  // route 0 is full
  CHECK(positions.back().new_route);
}

TEST_CASE("insertion_delta formula and NewRoute cost") {
  const Instance square = testutil::square_tsp();
  InsertionState state = state_from_solution(square, CyclicSolution{{0, 1, 2, 3}});
  Instance with_extra = square;
  with_extra.coords.push_back({0.5, -0.5});
  state.instance = &with_extra;
  state.is_unvisited.assign(5, 0);
  state.current_node = 4;
  // Bottom edge (0,1): sqrt(0.5) + sqrt(0.5) - 1.
  CHECK(insertion_delta(state, {0, 0, false}, 4) ==
        doctest::Approx(std::sqrt(0.5) * 2 - 1.0));

  // A node exactly on the segment costs nothing.
  with_extra.coords[4] = {0.5, 0.0};
  CHECK(insertion_delta(state, {0, 0, false}, 4) == doctest::Approx(0.0));

  Instance cvrp = small_cvrp();
  cvrp.coords[4] = {1.5, 0};
  InsertionState cstate = make_cvrp_state(cvrp);
  cstate.current_node = 4;
  CHECK(insertion_delta(cstate, {0, 0, true}, 4) == doctest::Approx(3.0));

  CHECK_THROWS_AS(insertion_delta(state, {0, 9, false}, 4), Error);
  CHECK_THROWS_AS(insertion_delta(state, {3, 0, false}, 4), Error);
}

TEST_CASE("cheapest_insertion_policy matches a brute-force delta scan") {
  const Instance square = testutil::square_tsp();
  Instance with_extra = square;
  with_extra.coords.push_back({0.5, -0.1});
  InsertionState state = state_from_solution(with_extra, CyclicSolution{{0, 1, 2, 3, 4}});
  state.routes[0] = {0, 1, 2, 3};
  state.is_unvisited.assign(5, 0);
  state.current_node = 4;

  const auto positions = valid_positions(state);
  double best = 1e100;
  Position expected;
  for (const auto& p : positions) {
    const double delta = insertion_delta(state, p, 4);
    if (delta < best) {
      best = delta;
      expected = p;
    }
  }
  CHECK(cheapest_insertion_policy(state) == expected);
  CHECK(expected == Position{0, 0, false});  // the bottom edge

  // Equidistant node: ties resolve to the lower-index position.
  with_extra.coords[4] = {0.5, 0.5};
  CHECK(cheapest_insertion_policy(state) == positions.front());
}

TEST_CASE("insert splices the current node") {
  const Instance square = testutil::square_tsp();
  SUBCASE("1-node partial becomes a 2-cycle") {
    InsertionState state = make_tsp_state(square, 0);
    Rng rng(1);
    select_next_node(state, SelectorKind::NearestEuclid, rng);
    const int node = state.current_node;
    insert_current(state, {0, 0, false});
    CHECK(state.routes[0] == std::vector<int>{0, node});
    CHECK(state.last_node == node);
    CHECK(state.current_node == -1);
  }
  SUBCASE("current lands between the position endpoints") {
    InsertionState state = make_tsp_state(square, 0);
    state.routes[0] = {0, 2};
    state.is_unvisited.assign(4, 0);
    state.is_unvisited[3] = 1;
    state.unvisited = {3};
    state.current_node = 1;
    insert_current(state, {0, 0, false});  // edge (0, 2)
    CHECK(state.routes[0] == std::vector<int>{0, 1, 2});
  }
  SUBCASE("CVRP NewRoute appends a fresh route") {
    Instance cvrp = small_cvrp();
    InsertionState state = make_cvrp_state(cvrp);
    Rng rng(1);
    select_next_node(state, SelectorKind::NearestEuclid, rng);
    insert_current(state, {0, 0, true});
    CHECK(state.routes.size() == 2);
    CHECK(state.routes[1].size() == 1);
    const CyclicSolution sol = to_solution(state);
    CHECK(std::count(sol.order.begin(), sol.order.end(), 0) == 1);  // one delimiter
  }
  SUBCASE("capacity violation throws when forced") {
    Instance cvrp = small_cvrp();
    InsertionState state = make_cvrp_state(cvrp);  // route holds demand-4 node 1
    REQUIRE(state.routes[0] == std::vector<int>{1});
    state.current_node = 2;  // demand 3 does not fit
    state.is_unvisited[2] = 0;
    state.unvisited = {3, 4};
    CHECK_THROWS_AS(insert_current(state, {0, 0, false}), Error);
  }
}

TEST_CASE("construct on elementary instances") {
  SUBCASE("two nodes yield the unique 2-cycle") {
    Instance two;
    two.kind = ProblemKind::Tsp;
    two.coords = {{0, 0}, {0, 7}};
    Rng rng(1);
    const CyclicSolution sol =
        construct(two, cheapest_insertion_policy, SelectorKind::NearestEuclid, rng);
    CHECK(solution_length(two, sol) == doctest::Approx(14.0));
  }
  SUBCASE("unit square reaches the optimum confirmed by held_karp") {
    const Instance square = testutil::square_tsp();
    Rng rng(1);
    const CyclicSolution sol =
        construct(square, cheapest_insertion_policy, SelectorKind::NearestEuclid, rng);
    const HeldKarpResult exact = held_karp(square);
    CHECK(solution_length(square, sol) == doctest::Approx(exact.length));
    CHECK(solution_length(square, sol) == doctest::Approx(4.0));
  }
  SUBCASE("saturated demands force one route per customer") {
    Instance cvrp;
    cvrp.kind = ProblemKind::Cvrp;
    cvrp.coords = {{0, 0}, {1, 0}, {0, 1}, {-1, 0}};
    cvrp.demands = {0, 5, 5, 5};
    cvrp.capacity = 5;
    Rng rng(1);
    const CyclicSolution sol =
        construct(cvrp, cheapest_insertion_policy, SelectorKind::NearestEuclid, rng);
    CHECK(sol.routes().size() == 3);
    validate_solution(cvrp, sol);
  }
}

TEST_CASE("per-step delta identity and structural validity") {
  Rng rng(101);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 5 + rng.pick_index(26);
    const Instance tsp = testutil::random_tsp(n, rng);
    Rng run_rng(trial);
    const CyclicSolution sol =
        checked_construct(tsp, cheapest_insertion_policy, SelectorKind::NearestEuclid, run_rng);
    validate_solution(tsp, sol);

    const Instance cvrp = testutil::random_cvrp(n, 15, rng);
    Rng cvrp_rng(trial);
    auto random_policy = [&](const InsertionState& s) {
      return random_position_policy(s, cvrp_rng);
    };
    const CyclicSolution csol =
        checked_construct(cvrp, random_policy, SelectorKind::NearestPolar, cvrp_rng);
    validate_solution(cvrp, csol);
  }
}

TEST_CASE("cheapest policy attains the minimum delta at every step") {
  Rng rng(7);
  const Instance instance = testutil::random_tsp(15, rng);
  InsertionState state = make_tsp_state(instance, 0);
  Rng run(3);
  while (!state.unvisited.empty()) {
    select_next_node(state, SelectorKind::NearestEuclid, run);
    const Position chosen = cheapest_insertion_policy(state);
    const double chosen_delta = insertion_delta(state, chosen, state.current_node);
    for (const auto& p : valid_positions(state))
      CHECK(chosen_delta <= insertion_delta(state, p, state.current_node) + 1e-12);
    insert_current(state, chosen);
  }
}

TEST_CASE("append_construct baseline") {
  SUBCASE("two nodes match the insertion result") {
    Instance two;
    two.kind = ProblemKind::Tsp;
    two.coords = {{0, 0}, {0, 3}};
    Rng rng(1);
    CHECK(solution_length(two, append_construct(two, SelectorKind::NearestEuclid, rng)) ==
          doctest::Approx(6.0));
  }
  SUBCASE("unit square from corner 0 happens to be optimal") {
    const Instance square = testutil::square_tsp();
    Rng rng(1);
    CHECK(solution_length(square, append_construct(square, SelectorKind::NearestEuclid, rng)) ==
          doctest::Approx(4.0));
  }
  SUBCASE("CVRP appending stays feasible") {
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
      const Instance cvrp = testutil::random_cvrp(30, 20, rng);
      Rng run(trial);
      validate_solution(cvrp, append_construct(cvrp, SelectorKind::NearestEuclid, run));
    }
  }
  SUBCASE("nearest-neighbor appending never beats cheapest insertion on average") {
    Rng rng(2024);
    double append_total = 0.0, insert_total = 0.0;
    for (int i = 0; i < 100; ++i) {
      const Instance tsp = testutil::random_tsp(50, rng);
      Rng r1(i), r2(i);
      append_total += solution_length(tsp, append_construct(tsp, SelectorKind::NearestEuclid, r1));
      insert_total += solution_length(
          tsp, construct(tsp, cheapest_insertion_policy, SelectorKind::NearestEuclid, r2));
    }
    CHECK(append_total / 100.0 >= insert_total / 100.0);
  }
}
