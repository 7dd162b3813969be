#pragma once

#include <optional>
#include <string>
#include <vector>

#include "insertnco/instance.hpp"
#include "insertnco/rng.hpp"

namespace insertnco {

// -------------------------------------------------------------------------
// Generation
// -------------------------------------------------------------------------

// Coordinates i.i.d. uniform on [0,1]^2.
std::vector<Instance> gen_uniform_tsp(int n, int count, Rng& rng,
                                      const std::string& name_prefix = "tsp");

// Depot + n customers uniform on [0,1]^2, integer demands uniform in [1,9].
std::vector<Instance> gen_uniform_cvrp(int n, int count, double capacity, Rng& rng,
                                       const std::string& name_prefix = "cvrp");

// -------------------------------------------------------------------------
// Labeling oracles
// -------------------------------------------------------------------------

struct HeldKarpResult {
  CyclicSolution tour;
  double length = 0.0;
};

// Exact TSP optimum by subset dynamic programming, O(n^2 2^n); guarded to
// n <= 20.
HeldKarpResult held_karp(const Instance& instance);

// One pass of 2-opt to a local optimum (TSP).
CyclicSolution two_opt_descent(const Instance& instance, CyclicSolution solution);
// Relocation of segments of length 1..3 to a local optimum (TSP).
CyclicSolution or_opt_descent(const Instance& instance, CyclicSolution solution);
// Alternates 2-opt and Or-opt until neither improves.
CyclicSolution tsp_local_search(const Instance& instance, CyclicSolution solution);
// Intra-route 2-opt plus inter-route relocate/swap to a local optimum.
CyclicSolution cvrp_local_search(const Instance& instance, CyclicSolution solution);

// Near-optimal labeler: descent from a cheapest-insertion start, then
// `restart_budget` extra descents from randomized starts, best kept. The
// result is never worse than the cheapest-insertion construction.
CyclicSolution local_search_label(const Instance& instance, int restart_budget, Rng& rng);

// -------------------------------------------------------------------------
// TSPLIB / CVRPLIB ingestion (EUC_2D subset)
// -------------------------------------------------------------------------

Instance parse_tsplib(const std::string& text);
Instance parse_cvrplib(const std::string& text);
Instance load_instance_file(const std::string& path);  // dispatches on extension

// -------------------------------------------------------------------------
// Dataset serialization: JSON Lines of {"instance":{...},"label":[...]?}
// -------------------------------------------------------------------------

struct DatasetEntry {
  Instance instance;
  std::optional<CyclicSolution> label;
};

std::vector<DatasetEntry> read_dataset(const std::string& path);
void write_dataset(const std::string& path, const std::vector<DatasetEntry>& entries);
std::string dataset_entry_to_json(const DatasetEntry& entry);
DatasetEntry dataset_entry_from_json(const std::string& line, long line_number = 0);

}  // namespace insertnco
