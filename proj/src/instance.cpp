#include "insertnco/instance.hpp"

#include <cmath>
#include <json.hpp>

namespace insertnco {

void Instance::validate() const {
  const int n = num_nodes();
  if (kind == ProblemKind::Tsp) {
    if (n < 2) throw Error(ErrorKind::InvalidSolution, "TSP instance needs at least 2 nodes");
    if (!demands.empty())
      throw Error(ErrorKind::InvalidSolution, "TSP instance must not carry demands");
  } else {
    if (n < 2)
      throw Error(ErrorKind::InvalidSolution, "CVRP instance needs a depot and a customer");
    if (static_cast<int>(demands.size()) != n)
      throw Error(ErrorKind::InvalidSolution, "demand list does not match node count");
    if (demands[0] != 0.0)
      throw Error(ErrorKind::InvalidSolution, "depot demand must be zero");
    if (!(capacity > 0.0))
      throw Error(ErrorKind::InvalidSolution, "capacity must be positive");
    for (int i = 1; i < n; ++i) {
      if (demands[i] < 0.0 || demands[i] > capacity)
        throw Error(ErrorKind::InvalidSolution,
                    "customer demand outside [0, capacity] at node " + std::to_string(i));
    }
  }
  for (const auto& c : coords) {
    if (!std::isfinite(c.x()) || !std::isfinite(c.y()))
      throw Error(ErrorKind::InvalidSolution, "non-finite coordinate");
  }
}

std::vector<int> customer_ids(const Instance& instance) {
  std::vector<int> ids;
  const int first = instance.is_cvrp() ? 1 : 0;
  ids.reserve(instance.num_customers());
  for (int i = first; i < instance.num_nodes(); ++i) ids.push_back(i);
  return ids;
}

CyclicSolution CyclicSolution::from_routes(const std::vector<std::vector<int>>& routes) {
  CyclicSolution out;
  for (const auto& route : routes) {
    if (route.empty()) continue;
    if (!out.order.empty()) out.order.push_back(0);
    out.order.insert(out.order.end(), route.begin(), route.end());
  }
  return out;
}

std::vector<std::vector<int>> CyclicSolution::routes() const {
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  for (int node : order) {
    if (node == 0) {
      out.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(node);
    }
  }
  out.push_back(std::move(current));
  return out;
}

void validate_solution(const Instance& instance, const CyclicSolution& solution) {
  const int n = instance.num_nodes();
  if (instance.kind == ProblemKind::Tsp) {
    if (static_cast<int>(solution.order.size()) != n)
      throw Error(ErrorKind::InvalidSolution, "tour does not visit every node exactly once");
    std::vector<char> seen(n, 0);
    for (int node : solution.order) {
      if (node < 0 || node >= n || seen[node])
        throw Error(ErrorKind::InvalidSolution, "tour is not a permutation");
      seen[node] = 1;
    }
  } else {
    if (solution.order.empty())
      throw Error(ErrorKind::InvalidSolution, "empty CVRP solution");
    if (solution.order.front() == 0 || solution.order.back() == 0)
      throw Error(ErrorKind::InvalidSolution,
                  "leading/trailing depot visits must stay implied");
    std::vector<char> seen(n, 0);
    double route_demand = 0.0;
    int prev = 0;
    for (int node : solution.order) {
      if (node == 0) {
        if (prev == 0)
          throw Error(ErrorKind::InvalidSolution, "empty route (adjacent depot delimiters)");
        route_demand = 0.0;
      } else {
        if (node < 0 || node >= n || seen[node])
          throw Error(ErrorKind::InvalidSolution, "customer missing or visited twice");
        seen[node] = 1;
        route_demand += instance.demands[node];
        if (route_demand > instance.capacity + 1e-9)
          throw Error(ErrorKind::InvalidSolution, "route exceeds vehicle capacity");
      }
      prev = node;
    }
    for (int i = 1; i < n; ++i) {
      if (!seen[i])
        throw Error(ErrorKind::InvalidSolution,
                    "customer " + std::to_string(i) + " not visited");
    }
  }
}

bool solution_is_valid(const Instance& instance, const CyclicSolution& solution) {
  try {
    validate_solution(instance, solution);
    return true;
  } catch (const Error&) {
    return false;
  }
}

std::string instance_to_json(const Instance& instance) {
  nlohmann::json j;
  j["kind"] = instance.is_cvrp() ? "cvrp" : "tsp";
  j["name"] = instance.name;
  auto coords = nlohmann::json::array();
  for (const auto& c : instance.coords) coords.push_back({c.x(), c.y()});
  j["coords"] = std::move(coords);
  if (instance.is_cvrp()) {
    j["demands"] = instance.demands;
    j["capacity"] = instance.capacity;
  }
  return j.dump();
}

Instance instance_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  Instance instance;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "tsp") {
    instance.kind = ProblemKind::Tsp;
  } else if (kind == "cvrp") {
    instance.kind = ProblemKind::Cvrp;
  } else {
    throw Error(ErrorKind::CorruptLine, "unknown problem kind: " + kind);
  }
  instance.name = j.value("name", std::string{});
  for (const auto& pair : j.at("coords")) {
    instance.coords.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
  }
  if (instance.is_cvrp()) {
    instance.demands = j.at("demands").get<std::vector<double>>();
    instance.capacity = j.at("capacity").get<double>();
  }
  return instance;
}

}  // namespace insertnco
