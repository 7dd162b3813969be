#include <cstdio>

#include "insertnco/data.hpp"

namespace insertnco {

namespace {

std::string numbered_name(const std::string& prefix, int n, int index) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s%d_%06d", prefix.c_str(), n, index);
  return buf;
}

}  // namespace

std::vector<Instance> gen_uniform_tsp(int n, int count, Rng& rng,
                                      const std::string& name_prefix) {
  std::vector<Instance> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    Instance instance;
    instance.kind = ProblemKind::Tsp;
    instance.name = numbered_name(name_prefix, n, i);
    instance.coords.reserve(n);
    for (int j = 0; j < n; ++j) {
      const double x = rng.uniform01();
      const double y = rng.uniform01();
      instance.coords.emplace_back(x, y);
    }
    out.push_back(std::move(instance));
  }
  return out;
}

std::vector<Instance> gen_uniform_cvrp(int n, int count, double capacity, Rng& rng,
                                       const std::string& name_prefix) {
  std::vector<Instance> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    Instance instance;
    instance.kind = ProblemKind::Cvrp;
    instance.name = numbered_name(name_prefix, n, i);
    instance.coords.reserve(n + 1);
    instance.demands.reserve(n + 1);
    instance.capacity = capacity;
    for (int j = 0; j <= n; ++j) {
      const double x = rng.uniform01();
      const double y = rng.uniform01();
      instance.coords.emplace_back(x, y);
      instance.demands.push_back(j == 0 ? 0.0 : static_cast<double>(rng.uniform_int(1, 9)));
    }
    out.push_back(std::move(instance));
  }
  return out;
}

}  // namespace insertnco
