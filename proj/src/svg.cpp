#include "insertnco/svg.hpp"

#include <fstream>

namespace insertnco {

namespace {

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

}  // namespace

void write_solution_svg(const Instance& instance, const CyclicSolution& solution,
                        const std::string& path) {
  validate_solution(instance, solution);
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::CorruptFile, "cannot open " + path + " for writing");

  Eigen::Vector2d lo = instance.coords.front();
  Eigen::Vector2d hi = instance.coords.front();
  for (const auto& c : instance.coords) {
    lo = lo.cwiseMin(c);
    hi = hi.cwiseMax(c);
  }
  const double span = std::max({hi.x() - lo.x(), hi.y() - lo.y(), 1e-12});
  const double size = 640.0, margin = 20.0;
  auto px = [&](const Eigen::Vector2d& c) {
    return margin + (c.x() - lo.x()) / span * (size - 2 * margin);
  };
  auto py = [&](const Eigen::Vector2d& c) {
    // SVG y grows downward.
    return size - margin - (c.y() - lo.y()) / span * (size - 2 * margin);
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\""
      << size << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  auto polygon = [&](const std::vector<int>& cycle, const char* color, bool close) {
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (int node : cycle)
      out << px(instance.coords[node]) << ',' << py(instance.coords[node]) << ' ';
    if (close && !cycle.empty())
      out << px(instance.coords[cycle.front()]) << ',' << py(instance.coords[cycle.front()]);
    out << "\"/>\n";
  };

  if (instance.kind == ProblemKind::Tsp) {
    polygon(solution.order, kPalette[0], true);
  } else {
    int color = 0;
    for (const auto& route : solution.routes()) {
      std::vector<int> cycle = {0};
      cycle.insert(cycle.end(), route.begin(), route.end());
      polygon(cycle, kPalette[color % 10], true);
      ++color;
    }
  }

  for (int i = 0; i < instance.num_nodes(); ++i) {
    out << "<circle cx=\"" << px(instance.coords[i]) << "\" cy=\"" << py(instance.coords[i])
        << "\" r=\"3\" fill=\"black\"/>\n";
  }
  if (instance.is_cvrp()) {
    out << "<rect x=\"" << px(instance.depot()) - 5 << "\" y=\"" << py(instance.depot()) - 5
        << "\" width=\"10\" height=\"10\" fill=\"red\"/>\n";
  }
  out << "</svg>\n";
}

}  // namespace insertnco
