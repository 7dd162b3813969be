#pragma once

#include <string>

#include "insertnco/instance.hpp"

namespace insertnco {

// Renders the tour (TSP) or routes (CVRP, one color per route) as an SVG.
void write_solution_svg(const Instance& instance, const CyclicSolution& solution,
                        const std::string& path);

}  // namespace insertnco
