#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_map>

#include "insertnco/data.hpp"

namespace insertnco {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

struct LibFile {
  std::unordered_map<std::string, std::string> headers;
  std::unordered_map<std::string, std::vector<std::string>> sections;
};

// TSPLIB files interleave "KEY : VALUE" headers with block sections that end
// at the next header/section keyword or EOF.
LibFile split_lib_file(const std::string& text) {
  static const char* kSections[] = {"NODE_COORD_SECTION", "DEMAND_SECTION",
                                    "DEPOT_SECTION", "EDGE_WEIGHT_SECTION",
                                    "DISPLAY_DATA_SECTION", "TOUR_SECTION"};
  LibFile out;
  std::istringstream in(text);
  std::string line;
  std::string active_section;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t == "EOF") break;
    bool is_section = false;
    for (const char* name : kSections) {
      if (t == name) {
        active_section = name;
        out.sections[active_section];
        is_section = true;
        break;
      }
    }
    if (is_section) continue;
    const auto colon = t.find(':');
    const bool starts_alpha = std::isalpha(static_cast<unsigned char>(t[0]));
    if (colon != std::string::npos && starts_alpha) {
      out.headers[trim(t.substr(0, colon))] = trim(t.substr(colon + 1));
      active_section.clear();
      continue;
    }
    if (active_section.empty())
      throw Error(ErrorKind::MalformedSection, "stray line outside any section: " + t);
    out.sections[active_section].push_back(t);
  }
  return out;
}

std::string header_or(const LibFile& file, const std::string& key,
                      const std::string& fallback) {
  const auto it = file.headers.find(key);
  return it == file.headers.end() ? fallback : it->second;
}

int required_dimension(const LibFile& file) {
  const auto it = file.headers.find("DIMENSION");
  if (it == file.headers.end())
    throw Error(ErrorKind::MalformedSection, "missing DIMENSION");
  return std::stoi(it->second);
}

void check_edge_weight_type(const LibFile& file) {
  const std::string type = header_or(file, "EDGE_WEIGHT_TYPE", "");
  if (type != "EUC_2D")
    throw Error(ErrorKind::UnsupportedEdgeWeightType,
                "only EUC_2D is supported, got '" + type + "'");
}

// Parses "index x y" lines into 0-based coords (file indices are 1-based).
std::vector<Eigen::Vector2d> parse_coords(const LibFile& file, int dimension) {
  const auto it = file.sections.find("NODE_COORD_SECTION");
  if (it == file.sections.end())
    throw Error(ErrorKind::MalformedSection, "missing NODE_COORD_SECTION");
  if (static_cast<int>(it->second.size()) != dimension)
    throw Error(ErrorKind::MalformedSection,
                "NODE_COORD_SECTION length does not match DIMENSION");
  std::vector<Eigen::Vector2d> coords(dimension, Eigen::Vector2d::Zero());
  std::vector<char> seen(dimension, 0);
  for (const auto& line : it->second) {
    std::istringstream ls(line);
    int index;
    double x, y;
    if (!(ls >> index >> x >> y) || index < 1 || index > dimension || seen[index - 1])
      throw Error(ErrorKind::MalformedSection, "bad coordinate line: " + line);
    coords[index - 1] = {x, y};
    seen[index - 1] = 1;
  }
  return coords;
}

}  // namespace

Instance parse_tsplib(const std::string& text) {
  const LibFile file = split_lib_file(text);
  const std::string type = header_or(file, "TYPE", "TSP");
  if (type != "TSP")
    throw Error(ErrorKind::UnsupportedProblem, "expected TYPE TSP, got '" + type + "'");
  check_edge_weight_type(file);
  Instance instance;
  instance.kind = ProblemKind::Tsp;
  instance.name = header_or(file, "NAME", "unnamed");
  instance.coords = parse_coords(file, required_dimension(file));
  instance.validate();
  return instance;
}

Instance parse_cvrplib(const std::string& text) {
  const LibFile file = split_lib_file(text);
  const std::string type = header_or(file, "TYPE", "CVRP");
  if (type != "CVRP")
    throw Error(ErrorKind::UnsupportedProblem, "expected TYPE CVRP, got '" + type + "'");
  check_edge_weight_type(file);
  const int dimension = required_dimension(file);

  const auto capacity_it = file.headers.find("CAPACITY");
  if (capacity_it == file.headers.end())
    throw Error(ErrorKind::MalformedSection, "missing CAPACITY");

  Instance instance;
  instance.kind = ProblemKind::Cvrp;
  instance.name = header_or(file, "NAME", "unnamed");
  instance.capacity = std::stod(capacity_it->second);
  instance.coords = parse_coords(file, dimension);

  const auto demand_it = file.sections.find("DEMAND_SECTION");
  if (demand_it == file.sections.end())
    throw Error(ErrorKind::MalformedSection, "missing DEMAND_SECTION");
  instance.demands.assign(dimension, -1.0);
  for (const auto& line : demand_it->second) {
    std::istringstream ls(line);
    int index;
    double demand;
    if (!(ls >> index >> demand) || index < 1 || index > dimension)
      throw Error(ErrorKind::MalformedSection, "bad demand line: " + line);
    instance.demands[index - 1] = demand;
  }
  for (int i = 0; i < dimension; ++i) {
    if (instance.demands[i] < 0.0)
      throw Error(ErrorKind::MissingDemand,
                  "no demand for node " + std::to_string(i + 1));
  }

  const auto depot_it = file.sections.find("DEPOT_SECTION");
  if (depot_it != file.sections.end()) {
    for (const auto& line : depot_it->second) {
      const int value = std::stoi(line);
      if (value == -1) break;
      if (value != 1)
        throw Error(ErrorKind::MalformedSection,
                    "only node 1 is supported as the depot");
    }
  }
  if (instance.demands[0] != 0.0) {
    std::cerr << "warning: depot demand " << instance.demands[0]
              << " normalized to 0 in '" << instance.name << "'\n";
    instance.demands[0] = 0.0;
  }
  instance.validate();
  return instance;
}

Instance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::CorruptFile, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".tsp")
    return parse_tsplib(buffer.str());
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".vrp")
    return parse_cvrplib(buffer.str());
  return instance_from_json(buffer.str());
}

}  // namespace insertnco
