#include <fstream>
#include <json.hpp>

#include "insertnco/data.hpp"

namespace insertnco {

std::string dataset_entry_to_json(const DatasetEntry& entry) {
  nlohmann::json j;
  j["instance"] = nlohmann::json::parse(instance_to_json(entry.instance));
  if (entry.label) j["label"] = entry.label->order;
  return j.dump();
}

DatasetEntry dataset_entry_from_json(const std::string& line, long line_number) {
  try {
    nlohmann::json j = nlohmann::json::parse(line);
    DatasetEntry entry;
    entry.instance = instance_from_json(j.at("instance").dump());
    if (j.contains("label")) {
      entry.label = CyclicSolution{j.at("label").get<std::vector<int>>()};
    }
    return entry;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorKind::CorruptLine,
                "line " + std::to_string(line_number) + ": " + e.what());
  }
}

std::vector<DatasetEntry> read_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::CorruptFile, "cannot open " + path);
  std::vector<DatasetEntry> entries;
  std::string line;
  long line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    entries.push_back(dataset_entry_from_json(line, line_number));
  }
  return entries;
}

void write_dataset(const std::string& path, const std::vector<DatasetEntry>& entries) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::CorruptFile, "cannot open " + path + " for writing");
  for (const auto& entry : entries) out << dataset_entry_to_json(entry) << '\n';
}

}  // namespace insertnco
