#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "insertnco/data.hpp"
#include "insertnco/model_io.hpp"
#include "insertnco/parallel.hpp"
#include "insertnco/pipeline.hpp"
#include "insertnco/svg.hpp"
#include "insertnco/train.hpp"

using namespace insertnco;

namespace {

struct SolutionRecord {
  std::string name;
  CyclicSolution solution;
  double length = 0.0;
};

std::vector<DatasetEntry> load_entries(const std::string& path) {
  if (path.size() >= 4 &&
      (path.substr(path.size() - 4) == ".tsp" || path.substr(path.size() - 4) == ".vrp")) {
    DatasetEntry entry;
    entry.instance = load_instance_file(path);
    return {entry};
  }
  return read_dataset(path);
}

void write_solutions(const std::string& path, const std::vector<SolutionRecord>& records) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::CorruptFile, "cannot open " + path + " for writing");
  for (const auto& record : records) {
    nlohmann::json j;
    j["name"] = record.name;
    j["order"] = record.solution.order;
    j["length"] = record.length;
    out << j.dump() << '\n';
  }
}

std::vector<SolutionRecord> read_solutions(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::CorruptFile, "cannot open " + path);
  std::vector<SolutionRecord> records;
  std::string line;
  long line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    try {
      nlohmann::json j = nlohmann::json::parse(line);
      SolutionRecord record;
      record.name = j.value("name", std::string{});
      record.solution.order = j.at("order").get<std::vector<int>>();
      record.length = j.value("length", 0.0);
      records.push_back(std::move(record));
    } catch (const std::exception& e) {
      throw Error(ErrorKind::CorruptLine,
                  "line " + std::to_string(line_number) + ": " + e.what());
    }
  }
  return records;
}

SelectorKind resolve_selector(const std::string& name, const Instance& instance) {
  if (name == "nearest") return SelectorKind::NearestEuclid;
  if (name == "polar") return SelectorKind::NearestPolar;
  if (name == "random") return SelectorKind::Random;
  return default_selector(instance);  // "auto"
}

int default_k(const Instance& instance) { return instance.is_cvrp() ? 200 : 100; }

// Length with the TSPLIB EUC_2D nearest-integer convention, used only when
// reporting against published optima.
double rounded_length(const Instance& instance, const CyclicSolution& solution) {
  auto rounded = [&](int a, int b) {
    return static_cast<double>(std::llround(node_distance(instance, a, b)));
  };
  double total = 0.0;
  if (instance.kind == ProblemKind::Tsp) {
    const auto& order = solution.order;
    for (std::size_t i = 0; i < order.size(); ++i)
      total += rounded(order[i], order[(i + 1) % order.size()]);
  } else {
    int prev = 0;
    for (int node : solution.order) {
      total += rounded(prev, node);
      prev = node;
    }
    total += rounded(prev, 0);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Method runner shared by solve / improve / bench
// ---------------------------------------------------------------------------

struct MethodSpec {
  std::string name;                       // cheapest | random | append | neural | improve
  std::string weights;                    // neural / improve with neural repair
  std::string policy = "cheapest";        // improve repair policy
  std::string selector = "auto";
  std::string decode = "argmax";
  std::string destroy = "distance";
  int iterations = 0;
  int alpha = 300;
  std::optional<int> k;
  std::optional<int> start;
  bool random_start = false;
};

MethodSpec parse_method(const std::string& text) {
  MethodSpec spec;
  std::size_t at = text.find(':');
  spec.name = text.substr(0, at);
  while (at != std::string::npos) {
    const std::size_t next = text.find(':', at + 1);
    const std::string part = text.substr(at + 1, next == std::string::npos
                                                     ? std::string::npos
                                                     : next - at - 1);
    const std::size_t eq = part.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::CorruptLine, "bad method option '" + part + "'");
    const std::string key = part.substr(0, eq);
    const std::string value = part.substr(eq + 1);
    if (key == "weights") spec.weights = value;
    else if (key == "policy") spec.policy = value;
    else if (key == "selector") spec.selector = value;
    else if (key == "decode") spec.decode = value;
    else if (key == "destroy") spec.destroy = value;
    else if (key == "I" || key == "iterations") spec.iterations = std::stoi(value);
    else if (key == "alpha") spec.alpha = std::stoi(value);
    else if (key == "k") spec.k = std::stoi(value);
    else if (key == "start") spec.start = std::stoi(value);
    else throw Error(ErrorKind::CorruptLine, "unknown method option '" + key + "'");
    at = next;
  }
  return spec;
}

struct LoadedModel {
  ModelParams<float> params;
  ModelConfig config;
};

LoadedModel load_model(const MethodSpec& spec, const Instance& sample) {
  if (spec.weights.empty())
    throw Error(ErrorKind::CorruptFile, "method '" + spec.name + "' needs weights=...");
  LoadedModel model{load_params(spec.weights), {}};
  model.config = model.params.config;
  model.config.k_filter = spec.k ? *spec.k : default_k(sample);
  if (model.config.k_filter && *model.config.k_filter <= 0) model.config.k_filter.reset();
  return model;
}

// Solves one instance with the given method; lengths are reported against
// the original coordinates.
CyclicSolution run_method(const MethodSpec& spec, const LoadedModel* model,
                          const Instance& instance, std::uint64_t seed, long index,
                          const CyclicSolution* init) {
  Rng rng = derive_rng(seed, static_cast<std::uint64_t>(index));
  const SelectorKind selector = resolve_selector(spec.selector, instance);
  ConstructOptions options;
  options.start_node = spec.start;
  options.random_start = spec.random_start;
  const DecodeMode mode = spec.decode == "sample" ? DecodeMode::Sample : DecodeMode::Argmax;

  auto classical_policy = [&](const std::string& name) -> PositionPolicy {
    if (name == "random")
      return [&rng](const InsertionState& s) { return random_position_policy(s, rng); };
    return cheapest_insertion_policy;
  };

  if (spec.name == "cheapest" || spec.name == "random")
    return construct(instance, classical_policy(spec.name), selector, rng, options);
  if (spec.name == "append") return append_construct(instance, selector, rng);
  if (spec.name == "neural")
    return neural_construct(instance, model->params, model->config, mode, selector, rng,
                            options);
  if (spec.name == "improve") {
    ImproveOptions improve_options;
    improve_options.iterations = spec.iterations;
    improve_options.alpha = spec.alpha;
    improve_options.destroy =
        spec.destroy == "sequence" ? DestroyKind::Sequence : DestroyKind::Distance;
    CyclicSolution start;
    if (init != nullptr) {
      start = *init;
    } else if (spec.policy == "neural") {
      start = neural_construct(instance, model->params, model->config, mode, selector, rng,
                               options);
    } else {
      start = construct(instance, classical_policy(spec.policy), selector, rng, options);
    }
    if (spec.policy == "neural")
      return neural_improve(instance, std::move(start), model->params, model->config, mode,
                            selector, improve_options, rng);
    return improve(instance, std::move(start), classical_policy(spec.policy), selector,
                   improve_options, rng);
  }
  throw Error(ErrorKind::CorruptLine, "unknown method '" + spec.name + "'");
}

std::vector<SolutionRecord> run_method_over(const MethodSpec& spec,
                                            const std::vector<DatasetEntry>& entries,
                                            std::uint64_t seed, int jobs,
                                            const std::vector<SolutionRecord>* inits) {
  std::unique_ptr<LoadedModel> model;
  if (spec.name == "neural" || (spec.name == "improve" && spec.policy == "neural"))
    model = std::make_unique<LoadedModel>(load_model(spec, entries.front().instance));
  std::vector<SolutionRecord> records(entries.size());
  parallel_for_workers(jobs, static_cast<long>(entries.size()), [&](int, long i) {
    const Instance& instance = entries[i].instance;
    const CyclicSolution* init = inits ? &(*inits)[i].solution : nullptr;
    SolutionRecord record;
    record.name = instance.name;
    record.solution = run_method(spec, model.get(), instance, seed, i, init);
    record.length = tour_length(instance, record.solution);
    validate_solution(instance, record.solution);
    records[i] = std::move(record);
  });
  return records;
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

int cmd_gen(const std::string& problem, int n, int count, double capacity,
            std::uint64_t seed, const std::string& prefix, const std::string& out) {
  Rng rng(seed);
  std::vector<DatasetEntry> entries;
  if (problem == "tsp") {
    for (auto& instance : gen_uniform_tsp(n, count, rng, prefix.empty() ? "tsp" : prefix))
      entries.push_back({std::move(instance), std::nullopt});
  } else {
    for (auto& instance :
         gen_uniform_cvrp(n, count, capacity, rng, prefix.empty() ? "cvrp" : prefix))
      entries.push_back({std::move(instance), std::nullopt});
  }
  write_dataset(out, entries);
  std::cout << "wrote " << entries.size() << " instances to " << out << "\n";
  return 0;
}

int cmd_label(const std::string& in, const std::string& out, int budget,
              std::uint64_t seed, int jobs) {
  std::vector<DatasetEntry> entries = load_entries(in);
  parallel_for_workers(jobs, static_cast<long>(entries.size()), [&](int, long i) {
    const Instance& instance = entries[i].instance;
    if (instance.kind == ProblemKind::Tsp && instance.num_nodes() <= 20) {
      entries[i].label = held_karp(instance).tour;
    } else {
      Rng rng = derive_rng(seed, static_cast<std::uint64_t>(i));
      entries[i].label = local_search_label(instance, budget, rng);
    }
  });
  write_dataset(out, entries);
  std::cout << "labeled " << entries.size() << " instances to " << out << "\n";
  return 0;
}

int cmd_train(const std::string& data_path, const std::string& val_path,
              const std::string& out, const std::string& log_path, ModelConfig config,
              TrainHyper hyper, const std::string& selector_name) {
  std::vector<DatasetEntry> entries = read_dataset(data_path);
  if (entries.empty()) throw Error(ErrorKind::EmptyDataset, "no training data");
  std::vector<LabeledExample> dataset;
  for (auto& entry : entries) {
    if (entry.label) dataset.push_back({std::move(entry.instance), *entry.label});
  }
  if (dataset.empty())
    throw Error(ErrorKind::EmptyDataset, "training data carries no labels");

  const Instance& sample = dataset.front().instance;
  config.input_dim = sample.is_cvrp() ? 3 : 2;
  hyper.selector = resolve_selector(selector_name, sample);

  Rng prng(hyper.seed);
  ModelParams<float> initial = init_params<float>(config, prng);

  std::ofstream csv(log_path);
  if (!csv) throw Error(ErrorKind::CorruptFile, "cannot open " + log_path + " for writing");

  std::vector<LabeledExample> val;
  if (!val_path.empty()) {
    for (auto& entry : read_dataset(val_path)) {
      if (entry.label) val.push_back({std::move(entry.instance), *entry.label});
    }
    const double before = mean_validation_loss(val, initial, config, hyper.selector,
                                               hyper.seed ^ 0x76616cULL, hyper.jobs);
    std::cout << "validation loss (init): " << before << "\n";
  }

  const TrainState<float> state = train(dataset, config, hyper, std::move(initial),
                                        nullptr, &csv);
  save_params(state.params, out);
  if (!val.empty()) {
    const double after = mean_validation_loss(val, state.params, config, hyper.selector,
                                              hyper.seed ^ 0x76616cULL, hyper.jobs);
    std::cout << "validation loss (trained): " << after << "\n";
  }
  std::cout << "saved weights to " << out << " (log: " << log_path << ")\n";
  return 0;
}

int cmd_solve(const std::string& in, const std::string& out, MethodSpec spec,
              std::uint64_t seed, int jobs) {
  const std::vector<DatasetEntry> entries = load_entries(in);
  if (entries.empty()) throw Error(ErrorKind::EmptyDataset, "no instances in " + in);
  const auto records = run_method_over(spec, entries, seed, jobs, nullptr);
  if (!out.empty()) write_solutions(out, records);
  double total = 0.0;
  for (const auto& record : records) {
    std::cout << record.name << " length " << record.length << "\n";
    total += record.length;
  }
  std::cout << "mean length " << total / records.size() << " over " << records.size()
            << " instances\n";
  return 0;
}

int cmd_improve(const std::string& in, const std::string& init_path, const std::string& out,
                MethodSpec spec, std::uint64_t seed, int jobs) {
  const std::vector<DatasetEntry> entries = load_entries(in);
  if (entries.empty()) throw Error(ErrorKind::EmptyDataset, "no instances in " + in);
  std::vector<SolutionRecord> inits;
  if (!init_path.empty()) {
    inits = read_solutions(init_path);
    if (inits.size() != entries.size())
      throw Error(ErrorKind::CorruptFile, "instance/solution counts differ");
  }
  spec.name = "improve";
  const auto records =
      run_method_over(spec, entries, seed, jobs, inits.empty() ? nullptr : &inits);
  write_solutions(out, records);
  double total = 0.0;
  for (const auto& record : records) total += record.length;
  std::cout << "mean length " << total / records.size() << " over " << records.size()
            << " instances\n";
  return 0;
}

int cmd_bench(const std::string& in, const std::string& ref_path,
              const std::vector<std::string>& methods, bool round_int, std::uint64_t seed,
              int jobs) {
  const std::vector<DatasetEntry> entries = load_entries(in);
  if (entries.empty()) throw Error(ErrorKind::EmptyDataset, "no instances in " + in);

  std::vector<double> reference(entries.size());
  if (!ref_path.empty()) {
    const auto refs = read_solutions(ref_path);
    if (refs.size() != entries.size())
      throw Error(ErrorKind::CorruptFile, "instance/reference counts differ");
    for (std::size_t i = 0; i < refs.size(); ++i)
      reference[i] = round_int ? rounded_length(entries[i].instance, refs[i].solution)
                               : tour_length(entries[i].instance, refs[i].solution);
  } else {
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (!entries[i].label)
        throw Error(ErrorKind::EmptyDataset,
                    "no --ref given and the dataset carries no labels");
      reference[i] = round_int ? rounded_length(entries[i].instance, *entries[i].label)
                               : tour_length(entries[i].instance, *entries[i].label);
    }
  }

  std::printf("%-28s %12s %10s %10s\n", "method", "length", "gap", "time_s");
  for (const auto& text : methods) {
    const MethodSpec spec = parse_method(text);
    const auto t0 = std::chrono::steady_clock::now();
    const auto records = run_method_over(spec, entries, seed, jobs, nullptr);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    double length_total = 0.0, gap_total = 0.0;
    for (std::size_t i = 0; i < records.size(); ++i) {
      const double length = round_int
                                ? rounded_length(entries[i].instance, records[i].solution)
                                : records[i].length;
      length_total += length;
      gap_total += (length - reference[i]) / reference[i];
    }
    std::printf("%-28s %12.5f %9.4f%% %10.2f\n", text.c_str(),
                length_total / records.size(), 100.0 * gap_total / records.size(), elapsed);
  }
  return 0;
}

int cmd_plot(const std::string& in, const std::string& solutions_path, int index,
             const std::string& out) {
  const std::vector<DatasetEntry> entries = load_entries(in);
  const auto solutions = read_solutions(solutions_path);
  if (index < 0 || index >= static_cast<int>(entries.size()) ||
      index >= static_cast<int>(solutions.size()))
    throw Error(ErrorKind::RouteIndexOutOfRange, "instance index out of range");
  write_solution_svg(entries[index].instance, solutions[index].solution, out);
  std::cout << "wrote " << out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Insertion-based construction and local reconstruction for TSP/CVRP"};
  app.require_subcommand(1);
  app.fallthrough();  // --seed/--jobs may follow the subcommand

  std::uint64_t seed = 123;
  int jobs = 1;
  app.add_option("--seed", seed, "global rng seed")->capture_default_str();
  app.add_option("--jobs", jobs,
                 "worker threads (INSERT_NCO_THREADS overrides; 0 = hardware)")
      ->capture_default_str();

  // gen
  auto* gen = app.add_subcommand("gen", "generate uniform instances");
  std::string gen_problem = "tsp", gen_out, gen_prefix;
  int gen_n = 100, gen_count = 1;
  double gen_capacity = 50.0;
  gen->add_option("--problem", gen_problem)->check(CLI::IsMember({"tsp", "cvrp"}));
  gen->add_option("--n", gen_n, "customer count")->required();
  gen->add_option("--count", gen_count)->required();
  gen->add_option("--capacity", gen_capacity, "vehicle capacity (CVRP)");
  gen->add_option("--prefix", gen_prefix, "instance name prefix");
  gen->add_option("--out", gen_out)->required();

  // label
  auto* label = app.add_subcommand("label", "attach optimal/near-optimal labels");
  std::string label_in, label_out;
  int label_budget = 3;
  label->add_option("--in", label_in)->required();
  label->add_option("--out", label_out)->required();
  label->add_option("--budget", label_budget, "local-search restart budget")
      ->capture_default_str();

  // train
  auto* train_cmd = app.add_subcommand("train", "supervised training");
  std::string train_data, train_val, train_out, train_log, train_selector = "auto";
  std::string train_preset;
  ModelConfig train_config;  // paper-scale defaults
  TrainHyper hyper;
  train_cmd->add_option("--data", train_data)->required();
  train_cmd->add_option("--val", train_val, "labeled validation dataset");
  train_cmd->add_option("--out", train_out)->required();
  train_cmd->add_option("--log", train_log, "CSV log path (default <out>.csv)");
  train_cmd->add_option("--preset", train_preset)->check(CLI::IsMember({"desk", "paper"}));
  train_cmd->add_option("--d", train_config.embed_dim, "embedding dim");
  train_cmd->add_option("--layers", train_config.decoder_layers, "decoder layers");
  train_cmd->add_option("--heads", train_config.num_heads);
  train_cmd->add_option("--dff", train_config.ff_dim, "feed-forward dim");
  bool no_unvisited = false;
  train_cmd->add_flag("--no-unvisited", no_unvisited,
                      "drop unvisited nodes from the decoder input");
  train_cmd->add_option("--epochs", hyper.epochs)->capture_default_str();
  train_cmd->add_option("--batch", hyper.batch_episodes, "episodes per batch")
      ->capture_default_str();
  train_cmd->add_option("--lr", hyper.lr0)->capture_default_str();
  train_cmd->add_option("--decay", hyper.lr_decay)->capture_default_str();
  train_cmd->add_option("--step-sample", hyper.step_sample,
                        "loss steps sampled per episode (0 = all)");
  train_cmd->add_option("--selector", train_selector)
      ->check(CLI::IsMember({"auto", "nearest", "polar", "random"}));

  // solve
  auto* solve = app.add_subcommand("solve", "construct solutions");
  std::string solve_in, solve_out, solve_policy = "cheapest", solve_selector = "auto";
  std::string solve_weights, solve_decode = "argmax";
  int solve_start = 0;
  bool solve_random_start = false;
  solve->add_option("--in", solve_in)->required();
  solve->add_option("--out", solve_out, "solutions file (JSONL)");
  solve->add_option("--policy", solve_policy)
      ->check(CLI::IsMember({"cheapest", "random", "neural", "append"}));
  solve->add_option("--selector", solve_selector)
      ->check(CLI::IsMember({"auto", "nearest", "polar", "random"}));
  solve->add_option("--weights", solve_weights);
  solve->add_option("--decode", solve_decode)->check(CLI::IsMember({"argmax", "sample"}));
  solve->add_option("--start", solve_start, "TSP start node");
  solve->add_flag("--random-start", solve_random_start);
  int solve_k_value = -1;
  solve->add_option("--k", solve_k_value, "decoder neighborhood (0 disables)");

  // improve
  auto* improve_cmd = app.add_subcommand("improve", "local reconstruction");
  std::string improve_in, improve_init, improve_out, improve_policy = "cheapest";
  std::string improve_selector = "auto", improve_weights, improve_decode = "argmax";
  std::string improve_destroy = "distance";
  int improve_iterations = 100, improve_alpha = 300, improve_k_value = -1;
  improve_cmd->add_option("--in", improve_in)->required();
  improve_cmd->add_option("--init", improve_init, "initial solutions (JSONL)");
  improve_cmd->add_option("--out", improve_out)->required();
  improve_cmd->add_option("--policy", improve_policy)
      ->check(CLI::IsMember({"cheapest", "random", "neural"}));
  improve_cmd->add_option("--selector", improve_selector)
      ->check(CLI::IsMember({"auto", "nearest", "polar", "random"}));
  improve_cmd->add_option("--weights", improve_weights);
  improve_cmd->add_option("--decode", improve_decode)
      ->check(CLI::IsMember({"argmax", "sample"}));
  improve_cmd->add_option("--iterations", improve_iterations)->capture_default_str();
  improve_cmd->add_option("--alpha", improve_alpha, "destruction size")
      ->capture_default_str();
  improve_cmd->add_option("--destroy", improve_destroy)
      ->check(CLI::IsMember({"distance", "sequence"}));
  improve_cmd->add_option("--k", improve_k_value, "decoder neighborhood (0 disables)");

  // bench
  auto* bench = app.add_subcommand("bench", "Length/Gap/Time table against a reference");
  std::string bench_in, bench_ref;
  std::vector<std::string> bench_methods;
  bool bench_round = false;
  bench->add_option("--in", bench_in)->required();
  bench->add_option("--ref", bench_ref, "reference solutions (default: dataset labels)");
  bench->add_option("--method", bench_methods,
                    "method spec, e.g. cheapest | neural:weights=w.bin | "
                    "improve:policy=neural:weights=w.bin:I=200:alpha=30")
      ->required();
  bench->add_flag("--round-int", bench_round, "TSPLIB nearest-integer edge lengths");

  // plot
  auto* plot = app.add_subcommand("plot", "render one solution as SVG");
  std::string plot_in, plot_solutions, plot_out;
  int plot_index = 0;
  plot->add_option("--in", plot_in)->required();
  plot->add_option("--solutions", plot_solutions)->required();
  plot->add_option("--index", plot_index)->capture_default_str();
  plot->add_option("--out", plot_out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit 0, flag errors exit 2
  }

  jobs = resolve_jobs(jobs);
  try {
    if (*gen) return cmd_gen(gen_problem, gen_n, gen_count, gen_capacity, seed, gen_prefix,
                             gen_out);
    if (*label) return cmd_label(label_in, label_out, label_budget, seed, jobs);
    if (*train_cmd) {
      if (train_preset == "desk") {
        if (!train_cmd->count("--d")) train_config.embed_dim = 64;
        if (!train_cmd->count("--layers")) train_config.decoder_layers = 3;
        if (!train_cmd->count("--dff")) train_config.ff_dim = 256;
      }
      train_config.include_unvisited = !no_unvisited;
      hyper.seed = seed;
      hyper.jobs = jobs;
      if (train_log.empty()) train_log = train_out + ".csv";
      return cmd_train(train_data, train_val, train_out, train_log, train_config, hyper,
                       train_selector);
    }
    if (*solve) {
      MethodSpec spec;
      spec.name = solve_policy;
      spec.weights = solve_weights;
      spec.selector = solve_selector;
      spec.decode = solve_decode;
      spec.start = solve_start;
      spec.random_start = solve_random_start;
      if (solve_k_value >= 0) spec.k = solve_k_value;
      return cmd_solve(solve_in, solve_out, spec, seed, jobs);
    }
    if (*improve_cmd) {
      MethodSpec spec;
      spec.policy = improve_policy;
      spec.weights = improve_weights;
      spec.selector = improve_selector;
      spec.decode = improve_decode;
      spec.destroy = improve_destroy;
      spec.iterations = improve_iterations;
      spec.alpha = improve_alpha;
      if (improve_k_value >= 0) spec.k = improve_k_value;
      return cmd_improve(improve_in, improve_init, improve_out, spec, seed, jobs);
    }
    if (*bench) return cmd_bench(bench_in, bench_ref, bench_methods, bench_round, seed, jobs);
    if (*plot) return cmd_plot(plot_in, plot_solutions, plot_index, plot_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
