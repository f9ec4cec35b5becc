#include "dstarlab/cli/run_command.h"

#include <atomic>
#include <cstdlib>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "dstarlab/cli/scenario_io.h"
#include "dstarlab/cli/summary.h"
#include "dstarlab/cli/trace_csv.h"
#include "dstarlab/netsim/simulator.h"

namespace dstarlab::cli {

namespace {

struct Task {
  size_t scenario_index;
  int repeat_index;
  uint64_t seed;
};

struct TaskResult {
  int code = kExitOk;
  std::string message;
};

void PrintScenarioErrors(const netsim::ScenarioError& e,
                         const std::filesystem::path& path, std::ostream& err) {
  err << path.string() << ": invalid scenario\n";
  for (const auto& f : e.errors()) err << "  " << f.field << ": " << f.message << "\n";
}

TaskResult RunOne(const netsim::Scenario& base, const Task& task,
                  const RunConfig& config) {
  TaskResult r;
  try {
    netsim::Scenario scenario = base;
    scenario.seed = task.seed;
    netsim::RunResult result = netsim::Run(scenario);
    std::filesystem::path dir = config.output_dir / scenario.id /
                                ("run-" + std::to_string(task.repeat_index));
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
    if (config.write_csv) {
      WriteFileAtomic(dir / "trace.csv", [&](std::ostream& os) {
        WriteTraceCsv(os, result.traces);
      });
    }
    SummaryRecord summary = Summarize(scenario, result);
    if (config.write_json) WriteFileAtomic(dir / "summary.json", SummaryToJson(summary));
    std::ostringstream os;
    os << scenario.id << " run-" << task.repeat_index << " seed=" << task.seed
       << " flows=" << summary.flows.size();
    if (summary.jain_index) os << " jain=" << *summary.jain_index;
    os << " utilization=" << summary.utilization;
    if (summary.rtt.p95_us) os << " rtt_p95_us=" << *summary.rtt.p95_us;
    os << " -> " << dir.string();
    r.message = os.str();
  } catch (const IoError& e) {
    r.code = kExitIo;
    r.message = e.what();
  } catch (const netsim::ScenarioError& e) {
    r.code = kExitValidation;
    r.message = e.what();
  } catch (const std::exception& e) {
    r.code = kExitUsage;
    r.message = std::string("simulation failed: ") + e.what();
  }
  return r;
}

}  // namespace

std::filesystem::path DefaultOutputDir() {
  if (const char* env = std::getenv("DSTARLAB_OUT"); env && *env) return env;
  return "dstarlab-out";
}

int RunCommand(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.repeat < 1) {
    err << "--repeat must be at least 1\n";
    return kExitUsage;
  }
  if (config.jobs < 1) {
    err << "--jobs must be at least 1\n";
    return kExitUsage;
  }
  std::vector<netsim::Scenario> scenarios;
  for (const auto& path : config.scenarios) {
    try {
      scenarios.push_back(LoadScenario(path));
    } catch (const IoError& e) {
      err << e.what() << "\n";
      return kExitIo;
    } catch (const netsim::ScenarioError& e) {
      PrintScenarioErrors(e, path, err);
      return kExitValidation;
    }
  }

  std::vector<Task> tasks;
  for (size_t i = 0; i < scenarios.size(); ++i) {
    for (int k = 0; k < config.repeat; ++k) {
      uint64_t seed = config.seed ? *config.seed
                                  : scenarios[i].seed + static_cast<uint64_t>(k);
      tasks.push_back({i, k, seed});
    }
  }

  std::vector<TaskResult> results(tasks.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < tasks.size(); i = next++) {
      results[i] = RunOne(scenarios[tasks[i].scenario_index], tasks[i], config);
    }
  };
  size_t workers = std::min<size_t>(static_cast<size_t>(config.jobs), tasks.size());
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  int code = kExitOk;
  for (const auto& r : results) {
    if (r.code == kExitOk) {
      out << r.message << "\n";
    } else {
      err << r.message << "\n";
      if (code == kExitOk) code = r.code;
    }
  }
  return code;
}

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"TCP D* congestion-control lab"};
  app.require_subcommand(1);

  RunConfig config;
  std::vector<std::string> run_refs;
  std::string out_dir;
  uint64_t seed = 0;
  bool no_csv = false;
  bool no_json = false;
  auto* run = app.add_subcommand("run", "Simulate scenarios and write traces");
  run->add_option("scenario", run_refs, "Scenario file or bundled name")->required();
  run->add_option("--out", out_dir, "Output directory (default $DSTARLAB_OUT or ./dstarlab-out)");
  auto* seed_opt = run->add_option("--seed", seed, "Seed for every run");
  run->add_option("--repeat", config.repeat, "Runs per scenario")->default_val(1);
  run->add_option("--jobs", config.jobs, "Parallel simulations")->default_val(1);
  run->add_flag("--no-csv", no_csv, "Skip trace.csv");
  run->add_flag("--no-json", no_json, "Skip summary.json");

  auto* list = app.add_subcommand("list-scenarios", "List bundled scenarios");

  std::string validate_ref;
  auto* validate = app.add_subcommand("validate", "Check a scenario file");
  validate->add_option("scenario", validate_ref, "Scenario file or bundled name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const std::filesystem::path dir = ScenarioDirectory();

  if (*run) {
    for (const auto& ref : run_refs) config.scenarios.push_back(ResolveScenario(ref, dir));
    config.output_dir = out_dir.empty() ? DefaultOutputDir() : std::filesystem::path(out_dir);
    if (*seed_opt) config.seed = seed;
    config.write_csv = !no_csv;
    config.write_json = !no_json;
    return RunCommand(config, out, err);
  }

  if (*list) {
    try {
      for (const auto& path : ListScenarios(dir)) {
        out << path.stem().string();
        try {
          netsim::Scenario s = LoadScenario(path);
          out << "\t" << s.flows.size() << (s.flows.size() == 1 ? " flow\t" : " flows\t")
              << s.description;
        } catch (const std::exception&) {
          out << "\t(invalid)";
        }
        out << "\n";
      }
    } catch (const IoError& e) {
      err << e.what() << "\n";
      return kExitIo;
    }
    return kExitOk;
  }

  std::filesystem::path path = ResolveScenario(validate_ref, dir);
  try {
    netsim::Scenario s = LoadScenario(path);
    out << s.id << ": " << s.bottleneck_rate_bps << " bps, mss " << s.mss_bytes
        << " B, queue " << s.queue_capacity.value() << " seg, " << s.flows.size()
        << " flows, " << s.sim_duration.value() << " us\n";
    return kExitOk;
  } catch (const IoError& e) {
    err << e.what() << "\n";
    return kExitIo;
  } catch (const netsim::ScenarioError& e) {
    PrintScenarioErrors(e, path, err);
    return kExitValidation;
  }
}

}  // namespace dstarlab::cli
