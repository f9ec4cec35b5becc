#include "dstarlab/cli/scenario_io.h"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <unistd.h>

#include "json.hpp"

#ifndef DSTARLAB_SCENARIO_DIR
#define DSTARLAB_SCENARIO_DIR "scenarios"
#endif

namespace dstarlab::cli {

namespace {

using nlohmann::json;
using netsim::FieldError;

// Walks one JSON object, remembering which keys were consumed so that the
// leftovers can be reported as unknown.
class ObjectReader {
 public:
  ObjectReader(const json& object, std::string path,
               std::vector<FieldError>* errors)
      : object_(object), path_(std::move(path)), errors_(errors) {}

  std::string Path(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  bool Has(const std::string& key) {
    seen_.insert(key);
    return object_.contains(key);
  }

  const json* Get(const std::string& key) {
    seen_.insert(key);
    auto it = object_.find(key);
    return it == object_.end() ? nullptr : &*it;
  }

  std::optional<uint64_t> Unsigned(const std::string& key,
                                   uint64_t max = UINT64_MAX) {
    const json* v = Get(key);
    if (!v) return std::nullopt;
    if (!v->is_number_unsigned() &&
        !(v->is_number_integer() && v->get<int64_t>() >= 0)) {
      Error(key, "must be a non-negative integer");
      return std::nullopt;
    }
    uint64_t value = v->get<uint64_t>();
    if (value > max) {
      Error(key, "must be at most " + std::to_string(max));
      return std::nullopt;
    }
    return value;
  }

  std::optional<std::string> String(const std::string& key) {
    const json* v = Get(key);
    if (!v) return std::nullopt;
    if (!v->is_string()) {
      Error(key, "must be a string");
      return std::nullopt;
    }
    return v->get<std::string>();
  }

  void Error(const std::string& key, std::string message) {
    errors_->push_back({Path(key), std::move(message)});
  }

  void Missing(const std::string& key) { Error(key, "is required"); }

  void RejectUnknown() {
    for (auto it = object_.begin(); it != object_.end(); ++it) {
      if (!seen_.count(it.key())) Error(it.key(), "unknown key");
    }
  }

 private:
  const json& object_;
  std::string path_;
  std::vector<FieldError>* errors_;
  std::set<std::string> seen_;
};

struct FlowDelays {
  TimeUs fwd;
  TimeUs rev;
};

FlowDelays SplitRtt(uint64_t rtt_us) {
  return {Microseconds(rtt_us / 2), Microseconds(rtt_us - rtt_us / 2)};
}

void ParseDstar(const json& object, netsim::Scenario* s,
                std::vector<FieldError>* errors) {
  ObjectReader r(object, "dstar", errors);
  if (auto v = r.Unsigned("min_cwnd_segments")) s->dstar.min_cwnd = Segments(*v);
  if (auto v = r.Unsigned("initial_cwnd_segments")) {
    s->dstar.initial_cwnd = Segments(*v);
  }
  if (auto v = r.Unsigned("min_rtt_timeout_us")) {
    s->dstar.min_rtt_timeout = Microseconds(*v);
  }
  if (auto v = r.Unsigned("slow_start_exit_rounds",
                          std::numeric_limits<int>::max())) {
    s->dstar.slow_start_exit_rounds = static_cast<int>(*v);
  }
  r.RejectUnknown();
}

void ParseFlows(const json& array, std::optional<uint64_t> default_rtt,
                netsim::Scenario* s, std::vector<FieldError>* errors) {
  for (size_t i = 0; i < array.size(); ++i) {
    std::string path = "flows[" + std::to_string(i) + "]";
    if (!array[i].is_object()) {
      errors->push_back({path, "must be an object"});
      continue;
    }
    ObjectReader r(array[i], path, errors);
    netsim::FlowSpec flow;
    bool ok = true;

    auto algorithm = r.String("algorithm");
    if (!algorithm) {
      if (!r.Has("algorithm")) r.Missing("algorithm");
      ok = false;
    } else if (auto a = netsim::ParseAlgorithm(*algorithm)) {
      flow.algorithm = *a;
    } else {
      r.Error("algorithm", "unknown algorithm \"" + *algorithm +
                               "\" (expected dstar, reno, vegas or bbr)");
      ok = false;
    }

    uint64_t count = 1;
    if (auto v = r.Unsigned("count", 1u << 20)) {
      if (*v == 0) {
        r.Error("count", "must be at least 1");
        ok = false;
      }
      count = *v;
    }
    if (auto v = r.Unsigned("start_us")) flow.start = Microseconds(*v);
    if (auto v = r.Unsigned("duration_us")) {
      if (*v == 0) {
        r.Error("duration_us", "must be positive");
        ok = false;
      }
      flow.duration = Microseconds(*v);
    }

    bool has_rtt = r.Has("base_rtt_us");
    bool has_split = r.Has("prop_delay_fwd_us") || r.Has("prop_delay_rev_us");
    if (has_rtt && has_split) {
      r.Error("base_rtt_us",
              "give either base_rtt_us or prop_delay_fwd_us/prop_delay_rev_us");
      ok = false;
    } else if (has_split) {
      auto fwd = r.Unsigned("prop_delay_fwd_us");
      auto rev = r.Unsigned("prop_delay_rev_us");
      if (!r.Has("prop_delay_fwd_us")) r.Missing("prop_delay_fwd_us");
      if (!r.Has("prop_delay_rev_us")) r.Missing("prop_delay_rev_us");
      if (fwd && rev) {
        if (*fwd == 0) r.Error("prop_delay_fwd_us", "must be positive");
        if (*rev == 0) r.Error("prop_delay_rev_us", "must be positive");
        ok = ok && *fwd > 0 && *rev > 0;
        flow.prop_delay_fwd = Microseconds(*fwd);
        flow.prop_delay_rev = Microseconds(*rev);
      } else {
        ok = false;
      }
    } else {
      std::optional<uint64_t> rtt = has_rtt ? r.Unsigned("base_rtt_us") : default_rtt;
      if (!rtt) {
        if (!has_rtt) r.Missing("base_rtt_us");
        ok = false;
      } else if (*rtt < 2) {
        r.Error("base_rtt_us", "must be at least 2 us");
        ok = false;
      } else {
        FlowDelays d = SplitRtt(*rtt);
        flow.prop_delay_fwd = d.fwd;
        flow.prop_delay_rev = d.rev;
      }
    }
    r.RejectUnknown();
    if (ok) s->flows.insert(s->flows.end(), count, flow);
  }
}

netsim::Scenario FromJson(const json& root) {
  std::vector<FieldError> errors;
  netsim::Scenario s;
  if (!root.is_object()) {
    throw netsim::ScenarioError(std::vector<FieldError>{{"(root)", "must be an object"}});
  }
  ObjectReader r(root, "", &errors);

  if (auto v = r.String("id")) s.id = *v;
  if (auto v = r.String("description")) s.description = *v;

  if (auto v = r.Unsigned("bottleneck_rate_bps")) {
    if (*v == 0) r.Error("bottleneck_rate_bps", "must be positive");
    s.bottleneck_rate_bps = *v;
  } else if (!r.Has("bottleneck_rate_bps")) {
    r.Missing("bottleneck_rate_bps");
  }
  if (auto v = r.Unsigned("mss_bytes", UINT32_MAX)) {
    s.mss_bytes = static_cast<uint32_t>(*v);
  }

  std::optional<uint64_t> default_rtt;
  if (r.Has("base_rtt_us")) {
    default_rtt = r.Unsigned("base_rtt_us");
    if (default_rtt && *default_rtt < 2) {
      r.Error("base_rtt_us", "must be at least 2 us");
      default_rtt.reset();
    }
  }

  if (auto v = r.Unsigned("sim_duration_us")) {
    s.sim_duration = Microseconds(*v);
  } else if (!r.Has("sim_duration_us")) {
    r.Missing("sim_duration_us");
  }
  if (auto v = r.Unsigned("seed")) s.seed = *v;
  if (auto v = r.Unsigned("start_jitter_us")) s.start_jitter = Microseconds(*v);
  if (auto v = r.Unsigned("warmup_us")) s.warmup = Microseconds(*v);
  if (auto v = r.Unsigned("queue_sample_interval_us")) {
    s.queue_sample_interval = Microseconds(*v);
  }
  if (auto v = r.Unsigned("ecn_threshold_segments")) {
    s.ecn_threshold = Segments(*v);
  }

  if (const json* d = r.Get("dstar")) {
    if (d->is_object()) {
      ParseDstar(*d, &s, &errors);
    } else {
      r.Error("dstar", "must be an object");
    }
  }

  if (const json* flows = r.Get("flows")) {
    if (flows->is_array()) {
      ParseFlows(*flows, default_rtt, &s, &errors);
    } else {
      r.Error("flows", "must be an array");
    }
  } else {
    r.Missing("flows");
  }

  bool has_segments = r.Has("queue_capacity_segments");
  bool has_bytes = r.Has("queue_capacity_bytes");
  if (has_segments && has_bytes) {
    r.Error("queue_capacity_segments",
            "give either queue_capacity_segments or queue_capacity_bytes");
  } else if (has_segments) {
    if (auto v = r.Unsigned("queue_capacity_segments")) s.queue_capacity = Segments(*v);
  } else if (has_bytes) {
    if (auto v = r.Unsigned("queue_capacity_bytes")) {
      if (s.mss_bytes > 0) s.queue_capacity = Segments(*v / s.mss_bytes);
    }
  } else if (s.bottleneck_rate_bps > 0 && s.mss_bytes > 0) {
    // One bandwidth-delay product at the shortest base RTT.
    std::optional<TimeUs> rtt;
    for (const auto& f : s.flows) {
      if (!rtt || f.base_rtt() < *rtt) rtt = f.base_rtt();
    }
    if (!rtt && default_rtt) rtt = Microseconds(*default_rtt);
    if (rtt) {
      s.queue_capacity = std::max(s.BdpSegments(*rtt), Segments(1));
    } else {
      r.Missing("queue_capacity_segments");
    }
  }

  r.RejectUnknown();
  if (!errors.empty()) throw netsim::ScenarioError(std::move(errors));
  netsim::ValidateOrThrow(s);
  return s;
}

}  // namespace

netsim::Scenario ParseScenario(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw netsim::ScenarioError(std::vector<FieldError>{{"(document)", e.what()}});
  }
  return FromJson(root);
}

netsim::Scenario LoadScenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read scenario file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path.string());
  std::string text = buffer.str();
  // Files without an id are named after their stem.
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw netsim::ScenarioError(std::vector<FieldError>{{"(document)", e.what()}});
  }
  if (root.is_object() && !root.contains("id")) {
    root["id"] = path.stem().string();
  }
  return FromJson(root);
}

std::filesystem::path ScenarioDirectory() {
  if (const char* env = std::getenv("DSTARLAB_SCENARIO_DIR"); env && *env) {
    return env;
  }
  return DSTARLAB_SCENARIO_DIR;
}

std::vector<std::filesystem::path> ListScenarios(
    const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      out.push_back(entry.path());
    }
  }
  if (ec) throw IoError("cannot list " + dir.string() + ": " + ec.message());
  std::sort(out.begin(), out.end());
  return out;
}

std::filesystem::path ResolveScenario(const std::string& ref,
                                      const std::filesystem::path& dir) {
  std::filesystem::path direct(ref);
  if (std::filesystem::exists(direct)) return direct;
  std::filesystem::path bundled = dir / ref;
  if (bundled.extension() != ".json") bundled += ".json";
  if (std::filesystem::exists(bundled)) return bundled;
  return direct;
}

void WriteFileAtomic(const std::filesystem::path& path,
                     std::string_view contents) {
  WriteFileAtomic(path, [contents](std::ostream& out) {
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  });
}

void WriteFileAtomic(const std::filesystem::path& path,
                     const std::function<void(std::ostream&)>& write) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot create " + tmp.string());
    write(out);
    out.flush();
    if (!out) {
      out.close();
      std::filesystem::remove(tmp);
      throw IoError("error writing " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw IoError("cannot rename into " + path.string() + ": " + ec.message());
  }
}

}  // namespace dstarlab::cli
