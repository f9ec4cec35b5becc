#include "dstarlab/cli/summary.h"

#include <stdexcept>

#include "dstarlab/metrics/metrics.h"
#include "json.hpp"

namespace dstarlab::cli {

namespace {

using nlohmann::json;

RttPercentiles PercentilesOf(const std::vector<TimeUs>& samples) {
  RttPercentiles p;
  if (samples.empty()) return p;
  p.p50_us = metrics::Percentile(samples, 0.50).value();
  p.p95_us = metrics::Percentile(samples, 0.95).value();
  p.p99_us = metrics::Percentile(samples, 0.99).value();
  return p;
}

json OptionalJson(const std::optional<uint64_t>& v) {
  return v ? json(*v) : json(nullptr);
}

json ToJson(const RttPercentiles& p) {
  return json{{"p50_us", OptionalJson(p.p50_us)},
              {"p95_us", OptionalJson(p.p95_us)},
              {"p99_us", OptionalJson(p.p99_us)}};
}

std::optional<uint64_t> OptionalU64(const json& j, const char* key) {
  const json& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<uint64_t>();
}

RttPercentiles PercentilesFromJson(const json& j) {
  return {OptionalU64(j, "p50_us"), OptionalU64(j, "p95_us"),
          OptionalU64(j, "p99_us")};
}

}  // namespace

SummaryRecord Summarize(const netsim::Scenario& scenario,
                        const netsim::RunResult& result) {
  SummaryRecord s;
  s.scenario_id = scenario.id;
  s.seed = result.seed;
  s.warmup_us = scenario.warmup.value();
  s.sim_duration_us = scenario.sim_duration.value();
  s.bottleneck_drops = result.bottleneck_drops;

  std::vector<TimeUs> all_after;
  std::vector<TimeUs> all;
  std::vector<double> rates;
  for (const auto& trace : result.traces) {
    FlowSummary f;
    f.flow_id = trace.flow_id;
    f.algorithm = trace.algorithm;
    f.start_us = trace.start.value();
    f.base_rtt_us = trace.base_rtt.value();
    f.mean_rate_bps = metrics::MeanRateBps(trace, scenario);
    f.delivered_segments =
        trace.records.empty() ? 0 : trace.records.back().delivered_cum;
    auto after = metrics::RttSamples(trace, scenario.warmup);
    auto every = metrics::RttSamples(trace, TimeUs());
    f.rtt = PercentilesOf(after);
    f.rtt_all = PercentilesOf(every);
    f.losses = trace.losses;
    f.retransmits = trace.retransmits;
    f.rtos = trace.rtos;
    s.losses += trace.losses;
    rates.push_back(f.mean_rate_bps);
    all_after.insert(all_after.end(), after.begin(), after.end());
    all.insert(all.end(), every.begin(), every.end());
    s.flows.push_back(std::move(f));
  }
  s.rtt = PercentilesOf(all_after);
  s.rtt_all = PercentilesOf(all);
  try {
    s.jain_index = metrics::JainIndex(rates);
  } catch (const metrics::MetricsError&) {
  }
  if (scenario.warmup < scenario.sim_duration) {
    s.utilization = metrics::Utilization(result.traces, scenario, scenario.warmup,
                                         scenario.sim_duration);
  }
  s.utilization_all = metrics::Utilization(result.traces, scenario, TimeUs(),
                                           scenario.sim_duration);
  return s;
}

std::string SummaryToJson(const SummaryRecord& s) {
  json flows = json::array();
  for (const auto& f : s.flows) {
    flows.push_back(json{{"flow_id", f.flow_id},
                         {"algorithm", f.algorithm},
                         {"start_us", f.start_us},
                         {"base_rtt_us", f.base_rtt_us},
                         {"mean_rate_bps", f.mean_rate_bps},
                         {"delivered_segments", f.delivered_segments},
                         {"rtt", ToJson(f.rtt)},
                         {"rtt_all", ToJson(f.rtt_all)},
                         {"losses", f.losses},
                         {"retransmits", f.retransmits},
                         {"rtos", f.rtos}});
  }
  json root = {{"scenario_id", s.scenario_id},
               {"seed", s.seed},
               {"warmup_us", s.warmup_us},
               {"sim_duration_us", s.sim_duration_us},
               {"flows", flows},
               {"rtt", ToJson(s.rtt)},
               {"rtt_all", ToJson(s.rtt_all)},
               {"losses", s.losses},
               {"bottleneck_drops", s.bottleneck_drops},
               {"jain_index", s.jain_index ? json(*s.jain_index) : json(nullptr)},
               {"utilization", s.utilization},
               {"utilization_all", s.utilization_all}};
  return root.dump(2) + "\n";
}

SummaryRecord SummaryFromJson(const std::string& text) {
  try {
    json root = json::parse(text);
    SummaryRecord s;
    s.scenario_id = root.at("scenario_id").get<std::string>();
    s.seed = root.at("seed").get<uint64_t>();
    s.warmup_us = root.at("warmup_us").get<uint64_t>();
    s.sim_duration_us = root.at("sim_duration_us").get<uint64_t>();
    for (const auto& jf : root.at("flows")) {
      FlowSummary f;
      f.flow_id = jf.at("flow_id").get<uint32_t>();
      f.algorithm = jf.at("algorithm").get<std::string>();
      f.start_us = jf.at("start_us").get<uint64_t>();
      f.base_rtt_us = jf.at("base_rtt_us").get<uint64_t>();
      f.mean_rate_bps = jf.at("mean_rate_bps").get<double>();
      f.delivered_segments = jf.at("delivered_segments").get<uint64_t>();
      f.rtt = PercentilesFromJson(jf.at("rtt"));
      f.rtt_all = PercentilesFromJson(jf.at("rtt_all"));
      f.losses = jf.at("losses").get<uint64_t>();
      f.retransmits = jf.at("retransmits").get<uint64_t>();
      f.rtos = jf.at("rtos").get<uint64_t>();
      s.flows.push_back(std::move(f));
    }
    s.rtt = PercentilesFromJson(root.at("rtt"));
    s.rtt_all = PercentilesFromJson(root.at("rtt_all"));
    s.losses = root.at("losses").get<uint64_t>();
    s.bottleneck_drops = root.at("bottleneck_drops").get<uint64_t>();
    if (!root.at("jain_index").is_null()) {
      s.jain_index = root.at("jain_index").get<double>();
    }
    s.utilization = root.at("utilization").get<double>();
    s.utilization_all = root.at("utilization_all").get<double>();
    return s;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed summary: ") + e.what());
  }
}

}  // namespace dstarlab::cli
