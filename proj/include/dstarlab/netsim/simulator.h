#ifndef DSTARLAB_NETSIM_SIMULATOR_H_
#define DSTARLAB_NETSIM_SIMULATOR_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "dstarlab/core/congestion_controller.h"
#include "dstarlab/netsim/scenario.h"
#include "dstarlab/netsim/trace.h"

namespace dstarlab::netsim {

struct SimOptions {
  // Audit conservation, FIFO and work conservation at every event. The
  // conservation audit walks the whole event set, so keep scenarios small.
  bool check_invariants = false;
  bool record_traces = true;
};

struct FlowCounters {
  uint64_t sent = 0;
  uint64_t delivered = 0;       // ACKs received
  uint64_t dropped = 0;         // at the bottleneck
  uint64_t in_network = 0;      // segments or their ACKs still travelling
  uint64_t losses_detected = 0;
  uint64_t retransmits = 0;
  uint64_t rtos = 0;
  uint64_t spurious_acks = 0;   // ACKs for segments already declared lost
};

struct InvariantStats {
  uint64_t conservation_checks = 0;
  uint64_t fifo_checks = 0;
  uint64_t work_conservation_checks = 0;
};

struct RunResult {
  uint64_t seed = 0;
  std::vector<FlowTrace> traces;
  std::vector<FlowCounters> counters;
  std::vector<QueueSample> queue;
  InvariantStats invariants;
  uint64_t events_processed = 0;
  uint64_t bottleneck_drops = 0;
};

using ControllerFactory = std::function<std::unique_ptr<CongestionController>(
    const Scenario& scenario, size_t flow_index, TimeUs start)>;

// Controller for the flow's configured algorithm.
std::unique_ptr<CongestionController> MakeController(const Scenario& scenario,
                                                     size_t flow_index,
                                                     TimeUs start);

// Runs the scenario to sim_duration. Throws ScenarioError for an invalid
// scenario and InvariantViolation when an audit fails.
RunResult Run(const Scenario& scenario, const SimOptions& options = {},
              const ControllerFactory& factory = MakeController);

}  // namespace dstarlab::netsim

#endif  // DSTARLAB_NETSIM_SIMULATOR_H_
