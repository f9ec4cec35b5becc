#ifndef DSTARLAB_TESTS_SUPPORT_PROPERTIES_H_
#define DSTARLAB_TESTS_SUPPORT_PROPERTIES_H_

#include <cstdint>
#include <string>
#include <vector>

#include "dstarlab/netsim/scenario.h"
#include "dstarlab/netsim/trace.h"

namespace dstarlab::testing {

struct PropertyReport {
  std::string name;
  uint64_t cases = 0;     // random cases that exercised the property
  uint64_t checks = 0;    // individual assertions evaluated
  uint64_t failures = 0;
  std::string first_failure;

  bool ok(uint64_t min_cases) const { return failures == 0 && cases >= min_cases; }
};

// Random small scenario: flow 0 runs D*, the rest mix every algorithm; short
// min RTT timeouts so DRAIN is reached, tight queues so losses and timeouts
// occur.
netsim::Scenario RandomScenario(uint64_t seed);

// Runs random scenarios with invariant audits and an auditing wrapper around
// every D* controller until every property has been exercised by at least
// |min_cases| cases (at most 3 * min_cases scenarios). Reports, in order:
// mode grammar, gain clamp, window law, conservation, FIFO, work
// conservation.
std::vector<PropertyReport> RunInvariantSuites(uint64_t min_cases, uint64_t seed);

// Empty when |trace| follows SLOW_START (GAIN_1 GAIN_2)* with DRAIN only
// between GAIN_2 and GAIN_1 and SLOW_START re-entered only on timeouts;
// otherwise a description of the first offending transition.
std::string CheckDstarTraceGrammar(const netsim::FlowTrace& trace);

}  // namespace dstarlab::testing

#endif  // DSTARLAB_TESTS_SUPPORT_PROPERTIES_H_
