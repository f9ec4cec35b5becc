#ifndef DSTARLAB_CLI_TRACE_CSV_H_
#define DSTARLAB_CLI_TRACE_CSV_H_

#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dstarlab/netsim/trace.h"

namespace dstarlab::cli {

inline constexpr std::string_view kTraceCsvHeader =
    "flow_id,t_us,rtt_us,cwnd_seg,inflight_seg,mode,delivered_cum_seg,event";

class CsvError : public std::runtime_error {
 public:
  CsvError(size_t line, const std::string& message);
  size_t line() const { return line_; }

 private:
  size_t line_;
};

// Header line, then every record of flow 0, then flow 1, and so on.
void WriteTraceCsv(std::ostream& out, std::span<const netsim::FlowTrace> traces);
std::string TraceCsv(std::span<const netsim::FlowTrace> traces);

struct CsvRow {
  uint32_t flow_id = 0;
  netsim::TraceRecord record;

  friend bool operator==(const CsvRow&, const CsvRow&) = default;
};

// Strict inverse of WriteTraceCsv: exact header, eight fields per row,
// known mode and event names.
std::vector<CsvRow> ParseTraceCsv(std::string_view text);

}  // namespace dstarlab::cli

#endif  // DSTARLAB_CLI_TRACE_CSV_H_
