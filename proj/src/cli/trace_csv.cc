#include "dstarlab/cli/trace_csv.h"

#include <charconv>
#include <sstream>

namespace dstarlab::cli {

namespace {

void AppendUnsigned(std::string& out, uint64_t v) {
  char buf[24];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, end);
}

template <typename T>
bool ParseUnsigned(std::string_view field, T* out) {
  if (field.empty()) return false;
  auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), *out);
  return ec == std::errc() && end == field.data() + field.size();
}

}  // namespace

CsvError::CsvError(size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message),
      line_(line) {}

void WriteTraceCsv(std::ostream& out, std::span<const netsim::FlowTrace> traces) {
  std::string buf;
  buf.reserve(1 << 16);
  buf.append(kTraceCsvHeader);
  buf.push_back('\n');
  for (const auto& trace : traces) {
    for (const auto& r : trace.records) {
      AppendUnsigned(buf, trace.flow_id);
      buf.push_back(',');
      AppendUnsigned(buf, r.t.value());
      buf.push_back(',');
      AppendUnsigned(buf, r.rtt.value());
      buf.push_back(',');
      AppendUnsigned(buf, r.cwnd);
      buf.push_back(',');
      AppendUnsigned(buf, r.inflight);
      buf.push_back(',');
      buf.append(ModeName(r.mode));
      buf.push_back(',');
      AppendUnsigned(buf, r.delivered_cum);
      buf.push_back(',');
      buf.append(netsim::TraceEventName(r.event));
      buf.push_back('\n');
      if (buf.size() > (1 << 16) - 128) {
        out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
        buf.clear();
      }
    }
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

std::string TraceCsv(std::span<const netsim::FlowTrace> traces) {
  std::ostringstream os;
  WriteTraceCsv(os, traces);
  return os.str();
}

std::vector<CsvRow> ParseTraceCsv(std::string_view text) {
  std::vector<CsvRow> rows;
  size_t line_no = 0;
  size_t pos = 0;
  bool saw_header = false;
  while (pos < text.size()) {
    size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      throw CsvError(line_no + 1, "missing trailing newline");
    }
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!saw_header) {
      if (line != kTraceCsvHeader) throw CsvError(line_no, "unexpected header");
      saw_header = true;
      continue;
    }
    std::string_view fields[8];
    size_t n = 0;
    size_t start = 0;
    while (true) {
      size_t comma = line.find(',', start);
      if (n == 8) throw CsvError(line_no, "too many fields");
      fields[n++] = line.substr(start, comma == std::string_view::npos
                                           ? std::string_view::npos
                                           : comma - start);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (n != 8) throw CsvError(line_no, "expected 8 fields");

    CsvRow row;
    uint64_t t = 0, rtt = 0;
    if (!ParseUnsigned(fields[0], &row.flow_id) || !ParseUnsigned(fields[1], &t) ||
        !ParseUnsigned(fields[2], &rtt) ||
        !ParseUnsigned(fields[3], &row.record.cwnd) ||
        !ParseUnsigned(fields[4], &row.record.inflight) ||
        !ParseUnsigned(fields[6], &row.record.delivered_cum)) {
      throw CsvError(line_no, "malformed number");
    }
    row.record.t = Microseconds(t);
    row.record.rtt = Microseconds(rtt);
    auto mode = ParseModeName(fields[5]);
    if (!mode) throw CsvError(line_no, "unknown mode \"" + std::string(fields[5]) + "\"");
    row.record.mode = *mode;
    auto event = netsim::ParseTraceEvent(fields[7]);
    if (!event) {
      throw CsvError(line_no, "unknown event \"" + std::string(fields[7]) + "\"");
    }
    row.record.event = *event;
    rows.push_back(row);
  }
  if (!saw_header) throw CsvError(1, "empty input");
  return rows;
}

}  // namespace dstarlab::cli
