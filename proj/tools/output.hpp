#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace eup::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum class Format { Csv, Json };

/// Field value. An empty string renders as an empty CSV cell and is omitted
/// from JSON objects.
using Value = std::variant<double, long long, std::string, bool>;
using Fields = std::vector<std::pair<std::string, Value>>;

struct Meta {
  double tolerance_used = 0.0;
  long long oracle_grid = 0;  // 0: no oracle involved
};

/// One line of output: the command, its inputs and outputs.
struct Record {
  std::string command;
  Fields inputs;
  Fields outputs;
};

/// Shortest decimal string that parses back to the same double.
std::string format_number(double v);
std::string format_value(const Value& v);

/// Streams records in one of the two wire formats.
///
/// CSV: a header row from the first record's keys, one row per record, then
/// `# summary,key=value,...` (if any) and `# meta,key=value,...` trailer lines.
/// JSON: one object per line, {"command","inputs","outputs","meta"}, with a
/// final {"command","summary","meta"} line when a summary is written.
class RecordWriter {
 public:
  RecordWriter(std::ostream& out, Format format, std::string command, Meta meta);

  void write(const Record& rec);
  void summary(const Fields& fields);
  void finish();

 private:
  std::ostream& out_;
  Format format_;
  std::string command_;
  Meta meta_;
  std::vector<std::string> columns_;
  bool header_written_ = false;
  bool finished_ = false;
  Fields summary_;
};

/// Parses CSV emitted by RecordWriter and re-emits it with canonical number
/// formatting. Canonical output is a fixed point of this function.
std::string reformat_csv(const std::string& text);

}  // namespace eup::cli
