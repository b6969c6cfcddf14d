#include "output.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <json.hpp>

namespace eup::cli {

std::string format_number(double v) {
  if (!std::isfinite(v)) return "degenerate";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buf, res.ptr);
}

std::string format_value(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_number(x);
        } else if constexpr (std::is_same_v<T, long long>) {
          return std::to_string(x);
        } else if constexpr (std::is_same_v<T, bool>) {
          return x ? "true" : "false";
        } else {
          return x;
        }
      },
      v);
}

namespace {

using Json = nlohmann::ordered_json;

Json to_json(const Value& v) {
  return std::visit(
      [](const auto& x) -> Json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(x)) return Json("degenerate");
          return Json(x);
        } else {
          return Json(x);
        }
      },
      v);
}

Json to_json(const Fields& fields) {
  Json obj = Json::object();
  for (const auto& [key, value] : fields) {
    if (const auto* s = std::get_if<std::string>(&value); s && s->empty()) continue;
    obj[key] = to_json(value);
  }
  return obj;
}

Json meta_json(const Meta& meta) {
  Json m = Json::object();
  m["tool_version"] = kToolVersion;
  m["tolerance_used"] = meta.tolerance_used;
  if (meta.oracle_grid > 0) m["oracle_grid"] = meta.oracle_grid;
  return m;
}

std::string trailer(const std::string& tag, const Fields& fields) {
  std::string line = "# " + tag;
  for (const auto& [key, value] : fields) line += "," + key + "=" + format_value(value);
  return line;
}

Fields meta_fields(const Meta& meta) {
  Fields f{{"tool_version", std::string(kToolVersion)}, {"tolerance_used", meta.tolerance_used}};
  if (meta.oracle_grid > 0) f.emplace_back("oracle_grid", meta.oracle_grid);
  return f;
}

}  // namespace

RecordWriter::RecordWriter(std::ostream& out, Format format, std::string command, Meta meta)
    : out_(out), format_(format), command_(std::move(command)), meta_(meta) {}

void RecordWriter::write(const Record& rec) {
  if (format_ == Format::Json) {
    Json line = Json::object();
    line["command"] = rec.command;
    line["inputs"] = to_json(rec.inputs);
    line["outputs"] = to_json(rec.outputs);
    line["meta"] = meta_json(meta_);
    out_ << line.dump() << '\n';
    return;
  }
  std::vector<std::string> cols{"command"};
  std::vector<std::string> cells{rec.command};
  for (const auto* group : {&rec.inputs, &rec.outputs}) {
    for (const auto& [key, value] : *group) {
      cols.push_back(key);
      cells.push_back(format_value(value));
    }
  }
  if (!header_written_) {
    columns_ = cols;
    for (std::size_t i = 0; i < cols.size(); ++i) out_ << (i ? "," : "") << cols[i];
    out_ << '\n';
    header_written_ = true;
  } else if (cols != columns_) {
    throw std::logic_error("record columns differ from the CSV header");
  }
  for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
  out_ << '\n';
}

void RecordWriter::summary(const Fields& fields) { summary_ = fields; }

void RecordWriter::finish() {
  if (finished_) return;
  finished_ = true;
  if (format_ == Format::Json) {
    if (!summary_.empty()) {
      Json line = Json::object();
      line["command"] = command_;
      line["summary"] = to_json(summary_);
      line["meta"] = meta_json(meta_);
      out_ << line.dump() << '\n';
    }
  } else {
    if (!summary_.empty()) out_ << trailer("summary", summary_) << '\n';
    out_ << trailer("meta", meta_fields(meta_)) << '\n';
  }
  out_.flush();
}

namespace {

std::string canonical_cell(const std::string& cell) {
  if (cell.empty()) return cell;
  double v = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec == std::errc{} && res.ptr == last) return format_number(v);
  return cell;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : line) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

std::string reformat_csv(const std::string& text) {
  std::istringstream in(text);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0) {
      auto parts = split(line.substr(2), ',');
      out << "# " << parts[0];
      for (std::size_t i = 1; i < parts.size(); ++i) {
        const auto eq = parts[i].find('=');
        if (eq == std::string::npos) {
          out << ',' << parts[i];
        } else {
          out << ',' << parts[i].substr(0, eq) << '=' << canonical_cell(parts[i].substr(eq + 1));
        }
      }
    } else {
      const auto cells = split(line, ',');
      for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << canonical_cell(cells[i]);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace eup::cli
