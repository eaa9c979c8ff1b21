#ifndef OPTOMECH_IO_HPP
#define OPTOMECH_IO_HPP

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "optomech/config.hpp"
#include "optomech/version.hpp"

namespace optomech {

// 17 significant digits: round-trips any double exactly, and the fixed
// format keeps outputs byte-identical across runs and thread counts.
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// RFC-4180-style CSV: header mandatory, '.' decimal separator, fields
// quoted only when they contain a delimiter, quote, or newline.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}

  void header(const std::vector<std::string>& names) { write_row_strings(names); }

  void row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_double(v));
    write_row_strings(cells);
  }

 private:
  static std::string escape(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
      if (ch == '"') out += "\"\"";
      else out += ch;
    }
    out += '"';
    return out;
  }

  void write_row_strings(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os_ << ',';
      os_ << escape(cells[i]);
    }
    os_ << '\n';
  }

  std::ostream& os_;
};

// Structured result wrapper: every JSON artifact embeds the resolved
// configuration and the code version so a result file is self-describing.
inline json result_envelope(const RunConfig& cfg, const std::string& subcommand,
                            json result) {
  json j;
  j["version"] = kVersion;
  j["subcommand"] = subcommand;
  j["config_resolved"] = resolved_json(cfg);
  j["result"] = std::move(result);
  return j;
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

inline json vec3_json(const Vec3& v) { return json{v.x(), v.y(), v.z()}; }

} // namespace optomech

#endif
