#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace ladderlab::cli {

using nlohmann::json;

// A report is a JSON object:
//   command, inputs, columns [{name, law}], rows [[...]], summary, plot
// where each column's "law" names the relation the number instantiates
// ("input" for echoed parameters).
struct Column {
  std::string name;
  std::string law;
};

class ReportBuilder {
 public:
  ReportBuilder(std::string command, json inputs);

  ReportBuilder& columns(std::vector<Column> cols);
  ReportBuilder& row(json values);
  ReportBuilder& summary(const std::string& key, json value);
  // x column against one or more y columns; style is "lines" or "boxes".
  ReportBuilder& plot(std::string x, std::vector<std::string> ys, std::string style = "linespoints");

  [[nodiscard]] json build() const;

 private:
  json report_;
  std::size_t width_ = 0;
};

[[nodiscard]] std::string render_json(const json& report);

// RFC-4180 style: header row of names, second row of laws, then data.
[[nodiscard]] std::string render_csv(const json& report);

// Standalone gnuplot script with the data inline. Needs >= 2 rows.
[[nodiscard]] std::string emit_plot_script(const json& report);

}  // namespace ladderlab::cli
