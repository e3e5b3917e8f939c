#include "ladderlab/cli/report.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "ladderlab/errors.hpp"

namespace ladderlab::cli {

ReportBuilder::ReportBuilder(std::string command, json inputs) {
  report_ = json::object();
  report_["command"] = std::move(command);
  report_["inputs"] = std::move(inputs);
  report_["columns"] = json::array();
  report_["rows"] = json::array();
  report_["summary"] = json::object();
}

ReportBuilder& ReportBuilder::columns(std::vector<Column> cols) {
  width_ = cols.size();
  for (auto& c : cols) {
    report_["columns"].push_back(json{{"name", std::move(c.name)}, {"law", std::move(c.law)}});
  }
  return *this;
}

ReportBuilder& ReportBuilder::row(json values) {
  if (!values.is_array() || values.size() != width_) {
    throw std::logic_error("report row width does not match columns");
  }
  report_["rows"].push_back(std::move(values));
  return *this;
}

ReportBuilder& ReportBuilder::summary(const std::string& key, json value) {
  report_["summary"][key] = std::move(value);
  return *this;
}

ReportBuilder& ReportBuilder::plot(std::string x, std::vector<std::string> ys, std::string style) {
  report_["plot"] = json{{"x", std::move(x)}, {"y", std::move(ys)}, {"style", std::move(style)}};
  return *this;
}

json ReportBuilder::build() const { return report_; }

std::string render_json(const json& report) { return report.dump(2) + "\n"; }

namespace {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string cell(const json& v) {
  if (v.is_number_float()) {
    return format_number(v.get<double>());
  }
  if (v.is_number()) {
    return v.dump();
  }
  if (v.is_boolean()) {
    return v.get<bool>() ? "true" : "false";
  }
  if (v.is_null()) {
    return "";
  }
  const std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\r\n") == std::string::npos) {
    return s;
  }
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') {
      quoted += '"';
    }
    quoted += ch;
  }
  return quoted + "\"";
}

template <class F>
std::string csv_line(const json& items, F&& pick) {
  std::string line;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) {
      line += ',';
    }
    line += cell(pick(items[i]));
  }
  return line + "\r\n";
}

std::size_t column_index(const json& report, const std::string& name) {
  const json& cols = report.at("columns");
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (cols[i].at("name") == name) {
      return i;
    }
  }
  throw DomainError("plot column '" + name + "' not in report");
}

}  // namespace

std::string render_csv(const json& report) {
  const json& cols = report.at("columns");
  std::string out = csv_line(cols, [](const json& c) { return c.at("name"); });
  out += csv_line(cols, [](const json& c) { return c.at("law"); });
  for (const json& row : report.at("rows")) {
    out += csv_line(row, [](const json& v) { return v; });
  }
  return out;
}

std::string emit_plot_script(const json& report) {
  const json& rows = report.at("rows");
  if (rows.size() < 2) {
    throw DomainError("plot script needs at least two data rows, report has " + std::to_string(rows.size()));
  }
  if (!report.contains("plot")) {
    throw DomainError("report carries no plot layout");
  }
  const json& layout = report.at("plot");
  const std::string x = layout.at("x");
  const auto ys = layout.at("y").get<std::vector<std::string>>();
  const std::string style = layout.at("style");

  std::vector<std::size_t> picks{column_index(report, x)};
  for (const auto& y : ys) {
    picks.push_back(column_index(report, y));
  }

  std::string s;
  s += "# ladderlab " + report.at("command").get<std::string>() + "\n";
  s += "set datafile separator whitespace\n";
  s += "set key top left\n";
  s += "set xlabel '" + x + "'\n";
  if (style == "boxes") {
    s += "set style fill solid 0.5 border -1\n";
    s += "set boxwidth " + format_number(0.8 / static_cast<double>(ys.size())) + " relative\n";
  }
  s += "$data << EOD\n";
  for (const json& row : rows) {
    for (std::size_t i = 0; i < picks.size(); ++i) {
      const json& v = row.at(picks[i]);
      s += (i ? " " : "") + (v.is_number() ? cell(v) : std::string("NaN"));
    }
    s += "\n";
  }
  s += "EOD\n";
  s += "plot ";
  for (std::size_t i = 0; i < ys.size(); ++i) {
    if (i > 0) {
      s += ", \\\n     ";
    }
    if (style == "boxes") {
      const double shift = (static_cast<double>(i) - 0.5 * static_cast<double>(ys.size() - 1)) * 0.8 /
                           static_cast<double>(ys.size());
      s += "$data using ($1" + std::string(shift < 0 ? "" : "+") + format_number(shift) + "):" +
           std::to_string(i + 2) + " with boxes title '" + ys[i] + "'";
    } else {
      s += "$data using 1:" + std::to_string(i + 2) + " with " + style + " title '" + ys[i] + "'";
    }
  }
  s += "\n";
  return s;
}

}  // namespace ladderlab::cli
