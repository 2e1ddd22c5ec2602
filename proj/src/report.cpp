#include "calrank/report.hpp"

#include <charconv>
#include <cmath>

#include <json.hpp>

#include "calrank/error.hpp"

namespace calrank {

namespace {

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

}  // namespace

ReportFormat parse_report_format(std::string_view name) {
  if (name == "csv") return ReportFormat::csv;
  if (name == "json") return ReportFormat::json;
  throw argument_error("unknown output format: " + std::string(name));
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

void write_csv(const Report& report, std::ostream& out) {
  out << "scenario,estimator,n,m,gamma,trials,error_rate,rel_improvement_pct,std_err\n";
  for (const ReportRow& r : report.rows) {
    out << csv_field(r.scenario) << ',' << csv_field(r.estimator) << ',' << r.n << ',' << r.m << ','
        << format_number(r.gamma) << ',' << r.trials << ',' << format_number(r.error_rate) << ','
        << format_number(r.rel_improvement_pct) << ',' << format_number(r.std_err) << '\n';
  }
}

void write_json(const Report& report, std::ostream& out) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const ReportRow& r : report.rows) {
    nlohmann::ordered_json row;
    row["scenario"] = r.scenario;
    row["estimator"] = r.estimator;
    row["n"] = r.n;
    row["m"] = r.m;
    if (std::isnan(r.gamma)) {
      row["gamma"] = nullptr;
    } else {
      row["gamma"] = r.gamma;
    }
    row["trials"] = r.trials;
    row["error_rate"] = r.error_rate;
    row["rel_improvement_pct"] = r.rel_improvement_pct;
    row["std_err"] = r.std_err;
    rows.push_back(std::move(row));
  }
  nlohmann::ordered_json doc;
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

void write_report(const Report& report, ReportFormat format, std::ostream& out) {
  if (format == ReportFormat::csv) {
    write_csv(report, out);
  } else {
    write_json(report, out);
  }
}

}  // namespace calrank
