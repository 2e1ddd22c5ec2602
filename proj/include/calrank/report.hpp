#pragma once

#include <ostream>
#include <string>
#include <string_view>

#include "calrank/harness.hpp"

namespace calrank {

enum class ReportFormat { csv, json };

ReportFormat parse_report_format(std::string_view name);

// Columns: scenario,estimator,n,m,gamma,trials,error_rate,rel_improvement_pct,std_err
void write_csv(const Report& report, std::ostream& out);
void write_json(const Report& report, std::ostream& out);
void write_report(const Report& report, ReportFormat format, std::ostream& out);

// Shortest round-trip decimal form; "nan" for NaN.
std::string format_number(double value);

}  // namespace calrank
