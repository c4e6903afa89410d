#pragma once

#include <string>
#include <vector>

#include "glmcf/monitors.hpp"

namespace glmcf {

// The fixed monitors.csv header, one column per MonitorSample field.
extern const char* const kMonitorsCsvHeader;

std::string monitor_sample_csv_row(const MonitorSample& s);

// All writers are atomic (temp file + rename) and use %.17g formatting so
// reruns produce byte-identical files.
void write_monitors_csv(const std::string& path, const std::vector<MonitorSample>& samples);

void write_text_file(const std::string& path, const std::string& content);

// Static polyline plot of one series; log_y plots log10 of the values and
// skips non-positive entries.
void write_svg_series(const std::string& path, const std::string& title,
                      const std::string& y_label, const std::vector<double>& t,
                      const std::vector<double>& y, bool log_y);

}  // namespace glmcf
