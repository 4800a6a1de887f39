// CSV and SVG rendering for curve tables.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "maci/exact.hpp"

namespace maci::report {

// %.10g rendering used for every floating-point value we emit.
std::string fmt10(double v);

// Metadata echoed as '#'-prefixed comment lines ahead of the CSV header.
using MetaLines = std::vector<std::string>;

// Single-curve CSV: columns gamma[,cp][,sel]; row count equals grid size.
std::string curve_csv(const CurveTable& table, const MetaLines& meta);

// Two coverage-only curves on a shared grid: columns gamma,cp1,cp2.
std::string paired_cp_csv(const CurveTable& first, const CurveTable& second,
                          const MetaLines& meta);

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

struct Panel {
  std::string title;
  std::string y_label;
  double rule = 0.0;  // dashed horizontal reference line
  std::vector<Series> series;
};

// Stacked line-plot panels, deterministic output.
std::string render_svg(const std::vector<Panel>& panels);

void write_file(const std::string& path, const std::string& content);

}  // namespace maci::report
