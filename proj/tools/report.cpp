#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace maci::report {

std::string fmt10(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string curve_csv(const CurveTable& table, const MetaLines& meta) {
  std::ostringstream out;
  for (const std::string& line : meta) out << "# " << line << "\n";
  const bool has_cp = !table.rows.empty() && table.rows.front().cp.has_value();
  const bool has_sel = !table.rows.empty() && table.rows.front().sel.has_value();
  out << "gamma";
  if (has_cp) out << ",cp";
  if (has_sel) out << ",sel";
  out << "\n";
  for (const CurveRow& row : table.rows) {
    out << fmt10(row.abs_gamma);
    if (has_cp) out << "," << fmt10(*row.cp);
    if (has_sel) out << "," << fmt10(*row.sel);
    out << "\n";
  }
  return out.str();
}

std::string paired_cp_csv(const CurveTable& first, const CurveTable& second,
                          const MetaLines& meta) {
  if (first.rows.size() != second.rows.size())
    throw std::invalid_argument("paired_cp_csv: grids differ");
  std::ostringstream out;
  for (const std::string& line : meta) out << "# " << line << "\n";
  out << "gamma,cp1,cp2\n";
  for (std::size_t i = 0; i < first.rows.size(); ++i) {
    out << fmt10(first.rows[i].abs_gamma) << "," << fmt10(*first.rows[i].cp)
        << "," << fmt10(*second.rows[i].cp) << "\n";
  }
  return out.str();
}

namespace {

constexpr int kWidth = 720;
constexpr int kPanelHeight = 300;
constexpr int kMarginLeft = 64;
constexpr int kMarginRight = 18;
constexpr int kMarginTop = 34;
constexpr int kMarginBottom = 40;
constexpr const char* kColors[] = {"#3366aa", "#aa3322", "#338855", "#886699"};

struct Scale {
  double lo, hi;
  double px0, px1;
  double at(double v) const { return px0 + (v - lo) / (hi - lo) * (px1 - px0); }
};

std::vector<double> nice_ticks(double lo, double hi, int want = 6) {
  const double span = hi - lo;
  const double raw = span / std::max(want - 1, 1);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double mult : {1.0, 2.0, 2.5, 5.0, 10.0}) {
    if (mag * mult >= raw) {
      step = mag * mult;
      break;
    }
  }
  std::vector<double> ticks;
  const double start = std::ceil(lo / step) * step;
  for (double v = start; v <= hi + 1e-12 * span; v += step)
    ticks.push_back(std::fabs(v) < 1e-12 * span ? 0.0 : v);
  return ticks;
}

void render_panel(std::ostringstream& out, const Panel& panel, int y_offset) {
  double xlo = 1e300, xhi = -1e300, ylo = panel.rule, yhi = panel.rule;
  for (const Series& s : panel.series) {
    for (const auto& [x, y] : s.points) {
      xlo = std::min(xlo, x);
      xhi = std::max(xhi, x);
      ylo = std::min(ylo, y);
      yhi = std::max(yhi, y);
    }
  }
  if (!(xhi > xlo)) {
    xlo -= 0.5;
    xhi += 0.5;
  }
  const double pad = (yhi - ylo) * 0.08 + 1e-12;
  ylo -= pad;
  yhi += pad;

  const Scale xs{xlo, xhi, kMarginLeft, kWidth - kMarginRight};
  const Scale ys{ylo, yhi, static_cast<double>(y_offset + kPanelHeight - kMarginBottom),
                 static_cast<double>(y_offset + kMarginTop)};

  out << "<text x=\"" << kMarginLeft << "\" y=\"" << y_offset + 20
      << "\" font-size=\"14\" font-family=\"sans-serif\">" << panel.title
      << "</text>\n";

  // frame
  out << "<rect x=\"" << kMarginLeft << "\" y=\"" << y_offset + kMarginTop
      << "\" width=\"" << (kWidth - kMarginLeft - kMarginRight) << "\" height=\""
      << (kPanelHeight - kMarginTop - kMarginBottom)
      << "\" fill=\"none\" stroke=\"#444444\" stroke-width=\"1\"/>\n";

  for (double tx : nice_ticks(xlo, xhi)) {
    const double px = xs.at(tx);
    out << "<line x1=\"" << fmt10(px) << "\" y1=\"" << ys.at(ylo) << "\" x2=\""
        << fmt10(px) << "\" y2=\"" << ys.at(ylo) + 4 << "\" stroke=\"#444444\"/>\n";
    out << "<text x=\"" << fmt10(px) << "\" y=\"" << ys.at(ylo) + 18
        << "\" font-size=\"11\" font-family=\"sans-serif\" text-anchor=\"middle\">"
        << fmt10(tx) << "</text>\n";
  }
  for (double ty : nice_ticks(ylo, yhi)) {
    const double py = ys.at(ty);
    out << "<line x1=\"" << kMarginLeft - 4 << "\" y1=\"" << fmt10(py) << "\" x2=\""
        << kMarginLeft << "\" y2=\"" << fmt10(py) << "\" stroke=\"#444444\"/>\n";
    out << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << fmt10(py + 4)
        << "\" font-size=\"11\" font-family=\"sans-serif\" text-anchor=\"end\">"
        << fmt10(ty) << "</text>\n";
  }

  // reference rule
  out << "<line x1=\"" << xs.at(xlo) << "\" y1=\"" << fmt10(ys.at(panel.rule))
      << "\" x2=\"" << xs.at(xhi) << "\" y2=\"" << fmt10(ys.at(panel.rule))
      << "\" stroke=\"#888888\" stroke-dasharray=\"5,4\"/>\n";

  int color = 0;
  for (const Series& s : panel.series) {
    out << "<polyline fill=\"none\" stroke=\"" << kColors[color % 4]
        << "\" stroke-width=\"1.6\" points=\"";
    for (const auto& [x, y] : s.points)
      out << fmt10(xs.at(x)) << "," << fmt10(ys.at(y)) << " ";
    out << "\"/>\n";
    if (!s.label.empty()) {
      out << "<text x=\"" << kWidth - kMarginRight - 8 << "\" y=\""
          << y_offset + kMarginTop + 18 + 16 * color
          << "\" font-size=\"12\" font-family=\"sans-serif\" text-anchor=\"end\" fill=\""
          << kColors[color % 4] << "\">" << s.label << "</text>\n";
    }
    ++color;
  }

  out << "<text x=\"14\" y=\"" << y_offset + kPanelHeight / 2
      << "\" font-size=\"12\" font-family=\"sans-serif\" transform=\"rotate(-90 14 "
      << y_offset + kPanelHeight / 2 << ")\" text-anchor=\"middle\">"
      << panel.y_label << "</text>\n";
}

}  // namespace

std::string render_svg(const std::vector<Panel>& panels) {
  const int height = kPanelHeight * static_cast<int>(panels.size());
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << kWidth << " "
      << height << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  int offset = 0;
  for (const Panel& panel : panels) {
    render_panel(out, panel, offset);
    offset += kPanelHeight;
  }
  out << "</svg>\n";
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace maci::report
