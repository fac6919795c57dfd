#include "lpbesov/io_util.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lpbesov {

namespace {

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

const char* kPalette[] = {"#1f6fb2", "#c0392b", "#1e8449", "#8e44ad", "#b7950b", "#16737e"};

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void ensure_directory(const std::string& path) {
  std::filesystem::create_directories(path);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream text;
  for (size_t i = 0; i < header.size(); ++i) text << (i ? "," : "") << header[i];
  text << '\n';
  for (const std::vector<std::string>& row : rows) {
    if (row.size() != header.size())
      throw std::invalid_argument("csv row width differs from header: " + path);
    for (size_t i = 0; i < row.size(); ++i) text << (i ? "," : "") << row[i];
    text << '\n';
  }
  write_text_file(path, text.str());
}

std::string svg_chart(const std::string& title, const std::string& x_label,
                      const std::string& y_label, const std::vector<SvgSeries>& series,
                      bool log_y) {
  constexpr double W = 640, H = 400, ML = 70, MR = 20, MT = 40, MB = 50;
  struct Pt {
    double x, y;
  };
  std::vector<std::vector<Pt>> data(series.size());
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  bool any = false;
  for (size_t s = 0; s < series.size(); ++s) {
    for (size_t i = 0; i < series[s].x.size() && i < series[s].y.size(); ++i) {
      double y = series[s].y[i];
      if (log_y) {
        if (!(y > 0.0)) continue;
        y = std::log10(y);
      }
      if (!std::isfinite(y) || !std::isfinite(series[s].x[i])) continue;
      data[s].push_back(Pt{series[s].x[i], y});
      if (!any) {
        xmin = xmax = series[s].x[i];
        ymin = ymax = y;
        any = true;
      } else {
        xmin = std::min(xmin, series[s].x[i]);
        xmax = std::max(xmax, series[s].x[i]);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
      }
    }
  }
  if (xmax - xmin < 1e-12) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  if (ymax - ymin < 1e-12) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  const auto px = [&](double x) { return ML + (x - xmin) / (xmax - xmin) * (W - ML - MR); };
  const auto py = [&](double y) { return H - MB - (y - ymin) / (ymax - ymin) * (H - MT - MB); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << W << " " << H
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  svg << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
      << escape_xml(title) << "</text>\n";
  svg << "<line x1=\"" << ML << "\" y1=\"" << H - MB << "\" x2=\"" << W - MR << "\" y2=\""
      << H - MB << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << ML << "\" y1=\"" << MT << "\" x2=\"" << ML << "\" y2=\"" << H - MB
      << "\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << (ML + W - MR) / 2 << "\" y=\"" << H - 12
      << "\" text-anchor=\"middle\">" << escape_xml(x_label) << "</text>\n";
  svg << "<text x=\"16\" y=\"" << (MT + H - MB) / 2 << "\" text-anchor=\"middle\" transform=\""
      << "rotate(-90 16 " << (MT + H - MB) / 2 << ")\">"
      << escape_xml(log_y ? "log10 " + y_label : y_label) << "</text>\n";
  for (double frac : {0.0, 0.5, 1.0}) {
    const double xv = xmin + frac * (xmax - xmin);
    const double yv = ymin + frac * (ymax - ymin);
    svg << "<text x=\"" << fixed2(px(xv)) << "\" y=\"" << H - MB + 16
        << "\" text-anchor=\"middle\">" << fixed2(xv) << "</text>\n";
    svg << "<text x=\"" << ML - 6 << "\" y=\"" << fixed2(py(yv) + 4)
        << "\" text-anchor=\"end\">" << fixed2(yv) << "</text>\n";
  }
  for (size_t s = 0; s < data.size(); ++s) {
    const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
    if (data[s].size() > 1) {
      svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
      for (const Pt& pt : data[s]) svg << fixed2(px(pt.x)) << "," << fixed2(py(pt.y)) << " ";
      svg << "\"/>\n";
    }
    for (const Pt& pt : data[s])
      svg << "<circle cx=\"" << fixed2(px(pt.x)) << "\" cy=\"" << fixed2(py(pt.y))
          << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    svg << "<text x=\"" << W - MR - 4 << "\" y=\"" << MT + 16 * (s + 1)
        << "\" text-anchor=\"end\" fill=\"" << color << "\">" << escape_xml(series[s].label)
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace lpbesov
