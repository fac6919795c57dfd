#pragma once

#include <string>
#include <vector>

namespace lpbesov {

/// Round-trip decimal formatting (%.17g); identical inputs give identical
/// text, which is what the byte-identical-output contract needs.
std::string format_double(double v);

void ensure_directory(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

/// Header row plus data rows, comma separated, LF line endings. Cells are
/// written verbatim; numeric cells should come from format_double.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Static line-and-marker chart, self-contained SVG text. log_y plots
/// log10(y) with the raw values on the axis labels; nonpositive values are
/// dropped in that mode.
std::string svg_chart(const std::string& title, const std::string& x_label,
                      const std::string& y_label, const std::vector<SvgSeries>& series,
                      bool log_y = false);

}  // namespace lpbesov
