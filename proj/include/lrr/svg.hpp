#pragma once

#include <string>
#include <utility>
#include <vector>

namespace lrr::svg {

// One labeled curve or point cloud.
struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
  bool draw_line = true;  // false: markers only (scatter)
};

// Writes a static SVG chart with axes, tick labels and a legend. Series are
// drawn in a fixed palette so repeated runs emit identical bytes.
void write_chart(const std::string& path, const std::string& title,
                 const std::string& x_label, const std::string& y_label,
                 const std::vector<Series>& series, bool log_x = false);

}  // namespace lrr::svg
