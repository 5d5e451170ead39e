#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "solenoid/hopping.hpp"
#include "solenoid/state.hpp"

namespace solenoid {

// %.12g, the precision used for every CSV number.
std::string format_number(double v);

void write_text(const std::filesystem::path& path, const std::string& text);
void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

// time,site_0,...,site_{N-1}; one row per snapshot.
std::string density_csv(const std::vector<double>& times, const std::vector<std::vector<double>>& rows);

// i,j,re,im for every canonical G -> E link; non-Abelian rows add a block
// index 0..3 (row-major) after j.
std::string hopping_csv(const HoppingMatrix& h);

struct Heatmap {
  int width = 0;
  int height = 0;
  std::vector<double> values;  // row-major, row 0 at the top
};

// Binary PPM. signed_scale maps [-m, m] to blue-white-red, otherwise [0, m]
// runs black to yellow. Values are scaled by m = max |v|.
void write_ppm(const std::filesystem::path& path, const Heatmap& map, bool signed_scale);

// Two maps next to each other with a one-pixel gap, sharing one scale.
Heatmap side_by_side(const Heatmap& left, const Heatmap& right);

}  // namespace solenoid
