#include "solenoid/io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "solenoid/errors.hpp"

namespace solenoid {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cli_io: cannot write '" + path.string() + "'");
  out << text;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) {
  write_text(path, doc.dump(2) + "\n");
}

std::string density_csv(const std::vector<double>& times, const std::vector<std::vector<double>>& rows) {
  std::string s = "time";
  const std::size_t n = rows.empty() ? 0 : rows.front().size();
  for (std::size_t i = 0; i < n; ++i) s += ",site_" + std::to_string(i);
  s += '\n';
  for (std::size_t r = 0; r < rows.size(); ++r) {
    s += format_number(times[r]);
    for (double v : rows[r]) {
      s += ',';
      s += format_number(v);
    }
    s += '\n';
  }
  return s;
}

std::string hopping_csv(const HoppingMatrix& h) {
  std::string s = h.spin_dim() == 1 ? "i,j,re,im\n" : "i,j,block,re,im\n";
  const auto links = h.links();
  for (std::size_t k = 0; k < links.size(); ++k) {
    const std::string ij = std::to_string(links[k].g) + "," + std::to_string(links[k].e) + ",";
    if (h.spin_dim() == 1) {
      const Complex J = h.amplitude(k);
      s += ij + format_number(J.real()) + "," + format_number(J.imag()) + "\n";
    } else {
      const SpinBlock& B = h.block(k);
      for (int b = 0; b < 4; ++b) {
        const Complex v = B(b / 2, b % 2);
        s += ij + std::to_string(b) + "," + format_number(v.real()) + "," + format_number(v.imag()) + "\n";
      }
    }
  }
  return s;
}

namespace {

std::array<unsigned char, 3> colour(double t, bool signed_scale) {
  auto byte = [](double x) { return static_cast<unsigned char>(std::lround(std::clamp(x, 0.0, 1.0) * 255.0)); };
  if (signed_scale) {
    // t in [-1, 1]
    if (t >= 0) return {255, byte(1 - t), byte(1 - t)};
    return {byte(1 + t), byte(1 + t), 255};
  }
  // black -> red -> yellow
  return {byte(2 * t), byte(2 * t - 1), 0};
}

}  // namespace

void write_ppm(const std::filesystem::path& path, const Heatmap& map, bool signed_scale) {
  if (map.width <= 0 || map.height <= 0 || map.values.size() != static_cast<std::size_t>(map.width * map.height)) {
    throw ValidationError("cli_io: heatmap dimensions do not match its data");
  }
  double m = 0.0;
  for (double v : map.values) {
    if (std::isfinite(v)) m = std::max(m, std::abs(v));
  }
  if (m == 0.0) m = 1.0;
  std::string s = "P6\n" + std::to_string(map.width) + " " + std::to_string(map.height) + "\n255\n";
  for (double v : map.values) {
    const auto c = std::isfinite(v) ? colour(v / m, signed_scale) : std::array<unsigned char, 3>{128, 128, 128};
    s.append(reinterpret_cast<const char*>(c.data()), 3);
  }
  write_text(path, s);
}

Heatmap side_by_side(const Heatmap& left, const Heatmap& right) {
  if (left.height != right.height) throw ValidationError("cli_io: side-by-side maps need equal heights");
  Heatmap out;
  out.width = left.width + right.width + 1;
  out.height = left.height;
  out.values.assign(static_cast<std::size_t>(out.width * out.height), std::nan(""));
  for (int r = 0; r < out.height; ++r) {
    for (int c = 0; c < left.width; ++c) out.values[r * out.width + c] = left.values[r * left.width + c];
    for (int c = 0; c < right.width; ++c) {
      out.values[r * out.width + left.width + 1 + c] = right.values[r * right.width + c];
    }
  }
  return out;
}

}  // namespace solenoid
