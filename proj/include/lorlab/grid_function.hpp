#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace lorlab {

using cplx = std::complex<double>;

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// Complex samples on a uniform periodic 1-d grid.  Each cell carries measure
/// cell_mass; the function is the piecewise-constant density taking samples[i]
/// on cell i.  Lengths are powers of two so the grid is FFT-ready.
struct GridFunction {
  std::vector<cplx> samples;
  double cell_mass = 1.0;

  GridFunction() = default;
  GridFunction(std::vector<cplx> s, double mass) : samples(std::move(s)), cell_mass(mass) {
    validate();
  }

  static GridFunction zeros(std::size_t length, double mass) {
    return GridFunction(std::vector<cplx>(length, cplx{0.0, 0.0}), mass);
  }

  /// Indicator of the first `cells` cells.
  static GridFunction indicator(std::size_t length, double mass, std::size_t cells) {
    GridFunction g = zeros(length, mass);
    if (cells > length) throw std::invalid_argument("indicator: cells > length");
    for (std::size_t i = 0; i < cells; ++i) g.samples[i] = 1.0;
    return g;
  }

  std::size_t length() const { return samples.size(); }
  double total_measure() const { return cell_mass * static_cast<double>(samples.size()); }
  double torus_length() const { return total_measure(); }

  void validate() const {
    if (samples.empty()) throw std::invalid_argument("GridFunction: empty domain");
    if (!(cell_mass > 0.0)) throw std::invalid_argument("GridFunction: cell_mass must be positive");
    if (!is_power_of_two(samples.size()))
      throw std::invalid_argument("GridFunction: length must be a power of two");
  }

  bool compatible(const GridFunction& o) const {
    return samples.size() == o.samples.size() && cell_mass == o.cell_mass;
  }

  GridFunction& operator+=(const GridFunction& o) {
    if (!compatible(o))
      throw std::invalid_argument("GridFunction: summands must share length and cell_mass");
    for (std::size_t i = 0; i < samples.size(); ++i) samples[i] += o.samples[i];
    return *this;
  }
  friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }

  GridFunction& operator*=(cplx c) {
    for (auto& v : samples) v *= c;
    return *this;
  }
  friend GridFunction operator*(GridFunction a, cplx c) { return a *= c; }
  friend GridFunction operator*(cplx c, GridFunction a) { return a *= c; }

  std::vector<double> moduli() const {
    std::vector<double> m(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) m[i] = std::abs(samples[i]);
    return m;
  }
};

// --- serialization ----------------------------------------------------------
//
// A grid function is stored as a payload file plus a JSON header
//   {"length": <cells>, "cell_mass": <mass>, "format": "csv"|"f64"}
// CSV payload: one "re,im" line per cell.  f64 payload: little-endian doubles,
// interleaved re,im.

inline void save_header(const GridFunction& g, const std::string& path, const std::string& format) {
  nlohmann::json j;
  j["length"] = g.length();
  j["cell_mass"] = g.cell_mass;
  j["format"] = format;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

inline void save_csv(const GridFunction& g, const std::string& data_path,
                     const std::string& header_path) {
  save_header(g, header_path, "csv");
  std::ofstream out(data_path);
  if (!out) throw std::runtime_error("cannot write " + data_path);
  out.precision(17);
  for (const auto& v : g.samples) out << v.real() << "," << v.imag() << "\n";
}

inline void save_binary(const GridFunction& g, const std::string& data_path,
                        const std::string& header_path) {
  save_header(g, header_path, "f64");
  std::ofstream out(data_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + data_path);
  for (const auto& v : g.samples) {
    const double re = v.real(), im = v.imag();
    out.write(reinterpret_cast<const char*>(&re), sizeof re);
    out.write(reinterpret_cast<const char*>(&im), sizeof im);
  }
}

inline GridFunction load_grid_function(const std::string& data_path,
                                       const std::string& header_path) {
  std::ifstream hin(header_path);
  if (!hin) throw std::runtime_error("cannot read " + header_path);
  nlohmann::json j;
  hin >> j;
  const std::size_t length = j.at("length").get<std::size_t>();
  const double mass = j.at("cell_mass").get<double>();
  const std::string format = j.value("format", "csv");
  std::vector<cplx> samples;
  samples.reserve(length);
  if (format == "csv") {
    std::ifstream in(data_path);
    if (!in) throw std::runtime_error("cannot read " + data_path);
    std::string line;
    while (std::getline(in, line) && samples.size() < length) {
      const auto comma = line.find(',');
      if (comma == std::string::npos) throw std::runtime_error("malformed csv row: " + line);
      samples.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    }
  } else if (format == "f64") {
    std::ifstream in(data_path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + data_path);
    for (std::size_t i = 0; i < length; ++i) {
      double re = 0, im = 0;
      in.read(reinterpret_cast<char*>(&re), sizeof re);
      in.read(reinterpret_cast<char*>(&im), sizeof im);
      if (!in) throw std::runtime_error("truncated payload: " + data_path);
      samples.emplace_back(re, im);
    }
  } else {
    throw std::runtime_error("unknown payload format: " + format);
  }
  if (samples.size() != length)
    throw std::runtime_error("payload length does not match header");
  return GridFunction(std::move(samples), mass);
}

}  // namespace lorlab
