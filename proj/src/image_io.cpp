#include "oamcgh/image_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>

namespace oamcgh {

namespace {

std::uint8_t to_byte(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

GrayImage blank(const GridGeometry& g) {
  return GrayImage{g.rows(), g.cols(), std::vector<std::uint8_t>(g.size(), 0)};
}

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode) {
  std::ofstream os(path, mode);
  if (!os) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return os;
}

}  // namespace

void write_pgm(const std::filesystem::path& path, const GrayImage& image) {
  if (image.pixels.size() != static_cast<std::size_t>(image.rows) * image.cols) {
    throw std::invalid_argument("write_pgm: pixel count does not match dimensions");
  }
  auto os = open_out(path, std::ios::binary);
  os << "P5\n" << image.cols << ' ' << image.rows << "\n255\n";
  os.write(reinterpret_cast<const char*>(image.pixels.data()),
           static_cast<std::streamsize>(image.pixels.size()));
  if (!os) throw std::runtime_error("write failed for '" + path.string() + "'");
}

GrayImage read_pgm(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::string magic;
  GrayImage img;
  int maxval = 0;
  is >> magic >> img.cols >> img.rows >> maxval;
  if (magic != "P5" || maxval != 255 || img.rows <= 0 || img.cols <= 0) {
    throw std::runtime_error("'" + path.string() + "' is not an 8-bit binary PGM");
  }
  is.get();
  img.pixels.resize(static_cast<std::size_t>(img.rows) * img.cols);
  is.read(reinterpret_cast<char*>(img.pixels.data()),
          static_cast<std::streamsize>(img.pixels.size()));
  if (!is) throw std::runtime_error("'" + path.string() + "' is truncated");
  return img;
}

GrayImage hologram_image(const HologramFunction& hologram) {
  GrayImage img = blank(hologram.geometry());
  if (hologram.sigma <= 0.0) return img;
  for (std::size_t i = 0; i < img.pixels.size(); ++i)
    img.pixels[i] = to_byte(255.0 * hologram.f[i] / hologram.sigma);
  return img;
}

GrayImage amplitude_image(const ComplexField& field) {
  GrayImage img = blank(field.geometry());
  double peak = 0.0;
  for (const auto& v : field.values()) peak = std::max(peak, std::abs(v));
  if (peak <= 0.0) return img;
  for (std::size_t i = 0; i < img.pixels.size(); ++i)
    img.pixels[i] = to_byte(255.0 * std::abs(field[i]) / peak);
  return img;
}

GrayImage phase_image(const ComplexField& field) {
  const GridGeometry& g = field.geometry();
  GrayImage img = blank(g);
  for (int r = 0; r < g.rows(); ++r)
    for (int c = 0; c < g.cols(); ++c) {
      if (!g.inside(r, c)) continue;
      const cplx v = field.at(r, c);
      const double ph = std::abs(v) < 1e-12 ? 0.0 : std::arg(v);
      img.pixels[g.index(r, c)] = to_byte(255.0 * (ph + kPi) / kTwoPi);
    }
  return img;
}

GrayImage far_field_image(const ComplexField& field, double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("far_field_image: gamma must be > 0");
  GrayImage img = blank(field.geometry());
  double peak = 0.0;
  for (const auto& v : field.values()) peak = std::max(peak, std::abs(v));
  if (peak <= 0.0) return img;
  for (std::size_t i = 0; i < img.pixels.size(); ++i)
    img.pixels[i] = to_byte(255.0 * std::pow(std::abs(field[i]) / peak, gamma));
  return img;
}

GrayImage real_image(const RealGrid& grid) {
  GrayImage img = blank(grid.geometry());
  double peak = 0.0;
  for (double v : grid.values()) peak = std::max(peak, v);
  if (peak <= 0.0) return img;
  for (std::size_t i = 0; i < img.pixels.size(); ++i)
    img.pixels[i] = to_byte(255.0 * std::max(0.0, grid[i]) / peak);
  return img;
}

void write_real_csv(const std::filesystem::path& path, const RealGrid& grid) {
  auto os = open_out(path, std::ios::out);
  os << std::setprecision(17);
  for (int r = 0; r < grid.rows(); ++r) {
    for (int c = 0; c < grid.cols(); ++c) {
      if (c) os << ',';
      os << grid.at(r, c);
    }
    os << '\n';
  }
}

RealGrid read_real_csv(const std::filesystem::path& path, const GridGeometry& geometry) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open '" + path.string() + "'");
  RealGrid grid(geometry);
  std::string line;
  int r = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (r >= geometry.rows()) throw std::runtime_error("csv grid has more than " + std::to_string(geometry.rows()) + " rows");
    std::stringstream ss(line);
    std::string cell;
    int c = 0;
    while (std::getline(ss, cell, ',')) {
      if (c >= geometry.cols()) break;
      grid.at(r, c++) = std::stod(cell);
    }
    if (c != geometry.cols() || ss.good()) {
      throw std::runtime_error("csv grid row " + std::to_string(r) + " does not have " +
                               std::to_string(geometry.cols()) + " values");
    }
    ++r;
  }
  if (r != geometry.rows()) {
    throw std::runtime_error("csv grid has " + std::to_string(r) + " rows, expected " +
                             std::to_string(geometry.rows()));
  }
  return grid;
}

void write_complex_csv(const std::filesystem::path& path, const ComplexField& field) {
  auto os = open_out(path, std::ios::out);
  os << "row,col,re,im\n" << std::setprecision(17);
  for (int r = 0; r < field.rows(); ++r)
    for (int c = 0; c < field.cols(); ++c)
      os << r << ',' << c << ',' << field.at(r, c).real() << ',' << field.at(r, c).imag() << '\n';
}

}  // namespace oamcgh
