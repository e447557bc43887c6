#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "oamcgh/cgh_synth.hpp"
#include "oamcgh/grid.hpp"

namespace oamcgh {

// 8-bit grayscale image, row-major.
struct GrayImage {
  int rows = 0;
  int cols = 0;
  std::vector<std::uint8_t> pixels;
};

// Binary PGM (P5, maxval 255). Throws std::runtime_error on I/O failure.
void write_pgm(const std::filesystem::path& path, const GrayImage& image);
GrayImage read_pgm(const std::filesystem::path& path);

// round(255 f / sigma).
GrayImage hologram_image(const HologramFunction& hologram);
// round(255 |v| / max |v|).
GrayImage amplitude_image(const ComplexField& field);
// [-pi, pi] -> [0, 255] inside the aperture, 0 outside.
GrayImage phase_image(const ComplexField& field);
// round(255 (|v| / max |v|)^gamma); nonlinear display of far-field spots.
GrayImage far_field_image(const ComplexField& field, double gamma);
// round(255 v / max v) of a nonnegative real grid.
GrayImage real_image(const RealGrid& grid);

// Rows of comma-separated values, one grid row per line.
void write_real_csv(const std::filesystem::path& path, const RealGrid& grid);
// Reads a rows x cols CSV grid; throws std::runtime_error on shape mismatch.
RealGrid read_real_csv(const std::filesystem::path& path, const GridGeometry& geometry);
// Lines of row,col,re,im for every sample.
void write_complex_csv(const std::filesystem::path& path, const ComplexField& field);

}  // namespace oamcgh
