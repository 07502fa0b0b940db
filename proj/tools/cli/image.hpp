#pragma once

// PPM (P6) output and colour mapping for solutions and stability maps.

#include <cstdint>
#include <filesystem>
#include <vector>

#include "tbcp/model.hpp"
#include "tbcp/solver.hpp"

namespace tbcp::cli {

struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  // row-major, top row first
};

void writePpm(const std::filesystem::path& path, const RgbImage& img);
RgbImage readPpm(const std::filesystem::path& path);

// Channel value lround(clamp(v, 0, 1)·255).
std::uint8_t toChannel(double v);

// u = μ + w sampled at cell centres; column ↔ x₁, row ↔ x₂ (top row x₂ ≈ 1).
RgbImage renderSolution(const CandidateEquilibrium& s, int pixels);

// Gibbs-triangle raster: column ↔ μ₁, row ↔ μ₂ (bottom row μ₂ = 0).
RgbImage renderStabilityMap(const StabilityRaster& raster);

}  // namespace tbcp::cli
