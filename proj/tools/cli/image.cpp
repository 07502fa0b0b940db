#include "image.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

namespace tbcp::cli {

void writePpm(const std::filesystem::path& path, const RgbImage& img) {
  if (img.rgb.size() != static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height) * 3) {
    throw std::invalid_argument("image buffer size does not match its dimensions");
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << "P6\n" << img.width << " " << img.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.rgb.data()), static_cast<std::streamsize>(img.rgb.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

RgbImage readPpm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string() + " for reading");
  std::string magic;
  int maxval = 0;
  RgbImage img;
  in >> magic >> img.width >> img.height >> maxval;
  if (magic != "P6" || maxval != 255 || img.width <= 0 || img.height <= 0) {
    throw std::runtime_error(path.string() + ": not an 8-bit P6 image");
  }
  in.get();
  img.rgb.resize(static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height) * 3);
  in.read(reinterpret_cast<char*>(img.rgb.data()), static_cast<std::streamsize>(img.rgb.size()));
  if (!in) throw std::runtime_error(path.string() + ": truncated image");
  return img;
}

std::uint8_t toChannel(double v) {
  if (std::isnan(v)) v = 0.0;
  return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

RgbImage renderSolution(const CandidateEquilibrium& s, int pixels) {
  if (s.params.dim != 2) throw std::invalid_argument("image rendering needs a two-dimensional solution");
  if (pixels < 1) throw std::invalid_argument("pixel count must be positive");
  const std::vector<double> w1 = evaluateOnGrid(s.w[0], pixels);
  const std::vector<double> w2 = evaluateOnGrid(s.w[1], pixels);
  RgbImage img{pixels, pixels, {}};
  img.rgb.resize(static_cast<std::size_t>(pixels) * static_cast<std::size_t>(pixels) * 3);
  const auto n = static_cast<std::size_t>(pixels);
  for (std::size_t row = 0; row < n; ++row) {
    const std::size_t iy = n - 1 - row;
    for (std::size_t ix = 0; ix < n; ++ix) {
      const std::size_t g = ix * n + iy;
      const double u1 = s.params.mass.mu1 + w1[g];
      const double u2 = s.params.mass.mu2 + w2[g];
      // μ₃ - w₁ - w₂ equals 1 - u₁ - u₂ without the cancellation error.
      const double u3 = s.params.mass.mu3 - w1[g] - w2[g];
      std::uint8_t* px = &img.rgb[(row * n + ix) * 3];
      px[0] = toChannel(u1);
      px[1] = toChannel(u2);
      px[2] = toChannel(u3);
    }
  }
  return img;
}

RgbImage renderStabilityMap(const StabilityRaster& raster) {
  const int r = raster.resolution;
  RgbImage img{r, r, std::vector<std::uint8_t>(static_cast<std::size_t>(r) * static_cast<std::size_t>(r) * 3, 128)};
  for (const StabilityPoint& p : raster.points) {
    const auto i = static_cast<std::size_t>(std::lround(p.mu1 * (r - 1)));
    const auto j = static_cast<std::size_t>(std::lround(p.mu2 * (r - 1)));
    const std::size_t row = static_cast<std::size_t>(r - 1) - j;
    std::uint8_t* px = &img.rgb[(row * static_cast<std::size_t>(r) + i) * 3];
    switch (p.cls.tag) {
      case StabilityTag::Stable: px[0] = 255, px[1] = 255, px[2] = 255; break;
      case StabilityTag::OneUnstable: px[0] = 150, px[1] = 200, px[2] = 255; break;
      case StabilityTag::TwoUnstable: px[0] = 20, px[1] = 60, px[2] = 160; break;
    }
  }
  return img;
}

}  // namespace tbcp::cli
