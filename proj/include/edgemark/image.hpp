#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace edgemark {

/// 8-bit grayscale raster, row-major.
class Image {
 public:
  Image() = default;
  Image(int width, int height, std::uint8_t fill = 0);
  Image(int width, int height, std::vector<std::uint8_t> pixels);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return pixels_.size(); }
  bool empty() const noexcept { return pixels_.empty(); }

  std::uint8_t at(int x, int y) const { return pixels_[index(x, y)]; }
  std::uint8_t& at(int x, int y) { return pixels_[index(x, y)]; }

  std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }
  std::span<std::uint8_t> pixels() noexcept { return pixels_; }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

/// Unbounded real-valued matrix; carries DWT coefficients and pre-quantization pixels.
class RealMatrix {
 public:
  RealMatrix() = default;
  RealMatrix(int width, int height, double fill = 0.0);
  RealMatrix(int width, int height, std::vector<double> values);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return values_.size(); }

  double at(int x, int y) const { return values_[index(x, y)]; }
  double& at(int x, int y) { return values_[index(x, y)]; }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  /// Copies the w×h window whose top-left corner is (x0, y0).
  RealMatrix window(int x0, int y0, int w, int h) const;

  friend bool operator==(const RealMatrix&, const RealMatrix&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> values_;
};

RealMatrix to_real(const Image& img);

/// Round half away from zero, then clamp to [0, 255].
std::uint8_t quantize_sample(double v) noexcept;

/// Element-wise quantize_sample.
Image clamp_quantize(const RealMatrix& m);

/// Y = round(0.299 R + 0.587 G + 0.114 B) per interleaved RGB pixel.
Image to_luminance(int width, int height, std::span<const std::uint8_t> rgb);

/// Parses binary PGM (P5, maxval 255). Header comments and whitespace follow
/// the netpbm convention.
Image load_pgm(std::span<const std::uint8_t> bytes);

/// Canonical "P5\n<w> <h>\n255\n" + raw payload.
std::vector<std::uint8_t> save_pgm(const Image& img);

Image read_pgm_file(const std::string& path);

/// Writes via a sibling temporary file and rename, so a failed write never
/// leaves a partial file at `path`.
void write_file_atomic(const std::string& path, std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> read_file(const std::string& path);

}  // namespace edgemark
