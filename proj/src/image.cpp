#include "edgemark/image.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string_view>

#include "edgemark/error.hpp"

namespace edgemark {
namespace {

void check_dims(int width, int height) {
  if (width <= 0 || height <= 0) {
    throw Error(ErrorKind::kDimension, "image dimensions must be positive, got " +
                                           std::to_string(width) + "x" +
                                           std::to_string(height));
  }
}

std::size_t area(int width, int height) {
  return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
}

// Minimal cursor over a netpbm header.
class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const auto c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else if (std::isspace(c)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  long read_uint(const char* field) {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
      throw Error(ErrorKind::kPgmHeader, std::string("PGM header: expected ") + field);
    }
    long v = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_] - '0');
      if (v > 1'000'000'000L) {
        throw Error(ErrorKind::kPgmHeader, std::string("PGM header: ") + field + " too large");
      }
      ++pos_;
    }
    return v;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  void consume_single_space() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw Error(ErrorKind::kPgmHeader, "PGM header: missing whitespace after maxval");
    }
    ++pos_;
  }

  std::size_t pos() const noexcept { return pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

Image::Image(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
  check_dims(width, height);
  pixels_.assign(area(width, height), fill);
}

Image::Image(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  check_dims(width, height);
  if (pixels_.size() != area(width, height)) {
    throw Error(ErrorKind::kDimension, "pixel count " + std::to_string(pixels_.size()) +
                                           " does not match " + std::to_string(width) +
                                           "x" + std::to_string(height));
  }
}

RealMatrix::RealMatrix(int width, int height, double fill)
    : width_(width), height_(height) {
  check_dims(width, height);
  values_.assign(area(width, height), fill);
}

RealMatrix::RealMatrix(int width, int height, std::vector<double> values)
    : width_(width), height_(height), values_(std::move(values)) {
  check_dims(width, height);
  if (values_.size() != area(width, height)) {
    throw Error(ErrorKind::kDimension, "value count " + std::to_string(values_.size()) +
                                           " does not match " + std::to_string(width) +
                                           "x" + std::to_string(height));
  }
}

RealMatrix RealMatrix::window(int x0, int y0, int w, int h) const {
  if (x0 < 0 || y0 < 0 || w <= 0 || h <= 0 || x0 + w > width_ || y0 + h > height_) {
    throw Error(ErrorKind::kDimension, "window outside matrix bounds");
  }
  RealMatrix out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) out.at(x, y) = at(x0 + x, y0 + y);
  }
  return out;
}

RealMatrix to_real(const Image& img) {
  std::vector<double> v(img.pixels().begin(), img.pixels().end());
  return RealMatrix(img.width(), img.height(), std::move(v));
}

std::uint8_t quantize_sample(double v) noexcept {
  if (!(v > 0.0)) return 0;  // also maps NaN to 0
  const double r = std::round(v);  // half away from zero
  return r >= 255.0 ? std::uint8_t{255} : static_cast<std::uint8_t>(r);
}

Image clamp_quantize(const RealMatrix& m) {
  std::vector<std::uint8_t> px(m.size());
  const auto vals = m.values();
  for (std::size_t i = 0; i < px.size(); ++i) px[i] = quantize_sample(vals[i]);
  return Image(m.width(), m.height(), std::move(px));
}

Image to_luminance(int width, int height, std::span<const std::uint8_t> rgb) {
  check_dims(width, height);
  const std::size_t n = area(width, height);
  if (rgb.size() != 3 * n) {
    throw Error(ErrorKind::kDimension, "RGB raster length " + std::to_string(rgb.size()) +
                                           " != 3 x " + std::to_string(n));
  }
  std::vector<std::uint8_t> px(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double y = 0.299 * rgb[3 * i] + 0.587 * rgb[3 * i + 1] + 0.114 * rgb[3 * i + 2];
    px[i] = quantize_sample(y);
  }
  return Image(width, height, std::move(px));
}

Image load_pgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P') {
    throw Error(ErrorKind::kPgmMagic, "not a PGM file (missing 'P' magic)");
  }
  if (bytes[1] != '5') {
    throw Error(ErrorKind::kPgmMagic, std::string("unsupported magic 'P") +
                                          static_cast<char>(bytes[1]) +
                                          "', only binary P5 is accepted");
  }
  HeaderReader rd(bytes.subspan(2));
  const long width = rd.read_uint("width");
  const long height = rd.read_uint("height");
  const long maxval = rd.read_uint("maxval");
  if (width <= 0 || height <= 0) {
    throw Error(ErrorKind::kPgmHeader, "PGM header: dimensions must be positive");
  }
  if (maxval != 255) {
    throw Error(ErrorKind::kPgmMaxval,
                "unsupported maxval " + std::to_string(maxval) + ", expected 255");
  }
  rd.consume_single_space();
  const std::size_t offset = 2 + rd.pos();
  const std::size_t need = area(static_cast<int>(width), static_cast<int>(height));
  if (bytes.size() - offset < need) {
    throw Error(ErrorKind::kPgmTruncated, "PGM payload truncated: need " +
                                              std::to_string(need) + " bytes, have " +
                                              std::to_string(bytes.size() - offset));
  }
  const auto raster = bytes.subspan(offset, need);
  return Image(static_cast<int>(width), static_cast<int>(height),
               std::vector<std::uint8_t>(raster.begin(), raster.end()));
}

std::vector<std::uint8_t> save_pgm(const Image& img) {
  const std::string header =
      "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), img.pixels().begin(), img.pixels().end());
  return out;
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open '" + path + "'");
  std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorKind::kIo, "read failed for '" + path + "'");
  return data;
}

Image read_pgm_file(const std::string& path) {
  const auto bytes = read_file(path);
  try {
    return load_pgm(bytes);
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

void write_file_atomic(const std::string& path, std::span<const std::uint8_t> bytes) {
  const std::string tmp = path + ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::kIo, "cannot open '" + path + "' for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) {
      out.close();
      std::remove(tmp.c_str());
      throw Error(ErrorKind::kIo, "write failed for '" + path + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::remove(tmp.c_str());
    throw Error(ErrorKind::kIo, "cannot move output into '" + path + "': " + ec.message());
  }
}

}  // namespace edgemark
