#include "edgemark/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#include "edgemark/error.hpp"
#include "edgemark/rng.hpp"

namespace edgemark {
namespace {

[[noreturn]] void bad_param(const std::string& what) {
  throw Error(ErrorKind::kInvalidArgument, what);
}

int clampi(int v, int lo, int hi) { return std::min(std::max(v, lo), hi); }

// Orthonormal 8-point DCT-II basis: kDct[u][x].
struct DctBasis {
  double c[8][8];
  DctBasis() {
    for (int u = 0; u < 8; ++u) {
      const double a = u == 0 ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
      for (int x = 0; x < 8; ++x) c[u][x] = a * std::cos((2 * x + 1) * u * std::numbers::pi / 16.0);
    }
  }
};

const DctBasis& dct_basis() {
  static const DctBasis basis;
  return basis;
}

void fdct8x8(const double in[64], double out[64]) {
  const auto& b = dct_basis().c;
  double tmp[64];
  for (int y = 0; y < 8; ++y) {
    for (int u = 0; u < 8; ++u) {
      double s = 0.0;
      for (int x = 0; x < 8; ++x) s += b[u][x] * in[y * 8 + x];
      tmp[y * 8 + u] = s;
    }
  }
  for (int v = 0; v < 8; ++v) {
    for (int u = 0; u < 8; ++u) {
      double s = 0.0;
      for (int y = 0; y < 8; ++y) s += b[v][y] * tmp[y * 8 + u];
      out[v * 8 + u] = s;
    }
  }
}

void idct8x8(const double in[64], double out[64]) {
  const auto& b = dct_basis().c;
  double tmp[64];
  for (int y = 0; y < 8; ++y) {
    for (int u = 0; u < 8; ++u) {
      double s = 0.0;
      for (int v = 0; v < 8; ++v) s += b[v][y] * in[v * 8 + u];
      tmp[y * 8 + u] = s;
    }
  }
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      double s = 0.0;
      for (int u = 0; u < 8; ++u) s += b[u][x] * tmp[y * 8 + u];
      out[y * 8 + x] = s;
    }
  }
}

}  // namespace

const std::array<int, 64> kJpegLuminanceTable = {
    16, 11, 10, 16, 24,  40,  51,  61,   //
    12, 12, 14, 19, 26,  58,  60,  55,   //
    14, 13, 16, 24, 40,  57,  69,  56,   //
    14, 17, 22, 29, 51,  87,  80,  62,   //
    18, 22, 37, 56, 68,  109, 103, 77,   //
    24, 35, 55, 64, 81,  104, 113, 92,   //
    49, 64, 78, 87, 103, 121, 120, 101,  //
    72, 92, 95, 98, 112, 100, 103, 99,
};

Image salt_pepper(const Image& img, double density, std::uint64_t seed) {
  if (!(density > 0.0 && density < 1.0)) bad_param("salt-pepper density must lie in (0, 1)");
  Rng rng(seed);
  Image out = img;
  for (auto& p : out.pixels()) {
    const double u = rng.uniform();
    if (u < density / 2.0) {
      p = 0;
    } else if (u < density) {
      p = 255;
    }
  }
  return out;
}

Image gaussian_noise(const Image& img, double variance, std::uint64_t seed) {
  if (!(variance > 0.0) || !std::isfinite(variance)) {
    bad_param("gaussian variance must be > 0");
  }
  Rng rng(seed);
  const double sigma = std::sqrt(variance) * 255.0;
  Image out = img;
  for (auto& p : out.pixels()) p = quantize_sample(p + sigma * rng.normal());
  return out;
}

Image median_filter(const Image& img, int window) {
  if (window < 3 || window % 2 == 0) bad_param("median window must be odd and >= 3");
  const int r = window / 2;
  const int w = img.width();
  const int h = img.height();
  Image out(w, h);
  std::vector<std::uint8_t> buf(static_cast<std::size_t>(window) * window);
  const auto mid = buf.begin() + static_cast<std::ptrdiff_t>(buf.size() / 2);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      std::size_t k = 0;
      for (int dy = -r; dy <= r; ++dy) {
        const int yy = clampi(y + dy, 0, h - 1);
        for (int dx = -r; dx <= r; ++dx) buf[k++] = img.at(clampi(x + dx, 0, w - 1), yy);
      }
      std::nth_element(buf.begin(), mid, buf.end());
      out.at(x, y) = *mid;
    }
  }
  return out;
}

std::array<int, 64> jpeg_quant_table(int quality) {
  if (quality < 1 || quality > 100) bad_param("JPEG quality must lie in [1, 100]");
  // Integer scale as in the IJG reference encoder.
  const int scale = quality < 50 ? 5000 / quality : 200 - 2 * quality;
  std::array<int, 64> table{};
  for (std::size_t i = 0; i < table.size(); ++i) {
    const int q = (kJpegLuminanceTable[i] * scale + 50) / 100;
    table[i] = clampi(q, 1, 255);
  }
  return table;
}

Image jpeg_roundtrip(const Image& img, int quality) {
  const auto table = jpeg_quant_table(quality);
  const int w = img.width();
  const int h = img.height();
  const int pw = (w + 7) / 8 * 8;
  const int ph = (h + 7) / 8 * 8;
  RealMatrix recon(pw, ph);
  double block[64];
  double coef[64];
  for (int by = 0; by < ph; by += 8) {
    for (int bx = 0; bx < pw; bx += 8) {
      for (int y = 0; y < 8; ++y) {
        for (int x = 0; x < 8; ++x) {
          block[y * 8 + x] =
              img.at(std::min(bx + x, w - 1), std::min(by + y, h - 1)) - 128.0;
        }
      }
      fdct8x8(block, coef);
      for (int i = 0; i < 64; ++i) coef[i] = std::round(coef[i] / table[i]) * table[i];
      idct8x8(coef, block);
      for (int y = 0; y < 8; ++y) {
        for (int x = 0; x < 8; ++x) recon.at(bx + x, by + y) = block[y * 8 + x] + 128.0;
      }
    }
  }
  return clamp_quantize(pw == w && ph == h ? recon : recon.window(0, 0, w, h));
}

Image gif_quantize(const Image& img, int levels) {
  if (levels < 2 || levels > 256) bad_param("palette levels must lie in [2, 256]");
  std::array<std::uint8_t, 256> lut{};
  const double cell = 255.0 / levels;
  for (int v = 0; v < 256; ++v) {
    const int idx = std::min(levels - 1, static_cast<int>(std::floor(v / cell)));
    lut[v] = quantize_sample((idx + 0.5) * cell);
  }
  Image out = img;
  for (auto& p : out.pixels()) p = lut[p];
  return out;
}

Image hist_equalize(const Image& img) {
  std::array<std::size_t, 256> hist{};
  for (auto p : img.pixels()) ++hist[p];
  std::array<std::size_t, 256> cdf{};
  std::size_t acc = 0;
  for (int v = 0; v < 256; ++v) cdf[v] = acc += hist[v];
  std::size_t cdf_min = 0;
  for (auto c : cdf) {
    if (c > 0) {
      cdf_min = c;
      break;
    }
  }
  const std::size_t total = img.size();
  std::array<std::uint8_t, 256> lut{};
  for (int v = 0; v < 256; ++v) {
    if (total == cdf_min) {
      lut[v] = 255;
    } else if (cdf[v] < cdf_min) {
      lut[v] = 0;
    } else {
      lut[v] = quantize_sample(255.0 * static_cast<double>(cdf[v] - cdf_min) /
                               static_cast<double>(total - cdf_min));
    }
  }
  Image out = img;
  for (auto& p : out.pixels()) p = lut[p];
  return out;
}

Image rotate_small(const Image& img, double degrees) {
  if (!(std::abs(degrees) <= 45.0)) bad_param("rotation angle must lie in [-45, 45] degrees");
  if (degrees == 0.0) return img;
  const int w = img.width();
  const int h = img.height();
  const double t = degrees * std::numbers::pi / 180.0;
  const double c = std::cos(t);
  const double s = std::sin(t);
  const double cx = (w - 1) / 2.0;
  const double cy = (h - 1) / 2.0;
  auto sample = [&](int x, int y) {
    return static_cast<double>(img.at(clampi(x, 0, w - 1), clampi(y, 0, h - 1)));
  };
  RealMatrix out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      // Inverse map: output pixel -> source position.
      const double dx = x - cx;
      const double dy = y - cy;
      const double sx = std::clamp(c * dx + s * dy + cx, 0.0, w - 1.0);
      const double sy = std::clamp(-s * dx + c * dy + cy, 0.0, h - 1.0);
      const int x0 = static_cast<int>(std::floor(sx));
      const int y0 = static_cast<int>(std::floor(sy));
      const double fx = sx - x0;
      const double fy = sy - y0;
      const double top = (1 - fx) * sample(x0, y0) + fx * sample(x0 + 1, y0);
      const double bot = (1 - fx) * sample(x0, y0 + 1) + fx * sample(x0 + 1, y0 + 1);
      out.at(x, y) = (1 - fy) * top + fy * bot;
    }
  }
  return clamp_quantize(out);
}

std::string_view to_string(AttackKind kind) noexcept {
  switch (kind) {
    case AttackKind::kNone:
      return "none";
    case AttackKind::kSaltPepper:
      return "salt_pepper";
    case AttackKind::kGaussian:
      return "gaussian";
    case AttackKind::kMedian:
      return "median";
    case AttackKind::kJpeg:
      return "jpeg";
    case AttackKind::kGif:
      return "gif";
    case AttackKind::kHistEq:
      return "hist_eq";
    case AttackKind::kRotation:
      return "rotation";
  }
  return "unknown";
}

AttackKind parse_attack(std::string_view name) {
  for (auto k : {AttackKind::kNone, AttackKind::kSaltPepper, AttackKind::kGaussian,
                 AttackKind::kMedian, AttackKind::kJpeg, AttackKind::kGif, AttackKind::kHistEq,
                 AttackKind::kRotation}) {
    if (name == to_string(k)) return k;
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown attack '" + std::string(name) + "'");
}

bool is_seeded(AttackKind kind) noexcept {
  return kind == AttackKind::kSaltPepper || kind == AttackKind::kGaussian;
}

void AttackSpec::validate() const {
  const double p = parameter;
  const bool integral = std::isfinite(p) && p == std::floor(p);
  switch (kind) {
    case AttackKind::kNone:
    case AttackKind::kHistEq:
      return;
    case AttackKind::kSaltPepper:
      if (!(p > 0.0 && p < 1.0)) bad_param("salt_pepper density must lie in (0, 1)");
      return;
    case AttackKind::kGaussian:
      if (!(p > 0.0) || !std::isfinite(p)) bad_param("gaussian variance must be > 0");
      return;
    case AttackKind::kMedian:
      if (!integral || p < 3 || static_cast<long>(p) % 2 == 0) {
        bad_param("median window must be an odd integer >= 3");
      }
      return;
    case AttackKind::kJpeg:
      if (!integral || p < 1 || p > 100) bad_param("jpeg quality must be an integer in [1, 100]");
      return;
    case AttackKind::kGif:
      if (!integral || p < 2 || p > 256) bad_param("gif levels must be an integer in [2, 256]");
      return;
    case AttackKind::kRotation:
      if (!(std::abs(p) <= 45.0)) bad_param("rotation angle must lie in [-45, 45]");
      return;
  }
}

std::string AttackSpec::label() const {
  std::string name(to_string(kind));
  if (kind == AttackKind::kNone || kind == AttackKind::kHistEq) return name;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", parameter);
  return name + ":" + buf;
}

Image apply_attack(const Image& img, const AttackSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case AttackKind::kNone:
      return img;
    case AttackKind::kSaltPepper:
      return salt_pepper(img, spec.parameter, spec.seed);
    case AttackKind::kGaussian:
      return gaussian_noise(img, spec.parameter, spec.seed);
    case AttackKind::kMedian:
      return median_filter(img, static_cast<int>(spec.parameter));
    case AttackKind::kJpeg:
      return jpeg_roundtrip(img, static_cast<int>(spec.parameter));
    case AttackKind::kGif:
      return gif_quantize(img, static_cast<int>(spec.parameter));
    case AttackKind::kHistEq:
      return hist_equalize(img);
    case AttackKind::kRotation:
      return rotate_small(img, spec.parameter);
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown attack kind");
}

}  // namespace edgemark
