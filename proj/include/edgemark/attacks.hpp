#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "edgemark/image.hpp"

namespace edgemark {

/// Noise parameters are on the normalized [0, 1] intensity scale.
Image salt_pepper(const Image& img, double density, std::uint64_t seed);
Image gaussian_noise(const Image& img, double variance, std::uint64_t seed);

/// window×window median, edge-replicated borders.
Image median_filter(const Image& img, int window);

/// Baseline grayscale JPEG without entropy coding: level shift, 8×8 DCT,
/// quantization with the scaled standard luminance table, and back.
/// Dimensions that are not multiples of 8 are edge-padded and cropped.
Image jpeg_roundtrip(const Image& img, int quality);

/// Scaled standard luminance table for `quality`, row-major 8×8.
std::array<int, 64> jpeg_quant_table(int quality);
extern const std::array<int, 64> kJpegLuminanceTable;

/// Uniform palette of `levels` cells over [0, 255], midpoint reconstruction.
Image gif_quantize(const Image& img, int levels);

/// Global equalization through the CDF. A single-level image maps to 255.
Image hist_equalize(const Image& img);

/// Bilinear rotation about the centre, output cropped to the input frame,
/// out-of-frame samples taken from the nearest edge pixel.
Image rotate_small(const Image& img, double degrees);

enum class AttackKind { kNone, kSaltPepper, kGaussian, kMedian, kJpeg, kGif, kHistEq, kRotation };

std::string_view to_string(AttackKind kind) noexcept;
AttackKind parse_attack(std::string_view name);
bool is_seeded(AttackKind kind) noexcept;

struct AttackSpec {
  AttackKind kind = AttackKind::kNone;
  double parameter = 0.0;
  std::uint64_t seed = 0;

  /// Throws when the parameter is outside the legal range for `kind`.
  void validate() const;

  /// Stable textual id, e.g. "jpeg:50".
  std::string label() const;
};

Image apply_attack(const Image& img, const AttackSpec& spec);

}  // namespace edgemark
