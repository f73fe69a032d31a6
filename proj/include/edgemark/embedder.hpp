#pragma once

#include <cstddef>
#include <string_view>

#include "edgemark/image.hpp"
#include "edgemark/payload.hpp"
#include "edgemark/wavelet.hpp"

namespace edgemark {

/// How the detector turns an HH block into a signed decision value.
enum class StatisticKind {
  kHalfDifference,  ///< right-half sum minus left-half sum
  kTelescoping,     ///< sum of forward horizontal differences
};

std::string_view to_string(StatisticKind kind) noexcept;
StatisticKind parse_statistic(std::string_view name);

struct EmbedConfig {
  double lambda = 20.0;
  int block = 8;
  WaveletKind wavelet = WaveletKind::kHaar;
  StatisticKind statistic = StatisticKind::kHalfDifference;

  /// Throws unless lambda > 0 and block is even and >= 2.
  void validate() const;
};

/// Number of block×block tiles in the HH band: (width/2n)·(height/2n).
/// Throws naming the dimension that is not a multiple of 2n.
std::size_t capacity(int width, int height, int block);

/// Position of HH tile `index` in row-major order over the tile grid.
struct BlockOrigin {
  int x;
  int y;
};
BlockOrigin block_origin(const RealMatrix& hh, int block, std::size_t index);

/// Insertion without the final 8-bit store: DWT, add lambda·edge to the first
/// bits.size() HH tiles, inverse DWT.
RealMatrix embed_unquantized(const RealMatrix& host, const WatermarkBits& bits,
                             const EmbedConfig& cfg);

/// embed_unquantized followed by clamp_quantize.
Image embed(const Image& host, const WatermarkBits& bits, const EmbedConfig& cfg);

}  // namespace edgemark
