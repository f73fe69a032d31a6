#include "edgemark/embedder.hpp"

#include <cmath>

#include "edgemark/error.hpp"

namespace edgemark {

std::string_view to_string(StatisticKind kind) noexcept {
  switch (kind) {
    case StatisticKind::kHalfDifference:
      return "half_difference";
    case StatisticKind::kTelescoping:
      return "telescoping";
  }
  return "unknown";
}

StatisticKind parse_statistic(std::string_view name) {
  if (name == "half_difference") return StatisticKind::kHalfDifference;
  if (name == "telescoping") return StatisticKind::kTelescoping;
  throw Error(ErrorKind::kInvalidArgument, "unknown statistic '" + std::string(name) +
                                               "' (expected half_difference or telescoping)");
}

void EmbedConfig::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorKind::kInvalidArgument, "lambda must be > 0, got " + std::to_string(lambda));
  }
  if (block < 2 || block % 2 != 0) {
    throw Error(ErrorKind::kInvalidArgument,
                "block size must be even and >= 2, got " + std::to_string(block));
  }
}

std::size_t capacity(int width, int height, int block) {
  if (block < 2 || block % 2 != 0) {
    throw Error(ErrorKind::kInvalidArgument,
                "block size must be even and >= 2, got " + std::to_string(block));
  }
  const int tile = 2 * block;
  if (width <= 0 || width % tile != 0) {
    throw Error(ErrorKind::kDimension, "width " + std::to_string(width) +
                                           " is not a positive multiple of 2*block = " +
                                           std::to_string(tile));
  }
  if (height <= 0 || height % tile != 0) {
    throw Error(ErrorKind::kDimension, "height " + std::to_string(height) +
                                           " is not a positive multiple of 2*block = " +
                                           std::to_string(tile));
  }
  return static_cast<std::size_t>(width / tile) * static_cast<std::size_t>(height / tile);
}

BlockOrigin block_origin(const RealMatrix& hh, int block, std::size_t index) {
  const auto per_row = static_cast<std::size_t>(hh.width() / block);
  return {static_cast<int>(index % per_row) * block, static_cast<int>(index / per_row) * block};
}

RealMatrix embed_unquantized(const RealMatrix& host, const WatermarkBits& bits,
                             const EmbedConfig& cfg) {
  cfg.validate();
  const std::size_t cap = capacity(host.width(), host.height(), cfg.block);
  if (bits.size() > cap) {
    throw Error(ErrorKind::kCapacity, "payload of " + std::to_string(bits.size()) +
                                          " bits exceeds capacity " + std::to_string(cap));
  }
  const FilterBank fb = make_filter_bank(cfg.wavelet);
  SubBands sb = dwt2_level1(host, fb);

  const EdgeBlock rising(cfg.block, Polarity::kRising);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const auto [x0, y0] = block_origin(sb.hh, cfg.block, i);
    const double sign = bits[i] != 0 ? 1.0 : -1.0;  // falling = -rising
    for (int y = 0; y < cfg.block; ++y) {
      for (int x = 0; x < cfg.block; ++x) {
        sb.hh.at(x0 + x, y0 + y) += cfg.lambda * sign * rising.at(x, y);
      }
    }
  }
  return idwt2_level1(sb, fb);
}

Image embed(const Image& host, const WatermarkBits& bits, const EmbedConfig& cfg) {
  return clamp_quantize(embed_unquantized(to_real(host), bits, cfg));
}

}  // namespace edgemark
