#include "edgemark/detector.hpp"

#include "edgemark/error.hpp"
#include "edgemark/wavelet.hpp"

namespace edgemark {

RealMatrix block_gradient(const RealMatrix& block) {
  if (block.width() < 2) {
    throw Error(ErrorKind::kDimension, "gradient needs a block at least 2 wide");
  }
  RealMatrix g(block.width() - 1, block.height());
  for (int y = 0; y < block.height(); ++y) {
    for (int x = 0; x + 1 < block.width(); ++x) g.at(x, y) = block.at(x + 1, y) - block.at(x, y);
  }
  return g;
}

double decision_statistic(const RealMatrix& block, StatisticKind kind) {
  const int w = block.width();
  if (w < 2 || w % 2 != 0) {
    throw Error(ErrorKind::kDimension, "decision statistic needs an even block width >= 2");
  }
  double s = 0.0;
  switch (kind) {
    case StatisticKind::kTelescoping: {
      const RealMatrix g = block_gradient(block);
      for (double v : g.values()) s += v;
      break;
    }
    case StatisticKind::kHalfDifference:
      for (int y = 0; y < block.height(); ++y) {
        for (int x = 0; x < w; ++x) s += x < w / 2 ? -block.at(x, y) : block.at(x, y);
      }
      break;
  }
  return s;
}

std::vector<double> block_statistics(const RealMatrix& img, const EmbedConfig& cfg,
                                     std::size_t num_bits) {
  cfg.validate();
  const std::size_t cap = capacity(img.width(), img.height(), cfg.block);
  if (num_bits == 0 || num_bits > cap) {
    throw Error(ErrorKind::kCapacity, "requested " + std::to_string(num_bits) +
                                          " bits, capacity is " + std::to_string(cap));
  }
  const SubBands sb = dwt2_level1(img, make_filter_bank(cfg.wavelet));
  std::vector<double> stats(num_bits);
  for (std::size_t i = 0; i < num_bits; ++i) {
    const auto [x0, y0] = block_origin(sb.hh, cfg.block, i);
    stats[i] = decision_statistic(sb.hh.window(x0, y0, cfg.block, cfg.block), cfg.statistic);
  }
  return stats;
}

DetectionResult extract(const RealMatrix& img, const EmbedConfig& cfg, std::size_t num_bits) {
  auto stats = block_statistics(img, cfg, num_bits);
  std::vector<std::uint8_t> bits(stats.size(), 0);
  std::size_t ambiguous = 0;
  for (std::size_t i = 0; i < stats.size(); ++i) {
    if (stats[i] > 0.0) {
      bits[i] = 1;
    } else if (stats[i] == 0.0) {
      ++ambiguous;
    }
  }
  return {WatermarkBits(std::move(bits)), std::move(stats), ambiguous};
}

DetectionResult extract(const Image& img, const EmbedConfig& cfg, std::size_t num_bits) {
  return extract(to_real(img), cfg, num_bits);
}

}  // namespace edgemark
