#pragma once

#include <cstddef>
#include <vector>

#include "edgemark/embedder.hpp"
#include "edgemark/image.hpp"
#include "edgemark/payload.hpp"

namespace edgemark {

struct DetectionResult {
  WatermarkBits bits;
  std::vector<double> statistics;
  /// Blocks whose statistic was exactly zero; those decode to 0.
  std::size_t ambiguous_count = 0;
};

/// Forward difference along x: G[y][x] = B[y][x+1] - B[y][x]. Output is (w-1)×h.
RealMatrix block_gradient(const RealMatrix& block);

/// Signed decision value of a block (even width).
///   telescoping:      sum of block_gradient = sum_y (B[y][w-1] - B[y][0])
///   half_difference:  sum of right half minus sum of left half
double decision_statistic(const RealMatrix& block, StatisticKind kind);

/// Blind extraction: DWT, tile HH row-major, threshold the statistic of each
/// of the first `num_bits` tiles at zero.
DetectionResult extract(const RealMatrix& img, const EmbedConfig& cfg, std::size_t num_bits);
DetectionResult extract(const Image& img, const EmbedConfig& cfg, std::size_t num_bits);

/// Statistics of the first `num_bits` HH tiles, no decisions.
std::vector<double> block_statistics(const RealMatrix& img, const EmbedConfig& cfg,
                                     std::size_t num_bits);

}  // namespace edgemark
