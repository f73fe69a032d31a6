#pragma once

#include <cstddef>

#include "edgemark/image.hpp"
#include "edgemark/payload.hpp"

namespace edgemark {

/// 10·log10(255² / MSE); +infinity for identical images.
double psnr(const Image& a, const Image& b);

double mean_squared_error(const Image& a, const Image& b);

std::size_t bit_errors(const WatermarkBits& reference, const WatermarkBits& extracted);

/// Fraction of differing positions. Throws on length mismatch.
double ber(const WatermarkBits& reference, const WatermarkBits& extracted);

struct MetricReport {
  double psnr_db = 0.0;
  double ber = 0.0;
  std::size_t bit_errors = 0;
  std::size_t total_bits = 0;
};

MetricReport measure(const Image& host, const Image& marked, const WatermarkBits& reference,
                     const WatermarkBits& extracted);

}  // namespace edgemark
