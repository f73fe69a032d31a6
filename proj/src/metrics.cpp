#include "edgemark/metrics.hpp"

#include <cmath>
#include <limits>

#include "edgemark/error.hpp"

namespace edgemark {

double mean_squared_error(const Image& a, const Image& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw Error(ErrorKind::kDimension, "PSNR needs images of identical dimensions");
  }
  const auto pa = a.pixels();
  const auto pb = b.pixels();
  // Integer accumulation keeps the result independent of summation order.
  unsigned long long sq = 0;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const int d = static_cast<int>(pa[i]) - static_cast<int>(pb[i]);
    sq += static_cast<unsigned long long>(d * d);
  }
  return static_cast<double>(sq) / static_cast<double>(pa.size());
}

double psnr(const Image& a, const Image& b) {
  const double mse = mean_squared_error(a, b);
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

std::size_t bit_errors(const WatermarkBits& reference, const WatermarkBits& extracted) {
  if (reference.size() != extracted.size()) {
    throw Error(ErrorKind::kInvalidArgument,
                "BER needs equal lengths, got " + std::to_string(reference.size()) + " and " +
                    std::to_string(extracted.size()));
  }
  std::size_t errors = 0;
  for (std::size_t i = 0; i < reference.size(); ++i) errors += reference[i] != extracted[i];
  return errors;
}

double ber(const WatermarkBits& reference, const WatermarkBits& extracted) {
  return static_cast<double>(bit_errors(reference, extracted)) /
         static_cast<double>(reference.size());
}

MetricReport measure(const Image& host, const Image& marked, const WatermarkBits& reference,
                     const WatermarkBits& extracted) {
  MetricReport r;
  r.psnr_db = psnr(host, marked);
  r.bit_errors = bit_errors(reference, extracted);
  r.total_bits = reference.size();
  r.ber = static_cast<double>(r.bit_errors) / static_cast<double>(r.total_bits);
  return r;
}

}  // namespace edgemark
