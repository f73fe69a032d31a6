#include "edgemark/wavelet.hpp"

#include <cmath>
#include <numbers>

#include "edgemark/error.hpp"

namespace edgemark {
namespace {

// Analysis along one line of `n` samples read with `stride` from `src`.
void analyze_line(const double* src, std::size_t stride, int n, const FilterBank& fb,
                  double* lo, double* hi, std::size_t out_stride) {
  const int half = n / 2;
  const int taps = static_cast<int>(fb.taps());
  for (int k = 0; k < half; ++k) {
    double a = 0.0;
    double d = 0.0;
    for (int t = 0; t < taps; ++t) {
      const double x = src[static_cast<std::size_t>((2 * k + t) % n) * stride];
      a += fb.low[t] * x;
      d += fb.high[t] * x;
    }
    lo[static_cast<std::size_t>(k) * out_stride] = a;
    hi[static_cast<std::size_t>(k) * out_stride] = d;
  }
}

void synthesize_line(const double* lo, const double* hi, std::size_t in_stride, int n,
                     const FilterBank& fb, double* dst, std::size_t stride) {
  const int half = n / 2;
  const int taps = static_cast<int>(fb.taps());
  for (int i = 0; i < n; ++i) dst[static_cast<std::size_t>(i) * stride] = 0.0;
  for (int k = 0; k < half; ++k) {
    const double a = lo[static_cast<std::size_t>(k) * in_stride];
    const double d = hi[static_cast<std::size_t>(k) * in_stride];
    for (int t = 0; t < taps; ++t) {
      dst[static_cast<std::size_t>((2 * k + t) % n) * stride] += fb.low[t] * a + fb.high[t] * d;
    }
  }
}

void check_bank(const FilterBank& fb) {
  if (fb.low.empty() || fb.low.size() != fb.high.size() || fb.low.size() % 2 != 0) {
    throw Error(ErrorKind::kInvalidArgument, "filter bank needs equal, even tap counts");
  }
}

}  // namespace

std::string_view to_string(WaveletKind kind) noexcept {
  switch (kind) {
    case WaveletKind::kHaar:
      return "haar";
    case WaveletKind::kDaubechies2:
      return "db2";
  }
  return "unknown";
}

WaveletKind parse_wavelet(std::string_view name) {
  if (name == "haar") return WaveletKind::kHaar;
  if (name == "db2") return WaveletKind::kDaubechies2;
  throw Error(ErrorKind::kInvalidArgument,
              "unknown wavelet '" + std::string(name) + "' (expected haar or db2)");
}

std::vector<double> quadrature_mirror(const std::vector<double>& low) {
  const std::size_t n = low.size();
  std::vector<double> high(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    high[k] = sign * low[n - 1 - k];
  }
  return high;
}

FilterBank haar_orthonormal() {
  const double s = 1.0 / std::numbers::sqrt2;
  std::vector<double> low{s, s};
  auto high = quadrature_mirror(low);
  return {std::move(low), std::move(high)};
}

FilterBank daubechies2() {
  const double r3 = std::sqrt(3.0);
  const double norm = 4.0 * std::numbers::sqrt2;
  std::vector<double> low{(1 + r3) / norm, (3 + r3) / norm, (3 - r3) / norm, (1 - r3) / norm};
  auto high = quadrature_mirror(low);
  return {std::move(low), std::move(high)};
}

FilterBank make_filter_bank(WaveletKind kind) {
  switch (kind) {
    case WaveletKind::kHaar:
      return haar_orthonormal();
    case WaveletKind::kDaubechies2:
      return daubechies2();
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown wavelet kind");
}

FrequencyResponse frequency_response(const FilterBank& fb, double omega) {
  std::complex<double> h{0.0, 0.0};
  std::complex<double> g{0.0, 0.0};
  for (std::size_t k = 0; k < fb.taps(); ++k) {
    const auto e = std::polar(1.0, -static_cast<double>(k) * omega);
    h += fb.low[k] * e;
    g += fb.high[k] * e;
  }
  const double s = 1.0 / std::numbers::sqrt2;
  return {h * s, g * s};
}

double orthogonality_defect(const FilterBank& fb, int samples) {
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double omega = 2.0 * std::numbers::pi * i / samples;
    const auto r = frequency_response(fb, omega);
    worst = std::max(worst, std::abs(std::norm(r.low) + std::norm(r.high) - 1.0));
  }
  return worst;
}

SubBands dwt2_level1(const RealMatrix& m, const FilterBank& fb) {
  check_bank(fb);
  const int w = m.width();
  const int h = m.height();
  if (w % 2 != 0 || h % 2 != 0) {
    throw Error(ErrorKind::kDimension, "dwt2 needs even dimensions, got " + std::to_string(w) +
                                           "x" + std::to_string(h));
  }
  const int hw = w / 2;
  const int hh = h / 2;

  // Row pass: low/high along x, full height.
  RealMatrix row_lo(hw, h);
  RealMatrix row_hi(hw, h);
  for (int y = 0; y < h; ++y) {
    analyze_line(&m.values()[static_cast<std::size_t>(y) * w], 1, w, fb,
                 &row_lo.values()[static_cast<std::size_t>(y) * hw],
                 &row_hi.values()[static_cast<std::size_t>(y) * hw], 1);
  }

  SubBands sb{RealMatrix(hw, hh), RealMatrix(hw, hh), RealMatrix(hw, hh), RealMatrix(hw, hh)};
  const auto stride = static_cast<std::size_t>(hw);
  for (int x = 0; x < hw; ++x) {
    analyze_line(&row_lo.values()[x], stride, h, fb, &sb.ll.values()[x], &sb.lh.values()[x],
                 stride);
    analyze_line(&row_hi.values()[x], stride, h, fb, &sb.hl.values()[x], &sb.hh.values()[x],
                 stride);
  }
  return sb;
}

RealMatrix idwt2_level1(const SubBands& sb, const FilterBank& fb) {
  check_bank(fb);
  const int hw = sb.ll.width();
  const int hh = sb.ll.height();
  for (const RealMatrix* band : {&sb.hl, &sb.lh, &sb.hh}) {
    if (band->width() != hw || band->height() != hh) {
      throw Error(ErrorKind::kDimension, "sub-band dimensions disagree");
    }
  }
  const int w = 2 * hw;
  const int h = 2 * hh;
  const auto stride = static_cast<std::size_t>(hw);

  RealMatrix row_lo(hw, h);
  RealMatrix row_hi(hw, h);
  for (int x = 0; x < hw; ++x) {
    synthesize_line(&sb.ll.values()[x], &sb.lh.values()[x], stride, h, fb,
                    &row_lo.values()[x], stride);
    synthesize_line(&sb.hl.values()[x], &sb.hh.values()[x], stride, h, fb,
                    &row_hi.values()[x], stride);
  }

  RealMatrix out(w, h);
  for (int y = 0; y < h; ++y) {
    synthesize_line(&row_lo.values()[static_cast<std::size_t>(y) * hw],
                    &row_hi.values()[static_cast<std::size_t>(y) * hw], 1, w, fb,
                    &out.values()[static_cast<std::size_t>(y) * w], 1);
  }
  return out;
}

}  // namespace edgemark
