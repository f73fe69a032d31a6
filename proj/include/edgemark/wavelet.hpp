#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "edgemark/image.hpp"

namespace edgemark {

enum class WaveletKind { kHaar, kDaubechies2 };

std::string_view to_string(WaveletKind kind) noexcept;
WaveletKind parse_wavelet(std::string_view name);

/// Two-channel orthogonal filter bank. `high` is the quadrature mirror of
/// `low`: high[k] = (-1)^k low[L-1-k].
struct FilterBank {
  std::vector<double> low;
  std::vector<double> high;

  std::size_t taps() const noexcept { return low.size(); }
};

/// h = [1/sqrt2, 1/sqrt2], g = [1/sqrt2, -1/sqrt2].
FilterBank haar_orthonormal();

/// Four-tap Daubechies bank (two vanishing moments, "db2").
FilterBank daubechies2();

FilterBank make_filter_bank(WaveletKind kind);

/// Builds the mirror high-pass taps from a low-pass prototype.
std::vector<double> quadrature_mirror(const std::vector<double>& low);

struct FrequencyResponse {
  std::complex<double> low;
  std::complex<double> high;
};

/// H(w) and G(w) normalized by 1/sqrt2 so that H(0) = 1 for an orthonormal
/// bank; with this scaling |H|^2 + |G|^2 = 1.
FrequencyResponse frequency_response(const FilterBank& fb, double omega);

/// Max over `samples` points in [0, 2pi) of | |H|^2 + |G|^2 - 1 |.
double orthogonality_defect(const FilterBank& fb, int samples);

/// One-level decomposition. Layout: `hl` is high-pass along rows (x) and
/// low-pass along columns (y), `lh` the transpose, `hh` high-pass along both.
struct SubBands {
  RealMatrix ll;
  RealMatrix hl;
  RealMatrix lh;
  RealMatrix hh;

  int width() const noexcept { return ll.width(); }
  int height() const noexcept { return ll.height(); }
};

/// Separable analysis c[k] = sum_n h[n-2k] x[n] along rows then columns,
/// periodic extension for banks longer than two taps. Throws on odd dimensions.
SubBands dwt2_level1(const RealMatrix& m, const FilterBank& fb);

/// Separable synthesis x[n] = sum_k h[n-2k] c[k] + g[n-2k] d[k].
RealMatrix idwt2_level1(const SubBands& sb, const FilterBank& fb);

}  // namespace edgemark
