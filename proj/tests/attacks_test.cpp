#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "edgemark/attacks.hpp"
#include "edgemark/error.hpp"
#include "edgemark/metrics.hpp"
#include "test_support.hpp"

namespace edgemark {
namespace {

std::size_t count_changed(const Image& a, const Image& b) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += a.pixels()[i] != b.pixels()[i];
  return n;
}

TEST(SaltPepper, VanishingDensity) {
  const Image img = testing::random_image(64, 64, 2);
  EXPECT_LE(count_changed(img, salt_pepper(img, 1e-9, 1)), 2U);
}

TEST(SaltPepper, FlipFractionAndValues) {
  const Image gray(512, 512, std::uint8_t{128});
  const Image noisy = salt_pepper(gray, 0.05, 1);
  const double frac = static_cast<double>(count_changed(gray, noisy)) / gray.size();
  EXPECT_NEAR(frac, 0.05, 0.005);
  for (auto p : noisy.pixels()) ASSERT_TRUE(p == 128 || p == 0 || p == 255);
  std::size_t zeros = std::count(noisy.pixels().begin(), noisy.pixels().end(), 0);
  EXPECT_NEAR(static_cast<double>(zeros) / gray.size(), 0.025, 0.003);
}

TEST(SaltPepper, RangeChecked) {
  const Image img(8, 8);
  EXPECT_THROW(salt_pepper(img, 0.0, 1), Error);
  EXPECT_THROW(salt_pepper(img, 1.0, 1), Error);
}

TEST(Gaussian, StandardDeviationOnNormalizedScale) {
  const Image gray(512, 512, std::uint8_t{128});
  const Image noisy = gaussian_noise(gray, 0.01, 1);
  double s = 0.0, s2 = 0.0;
  for (auto p : noisy.pixels()) {
    const double z = (p - 128.0) / 255.0;
    s += z;
    s2 += z * z;
  }
  const double n = static_cast<double>(noisy.size());
  const double sd = std::sqrt(s2 / n - (s / n) * (s / n));
  EXPECT_NEAR(sd, 0.1, 0.01);
}

TEST(Gaussian, DeterministicAndSeedSensitive) {
  const Image img = testing::random_image(32, 32, 4);
  EXPECT_EQ(gaussian_noise(img, 0.05, 9), gaussian_noise(img, 0.05, 9));
  EXPECT_NE(gaussian_noise(img, 0.05, 9), gaussian_noise(img, 0.05, 10));
  EXPECT_THROW(gaussian_noise(img, 0.0, 1), Error);
  EXPECT_THROW(gaussian_noise(img, -1.0, 1), Error);
}

TEST(Median, ConstantAndImpulse) {
  const Image gray(16, 16, std::uint8_t{77});
  EXPECT_EQ(median_filter(gray, 5), gray);
  Image impulse(9, 9, std::uint8_t{0});
  impulse.at(4, 4) = 255;
  EXPECT_EQ(median_filter(impulse, 3), Image(9, 9, std::uint8_t{0}));
}

TEST(Median, OutputIsInWindow) {
  const Image img = testing::random_image(23, 17, 6);
  for (int window : {3, 5, 7}) {
    const Image out = median_filter(img, window);
    const int r = window / 2;
    for (int y = 0; y < img.height(); ++y) {
      for (int x = 0; x < img.width(); ++x) {
        bool found = false;
        for (int dy = -r; dy <= r && !found; ++dy) {
          for (int dx = -r; dx <= r && !found; ++dx) {
            const int xx = std::clamp(x + dx, 0, img.width() - 1);
            const int yy = std::clamp(y + dy, 0, img.height() - 1);
            found = img.at(xx, yy) == out.at(x, y);
          }
        }
        ASSERT_TRUE(found) << x << "," << y;
      }
    }
  }
}

TEST(Median, WindowChecked) {
  const Image img(8, 8);
  EXPECT_THROW(median_filter(img, 4), Error);
  EXPECT_THROW(median_filter(img, 1), Error);
}

TEST(Jpeg, QualityScaling) {
  EXPECT_EQ(jpeg_quant_table(50), kJpegLuminanceTable);
  for (int q : jpeg_quant_table(100)) EXPECT_EQ(q, 1);
  const auto q10 = jpeg_quant_table(10);
  EXPECT_EQ(q10[0], 80);
  EXPECT_EQ(q10[63], 255);  // 99 × 5 clamps
  EXPECT_EQ(jpeg_quant_table(90)[63], 20);
  EXPECT_THROW(jpeg_quant_table(0), Error);
  EXPECT_THROW(jpeg_quant_table(101), Error);
}

TEST(Jpeg, NearLosslessAtQuality100) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Image img = testing::random_image(64, 48, seed);
    const Image out = jpeg_roundtrip(img, 100);
    int worst = 0;
    for (std::size_t i = 0; i < img.size(); ++i) {
      worst = std::max(worst, std::abs(img.pixels()[i] - out.pixels()[i]));
    }
    EXPECT_LE(worst, 2);
  }
}

TEST(Jpeg, FinerQuantizationDistortsLess) {
  for (const auto& name : testing::fixture_names()) {
    const Image img = testing::load_fixture(name);
    EXPECT_GE(psnr(img, jpeg_roundtrip(img, 90)), psnr(img, jpeg_roundtrip(img, 50))) << name;
    EXPECT_GE(psnr(img, jpeg_roundtrip(img, 50)), psnr(img, jpeg_roundtrip(img, 10))) << name;
  }
}

TEST(Jpeg, PadsOddSizes) {
  const Image img = testing::random_image(13, 9, 3);
  const Image out = jpeg_roundtrip(img, 75);
  EXPECT_EQ(out.width(), 13);
  EXPECT_EQ(out.height(), 9);
}

TEST(Gif, IdentityAtFullPalette) {
  const Image img = testing::random_image(64, 64, 8);
  EXPECT_EQ(gif_quantize(img, 256), img);
}

TEST(Gif, TwoLevels) {
  Image ramp(256, 1);
  for (int v = 0; v < 256; ++v) ramp.at(v, 0) = static_cast<std::uint8_t>(v);
  const Image out = gif_quantize(ramp, 2);
  for (int v = 0; v < 256; ++v) ASSERT_EQ(out.at(v, 0), v < 128 ? 64 : 191) << v;
}

TEST(Gif, ErrorBound) {
  Image ramp(256, 1);
  for (int v = 0; v < 256; ++v) ramp.at(v, 0) = static_cast<std::uint8_t>(v);
  for (int levels = 2; levels <= 256; ++levels) {
    const Image out = gif_quantize(ramp, levels);
    const double bound = std::ceil(256.0 / levels) / 2.0;
    for (int v = 0; v < 256; ++v) ASSERT_LE(std::abs(out.at(v, 0) - v), bound) << levels;
  }
  EXPECT_THROW(gif_quantize(ramp, 1), Error);
  EXPECT_THROW(gif_quantize(ramp, 257), Error);
}

TEST(HistEq, UniformHistogramIsNearIdentity) {
  Image ramp(256, 8);
  for (int y = 0; y < 8; ++y) {
    for (int v = 0; v < 256; ++v) ramp.at(v, y) = static_cast<std::uint8_t>(v);
  }
  const Image out = hist_equalize(ramp);
  for (std::size_t i = 0; i < out.size(); ++i) {
    ASSERT_LE(std::abs(out.pixels()[i] - ramp.pixels()[i]), 1);
  }
}

TEST(HistEq, ConstantMapsToWhite) {
  EXPECT_EQ(hist_equalize(Image(8, 8, std::uint8_t{40})), Image(8, 8, std::uint8_t{255}));
}

// CDF oracle: at every occupied output level y the empirical CDF is within
// one bin mass (plus rounding) of the linear target y/255.
TEST(HistEq, OutputCdfIsNearLinear) {
  const Image img = testing::load_fixture("camera");
  const Image out = hist_equalize(img);
  std::array<std::size_t, 256> hist{};
  for (auto p : out.pixels()) ++hist[p];
  const double n = static_cast<double>(out.size());
  const double max_mass = *std::max_element(hist.begin(), hist.end()) / n;
  std::size_t acc = 0;
  for (int v = 0; v < 256; ++v) {
    acc += hist[v];
    if (hist[v] == 0) continue;
    ASSERT_LE(std::abs(acc / n - v / 255.0), max_mass + 1.0 / 255.0) << v;
  }
}

TEST(Rotate, ZeroIsIdentity) {
  const Image img = testing::random_image(40, 30, 1);
  EXPECT_EQ(rotate_small(img, 0.0), img);
}

TEST(Rotate, CentreIsFixed) {
  const Image img = testing::random_image(41, 33, 2);
  for (double deg : {0.25, -0.25, 3.0, -17.5, 45.0}) {
    EXPECT_EQ(rotate_small(img, deg).at(20, 16), img.at(20, 16)) << deg;
  }
}

double interior_mean_abs(const Image& a, const Image& b, int border) {
  double s = 0.0;
  std::size_t n = 0;
  for (int y = border; y < a.height() - border; ++y) {
    for (int x = border; x < a.width() - border; ++x) {
      s += std::abs(a.at(x, y) - b.at(x, y));
      ++n;
    }
  }
  return s / static_cast<double>(n);
}

// Round trip +0.25 then -0.25, mean-abs error away from a 4-pixel border.
TEST(Rotate, NearInverseOnSmoothImage) {
  RealMatrix m(256, 256);
  for (int y = 0; y < 256; ++y) {
    for (int x = 0; x < 256; ++x) {
      m.at(x, y) = 128 + 60 * std::sin(x / 9.0) * std::cos(y / 13.0) + 30 * std::sin((x + y) / 21.0);
    }
  }
  const Image img = clamp_quantize(m);
  EXPECT_LE(interior_mean_abs(img, rotate_small(rotate_small(img, 0.25), -0.25), 4), 2.0);
}

// Textured photograph: bilinear smoothing costs more; measured value frozen.
TEST(Rotate, NearInverseOnCameraFixture) {
  const Image img = testing::load_fixture("camera");
  const double err = interior_mean_abs(img, rotate_small(rotate_small(img, 0.25), -0.25), 4);
  EXPECT_NEAR(err, 2.4173, 1e-3);
}

TEST(Rotate, AngleChecked) { EXPECT_THROW(rotate_small(Image(8, 8), 46.0), Error); }

TEST(AttackSpec, ValidationAndLabels) {
  EXPECT_NO_THROW((AttackSpec{AttackKind::kJpeg, 50, 0}.validate()));
  EXPECT_THROW((AttackSpec{AttackKind::kJpeg, 50.5, 0}.validate()), Error);
  EXPECT_THROW((AttackSpec{AttackKind::kMedian, 4, 0}.validate()), Error);
  EXPECT_THROW((AttackSpec{AttackKind::kGif, 1, 0}.validate()), Error);
  EXPECT_THROW((AttackSpec{AttackKind::kRotation, -50, 0}.validate()), Error);
  EXPECT_EQ((AttackSpec{AttackKind::kJpeg, 50, 0}.label()), "jpeg:50");
  EXPECT_EQ((AttackSpec{AttackKind::kRotation, -0.25, 0}.label()), "rotation:-0.25");
  EXPECT_EQ((AttackSpec{AttackKind::kHistEq, 0, 0}.label()), "hist_eq");
  EXPECT_EQ(parse_attack("salt_pepper"), AttackKind::kSaltPepper);
  EXPECT_THROW(parse_attack("crop"), Error);
}

TEST(AttackSpec, EveryAttackPreservesShapeAndIsReproducible) {
  const Image img = testing::random_image(48, 40, 12);
  const std::vector<AttackSpec> specs{
      {AttackKind::kNone, 0, 0},        {AttackKind::kSaltPepper, 0.1, 3},
      {AttackKind::kGaussian, 0.05, 3}, {AttackKind::kMedian, 5, 0},
      {AttackKind::kJpeg, 30, 0},       {AttackKind::kGif, 16, 0},
      {AttackKind::kHistEq, 0, 0},      {AttackKind::kRotation, 2.0, 0}};
  for (const auto& s : specs) {
    const Image a = apply_attack(img, s);
    EXPECT_EQ(a.width(), img.width()) << s.label();
    EXPECT_EQ(a.height(), img.height()) << s.label();
    EXPECT_EQ(a, apply_attack(img, s)) << s.label();
  }
}

}  // namespace
}  // namespace edgemark
