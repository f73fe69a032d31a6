#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace edgemark {

/// Nonempty ordered bit payload; each element is 0 or 1.
class WatermarkBits {
 public:
  explicit WatermarkBits(std::vector<std::uint8_t> bits);

  std::size_t size() const noexcept { return bits_.size(); }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  WatermarkBits prefix(std::size_t count) const;
  WatermarkBits complemented() const;

  /// "0101..." rendering.
  std::string to_string() const;

  friend bool operator==(const WatermarkBits&, const WatermarkBits&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// MSB-first expansion. Throws on empty input.
WatermarkBits bits_from_bytes(std::span<const std::uint8_t> data);

/// MSB-first packing; a trailing partial byte is zero-padded.
std::vector<std::uint8_t> bytes_from_bits(const WatermarkBits& bits);

/// Deterministic pseudo-random payload: bit i is the top bit of the i-th
/// output of std::mt19937_64 seeded with `seed`.
WatermarkBits bits_from_seed(std::size_t count, std::uint64_t seed);

/// Parses hex text (whitespace ignored, optional "0x" prefix) into bytes.
std::vector<std::uint8_t> parse_hex(std::string_view text);
std::string to_hex(std::span<const std::uint8_t> bytes);

enum class Polarity { kRising, kFalling };

/// n×n step pattern over {-1, +1}: rising is -1 on columns [0, n/2) and +1 on
/// [n/2, n); falling is its negation. Rising encodes bit 1.
class EdgeBlock {
 public:
  EdgeBlock(int n, Polarity polarity);

  int n() const noexcept { return n_; }
  Polarity polarity() const noexcept { return polarity_; }
  int at(int x, int y) const { return values_[static_cast<std::size_t>(y) * n_ + x]; }
  std::span<const int> values() const noexcept { return values_; }

 private:
  int n_;
  Polarity polarity_;
  std::vector<int> values_;
};

EdgeBlock make_edge_block(int n, Polarity polarity);

constexpr Polarity polarity_for_bit(std::uint8_t bit) noexcept {
  return bit != 0 ? Polarity::kRising : Polarity::kFalling;
}

}  // namespace edgemark
