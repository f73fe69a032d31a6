#include "edgemark/payload.hpp"

#include <cctype>
#include <random>

#include "edgemark/error.hpp"

namespace edgemark {

WatermarkBits::WatermarkBits(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  if (bits_.empty()) throw Error(ErrorKind::kInvalidArgument, "watermark payload is empty");
  for (auto b : bits_) {
    if (b > 1) throw Error(ErrorKind::kInvalidArgument, "watermark bits must be 0 or 1");
  }
}

WatermarkBits WatermarkBits::prefix(std::size_t count) const {
  if (count == 0 || count > bits_.size()) {
    throw Error(ErrorKind::kInvalidArgument, "prefix length " + std::to_string(count) +
                                                 " outside [1, " +
                                                 std::to_string(bits_.size()) + "]");
  }
  return WatermarkBits(std::vector<std::uint8_t>(bits_.begin(), bits_.begin() + count));
}

WatermarkBits WatermarkBits::complemented() const {
  std::vector<std::uint8_t> out(bits_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = bits_[i] ^ 1U;
  return WatermarkBits(std::move(out));
}

std::string WatermarkBits::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] != 0) s[i] = '1';
  }
  return s;
}

WatermarkBits bits_from_bytes(std::span<const std::uint8_t> data) {
  if (data.empty()) throw Error(ErrorKind::kInvalidArgument, "payload bytes are empty");
  std::vector<std::uint8_t> bits;
  bits.reserve(data.size() * 8);
  for (auto byte : data) {
    for (int b = 7; b >= 0; --b) bits.push_back(static_cast<std::uint8_t>((byte >> b) & 1U));
  }
  return WatermarkBits(std::move(bits));
}

std::vector<std::uint8_t> bytes_from_bits(const WatermarkBits& bits) {
  std::vector<std::uint8_t> out((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != 0) out[i / 8] |= static_cast<std::uint8_t>(0x80U >> (i % 8));
  }
  return out;
}

WatermarkBits bits_from_seed(std::size_t count, std::uint64_t seed) {
  if (count == 0) throw Error(ErrorKind::kInvalidArgument, "bit count must be positive");
  std::mt19937_64 engine(seed);
  std::vector<std::uint8_t> bits(count);
  for (auto& b : bits) b = static_cast<std::uint8_t>(engine() >> 63);
  return WatermarkBits(std::move(bits));
}

std::vector<std::uint8_t> parse_hex(std::string_view text) {
  std::string digits;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '0' && i + 1 < text.size() && (text[i + 1] == 'x' || text[i + 1] == 'X') &&
        digits.empty()) {
      ++i;
      continue;
    }
    if (!std::isxdigit(static_cast<unsigned char>(c))) {
      throw Error(ErrorKind::kInvalidArgument, std::string("invalid hex character '") + c + "'");
    }
    digits.push_back(c);
  }
  if (digits.size() % 2 != 0) {
    throw Error(ErrorKind::kInvalidArgument, "hex payload has an odd number of digits");
  }
  std::vector<std::uint8_t> out(digits.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(std::stoi(digits.substr(2 * i, 2), nullptr, 16));
  }
  return out;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  s.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    s.push_back(kDigits[b >> 4]);
    s.push_back(kDigits[b & 0xF]);
  }
  return s;
}

EdgeBlock::EdgeBlock(int n, Polarity polarity) : n_(n), polarity_(polarity) {
  if (n < 2 || n % 2 != 0) {
    throw Error(ErrorKind::kInvalidArgument,
                "edge block side must be even and >= 2, got " + std::to_string(n));
  }
  const int left = polarity == Polarity::kRising ? -1 : 1;
  values_.resize(static_cast<std::size_t>(n) * n);
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      values_[static_cast<std::size_t>(y) * n + x] = x < n / 2 ? left : -left;
    }
  }
}

EdgeBlock make_edge_block(int n, Polarity polarity) { return EdgeBlock(n, polarity); }

}  // namespace edgemark
