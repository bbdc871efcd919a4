#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace lpvoc::bitstream {

// A run of bits, MSB-first within each byte; trailing pad bits are zero.
struct BitBuffer {
  std::vector<std::uint8_t> bytes;
  std::size_t bit_count = 0;

  std::size_t size() const noexcept { return bit_count; }
  bool bit(std::size_t i) const noexcept {
    return (bytes[i / 8] >> (7 - i % 8)) & 1u;
  }
  bool operator==(const BitBuffer&) const = default;
};

class BitWriter {
 public:
  // Appends the low `width` bits of value, most significant first.
  void write(std::uint32_t value, int width);
  void append(const BitBuffer& bits);

  const BitBuffer& buffer() const noexcept { return buf_; }
  BitBuffer take() { return std::move(buf_); }

 private:
  BitBuffer buf_;
};

class BitReader {
 public:
  BitReader(std::span<const std::uint8_t> bytes, std::size_t bit_count)
      : bytes_(bytes), limit_(bit_count) {}
  explicit BitReader(const BitBuffer& buf)
      : BitReader(buf.bytes, buf.bit_count) {}

  // Throws kTruncatedBitstream when fewer than `width` bits remain.
  std::uint32_t read(int width);
  BitBuffer read_bits(std::size_t count);

  std::size_t position() const noexcept { return pos_; }
  std::size_t remaining() const noexcept { return limit_ - pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t limit_;
  std::size_t pos_ = 0;
};

}  // namespace lpvoc::bitstream
