#include "lpvoc/bitstream/bits.hpp"

#include "lpvoc/error.hpp"

namespace lpvoc::bitstream {

void BitWriter::write(std::uint32_t value, int width) {
  for (int i = width - 1; i >= 0; --i) {
    if (buf_.bit_count % 8 == 0) buf_.bytes.push_back(0);
    if ((value >> i) & 1u) {
      buf_.bytes.back() |= static_cast<std::uint8_t>(0x80u >> (buf_.bit_count % 8));
    }
    ++buf_.bit_count;
  }
}

void BitWriter::append(const BitBuffer& bits) {
  for (std::size_t i = 0; i < bits.bit_count; ++i) write(bits.bit(i) ? 1u : 0u, 1);
}

std::uint32_t BitReader::read(int width) {
  if (static_cast<std::size_t>(width) > remaining()) {
    throw Error(ErrorCode::kTruncatedBitstream, "bitstream ended inside a field");
  }
  std::uint32_t v = 0;
  for (int i = 0; i < width; ++i, ++pos_) {
    v = (v << 1) | ((bytes_[pos_ / 8] >> (7 - pos_ % 8)) & 1u);
  }
  return v;
}

BitBuffer BitReader::read_bits(std::size_t count) {
  if (count > remaining()) {
    throw Error(ErrorCode::kTruncatedBitstream, "bitstream ended inside a unit");
  }
  BitWriter w;
  for (std::size_t i = 0; i < count; ++i) w.write(read(1), 1);
  return w.take();
}

}  // namespace lpvoc::bitstream
