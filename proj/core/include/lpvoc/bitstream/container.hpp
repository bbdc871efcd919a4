#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lpvoc/bitstream/bits.hpp"
#include "lpvoc/bitstream/format.hpp"

namespace lpvoc::bitstream {

// .lpvc file layout (all multi-byte integers little-endian):
//   0  4  magic "LPVC"
//   4  1  format version (1)
//   5  1  codec id (1 CELP, 2 LD-CELP, 3 MELP)
//   6  8  original sample count
//  14  .. payload: packed units back to back, MSB-first, last byte zero-padded
//
// The unit count is ceil(sample_count / samples_per_unit), so the payload
// length is fully determined by the header.
inline constexpr std::uint8_t kContainerVersion = 1;
inline constexpr std::size_t kHeaderBytes = 14;

struct Container {
  CodecId codec = CodecId::kCelp;
  std::uint64_t sample_count = 0;
  std::vector<BitBuffer> units;

  bool operator==(const Container&) const = default;
};

// Throws kInconsistentContainer if a unit has the wrong size or the unit
// count does not match the sample count.
std::vector<std::uint8_t> container_write(const Container& c);

// Throws kBadMagic, kUnsupportedVersion, kUnknownCodec, kTruncatedBitstream,
// kTrailingBytes.
Container container_read(std::span<const std::uint8_t> bytes);

std::size_t container_size_bytes(CodecId codec, std::uint64_t sample_count);

}  // namespace lpvoc::bitstream
