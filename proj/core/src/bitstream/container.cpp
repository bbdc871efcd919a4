#include "lpvoc/bitstream/container.hpp"

#include <algorithm>
#include <string>

#include "lpvoc/error.hpp"

namespace lpvoc::bitstream {

namespace {
constexpr std::uint8_t kMagic[4] = {'L', 'P', 'V', 'C'};
}  // namespace

std::size_t container_size_bytes(CodecId codec, std::uint64_t sample_count) {
  const auto bits = units_for_samples(codec, sample_count) *
                    static_cast<std::uint64_t>(unit_format(codec).bits_per_unit);
  return kHeaderBytes + static_cast<std::size_t>((bits + 7) / 8);
}

std::vector<std::uint8_t> container_write(const Container& c) {
  const UnitFormat fmt = unit_format(c.codec);
  if (c.units.size() != units_for_samples(c.codec, c.sample_count)) {
    throw Error(ErrorCode::kInconsistentContainer,
                "unit count does not match sample count");
  }
  std::vector<std::uint8_t> out(kMagic, kMagic + 4);
  out.push_back(kContainerVersion);
  out.push_back(static_cast<std::uint8_t>(c.codec));
  for (int i = 0; i < 8; ++i) {
    out.push_back(static_cast<std::uint8_t>(c.sample_count >> (8 * i)));
  }
  BitWriter payload;
  for (const auto& unit : c.units) {
    if (unit.size() != static_cast<std::size_t>(fmt.bits_per_unit)) {
      throw Error(ErrorCode::kInconsistentContainer,
                  "unit of " + std::to_string(unit.size()) + " bits");
    }
    payload.append(unit);
  }
  const auto& bytes = payload.buffer().bytes;
  out.insert(out.end(), bytes.begin(), bytes.end());
  return out;
}

Container container_read(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4 || !std::equal(kMagic, kMagic + 4, bytes.begin())) {
    throw Error(ErrorCode::kBadMagic, "not an LPVC container");
  }
  if (bytes.size() < kHeaderBytes) {
    throw Error(ErrorCode::kTruncatedBitstream, "header is incomplete");
  }
  if (bytes[4] != kContainerVersion) {
    throw Error(ErrorCode::kUnsupportedVersion,
                "version " + std::to_string(bytes[4]));
  }
  Container c;
  c.codec = codec_from_byte(bytes[5]);
  for (int i = 0; i < 8; ++i) {
    c.sample_count |= static_cast<std::uint64_t>(bytes[6 + i]) << (8 * i);
  }
  const std::size_t expected = container_size_bytes(c.codec, c.sample_count);
  if (bytes.size() < expected) {
    throw Error(ErrorCode::kTruncatedBitstream, "payload shorter than header declares");
  }
  if (bytes.size() > expected) {
    throw Error(ErrorCode::kTrailingBytes, "data after the declared payload");
  }
  const auto payload = bytes.subspan(kHeaderBytes);
  const UnitFormat fmt = unit_format(c.codec);
  const std::uint64_t count = units_for_samples(c.codec, c.sample_count);
  BitReader in(payload, payload.size() * 8);
  c.units.reserve(count);
  for (std::uint64_t u = 0; u < count; ++u) {
    c.units.push_back(in.read_bits(static_cast<std::size_t>(fmt.bits_per_unit)));
  }
  return c;
}

}  // namespace lpvoc::bitstream
