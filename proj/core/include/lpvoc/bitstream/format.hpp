#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace lpvoc {

enum class CodecId : std::uint8_t { kCelp = 1, kLdcelp = 2, kMelp = 3 };

struct UnitFormat {
  int bits_per_unit;
  int samples_per_unit;
};

namespace bitstream {

// Throws kUnknownCodec for ids outside 1..3.
CodecId codec_from_byte(std::uint8_t id);
std::optional<CodecId> codec_from_name(std::string_view name);
std::string_view codec_name(CodecId codec);

// CELP 144 bits / 240 samples, LD-CELP 10 / 5, MELP 54 / 180.
UnitFormat unit_format(CodecId codec);

// bits_per_unit * 8000 / samples_per_unit, exact.
int bitrate_of(CodecId codec);

std::uint64_t units_for_samples(CodecId codec, std::uint64_t sample_count);

}  // namespace bitstream
}  // namespace lpvoc
