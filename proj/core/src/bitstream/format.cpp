#include "lpvoc/bitstream/format.hpp"

#include <string>

#include "lpvoc/dsp/types.hpp"
#include "lpvoc/error.hpp"

namespace lpvoc::bitstream {

CodecId codec_from_byte(std::uint8_t id) {
  switch (id) {
    case 1: return CodecId::kCelp;
    case 2: return CodecId::kLdcelp;
    case 3: return CodecId::kMelp;
    default:
      throw Error(ErrorCode::kUnknownCodec, "codec id " + std::to_string(id));
  }
}

std::optional<CodecId> codec_from_name(std::string_view name) {
  if (name == "celp") return CodecId::kCelp;
  if (name == "ldcelp") return CodecId::kLdcelp;
  if (name == "melp") return CodecId::kMelp;
  return std::nullopt;
}

std::string_view codec_name(CodecId codec) {
  switch (codec) {
    case CodecId::kCelp: return "celp";
    case CodecId::kLdcelp: return "ldcelp";
    case CodecId::kMelp: return "melp";
  }
  throw Error(ErrorCode::kUnknownCodec, "codec id out of range");
}

UnitFormat unit_format(CodecId codec) {
  switch (codec) {
    case CodecId::kCelp: return {144, 240};
    case CodecId::kLdcelp: return {10, 5};
    case CodecId::kMelp: return {54, 180};
  }
  throw Error(ErrorCode::kUnknownCodec, "codec id out of range");
}

int bitrate_of(CodecId codec) {
  const UnitFormat f = unit_format(codec);
  return f.bits_per_unit * kSampleRate / f.samples_per_unit;
}

std::uint64_t units_for_samples(CodecId codec, std::uint64_t sample_count) {
  const auto spu = static_cast<std::uint64_t>(unit_format(codec).samples_per_unit);
  return (sample_count + spu - 1) / spu;
}

}  // namespace lpvoc::bitstream
