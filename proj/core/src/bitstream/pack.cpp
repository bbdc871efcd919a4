#include "lpvoc/bitstream/pack.hpp"

#include "lpvoc/error.hpp"

namespace lpvoc::bitstream {

namespace {

template <typename Params>
void require_valid(const Params& p) {
  if (auto problem = check_params(p)) {
    throw Error(ErrorCode::kFieldOutOfRange, *problem);
  }
}

}  // namespace

BitBuffer pack(const CelpFrameParams& p) {
  using namespace celp_layout;
  require_valid(p);
  BitWriter w;
  for (int i = 0; i < 10; ++i) w.write(p.lsf_indices[i], kLsfBits[i]);
  for (int s = 0; s < 4; ++s) {
    w.write(p.pitch[s], s % 2 == 0 ? kAbsolutePitchBits : kDeltaPitchBits);
  }
  for (int s = 0; s < 4; ++s) w.write(p.adaptive_gain[s], kGainBits);
  for (int s = 0; s < 4; ++s) w.write(p.stochastic_index[s], kIndexBits);
  for (int s = 0; s < 4; ++s) w.write(p.stochastic_gain[s], kGainBits);
  w.write(p.sync_bit, 1);
  w.write(p.error_correction, 4);
  w.write(p.expansion_bit, 1);
  return w.take();
}

BitBuffer pack(const LdcelpVectorParams& p) {
  require_valid(p);
  BitWriter w;
  w.write(p.shape_index, 7);
  w.write(p.gain_magnitude, 2);
  w.write(p.gain_sign, 1);
  return w.take();
}

BitBuffer pack(const MelpFrameParams& p) {
  require_valid(p);
  BitWriter w;
  for (int i = 0; i < 4; ++i) w.write(p.lsf_stages[i], melp_layout::kLsfStageBits[i]);
  w.write(p.gains[0], 4);
  w.write(p.gains[1], 4);
  w.write(p.pitch_index, 6);
  w.write(p.overall_voiced, 1);
  if (p.overall_voiced) {
    w.write(p.fourier_index, 8);
    w.write(p.bandpass_voicing, 4);
    w.write(p.aperiodic_flag, 1);
  } else {
    w.write(p.error_protection, 13);
  }
  w.write(p.sync_bit, 1);
  return w.take();
}

CelpFrameParams unpack_celp(BitReader& in) {
  using namespace celp_layout;
  CelpFrameParams p;
  for (int i = 0; i < 10; ++i) {
    p.lsf_indices[i] = static_cast<std::uint8_t>(in.read(kLsfBits[i]));
  }
  for (int s = 0; s < 4; ++s) {
    p.pitch[s] = static_cast<std::uint8_t>(
        in.read(s % 2 == 0 ? kAbsolutePitchBits : kDeltaPitchBits));
  }
  for (int s = 0; s < 4; ++s) p.adaptive_gain[s] = static_cast<std::uint8_t>(in.read(kGainBits));
  for (int s = 0; s < 4; ++s) p.stochastic_index[s] = static_cast<std::uint16_t>(in.read(kIndexBits));
  for (int s = 0; s < 4; ++s) p.stochastic_gain[s] = static_cast<std::uint8_t>(in.read(kGainBits));
  p.sync_bit = static_cast<std::uint8_t>(in.read(1));
  p.error_correction = static_cast<std::uint8_t>(in.read(4));
  p.expansion_bit = static_cast<std::uint8_t>(in.read(1));
  if (auto problem = check_params(p)) throw Error(ErrorCode::kFieldOutOfRange, *problem);
  return p;
}

LdcelpVectorParams unpack_ldcelp(BitReader& in) {
  LdcelpVectorParams p;
  p.shape_index = static_cast<std::uint8_t>(in.read(7));
  p.gain_magnitude = static_cast<std::uint8_t>(in.read(2));
  p.gain_sign = static_cast<std::uint8_t>(in.read(1));
  return p;
}

MelpFrameParams unpack_melp(BitReader& in) {
  MelpFrameParams p;
  for (int i = 0; i < 4; ++i) {
    p.lsf_stages[i] = static_cast<std::uint8_t>(in.read(melp_layout::kLsfStageBits[i]));
  }
  p.gains[0] = static_cast<std::uint8_t>(in.read(4));
  p.gains[1] = static_cast<std::uint8_t>(in.read(4));
  p.pitch_index = static_cast<std::uint8_t>(in.read(6));
  p.overall_voiced = static_cast<std::uint8_t>(in.read(1));
  if (p.overall_voiced) {
    p.fourier_index = static_cast<std::uint8_t>(in.read(8));
    p.bandpass_voicing = static_cast<std::uint8_t>(in.read(4));
    p.aperiodic_flag = static_cast<std::uint8_t>(in.read(1));
  } else {
    p.error_protection = static_cast<std::uint16_t>(in.read(13));
  }
  p.sync_bit = static_cast<std::uint8_t>(in.read(1));
  return p;
}

AnyParams unpack(const BitBuffer& bits, CodecId codec) {
  BitReader in(bits);
  switch (codec) {
    case CodecId::kCelp: return unpack_celp(in);
    case CodecId::kLdcelp: return unpack_ldcelp(in);
    case CodecId::kMelp: return unpack_melp(in);
  }
  throw Error(ErrorCode::kUnknownCodec, "codec id out of range");
}

}  // namespace lpvoc::bitstream
