#include <gtest/gtest.h>

#include <random>

#include "lpvoc/bitstream/container.hpp"
#include "lpvoc/bitstream/pack.hpp"
#include "lpvoc/error.hpp"
#include "param_gen.hpp"

namespace lpvoc::bitstream {
namespace {

template <typename Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an lpvoc::Error";
  return ErrorCode::kBadRequest;
}

TEST(BitWriter, MsbFirstLayout) {
  BitWriter w;
  w.write(0b101, 3);
  w.write(0b11110000, 8);
  const auto buf = w.take();
  EXPECT_EQ(buf.bit_count, 11u);
  ASSERT_EQ(buf.bytes.size(), 2u);
  EXPECT_EQ(buf.bytes[0], 0b10111110);
  EXPECT_EQ(buf.bytes[1], 0b00000000);
  BitReader r(buf);
  EXPECT_EQ(r.read(3), 0b101u);
  EXPECT_EQ(r.read(8), 0b11110000u);
  EXPECT_EQ(code_of([&] { r.read(1); }), ErrorCode::kTruncatedBitstream);
}

TEST(Rates, TableValues) {
  EXPECT_EQ(bitrate_of(CodecId::kCelp), 4800);
  EXPECT_EQ(bitrate_of(CodecId::kLdcelp), 16000);
  EXPECT_EQ(bitrate_of(CodecId::kMelp), 2400);
  EXPECT_EQ(code_of([] { codec_from_byte(9); }), ErrorCode::kUnknownCodec);
}

TEST(Pack, RoundTripCelp) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 10000; ++i) {
    const auto p = gen::celp(rng);
    const auto bits = pack(p);
    ASSERT_EQ(bits.size(), 144u);
    ASSERT_EQ(std::get<CelpFrameParams>(unpack(bits, CodecId::kCelp)), p);
  }
}

TEST(Pack, RoundTripLdcelp) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 10000; ++i) {
    const auto p = gen::ldcelp(rng);
    const auto bits = pack(p);
    ASSERT_EQ(bits.size(), 10u);
    ASSERT_EQ(std::get<LdcelpVectorParams>(unpack(bits, CodecId::kLdcelp)), p);
  }
}

TEST(Pack, RoundTripMelp) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10000; ++i) {
    const auto p = gen::melp(rng);
    const auto bits = pack(p);
    ASSERT_EQ(bits.size(), 54u);
    ASSERT_EQ(std::get<MelpFrameParams>(unpack(bits, CodecId::kMelp)), p);
  }
}

TEST(Pack, MelpVoicingBitAtFixedOffset) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    const auto p = gen::melp(rng);
    // 25 LSF + 8 gain + 6 pitch bits precede the voicing bit.
    EXPECT_EQ(pack(p).bit(39), p.overall_voiced == 1);
  }
}

TEST(Pack, RejectsOutOfRangeFields) {
  CelpFrameParams c;
  c.stochastic_index[2] = 512;
  EXPECT_EQ(code_of([&] { pack(c); }), ErrorCode::kFieldOutOfRange);
  CelpFrameParams lag;
  lag.pitch[0] = 130;  // lag 150
  EXPECT_EQ(code_of([&] { pack(lag); }), ErrorCode::kFieldOutOfRange);
  CelpFrameParams delta;
  delta.pitch[0] = 0;   // lag 20
  delta.pitch[1] = 10;  // 20 + 10 - 32 = -2
  EXPECT_EQ(code_of([&] { pack(delta); }), ErrorCode::kFieldOutOfRange);

  LdcelpVectorParams l;
  l.shape_index = 128;
  EXPECT_EQ(code_of([&] { pack(l); }), ErrorCode::kFieldOutOfRange);

  MelpFrameParams m;
  m.overall_voiced = 0;
  m.fourier_index = 3;
  EXPECT_EQ(code_of([&] { pack(m); }), ErrorCode::kFieldOutOfRange);
  MelpFrameParams v;
  v.overall_voiced = 1;
  v.error_protection = 1;
  EXPECT_EQ(code_of([&] { pack(v); }), ErrorCode::kFieldOutOfRange);
}

TEST(Pack, TruncatedUnit) {
  std::mt19937_64 rng(5);
  auto bits = pack(gen::celp(rng));
  bits.bit_count = 100;
  EXPECT_EQ(code_of([&] { unpack(bits, CodecId::kCelp); }),
            ErrorCode::kTruncatedBitstream);
}

Container make_container(CodecId codec, std::uint64_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Container c{codec, samples, {}};
  for (std::uint64_t u = 0; u < units_for_samples(codec, samples); ++u) {
    switch (codec) {
      case CodecId::kCelp: c.units.push_back(pack(gen::celp(rng))); break;
      case CodecId::kLdcelp: c.units.push_back(pack(gen::ldcelp(rng))); break;
      case CodecId::kMelp: c.units.push_back(pack(gen::melp(rng))); break;
    }
  }
  return c;
}

TEST(Container, EmptyRoundTrip) {
  const Container c{CodecId::kMelp, 0, {}};
  const auto bytes = container_write(c);
  EXPECT_EQ(bytes.size(), kHeaderBytes);
  EXPECT_EQ(container_read(bytes), c);
}

TEST(Container, ThirtyFourCelpFrames) {
  const auto c = make_container(CodecId::kCelp, 34 * 240, 6);
  const auto bytes = container_write(c);
  EXPECT_EQ(bytes.size() - kHeaderBytes, 612u);
  EXPECT_EQ(container_read(bytes), c);
}

TEST(Container, HeaderLayout) {
  const auto bytes = container_write(make_container(CodecId::kLdcelp, 0x0102, 7));
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "LPVC");
  EXPECT_EQ(bytes[4], 1);
  EXPECT_EQ(bytes[5], 2);
  EXPECT_EQ(bytes[6], 0x02);
  EXPECT_EQ(bytes[7], 0x01);
  for (int i = 8; i < 14; ++i) EXPECT_EQ(bytes[i], 0);
}

TEST(Container, SizeFormulaAndRoundTrip) {
  for (CodecId codec : {CodecId::kCelp, CodecId::kLdcelp, CodecId::kMelp}) {
    for (std::uint64_t samples : {1ull, 4ull, 5ull, 179ull, 181ull, 241ull, 7200ull, 8000ull}) {
      const auto c = make_container(codec, samples, samples);
      const auto bytes = container_write(c);
      const auto fmt = unit_format(codec);
      const auto units = (samples + fmt.samples_per_unit - 1) / fmt.samples_per_unit;
      EXPECT_EQ(bytes.size(), 14 + (units * fmt.bits_per_unit + 7) / 8);
      EXPECT_EQ(bytes.size(), container_size_bytes(codec, samples));
      EXPECT_EQ(container_read(bytes), c);
    }
  }
}

TEST(Container, TruncationDetected) {
  for (CodecId codec : {CodecId::kCelp, CodecId::kLdcelp, CodecId::kMelp}) {
    for (std::uint64_t samples : {0ull, 5ull, 1000ull}) {
      auto bytes = container_write(make_container(codec, samples, 8));
      bytes.pop_back();
      EXPECT_EQ(code_of([&] { container_read(bytes); }), ErrorCode::kTruncatedBitstream);
    }
  }
}

TEST(Container, HeaderErrors) {
  auto bytes = container_write(make_container(CodecId::kCelp, 240, 9));
  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  EXPECT_EQ(code_of([&] { container_read(bad_magic); }), ErrorCode::kBadMagic);
  auto bad_version = bytes;
  bad_version[4] = 7;
  EXPECT_EQ(code_of([&] { container_read(bad_version); }), ErrorCode::kUnsupportedVersion);
  auto bad_codec = bytes;
  bad_codec[5] = 0;
  EXPECT_EQ(code_of([&] { container_read(bad_codec); }), ErrorCode::kUnknownCodec);
  auto trailing = bytes;
  trailing.push_back(0);
  EXPECT_EQ(code_of([&] { container_read(trailing); }), ErrorCode::kTrailingBytes);
}

TEST(Container, WriterRejectsInconsistentUnits) {
  auto c = make_container(CodecId::kMelp, 360, 10);
  c.units.pop_back();
  EXPECT_EQ(code_of([&] { container_write(c); }), ErrorCode::kInconsistentContainer);
  auto wrong = make_container(CodecId::kMelp, 180, 11);
  wrong.units[0].bit_count = 53;
  EXPECT_EQ(code_of([&] { container_write(wrong); }), ErrorCode::kInconsistentContainer);
}

TEST(Container, OneSecondRateRatio) {
  const auto celp = container_size_bytes(CodecId::kCelp, 8000);
  const auto ld = container_size_bytes(CodecId::kLdcelp, 8000);
  const auto melp = container_size_bytes(CodecId::kMelp, 8000);
  // 8000 samples: 34 CELP frames (4896 bits), 1600 vectors (16000 bits),
  // 45 MELP frames (2430 bits); whole units only, hence CELP/MELP round up.
  EXPECT_EQ(ld - kHeaderBytes, 2000u);
  EXPECT_EQ(celp - kHeaderBytes, 612u);
  EXPECT_EQ(melp - kHeaderBytes, 304u);
}

}  // namespace
}  // namespace lpvoc::bitstream
