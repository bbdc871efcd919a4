#include "lpvoc/audio/wav.hpp"

#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "lpvoc/error.hpp"

namespace lpvoc::audio {

namespace {

constexpr std::uint16_t kPcmTag = 1;
constexpr std::uint16_t kExtensibleTag = 0xFFFE;

std::uint32_t le32(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint32_t>(b[at]) | (static_cast<std::uint32_t>(b[at + 1]) << 8) |
         (static_cast<std::uint32_t>(b[at + 2]) << 16) |
         (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

std::uint16_t le16(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

bool tag_is(std::span<const std::uint8_t> b, std::size_t at, const char* tag) {
  return std::memcmp(b.data() + at, tag, 4) == 0;
}

void put32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_tag(std::vector<std::uint8_t>& out, const char* tag) { out.insert(out.end(), tag, tag + 4); }

std::vector<std::int16_t> decode_samples(std::span<const std::uint8_t> bytes) {
  std::vector<std::int16_t> s(bytes.size() / 2);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = static_cast<std::int16_t>(le16(bytes, 2 * i));
  return s;
}

void check_format(std::span<const std::uint8_t> fmt) {
  if (fmt.size() < 16) throw Error(ErrorCode::kTruncatedBitstream, "fmt chunk shorter than 16 bytes");
  std::uint16_t tag = le16(fmt, 0);
  const std::uint16_t channels = le16(fmt, 2);
  const std::uint32_t rate = le32(fmt, 4);
  const std::uint16_t bits = le16(fmt, 14);
  if (tag == kExtensibleTag && fmt.size() >= 26) tag = le16(fmt, 24);  // sub-format GUID prefix
  if (tag != kPcmTag) {
    throw Error(ErrorCode::kUnsupportedEncoding, "only integer PCM is supported (format tag " + std::to_string(tag) + ")");
  }
  if (rate != kSampleRate) {
    throw Error(ErrorCode::kUnsupportedRate, "sample rate " + std::to_string(rate) + " Hz; need 8000");
  }
  if (channels != 1) {
    throw Error(ErrorCode::kUnsupportedChannels, std::to_string(channels) + " channels; need mono");
  }
  if (bits != 16) {
    throw Error(ErrorCode::kUnsupportedDepth, std::to_string(bits) + "-bit samples; need 16");
  }
}

}  // namespace

AudioSignal parse_wav(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12 || !tag_is(bytes, 0, "RIFF") || !tag_is(bytes, 8, "WAVE")) {
    throw Error(ErrorCode::kNotRiff, "not a RIFF/WAVE file");
  }
  bool have_fmt = false;
  std::size_t at = 12;
  while (at + 8 <= bytes.size()) {
    const std::uint32_t size = le32(bytes, at + 4);
    const std::size_t body = at + 8;
    if (size > bytes.size() - body) {
      throw Error(ErrorCode::kTruncatedBitstream, "chunk runs past end of file");
    }
    const auto chunk = bytes.subspan(body, size);
    if (tag_is(bytes, at, "fmt ")) {
      check_format(chunk);
      have_fmt = true;
    } else if (tag_is(bytes, at, "data")) {
      if (!have_fmt) throw Error(ErrorCode::kNotRiff, "data chunk before fmt chunk");
      if (size % 2 != 0) throw Error(ErrorCode::kOddByteCount, "data chunk has odd length");
      return AudioSignal{decode_samples(chunk)};
    }
    at = body + size + (size & 1u);  // chunks are word aligned
  }
  throw Error(have_fmt ? ErrorCode::kTruncatedBitstream : ErrorCode::kNotRiff,
              have_fmt ? "no data chunk" : "no fmt chunk");
}

std::vector<std::uint8_t> serialize_wav(const AudioSignal& signal) {
  const auto data_bytes = static_cast<std::uint32_t>(signal.size() * 2);
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_bytes);
  put_tag(out, "RIFF");
  put32(out, 36 + data_bytes);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put32(out, 16);
  put16(out, kPcmTag);
  put16(out, 1);
  put32(out, kSampleRate);
  put32(out, kSampleRate * 2);
  put16(out, 2);
  put16(out, 16);
  put_tag(out, "data");
  put32(out, data_bytes);
  for (std::int16_t s : signal.samples) put16(out, static_cast<std::uint16_t>(s));
  return out;
}

AudioSignal parse_raw(std::span<const std::uint8_t> bytes) {
  if (bytes.size() % 2 != 0) {
    throw Error(ErrorCode::kOddByteCount, "raw PCM needs an even number of bytes");
  }
  return AudioSignal{decode_samples(bytes)};
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::kIoFailure, "read failed: " + path.string());
  return bytes;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIoFailure, "write failed: " + path.string());
}

AudioSignal read_wav(const std::filesystem::path& path) { return parse_wav(read_file(path)); }

void write_wav(const AudioSignal& signal, const std::filesystem::path& path) {
  write_file(path, serialize_wav(signal));
}

AudioSignal raw_import(const std::filesystem::path& path) { return parse_raw(read_file(path)); }

}  // namespace lpvoc::audio
