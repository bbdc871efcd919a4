#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "lpvoc/dsp/types.hpp"

// 8 kHz, mono, 16-bit signed little-endian PCM only. Nothing is resampled
// or converted; other formats are rejected.

namespace lpvoc::audio {

struct WavSpec {
  std::uint32_t sample_rate = kSampleRate;
  std::uint16_t channels = 1;
  std::uint16_t bits_per_sample = 16;
  std::uint16_t format_tag = 1;  // integer PCM
};

// Parses a RIFF/WAVE image. Chunks other than "fmt " and "data" are
// skipped. Throws kNotRiff, kUnsupportedRate, kUnsupportedChannels,
// kUnsupportedDepth, kUnsupportedEncoding, kTruncatedBitstream.
AudioSignal parse_wav(std::span<const std::uint8_t> bytes);
// Canonical 44-byte header followed by the samples.
std::vector<std::uint8_t> serialize_wav(const AudioSignal& signal);

// Little-endian 16-bit samples. Throws kOddByteCount.
AudioSignal parse_raw(std::span<const std::uint8_t> bytes);

// File variants; I/O problems throw kIoFailure.
AudioSignal read_wav(const std::filesystem::path& path);
void write_wav(const AudioSignal& signal, const std::filesystem::path& path);
AudioSignal raw_import(const std::filesystem::path& path);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace lpvoc::audio
