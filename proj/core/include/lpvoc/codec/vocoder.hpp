#pragma once

#include <cstdint>
#include <optional>

#include "lpvoc/bitstream/container.hpp"
#include "lpvoc/bitstream/format.hpp"
#include "lpvoc/dsp/types.hpp"

// Whole-signal front end over the three codecs.

namespace lpvoc {

struct CodecOptions {
  // Replaces every codebook seed of the selected codec when set.
  std::optional<std::uint64_t> seed;
};

struct EncodeResult {
  bitstream::Container container;
  // Encoder-side synthesis, truncated to the input length.
  AudioSignal reconstruction;
};

// The last unit is zero-padded; the true length is kept in the container.
EncodeResult encode_signal(const AudioSignal& signal, CodecId codec,
                           const CodecOptions& options = {});

// Output is truncated to the container's sample count. Throws
// kInconsistentContainer, kIndexOutOfRange or bitstream errors.
AudioSignal decode_container(const bitstream::Container& container,
                             const CodecOptions& options = {});

}  // namespace lpvoc
