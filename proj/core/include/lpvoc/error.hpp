#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lpvoc {

// Every failure raised by the library carries one of these codes so callers
// (the CLI, the HTTP layer, tests) can branch without string matching.
enum class ErrorCode {
  // dsp
  kEmptyFrame,
  kLagTooLarge,
  kSingularAutocorrelation,
  kGammaOutOfRange,
  kGammaOrderViolation,
  kUnstableDenominator,
  kUnstableFilter,
  kNonMinimumPhase,
  kNonMonotoneLsf,
  kFrameTooShort,
  kUnsupportedOrder,
  // codecs
  kBadFrameLength,
  kIndexOutOfRange,
  kEmptyHistory,
  kEmptyCodebook,
  kWeightSumViolation,
  // bitstream
  kFieldOutOfRange,
  kTruncatedBitstream,
  kTrailingBytes,
  kUnknownCodec,
  kBadMagic,
  kUnsupportedVersion,
  kInconsistentContainer,
  // audio-io
  kNotRiff,
  kUnsupportedRate,
  kUnsupportedChannels,
  kUnsupportedDepth,
  kUnsupportedEncoding,
  kOddByteCount,
  kIoFailure,
  // analysis
  kBadWindowConfig,
  kSignalTooShort,
  kLengthMismatch,
  kAllSegmentsSilent,
  // mos
  kNoSamples,
  kScoreOutOfRange,
  kUnknownSample,
  kSessionExpired,
  kBadRequest,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lpvoc
