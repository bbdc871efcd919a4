#include "lpvoc/error.hpp"

namespace lpvoc {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kEmptyFrame: return "EmptyFrame";
    case ErrorCode::kLagTooLarge: return "LagTooLarge";
    case ErrorCode::kSingularAutocorrelation: return "SingularAutocorrelation";
    case ErrorCode::kGammaOutOfRange: return "GammaOutOfRange";
    case ErrorCode::kGammaOrderViolation: return "GammaOrderViolation";
    case ErrorCode::kUnstableDenominator: return "UnstableDenominator";
    case ErrorCode::kUnstableFilter: return "UnstableFilter";
    case ErrorCode::kNonMinimumPhase: return "NonMinimumPhase";
    case ErrorCode::kNonMonotoneLsf: return "NonMonotoneLsf";
    case ErrorCode::kFrameTooShort: return "FrameTooShort";
    case ErrorCode::kUnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::kBadFrameLength: return "BadFrameLength";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kEmptyHistory: return "EmptyHistory";
    case ErrorCode::kEmptyCodebook: return "EmptyCodebook";
    case ErrorCode::kWeightSumViolation: return "WeightSumViolation";
    case ErrorCode::kFieldOutOfRange: return "FieldOutOfRange";
    case ErrorCode::kTruncatedBitstream: return "TruncatedBitstream";
    case ErrorCode::kTrailingBytes: return "TrailingBytes";
    case ErrorCode::kUnknownCodec: return "UnknownCodec";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kUnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::kInconsistentContainer: return "InconsistentContainer";
    case ErrorCode::kNotRiff: return "NotRiff";
    case ErrorCode::kUnsupportedRate: return "UnsupportedRate";
    case ErrorCode::kUnsupportedChannels: return "UnsupportedChannels";
    case ErrorCode::kUnsupportedDepth: return "UnsupportedDepth";
    case ErrorCode::kUnsupportedEncoding: return "UnsupportedEncoding";
    case ErrorCode::kOddByteCount: return "OddByteCount";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kBadWindowConfig: return "BadWindowConfig";
    case ErrorCode::kSignalTooShort: return "SignalTooShort";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kAllSegmentsSilent: return "AllSegmentsSilent";
    case ErrorCode::kNoSamples: return "NoSamples";
    case ErrorCode::kScoreOutOfRange: return "ScoreOutOfRange";
    case ErrorCode::kUnknownSample: return "UnknownSample";
    case ErrorCode::kSessionExpired: return "SessionExpired";
    case ErrorCode::kBadRequest: return "BadRequest";
  }
  return "Unknown";
}

}  // namespace lpvoc
