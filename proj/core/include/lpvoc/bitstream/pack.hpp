#pragma once

#include <variant>

#include "lpvoc/bitstream/bits.hpp"
#include "lpvoc/bitstream/format.hpp"
#include "lpvoc/codec/params.hpp"

namespace lpvoc::bitstream {

// Field order follows the allocation tables.
//
// CELP (144): LSF 3,4,4,4,4,3,3,3,3,3 | pitch 8,6,8,6 | adaptive gain 4x5 |
//   stochastic index 4x9 | stochastic gain 4x5 | sync 1 | error correction 4 |
//   expansion 1.
// LD-CELP (10): shape 7 | gain magnitude 2 | gain sign 1.
// MELP (54): LSF 7,6,6,6 | gain 4,4 | pitch 6 + overall voicing 1 | then
//   voiced: Fourier 8, bandpass voicing 4, aperiodic 1;
//   unvoiced: error protection 13 | sync 1.
// The voicing bit sits at the same offset in both MELP layouts, ahead of
// the layout-specific fields, so a frame parses without outside context.
//
// pack() throws kFieldOutOfRange for units violating their invariants;
// unpack() throws kTruncatedBitstream when bits run out and
// kFieldOutOfRange for a CELP delta lag that leaves [20, 147].
BitBuffer pack(const CelpFrameParams& p);
BitBuffer pack(const LdcelpVectorParams& p);
BitBuffer pack(const MelpFrameParams& p);

CelpFrameParams unpack_celp(BitReader& in);
LdcelpVectorParams unpack_ldcelp(BitReader& in);
MelpFrameParams unpack_melp(BitReader& in);

using AnyParams = std::variant<CelpFrameParams, LdcelpVectorParams, MelpFrameParams>;
AnyParams unpack(const BitBuffer& bits, CodecId codec);

}  // namespace lpvoc::bitstream
