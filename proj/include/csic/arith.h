// Copyright 2026 The CSIC Authors. All Rights Reserved.
//
// Use of this source code is governed by an MIT-style
// license that can be found in the LICENSE file or at
// https://opensource.org/licenses/MIT.

#ifndef CSIC_ARITH_H_
#define CSIC_ARITH_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "csic/status.h"

namespace csic {

// Static-model binary-renormalized arithmetic coder, 32-bit state.
// A symbol is described by its cumulative frequency interval
// [cum_lo, cum_hi) out of `total`. The encoder terminates with two
// disambiguation bits plus any pending underflow bits, then zero pads
// to a byte boundary. The decoder treats bits past the payload as zero.
// `total` must be at most 2^30 so interval updates cannot underflow.

class ArithEncoder {
 public:
  void Encode(uint32_t cum_lo, uint32_t cum_hi, uint32_t total);
  // Flushes termination bits; returns the payload. The encoder must not be
  // reused afterwards.
  std::vector<uint8_t> Finish();

 private:
  void EmitBit(int bit);
  void EmitWithPending(int bit);

  uint64_t low_ = 0;
  uint64_t high_ = 0xFFFFFFFFu;
  uint64_t pending_ = 0;
  uint8_t cur_byte_ = 0;
  int cur_bits_ = 0;
  std::vector<uint8_t> out_;
};

class ArithDecoder {
 public:
  ArithDecoder(const uint8_t* data, size_t size);

  // Returns the cumulative-frequency target of the next symbol, in [0, total).
  uint32_t DecodeTarget(uint32_t total);
  // Consumes the symbol whose interval [cum_lo, cum_hi) contains the target.
  void Advance(uint32_t cum_lo, uint32_t cum_hi, uint32_t total);

 private:
  int NextBit();

  const uint8_t* data_;
  size_t size_;
  size_t bit_pos_ = 0;
  uint64_t low_ = 0;
  uint64_t high_ = 0xFFFFFFFFu;
  uint64_t code_ = 0;
};

}  // namespace csic

#endif  // CSIC_ARITH_H_
