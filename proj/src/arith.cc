// Copyright 2026 The CSIC Authors. All Rights Reserved.
//
// Use of this source code is governed by an MIT-style
// license that can be found in the LICENSE file or at
// https://opensource.org/licenses/MIT.

#include "csic/arith.h"

namespace csic {

namespace {
constexpr uint64_t kTop = 0xFFFFFFFFu;
constexpr uint64_t kHalf = 0x80000000u;
constexpr uint64_t kQuarter = 0x40000000u;
constexpr uint64_t kThreeQuarters = 0xC0000000u;
}  // namespace

void ArithEncoder::EmitBit(int bit) {
  cur_byte_ = static_cast<uint8_t>((cur_byte_ << 1) | bit);
  if (++cur_bits_ == 8) {
    out_.push_back(cur_byte_);
    cur_byte_ = 0;
    cur_bits_ = 0;
  }
}

void ArithEncoder::EmitWithPending(int bit) {
  EmitBit(bit);
  while (pending_ > 0) {
    EmitBit(bit ^ 1);
    --pending_;
  }
}

void ArithEncoder::Encode(uint32_t cum_lo, uint32_t cum_hi, uint32_t total) {
  CSIC_CHECK(cum_lo < cum_hi && cum_hi <= total);
  CSIC_CHECK(total <= (1u << 30));
  uint64_t range = high_ - low_ + 1;
  high_ = low_ + (range * cum_hi) / total - 1;
  low_ = low_ + (range * cum_lo) / total;
  for (;;) {
    if (high_ < kHalf) {
      EmitWithPending(0);
    } else if (low_ >= kHalf) {
      EmitWithPending(1);
      low_ -= kHalf;
      high_ -= kHalf;
    } else if (low_ >= kQuarter && high_ < kThreeQuarters) {
      ++pending_;
      low_ -= kQuarter;
      high_ -= kQuarter;
    } else {
      break;
    }
    low_ <<= 1;
    high_ = (high_ << 1) | 1;
  }
}

std::vector<uint8_t> ArithEncoder::Finish() {
  ++pending_;
  EmitWithPending(low_ >= kQuarter ? 1 : 0);
  while (cur_bits_ != 0) EmitBit(0);
  return std::move(out_);
}

ArithDecoder::ArithDecoder(const uint8_t* data, size_t size) : data_(data), size_(size) {
  for (int i = 0; i < 32; ++i) code_ = (code_ << 1) | static_cast<uint64_t>(NextBit());
}

int ArithDecoder::NextBit() {
  if (bit_pos_ >= size_ * 8) return 0;
  int bit = (data_[bit_pos_ / 8] >> (7 - (bit_pos_ % 8))) & 1;
  ++bit_pos_;
  return bit;
}

uint32_t ArithDecoder::DecodeTarget(uint32_t total) {
  uint64_t range = high_ - low_ + 1;
  uint64_t target = ((code_ - low_ + 1) * total - 1) / range;
  return static_cast<uint32_t>(target);
}

void ArithDecoder::Advance(uint32_t cum_lo, uint32_t cum_hi, uint32_t total) {
  uint64_t range = high_ - low_ + 1;
  high_ = low_ + (range * cum_hi) / total - 1;
  low_ = low_ + (range * cum_lo) / total;
  for (;;) {
    if (high_ < kHalf) {
      // nothing
    } else if (low_ >= kHalf) {
      low_ -= kHalf;
      high_ -= kHalf;
      code_ -= kHalf;
    } else if (low_ >= kQuarter && high_ < kThreeQuarters) {
      low_ -= kQuarter;
      high_ -= kQuarter;
      code_ -= kQuarter;
    } else {
      break;
    }
    low_ <<= 1;
    high_ = (high_ << 1) | 1;
    code_ = (code_ << 1) | static_cast<uint64_t>(NextBit());
  }
}

}  // namespace csic
