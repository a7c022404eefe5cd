// Copyright 2026 The CSIC Authors. All Rights Reserved.
//
// Use of this source code is governed by an MIT-style
// license that can be found in the LICENSE file or at
// https://opensource.org/licenses/MIT.

#ifndef CSIC_BYTESTREAM_H_
#define CSIC_BYTESTREAM_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "csic/status.h"

namespace csic {

// Primitive coded-number formats. Every put/get below starts and ends on a
// byte boundary; bit-level fields are zero padded up to the next byte.
//
//  - Unbounded unsigned integer: 7-bit groups, most significant group first,
//    MSB of each byte is a continuation bit (set on all bytes but the last).
//  - Unbounded signed integer: fold n >= 0 -> 2n, n < 0 -> -2n-1, then code
//    as unbounded unsigned.
//  - Real: exact mantissa/exponent pair (mantissa odd or zero), both coded
//    as unbounded signed integers; v = mantissa * 2^exponent.
//  - Bit array: 8 bits per byte, most significant bit first, zero padded.
//  - Bounded unsigned array: n values of b bits each, concatenated into a
//    bit array of b*n bits.

class ByteSink {
 public:
  void PutByte(uint8_t b) { bytes_.push_back(b); }
  void PutBytes(const uint8_t* p, size_t n) { bytes_.insert(bytes_.end(), p, p + n); }
  void PutUnboundedUint(uint64_t v);
  void PutUnboundedInt(int64_t v);
  void PutReal(double v);  // v must be finite
  void PutBitArray(const std::vector<uint8_t>& bits);
  void PutBoundedUintArray(const std::vector<uint64_t>& values, int bits_per_value);

  const std::vector<uint8_t>& bytes() const { return bytes_; }
  size_t size() const { return bytes_.size(); }

 private:
  std::vector<uint8_t> bytes_;
};

class ByteSource {
 public:
  ByteSource(const uint8_t* data, size_t size) : data_(data), size_(size) {}

  Status GetByte(uint8_t* b);
  Status GetBytes(uint8_t* p, size_t n);
  Status GetUnboundedUint(uint64_t* v);
  Status GetUnboundedInt(int64_t* v);
  Status GetReal(double* v);
  Status GetBitArray(size_t n_bits, std::vector<uint8_t>* bits);
  Status GetBoundedUintArray(size_t n, int bits_per_value, std::vector<uint64_t>* values);
  Status Skip(size_t n);

  size_t pos() const { return pos_; }
  size_t remaining() const { return size_ - pos_; }
  const uint8_t* cur() const { return data_ + pos_; }

 private:
  const uint8_t* data_;
  size_t size_;
  size_t pos_ = 0;
};

// Byte costs used by the histogram format selection and length estimates.
size_t UnboundedUintLength(uint64_t v);
size_t UnboundedIntLength(int64_t v);
size_t BitArrayLength(size_t n_bits);

}  // namespace csic

#endif  // CSIC_BYTESTREAM_H_
