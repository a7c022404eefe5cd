// Copyright 2026 The CSIC Authors. All Rights Reserved.
//
// Use of this source code is governed by an MIT-style
// license that can be found in the LICENSE file or at
// https://opensource.org/licenses/MIT.

#include "csic/bytestream.h"

#include <cmath>
#include <cstring>

namespace csic {

namespace {

uint64_t FoldSigned(int64_t v) {
  return (static_cast<uint64_t>(v) << 1) ^ static_cast<uint64_t>(v >> 63);
}

int64_t UnfoldSigned(uint64_t u) {
  return static_cast<int64_t>((u >> 1) ^ (~(u & 1) + 1));
}

}  // namespace

size_t UnboundedUintLength(uint64_t v) {
  size_t n = 1;
  while (v >= 128) {
    v >>= 7;
    ++n;
  }
  return n;
}

size_t UnboundedIntLength(int64_t v) { return UnboundedUintLength(FoldSigned(v)); }

size_t BitArrayLength(size_t n_bits) { return (n_bits + 7) / 8; }

void ByteSink::PutUnboundedUint(uint64_t v) {
  uint8_t groups[10];
  int n = 0;
  do {
    groups[n++] = static_cast<uint8_t>(v & 0x7F);
    v >>= 7;
  } while (v != 0);
  for (int i = n - 1; i > 0; --i) PutByte(groups[i] | 0x80);
  PutByte(groups[0]);
}

void ByteSink::PutUnboundedInt(int64_t v) { PutUnboundedUint(FoldSigned(v)); }

void ByteSink::PutReal(double v) {
  CSIC_CHECK(std::isfinite(v));
  int64_t mantissa = 0;
  int64_t exponent = 0;
  if (v != 0.0) {
    int exp2 = 0;
    double frac = std::frexp(v, &exp2);  // v = frac * 2^exp2, |frac| in [0.5, 1)
    mantissa = static_cast<int64_t>(std::ldexp(frac, 53));
    exponent = exp2 - 53;
    while ((mantissa & 1) == 0) {
      mantissa >>= 1;
      ++exponent;
    }
  }
  PutUnboundedInt(mantissa);
  PutUnboundedInt(exponent);
}

void ByteSink::PutBitArray(const std::vector<uint8_t>& bits) {
  uint8_t cur = 0;
  size_t filled = 0;
  for (uint8_t bit : bits) {
    cur = static_cast<uint8_t>(cur | ((bit & 1) << (7 - filled)));
    if (++filled == 8) {
      PutByte(cur);
      cur = 0;
      filled = 0;
    }
  }
  if (filled > 0) PutByte(cur);
}

void ByteSink::PutBoundedUintArray(const std::vector<uint64_t>& values, int bits_per_value) {
  CSIC_CHECK(bits_per_value >= 1 && bits_per_value <= 64);
  std::vector<uint8_t> bits;
  bits.reserve(values.size() * static_cast<size_t>(bits_per_value));
  for (uint64_t v : values) {
    CSIC_CHECK(bits_per_value == 64 || v < (uint64_t{1} << bits_per_value));
    for (int i = bits_per_value - 1; i >= 0; --i) {
      bits.push_back(static_cast<uint8_t>((v >> i) & 1));
    }
  }
  PutBitArray(bits);
}

Status ByteSource::GetByte(uint8_t* b) {
  if (pos_ >= size_) return Status::kTruncated;
  *b = data_[pos_++];
  return Status::kOk;
}

Status ByteSource::GetBytes(uint8_t* p, size_t n) {
  if (remaining() < n) return Status::kTruncated;
  std::memcpy(p, data_ + pos_, n);
  pos_ += n;
  return Status::kOk;
}

Status ByteSource::Skip(size_t n) {
  if (remaining() < n) return Status::kTruncated;
  pos_ += n;
  return Status::kOk;
}

Status ByteSource::GetUnboundedUint(uint64_t* v) {
  uint64_t acc = 0;
  for (int i = 0; i < 10; ++i) {
    uint8_t b;
    CSIC_RETURN_IF_ERROR(GetByte(&b));
    acc = (acc << 7) | (b & 0x7F);
    if ((b & 0x80) == 0) {
      *v = acc;
      return Status::kOk;
    }
  }
  return Status::kCorrupt;  // more than 10 continuation bytes cannot be a uint64
}

Status ByteSource::GetUnboundedInt(int64_t* v) {
  uint64_t u;
  CSIC_RETURN_IF_ERROR(GetUnboundedUint(&u));
  *v = UnfoldSigned(u);
  return Status::kOk;
}

Status ByteSource::GetReal(double* v) {
  int64_t mantissa, exponent;
  CSIC_RETURN_IF_ERROR(GetUnboundedInt(&mantissa));
  CSIC_RETURN_IF_ERROR(GetUnboundedInt(&exponent));
  if (exponent < -1100 || exponent > 1100) return Status::kCorrupt;
  *v = std::ldexp(static_cast<double>(mantissa), static_cast<int>(exponent));
  if (!std::isfinite(*v)) return Status::kCorrupt;
  return Status::kOk;
}

Status ByteSource::GetBitArray(size_t n_bits, std::vector<uint8_t>* bits) {
  size_t n_bytes = BitArrayLength(n_bits);
  if (remaining() < n_bytes) return Status::kTruncated;
  bits->resize(n_bits);
  for (size_t i = 0; i < n_bits; ++i) {
    (*bits)[i] = (data_[pos_ + i / 8] >> (7 - (i % 8))) & 1;
  }
  pos_ += n_bytes;
  return Status::kOk;
}

Status ByteSource::GetBoundedUintArray(size_t n, int bits_per_value, std::vector<uint64_t>* values) {
  if (bits_per_value < 1 || bits_per_value > 64) return Status::kBadArgument;
  std::vector<uint8_t> bits;
  CSIC_RETURN_IF_ERROR(GetBitArray(n * static_cast<size_t>(bits_per_value), &bits));
  values->assign(n, 0);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {
    uint64_t v = 0;
    for (int b = 0; b < bits_per_value; ++b) v = (v << 1) | bits[k++];
    (*values)[i] = v;
  }
  return Status::kOk;
}

}  // namespace csic
