// Copyright 2026 The CSIC Authors. All Rights Reserved.
//
// Use of this source code is governed by an MIT-style
// license that can be found in the LICENSE file or at
// https://opensource.org/licenses/MIT.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "csic/bytestream.h"

namespace csic {
namespace {

std::vector<uint8_t> UintBytes(uint64_t v) {
  ByteSink sink;
  sink.PutUnboundedUint(v);
  return sink.bytes();
}

std::vector<uint8_t> IntBytes(int64_t v) {
  ByteSink sink;
  sink.PutUnboundedInt(v);
  return sink.bytes();
}

TEST_CASE("unbounded uint fixed encodings") {
  CHECK(UintBytes(0) == std::vector<uint8_t>{0x00});
  CHECK(UintBytes(1) == std::vector<uint8_t>{0x01});
  CHECK(UintBytes(127) == std::vector<uint8_t>{0x7F});
  CHECK(UintBytes(128) == std::vector<uint8_t>{0x81, 0x00});
  // 200 = 1 * 128 + 72: continuation byte with high group 1, then 0x48.
  CHECK(UintBytes(200) == std::vector<uint8_t>{0x81, 0x48});
  CHECK(UintBytes(16384) == std::vector<uint8_t>{0x81, 0x80, 0x00});
}

TEST_CASE("unbounded uint length accounting") {
  for (uint64_t v : {uint64_t{0}, uint64_t{1}, uint64_t{127}, uint64_t{128}, uint64_t{200},
                     uint64_t{1} << 20, uint64_t{1} << 62, ~uint64_t{0}}) {
    CHECK(UintBytes(v).size() == UnboundedUintLength(v));
  }
  CHECK(UnboundedUintLength(~uint64_t{0}) == 10);
}

TEST_CASE("unbounded int fold") {
  CHECK(IntBytes(0) == std::vector<uint8_t>{0x00});
  // -1 folds to 1.
  CHECK(IntBytes(-1) == std::vector<uint8_t>{0x01});
  CHECK(IntBytes(1) == std::vector<uint8_t>{0x02});
  CHECK(IntBytes(-2) == std::vector<uint8_t>{0x03});
  for (int64_t v : {int64_t{0}, int64_t{-1}, int64_t{1}, int64_t{63}, int64_t{-64},
                    int64_t{64}, std::numeric_limits<int64_t>::min(),
                    std::numeric_limits<int64_t>::max()}) {
    CHECK(IntBytes(v).size() == UnboundedIntLength(v));
  }
}

TEST_CASE("uint and int round-trips") {
  std::mt19937_64 g(7);
  ByteSink sink;
  std::vector<uint64_t> uints;
  std::vector<int64_t> ints;
  for (int i = 0; i < 2000; ++i) {
    const int shift = static_cast<int>(g() % 64);
    uints.push_back(g() >> shift);
    ints.push_back(static_cast<int64_t>(g() >> shift) * ((g() & 1) ? 1 : -1));
  }
  uints.push_back(0);
  uints.push_back(~uint64_t{0});
  ints.push_back(std::numeric_limits<int64_t>::min());
  ints.push_back(std::numeric_limits<int64_t>::max());
  for (uint64_t v : uints) sink.PutUnboundedUint(v);
  for (int64_t v : ints) sink.PutUnboundedInt(v);

  ByteSource src(sink.bytes().data(), sink.size());
  for (uint64_t v : uints) {
    uint64_t got = 0;
    REQUIRE(ok(src.GetUnboundedUint(&got)));
    CHECK(got == v);
  }
  for (int64_t v : ints) {
    int64_t got = 0;
    REQUIRE(ok(src.GetUnboundedInt(&got)));
    CHECK(got == v);
  }
  CHECK(src.remaining() == 0);
}

TEST_CASE("real fixed decompositions") {
  // Encoded as mantissa then exponent, both signed: value = mantissa * 2^exp.
  auto real_bytes = [](double v) {
    ByteSink sink;
    sink.PutReal(v);
    return sink.bytes();
  };
  auto pair_bytes = [](int64_t mantissa, int64_t exponent) {
    ByteSink sink;
    sink.PutUnboundedInt(mantissa);
    sink.PutUnboundedInt(exponent);
    return sink.bytes();
  };
  CHECK(real_bytes(0.0) == pair_bytes(0, 0));
  CHECK(real_bytes(5.0) == pair_bytes(5, 0));
  CHECK(real_bytes(0.75) == pair_bytes(3, -2));
  CHECK(real_bytes(-0.75) == pair_bytes(-3, -2));
  CHECK(real_bytes(1.0) == pair_bytes(1, 0));
  CHECK(real_bytes(256.0) == pair_bytes(1, 8));
}

TEST_CASE("real round-trip is bit exact") {
  std::mt19937_64 g(11);
  std::vector<double> values = {0.0,
                                1.0,
                                -1.0,
                                0.1,
                                255.0,
                                1e-300,
                                -1e300,
                                std::numeric_limits<double>::denorm_min(),
                                std::numeric_limits<double>::max(),
                                std::numeric_limits<double>::min()};
  for (int i = 0; i < 500; ++i) {
    const double frac = static_cast<double>(g() >> 11) * 0x1p-53;
    const int exp = static_cast<int>(g() % 600) - 300;
    values.push_back(std::ldexp(frac * 2.0 - 1.0, exp));
  }
  ByteSink sink;
  for (double v : values) sink.PutReal(v);
  ByteSource src(sink.bytes().data(), sink.size());
  for (double v : values) {
    double got = 0.0;
    REQUIRE(ok(src.GetReal(&got)));
    CHECK(std::signbit(got) == std::signbit(v));
    CHECK(got == v);
  }
}

TEST_CASE("real decoder rejects out-of-range exponents") {
  ByteSink sink;
  sink.PutUnboundedInt(1);
  sink.PutUnboundedInt(2000);
  ByteSource src(sink.bytes().data(), sink.size());
  double v = 0.0;
  CHECK(src.GetReal(&v) == Status::kCorrupt);

  ByteSink sink2;
  sink2.PutUnboundedInt(1);
  sink2.PutUnboundedInt(-2000);
  ByteSource src2(sink2.bytes().data(), sink2.size());
  CHECK(src2.GetReal(&v) == Status::kCorrupt);
}

TEST_CASE("decoder rejects unterminated varints and truncation") {
  // Eleven continuation bytes cannot be a 64-bit integer.
  std::vector<uint8_t> runaway(11, 0xFF);
  ByteSource src(runaway.data(), runaway.size());
  uint64_t v = 0;
  CHECK(src.GetUnboundedUint(&v) == Status::kCorrupt);

  std::vector<uint8_t> cut = {0x81};
  ByteSource src2(cut.data(), cut.size());
  CHECK(src2.GetUnboundedUint(&v) == Status::kTruncated);

  ByteSource empty(nullptr, 0);
  uint8_t b = 0;
  CHECK(empty.GetByte(&b) == Status::kTruncated);
}

TEST_CASE("bit array packing") {
  ByteSink sink;
  sink.PutBitArray({});
  CHECK(sink.size() == 0);

  sink.PutBitArray({1, 0, 1});
  CHECK(sink.bytes() == std::vector<uint8_t>{0xA0});

  ByteSink sink16;
  std::vector<uint8_t> bits16;
  for (int i = 0; i < 16; ++i) bits16.push_back(static_cast<uint8_t>(i % 3 == 0));
  sink16.PutBitArray(bits16);
  CHECK(sink16.size() == 2);
  ByteSource src(sink16.bytes().data(), sink16.size());
  std::vector<uint8_t> back;
  REQUIRE(ok(src.GetBitArray(16, &back)));
  CHECK(back == bits16);
  CHECK(src.remaining() == 0);
}

TEST_CASE("bit array round-trip at non-multiple lengths") {
  std::mt19937_64 g(13);
  for (size_t n : {size_t{1}, size_t{7}, size_t{8}, size_t{9}, size_t{31}, size_t{257}}) {
    std::vector<uint8_t> bits(n);
    for (auto& b : bits) b = static_cast<uint8_t>(g() & 1);
    ByteSink sink;
    sink.PutBitArray(bits);
    CHECK(sink.size() == BitArrayLength(n));
    ByteSource src(sink.bytes().data(), sink.size());
    std::vector<uint8_t> back;
    REQUIRE(ok(src.GetBitArray(n, &back)));
    CHECK(back == bits);
  }
}

TEST_CASE("bounded uint array packing") {
  ByteSink sink;
  sink.PutBoundedUintArray({1, 2, 3}, 2);
  // Bits 01 10 11, zero padded: 01101100.
  CHECK(sink.bytes() == std::vector<uint8_t>{0x6C});

  ByteSink sink1;
  sink1.PutBoundedUintArray({0}, 1);
  CHECK(sink1.bytes() == std::vector<uint8_t>{0x00});

  ByteSink sink8;
  sink8.PutBoundedUintArray({0x12, 0x00, 0xFF, 0x80}, 8);
  CHECK(sink8.bytes() == std::vector<uint8_t>{0x12, 0x00, 0xFF, 0x80});
}

TEST_CASE("bounded uint array round-trip") {
  std::mt19937_64 g(17);
  for (int bits = 1; bits <= 64; bits += 7) {
    std::vector<uint64_t> values(33);
    for (auto& v : values) {
      v = bits == 64 ? g() : (g() & ((uint64_t{1} << bits) - 1));
    }
    ByteSink sink;
    sink.PutBoundedUintArray(values, bits);
    CHECK(sink.size() == BitArrayLength(values.size() * static_cast<size_t>(bits)));
    ByteSource src(sink.bytes().data(), sink.size());
    std::vector<uint64_t> back;
    REQUIRE(ok(src.GetBoundedUintArray(values.size(), bits, &back)));
    CHECK(back == values);
  }
}

TEST_CASE("every primitive is byte aligned") {
  ByteSink sink;
  sink.PutBitArray({1});
  const size_t after_bits = sink.size();
  sink.PutUnboundedUint(5);
  CHECK(after_bits == 1);
  CHECK(sink.size() == 2);
  ByteSource src(sink.bytes().data(), sink.size());
  std::vector<uint8_t> bits;
  REQUIRE(ok(src.GetBitArray(1, &bits)));
  CHECK(src.pos() == 1);
  uint64_t v = 0;
  REQUIRE(ok(src.GetUnboundedUint(&v)));
  CHECK(v == 5);
}

}  // namespace
}  // namespace csic
