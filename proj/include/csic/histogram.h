// Copyright 2026 The CSIC Authors. All Rights Reserved.
//
// Use of this source code is governed by an MIT-style
// license that can be found in the LICENSE file or at
// https://opensource.org/licenses/MIT.

#ifndef CSIC_HISTOGRAM_H_
#define CSIC_HISTOGRAM_H_

#include <cstdint>
#include <vector>

#include "csic/bytestream.h"
#include "csic/status.h"

namespace csic {

// Frequencies of merged codeword labels. After merging -L into +L the
// alphabet is {-L+1, ..., L}; counts[i] is the frequency of label i - L + 1.
struct Histogram {
  int l_max = 1;
  std::vector<uint64_t> counts;  // size 2 * l_max

  static Histogram FromLabels(const int32_t* labels, size_t n, int l_max);

  size_t AlphabetSize() const { return counts.size(); }
  int LabelOfIndex(size_t i) const { return static_cast<int>(i) - l_max + 1; }
  size_t IndexOfLabel(int32_t label) const { return static_cast<size_t>(label + l_max - 1); }
  uint64_t Total() const;
  size_t NonzeroCount() const;
};

enum class HistFormat : uint8_t {
  kFull = 0,     // 2L counts as unbounded uints
  kFlagged = 1,  // 2L-bit nonzero flags, then the nonzero counts
  kIndexed = 2,  // nonzero count K, K packed indices, K counts
};

// Serialized byte length of `h` in format `f`.
size_t EncodedHistogramSize(const Histogram& h, HistFormat f);

// Shortest of the three formats; ties pick the lowest format code.
HistFormat PickHistogramFormat(const Histogram& h);

void EncodeHistogram(const Histogram& h, HistFormat f, ByteSink* sink);
Status DecodeHistogram(HistFormat f, int l_max, ByteSource* src, Histogram* out);

// Estimated arithmetic-coded length of a section with histogram `h`, in bits:
// 8 * ceil(sum_over_nonzero(h(c) * log2(total / h(c))) / 8). A section whose
// histogram has a single nonzero count costs zero bits (pure run length).
uint64_t EstimateAcBits(const Histogram& h);

// Arithmetic-codes `n` labels whose frequencies are exactly `h`.
// A single-symbol section produces an empty payload.
Status AcEncode(const int32_t* labels, size_t n, const Histogram& h, std::vector<uint8_t>* out);
Status AcDecode(const uint8_t* data, size_t size, const Histogram& h, size_t n,
                std::vector<int32_t>* labels);

}  // namespace csic

#endif  // CSIC_HISTOGRAM_H_
