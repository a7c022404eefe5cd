// Copyright 2026 The CSIC Authors. All Rights Reserved.
//
// Use of this source code is governed by an MIT-style
// license that can be found in the LICENSE file or at
// https://opensource.org/licenses/MIT.

#ifndef CSIC_SECTIONS_H_
#define CSIC_SECTIONS_H_

#include <cstdint>
#include <vector>

#include "csic/histogram.h"

namespace csic {

// One contiguous run of merged labels coded with a single histogram.
struct SectionSpan {
  size_t start = 0;
  size_t length = 0;
  HistFormat hfs = HistFormat::kFull;
  Histogram histogram;
};

// Estimated coded size of one section in bits: the arithmetic-coded payload
// estimate plus the shortest histogram encoding plus the 2-bit format selector.
uint64_t EstimateSectionBits(const Histogram& h);

// Greedy agglomerative partition of the merged-label sequence. Starts from
// single-label sections and repeatedly merges the run of 2..merge_window
// adjacent sections with the largest positive estimated saving; ties pick the
// smallest start offset, then the shortest run. If `total_bits_trace` is given
// it receives the estimated total before the first merge and after every merge.
std::vector<SectionSpan> PartitionSections(const int32_t* labels, size_t n, int l_max,
                                           int merge_window = 4,
                                           std::vector<uint64_t>* total_bits_trace = nullptr);

}  // namespace csic

#endif  // CSIC_SECTIONS_H_
