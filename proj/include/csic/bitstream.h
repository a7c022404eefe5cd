// Copyright 2026 The CSIC Authors. All Rights Reserved.
//
// Use of this source code is governed by an MIT-style
// license that can be found in the LICENSE file or at
// https://opensource.org/licenses/MIT.

#ifndef CSIC_BITSTREAM_H_
#define CSIC_BITSTREAM_H_

#include <cstdint>
#include <vector>

#include "csic/quantizer.h"
#include "csic/sections.h"
#include "csic/sensing.h"
#include "csic/status.h"

namespace csic {

// The serialized layout is normative and documented in docs/FORMAT.md.

struct CodedHeader {
  uint32_t version = 1;
  uint32_t n_v = 0;
  uint32_t n_h = 0;
  uint32_t bits_per_pixel = 8;
  MatrixKind kind = MatrixKind::kDct2d;
  uint64_t seed = 0;
  uint32_t m = 0;
  double csr = 0.0;
  double c_const = 2.0;
};

struct CodedImage {
  CodedHeader header;
  // Global quantizer state.
  double mu = 0.0;
  double step = 1.0;
  uint32_t l_max = 1;
  int64_t dc_code = 0;
  // Entropy-coded payload: merged labels tiled by sections.
  std::vector<SectionSpan> sections;
  std::vector<int32_t> merged_labels;  // length m - 1
  std::vector<int64_t> extras;         // unclipped levels of merged label L
};

// Byte ranges of the written stream, for diagnostics and tests.
struct WriteLayout {
  size_t header_end = 0;
  size_t globals_end = 0;
  std::vector<std::pair<size_t, size_t>> ac_payloads;  // [begin, end) per section
  size_t sections_end = 0;
  size_t extras_end = 0;
};

Status WriteStream(const CodedImage& coded, std::vector<uint8_t>* out,
                   WriteLayout* layout = nullptr);
Status ReadStream(const std::vector<uint8_t>& bytes, CodedImage* out);

// Assembles the quantized payload into a CodedImage (partitioning included).
Status BuildCodedImage(const CodedHeader& header, const QuantizedPayload& payload,
                       CodedImage* out);

// Recovers the quantized payload from a parsed stream.
Status ExtractPayload(const CodedImage& coded, QuantizedPayload* out);

}  // namespace csic

#endif  // CSIC_BITSTREAM_H_
