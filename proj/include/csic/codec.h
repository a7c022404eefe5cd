// Copyright 2026 The CSIC Authors. All Rights Reserved.
//
// Use of this source code is governed by an MIT-style
// license that can be found in the LICENSE file or at
// https://opensource.org/licenses/MIT.

#ifndef CSIC_CODEC_H_
#define CSIC_CODEC_H_

#include <cstdint>
#include <vector>

#include "csic/bitstream.h"
#include "csic/image.h"
#include "csic/quantizer.h"
#include "csic/recon.h"
#include "csic/sensing.h"
#include "csic/status.h"

namespace csic {

struct EncodeOptions {
  MatrixKind kind = MatrixKind::kDct2d;
  double csr = 0.1;
  double c_const = 2.0;
  double step_override = 0.0;  // > 0 replaces the rate-control step
  uint64_t seed = 1;
};

struct EncodeResult {
  std::vector<uint8_t> stream;
  QuantizerParams params;
  size_t m = 0;
  bool step_warning = false;
};

// sense -> quantize -> partition -> entropy-code -> serialize.
Status EncodeImage(const ImagePlane& img, const EncodeOptions& opts, EncodeResult* out);

struct DecodeResult {
  ImagePlane image;
  CodedHeader header;
};

// parse -> dequantize -> reconstruct. Streams whose saturated codewords carry
// no extras fall back to reconstruction with those measurement rows zeroed.
Status DecodeImage(const std::vector<uint8_t>& stream, const ReconConfig& cfg,
                   DecodeResult* out);

}  // namespace csic

#endif  // CSIC_CODEC_H_
