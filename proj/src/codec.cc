// Copyright 2026 The CSIC Authors. All Rights Reserved.
//
// Use of this source code is governed by an MIT-style
// license that can be found in the LICENSE file or at
// https://opensource.org/licenses/MIT.

#include "csic/codec.h"

#include <cmath>
#include <utility>

namespace csic {

Status EncodeImage(const ImagePlane& img, const EncodeOptions& opts, EncodeResult* out) {
  if (img.size() == 0) return Status::kBadDimensions;
  if (opts.csr <= 0.0 || opts.csr > 1.0) return Status::kBadArgument;
  const size_t m = MeasurementCount(opts.csr, img.height, img.width, opts.kind);
  SensingOperator op;
  CSIC_RETURN_IF_ERROR(
      SensingOperator::Create(opts.kind, img.height, img.width, m, opts.seed, &op));
  std::vector<double> y;
  CSIC_RETURN_IF_ERROR(op.MeasureImage(img, &y));

  QuantizerParams params;
  params.c_const = opts.c_const;
  Status st;
  if (opts.step_override > 0.0) {
    st = ForceStep(y, opts.step_override, &params);
  } else {
    st = ChooseParams(y, opts.csr, opts.c_const, op.RowNorm(), &params, &out->step_warning);
  }
  // A constant image quantizes to all-zero codewords with L = 1.
  if (st != Status::kOk && st != Status::kDegenerateInput) return st;

  QuantizedPayload payload;
  CSIC_RETURN_IF_ERROR(Quantize(y, params, &payload));

  CodedHeader header;
  header.n_v = static_cast<uint32_t>(img.height);
  header.n_h = static_cast<uint32_t>(img.width);
  header.kind = opts.kind;
  header.seed = opts.seed;
  header.m = static_cast<uint32_t>(m);
  header.csr = opts.csr;
  header.c_const = opts.c_const;

  CodedImage coded;
  CSIC_RETURN_IF_ERROR(BuildCodedImage(header, payload, &coded));
  CSIC_RETURN_IF_ERROR(WriteStream(coded, &out->stream));
  out->params = params;
  out->m = m;
  return Status::kOk;
}

Status DecodeImage(const std::vector<uint8_t>& stream, const ReconConfig& cfg,
                   DecodeResult* out) {
  CodedImage coded;
  CSIC_RETURN_IF_ERROR(ReadStream(stream, &coded));
  const CodedHeader& h = coded.header;
  SensingOperator op;
  CSIC_RETURN_IF_ERROR(SensingOperator::Create(h.kind, h.n_v, h.n_h, h.m, h.seed, &op));

  QuantizedPayload payload;
  CSIC_RETURN_IF_ERROR(ExtractPayload(coded, &payload));

  size_t saturated = 0;
  for (int32_t c : payload.codewords) {
    if (c == static_cast<int32_t>(coded.l_max)) ++saturated;
  }
  out->header = h;
  // The measurement noise is known from the quantizer, and the sensing rows
  // are orthonormal, so the residual alone cannot estimate it.
  ReconConfig decode_cfg = cfg;
  if (decode_cfg.sigma_floor <= 0.0) {
    decode_cfg.sigma_floor = coded.step / std::sqrt(12.0);
  }
  // Dequantized measurements only locate the truth within half a step.
  if (decode_cfg.consistency_slack <= 0.0) {
    decode_cfg.consistency_slack = 0.5 * coded.step;
  }
  if (saturated > 0 && payload.saturated_extras.empty()) {
    // Extras were omitted: discard the saturated rows instead.
    std::vector<double> y(h.m, 0.0);
    std::vector<uint8_t> zero_rows(h.m, 0);
    y[0] = static_cast<double>(coded.dc_code) * coded.step + coded.mu;
    for (size_t i = 0; i < payload.codewords.size(); ++i) {
      const int32_t c = payload.codewords[i];
      if (c == static_cast<int32_t>(coded.l_max)) {
        zero_rows[i + 1] = 1;
      } else {
        y[i + 1] = static_cast<double>(c) * coded.step + coded.mu;
      }
    }
    MaskedOperator masked(&op, std::move(zero_rows));
    std::vector<double> x;
    if (cfg.algorithm == ReconAlgo::kGapTv) {
      CSIC_RETURN_IF_ERROR(GapTvDomain(y, masked, op.pad_v(), op.pad_h(), decode_cfg, &x));
    } else {
      const NoisyDenoiser denoise =
          MakeDampDenoiser(decode_cfg.denoiser, op.pad_v(), op.pad_h(), decode_cfg.tv_inner_iters);
      CSIC_RETURN_IF_ERROR(DampDomain(y, masked, decode_cfg, denoise, &x));
    }
    op.DomainToPlane(x, &out->image);
    return Status::kOk;
  }

  std::vector<double> y;
  CSIC_RETURN_IF_ERROR(Dequantize(payload, h.m, &y));
  return Reconstruct(y, op, decode_cfg, &out->image);
}

}  // namespace csic
