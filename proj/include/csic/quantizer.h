// Copyright 2026 The CSIC Authors. All Rights Reserved.
//
// Use of this source code is governed by an MIT-style
// license that can be found in the LICENSE file or at
// https://opensource.org/licenses/MIT.

#ifndef CSIC_QUANTIZER_H_
#define CSIC_QUANTIZER_H_

#include <cstdint>
#include <vector>

#include "csic/sensing.h"
#include "csic/status.h"

namespace csic {

struct QuantizerParams {
  double mu = 0.0;      // AC measurement mean
  double step = 1.0;    // s
  int l_max = 1;        // L, clip level; codebook is {-L, ..., L}
  double c_const = 2.0; // rate-control constant C
};

struct QuantizedPayload {
  std::vector<int32_t> codewords;        // M-1 AC codewords, each in [-L, L]
  int64_t dc_code = 0;                   // unclipped level of the DC measurement
  std::vector<int64_t> saturated_extras; // unclipped levels of the +-L codewords
  QuantizerParams params;
};

// Step from the rate-control rule s = C * phi_norm / csr (clamped below at
// phi_norm), mid-tread clip level L = ceil(4 sigma / s + 0.5), AC mean mu.
// `step_warning` is set when s exceeds 50 * phi_norm. A constant image
// (sigma = 0) yields kDegenerateInput; the encoder then uses L = 1 with
// all-zero codewords.
Status ChooseParams(const std::vector<double>& y, double csr, double c_const, double phi_norm,
                    QuantizerParams* out, bool* step_warning);

// Replaces the rate-control step with a caller-chosen one, recomputing mu
// and L for the same measurements. c_const is left untouched.
Status ForceStep(const std::vector<double>& y, double step, QuantizerParams* out);

// Q~(y) = floor((y - mu) / s + 0.5); codewords clip Q~ to [-L, L]; entries
// that clip keep their Q~ in saturated_extras; the DC entry codes Q~ alone.
Status Quantize(const std::vector<double>& y, const QuantizerParams& p, QuantizedPayload* out);

// Codeword c -> c * s + mu; saturated entries use their extras; the DC entry
// uses dc_code. `m` is the total measurement count (codewords plus DC).
Status Dequantize(const QuantizedPayload& q, size_t m, std::vector<double>* y);

// Quantization noise sigma_q = s / sqrt(12); digitization noise
// sigma_d = phi_norm / sqrt(12).
void NoiseBudget(const QuantizerParams& p, double phi_norm, double* sigma_q, double* sigma_d);

// Merges -L into +L: the entropy-coded label alphabet {-L+1, ..., L}.
std::vector<int32_t> MergedLabels(const QuantizedPayload& q);

// True at positions whose codeword saturated (|c| = L); for the decoder-side
// fallback that zeroes those measurement rows. Position 0 is the DC entry.
std::vector<uint8_t> SaturationMask(const QuantizedPayload& q, size_t m);

}  // namespace csic

#endif  // CSIC_QUANTIZER_H_
