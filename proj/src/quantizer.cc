// Copyright 2026 The CSIC Authors. All Rights Reserved.
//
// Use of this source code is governed by an MIT-style
// license that can be found in the LICENSE file or at
// https://opensource.org/licenses/MIT.

#include "csic/quantizer.h"

#include <cmath>

namespace csic {

Status ChooseParams(const std::vector<double>& y, double csr, double c_const, double phi_norm,
                    QuantizerParams* out, bool* step_warning) {
  if (csr <= 0.0 || csr > 1.0 || y.size() < 2 || phi_norm <= 0.0) return Status::kBadArgument;
  const MeasurementStats stats = AcStats(y);
  double s = c_const * phi_norm / csr;
  if (s < phi_norm) s = phi_norm;
  if (step_warning != nullptr) *step_warning = s > 50.0 * phi_norm;
  out->mu = stats.mu;
  out->step = s;
  out->c_const = c_const;
  if (stats.sigma == 0.0) {
    out->l_max = 1;
    return Status::kDegenerateInput;
  }
  const double l = std::ceil(4.0 * stats.sigma / s + 0.5);
  out->l_max = l < 1.0 ? 1 : static_cast<int>(l);
  return Status::kOk;
}

Status ForceStep(const std::vector<double>& y, double step, QuantizerParams* out) {
  if (step <= 0.0 || y.size() < 2) return Status::kBadArgument;
  const MeasurementStats stats = AcStats(y);
  out->mu = stats.mu;
  out->step = step;
  if (stats.sigma == 0.0) {
    out->l_max = 1;
    return Status::kDegenerateInput;
  }
  const double l = std::ceil(4.0 * stats.sigma / step + 0.5);
  out->l_max = l < 1.0 ? 1 : static_cast<int>(l);
  return Status::kOk;
}

namespace {

int64_t Level(double y, double mu, double s) {
  return static_cast<int64_t>(std::floor((y - mu) / s + 0.5));
}

}  // namespace

Status Quantize(const std::vector<double>& y, const QuantizerParams& p, QuantizedPayload* out) {
  if (y.empty() || p.step <= 0.0 || p.l_max < 1) return Status::kBadArgument;
  const int64_t l = p.l_max;
  out->params = p;
  out->dc_code = Level(y[0], p.mu, p.step);
  out->codewords.clear();
  out->codewords.reserve(y.size() - 1);
  out->saturated_extras.clear();
  for (size_t i = 1; i < y.size(); ++i) {
    const int64_t level = Level(y[i], p.mu, p.step);
    int64_t c = level;
    if (c > l) c = l;
    if (c < -l) c = -l;
    if (c == l || c == -l) out->saturated_extras.push_back(level);
    out->codewords.push_back(static_cast<int32_t>(c));
  }
  return Status::kOk;
}

Status Dequantize(const QuantizedPayload& q, size_t m, std::vector<double>* y) {
  if (m != q.codewords.size() + 1) return Status::kBadDimensions;
  const QuantizerParams& p = q.params;
  if (p.step <= 0.0 || p.l_max < 1) return Status::kBadArgument;
  const int32_t l = p.l_max;
  y->resize(m);
  (*y)[0] = static_cast<double>(q.dc_code) * p.step + p.mu;
  size_t next_extra = 0;
  for (size_t i = 0; i < q.codewords.size(); ++i) {
    const int32_t c = q.codewords[i];
    double level;
    if (c == l || c == -l) {
      if (next_extra >= q.saturated_extras.size()) return Status::kMismatch;
      level = static_cast<double>(q.saturated_extras[next_extra++]);
    } else {
      level = static_cast<double>(c);
    }
    (*y)[i + 1] = level * p.step + p.mu;
  }
  if (next_extra != q.saturated_extras.size()) return Status::kMismatch;
  return Status::kOk;
}

void NoiseBudget(const QuantizerParams& p, double phi_norm, double* sigma_q, double* sigma_d) {
  const double inv_sqrt12 = 1.0 / std::sqrt(12.0);
  *sigma_q = p.step * inv_sqrt12;
  *sigma_d = phi_norm * inv_sqrt12;
}

std::vector<int32_t> MergedLabels(const QuantizedPayload& q) {
  std::vector<int32_t> labels = q.codewords;
  const int32_t l = q.params.l_max;
  for (int32_t& c : labels) {
    if (c == -l) c = l;
  }
  return labels;
}

std::vector<uint8_t> SaturationMask(const QuantizedPayload& q, size_t m) {
  std::vector<uint8_t> mask(m, 0);
  const int32_t l = q.params.l_max;
  for (size_t i = 0; i < q.codewords.size() && i + 1 < mask.size() + 1; ++i) {
    if (q.codewords[i] == l || q.codewords[i] == -l) mask[i + 1] = 1;
  }
  return mask;
}

}  // namespace csic
