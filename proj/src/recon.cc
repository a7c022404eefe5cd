// Copyright 2026 The CSIC Authors. All Rights Reserved.
//
// Use of this source code is governed by an MIT-style
// license that can be found in the LICENSE file or at
// https://opensource.org/licenses/MIT.

#include "csic/recon.h"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace csic {

namespace {

constexpr double kPi = 3.14159265358979323846;

double Norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double RelativeChange(const std::vector<double>& cur, const std::vector<double>& prev) {
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < cur.size(); ++i) {
    const double d = cur[i] - prev[i];
    num += d * d;
    den += prev[i] * prev[i];
  }
  return std::sqrt(num) / (std::sqrt(den) + 1e-12);
}

// out -= weight * D^T p over the image grid; ph column w-1 and pv row h-1
// are identically zero by construction.
void SubtractWeightedDivergence(const std::vector<double>& ph, const std::vector<double>& pv,
                                size_t h, size_t w, double weight, std::vector<double>* out) {
  for (size_t r = 0; r < h; ++r) {
    for (size_t c = 0; c + 1 < w; ++c) {
      const double p = ph[r * w + c];
      (*out)[r * w + c] += weight * p;
      (*out)[r * w + c + 1] -= weight * p;
    }
  }
  for (size_t r = 0; r + 1 < h; ++r) {
    for (size_t c = 0; c < w; ++c) {
      const double p = pv[r * w + c];
      (*out)[r * w + c] += weight * p;
      (*out)[(r + 1) * w + c] -= weight * p;
    }
  }
}

}  // namespace

const char* ReconAlgoName(ReconAlgo algo) {
  switch (algo) {
    case ReconAlgo::kGapTv:
      return "gaptv";
    case ReconAlgo::kDamp:
      return "damp";
  }
  return "unknown";
}

Status ParseReconAlgo(const std::string& name, ReconAlgo* algo) {
  if (name == "gaptv" || name == "gap-tv") {
    *algo = ReconAlgo::kGapTv;
    return Status::kOk;
  }
  if (name == "damp" || name == "d-amp") {
    *algo = ReconAlgo::kDamp;
    return Status::kOk;
  }
  return Status::kBadArgument;
}

double NormalSampler::Next() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = (static_cast<double>(g_() >> 11) + 1.0) * 0x1p-53;
  const double u2 = static_cast<double>(g_() >> 11) * 0x1p-53;
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * kPi * u2;
  spare_ = radius * std::sin(angle);
  have_spare_ = true;
  return radius * std::cos(angle);
}

Status ProjectConsistent(const LinearOperator& op, const std::vector<double>& y,
                         const std::vector<double>& theta, std::vector<double>* out) {
  if (y.size() != op.NumMeasurements() || theta.size() != op.DomainSize()) {
    return Status::kBadDimensions;
  }
  std::vector<double> z;
  op.Apply(theta, &z);
  for (size_t i = 0; i < z.size(); ++i) z[i] = y[i] - z[i];
  op.ApplyTranspose(z, out);
  for (size_t i = 0; i < out->size(); ++i) (*out)[i] += theta[i];
  return Status::kOk;
}

void TvDenoise(const std::vector<double>& v, size_t n_v, size_t n_h, double weight,
               size_t inner_iters, std::vector<double>* out,
               std::vector<double>* objective_trace) {
  const size_t n = n_v * n_h;
  std::vector<double> ph(n, 0.0), pv(n, 0.0), theta(n);
  const double step = 1.0 / (8.0 * weight);
  if (objective_trace != nullptr) objective_trace->clear();
  for (size_t it = 0; it < inner_iters; ++it) {
    theta = v;
    SubtractWeightedDivergence(ph, pv, n_v, n_h, weight, &theta);
    for (size_t r = 0; r < n_v; ++r) {
      for (size_t c = 0; c + 1 < n_h; ++c) {
        const size_t i = r * n_h + c;
        ph[i] = std::clamp(ph[i] + step * (theta[i + 1] - theta[i]), -1.0, 1.0);
      }
    }
    for (size_t r = 0; r + 1 < n_v; ++r) {
      for (size_t c = 0; c < n_h; ++c) {
        const size_t i = r * n_h + c;
        pv[i] = std::clamp(pv[i] + step * (theta[i + n_h] - theta[i]), -1.0, 1.0);
      }
    }
    if (objective_trace != nullptr) {
      std::vector<double> cur = v;
      SubtractWeightedDivergence(ph, pv, n_v, n_h, weight, &cur);
      double obj = 0.0;
      for (size_t i = 0; i < n; ++i) obj += 0.5 * cur[i] * cur[i];
      objective_trace->push_back(obj);
    }
  }
  *out = v;
  SubtractWeightedDivergence(ph, pv, n_v, n_h, weight, out);
  const auto [lo_it, hi_it] = std::minmax_element(v.begin(), v.end());
  const double lo = *lo_it, hi = *hi_it;
  for (double& x : *out) x = std::clamp(x, lo, hi);
}

void GaussianBlur(const std::vector<double>& v, size_t n_v, size_t n_h, double sigma,
                  std::vector<double>* out) {
  const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
  std::vector<double> taps(2 * radius + 1);
  for (int i = -radius; i <= radius; ++i) {
    taps[i + radius] = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
  }
  std::vector<double> rows(v.size());
  for (size_t r = 0; r < n_v; ++r) {
    for (size_t c = 0; c < n_h; ++c) {
      double acc = 0.0, wsum = 0.0;
      for (int t = -radius; t <= radius; ++t) {
        const long long cc = static_cast<long long>(c) + t;
        if (cc < 0 || cc >= static_cast<long long>(n_h)) continue;
        acc += taps[t + radius] * v[r * n_h + cc];
        wsum += taps[t + radius];
      }
      rows[r * n_h + c] = acc / wsum;
    }
  }
  out->resize(v.size());
  for (size_t r = 0; r < n_v; ++r) {
    for (size_t c = 0; c < n_h; ++c) {
      double acc = 0.0, wsum = 0.0;
      for (int t = -radius; t <= radius; ++t) {
        const long long rr = static_cast<long long>(r) + t;
        if (rr < 0 || rr >= static_cast<long long>(n_v)) continue;
        acc += taps[t + radius] * rows[rr * n_h + c];
        wsum += taps[t + radius];
      }
      (*out)[r * n_h + c] = acc / wsum;
    }
  }
}

namespace {

// Projection onto {x : |op(x) - y| <= slack elementwise}: pulls each
// measurement no further than the edge of its slack cell. Slack 0 is the
// exact consistency projection theta + op^T(y - op(theta)).
void ProjectToCells(const LinearOperator& op, const std::vector<double>& y,
                    const std::vector<double>& theta, double slack, std::vector<double>* x) {
  std::vector<double> residual, correction;
  op.Apply(theta, &residual);
  for (size_t i = 0; i < residual.size(); ++i) {
    const double r = y[i] - residual[i];
    residual[i] = r - std::clamp(r, -slack, slack);
  }
  op.ApplyTranspose(residual, &correction);
  x->resize(theta.size());
  for (size_t i = 0; i < theta.size(); ++i) (*x)[i] = theta[i] + correction[i];
}

}  // namespace

Status GapTvDomain(const std::vector<double>& y, const LinearOperator& op, size_t n_v,
                   size_t n_h, const ReconConfig& cfg, std::vector<double>* x) {
  if (n_v * n_h != op.DomainSize() || y.size() != op.NumMeasurements()) {
    return Status::kBadDimensions;
  }
  std::vector<double> theta, projected, prev;
  op.ApplyTranspose(y, &theta);
  for (size_t it = 0; it < cfg.max_iters; ++it) {
    prev = theta;
    ProjectToCells(op, y, theta, 0.0, &projected);
    TvDenoise(projected, n_v, n_h, cfg.tv_weight, cfg.tv_inner_iters, &theta);
    if (cfg.tol > 0.0 && RelativeChange(theta, prev) < cfg.tol) break;
  }
  // Exact projection reproduces informative measurements instead of smoothing
  // them away, but also carries their noise into the output. The noise level
  // in the pixel domain is known, so one noise-matched TV step removes it,
  // and the result is pulled back to the edge of the measurement cells.
  ProjectToCells(op, y, theta, 0.0, &projected);
  const double sigma_pix =
      cfg.sigma_floor * std::sqrt(static_cast<double>(op.NumMeasurements()) /
                                  static_cast<double>(op.DomainSize()));
  if (sigma_pix <= 0.0) {
    *x = std::move(projected);
    return Status::kOk;
  }
  TvDenoise(projected, n_v, n_h, kGapTvPolishScale * sigma_pix, cfg.tv_inner_iters, &theta);
  ProjectToCells(op, y, theta, std::max(cfg.consistency_slack, 0.0), x);
  return Status::kOk;
}

NoisyDenoiser MakeDampDenoiser(DampDenoiser kind, size_t n_v, size_t n_h,
                               size_t tv_inner_iters) {
  if (kind == DampDenoiser::kTv) {
    return [n_v, n_h, tv_inner_iters](const std::vector<double>& v, double sigma_hat,
                                      std::vector<double>* out) {
      const double weight = std::max(kDampTvScale * sigma_hat, 1e-6);
      TvDenoise(v, n_v, n_h, weight, tv_inner_iters, out);
    };
  }
  return [n_v, n_h](const std::vector<double>& v, double sigma_hat, std::vector<double>* out) {
    const double sigma =
        std::clamp(kDampBlurScale * sigma_hat, kDampBlurSigmaMin, kDampBlurSigmaMax);
    GaussianBlur(v, n_v, n_h, sigma, out);
  };
}

Status MonteCarloDivergence(const std::function<void(const std::vector<double>&,
                                                     std::vector<double>*)>& denoise,
                            const std::vector<double>& v, double eps, NormalSampler* sampler,
                            double* out) {
  const size_t n = v.size();
  std::vector<double> eta(n), perturbed(n), base, shifted;
  for (size_t i = 0; i < n; ++i) eta[i] = sampler->Next();
  for (size_t i = 0; i < n; ++i) perturbed[i] = v[i] + eps * eta[i];
  denoise(v, &base);
  denoise(perturbed, &shifted);
  double div = 0.0;
  for (size_t i = 0; i < n; ++i) div += eta[i] * (shifted[i] - base[i]);
  div /= eps;
  if (!std::isfinite(div)) return Status::kNumericalFailure;
  *out = div;
  return Status::kOk;
}

Status DampDomain(const std::vector<double>& y, const LinearOperator& op,
                  const ReconConfig& cfg, const NoisyDenoiser& denoise, std::vector<double>* x,
                  std::vector<double>* residual_trace) {
  const size_t m = op.NumMeasurements();
  if (y.size() != m) return Status::kBadDimensions;
  NormalSampler sampler(cfg.rng_seed);
  std::vector<double> z, v, prev, applied;
  op.ApplyTranspose(y, x);
  op.Apply(*x, &z);
  for (size_t i = 0; i < m; ++i) z[i] = y[i] - z[i];
  if (residual_trace != nullptr) {
    residual_trace->clear();
    residual_trace->push_back(Norm2(z));
  }
  for (size_t it = 0; it < cfg.max_iters; ++it) {
    const double sigma_hat =
        std::max(Norm2(z) / std::sqrt(static_cast<double>(m)), cfg.sigma_floor);
    op.ApplyTranspose(z, &v);
    for (size_t i = 0; i < v.size(); ++i) v[i] += (*x)[i];
    double vmax = 0.0;
    for (double t : v) vmax = std::max(vmax, std::abs(t));
    const double eps = cfg.mc_probe_eps * (vmax + 1e-3) / 1000.0;
    auto fixed_noise = [&denoise, sigma_hat](const std::vector<double>& in,
                                             std::vector<double>* o) {
      denoise(in, sigma_hat, o);
    };
    double div = 0.0;
    CSIC_RETURN_IF_ERROR(MonteCarloDivergence(fixed_noise, v, eps, &sampler, &div));
    prev = *x;
    denoise(v, sigma_hat, x);
    op.Apply(*x, &applied);
    const double onsager = div / static_cast<double>(m);
    double residual = 0.0;
    for (size_t i = 0; i < m; ++i) {
      const double r = y[i] - applied[i];
      residual += r * r;
      z[i] = r + z[i] * onsager;
    }
    if (residual_trace != nullptr) residual_trace->push_back(std::sqrt(residual));
    if (cfg.tol > 0.0 && RelativeChange(*x, prev) < cfg.tol) break;
  }
  return Status::kOk;
}

Status Reconstruct(const std::vector<double>& y, const SensingOperator& op,
                   const ReconConfig& cfg, ImagePlane* out) {
  std::vector<double> x;
  if (cfg.algorithm == ReconAlgo::kGapTv) {
    CSIC_RETURN_IF_ERROR(GapTvDomain(y, op, op.pad_v(), op.pad_h(), cfg, &x));
  } else {
    const NoisyDenoiser denoise =
        MakeDampDenoiser(cfg.denoiser, op.pad_v(), op.pad_h(), cfg.tv_inner_iters);
    CSIC_RETURN_IF_ERROR(DampDomain(y, op, cfg, denoise, &x));
  }
  op.DomainToPlane(x, out);
  return Status::kOk;
}

}  // namespace csic
