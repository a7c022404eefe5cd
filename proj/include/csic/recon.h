// Copyright 2026 The CSIC Authors. All Rights Reserved.
//
// Use of this source code is governed by an MIT-style
// license that can be found in the LICENSE file or at
// https://opensource.org/licenses/MIT.

#ifndef CSIC_RECON_H_
#define CSIC_RECON_H_

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "csic/image.h"
#include "csic/sensing.h"
#include "csic/status.h"

namespace csic {

enum class ReconAlgo : uint8_t {
  kGapTv = 0,
  kDamp = 1,
};

const char* ReconAlgoName(ReconAlgo algo);
Status ParseReconAlgo(const std::string& name, ReconAlgo* algo);

enum class DampDenoiser : uint8_t {
  kTv = 0,
  kGaussian = 1,
};

// Defaults tuned once on the fixture corpus and frozen.
inline constexpr double kGapTvWeight = 0.07 * 255.0;
inline constexpr size_t kGapTvIters = 100;
inline constexpr size_t kDampIters = 30;
inline constexpr size_t kTvInnerIters = 20;
inline constexpr double kGapTvPolishScale = 1.0;
inline constexpr double kDampTvScale = 0.6;
inline constexpr double kDampBlurScale = 0.05;
inline constexpr double kDampBlurSigmaMin = 0.4;
inline constexpr double kDampBlurSigmaMax = 2.5;

struct ReconConfig {
  ReconAlgo algorithm = ReconAlgo::kGapTv;
  size_t max_iters = kGapTvIters;
  double tol = 1e-4;
  double tv_weight = kGapTvWeight;
  size_t tv_inner_iters = kTvInnerIters;
  DampDenoiser denoiser = DampDenoiser::kTv;
  double mc_probe_eps = 1.0;
  uint64_t rng_seed = 0x5eed0d1fULL;
  // Known measurement noise level. Lower-bounds the D-AMP noise estimate
  // (orthonormal rows make the initial residual exactly zero) and sets the
  // weight of the GAP-TV output polish. The decoder seeds this with the
  // quantizer noise budget; 0 disables both.
  double sigma_floor = 0.0;
  // Per-measurement halfwidth within which the polished GAP-TV output may
  // deviate from y. Quantized measurements only locate the truth inside a
  // cell of halfwidth step/2, so the decoder seeds this with that value; 0
  // forces exact measurement consistency.
  double consistency_slack = 0.0;
};

// Deterministic standard-normal stream (Box-Muller over 53-bit uniforms).
class NormalSampler {
 public:
  explicit NormalSampler(uint64_t seed) : g_(seed) {}
  double Next();

 private:
  std::mt19937_64 g_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Euclidean projection onto {x : op(x) = y} for operators with orthonormal
// rows: out = theta + op^T(y - op(theta)).
Status ProjectConsistent(const LinearOperator& op, const std::vector<double>& y,
                         const std::vector<double>& theta, std::vector<double>* out);

// Approximately solves min_t 0.5*|v - t|^2 + weight*(|Dh t|_1 + |Dv t|_1) by
// projected gradient on the dual, step 1/(8*weight), with forward differences
// that vanish at the last row and column. The output is clamped to
// [min(v), max(v)]. If objective_trace is non-null it receives the dual
// smooth objective 0.5*|v - weight*D^T p|^2 after every inner iteration.
void TvDenoise(const std::vector<double>& v, size_t n_v, size_t n_h, double weight,
               size_t inner_iters, std::vector<double>* out,
               std::vector<double>* objective_trace = nullptr);

// Separable Gaussian blur, kernel radius ceil(3*sigma), truncated taps
// renormalized at the borders.
void GaussianBlur(const std::vector<double>& v, size_t n_v, size_t n_h, double sigma,
                  std::vector<double>* out);

// Alternates exact consistency projection and TV denoising from
// x0 = op^T(y), over the (possibly padded) domain grid. Returns the
// projection of the final iterate; when cfg.sigma_floor is positive the
// projected iterate is additionally denoised at the known noise level and
// pulled back to within cfg.consistency_slack of each measurement.
Status GapTvDomain(const std::vector<double>& y, const LinearOperator& op, size_t n_v,
                   size_t n_h, const ReconConfig& cfg, std::vector<double>* x);

// Image-domain denoiser parameterized by the iteration's noise estimate.
using NoisyDenoiser =
    std::function<void(const std::vector<double>& v, double sigma_hat, std::vector<double>* out)>;

NoisyDenoiser MakeDampDenoiser(DampDenoiser kind, size_t n_v, size_t n_h,
                               size_t tv_inner_iters = kTvInnerIters);

// One-probe Monte-Carlo divergence estimate of a denoiser at v:
// eta^T (D(v + eps*eta) - D(v)) / eps with eta standard normal.
// Fails with kNumericalFailure if the estimate is not finite.
Status MonteCarloDivergence(const std::function<void(const std::vector<double>&,
                                                     std::vector<double>*)>& denoise,
                            const std::vector<double>& v, double eps, NormalSampler* sampler,
                            double* out);

// Approximate message passing with an Onsager-corrected residual:
//   v = x + op^T(z); x' = D(v, sigma_hat); z' = y - op(x') + z * div(D)/M
// with sigma_hat = |z|/sqrt(M) and div estimated by one Monte-Carlo probe.
// If residual_trace is non-null it receives |y - op(x)| after the initial
// x0 = op^T(y) and after every iteration.
Status DampDomain(const std::vector<double>& y, const LinearOperator& op,
                  const ReconConfig& cfg, const NoisyDenoiser& denoise, std::vector<double>* x,
                  std::vector<double>* residual_trace = nullptr);

// Dispatches on cfg.algorithm, then rounds, clips, and crops padding.
Status Reconstruct(const std::vector<double>& y, const SensingOperator& op,
                   const ReconConfig& cfg, ImagePlane* out);

}  // namespace csic

#endif  // CSIC_RECON_H_
