// Copyright 2026 The CSIC Authors. All Rights Reserved.
//
// Use of this source code is governed by an MIT-style
// license that can be found in the LICENSE file or at
// https://opensource.org/licenses/MIT.

#include "csic/metrics.h"

#include <cmath>
#include <limits>
#include <vector>

namespace csic {

namespace {

constexpr int kWindow = 11;
constexpr int kRadius = kWindow / 2;
constexpr double kSigma = 1.5;
constexpr double kK1 = 0.01;
constexpr double kK2 = 0.03;
constexpr double kRange = 255.0;

std::vector<double> GaussianTaps() {
  std::vector<double> taps(kWindow);
  double sum = 0.0;
  for (int i = 0; i < kWindow; ++i) {
    const double d = i - kRadius;
    taps[i] = std::exp(-(d * d) / (2.0 * kSigma * kSigma));
    sum += taps[i];
  }
  for (double& t : taps) t /= sum;
  return taps;
}

// Separable valid-mode Gaussian filter; output is (h-10) x (w-10).
void Blur(const std::vector<double>& img, size_t h, size_t w, const std::vector<double>& taps,
          std::vector<double>* out) {
  const size_t out_w = w - 2 * kRadius;
  const size_t out_h = h - 2 * kRadius;
  std::vector<double> rows(h * out_w);
  for (size_t r = 0; r < h; ++r) {
    for (size_t c = 0; c < out_w; ++c) {
      double acc = 0.0;
      for (int t = 0; t < kWindow; ++t) acc += taps[t] * img[r * w + c + t];
      rows[r * out_w + c] = acc;
    }
  }
  out->resize(out_h * out_w);
  for (size_t r = 0; r < out_h; ++r) {
    for (size_t c = 0; c < out_w; ++c) {
      double acc = 0.0;
      for (int t = 0; t < kWindow; ++t) acc += taps[t] * rows[(r + t) * out_w + c];
      (*out)[r * out_w + c] = acc;
    }
  }
}

}  // namespace

Status Ssim(const ImagePlane& a, const ImagePlane& b, double* out) {
  if (a.height != b.height || a.width != b.width) return Status::kBadDimensions;
  if (a.height < kWindow || a.width < kWindow) return Status::kBadDimensions;
  const size_t n = a.size();
  std::vector<double> x(n), y(n), xx(n), yy(n), xy(n);
  for (size_t i = 0; i < n; ++i) {
    x[i] = a.pixels[i];
    y[i] = b.pixels[i];
    xx[i] = x[i] * x[i];
    yy[i] = y[i] * y[i];
    xy[i] = x[i] * y[i];
  }
  const std::vector<double> taps = GaussianTaps();
  std::vector<double> mx, my, mxx, myy, mxy;
  Blur(x, a.height, a.width, taps, &mx);
  Blur(y, a.height, a.width, taps, &my);
  Blur(xx, a.height, a.width, taps, &mxx);
  Blur(yy, a.height, a.width, taps, &myy);
  Blur(xy, a.height, a.width, taps, &mxy);

  const double c1 = (kK1 * kRange) * (kK1 * kRange);
  const double c2 = (kK2 * kRange) * (kK2 * kRange);
  double total = 0.0;
  for (size_t i = 0; i < mx.size(); ++i) {
    const double var_x = mxx[i] - mx[i] * mx[i];
    const double var_y = myy[i] - my[i] * my[i];
    const double cov = mxy[i] - mx[i] * my[i];
    const double num = (2.0 * mx[i] * my[i] + c1) * (2.0 * cov + c2);
    const double den = (mx[i] * mx[i] + my[i] * my[i] + c1) * (var_x + var_y + c2);
    total += num / den;
  }
  *out = total / static_cast<double>(mx.size());
  return Status::kOk;
}

Status Psnr(const ImagePlane& a, const ImagePlane& b, double* out) {
  if (a.height != b.height || a.width != b.width) return Status::kBadDimensions;
  double mse = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double d = static_cast<double>(a.pixels[i]) - static_cast<double>(b.pixels[i]);
    mse += d * d;
  }
  mse /= static_cast<double>(a.size());
  if (mse == 0.0) {
    *out = std::numeric_limits<double>::infinity();
    return Status::kOk;
  }
  *out = 10.0 * std::log10(kRange * kRange / mse);
  return Status::kOk;
}

}  // namespace csic
