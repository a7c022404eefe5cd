// Copyright 2026 The CSIC Authors. All Rights Reserved.
//
// Use of this source code is governed by an MIT-style
// license that can be found in the LICENSE file or at
// https://opensource.org/licenses/MIT.

#ifndef CSIC_METRICS_H_
#define CSIC_METRICS_H_

#include "csic/image.h"
#include "csic/status.h"

namespace csic {

// Mean SSIM over fully interior 11x11 Gaussian windows (sigma 1.5,
// K1 = 0.01, K2 = 0.03, dynamic range 255). Symmetric in its arguments.
Status Ssim(const ImagePlane& a, const ImagePlane& b, double* out);

// 10 * log10(255^2 / MSE); +infinity for identical images.
Status Psnr(const ImagePlane& a, const ImagePlane& b, double* out);

}  // namespace csic

#endif  // CSIC_METRICS_H_
