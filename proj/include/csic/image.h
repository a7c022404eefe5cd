// Copyright 2026 The CSIC Authors. All Rights Reserved.
//
// Use of this source code is governed by an MIT-style
// license that can be found in the LICENSE file or at
// https://opensource.org/licenses/MIT.

#ifndef CSIC_IMAGE_H_
#define CSIC_IMAGE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "csic/status.h"

namespace csic {

// 8-bit grayscale image, row-major storage.
struct ImagePlane {
  size_t height = 0;  // N_v
  size_t width = 0;   // N_h
  std::vector<uint8_t> pixels;

  size_t size() const { return height * width; }
  uint8_t at(size_t row, size_t col) const { return pixels[row * width + col]; }
};

// Binary PGM (P5), maxval 255.
Status ReadPgm(const std::string& path, ImagePlane* out);
Status WritePgm(const ImagePlane& img, const std::string& path);

}  // namespace csic

#endif  // CSIC_IMAGE_H_
