// Copyright 2026 The CSIC Authors. All Rights Reserved.
//
// Use of this source code is governed by an MIT-style
// license that can be found in the LICENSE file or at
// https://opensource.org/licenses/MIT.

#include "csic/image.h"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace csic {

namespace {

// Reads one PGM token, skipping whitespace and '#' comments.
bool NextToken(FILE* f, char* buf, size_t buf_len) {
  int c;
  for (;;) {
    c = std::fgetc(f);
    if (c == EOF) return false;
    if (c == '#') {
      while (c != EOF && c != '\n') c = std::fgetc(f);
      continue;
    }
    if (!std::isspace(c)) break;
  }
  size_t n = 0;
  while (c != EOF && !std::isspace(c)) {
    if (n + 1 >= buf_len) return false;
    buf[n++] = static_cast<char>(c);
    c = std::fgetc(f);
  }
  buf[n] = '\0';
  return n > 0;
}

bool ParseSize(const char* s, size_t* out) {
  char* end = nullptr;
  unsigned long long v = std::strtoull(s, &end, 10);
  if (end == s || *end != '\0') return false;
  *out = static_cast<size_t>(v);
  return true;
}

}  // namespace

Status ReadPgm(const std::string& path, ImagePlane* out) {
  FILE* f = std::fopen(path.c_str(), "rb");
  if (f == nullptr) return Status::kIoError;
  char tok[64];
  size_t w = 0, h = 0, maxval = 0;
  bool header_ok = NextToken(f, tok, sizeof(tok)) && std::strcmp(tok, "P5") == 0 &&
                   NextToken(f, tok, sizeof(tok)) && ParseSize(tok, &w) &&
                   NextToken(f, tok, sizeof(tok)) && ParseSize(tok, &h) &&
                   NextToken(f, tok, sizeof(tok)) && ParseSize(tok, &maxval);
  if (!header_ok || w == 0 || h == 0 || maxval != 255) {
    std::fclose(f);
    return Status::kCorrupt;
  }
  out->width = w;
  out->height = h;
  out->pixels.resize(w * h);
  size_t got = std::fread(out->pixels.data(), 1, w * h, f);
  std::fclose(f);
  if (got != w * h) return Status::kTruncated;
  return Status::kOk;
}

Status WritePgm(const ImagePlane& img, const std::string& path) {
  if (img.width == 0 || img.height == 0 || img.pixels.size() != img.size()) {
    return Status::kBadDimensions;
  }
  FILE* f = std::fopen(path.c_str(), "wb");
  if (f == nullptr) return Status::kIoError;
  std::fprintf(f, "P5\n%zu %zu\n255\n", img.width, img.height);
  size_t put = std::fwrite(img.pixels.data(), 1, img.pixels.size(), f);
  int close_err = std::fclose(f);
  if (put != img.pixels.size() || close_err != 0) return Status::kIoError;
  return Status::kOk;
}

}  // namespace csic
