// Copyright 2026 The CSIC Authors. All Rights Reserved.
//
// Use of this source code is governed by an MIT-style
// license that can be found in the LICENSE file or at
// https://opensource.org/licenses/MIT.

#include "csic/status.h"

namespace csic {

const char* StatusMessage(Status s) {
  switch (s) {
    case Status::kOk: return "ok";
    case Status::kBadMagic: return "not a CSIC stream (bad magic)";
    case Status::kBadVersion: return "unsupported stream version";
    case Status::kTruncated: return "truncated stream";
    case Status::kCorrupt: return "corrupt field value";
    case Status::kMismatch: return "inconsistent stream (count mismatch)";
    case Status::kBadDimensions: return "dimension mismatch";
    case Status::kBadArgument: return "invalid argument";
    case Status::kDegenerateInput: return "degenerate input";
    case Status::kNumericalFailure: return "numerical failure";
    case Status::kIoError: return "i/o error";
  }
  return "unknown status";
}

}  // namespace csic
