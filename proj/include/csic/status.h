// Copyright 2026 The CSIC Authors. All Rights Reserved.
//
// Use of this source code is governed by an MIT-style
// license that can be found in the LICENSE file or at
// https://opensource.org/licenses/MIT.

#ifndef CSIC_STATUS_H_
#define CSIC_STATUS_H_

#include <cstdio>
#include <cstdlib>

namespace csic {

enum class Status {
  kOk = 0,
  kBadMagic,          // stream does not start with "CSIC"
  kBadVersion,        // unknown stream version
  kTruncated,         // stream ended mid-field
  kCorrupt,           // field value outside its legal range
  kMismatch,          // cross-field inconsistency (counts, extras)
  kBadDimensions,     // image/operator dimension disagreement
  kBadArgument,       // caller violated an operation precondition
  kDegenerateInput,   // e.g. constant image (zero AC deviation)
  kNumericalFailure,  // non-finite intermediate value
  kIoError,           // file unreadable or unwritable
};

const char* StatusMessage(Status s);

static inline bool ok(Status s) { return s == Status::kOk; }

#define CSIC_RETURN_IF_ERROR(expr)                   \
  do {                                               \
    ::csic::Status status_ = (expr);                 \
    if (status_ != ::csic::Status::kOk) return status_; \
  } while (0)

#define CSIC_CHECK(cond)                                                   \
  do {                                                                     \
    if (!(cond)) {                                                         \
      std::fprintf(stderr, "CSIC_CHECK failed at %s:%d: %s\n", __FILE__,   \
                   __LINE__, #cond);                                       \
      std::abort();                                                        \
    }                                                                      \
  } while (0)

}  // namespace csic

#endif  // CSIC_STATUS_H_
