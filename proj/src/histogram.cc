// Copyright 2026 The CSIC Authors. All Rights Reserved.
//
// Use of this source code is governed by an MIT-style
// license that can be found in the LICENSE file or at
// https://opensource.org/licenses/MIT.

#include "csic/histogram.h"

#include <algorithm>
#include <cmath>

#include "csic/arith.h"

namespace csic {

namespace {

int BitsFor(uint64_t max_value) {
  int b = 1;
  while ((uint64_t{1} << b) <= max_value && b < 63) ++b;
  return b;  // smallest b with 2^b > max_value
}

// Cumulative frequency table for the arithmetic coder.
std::vector<uint32_t> Cumulative(const Histogram& h) {
  std::vector<uint32_t> cum(h.counts.size() + 1, 0);
  for (size_t i = 0; i < h.counts.size(); ++i) {
    cum[i + 1] = cum[i] + static_cast<uint32_t>(h.counts[i]);
  }
  return cum;
}

}  // namespace

Histogram Histogram::FromLabels(const int32_t* labels, size_t n, int l_max) {
  Histogram h;
  h.l_max = l_max;
  h.counts.assign(2 * static_cast<size_t>(l_max), 0);
  for (size_t i = 0; i < n; ++i) {
    CSIC_CHECK(labels[i] > -l_max && labels[i] <= l_max);
    ++h.counts[h.IndexOfLabel(labels[i])];
  }
  return h;
}

uint64_t Histogram::Total() const {
  uint64_t t = 0;
  for (uint64_t c : counts) t += c;
  return t;
}

size_t Histogram::NonzeroCount() const {
  size_t k = 0;
  for (uint64_t c : counts) k += (c != 0);
  return k;
}

size_t EncodedHistogramSize(const Histogram& h, HistFormat f) {
  const size_t n = h.AlphabetSize();
  size_t total = 0;
  switch (f) {
    case HistFormat::kFull:
      for (uint64_t c : h.counts) total += UnboundedUintLength(c);
      return total;
    case HistFormat::kFlagged:
      total = BitArrayLength(n);
      for (uint64_t c : h.counts) {
        if (c != 0) total += UnboundedUintLength(c);
      }
      return total;
    case HistFormat::kIndexed: {
      const size_t k = h.NonzeroCount();
      total = BitArrayLength(static_cast<size_t>(BitsFor(n)));  // K field
      total += BitArrayLength(k * static_cast<size_t>(BitsFor(n - 1)));
      for (uint64_t c : h.counts) {
        if (c != 0) total += UnboundedUintLength(c);
      }
      return total;
    }
  }
  CSIC_CHECK(false);
  return 0;
}

HistFormat PickHistogramFormat(const Histogram& h) {
  HistFormat best = HistFormat::kFull;
  size_t best_size = EncodedHistogramSize(h, HistFormat::kFull);
  for (HistFormat f : {HistFormat::kFlagged, HistFormat::kIndexed}) {
    size_t size = EncodedHistogramSize(h, f);
    if (size < best_size) {
      best = f;
      best_size = size;
    }
  }
  return best;
}

void EncodeHistogram(const Histogram& h, HistFormat f, ByteSink* sink) {
  const size_t n = h.AlphabetSize();
  switch (f) {
    case HistFormat::kFull:
      for (uint64_t c : h.counts) sink->PutUnboundedUint(c);
      return;
    case HistFormat::kFlagged: {
      std::vector<uint8_t> flags(n);
      for (size_t i = 0; i < n; ++i) flags[i] = h.counts[i] != 0;
      sink->PutBitArray(flags);
      for (uint64_t c : h.counts) {
        if (c != 0) sink->PutUnboundedUint(c);
      }
      return;
    }
    case HistFormat::kIndexed: {
      std::vector<uint64_t> indices;
      for (size_t i = 0; i < n; ++i) {
        if (h.counts[i] != 0) indices.push_back(i);
      }
      sink->PutBoundedUintArray({indices.size()}, BitsFor(n));
      sink->PutBoundedUintArray(indices, BitsFor(n - 1));
      for (uint64_t i : indices) sink->PutUnboundedUint(h.counts[i]);
      return;
    }
  }
  CSIC_CHECK(false);
}

Status DecodeHistogram(HistFormat f, int l_max, ByteSource* src, Histogram* out) {
  if (l_max < 1) return Status::kCorrupt;
  const size_t n = 2 * static_cast<size_t>(l_max);
  out->l_max = l_max;
  out->counts.assign(n, 0);
  switch (f) {
    case HistFormat::kFull:
      for (size_t i = 0; i < n; ++i) {
        CSIC_RETURN_IF_ERROR(src->GetUnboundedUint(&out->counts[i]));
      }
      return Status::kOk;
    case HistFormat::kFlagged: {
      std::vector<uint8_t> flags;
      CSIC_RETURN_IF_ERROR(src->GetBitArray(n, &flags));
      for (size_t i = 0; i < n; ++i) {
        if (flags[i]) {
          CSIC_RETURN_IF_ERROR(src->GetUnboundedUint(&out->counts[i]));
          if (out->counts[i] == 0) return Status::kCorrupt;
        }
      }
      return Status::kOk;
    }
    case HistFormat::kIndexed: {
      std::vector<uint64_t> k_field;
      CSIC_RETURN_IF_ERROR(src->GetBoundedUintArray(1, BitsFor(n), &k_field));
      const uint64_t k = k_field[0];
      if (k > n) return Status::kCorrupt;
      std::vector<uint64_t> indices;
      CSIC_RETURN_IF_ERROR(src->GetBoundedUintArray(k, BitsFor(n - 1), &indices));
      for (size_t j = 0; j < k; ++j) {
        if (indices[j] >= n) return Status::kCorrupt;
        if (j > 0 && indices[j] <= indices[j - 1]) return Status::kCorrupt;
      }
      for (uint64_t i : indices) {
        CSIC_RETURN_IF_ERROR(src->GetUnboundedUint(&out->counts[i]));
        if (out->counts[i] == 0) return Status::kCorrupt;
      }
      return Status::kOk;
    }
  }
  return Status::kCorrupt;
}

uint64_t EstimateAcBits(const Histogram& h) {
  const double total = static_cast<double>(h.Total());
  CSIC_CHECK(total > 0);
  if (h.NonzeroCount() == 1) return 0;
  double bits = 0.0;
  for (uint64_t c : h.counts) {
    if (c == 0) continue;
    bits += static_cast<double>(c) * std::log2(total / static_cast<double>(c));
  }
  const double bytes = std::ceil((bits - 1e-6) / 8.0);
  return 8 * static_cast<uint64_t>(bytes < 0 ? 0 : bytes);
}

Status AcEncode(const int32_t* labels, size_t n, const Histogram& h, std::vector<uint8_t>* out) {
  out->clear();
  if (n == 0 || h.NonzeroCount() == 1) {
    for (size_t i = 0; i < n; ++i) {
      if (h.counts[h.IndexOfLabel(labels[i])] == 0) return Status::kBadArgument;
    }
    return Status::kOk;
  }
  const uint64_t total64 = h.Total();
  if (total64 > (1u << 30)) return Status::kBadArgument;
  const uint32_t total = static_cast<uint32_t>(total64);
  const std::vector<uint32_t> cum = Cumulative(h);
  ArithEncoder enc;
  for (size_t i = 0; i < n; ++i) {
    const size_t s = h.IndexOfLabel(labels[i]);
    if (s >= h.counts.size() || h.counts[s] == 0) return Status::kBadArgument;
    enc.Encode(cum[s], cum[s + 1], total);
  }
  *out = enc.Finish();
  return Status::kOk;
}

Status AcDecode(const uint8_t* data, size_t size, const Histogram& h, size_t n,
                std::vector<int32_t>* labels) {
  labels->clear();
  labels->reserve(n);
  if (h.Total() != n) return Status::kMismatch;
  if (n == 0) return Status::kOk;
  if (h.NonzeroCount() == 1) {
    int32_t label = 0;
    for (size_t i = 0; i < h.counts.size(); ++i) {
      if (h.counts[i] != 0) label = h.LabelOfIndex(i);
    }
    labels->assign(n, label);
    return Status::kOk;
  }
  const uint32_t total = static_cast<uint32_t>(h.Total());
  const std::vector<uint32_t> cum = Cumulative(h);
  ArithDecoder dec(data, size);
  for (size_t i = 0; i < n; ++i) {
    const uint32_t target = dec.DecodeTarget(total);
    if (target >= total) return Status::kCorrupt;
    // Find s with cum[s] <= target < cum[s+1].
    const size_t s =
        static_cast<size_t>(std::upper_bound(cum.begin(), cum.end(), target) - cum.begin()) - 1;
    if (s >= h.counts.size() || h.counts[s] == 0) return Status::kCorrupt;
    dec.Advance(cum[s], cum[s + 1], total);
    labels->push_back(h.LabelOfIndex(s));
  }
  return Status::kOk;
}

}  // namespace csic
