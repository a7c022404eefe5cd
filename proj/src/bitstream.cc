// Copyright 2026 The CSIC Authors. All Rights Reserved.
//
// Use of this source code is governed by an MIT-style
// license that can be found in the LICENSE file or at
// https://opensource.org/licenses/MIT.

#include "csic/bitstream.h"

#include <cstring>

namespace csic {

namespace {

constexpr uint8_t kMagic[4] = {'C', 'S', 'I', 'C'};
constexpr uint32_t kVersion = 1;

}  // namespace

Status WriteStream(const CodedImage& coded, std::vector<uint8_t>* out, WriteLayout* layout) {
  const CodedHeader& h = coded.header;
  if (h.m < 1 || coded.merged_labels.size() + 1 != h.m) return Status::kMismatch;
  uint64_t tiled = 0;
  for (const SectionSpan& s : coded.sections) tiled += s.length;
  if (tiled != coded.merged_labels.size()) return Status::kMismatch;

  ByteSink sink;
  sink.PutBytes(kMagic, sizeof(kMagic));
  sink.PutUnboundedUint(h.version);
  sink.PutUnboundedUint(h.n_v);
  sink.PutUnboundedUint(h.n_h);
  sink.PutUnboundedUint(h.bits_per_pixel);
  sink.PutUnboundedUint(static_cast<uint64_t>(h.kind));
  sink.PutUnboundedUint(h.seed);
  sink.PutUnboundedUint(h.m);
  sink.PutReal(h.csr);
  sink.PutReal(h.c_const);
  if (layout != nullptr) layout->header_end = sink.size();

  sink.PutReal(coded.mu);
  sink.PutReal(coded.step);
  sink.PutUnboundedUint(coded.l_max);
  sink.PutUnboundedInt(coded.dc_code);
  if (layout != nullptr) layout->globals_end = sink.size();

  sink.PutUnboundedUint(coded.sections.size());
  std::vector<uint8_t> hfs_bits;
  hfs_bits.reserve(2 * coded.sections.size());
  for (const SectionSpan& s : coded.sections) {
    const uint8_t code = static_cast<uint8_t>(s.hfs);
    hfs_bits.push_back((code >> 1) & 1);
    hfs_bits.push_back(code & 1);
  }
  sink.PutBitArray(hfs_bits);
  for (const SectionSpan& s : coded.sections) {
    if (s.histogram.l_max != static_cast<int>(coded.l_max)) return Status::kMismatch;
    if (s.histogram.Total() != s.length) return Status::kMismatch;
    EncodeHistogram(s.histogram, s.hfs, &sink);
    std::vector<uint8_t> ac;
    CSIC_RETURN_IF_ERROR(
        AcEncode(coded.merged_labels.data() + s.start, s.length, s.histogram, &ac));
    sink.PutUnboundedUint(ac.size());
    const size_t ac_begin = sink.size();
    sink.PutBytes(ac.data(), ac.size());
    if (layout != nullptr) layout->ac_payloads.emplace_back(ac_begin, sink.size());
  }
  if (layout != nullptr) layout->sections_end = sink.size();

  sink.PutUnboundedUint(coded.extras.size());
  for (int64_t e : coded.extras) sink.PutUnboundedInt(e);
  if (layout != nullptr) layout->extras_end = sink.size();

  *out = sink.bytes();
  return Status::kOk;
}

Status ReadStream(const std::vector<uint8_t>& bytes, CodedImage* out) {
  ByteSource src(bytes.data(), bytes.size());
  uint8_t magic[4];
  CSIC_RETURN_IF_ERROR(src.GetBytes(magic, sizeof(magic)));
  if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) return Status::kBadMagic;

  CodedHeader& h = out->header;
  uint64_t v = 0;
  CSIC_RETURN_IF_ERROR(src.GetUnboundedUint(&v));
  if (v != kVersion) return Status::kBadVersion;
  h.version = static_cast<uint32_t>(v);
  CSIC_RETURN_IF_ERROR(src.GetUnboundedUint(&v));
  if (v == 0 || v > 0xFFFFFFFFu) return Status::kCorrupt;
  h.n_v = static_cast<uint32_t>(v);
  CSIC_RETURN_IF_ERROR(src.GetUnboundedUint(&v));
  if (v == 0 || v > 0xFFFFFFFFu) return Status::kCorrupt;
  h.n_h = static_cast<uint32_t>(v);
  CSIC_RETURN_IF_ERROR(src.GetUnboundedUint(&v));
  if (v != 8) return Status::kCorrupt;
  h.bits_per_pixel = static_cast<uint32_t>(v);
  CSIC_RETURN_IF_ERROR(src.GetUnboundedUint(&v));
  if (v > static_cast<uint64_t>(MatrixKind::kRotWht2d)) return Status::kCorrupt;
  h.kind = static_cast<MatrixKind>(v);
  CSIC_RETURN_IF_ERROR(src.GetUnboundedUint(&h.seed));
  CSIC_RETURN_IF_ERROR(src.GetUnboundedUint(&v));
  if (v == 0 || v > 0xFFFFFFFFu) return Status::kCorrupt;
  h.m = static_cast<uint32_t>(v);
  CSIC_RETURN_IF_ERROR(src.GetReal(&h.csr));
  CSIC_RETURN_IF_ERROR(src.GetReal(&h.c_const));
  if (!(h.csr > 0.0 && h.csr <= 1.0)) return Status::kCorrupt;

  CSIC_RETURN_IF_ERROR(src.GetReal(&out->mu));
  CSIC_RETURN_IF_ERROR(src.GetReal(&out->step));
  if (!(out->step > 0.0)) return Status::kCorrupt;
  CSIC_RETURN_IF_ERROR(src.GetUnboundedUint(&v));
  if (v == 0 || v > (1u << 24)) return Status::kCorrupt;
  out->l_max = static_cast<uint32_t>(v);
  CSIC_RETURN_IF_ERROR(src.GetUnboundedInt(&out->dc_code));

  uint64_t n_sections = 0;
  CSIC_RETURN_IF_ERROR(src.GetUnboundedUint(&n_sections));
  if (n_sections > h.m) return Status::kCorrupt;
  std::vector<uint8_t> hfs_bits;
  CSIC_RETURN_IF_ERROR(src.GetBitArray(2 * n_sections, &hfs_bits));

  out->sections.clear();
  out->merged_labels.clear();
  uint64_t covered = 0;
  for (uint64_t j = 0; j < n_sections; ++j) {
    const uint8_t code = static_cast<uint8_t>((hfs_bits[2 * j] << 1) | hfs_bits[2 * j + 1]);
    if (code > 2) return Status::kCorrupt;
    SectionSpan span;
    span.hfs = static_cast<HistFormat>(code);
    CSIC_RETURN_IF_ERROR(
        DecodeHistogram(span.hfs, static_cast<int>(out->l_max), &src, &span.histogram));
    const uint64_t n_symbols = span.histogram.Total();
    if (n_symbols == 0) return Status::kCorrupt;
    uint64_t ac_len = 0;
    CSIC_RETURN_IF_ERROR(src.GetUnboundedUint(&ac_len));
    if (ac_len > src.remaining()) return Status::kTruncated;
    std::vector<int32_t> labels;
    CSIC_RETURN_IF_ERROR(AcDecode(src.cur(), ac_len, span.histogram, n_symbols, &labels));
    CSIC_RETURN_IF_ERROR(src.Skip(ac_len));
    span.start = covered;
    span.length = n_symbols;
    covered += n_symbols;
    if (covered > h.m - 1) return Status::kMismatch;
    out->merged_labels.insert(out->merged_labels.end(), labels.begin(), labels.end());
    out->sections.push_back(std::move(span));
  }
  if (covered != h.m - 1) return Status::kMismatch;

  uint64_t n_extras = 0;
  CSIC_RETURN_IF_ERROR(src.GetUnboundedUint(&n_extras));
  uint64_t saturated = 0;
  for (int32_t label : out->merged_labels) {
    if (label == static_cast<int32_t>(out->l_max)) ++saturated;
  }
  // Zero extras with saturated labels present means the writer omitted them;
  // the decoder then falls back to discarding the saturated rows.
  if (n_extras != saturated && n_extras != 0) return Status::kMismatch;
  out->extras.resize(n_extras);
  for (uint64_t i = 0; i < n_extras; ++i) {
    CSIC_RETURN_IF_ERROR(src.GetUnboundedInt(&out->extras[i]));
  }
  return Status::kOk;
}

Status BuildCodedImage(const CodedHeader& header, const QuantizedPayload& payload,
                       CodedImage* out) {
  out->header = header;
  out->mu = payload.params.mu;
  out->step = payload.params.step;
  out->l_max = static_cast<uint32_t>(payload.params.l_max);
  out->dc_code = payload.dc_code;
  out->merged_labels = MergedLabels(payload);
  out->extras = payload.saturated_extras;
  out->sections = PartitionSections(out->merged_labels.data(), out->merged_labels.size(),
                                    payload.params.l_max);
  return Status::kOk;
}

Status ExtractPayload(const CodedImage& coded, QuantizedPayload* out) {
  out->params.mu = coded.mu;
  out->params.step = coded.step;
  out->params.l_max = static_cast<int>(coded.l_max);
  out->params.c_const = coded.header.c_const;
  out->dc_code = coded.dc_code;
  out->codewords = coded.merged_labels;
  out->saturated_extras = coded.extras;
  return Status::kOk;
}

}  // namespace csic
