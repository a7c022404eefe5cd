// Copyright 2026 The CSIC Authors. All Rights Reserved.
//
// Use of this source code is governed by an MIT-style
// license that can be found in the LICENSE file or at
// https://opensource.org/licenses/MIT.

#include "csic/sections.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

namespace csic {

namespace {

// Sorted (label, count) pairs; sections near the leaves touch only a few
// labels, so nodes carry sparse histograms to keep the partition memory
// proportional to the data rather than to the alphabet.
using SparseHist = std::vector<std::pair<int32_t, uint64_t>>;

int BitsFor(uint64_t max_value) {
  int b = 1;
  while ((uint64_t{1} << b) <= max_value && b < 63) ++b;
  return b;
}

uint64_t SparseSectionBits(const SparseHist& h, int l_max) {
  const size_t alphabet = 2 * static_cast<size_t>(l_max);
  const size_t k = h.size();
  uint64_t total = 0;
  uint64_t count_bytes = 0;
  for (const auto& [label, c] : h) {
    total += c;
    count_bytes += UnboundedUintLength(c);
  }
  // Shortest histogram encoding, computed without materializing zeros.
  const uint64_t full = (alphabet - k) + count_bytes;
  const uint64_t flagged = BitArrayLength(alphabet) + count_bytes;
  const uint64_t indexed = BitArrayLength(static_cast<size_t>(BitsFor(alphabet))) +
                           BitArrayLength(k * static_cast<size_t>(BitsFor(alphabet - 1))) +
                           count_bytes;
  const uint64_t hist_bytes = std::min(full, std::min(flagged, indexed));
  uint64_t ac_bits = 0;
  if (k > 1) {
    double bits = 0.0;
    for (const auto& [label, c] : h) {
      bits += static_cast<double>(c) * std::log2(static_cast<double>(total) / static_cast<double>(c));
    }
    ac_bits = 8 * static_cast<uint64_t>(std::ceil((bits - 1e-6) / 8.0));
  }
  return ac_bits + 8 * hist_bytes + 2;
}

SparseHist MergeSparse(const SparseHist& a, const SparseHist& b) {
  SparseHist out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first) {
      out.push_back(a[i++]);
    } else if (b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  while (i < a.size()) out.push_back(a[i++]);
  while (j < b.size()) out.push_back(b[j++]);
  return out;
}

struct Node {
  size_t start = 0;
  size_t length = 0;
  SparseHist hist;
  uint64_t est_bits = 0;
  int prev = -1;
  int next = -1;
  bool alive = false;
};

// Ordered by (-gain, start, run length): begin() is the best merge.
using CandKey = std::tuple<int64_t, uint64_t, uint32_t>;

}  // namespace

uint64_t EstimateSectionBits(const Histogram& h) {
  return EstimateAcBits(h) + 8 * EncodedHistogramSize(h, PickHistogramFormat(h)) + 2;
}

std::vector<SectionSpan> PartitionSections(const int32_t* labels, size_t n, int l_max,
                                           int merge_window,
                                           std::vector<uint64_t>* total_bits_trace) {
  CSIC_CHECK(merge_window >= 2);
  std::vector<SectionSpan> result;
  if (n == 0) {
    if (total_bits_trace != nullptr) total_bits_trace->push_back(0);
    return result;
  }

  std::vector<Node> nodes(n);
  for (size_t i = 0; i < n; ++i) {
    Node& nd = nodes[i];
    nd.start = i;
    nd.length = 1;
    nd.hist = {{labels[i], 1}};
    nd.est_bits = SparseSectionBits(nd.hist, l_max);
    nd.prev = static_cast<int>(i) - 1;
    nd.next = i + 1 < n ? static_cast<int>(i) + 1 : -1;
    nd.alive = true;
  }

  uint64_t total_bits = 0;
  for (const Node& nd : nodes) total_bits += nd.est_bits;
  if (total_bits_trace != nullptr) total_bits_trace->push_back(total_bits);

  std::set<CandKey> candidates;
  // Keys of the candidates whose run starts at each node.
  std::vector<std::vector<CandKey>> keys_of(n);

  // (Re)build the candidate runs starting at node p.
  auto rebuild_from = [&](int p) {
    for (const CandKey& k : keys_of[p]) candidates.erase(k);
    keys_of[p].clear();
    SparseHist acc = nodes[p].hist;
    uint64_t sum = nodes[p].est_bits;
    int q = nodes[p].next;
    for (int len = 2; len <= merge_window && q >= 0; ++len) {
      acc = MergeSparse(acc, nodes[q].hist);
      sum += nodes[q].est_bits;
      const int64_t gain =
          static_cast<int64_t>(sum) - static_cast<int64_t>(SparseSectionBits(acc, l_max));
      if (gain > 0) {
        CandKey key{-gain, nodes[p].start, static_cast<uint32_t>(len)};
        candidates.insert(key);
        keys_of[p].push_back(key);
      }
      q = nodes[q].next;
    }
  };

  for (size_t i = 0; i < n; ++i) rebuild_from(static_cast<int>(i));

  while (!candidates.empty()) {
    const CandKey best = *candidates.begin();
    const auto [neg_gain, start, run_len] = best;
    // Locate the node by its start offset: it is still alive and owns `best`.
    // Nodes are found through the key list owner scan below.
    // Map start offset -> node index: starts never change, so a direct index
    // on the original position works.
    const int a = static_cast<int>(start);
    CSIC_CHECK(nodes[a].alive && nodes[a].start == start);

    // Drop candidates of every run that could overlap the merged window.
    int left_edge = a;
    for (int k = 0; k < merge_window - 1 && nodes[left_edge].prev >= 0; ++k) {
      left_edge = nodes[left_edge].prev;
    }
    for (int p = left_edge;; p = nodes[p].next) {
      for (const CandKey& key : keys_of[p]) candidates.erase(key);
      keys_of[p].clear();
      if (p == a) break;
    }
    // Absorb the run into node a.
    for (uint32_t k = 1; k < run_len; ++k) {
      const int b = nodes[a].next;
      CSIC_CHECK(b >= 0);
      for (const CandKey& key : keys_of[b]) candidates.erase(key);
      keys_of[b].clear();
      nodes[a].hist = MergeSparse(nodes[a].hist, nodes[b].hist);
      nodes[a].length += nodes[b].length;
      nodes[a].next = nodes[b].next;
      if (nodes[b].next >= 0) nodes[nodes[b].next].prev = a;
      nodes[b].alive = false;
    }
    nodes[a].est_bits = SparseSectionBits(nodes[a].hist, l_max);
    total_bits = static_cast<uint64_t>(static_cast<int64_t>(total_bits) + neg_gain);
    if (total_bits_trace != nullptr) total_bits_trace->push_back(total_bits);

    for (int p = left_edge;;) {
      rebuild_from(p);
      if (p == a) break;
      p = nodes[p].next;
    }
  }

  // Emit the surviving tiling in order.
  int head = 0;
  while (!nodes[head].alive) ++head;  // node 0 is always alive; defensive
  for (int p = head; p >= 0; p = nodes[p].next) {
    SectionSpan span;
    span.start = nodes[p].start;
    span.length = nodes[p].length;
    span.histogram.l_max = l_max;
    span.histogram.counts.assign(2 * static_cast<size_t>(l_max), 0);
    for (const auto& [label, c] : nodes[p].hist) {
      span.histogram.counts[span.histogram.IndexOfLabel(label)] = c;
    }
    span.hfs = PickHistogramFormat(span.histogram);
    result.push_back(std::move(span));
  }
  return result;
}

}  // namespace csic
