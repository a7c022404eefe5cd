// Copyright 2026 The CSIC Authors. All Rights Reserved.
//
// Use of this source code is governed by an MIT-style
// license that can be found in the LICENSE file or at
// https://opensource.org/licenses/MIT.

#include "csic/sensing.h"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <tuple>

namespace csic {

namespace {

// ---- FFTW plan cache ----
// Plans are created once per (direction, shape) with FFTW_UNALIGNED so they
// can be executed on any buffer via the new-array interface.

enum PlanType { kFwd1d, kInv1d, kFwd2d, kInv2d };

class PlanCache {
 public:
  fftw_plan Get(PlanType type, size_t n0, size_t n1) {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_tuple(static_cast<int>(type), n0, n1);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    size_t total = n0 * (n1 == 0 ? 1 : n1);
    double* buf = fftw_alloc_real(total);
    fftw_plan plan = nullptr;
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    switch (type) {
      case kFwd1d:
        plan = fftw_plan_r2r_1d(static_cast<int>(n0), buf, buf, FFTW_REDFT10, flags);
        break;
      case kInv1d:
        plan = fftw_plan_r2r_1d(static_cast<int>(n0), buf, buf, FFTW_REDFT01, flags);
        break;
      case kFwd2d:
        plan = fftw_plan_r2r_2d(static_cast<int>(n0), static_cast<int>(n1), buf, buf,
                                FFTW_REDFT10, FFTW_REDFT10, flags);
        break;
      case kInv2d:
        plan = fftw_plan_r2r_2d(static_cast<int>(n0), static_cast<int>(n1), buf, buf,
                                FFTW_REDFT01, FFTW_REDFT01, flags);
        break;
    }
    fftw_free(buf);
    CSIC_CHECK(plan != nullptr);
    plans_[key] = plan;
    return plan;
  }

 private:
  std::mutex mu_;
  std::map<std::tuple<int, size_t, size_t>, fftw_plan> plans_;
};

PlanCache& Plans() {
  static PlanCache* cache = new PlanCache();
  return *cache;
}

void ExecuteInPlace(fftw_plan plan, double* data) { fftw_execute_r2r(plan, data, data); }

// ---- Sequency-ordered WHT ----

// Natural-order butterfly; rows of the implied matrix are Hadamard order.
void FwhtButterfly(double* v, size_t n) {
  for (size_t h = 1; h < n; h <<= 1) {
    for (size_t base = 0; base < n; base += 2 * h) {
      for (size_t i = base; i < base + h; ++i) {
        const double a = v[i];
        const double b = v[i + h];
        v[i] = a + b;
        v[i + h] = a - b;
      }
    }
  }
}

int Log2Exact(size_t n) {
  int m = 0;
  while ((size_t{1} << m) < n) ++m;
  return (size_t{1} << m) == n ? m : -1;
}

// Natural-order slot holding sequency coefficient s: bit-reverse of gray(s).
uint32_t SequencySlot(uint32_t s, int bits) {
  uint32_t g = s ^ (s >> 1);
  uint32_t r = 0;
  for (int i = 0; i < bits; ++i) r = (r << 1) | ((g >> i) & 1);
  return r;
}

// In-place sequency WHT of each length-`n` stride-1 row of `rows` vectors.
void Fwht1(double* v, size_t n, double* scratch) {
  const int bits = Log2Exact(n);
  CSIC_CHECK(bits >= 0);
  FwhtButterfly(v, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (uint32_t s = 0; s < n; ++s) scratch[s] = v[SequencySlot(s, bits)] * scale;
  std::memcpy(v, scratch, n * sizeof(double));
}

void Fwht2(double* plane, size_t n_v, size_t n_h, std::vector<double>* scratch) {
  scratch->resize(std::max(n_v, n_h) * 2);
  double* tmp = scratch->data();
  double* col = scratch->data() + std::max(n_v, n_h);
  for (size_t r = 0; r < n_v; ++r) Fwht1(plane + r * n_h, n_h, tmp);
  for (size_t c = 0; c < n_h; ++c) {
    for (size_t r = 0; r < n_v; ++r) col[r] = plane[r * n_h + c];
    Fwht1(col, n_v, tmp);
    for (size_t r = 0; r < n_v; ++r) plane[r * n_h + c] = col[r];
  }
}

size_t NextPow2(size_t n) {
  size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

// ---- Public transforms ----

Status FwhtSequency(std::vector<double>* v) {
  if (v->empty() || Log2Exact(v->size()) < 0) return Status::kBadArgument;
  std::vector<double> scratch(v->size());
  Fwht1(v->data(), v->size(), scratch.data());
  return Status::kOk;
}

void Dct1Orthonormal(std::vector<double>* v) {
  const size_t n = v->size();
  CSIC_CHECK(n > 0);
  if (n == 1) return;
  ExecuteInPlace(Plans().Get(kFwd1d, n, 0), v->data());
  const double dc = 0.5 / std::sqrt(static_cast<double>(n));
  const double ac = 1.0 / std::sqrt(2.0 * static_cast<double>(n));
  (*v)[0] *= dc;
  for (size_t k = 1; k < n; ++k) (*v)[k] *= ac;
}

void Idct1Orthonormal(std::vector<double>* v) {
  const size_t n = v->size();
  CSIC_CHECK(n > 0);
  if (n == 1) return;
  const double dc = 1.0 / std::sqrt(static_cast<double>(n));
  const double ac = 1.0 / std::sqrt(2.0 * static_cast<double>(n));
  (*v)[0] *= dc;
  for (size_t k = 1; k < n; ++k) (*v)[k] *= ac;
  ExecuteInPlace(Plans().Get(kInv1d, n, 0), v->data());
}

void Dct2Orthonormal(size_t n_v, size_t n_h, std::vector<double>* plane) {
  CSIC_CHECK(n_v > 0 && n_h > 0 && plane->size() == n_v * n_h);
  if (n_v == 1 || n_h == 1) {
    // Degenerate to 1D on the long axis; the unit axis is an identity.
    Dct1Orthonormal(plane);
    return;
  }
  ExecuteInPlace(Plans().Get(kFwd2d, n_v, n_h), plane->data());
  const double dc_v = 0.5 / std::sqrt(static_cast<double>(n_v));
  const double ac_v = 1.0 / std::sqrt(2.0 * static_cast<double>(n_v));
  const double dc_h = 0.5 / std::sqrt(static_cast<double>(n_h));
  const double ac_h = 1.0 / std::sqrt(2.0 * static_cast<double>(n_h));
  for (size_t r = 0; r < n_v; ++r) {
    const double fv = r == 0 ? dc_v : ac_v;
    double* row = plane->data() + r * n_h;
    for (size_t c = 0; c < n_h; ++c) row[c] *= fv * (c == 0 ? dc_h : ac_h);
  }
}

void Idct2Orthonormal(size_t n_v, size_t n_h, std::vector<double>* plane) {
  CSIC_CHECK(n_v > 0 && n_h > 0 && plane->size() == n_v * n_h);
  if (n_v == 1 || n_h == 1) {
    Idct1Orthonormal(plane);
    return;
  }
  const double dc_v = 1.0 / std::sqrt(static_cast<double>(n_v));
  const double ac_v = 1.0 / std::sqrt(2.0 * static_cast<double>(n_v));
  const double dc_h = 1.0 / std::sqrt(static_cast<double>(n_h));
  const double ac_h = 1.0 / std::sqrt(2.0 * static_cast<double>(n_h));
  for (size_t r = 0; r < n_v; ++r) {
    const double fv = r == 0 ? dc_v : ac_v;
    double* row = plane->data() + r * n_h;
    for (size_t c = 0; c < n_h; ++c) row[c] *= fv * (c == 0 ? dc_h : ac_h);
  }
  ExecuteInPlace(Plans().Get(kInv2d, n_v, n_h), plane->data());
}

std::vector<uint32_t> ZigzagIndices(size_t n_v, size_t n_h) {
  CSIC_CHECK(n_v > 0 && n_h > 0);
  std::vector<uint32_t> out;
  out.reserve(n_v * n_h);
  const size_t diagonals = n_v + n_h - 1;
  for (size_t d = 0; d < diagonals; ++d) {
    if (d % 2 == 0) {
      // Upward: start at the lowest row of this diagonal, move up-right.
      size_t r = std::min(d, n_v - 1);
      size_t c = d - r;
      for (;;) {
        out.push_back(static_cast<uint32_t>(r * n_h + c));
        if (r == 0 || c + 1 >= n_h) break;
        --r;
        ++c;
      }
    } else {
      // Downward: start at the rightmost column of this diagonal, move down-left.
      size_t c = std::min(d, n_h - 1);
      size_t r = d - c;
      for (;;) {
        out.push_back(static_cast<uint32_t>(r * n_h + c));
        if (c == 0 || r + 1 >= n_v) break;
        ++r;
        --c;
      }
    }
  }
  return out;
}

// ---- Seeded randomization ----

uint64_t UniformBelow(std::mt19937_64& g, uint64_t n) {
  CSIC_CHECK(n > 0);
  if (n == 1) return 0;
  // Reject draws below 2^64 mod n so the modulo is unbiased.
  const uint64_t min = (~n + 1) % n;
  uint64_t r;
  do {
    r = g();
  } while (r < min);
  return r % n;
}

std::vector<uint32_t> RandomPermutation(size_t n, std::mt19937_64& g) {
  std::vector<uint32_t> p(n);
  for (size_t i = 0; i < n; ++i) p[i] = static_cast<uint32_t>(i);
  for (size_t i = n; i > 1; --i) {
    const uint64_t j = UniformBelow(g, i);
    std::swap(p[i - 1], p[j]);
  }
  return p;
}

MeasurementStats AcStats(const std::vector<double>& y) {
  MeasurementStats stats;
  if (y.size() < 2) return stats;
  const size_t n = y.size() - 1;
  double sum = 0.0;
  for (size_t i = 1; i < y.size(); ++i) sum += y[i];
  stats.mu = sum / static_cast<double>(n);
  double ss = 0.0;
  for (size_t i = 1; i < y.size(); ++i) {
    const double d = y[i] - stats.mu;
    ss += d * d;
  }
  stats.sigma = std::sqrt(ss / static_cast<double>(n));
  return stats;
}

// ---- Kind helpers ----

const char* MatrixKindName(MatrixKind kind) {
  switch (kind) {
    case MatrixKind::kDct2d: return "dct2d";
    case MatrixKind::kWht2d: return "wht2d";
    case MatrixKind::kSrmDct: return "srm_dct";
    case MatrixKind::kSrmWht: return "srm_wht";
    case MatrixKind::kRotDct2d: return "rot_dct2d";
    case MatrixKind::kRotWht2d: return "rot_wht2d";
  }
  return "?";
}

Status ParseMatrixKind(const std::string& name, MatrixKind* kind) {
  for (MatrixKind k : {MatrixKind::kDct2d, MatrixKind::kWht2d, MatrixKind::kSrmDct,
                       MatrixKind::kSrmWht, MatrixKind::kRotDct2d, MatrixKind::kRotWht2d}) {
    if (name == MatrixKindName(k)) {
      *kind = k;
      return Status::kOk;
    }
  }
  return Status::kBadArgument;
}

bool KindUsesWht(MatrixKind kind) {
  return kind == MatrixKind::kWht2d || kind == MatrixKind::kSrmWht ||
         kind == MatrixKind::kRotWht2d;
}

bool KindIsSrm(MatrixKind kind) {
  return kind == MatrixKind::kSrmDct || kind == MatrixKind::kSrmWht;
}

bool KindIsRot(MatrixKind kind) {
  return kind == MatrixKind::kRotDct2d || kind == MatrixKind::kRotWht2d;
}

bool KindIsSeeded(MatrixKind kind) { return KindIsSrm(kind) || KindIsRot(kind); }

size_t MeasurementCount(double csr, size_t n_v, size_t n_h, MatrixKind kind) {
  const double n = static_cast<double>(n_v) * static_cast<double>(n_h);
  size_t m = 1 + static_cast<size_t>(std::floor(csr * n));
  size_t domain = KindUsesWht(kind) ? NextPow2(n_v) * NextPow2(n_h) : n_v * n_h;
  if (m > domain) m = domain;
  if (m < 1) m = 1;
  return m;
}

// ---- SensingOperator ----

Status SensingOperator::Create(MatrixKind kind, size_t n_v, size_t n_h, size_t m, uint64_t seed,
                               SensingOperator* out) {
  if (n_v == 0 || n_h == 0) return Status::kBadDimensions;
  out->kind_ = kind;
  out->n_v_ = n_v;
  out->n_h_ = n_h;
  out->pad_v_ = KindUsesWht(kind) ? NextPow2(n_v) : n_v;
  out->pad_h_ = KindUsesWht(kind) ? NextPow2(n_h) : n_h;
  const size_t domain = out->pad_v_ * out->pad_h_;
  if (m < 1 || m > domain) return Status::kBadDimensions;
  out->m_ = m;
  out->seed_ = KindIsSeeded(kind) ? seed : 0;
  out->zigzag_.clear();
  out->srm_gather_.clear();
  out->srm_select_.clear();
  out->rot_signs_.clear();
  out->rot_perm_.clear();

  if (KindIsSrm(kind)) {
    std::mt19937_64 g(seed);
    const std::vector<uint32_t> perm = RandomPermutation(domain, g);
    out->srm_gather_.resize(domain);
    for (size_t i = 0; i < domain; ++i) {
      // perm addresses the column-major pixel vector; store row-major slots.
      const uint32_t cm = perm[i];
      const uint32_t r = cm % static_cast<uint32_t>(out->pad_v_);
      const uint32_t c = cm / static_cast<uint32_t>(out->pad_v_);
      out->srm_gather_[i] = r * static_cast<uint32_t>(out->pad_h_) + c;
    }
    // DC always selected, then m-1 AC slots drawn without replacement.
    std::vector<uint32_t> pool(domain - 1);
    for (size_t t = 0; t < pool.size(); ++t) pool[t] = static_cast<uint32_t>(t + 1);
    const size_t take = m - 1;
    for (size_t t = 0; t < take; ++t) {
      const uint64_t j = t + UniformBelow(g, pool.size() - t);
      std::swap(pool[t], pool[j]);
    }
    out->srm_select_.assign(pool.begin(), pool.begin() + take);
    std::sort(out->srm_select_.begin(), out->srm_select_.end());
    out->srm_select_.insert(out->srm_select_.begin(), 0);
  } else {
    std::vector<uint32_t> zz = ZigzagIndices(out->pad_v_, out->pad_h_);
    zz.resize(m);
    out->zigzag_ = std::move(zz);
  }

  if (KindIsRot(kind)) {
    std::mt19937_64 g(seed);
    out->rot_signs_.resize(m - 1);
    for (size_t i = 0; i + 1 < m; ++i) {
      out->rot_signs_[i] = (g() & 1) ? 1.0 : -1.0;
    }
    out->rot_perm_ = RandomPermutation(m - 1, g);
  }
  return Status::kOk;
}

void SensingOperator::Apply(const std::vector<double>& x, std::vector<double>* y) const {
  CSIC_CHECK(x.size() == DomainSize());
  y->resize(m_);
  std::vector<double> work = x;
  std::vector<double> scratch;
  if (KindIsSrm(kind_)) {
    std::vector<double> u(DomainSize());
    for (size_t i = 0; i < u.size(); ++i) u[i] = work[srm_gather_[i]];
    if (kind_ == MatrixKind::kSrmDct) {
      Dct1Orthonormal(&u);
    } else {
      CSIC_CHECK(ok(FwhtSequency(&u)));
    }
    for (size_t j = 0; j < m_; ++j) (*y)[j] = u[srm_select_[j]];
  } else {
    if (KindUsesWht(kind_)) {
      Fwht2(work.data(), pad_v_, pad_h_, &scratch);
    } else {
      Dct2Orthonormal(pad_v_, pad_h_, &work);
    }
    for (size_t j = 0; j < m_; ++j) (*y)[j] = work[zigzag_[j]];
  }
  if (KindIsRot(kind_) && m_ > 1) {
    std::vector<double> ac(m_ - 1);
    for (size_t i = 0; i + 1 < m_; ++i) ac[i] = (*y)[i + 1] * rot_signs_[i];
    Dct1Orthonormal(&ac);
    for (size_t i = 0; i + 1 < m_; ++i) (*y)[i + 1] = ac[rot_perm_[i]];
  }
}

void SensingOperator::ApplyTranspose(const std::vector<double>& z, std::vector<double>* x) const {
  CSIC_CHECK(z.size() == m_);
  std::vector<double> zz = z;
  if (KindIsRot(kind_) && m_ > 1) {
    std::vector<double> ac(m_ - 1, 0.0);
    for (size_t i = 0; i + 1 < m_; ++i) ac[rot_perm_[i]] = zz[i + 1];
    Idct1Orthonormal(&ac);
    for (size_t i = 0; i + 1 < m_; ++i) zz[i + 1] = ac[i] * rot_signs_[i];
  }
  x->assign(DomainSize(), 0.0);
  std::vector<double> scratch;
  if (KindIsSrm(kind_)) {
    std::vector<double> t(DomainSize(), 0.0);
    for (size_t j = 0; j < m_; ++j) t[srm_select_[j]] = zz[j];
    if (kind_ == MatrixKind::kSrmDct) {
      Idct1Orthonormal(&t);
    } else {
      CSIC_CHECK(ok(FwhtSequency(&t)));
    }
    for (size_t i = 0; i < t.size(); ++i) (*x)[srm_gather_[i]] = t[i];
  } else {
    for (size_t j = 0; j < m_; ++j) (*x)[zigzag_[j]] = zz[j];
    if (KindUsesWht(kind_)) {
      Fwht2(x->data(), pad_v_, pad_h_, &scratch);
    } else {
      Idct2Orthonormal(pad_v_, pad_h_, x);
    }
  }
}

void SensingOperator::PlaneToDomain(const ImagePlane& img, std::vector<double>* x) const {
  CSIC_CHECK(img.height == n_v_ && img.width == n_h_);
  x->assign(DomainSize(), 0.0);
  for (size_t r = 0; r < n_v_; ++r) {
    for (size_t c = 0; c < n_h_; ++c) {
      (*x)[r * pad_h_ + c] = static_cast<double>(img.pixels[r * n_h_ + c]);
    }
  }
}

void SensingOperator::DomainToPlane(const std::vector<double>& x, ImagePlane* out) const {
  CSIC_CHECK(x.size() == DomainSize());
  out->height = n_v_;
  out->width = n_h_;
  out->pixels.resize(n_v_ * n_h_);
  for (size_t r = 0; r < n_v_; ++r) {
    for (size_t c = 0; c < n_h_; ++c) {
      const double v = std::round(x[r * pad_h_ + c]);
      out->pixels[r * n_h_ + c] = static_cast<uint8_t>(v < 0.0 ? 0.0 : (v > 255.0 ? 255.0 : v));
    }
  }
}

Status SensingOperator::MeasureImage(const ImagePlane& img, std::vector<double>* y) const {
  if (img.height != n_v_ || img.width != n_h_) return Status::kBadDimensions;
  std::vector<double> x;
  PlaneToDomain(img, &x);
  Apply(x, y);
  return Status::kOk;
}

// ---- MaskedOperator ----

void MaskedOperator::Apply(const std::vector<double>& x, std::vector<double>* y) const {
  base_->Apply(x, y);
  for (size_t j = 0; j < y->size() && j < zero_rows_.size(); ++j) {
    if (zero_rows_[j]) (*y)[j] = 0.0;
  }
}

void MaskedOperator::ApplyTranspose(const std::vector<double>& z, std::vector<double>* x) const {
  std::vector<double> zz = z;
  for (size_t j = 0; j < zz.size() && j < zero_rows_.size(); ++j) {
    if (zero_rows_[j]) zz[j] = 0.0;
  }
  base_->ApplyTranspose(zz, x);
}

}  // namespace csic
