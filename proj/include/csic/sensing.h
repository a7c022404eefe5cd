// Copyright 2026 The CSIC Authors. All Rights Reserved.
//
// Use of this source code is governed by an MIT-style
// license that can be found in the LICENSE file or at
// https://opensource.org/licenses/MIT.

#ifndef CSIC_SENSING_H_
#define CSIC_SENSING_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "csic/image.h"
#include "csic/status.h"

namespace csic {

// Wire codes; the names are also the CLI spellings (lowercase).
enum class MatrixKind : uint8_t {
  kDct2d = 0,
  kWht2d = 1,
  kSrmDct = 2,
  kSrmWht = 3,
  kRotDct2d = 4,
  kRotWht2d = 5,
};

const char* MatrixKindName(MatrixKind kind);
Status ParseMatrixKind(const std::string& name, MatrixKind* kind);
bool KindUsesWht(MatrixKind kind);
bool KindIsSrm(MatrixKind kind);
bool KindIsRot(MatrixKind kind);
bool KindIsSeeded(MatrixKind kind);

// --- Fast transforms (exposed for direct testing) ---

// In-place orthonormal Walsh-Hadamard transform with rows in sequency order
// (row k has k sign changes). Self-inverse. Length must be a power of two.
Status FwhtSequency(std::vector<double>* v);

// Separable orthonormal DCT-II / DCT-III over a row-major plane, in place.
void Dct2Orthonormal(size_t n_v, size_t n_h, std::vector<double>* plane);
void Idct2Orthonormal(size_t n_v, size_t n_h, std::vector<double>* plane);
void Dct1Orthonormal(std::vector<double>* v);
void Idct1Orthonormal(std::vector<double>* v);

// JPEG-style anti-diagonal traversal of an n_v x n_h coefficient grid,
// returned as flat row-major indices starting at (0, 0).
std::vector<uint32_t> ZigzagIndices(size_t n_v, size_t n_h);

// --- Seeded randomization (part of the wire-format contract) ---

// Uniform draw in [0, n) by rejection from 64-bit generator output.
uint64_t UniformBelow(std::mt19937_64& g, uint64_t n);
// Fisher-Yates shuffle of the identity permutation of size n.
std::vector<uint32_t> RandomPermutation(size_t n, std::mt19937_64& g);

// Mean and standard deviation of measurements, first (DC) entry excluded.
struct MeasurementStats {
  double mu = 0.0;
  double sigma = 0.0;
};
MeasurementStats AcStats(const std::vector<double>& y);

// Linear map interface shared by the sensing operator and its wrappers.
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;
  virtual void Apply(const std::vector<double>& x, std::vector<double>* y) const = 0;
  virtual void ApplyTranspose(const std::vector<double>& z, std::vector<double>* x) const = 0;
  virtual size_t DomainSize() const = 0;
  virtual size_t NumMeasurements() const = 0;
};

// A measurement operator described by (kind, dims, m, seed); applied through
// fast transforms without ever materializing the matrix. Rows have unit norm.
// WHT kinds operate on a zero-padded power-of-two grid; the domain vector is
// the row-major padded plane.
class SensingOperator : public LinearOperator {
 public:
  static Status Create(MatrixKind kind, size_t n_v, size_t n_h, size_t m, uint64_t seed,
                       SensingOperator* out);

  void Apply(const std::vector<double>& x, std::vector<double>* y) const override;
  void ApplyTranspose(const std::vector<double>& z, std::vector<double>* x) const override;
  size_t DomainSize() const override { return pad_v_ * pad_h_; }
  size_t NumMeasurements() const override { return m_; }

  double RowNorm() const { return 1.0; }
  MatrixKind kind() const { return kind_; }
  size_t n_v() const { return n_v_; }
  size_t n_h() const { return n_h_; }
  size_t pad_v() const { return pad_v_; }
  size_t pad_h() const { return pad_h_; }
  size_t m() const { return m_; }
  uint64_t seed() const { return seed_; }

  // Zero-pads the image into the operator's domain vector.
  void PlaneToDomain(const ImagePlane& img, std::vector<double>* x) const;
  // Rounds, clips to [0, 255], and crops padding.
  void DomainToPlane(const std::vector<double>& x, ImagePlane* out) const;
  // Apply() on an image.
  Status MeasureImage(const ImagePlane& img, std::vector<double>* y) const;

 private:
  MatrixKind kind_ = MatrixKind::kDct2d;
  size_t n_v_ = 0, n_h_ = 0;
  size_t pad_v_ = 0, pad_h_ = 0;
  size_t m_ = 0;
  uint64_t seed_ = 0;

  std::vector<uint32_t> zigzag_;        // 2D kinds: first m_ coefficient slots
  std::vector<uint32_t> srm_gather_;    // SRM kinds: domain index of u[i]
  std::vector<uint32_t> srm_select_;    // SRM kinds: m_ transform slots, DC first
  std::vector<double> rot_signs_;       // ROT kinds: +-1 diagonal of R
  std::vector<uint32_t> rot_perm_;      // ROT kinds: output gather S
};

// Number of measurements for a compression ratio: 1 + floor(csr * n_v * n_h),
// clamped to the operator's (possibly padded) domain size.
size_t MeasurementCount(double csr, size_t n_v, size_t n_h, MatrixKind kind);

// Wrapper that zeroes a subset of measurement rows (decoder fallback when a
// stream carries no saturation extras).
class MaskedOperator : public LinearOperator {
 public:
  MaskedOperator(const LinearOperator* base, std::vector<uint8_t> zero_rows)
      : base_(base), zero_rows_(std::move(zero_rows)) {}

  void Apply(const std::vector<double>& x, std::vector<double>* y) const override;
  void ApplyTranspose(const std::vector<double>& z, std::vector<double>* x) const override;
  size_t DomainSize() const override { return base_->DomainSize(); }
  size_t NumMeasurements() const override { return base_->NumMeasurements(); }

 private:
  const LinearOperator* base_;
  std::vector<uint8_t> zero_rows_;
};

}  // namespace csic

#endif  // CSIC_SENSING_H_
