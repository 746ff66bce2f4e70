#pragma once

// Dense matrices over GF(2^8) with exact multiplication accounting.
//
// Row reduction and solving report the number of field multiplications they
// actually performed. The counting convention used throughout the project:
// multiplying a length-w span by a coefficient c costs w multiplications
// unless c is 0 or 1 (those row operations degenerate to a no-op / plain XOR
// and perform no products). Additions are never counted. The count is a
// property of the row operations executed, not of the SIMD backend that
// carries them out.

#include <cstdint>
#include <span>
#include <vector>

#include "ovc/rng.h"

namespace ovc {

struct RrefResult;

class FieldMatrix {
 public:
  FieldMatrix() = default;
  FieldMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static FieldMatrix identity(std::size_t n);
  static FieldMatrix random(std::size_t rows, std::size_t cols, Pcg32& rng);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::uint8_t& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::uint8_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<std::uint8_t> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const std::uint8_t> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  bool operator==(const FieldMatrix&) const = default;

  // Rank via forward elimination on a scratch copy.
  std::size_t rank() const;

  // Reduced row-echelon form (Gauss-Jordan with row swaps). Zero-coefficient
  // eliminations and unit pivots are skipped, so the count on a full-rank
  // k x (k+m') system never exceeds k^2 m' + k^2 (k-1) / 2.
  RrefResult rref() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> data_;
};

struct RrefResult {
  FieldMatrix matrix;
  std::uint64_t mul_count = 0;
};

struct SolveResult {
  FieldMatrix solution;  // one row per unknown (column of a)
  std::uint64_t mul_count = 0;
};

// Solve a * x = rhs for x, where a is n x u and rhs is n x m. Requires a to
// have full column rank; throws LinearSystemError when the system is
// underdetermined or inconsistent.
SolveResult solve_system(const FieldMatrix& a, const FieldMatrix& rhs);

// Plain product (used by verification paths; not multiplication-counted).
FieldMatrix matmul(const FieldMatrix& a, const FieldMatrix& b);

}  // namespace ovc
