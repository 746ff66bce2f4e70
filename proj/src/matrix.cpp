#include "ovc/matrix.h"

#include <algorithm>
#include <stdexcept>

#include "ovc/errors.h"
#include "ovc/gf256.h"
#include "ovc/gf256_vec.h"

namespace ovc {

namespace {

// dst ^= c * src over [from, cols); returns the multiplications performed.
std::uint64_t row_mul_add(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src,
                          std::uint8_t c, std::size_t from) {
  const std::size_t n = dst.size() - from;
  gf::vec_mul_add(dst.data() + from, src.data() + from, c, n);
  return (c == 0 || c == 1) ? 0 : n;
}

// dst *= c over [from, cols); returns the multiplications performed.
std::uint64_t row_scale(std::span<std::uint8_t> dst, std::uint8_t c, std::size_t from) {
  const std::size_t n = dst.size() - from;
  gf::vec_scale(dst.data() + from, c, n);
  return (c == 0 || c == 1) ? 0 : n;
}

}  // namespace

FieldMatrix FieldMatrix::identity(std::size_t n) {
  FieldMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

FieldMatrix FieldMatrix::random(std::size_t rows, std::size_t cols, Pcg32& rng) {
  FieldMatrix m(rows, cols);
  for (auto& v : m.data_) v = rng.byte();
  return m;
}

std::size_t FieldMatrix::rank() const {
  FieldMatrix work = *this;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t pivot = r;
    while (pivot < rows_ && work.at(pivot, c) == 0) ++pivot;
    if (pivot == rows_) continue;
    if (pivot != r)
      std::swap_ranges(work.row(r).begin(), work.row(r).end(), work.row(pivot).begin());
    const std::uint8_t inv_p = gf::inv(work.at(r, c));
    for (std::size_t i = r + 1; i < rows_; ++i) {
      const std::uint8_t f = work.at(i, c);
      if (f == 0) continue;
      row_mul_add(work.row(i), work.row(r), gf::mul(f, inv_p), c);
      work.at(i, c) = 0;
    }
    ++r;
  }
  return r;
}

RrefResult FieldMatrix::rref() const {
  RrefResult res{*this, 0};
  FieldMatrix& m = res.matrix;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t pivot = r;
    while (pivot < rows_ && m.at(pivot, c) == 0) ++pivot;
    if (pivot == rows_) continue;
    if (pivot != r) std::swap_ranges(m.row(r).begin(), m.row(r).end(), m.row(pivot).begin());
    const std::uint8_t p = m.at(r, c);
    if (p != 1) {
      res.mul_count += row_scale(m.row(r), gf::inv(p), c + 1);
      m.at(r, c) = 1;
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      const std::uint8_t f = m.at(i, c);
      if (f == 0) continue;
      res.mul_count += row_mul_add(m.row(i), m.row(r), f, c + 1);
      m.at(i, c) = 0;
    }
    ++r;
  }
  return res;
}

SolveResult solve_system(const FieldMatrix& a, const FieldMatrix& rhs) {
  if (a.rows() != rhs.rows())
    throw std::invalid_argument("solve_system: row count mismatch between a and rhs");
  const std::size_t n = a.rows();
  const std::size_t u = a.cols();
  const std::size_t m = rhs.cols();

  FieldMatrix aug(n, u + m);
  for (std::size_t i = 0; i < n; ++i) {
    std::copy_n(a.row(i).data(), u, aug.row(i).data());
    std::copy_n(rhs.row(i).data(), m, aug.row(i).data() + u);
  }
  auto red = aug.rref();
  const FieldMatrix& e = red.matrix;

  // Pivot columns of the reduced system, in row order.
  std::vector<std::size_t> pivot_col;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t c = 0;
    while (c < u + m && e.at(i, c) == 0) ++c;
    if (c == u + m) continue;  // zero row
    if (c >= u)
      throw LinearSystemError("solve_system: inconsistent system (0 = nonzero)");
    pivot_col.push_back(c);
  }
  if (pivot_col.size() < u)
    throw LinearSystemError("solve_system: underdetermined system (rank-deficient a)");

  SolveResult out{FieldMatrix(u, m), red.mul_count};
  for (std::size_t i = 0; i < pivot_col.size(); ++i)
    std::copy_n(e.row(i).data() + u, m, out.solution.row(pivot_col[i]).data());
  return out;
}

FieldMatrix matmul(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: dimension mismatch");
  FieldMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      gf::vec_mul_add(out.row(i).data(), b.row(j).data(), a.at(i, j), b.cols());
  return out;
}

}  // namespace ovc
