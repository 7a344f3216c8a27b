#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "shiftsym/element.hpp"

namespace shiftsym {

/// Dense matrix of elements of degree 0. Entries commute, so the usual
/// determinant and adjugate formulas apply.
class Matrix {
 public:
  Matrix() = default;
  Matrix(SignaturePtr sig, std::size_t rows, std::size_t cols)
      : sig_(std::move(sig)), rows_(rows), cols_(cols), entries_(rows * cols, Element(sig_)) {}

  [[nodiscard]] const SignaturePtr& signature() const { return sig_; }
  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] bool square() const { return rows_ == cols_; }
  [[nodiscard]] const Element& at(std::size_t r, std::size_t c) const { return entries_.at(r * cols_ + c); }
  Element& at(std::size_t r, std::size_t c) { return entries_.at(r * cols_ + c); }

  [[nodiscard]] bool is_zero() const {
    for (const auto& e : entries_) {
      if (!e.is_zero()) return false;
    }
    return true;
  }

  /// Laplace expansion along rows with the minors memoised by column set.
  [[nodiscard]] Element det() const {
    if (!square()) throw ShapeError("determinant of a non-square matrix");
    if (rows_ > 20) throw UnsupportedError("matrix too large for cofactor expansion");
    std::map<std::uint32_t, Element> memo;
    return minor_det(0, (1U << cols_) - 1U, memo);
  }

  /// Transpose of the cofactor matrix: adj * M = M * adj = det * 1.
  [[nodiscard]] Matrix adjugate() const {
    if (!square()) throw ShapeError("adjugate of a non-square matrix");
    Matrix out(sig_, rows_, cols_);
    if (rows_ == 1) {
      out.at(0, 0) = Element::constant(sig_, Scalar(1));
      return out;
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        Element m = without(i, j).det();
        out.at(j, i) = ((i + j) % 2 == 0) ? m : -m;
      }
    }
    return out;
  }

  [[nodiscard]] Matrix without(std::size_t row, std::size_t col) const {
    Matrix out(sig_, rows_ - 1, cols_ - 1);
    for (std::size_t i = 0, oi = 0; i < rows_; ++i) {
      if (i == row) continue;
      for (std::size_t j = 0, oj = 0; j < cols_; ++j) {
        if (j == col) continue;
        out.at(oi, oj++) = at(i, j);
      }
      ++oi;
    }
    return out;
  }

  [[nodiscard]] Matrix transpose() const {
    Matrix out(sig_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    }
    return out;
  }

  [[nodiscard]] Matrix evaluate(const std::map<GenIndex, Scalar>& point) const {
    Matrix out(sig_, rows_, cols_);
    for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = entries_[k].evaluate(point);
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw ShapeError("matrix product size mismatch");
    Matrix out(a.sig_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t j = 0; j < b.cols_; ++j) {
        Element s(a.sig_);
        for (std::size_t k = 0; k < a.cols_; ++k) s += a.at(i, k) * b.at(k, j);
        out.at(i, j) = s;
      }
    }
    return out;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t k = 0; k < a.entries_.size(); ++k) {
      if (a.entries_[k] != b.entries_[k]) return false;
    }
    return true;
  }

 private:
  Element minor_det(std::size_t row, std::uint32_t cols, std::map<std::uint32_t, Element>& memo) const {
    if (row == rows_) return Element::constant(sig_, Scalar(1));
    auto it = memo.find(cols);
    if (it != memo.end()) return it->second;
    Element acc(sig_);
    int sign = 1;
    for (std::size_t c = 0; c < cols_; ++c) {
      if ((cols & (1U << c)) == 0) continue;
      const Element& e = at(row, c);
      if (!e.is_zero()) {
        Element sub = e * minor_det(row + 1, cols & ~(1U << c), memo);
        acc = sign > 0 ? acc + sub : acc - sub;
      }
      sign = -sign;
    }
    memo.emplace(cols, acc);
    return acc;
  }

  SignaturePtr sig_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Element> entries_;
};

}  // namespace shiftsym
