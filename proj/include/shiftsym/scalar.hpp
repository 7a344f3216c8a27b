#pragma once

#include <gmpxx.h>

#include <compare>
#include <ostream>
#include <sstream>
#include <string>

#include "shiftsym/errors.hpp"

namespace shiftsym {

/// Exact Gaussian rational re + im*i. With the rational field flag the
/// imaginary part is always zero; the parser enforces that.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(int v) : re_(v) {}   // NOLINT(google-explicit-constructor)
  explicit Scalar(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }
  static Scalar rational(long num, long den) {
    if (den == 0) throw PreconditionError("rational literal with zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(q);
  }
  static Scalar imaginary_unit() { return Scalar(mpq_class(0), mpq_class(1)); }

  [[nodiscard]] const mpq_class& re() const { return re_; }
  [[nodiscard]] const mpq_class& im() const { return im_; }
  [[nodiscard]] bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  [[nodiscard]] bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  [[nodiscard]] bool is_real() const { return sgn(im_) == 0; }

  Scalar& operator+=(const Scalar& o) {
    re_ += o.re_;
    if (sgn(o.im_) != 0) im_ += o.im_;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    re_ -= o.re_;
    if (sgn(o.im_) != 0) im_ -= o.im_;
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
      re_ *= o.re_;
      return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

  [[nodiscard]] Scalar inverse() const {
    if (is_zero()) throw PreconditionError("division by zero scalar");
    if (sgn(im_) == 0) return Scalar(mpq_class(1) / re_);
    mpq_class n = re_ * re_ + im_ * im_;
    return Scalar(mpq_class(re_ / n), mpq_class(-im_ / n));
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend Scalar operator-(Scalar a) {
    a.re_ = -a.re_;
    a.im_ = -a.im_;
    return a;
  }
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

  /// Deterministic total order (real part, then imaginary part).
  friend bool operator<(const Scalar& a, const Scalar& b) {
    if (a.re_ != b.re_) return a.re_ < b.re_;
    return a.im_ < b.im_;
  }

  /// True when the value should be printed with a leading minus sign.
  [[nodiscard]] bool prints_negative() const {
    if (sgn(im_) == 0) return sgn(re_) < 0;
    if (sgn(re_) == 0) return sgn(im_) < 0;
    return false;
  }

  /// Text form as it appears in expressions: `3`, `-1/2`, `2*i`, `(1+2*i)`.
  [[nodiscard]] std::string str() const {
    std::ostringstream os;
    auto real_text = [](const mpq_class& q) { return q.get_str(); };
    if (sgn(im_) == 0) {
      os << real_text(re_);
    } else if (sgn(re_) == 0) {
      if (im_ == 1) {
        os << "i";
      } else if (im_ == -1) {
        os << "-i";
      } else {
        os << real_text(im_) << "*i";
      }
    } else {
      os << "(" << real_text(re_) << (sgn(im_) > 0 ? "+" : "-");
      mpq_class a = abs(im_);
      if (a != 1) os << real_text(a) << "*";
      os << "i)";
    }
    return os.str();
  }

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace shiftsym
