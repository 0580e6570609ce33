#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <string>

namespace nls {

using BigRat = boost::multiprecision::cpp_rational;

/// Exact complex rational a + b*i. All symbolic cancellations happen in this
/// type; doubles only appear when an expression is evaluated on a grid.
struct GaussianRational {
  BigRat re{0};
  BigRat im{0};

  GaussianRational() = default;
  GaussianRational(long n) : re(n) {}
  GaussianRational(BigRat r) : re(std::move(r)) {}
  GaussianRational(BigRat r, BigRat i) : re(std::move(r)), im(std::move(i)) {}

  static GaussianRational i() { return {BigRat(0), BigRat(1)}; }
  static GaussianRational i_power(int k);

  bool is_zero() const { return re == 0 && im == 0; }

  GaussianRational conj() const { return {re, -im}; }

  std::complex<double> to_complex() const {
    return {double(re), double(im)};
  }

  friend GaussianRational operator+(const GaussianRational& a,
                                    const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a,
                                    const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a) {
    return {-a.re, -a.im};
  }
  friend GaussianRational operator*(const GaussianRational& a,
                                    const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    *this = *this * o;
    return *this;
  }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }

  /// Canonical form: "0", "3/4", "-2i", "(1/2-3i)".
  std::string str() const;
};

inline GaussianRational GaussianRational::i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {BigRat(1), BigRat(0)};
    case 1: return {BigRat(0), BigRat(1)};
    case 2: return {BigRat(-1), BigRat(0)};
    default: return {BigRat(0), BigRat(-1)};
  }
}

}  // namespace nls
