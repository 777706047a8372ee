#pragma once

#include <complex>
#include <stdexcept>

namespace dtop {

using Complex = std::complex<double>;

/// A point of the open unit disk. Construction rejects |w| >= 1.
class Point {
 public:
  explicit Point(Complex w) : w_(w) {
    if (!(std::abs(w) < 1.0)) {
      throw std::invalid_argument("Point: modulus must be strictly less than 1");
    }
  }
  Point(double re, double im) : Point(Complex(re, im)) {}

  Complex value() const { return w_; }
  double abs2() const { return std::norm(w_); }
  double abs() const { return std::abs(w_); }

 private:
  Complex w_;
};

}  // namespace dtop
