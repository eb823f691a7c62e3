#include "tla/scalar.hpp"

#include <sstream>
#include <stdexcept>

namespace tla {

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (b.is_zero()) throw std::domain_error("Scalar: division by zero");
  Rat n = b.norm2();
  Scalar c = a * b.conj();
  return Scalar(c.re / n, c.im / n);
}

Scalar Scalar::inverse() const { return Scalar(1) / *this; }

std::string rat_str(const Rat& q) {
  std::ostringstream os;
  os << numerator(q);
  if (denominator(q) != 1) os << "/" << denominator(q);
  return os.str();
}

std::string Scalar::str() const {
  if (im == 0) return rat_str(re);
  std::string imag;
  if (im == 1) {
    imag = "i";
  } else if (im == -1) {
    imag = "-i";
  } else {
    imag = rat_str(im) + "*i";
  }
  if (re == 0) return imag;
  if (im > 0 && imag[0] != '-') return rat_str(re) + "+" + imag;
  return rat_str(re) + imag;  // imag already carries its minus sign
}

std::optional<Rat> rational_sqrt(const Rat& q) {
  if (q < 0) return std::nullopt;
  Int num = numerator(q), den = denominator(q);
  Int rn = sqrt(num), rd = sqrt(den);
  if (rn * rn != num || rd * rd != den) return std::nullopt;
  return Rat(rn, rd);
}

}  // namespace tla
