#include "normform/scalar.hpp"

namespace normform {

Gaussian& Gaussian::operator*=(const Gaussian& o) {
  if (im.is_zero() && o.im.is_zero()) {
    re *= o.re;
    return *this;
  }
  if (o.im.is_zero()) return *this *= o.re;
  if (o.re.is_zero()) {
    // (a + bi)(ci) = -bc + aci
    Rational new_re = -(im * o.im);
    im = re * o.im;
    re = std::move(new_re);
    return *this;
  }
  Rational new_re = re * o.re - im * o.im;
  Rational new_im = re * o.im + im * o.re;
  re = std::move(new_re);
  im = std::move(new_im);
  return *this;
}

Gaussian& Gaussian::operator/=(const Gaussian& o) {
  if (o.im.is_zero()) {
    re /= o.re;
    if (!im.is_zero()) im /= o.re;
    return *this;
  }
  const Rational n = o.norm2();
  *this *= o.conj();
  re /= n;
  im /= n;
  return *this;
}

std::string Gaussian::str() const {
  if (im.is_zero()) return re.str();
  if (re.is_zero()) return "i*" + im.str();
  return "(" + re.str() + " + i*" + im.str() + ")";
}

}  // namespace normform
