#pragma once

// Thin RAII layer over MPFR for the few series that need more than double
// precision to survive cancellation.

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <utility>

#include "mlf/complex.hpp"

namespace mlf::mp {

class Real {
 public:
  explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Real(mpfr_prec_t prec, double x) { mpfr_init2(v_, prec); mpfr_set_d(v_, x, MPFR_RNDN); }
  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real& operator=(const Real& o) {
    if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

 private:
  mpfr_t v_;
};

// Complex number as a pair of MPFR reals, with just the operations the
// series evaluators use.
class Complex {
 public:
  explicit Complex(mpfr_prec_t prec) : re_(prec), im_(prec) {}
  Complex(mpfr_prec_t prec, mlf::Complex z) : re_(prec, z.real()), im_(prec, z.imag()) {}

  Real& re() { return re_; }
  Real& im() { return im_; }
  const Real& re() const { return re_; }
  const Real& im() const { return im_; }

  mlf::Complex to_complex() const { return {re_.to_double(), im_.to_double()}; }

  void add(const Complex& o) {
    mpfr_add(re_.get(), re_.get(), o.re_.get(), MPFR_RNDN);
    mpfr_add(im_.get(), im_.get(), o.im_.get(), MPFR_RNDN);
  }

  // this *= o
  void mul(const Complex& o) {
    Real t1(re_.prec()), t2(re_.prec());
    mpfr_mul(t1.get(), re_.get(), o.re_.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), im_.get(), o.im_.get(), MPFR_RNDN);
    Real nr(re_.prec());
    mpfr_sub(nr.get(), t1.get(), t2.get(), MPFR_RNDN);
    mpfr_mul(t1.get(), re_.get(), o.im_.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), im_.get(), o.re_.get(), MPFR_RNDN);
    mpfr_add(im_.get(), t1.get(), t2.get(), MPFR_RNDN);
    mpfr_set(re_.get(), nr.get(), MPFR_RNDN);
  }

  void mul(const Real& x) {
    mpfr_mul(re_.get(), re_.get(), x.get(), MPFR_RNDN);
    mpfr_mul(im_.get(), im_.get(), x.get(), MPFR_RNDN);
  }

  void div(const Real& x) {
    mpfr_div(re_.get(), re_.get(), x.get(), MPFR_RNDN);
    mpfr_div(im_.get(), im_.get(), x.get(), MPFR_RNDN);
  }

  // this /= o
  void div(const Complex& o) {
    Real den(re_.prec()), t(re_.prec());
    mpfr_sqr(den.get(), o.re_.get(), MPFR_RNDN);
    mpfr_sqr(t.get(), o.im_.get(), MPFR_RNDN);
    mpfr_add(den.get(), den.get(), t.get(), MPFR_RNDN);
    Complex conj(re_.prec());
    mpfr_set(conj.re_.get(), o.re_.get(), MPFR_RNDN);
    mpfr_neg(conj.im_.get(), o.im_.get(), MPFR_RNDN);
    mul(conj);
    div(den);
  }

  double abs_double() const {
    return std::hypot(re_.to_double(), im_.to_double());
  }

 private:
  Real re_;
  Real im_;
};

// Working precision that keeps about 40 extra bits after a cancellation of
// magnitude max_term / result.
inline mpfr_prec_t precision_for(double log2_max_term) {
  return static_cast<mpfr_prec_t>(64 + std::max(0.0, log2_max_term) + 40);
}

}  // namespace mlf::mp
