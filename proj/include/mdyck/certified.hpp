#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

#include "errors.hpp"

namespace mdyck {

constexpr mpfr_prec_t kLogPrecision = 256;

// Exact rational enclosure [lo, hi] of a real number.
struct CertifiedReal {
  mpq_class lo, hi;

  CertifiedReal() = default;
  CertifiedReal(mpq_class l, mpq_class h) : lo(std::move(l)), hi(std::move(h)) {
    lo.canonicalize();
    hi.canonicalize();
    check_internal(lo <= hi, "inverted enclosure");
  }

  static CertifiedReal exact(const mpq_class& v) { return {v, v}; }

  mpq_class width() const { return hi - lo; }
  mpq_class midpoint() const { return (lo + hi) / 2; }
  double to_double() const { return midpoint().get_d(); }

  bool contains(const mpq_class& v) const { return lo <= v && v <= hi; }
  bool contains(const CertifiedReal& other) const {
    return lo <= other.lo && other.hi <= hi;
  }
  bool overlaps(const CertifiedReal& other) const {
    return lo <= other.hi && other.lo <= hi;
  }

  CertifiedReal operator+(const CertifiedReal& o) const { return {lo + o.lo, hi + o.hi}; }
  CertifiedReal operator-(const CertifiedReal& o) const { return {lo - o.hi, hi - o.lo}; }

  CertifiedReal scaled(const mpq_class& f) const {
    return f >= 0 ? CertifiedReal{f * lo, f * hi} : CertifiedReal{f * hi, f * lo};
  }

  std::string to_string() const {
    return "[" + lo.get_str() + ", " + hi.get_str() + "]";
  }
};

// The mpfr value as an exact rational (mantissa times a power of two).
inline mpq_class mpq_from_mpfr(mpfr_srcptr x) {
  check_internal(mpfr_number_p(x), "non-finite value has no rational image");
  if (mpfr_zero_p(x)) return 0;
  mpz_class m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
  mpq_class q(m);
  if (e >= 0)
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  else
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  return q;
}

// Enclosure of log(x) via directed rounding on each endpoint.
inline CertifiedReal log_enclosure(const CertifiedReal& x) {
  if (x.lo <= 0) throw InputError("log of a non-positive enclosure");
  mpfr_t t;
  mpfr_init2(t, kLogPrecision);
  mpfr_set_q(t, x.lo.get_mpq_t(), MPFR_RNDD);
  mpfr_log(t, t, MPFR_RNDD);
  mpq_class lo = mpq_from_mpfr(t);
  mpfr_set_q(t, x.hi.get_mpq_t(), MPFR_RNDU);
  mpfr_log(t, t, MPFR_RNDU);
  mpq_class hi = mpq_from_mpfr(t);
  mpfr_clear(t);
  return {lo, hi};
}

}  // namespace mdyck
