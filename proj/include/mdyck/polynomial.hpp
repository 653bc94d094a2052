#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace mdyck {

// Polynomial with exact integer coefficients, ascending by degree. The zero
// polynomial has an empty coefficient vector and degree -1.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { strip(); }

  static IntPolynomial from_list(std::initializer_list<long> ascending) {
    std::vector<mpz_class> c;
    for (long v : ascending) c.push_back(v);
    return IntPolynomial(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }

  const mpz_class& coeff(int k) const {
    static const mpz_class zero = 0;
    return (k >= 0 && k <= degree()) ? c_[static_cast<size_t>(k)] : zero;
  }

  mpq_class eval(const mpq_class& x) const {
    mpq_class acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + mpq_class(*it);
    return acc;
  }

  bool operator==(const IntPolynomial&) const = default;

  std::string to_string(const std::string& var = "z") const {
    if (is_zero()) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
      const mpz_class& a = coeff(k);
      if (a == 0) continue;
      mpz_class mag = abs(a);
      if (out.empty())
        out += (a < 0) ? "-" : "";
      else
        out += (a < 0) ? " - " : " + ";
      bool unit = (mag == 1) && k > 0;
      if (!unit) out += mag.get_str();
      if (k > 0) {
        if (!unit) out += " ";
        out += var;
        if (k > 1) out += "^" + std::to_string(k);
      }
    }
    return out;
  }

 private:
  void strip() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<mpz_class> c_;
};

// Rational-coefficient polynomial used internally by the Sturm machinery.
class RatPolynomial {
 public:
  RatPolynomial() = default;
  explicit RatPolynomial(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) {
    for (mpq_class& v : c_) v.canonicalize();
    strip();
  }

  static RatPolynomial from_int(const IntPolynomial& p) {
    std::vector<mpq_class> c;
    for (int k = 0; k <= p.degree(); ++k) c.emplace_back(p.coeff(k));
    return RatPolynomial(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }

  const mpq_class& coeff(int k) const {
    static const mpq_class zero = 0;
    return (k >= 0 && k <= degree()) ? c_[static_cast<size_t>(k)] : zero;
  }

  mpq_class eval(const mpq_class& x) const {
    mpq_class acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  RatPolynomial derivative() const {
    std::vector<mpq_class> c;
    for (int k = 1; k <= degree(); ++k) c.push_back(mpq_class(k) * coeff(k));
    return RatPolynomial(std::move(c));
  }

  RatPolynomial monic() const {
    check_internal(!is_zero(), "monic of the zero polynomial");
    std::vector<mpq_class> c(c_);
    mpq_class lead = c.back();
    for (mpq_class& v : c) v /= lead;
    return RatPolynomial(std::move(c));
  }

  RatPolynomial negated() const {
    std::vector<mpq_class> c(c_);
    for (mpq_class& v : c) v = -v;
    return RatPolynomial(std::move(c));
  }

  // Remainder of *this by monic-normalized d.
  RatPolynomial rem(const RatPolynomial& d) const {
    check_internal(!d.is_zero(), "remainder by zero polynomial");
    std::vector<mpq_class> r(c_);
    mpq_class lead = d.coeff(d.degree());
    while (static_cast<int>(r.size()) - 1 >= d.degree()) {
      while (!r.empty() && r.back() == 0) r.pop_back();
      int rd = static_cast<int>(r.size()) - 1;
      if (rd < d.degree()) break;
      mpq_class f = r.back() / lead;
      for (int k = 0; k <= d.degree(); ++k)
        r[static_cast<size_t>(rd - d.degree() + k)] -= f * d.coeff(k);
      r.pop_back();
    }
    return RatPolynomial(std::move(r));
  }

 private:
  void strip() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<mpq_class> c_;
};

inline RatPolynomial poly_gcd(RatPolynomial a, RatPolynomial b) {
  while (!b.is_zero()) {
    RatPolynomial r = a.rem(b);
    a = std::move(b);
    b = r.is_zero() ? r : r.monic();
  }
  return a.is_zero() ? a : a.monic();
}

// Multiplies through by the least common denominator.
inline IntPolynomial clear_denominators(const RatPolynomial& p) {
  mpz_class lcm = 1;
  for (int k = 0; k <= p.degree(); ++k) {
    mpz_class den = p.coeff(k).get_den();
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
  }
  std::vector<mpz_class> c;
  for (int k = 0; k <= p.degree(); ++k) {
    mpq_class v = p.coeff(k) * mpq_class(lcm);
    v.canonicalize();
    check_internal(v.get_den() == 1, "denominator clearing failed");
    c.push_back(v.get_num());
  }
  return IntPolynomial(std::move(c));
}

// Sturm chain of the squarefree part. variations() is right-continuous, so
// variations(a) - variations(b) counts distinct real roots in (a, b] for any
// a < b, including root endpoints.
class SturmChain {
 public:
  explicit SturmChain(const IntPolynomial& p) {
    if (p.degree() < 1) throw InputError("root isolation needs degree >= 1");
    RatPolynomial r = RatPolynomial::from_int(p);
    RatPolynomial g = poly_gcd(r, r.derivative());
    squarefree_ = clear_denominators(divide_exact(r, g));
    chain_.push_back(RatPolynomial::from_int(squarefree_).monic());
    chain_.push_back(chain_[0].derivative().monic());
    while (chain_.back().degree() >= 1) {
      RatPolynomial next = chain_[chain_.size() - 2].rem(chain_.back()).negated();
      if (next.is_zero()) break;
      // Scale by a positive factor only; monic() could flip every sign and
      // a sign flip mid-chain invalidates the variation counts.
      chain_.push_back(positive_scaled(next));
    }
  }

  const IntPolynomial& squarefree() const { return squarefree_; }

  int variations(const mpq_class& x) const {
    int count = 0, prev = 0;
    for (const RatPolynomial& p : chain_) {
      int s = sgn(p.eval(x));
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++count;
      prev = s;
    }
    return count;
  }

  // Distinct real roots in (a, b].
  int count_roots(const mpq_class& a, const mpq_class& b) const {
    check_internal(a < b, "count_roots needs a < b");
    return variations(a) - variations(b);
  }

  // All roots lie strictly inside (-B, B).
  mpq_class root_bound() const {
    const IntPolynomial& p = squarefree_;
    mpz_class lead = abs(p.coeff(p.degree()));
    mpq_class best = 0;
    for (int k = 0; k < p.degree(); ++k) {
      mpq_class v = mpq_class(abs(p.coeff(k)), lead);
      v.canonicalize();
      best = std::max(best, v);
    }
    return best + 1;
  }

 private:
  static RatPolynomial positive_scaled(const RatPolynomial& p) {
    mpq_class lead = abs(p.coeff(p.degree()));
    std::vector<mpq_class> c;
    for (int k = 0; k <= p.degree(); ++k) c.push_back(p.coeff(k) / lead);
    return RatPolynomial(std::move(c));
  }

  static RatPolynomial divide_exact(const RatPolynomial& num, const RatPolynomial& den) {
    std::vector<mpq_class> q(static_cast<size_t>(num.degree() - den.degree() + 1));
    std::vector<mpq_class> r;
    for (int k = 0; k <= num.degree(); ++k) r.push_back(num.coeff(k));
    mpq_class lead = den.coeff(den.degree());
    for (int k = static_cast<int>(q.size()) - 1; k >= 0; --k) {
      mpq_class f = r[static_cast<size_t>(k + den.degree())] / lead;
      q[static_cast<size_t>(k)] = f;
      for (int j = 0; j <= den.degree(); ++j) r[static_cast<size_t>(k + j)] -= f * den.coeff(j);
    }
    for (const mpq_class& v : r) check_internal(v == 0, "inexact polynomial division");
    return RatPolynomial(std::move(q));
  }

  IntPolynomial squarefree_;
  std::vector<RatPolynomial> chain_;
};

using RootInterval = std::pair<mpq_class, mpq_class>;  // root in (lo, hi]

// Disjoint isolating intervals for every distinct real root, ascending, each
// refined until hi - lo <= eps.
inline std::vector<RootInterval> isolate_real_roots(const IntPolynomial& p,
                                                    const mpq_class& eps) {
  SturmChain chain(p);
  mpq_class bound = chain.root_bound();
  std::vector<RootInterval> out;
  auto split = [&](auto&& self, const mpq_class& a, const mpq_class& b, int count) -> void {
    if (count == 0) return;
    if (count == 1) {
      mpq_class lo = a, hi = b;
      while (hi - lo > eps) {
        mpq_class mid = (lo + hi) / 2;
        if (chain.count_roots(lo, mid) == 1)
          hi = mid;
        else
          lo = mid;
      }
      out.emplace_back(lo, hi);
      return;
    }
    mpq_class mid = (a + b) / 2;
    int left = chain.count_roots(a, mid);
    self(self, a, mid, left);
    self(self, mid, b, count - left);
  };
  split(split, -bound, bound, chain.count_roots(-bound, bound));
  std::sort(out.begin(), out.end(),
            [](const RootInterval& x, const RootInterval& y) { return x.first < y.first; });
  return out;
}

}  // namespace mdyck
