#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "census.hpp"
#include "errors.hpp"

namespace mdyck {

constexpr int kDefaultOrder = 16;

// Truncated formal power series with exact rational coefficients. The
// truncation order T is inclusive and binary operations truncate to the
// smaller T of the operands.
class PowerSeries {
 public:
  explicit PowerSeries(int order) : c_(check_order(order) + 1) {}

  static PowerSeries zero(int order) { return PowerSeries(order); }

  static PowerSeries constant(const mpq_class& v, int order) {
    PowerSeries s(order);
    s.set(0, v);
    return s;
  }

  static PowerSeries monomial(const mpq_class& coef, int k, int order) {
    PowerSeries s(order);
    if (k <= order) s.set(k, coef);
    return s;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }

  const mpq_class& operator[](int k) const { return c_.at(static_cast<size_t>(k)); }

  // Canonicalizes, so callers may pass mpq_class(p, q) fractions directly.
  void set(int k, const mpq_class& v) {
    mpq_class& slot = c_.at(static_cast<size_t>(k));
    slot = v;
    slot.canonicalize();
  }

  bool is_zero() const {
    for (const mpq_class& v : c_)
      if (v != 0) return false;
    return true;
  }

  // Index of the lowest nonzero coefficient; empty for the zero series.
  std::optional<int> valuation() const {
    for (size_t k = 0; k < c_.size(); ++k)
      if (c_[k] != 0) return static_cast<int>(k);
    return std::nullopt;
  }

  PowerSeries truncated(int order) const {
    check_internal(order <= this->order(), "truncated cannot extend");
    PowerSeries s(order);
    for (int k = 0; k <= order; ++k) s.c_[static_cast<size_t>(k)] = c_[static_cast<size_t>(k)];
    return s;
  }

  // Divides by z^k, dropping the truncation order by k. All coefficients
  // below k must vanish.
  PowerSeries shifted_down(int k) const {
    check_internal(k <= order(), "shift exceeds order");
    for (int j = 0; j < k; ++j)
      if (c_[static_cast<size_t>(j)] != 0) throw InputError("shifted_down drops a nonzero term");
    PowerSeries s(order() - k);
    for (int j = k; j <= order(); ++j)
      s.c_[static_cast<size_t>(j - k)] = c_[static_cast<size_t>(j)];
    return s;
  }

  friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries s(std::min(a.order(), b.order()));
    for (int k = 0; k <= s.order(); ++k)
      s.c_[static_cast<size_t>(k)] = a[k] + b[k];
    return s;
  }

  friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries s(std::min(a.order(), b.order()));
    for (int k = 0; k <= s.order(); ++k)
      s.c_[static_cast<size_t>(k)] = a[k] - b[k];
    return s;
  }

  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries s(std::min(a.order(), b.order()));
    for (int i = 0; i <= s.order(); ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; i + j <= s.order(); ++j)
        if (b[j] != 0) s.c_[static_cast<size_t>(i + j)] += a[i] * b[j];
    }
    return s;
  }

  friend PowerSeries operator*(const mpq_class& v, const PowerSeries& a) {
    PowerSeries s(a.order());
    for (int k = 0; k <= a.order(); ++k) s.c_[static_cast<size_t>(k)] = v * a[k];
    return s;
  }

  bool operator==(const PowerSeries&) const = default;

 private:
  static int check_order(int order) {
    if (order < 0) throw InputError("series order must be >= 0");
    return order;
  }

  std::vector<mpq_class> c_;
};

inline PowerSeries inverse(const PowerSeries& a) {
  if (a[0] == 0) throw InputError("series inverse needs a nonzero constant term");
  PowerSeries b(a.order());
  mpq_class lead = 1 / a[0];
  b.set(0, lead);
  for (int n = 1; n <= a.order(); ++n) {
    mpq_class acc = 0;
    for (int k = 1; k <= n; ++k) acc += a[k] * b[n - k];
    b.set(n, -lead * acc);
  }
  return b;
}

inline PowerSeries sqrt_series(const PowerSeries& a) {
  if (a[0] != 1) throw InputError("series sqrt needs constant term 1");
  PowerSeries b(a.order());
  b.set(0, 1);
  for (int n = 1; n <= a.order(); ++n) {
    mpq_class acc = a[n];
    for (int i = 1; i < n; ++i) acc -= b[i] * b[n - i];
    b.set(n, acc / 2);
  }
  return b;
}

inline PowerSeries exp_series(const PowerSeries& a) {
  if (a[0] != 0) throw InputError("series exp needs constant term 0");
  PowerSeries b(a.order());
  b.set(0, 1);
  for (int n = 1; n <= a.order(); ++n) {
    mpq_class acc = 0;
    for (int k = 1; k <= n; ++k) acc += mpq_class(k) * a[k] * b[n - k];
    b.set(n, acc / n);
  }
  return b;
}

inline PowerSeries log_series(const PowerSeries& a) {
  if (a[0] != 1) throw InputError("series log needs constant term 1");
  PowerSeries b(a.order());
  for (int n = 1; n <= a.order(); ++n) {
    mpq_class acc = mpq_class(n) * a[n];
    for (int k = 1; k < n; ++k) acc -= mpq_class(k) * b[k] * a[n - k];
    b.set(n, acc / n);
  }
  return b;
}

inline PowerSeries pow_int(const PowerSeries& a, long m) {
  if (m < 0) return pow_int(inverse(a), -m);
  PowerSeries acc = PowerSeries::constant(1, a.order());
  PowerSeries base = a;
  for (; m > 0; m >>= 1) {
    if (m & 1) acc = acc * base;
    base = base * base;
  }
  return acc;
}

// num/den when den has a zero constant term: strip the common z-power first.
// The quotient loses that many orders of precision.
inline PowerSeries divide_with_valuation(const PowerSeries& num, const PowerSeries& den) {
  std::optional<int> v = den.valuation();
  if (!v) throw InputError("division by the zero series");
  return num.shifted_down(*v) * inverse(den.shifted_down(*v));
}

inline std::optional<int> first_mismatch(const PowerSeries& a, const PowerSeries& b) {
  int top = std::min(a.order(), b.order());
  for (int k = 0; k <= top; ++k)
    if (a[k] != b[k]) return k;
  return std::nullopt;
}

inline PowerSeries zeta_from_counts(const std::vector<mpz_class>& p, int order) {
  if (static_cast<int>(p.size()) < order)
    throw InputError("count sequence shorter than requested order");
  PowerSeries a(order);
  for (int n = 1; n <= order; ++n)
    a.set(n, mpq_class(p[static_cast<size_t>(n) - 1], n));
  return exp_series(a);
}

inline PowerSeries zeta_from_census(const PeriodicCensus& census, int order) {
  std::vector<mpz_class> totals;
  for (const CensusRow& row : census.rows) totals.push_back(row.total);
  return zeta_from_counts(totals, order);
}

inline std::string series_to_string(const PowerSeries& s) {
  std::string out;
  for (int k = 0; k <= s.order(); ++k) {
    const mpq_class& c = s[k];
    if (c == 0) continue;
    mpq_class mag = abs(c);
    if (out.empty())
      out += (c < 0) ? "-" : "";
    else
      out += (c < 0) ? " - " : " + ";
    bool unit = (mag == 1) && k > 0;
    if (!unit) out += mag.get_str();
    if (k > 0) {
      if (!unit) out += " ";
      out += "z";
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace mdyck
