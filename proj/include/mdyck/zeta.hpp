#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "census.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "height_data.hpp"
#include "power_series.hpp"

namespace mdyck {

// Coefficient placed at z^k, silently dropped when k exceeds the order. The
// truncations here are short enough that a plain monomial() would assert.
inline PowerSeries guarded_monomial(const mpq_class& coef, int k, int order) {
  PowerSeries s(order);
  if (k <= order) s.set(k, coef);
  return s;
}

inline PowerSeries one_minus(const PowerSeries& a) {
  return PowerSeries::constant(1, a.order()) - a;
}

// Excursion generating functions g_0..g_H of the leveled graph. g_h counts
// first returns to level h, weighted by half the word length in z^2.
struct ExcursionFamily {
  HeightData data;
  int order;
  std::vector<PowerSeries> g;

  ExcursionFamily(HeightData d, int ord) : data(std::move(d)), order(ord) {}

  const PowerSeries& at(long h) const { return g[static_cast<size_t>(h)]; }
};

// Solves the cyclic system g_h = N_{h+1} z^2 / (1 - g_{h+1 mod H+1}) by
// fixed-point iteration from the zero family. Each sweep fixes two more
// coefficient orders, so order+1 sweeps always suffice.
inline ExcursionFamily excursion_series(const HeightData& data, int order) {
  long levels = data.levels();
  ExcursionFamily fam(data, order);
  fam.g.assign(static_cast<size_t>(levels), PowerSeries::zero(order));
  bool stable = false;
  for (int sweep = 0; sweep <= order && !stable; ++sweep) {
    std::vector<PowerSeries> next;
    next.reserve(fam.g.size());
    for (long h = 0; h < levels; ++h) {
      long up = (h + 1) % levels;
      PowerSeries step = guarded_monomial(data.count(h + 1), 2, order);
      next.push_back(step * inverse(one_minus(fam.at(up))));
    }
    stable = next == fam.g;
    fam.g = std::move(next);
  }
  check_internal(stable, "excursion iteration failed to stabilize");
  return fam;
}

// Numerator/denominator polynomials of the Moebius maps composed along the
// continued-fraction expansion of g_0: index h holds the composition from
// level h down. g_h = (P0_h - P1_h g_0) / (Q0_h - Q1_h g_0) for every h.
struct PqPolynomials {
  std::vector<PowerSeries> p0, p1, q0, q1;
};

inline PqPolynomials pq_polynomials(const HeightData& data, int order) {
  long top = data.height();
  size_t levels = static_cast<size_t>(data.levels());
  PqPolynomials out;
  out.p0.assign(levels, PowerSeries::zero(order));
  out.p1.assign(levels, PowerSeries::zero(order));
  out.q0.assign(levels, PowerSeries::zero(order));
  out.q1.assign(levels, PowerSeries::zero(order));
  out.p0.back() = guarded_monomial(data.count(top + 1), 2, order);
  out.q0.back() = PowerSeries::constant(1, order);
  out.q1.back() = PowerSeries::constant(1, order);
  for (long h = top - 1; h >= 0; --h) {
    size_t i = static_cast<size_t>(h);
    PowerSeries step = guarded_monomial(data.count(h + 1), 2, order);
    out.p0[i] = step * out.q0[i + 1];
    out.p1[i] = step * out.q1[i + 1];
    out.q0[i] = out.q0[i + 1] - out.p0[i + 1];
    out.q1[i] = out.q1[i + 1] - out.p1[i + 1];
  }
  return out;
}

// The recursion's fraction identity, in multiplied-out form so levels where
// the denominator series has low valuation still compare exactly. On failure
// reports the first offending level through first_failure.
inline bool pq_recursion_check(const HeightData& data, int order, long* first_failure = nullptr) {
  ExcursionFamily fam = excursion_series(data, order);
  PqPolynomials pq = pq_polynomials(data, order);
  const PowerSeries& g0 = fam.at(0);
  for (size_t i = 0; i < fam.g.size(); ++i) {
    PowerSeries lhs = fam.g[i] * (pq.q0[i] - pq.q1[i] * g0);
    PowerSeries rhs = pq.p0[i] - pq.p1[i] * g0;
    if (!(lhs == rhs)) {
      if (first_failure) *first_failure = static_cast<long>(i);
      return false;
    }
  }
  return true;
}

// g_0 as the minus branch of its quadratic Q1_0 g^2 - (Q0_0 + P1_0) g + P0_0.
inline PowerSeries g0_closed_form(const HeightData& data, int order) {
  PqPolynomials pq = pq_polynomials(data, order);
  PowerSeries s = pq.q0[0] + pq.p1[0];
  PowerSeries rad = s * s - mpq_class(4) * (pq.p0[0] * pq.q1[0]);
  return (s - sqrt_series(rad)) * inverse(mpq_class(2) * pq.q1[0]);
}

// Display variant: P0_0 + Q0_0 under the square root, Q1_0 squared inside the
// discriminant, and the leading denominator indexed one level too high.
inline PowerSeries g0_closed_form_as_written(const HeightData& data, int order) {
  if (data.height() < 1)
    throw InputError("the printed closed form indexes a level that a single-level graph lacks");
  PqPolynomials pq = pq_polynomials(data, order);
  PowerSeries s = pq.p0[0] + pq.q0[0];
  PowerSeries rad = s * s - mpq_class(4) * (pq.p0[0] * (pq.q1[0] * pq.q1[0]));
  return (s - sqrt_series(rad)) * inverse(mpq_class(2) * pq.q1[1]);
}

// Zeta factor of the neutral periodic points: prod_h (1 - g_h)^{-v_h} with
// v_h the number of level-h vertices.
inline PowerSeries zeta_neutral(const ExcursionFamily& fam) {
  PowerSeries acc = PowerSeries::constant(1, fam.order);
  for (long h = 0; h <= fam.data.height(); ++h) {
    mpz_class v = fam.data.cumulative(h);
    check_internal(v.fits_slong_p(), "vertex count exceeds machine range");
    acc = acc * pow_int(one_minus(fam.at(h)), -v.get_si());
  }
  return acc;
}

// Generating function of the primitive non-neutral codes: one full tree
// descent (or ascent), decorated by excursions at every level.
inline PowerSeries code_gf(const ExcursionFamily& fam) {
  mpq_class pi(fam.data.product());
  PowerSeries acc = guarded_monomial(pi, static_cast<int>(fam.data.levels()), fam.order);
  for (long h = 0; h <= fam.data.height(); ++h) acc = acc * inverse(one_minus(fam.at(h)));
  return acc;
}

inline PowerSeries zeta_md(const ExcursionFamily& fam) {
  return zeta_neutral(fam) * pow_int(one_minus(code_gf(fam)), -2);
}

inline PowerSeries zeta_md(const HeightData& data, int order) {
  return zeta_md(excursion_series(data, order));
}

// Equivalent product form (prod (1-g_h) - Pi z^code_power)^{-2} *
// prod (1-g_h)^{2-v_h}. The corrected code power is H+1; the display doubles it.
inline PowerSeries zeta_product_form(const ExcursionFamily& fam, int code_power) {
  PowerSeries prod = PowerSeries::constant(1, fam.order);
  for (long h = 0; h <= fam.data.height(); ++h) prod = prod * one_minus(fam.at(h));
  PowerSeries core = prod - guarded_monomial(mpq_class(fam.data.product()), code_power, fam.order);
  PowerSeries acc = pow_int(core, -2);
  for (long h = 0; h <= fam.data.height(); ++h) {
    mpz_class v = fam.data.cumulative(h);
    check_internal(v.fits_slong_p(), "vertex count exceeds machine range");
    acc = acc * pow_int(one_minus(fam.at(h)), 2 - v.get_si());
  }
  return acc;
}

// Closed form for the single-level graph on n loops. The corrected
// denominator reads 1 - 2nz + sqrt(1 - 4nz^2); the display drops the z.
inline PowerSeries dyck_zeta_closed_form(long n, int order, bool corrected) {
  PowerSeries one = PowerSeries::constant(1, order);
  PowerSeries root = sqrt_series(one - guarded_monomial(4 * n, 2, order));
  PowerSeries den = corrected ? one - guarded_monomial(2 * n, 1, order) + root
                              : PowerSeries::constant(1 - 2 * n, order) + root;
  return mpq_class(2) * ((one + root) * pow_int(den, -2));
}

// First-return series of the two-level graph seen from the top: the minus
// branch of F^2 - (1 - (n-m)z^2) F + n z^2.
inline PowerSeries corollary_f(long n, long m, int order) {
  PowerSeries one = PowerSeries::constant(1, order);
  PowerSeries dz2 = guarded_monomial(n - m, 2, order);
  PowerSeries rad = (one + dz2) * (one + dz2) - guarded_monomial(4 * n, 2, order);
  return mpq_class(1, 2) * (one - dz2 - sqrt_series(rad));
}

// Two-level zeta display F F' / (F^n (F F' - n m z^2)). Throws InputError
// when the denominator valuation exceeds the numerator's.
inline PowerSeries corollary_zeta_display(long n, long m, int order) {
  PowerSeries f = corollary_f(n, m, order);
  PowerSeries fp = corollary_f(m, n, order);
  PowerSeries num = f * fp;
  PowerSeries den = pow_int(f, n) * (num - guarded_monomial(n * m, 2, order));
  return divide_with_valuation(num, den);
}

enum class PointClass { neutral, negative, positive };

// Per-class zeta factor exp(sum_n p_n^c z^n / n) straight from the census.
inline PowerSeries zeta_from_class(const PeriodicCensus& cen, PointClass cls, int order) {
  std::vector<mpz_class> counts;
  counts.reserve(cen.rows.size());
  for (const CensusRow& row : cen.rows) {
    switch (cls) {
      case PointClass::neutral: counts.push_back(row.neutral); break;
      case PointClass::negative: counts.push_back(row.negative); break;
      case PointClass::positive: counts.push_back(row.positive); break;
    }
  }
  return zeta_from_counts(counts, order);
}

// One formula-versus-oracle comparison. Corrected entries must match; the
// as-written entries record where each display first deviates.
struct ZetaCheck {
  std::string label;
  bool corrected = false;
  bool evaluable = true;
  PowerSeries candidate;
  PowerSeries reference;
  std::optional<int> mismatch_order;

  ZetaCheck(std::string lbl, bool corr, PowerSeries cand, PowerSeries ref)
      : label(std::move(lbl)),
        corrected(corr),
        candidate(std::move(cand)),
        reference(std::move(ref)),
        mismatch_order(first_mismatch(candidate, reference)) {}

  static ZetaCheck unevaluable(std::string lbl, bool corr) {
    ZetaCheck c(std::move(lbl), corr, PowerSeries::zero(0), PowerSeries::zero(0));
    c.evaluable = false;
    c.mismatch_order.reset();
    return c;
  }

  bool matches() const { return evaluable && !mismatch_order; }
};

struct ZetaReport {
  HeightData data;
  int order;
  int census_order;
  PowerSeries census_zeta;
  bool g_periodic = true;
  std::vector<ZetaCheck> checks;

  ZetaReport(HeightData d, int ord, int cord, PowerSeries cz)
      : data(std::move(d)), order(ord), census_order(cord), census_zeta(std::move(cz)) {}

  bool all_corrected_match() const {
    for (const ZetaCheck& c : checks)
      if (c.corrected && !c.matches()) return false;
    return g_periodic;
  }

  bool any_as_written_defect() const {
    for (const ZetaCheck& c : checks)
      if (!c.corrected && !c.matches()) return true;
    return false;
  }

  const ZetaCheck& find(const std::string& label) const {
    for (const ZetaCheck& c : checks)
      if (c.label == label) return c;
    throw InputError("no zeta check labeled " + label);
  }
};

inline ZetaReport zeta_report(const HeightData& data, int order, int census_order,
                              long budget = kDefaultCensusBudget) {
  Graph graph = build_rotational(data);
  PeriodicCensus cen = census(graph, census_order, budget);
  ZetaReport rep(data, order, census_order, zeta_from_census(cen, census_order));
  ExcursionFamily fam = excursion_series(data, order);

  rep.checks.emplace_back("product formula, corrected", true, zeta_md(fam), rep.census_zeta);
  rep.checks.emplace_back("doubled code exponent in the product formula, as written", false,
                          zeta_product_form(fam, 2 * static_cast<int>(data.levels())),
                          rep.census_zeta);
  rep.checks.emplace_back("neutral-class factor, corrected", true, zeta_neutral(fam),
                          zeta_from_class(cen, PointClass::neutral, census_order));
  PowerSeries code_factor = inverse(one_minus(code_gf(fam)));
  rep.checks.emplace_back("negative-class factor, corrected", true, code_factor,
                          zeta_from_class(cen, PointClass::negative, census_order));
  rep.checks.emplace_back("positive-class factor, corrected", true, code_factor,
                          zeta_from_class(cen, PointClass::positive, census_order));
  rep.checks.emplace_back("base excursion closed form, corrected", true,
                          g0_closed_form(data, order), fam.at(0));
  if (data.height() >= 1) {
    rep.checks.emplace_back("base excursion closed form, as written", false,
                            g0_closed_form_as_written(data, order), fam.at(0));
  } else {
    rep.checks.push_back(ZetaCheck::unevaluable("base excursion closed form, as written", false));
    rep.checks.emplace_back("single-level closed form, corrected", true,
                            dyck_zeta_closed_form(data.count(1), order, true), rep.census_zeta);
    rep.checks.emplace_back("single-level closed form, as written", false,
                            dyck_zeta_closed_form(data.count(1), order, false), rep.census_zeta);
  }
  return rep;
}

// Repeated height data N~ = base^L. The excursion family must be exactly
// L-periodic in the level index, and the corrected product formula on N~ is
// the oracle for the printed repetition-power display (which keeps base
// exponents 2 - v_h and code power z^{2(H+1)} of the base).
inline ZetaReport zeta_periodic_data(const HeightData& base, long reps, int order,
                                     int census_order = 6, long budget = kDefaultCensusBudget) {
  if (reps < 1) throw InputError("repetition count must be at least 1");
  HeightData full = base.repeat(reps);
  Graph graph = build_rotational(full);
  PeriodicCensus cen = census(graph, census_order, budget);
  ZetaReport rep(full, order, census_order, zeta_from_census(cen, census_order));
  ExcursionFamily fam = excursion_series(full, order);

  long base_levels = base.levels();
  for (long h = 0; h < full.levels(); ++h)
    if (!(fam.at(h) == fam.at(h % base_levels))) rep.g_periodic = false;

  PowerSeries corrected_md = zeta_md(fam);
  rep.checks.emplace_back("product formula on the repeated data, corrected", true, corrected_md,
                          rep.census_zeta);

  ExcursionFamily bfam = excursion_series(base, order);
  PowerSeries prod = PowerSeries::constant(1, order);
  for (long h = 0; h <= base.height(); ++h) prod = prod * one_minus(bfam.at(h));
  mpz_class pi_pow;
  mpz_pow_ui(pi_pow.get_mpz_t(), base.product().get_mpz_t(), static_cast<unsigned long>(reps));
  PowerSeries core =
      pow_int(prod, reps) -
      guarded_monomial(mpq_class(pi_pow), 2 * static_cast<int>(base_levels), order);
  PowerSeries display = pow_int(core, -2);
  for (long h = 0; h <= base.height(); ++h) {
    mpz_class v = base.cumulative(h);
    check_internal(v.fits_slong_p(), "vertex count exceeds machine range");
    display = display * pow_int(one_minus(bfam.at(h)), 2 - v.get_si());
  }
  rep.checks.emplace_back("repetition-power display, as written", false, display, corrected_md);
  return rep;
}

inline ZetaReport corollary_42_check(long n, long m, int order, int census_order = 8,
                                     long budget = kDefaultCensusBudget) {
  HeightData data({n, m});
  Graph graph = build_rotational(data);
  PeriodicCensus cen = census(graph, census_order, budget);
  ZetaReport rep(data, order, census_order, zeta_from_census(cen, census_order));
  ExcursionFamily fam = excursion_series(data, order);

  rep.checks.emplace_back("product formula, corrected", true, zeta_md(fam), rep.census_zeta);
  try {
    rep.checks.emplace_back("two-level closed form, as written", false,
                            corollary_zeta_display(n, m, order), rep.census_zeta);
  } catch (const InputError&) {
    rep.checks.push_back(ZetaCheck::unevaluable("two-level closed form, as written", false));
  }
  return rep;
}

}  // namespace mdyck
