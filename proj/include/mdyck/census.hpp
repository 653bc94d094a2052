#pragma once

#include <gmpxx.h>

#include <vector>

#include "semigroup.hpp"

namespace mdyck {

enum class Multiplier { neutral, negative, positive };

inline const char* multiplier_name(Multiplier m) {
  switch (m) {
    case Multiplier::neutral: return "neutral";
    case Multiplier::negative: return "negative";
    default: return "positive";
  }
}

struct CensusRow {
  mpz_class total = 0;
  mpz_class neutral = 0;
  mpz_class negative = 0;
  mpz_class positive = 0;
};

struct PeriodicCensus {
  std::vector<CensusRow> rows;  // rows[n-1] holds the period-n counts

  const CensusRow& at(int n) const { return rows.at(static_cast<size_t>(n) - 1); }
  int n_max() const { return static_cast<int>(rows.size()); }
};

// w spells a periodic point iff w and w*w are both nonzero. One squaring
// suffices: after the seam of w*w reduces, the element's down path feeds the
// next seam identically, so higher powers cannot introduce new cancellation
// failures. verify_power_criterion backs this up empirically.
inline bool is_periodic_word(const Graph& g, std::span<const Letter> w) {
  SemigroupElement r = reduce(g, w);
  if (r.is_zero()) return false;
  return !multiply(g, r, r).is_zero();
}

inline Multiplier classify_word(std::span<const Letter> w) {
  long s = psi_sum(w);
  if (s == 0) return Multiplier::neutral;
  return s < 0 ? Multiplier::negative : Multiplier::positive;
}

inline bool verify_power_criterion(const Graph& g, std::span<const Letter> w, int K) {
  check_internal(K >= 2, "power criterion needs K >= 2");
  Word power;
  bool all_nonzero = true;
  for (int k = 1; k <= K && all_nonzero; ++k) {
    power.insert(power.end(), w.begin(), w.end());
    all_nonzero = is_admissible(g, power);
  }
  return all_nonzero == is_periodic_word(g, w);
}

constexpr long kDefaultCensusBudget = 1L << 26;

// Exhaustive periodic-point counts for periods 1..n_max, found by DFS over
// admissible prefixes. A zero prefix kills every extension, so pruning at the
// first zero is complete. The budget caps visited prefixes.
inline PeriodicCensus census(const Graph& g, int n_max, long budget = kDefaultCensusBudget) {
  if (n_max < 1) throw InputError("census needs n_max >= 1");
  PeriodicCensus out;
  out.rows.resize(static_cast<size_t>(n_max));
  std::vector<Letter> alphabet;
  for (long e = 0; e < static_cast<long>(g.edge_count()); ++e) {
    alphabet.push_back({e, Sign::minus});
    alphabet.push_back({e, Sign::plus});
  }
  long visited = 0;
  auto dfs = [&](auto&& self, const SemigroupElement& r, int depth, long psum) -> void {
    if (++visited > budget) throw BudgetExceeded("census budget exceeded");
    if (!multiply(g, r, r).is_zero()) {
      CensusRow& row = out.rows[static_cast<size_t>(depth) - 1];
      row.total += 1;
      if (psum == 0)
        row.neutral += 1;
      else if (psum < 0)
        row.negative += 1;
      else
        row.positive += 1;
    }
    if (depth == n_max) return;
    for (const Letter& l : alphabet) {
      SemigroupElement next = append_letter(g, r, l);
      if (!next.is_zero()) self(self, next, depth + 1, psum + psi(l));
    }
  };
  for (const Letter& l : alphabet) {
    SemigroupElement r = reduce(g, Word{l});
    dfs(dfs, r, 1, psi(l));
  }
  return out;
}

inline std::vector<mpz_class> edge_shift_traces(const IntMatrix& a, int n_max) {
  std::vector<mpz_class> out;
  out.reserve(static_cast<size_t>(n_max));
  IntMatrix p = a;
  for (int n = 1; n <= n_max; ++n) {
    out.push_back(p.trace());
    if (n < n_max) p = p * a;
  }
  return out;
}

}  // namespace mdyck
