#pragma once

#include <gmpxx.h>

#include <vector>

#include "errors.hpp"

namespace mdyck {

// Dense square matrix of arbitrary-precision integers. Small sizes only; used
// for companion adjacency matrices, their powers, and characteristic
// polynomials.
class IntMatrix {
 public:
  explicit IntMatrix(long n) : n_(n), a_(static_cast<std::size_t>(n * n), mpz_class(0)) {
    check_internal(n >= 1, "matrix size must be positive");
  }

  static IntMatrix identity(long n) {
    IntMatrix m(n);
    for (long i = 0; i < n; i++) m.at(i, i) = 1;
    return m;
  }

  long size() const { return n_; }

  mpz_class& at(long i, long j) { return a_[static_cast<std::size_t>(i * n_ + j)]; }
  const mpz_class& at(long i, long j) const { return a_[static_cast<std::size_t>(i * n_ + j)]; }

  IntMatrix operator*(const IntMatrix& other) const {
    check_internal(n_ == other.n_, "matrix size mismatch");
    IntMatrix out(n_);
    for (long i = 0; i < n_; i++)
      for (long k = 0; k < n_; k++) {
        const mpz_class& aik = at(i, k);
        if (aik == 0) continue;
        for (long j = 0; j < n_; j++) out.at(i, j) += aik * other.at(k, j);
      }
    return out;
  }

  IntMatrix operator+(const IntMatrix& other) const {
    check_internal(n_ == other.n_, "matrix size mismatch");
    IntMatrix out(n_);
    for (long i = 0; i < n_; i++)
      for (long j = 0; j < n_; j++) out.at(i, j) = at(i, j) + other.at(i, j);
    return out;
  }

  bool operator==(const IntMatrix&) const = default;

  mpz_class trace() const {
    mpz_class t = 0;
    for (long i = 0; i < n_; i++) t += at(i, i);
    return t;
  }

  mpz_class row_sum(long i) const {
    mpz_class s = 0;
    for (long j = 0; j < n_; j++) s += at(i, j);
    return s;
  }

  mpz_class min_row_sum() const {
    mpz_class m = row_sum(0);
    for (long i = 1; i < n_; i++) m = std::min(m, row_sum(i));
    return m;
  }

  mpz_class max_row_sum() const {
    mpz_class m = row_sum(0);
    for (long i = 1; i < n_; i++) m = std::max(m, row_sum(i));
    return m;
  }

  // Irreducibility of a non-negative matrix: the digraph on positive entries
  // is strongly connected. Checked by forward and backward reachability from
  // vertex 0.
  bool is_irreducible() const {
    auto reach = [&](bool forward) {
      std::vector<char> seen(static_cast<std::size_t>(n_), 0);
      std::vector<long> stack = {0};
      seen[0] = 1;
      while (!stack.empty()) {
        long v = stack.back();
        stack.pop_back();
        for (long w = 0; w < n_; w++) {
          const mpz_class& entry = forward ? at(v, w) : at(w, v);
          if (entry > 0 && !seen[static_cast<std::size_t>(w)]) {
            seen[static_cast<std::size_t>(w)] = 1;
            stack.push_back(w);
          }
        }
      }
      for (char s : seen)
        if (!s) return false;
      return true;
    };
    return reach(true) && reach(false);
  }

 private:
  long n_;
  std::vector<mpz_class> a_;
};

}  // namespace mdyck
