#pragma once

#include <span>
#include <string>
#include <vector>

#include "graph.hpp"

namespace mdyck {

enum class Sign { minus, plus };

// A letter of the Markov-Dyck alphabet: a graph edge with a sign.
struct Letter {
  long edge = 0;
  Sign sign = Sign::minus;

  bool operator==(const Letter&) const = default;
};

using Word = std::vector<Letter>;

inline int psi(const Letter& l) { return l.sign == Sign::minus ? 1 : -1; }

// Source/target of a letter: e- runs along the edge, e+ runs against it.
inline long letter_src(const Graph& g, const Letter& l) {
  return l.sign == Sign::minus ? g.src(l.edge) : g.dst(l.edge);
}
inline long letter_dst(const Graph& g, const Letter& l) {
  return l.sign == Sign::minus ? g.dst(l.edge) : g.src(l.edge);
}

inline long psi_sum(std::span<const Letter> w) {
  long s = 0;
  for (const Letter& l : w) s += psi(l);
  return s;
}

// Reverse the order and flip every sign.
inline Word time_reverse(std::span<const Letter> w) {
  Word out(w.rbegin(), w.rend());
  for (Letter& l : out) l.sign = (l.sign == Sign::minus) ? Sign::plus : Sign::minus;
  return out;
}

inline std::string letter_name(const Graph& g, const Letter& l) {
  return g.edge_label(l.edge).name + (l.sign == Sign::minus ? "-" : "+");
}

inline Letter parse_letter(const Graph& g, const std::string& text) {
  if (text.empty()) throw InputError("empty letter");
  char sign = text.back();
  if (sign != '-' && sign != '+') throw InputError("letter must end in - or +: " + text);
  return {g.edge_by_name(text.substr(0, text.size() - 1)),
          sign == '-' ? Sign::minus : Sign::plus};
}

// Normal form of a nonzero product: an apex vertex, an "up" path p_1..p_k and
// a "down" path q_1..q_l, both directed paths starting at the apex. The
// element spells the word p_k+ ... p_1+ q_1- ... q_l-, so no minus letter is
// ever followed by a plus letter and only the seam between the blocks can
// cancel. k = l = 0 is the idempotent of the apex vertex.
struct SemigroupElement {
  bool zero = true;
  long apex = -1;
  std::vector<long> up;
  std::vector<long> down;

  static SemigroupElement zero_element() { return {}; }
  static SemigroupElement idempotent(long vertex) { return {false, vertex, {}, {}}; }

  bool is_zero() const { return zero; }
  bool is_idempotent() const { return !zero && up.empty() && down.empty(); }

  // Target vertex of the spelled word (apex for an idempotent).
  long cursor(const Graph& g) const {
    check_internal(!zero, "cursor of zero");
    return down.empty() ? apex : g.dst(down.back());
  }

  // Source vertex of the spelled word.
  long start(const Graph& g) const {
    check_internal(!zero, "start of zero");
    return up.empty() ? apex : g.dst(up.back());
  }

  bool operator==(const SemigroupElement&) const = default;
};

// Multiplies a normal form by one letter on the right. Every relation of the
// graph inverse semigroup is applied here: vertex chaining mismatches kill
// the product, and a plus letter meeting the innermost down edge either
// cancels it (same edge) or yields zero (different edge).
inline SemigroupElement append_letter(const Graph& g, SemigroupElement x, const Letter& l) {
  if (x.zero) return x;
  if (l.sign == Sign::minus) {
    if (x.cursor(g) != g.src(l.edge)) return SemigroupElement::zero_element();
    x.down.push_back(l.edge);
    return x;
  }
  if (!x.down.empty()) {
    if (x.down.back() != l.edge) return SemigroupElement::zero_element();
    x.down.pop_back();
    return x;
  }
  // Plus letter against an ascending (or idempotent) element: extend the up
  // path below the apex.
  if (x.apex != g.dst(l.edge)) return SemigroupElement::zero_element();
  x.up.insert(x.up.begin(), l.edge);
  x.apex = g.src(l.edge);
  return x;
}

// The word spelled by a nonzero element.
inline Word spell(const SemigroupElement& x) {
  check_internal(!x.zero, "spell of zero");
  Word w;
  w.reserve(x.up.size() + x.down.size());
  for (auto it = x.up.rbegin(); it != x.up.rend(); ++it) w.push_back({*it, Sign::plus});
  for (long e : x.down) w.push_back({e, Sign::minus});
  return w;
}

inline SemigroupElement multiply(const Graph& g, const SemigroupElement& a,
                                 const SemigroupElement& b) {
  if (a.zero || b.zero) return SemigroupElement::zero_element();
  if (b.is_idempotent())
    return a.cursor(g) == b.apex ? a : SemigroupElement::zero_element();
  SemigroupElement out = a;
  for (const Letter& l : spell(b)) {
    out = append_letter(g, out, l);
    if (out.zero) break;
  }
  return out;
}

inline SemigroupElement reduce(const Graph& g, std::span<const Letter> w) {
  if (w.empty()) throw InputError("reduce needs a nonempty word");
  SemigroupElement x = SemigroupElement::idempotent(letter_src(g, w.front()));
  for (const Letter& l : w) {
    x = append_letter(g, x, l);
    if (x.zero) break;
  }
  return x;
}

inline bool is_admissible(const Graph& g, std::span<const Letter> w) {
  return !reduce(g, w).is_zero();
}

inline std::string element_name(const Graph& g, const SemigroupElement& x) {
  if (x.zero) return "0";
  if (x.is_idempotent()) return "1_" + g.vertex_label(x.apex).name;
  std::string out;
  for (const Letter& l : spell(x)) {
    if (!out.empty()) out += " ";
    out += letter_name(g, l);
  }
  return out;
}

}  // namespace mdyck
