#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"
#include "height_data.hpp"
#include "matrix.hpp"
#include "semigroup.hpp"

namespace mdyck {

// The rotational graph together with its companion cycle. All window
// transforms below run against one of these.
struct ConjugacyContext {
  HeightData data;
  Graph graph;
  Graph companion;
  IntMatrix companion_matrix;

  explicit ConjugacyContext(const HeightData& d)
      : data(d),
        graph(build_rotational(d)),
        companion(build_companion(d).first),
        companion_matrix(build_companion(d).second) {}
};

// Weight of a companion edge: +1 on the forward (descending) edges, -1 on
// the backward ones. The companion walk moves through the level cycle by
// exactly this amount each step.
inline int phi(const Graph& companion, long edge) {
  EdgeKind kind = companion.edge_label(edge).kind;
  if (kind == EdgeKind::comp_minus) return 1;
  if (kind == EdgeKind::comp_plus) return -1;
  throw InputError("phi needs a companion edge");
}

// A block of shift letters with an absolute position for its first entry.
struct WindowY {
  long offset = 0;
  Word letters;

  long size() const { return static_cast<long>(letters.size()); }
  bool covers(long p) const { return p >= offset && p < offset + size(); }
  const Letter& at(long p) const {
    if (!covers(p)) throw InputError("window does not cover the requested position");
    return letters[static_cast<std::size_t>(p - offset)];
  }
};

// A block of companion edges, same indexing convention.
struct WindowX {
  long offset = 0;
  std::vector<long> edges;

  long size() const { return static_cast<long>(edges.size()); }
  bool covers(long p) const { return p >= offset && p < offset + size(); }
  long at(long p) const {
    if (!covers(p)) throw InputError("window does not cover the requested position");
    return edges[static_cast<std::size_t>(p - offset)];
  }

  bool operator==(const WindowX&) const = default;
};

namespace detail {

template <typename WeightAt>
bool depth_condition(long depth, long offset, long end, WeightAt weight_at) {
  if (depth < 1) throw InputError("condition depth must be at least 1");
  if (offset > -depth || end < 0) throw InputError("window must cover positions -depth..-1");
  long sum = 0;
  for (long p = -depth; p <= -1; p++) {
    sum += weight_at(p);
    if (p < -1 && sum < 0) return false;
  }
  return sum == -1;
}

}  // namespace detail

// True when the depth letters before position 0 descend net one level with
// no intermediate prefix dipping below the start.
inline bool satisfies_condition(const WindowY& y, long depth) {
  return detail::depth_condition(depth, y.offset, y.offset + y.size(),
                                 [&](long p) { return psi(y.at(p)); });
}

inline bool satisfies_condition(const ConjugacyContext& ctx, const WindowX& x, long depth) {
  return detail::depth_condition(depth, x.offset, x.offset + x.size(),
                                 [&](long p) { return phi(ctx.companion, x.at(p)); });
}

namespace detail {

inline long companion_minus_edge(const Graph& companion, long level, long n) {
  for (long e = 0; e < companion.edge_count(); e++) {
    const EdgeLabel& lbl = companion.edge_label(e);
    if (lbl.kind == EdgeKind::comp_minus && lbl.tuple[0] == level && lbl.tuple[1] == n) return e;
  }
  throw InputError("no forward companion edge at the requested level");
}

inline long companion_plus_edge(const Graph& companion, long level) {
  for (long e = 0; e < companion.edge_count(); e++) {
    const EdgeLabel& lbl = companion.edge_label(e);
    if (lbl.kind == EdgeKind::comp_plus && lbl.tuple[0] == level) return e;
  }
  throw InputError("no backward companion edge at the requested level");
}

inline long rotational_edge(const Graph& g, EdgeKind kind, const std::vector<long>& tuple) {
  for (long e = 0; e < g.edge_count(); e++) {
    const EdgeLabel& lbl = g.edge_label(e);
    if (lbl.kind == kind && lbl.tuple == tuple) return e;
  }
  throw InputError("no edge with the requested index tuple");
}

inline bool is_path(const Graph& g, const std::vector<long>& edges) {
  for (std::size_t i = 0; i + 1 < edges.size(); i++)
    if (g.dst(edges[i]) != g.src(edges[i + 1])) return false;
  return true;
}

}  // namespace detail

// Letterwise 1-block image: a signed tree or return edge of depth h maps to
// the companion edge of level h with the same sign; only the last branch
// index survives.
inline WindowX omega_encode(const ConjugacyContext& ctx, const WindowY& y) {
  WindowX out{y.offset, {}};
  if (y.letters.empty()) return out;
  if (!is_admissible(ctx.graph, y.letters)) throw InputError("window is not admissible");
  out.edges.reserve(y.letters.size());
  for (const Letter& l : y.letters) {
    const EdgeLabel& lbl = ctx.graph.edge_label(l.edge);
    long level = static_cast<long>(lbl.tuple.size());
    out.edges.push_back(l.sign == Sign::minus
                            ? detail::companion_minus_edge(ctx.companion, level, lbl.tuple.back())
                            : detail::companion_plus_edge(ctx.companion, level));
  }
  check_internal(detail::is_path(ctx.companion, out.edges), "encoded image is not a path");
  return out;
}

namespace detail {

// Return times before the anchor: the k-th value is the least m whose
// backward weight sum phi(x_{anchor-1}) + ... + phi(x_{anchor-m}) equals k,
// the position of the k-th unmatched descent. Stops at the window edge or
// after max_k values (max_k < 0 means no bound).
inline std::vector<long> return_times_at(const ConjugacyContext& ctx, const WindowX& x,
                                         long anchor, long max_k) {
  std::vector<long> times;
  long sum = 0;
  long next = 1;
  for (long m = 1; anchor - m >= x.offset; m++) {
    if (max_k >= 0 && next > max_k) break;
    sum += phi(ctx.companion, x.at(anchor - m));
    if (sum == next) {
      times.push_back(m);
      next++;
    }
  }
  return times;
}

}  // namespace detail

inline std::vector<long> return_times(const ConjugacyContext& ctx, const WindowX& x,
                                      long max_k = -1) {
  return detail::return_times_at(ctx, x, 0, max_k);
}

// Decoded window: one optional letter per input position, empty where the
// window's past cannot determine the preimage.
struct DecodedWindow {
  long offset = 0;
  std::vector<std::optional<Letter>> letters;
};

// Inverts the 1-block image positionwise. The letter at the k-th return time
// is always a forward companion edge whose level is forced by the walk, and
// its branch index is the k-th missing tuple coordinate:
//   c-_1(n), more than one level:   f(n)- outright;
//   c-_h(n), 1 < h <= H:            f(n_1..n_h)-, ancestors at I_1..I_{h-1};
//   c-_{H+1}(n):                    e(n_1..n_{H+1})-, ancestors at I_1..I_H;
//   c+_h, h <= H:                   f(n_1..n_h)+, all coordinates at I_1..I_h;
//   c+_{H+1}:                       e(n_1..n_{H+1})+, coordinates at I_1..I_{H+1}.
inline DecodedWindow omega_decode(const ConjugacyContext& ctx, const WindowX& x) {
  if (!detail::is_path(ctx.companion, x.edges)) throw InputError("window is not a companion path");
  const long levels = ctx.data.levels();
  DecodedWindow out{x.offset, {}};
  out.letters.resize(x.edges.size());

  auto minus_index = [&](long p, long expected_level) {
    const EdgeLabel& lbl = ctx.companion.edge_label(x.at(p));
    check_internal(lbl.kind == EdgeKind::comp_minus && lbl.tuple[0] == expected_level,
                   "return time does not point at the forced descent");
    return lbl.tuple[1];
  };

  for (long i = 0; i < x.size(); i++) {
    long anchor = x.offset + i;
    const EdgeLabel& lbl = ctx.companion.edge_label(x.edges[static_cast<std::size_t>(i)]);
    const bool minus = lbl.kind == EdgeKind::comp_minus;
    const long level = lbl.tuple[0];

    std::vector<long> tuple;
    long need = 0;
    if (minus) {
      if (level == 1 && levels > 1) {
        long e = detail::rotational_edge(ctx.graph, EdgeKind::tree, {lbl.tuple[1]});
        out.letters[static_cast<std::size_t>(i)] = Letter{e, Sign::minus};
        continue;
      }
      tuple.resize(static_cast<std::size_t>(level));
      tuple.back() = lbl.tuple[1];
      need = level - 1;
    } else {
      tuple.resize(static_cast<std::size_t>(level));
      need = level;
    }

    std::vector<long> times = detail::return_times_at(ctx, x, anchor, need);
    if (static_cast<long>(times.size()) < need) continue;
    for (long k = 1; k <= need; k++) {
      // Walking back unmatched descents climbs the level cycle one step per
      // return time, starting just below the present letter's depth.
      long expected = minus ? level - k : level - k + 1;
      tuple[static_cast<std::size_t>(expected - 1)] =
          minus_index(anchor - times[static_cast<std::size_t>(k - 1)], expected);
    }

    EdgeKind kind = level == levels ? EdgeKind::ret : EdgeKind::tree;
    long e = detail::rotational_edge(ctx.graph, kind, tuple);
    out.letters[static_cast<std::size_t>(i)] = Letter{e, minus ? Sign::minus : Sign::plus};
  }
  return out;
}

// Level reduction of companion windows from the reps-fold repeated data back
// to the base: level h maps to ((h-1) mod (H+1)) + 1, sign and branch index
// unchanged.
inline WindowX theta_map(const HeightData& base, long reps, const WindowX& xt) {
  if (reps < 1) throw InputError("repetition count must be at least 1");
  Graph big = build_companion(base.repeat(reps)).first;
  Graph small = build_companion(base).first;
  const long base_levels = base.levels();
  WindowX out{xt.offset, {}};
  out.edges.reserve(xt.edges.size());
  for (long e : xt.edges) {
    const EdgeLabel& lbl = big.edge_label(e);
    long level = (lbl.tuple[0] - 1) % base_levels + 1;
    out.edges.push_back(lbl.kind == EdgeKind::comp_minus
                            ? detail::companion_minus_edge(small, level, lbl.tuple[1])
                            : detail::companion_plus_edge(small, level));
  }
  check_internal(detail::is_path(small, out.edges), "level reduction broke the path");
  return out;
}

// Exhaustive local check that the level reduction is one-to-one on edge
// stars: every base edge at an image vertex lifts uniquely, forward and
// backward.
inline bool resolving_check(const HeightData& base, long reps) {
  if (reps < 1) throw InputError("repetition count must be at least 1");
  Graph big = build_companion(base.repeat(reps)).first;
  Graph small = build_companion(base).first;
  const long base_levels = base.levels();

  auto image = [&](long e) {
    const EdgeLabel& lbl = big.edge_label(e);
    long level = (lbl.tuple[0] - 1) % base_levels + 1;
    return lbl.kind == EdgeKind::comp_minus
               ? detail::companion_minus_edge(small, level, lbl.tuple[1])
               : detail::companion_plus_edge(small, level);
  };
  for (long e = 0; e < big.edge_count(); e++) {
    long c = image(e);
    check_internal(small.src(c) == big.src(e) % base_levels &&
                       small.dst(c) == big.dst(e) % base_levels,
                   "level reduction is not a graph homomorphism");
  }

  for (long vt = 0; vt < big.vertex_count(); vt++) {
    long v = vt % base_levels;
    for (long c : small.out_edges(v)) {
      long lifts = 0;
      for (long e : big.out_edges(vt))
        if (image(e) == c) lifts++;
      if (lifts != 1) return false;
    }
    for (long c : small.in_edges(v)) {
      long lifts = 0;
      for (long e : big.in_edges(vt))
        if (image(e) == c) lifts++;
      if (lifts != 1) return false;
    }
  }
  return true;
}

// Pseudo-random admissible window, grown letterwise in normal form so every
// prefix stays admissible. Forward letters are drawn with probability
// minus_bias, which keeps the down stack deep enough that most backward
// letters cancel inside the window.
inline WindowY sample_window(const ConjugacyContext& ctx, long length, unsigned long long seed,
                             double minus_bias = 0.6) {
  std::mt19937_64 rng(seed);
  auto uniform = [&]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  auto pick = [&](const std::vector<long>& pool) {
    auto i = static_cast<std::size_t>(uniform() * static_cast<double>(pool.size()));
    return pool[std::min(i, pool.size() - 1)];
  };

  WindowY out{0, {}};
  out.letters.reserve(static_cast<std::size_t>(length));
  long start = pick([&] {
    std::vector<long> all(static_cast<std::size_t>(ctx.graph.vertex_count()));
    for (long v = 0; v < ctx.graph.vertex_count(); v++) all[static_cast<std::size_t>(v)] = v;
    return all;
  }());
  SemigroupElement state = SemigroupElement::idempotent(start);
  for (long i = 0; i < length; i++) {
    long cursor = state.cursor(ctx.graph);
    Letter next;
    if (uniform() < minus_bias) {
      next = {pick(ctx.graph.out_edges(cursor)), Sign::minus};
    } else if (!state.down.empty()) {
      next = {state.down.back(), Sign::plus};
    } else {
      next = {pick(ctx.graph.in_edges(cursor)), Sign::plus};
    }
    state = append_letter(ctx.graph, state, next);
    check_internal(!state.is_zero(), "sampler stepped outside the admissible language");
    out.letters.push_back(next);
  }
  return out;
}

}  // namespace mdyck
