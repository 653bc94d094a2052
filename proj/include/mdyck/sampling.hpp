#pragma once

#include <cmath>
#include <cstddef>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "certified.hpp"
#include "conjugacy.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "height_data.hpp"
#include "matrix.hpp"
#include "semigroup.hpp"
#include "spectra.hpp"

namespace mdyck {

// Maximal-entropy Markov chain on an edge shift: p(e) = r_t(e) / (lambda r_s(e))
// with (lambda, r) the Perron pair of the adjacency matrix.
struct ParryChain {
  Graph graph;
  double lambda = 0;
  std::vector<double> right;       // right Perron vector, sup norm 1
  std::vector<double> stationary;  // pi_v proportional to l_v r_v

  double edge_prob(long e) const {
    return right[static_cast<std::size_t>(graph.dst(e))] /
           (lambda * right[static_cast<std::size_t>(graph.src(e))]);
  }

  double edge_measure(long e) const {
    return stationary[static_cast<std::size_t>(graph.src(e))] * edge_prob(e);
  }

  // Closed-form entropy rate sum_e m(e) log(1/p(e)); telescopes to log lambda.
  double entropy_rate() const {
    double h = 0;
    for (long e = 0; e < graph.edge_count(); e++) h += edge_measure(e) * std::log(1.0 / edge_prob(e));
    return h;
  }
};

namespace detail {

// Dominant eigenvector of A (or its transpose) by power iteration on A + I.
// The shift makes the Perron root strictly dominant in modulus even for
// period-2 spectra, so this converges for every irreducible matrix.
inline std::vector<double> perron_vector(const IntMatrix& a, bool transpose) {
  const long n = a.size();
  std::vector<double> v(static_cast<std::size_t>(n), 1.0);
  std::vector<double> next(static_cast<std::size_t>(n));
  for (long round = 0; round < 200000; round++) {
    double norm = 0;
    for (long i = 0; i < n; i++) {
      double s = v[static_cast<std::size_t>(i)];
      for (long j = 0; j < n; j++) {
        double entry = (transpose ? a.at(j, i) : a.at(i, j)).get_d();
        s += entry * v[static_cast<std::size_t>(j)];
      }
      next[static_cast<std::size_t>(i)] = s;
      norm = std::max(norm, s);
    }
    double drift = 0;
    for (long i = 0; i < n; i++) {
      next[static_cast<std::size_t>(i)] /= norm;
      drift = std::max(drift, std::abs(next[static_cast<std::size_t>(i)] - v[static_cast<std::size_t>(i)]));
    }
    v.swap(next);
    if (drift < 1e-15) return v;
  }
  check_internal(false, "power iteration failed to settle");
  return v;
}

}  // namespace detail

inline ParryChain parry_chain(const Graph& g, const IntMatrix& a) {
  check_internal(a.size() == g.vertex_count(), "adjacency size does not match the graph");
  CertifiedReal lambda = perron_root(a);  // throws InputError when reducible
  ParryChain chain{g, lambda.to_double(), detail::perron_vector(a, false), {}};
  std::vector<double> left = detail::perron_vector(a, true);
  double total = 0;
  for (long v = 0; v < a.size(); v++)
    total += left[static_cast<std::size_t>(v)] * chain.right[static_cast<std::size_t>(v)];
  for (long v = 0; v < a.size(); v++)
    chain.stationary.push_back(left[static_cast<std::size_t>(v)] * chain.right[static_cast<std::size_t>(v)] / total);
  return chain;
}

inline ParryChain parry_chain(const IntMatrix& a) {
  std::vector<VertexLabel> vertices;
  std::vector<Edge> edges;
  std::vector<EdgeLabel> labels;
  for (long v = 0; v < a.size(); v++) vertices.push_back({"V" + std::to_string(v + 1), {v + 1}});
  for (long r = 0; r < a.size(); r++)
    for (long c = 0; c < a.size(); c++)
      for (mpz_class k = 1; k <= a.at(r, c); k++) {
        std::string name =
            "m(" + std::to_string(r + 1) + "," + std::to_string(c + 1) + ")#" + k.get_str();
        edges.push_back({r, c});
        labels.push_back({EdgeKind::plain, {r + 1, c + 1, k.get_si()}, std::move(name)});
      }
  return parry_chain(Graph(std::move(vertices), std::move(edges), std::move(labels)), a);
}

inline ParryChain parry_chain(const HeightData& data) {
  auto [graph, matrix] = build_companion(data);
  return parry_chain(graph, matrix);
}

struct SamplePath {
  std::string prng = "mt19937_64";
  unsigned long long seed = 0;
  long start_vertex = 0;
  WindowX window;  // offset 0
};

inline SamplePath sample_path(const ParryChain& chain, long length, unsigned long long seed) {
  if (length < 1) throw InputError("sample length must be positive");
  std::mt19937_64 rng(seed);
  auto uniform = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  SamplePath out;
  out.seed = seed;
  long v = 0;
  {
    double u = uniform();
    double acc = 0;
    for (long w = 0; w < chain.graph.vertex_count(); w++) {
      acc += chain.stationary[static_cast<std::size_t>(w)];
      if (u < acc) {
        v = w;
        break;
      }
      v = w;
    }
  }
  out.start_vertex = v;
  out.window.edges.reserve(static_cast<std::size_t>(length));
  for (long i = 0; i < length; i++) {
    const std::vector<long>& pool = chain.graph.out_edges(v);
    double u = uniform();
    double acc = 0;
    long pick = pool.back();
    for (long e : pool) {
      acc += chain.edge_prob(e);
      if (u < acc) {
        pick = e;
        break;
      }
    }
    out.window.edges.push_back(pick);
    v = chain.graph.dst(pick);
  }
  return out;
}

// Empirical checks for the two maximal-entropy measures: the Parry sample on
// the companion graph, decoded windowwise into shift letters, and its time
// reversal standing in for the second measure.
struct MmeReport {
  HeightData data;
  explicit MmeReport(HeightData d) : data(std::move(d)) {}

  long steps = 0;
  unsigned long long seed = 0;
  std::string prng = "mt19937_64";
  double log_lambda = 0;

  double freq_plus = 0;   // empirical frequency of phi = +1
  double freq_minus = 0;  // of phi = -1
  double guard_band = 0;  // 3 sigma for the frequency gap
  bool plus_dominates = false;

  std::vector<double> block_entropy;        // H_k for k-blocks, k = 1..4
  std::vector<double> conditional_entropy;  // H_k - H_{k-1}; index 0 is H_1
  double conditional_gap = 0;               // max over k >= 2 of |h_k - log lambda|

  long window_length = 0;
  long windows = 0;
  long positions = 0;
  long determined = 0;
  bool decoded_admissible = false;

  bool reversed_admissible = false;
  double reversed_freq_plus = 0;
  bool reversed_mirrored = false;

  bool all_pass() const {
    return plus_dominates && conditional_gap <= 0.05 && decoded_admissible &&
           reversed_admissible && reversed_mirrored;
  }
};

inline MmeReport mme_checks(const HeightData& data, long steps, unsigned long long seed) {
  if (steps < 1) throw InputError("step count must be positive");
  ConjugacyContext ctx(data);
  ParryChain chain = parry_chain(ctx.companion, ctx.companion_matrix);

  MmeReport rep(data);
  rep.steps = steps;
  rep.seed = seed;
  rep.log_lambda = log_enclosure(perron_root(ctx.companion_matrix)).to_double();

  SamplePath path = sample_path(chain, steps, seed);
  const std::vector<long>& edges = path.window.edges;

  long plus = 0;
  for (long e : edges)
    if (phi(ctx.companion, e) == 1) plus++;
  rep.freq_plus = static_cast<double>(plus) / static_cast<double>(steps);
  rep.freq_minus = 1.0 - rep.freq_plus;
  double mean = rep.freq_plus - rep.freq_minus;
  rep.guard_band = 3.0 * std::sqrt(std::max(0.0, 1.0 - mean * mean) / static_cast<double>(steps));
  rep.plus_dominates = mean > rep.guard_band;

  // Plug-in block entropies over the companion letters. The k-gram key packs
  // edge ids in base edge_count.
  const unsigned long long base = static_cast<unsigned long long>(ctx.companion.edge_count());
  for (long k = 1; k <= 4; k++) {
    std::unordered_map<unsigned long long, long> counts;
    const long total = steps - k + 1;
    if (total < 1) break;
    unsigned long long key = 0;
    unsigned long long wrap = 1;
    for (long j = 0; j < k; j++) wrap *= base;
    for (long i = 0; i < steps; i++) {
      key = (key * base + static_cast<unsigned long long>(edges[static_cast<std::size_t>(i)])) % wrap;
      if (i >= k - 1) counts[key]++;
    }
    double h = 0;
    for (const auto& [block, c] : counts) {
      (void)block;
      double f = static_cast<double>(c) / static_cast<double>(total);
      h -= f * std::log(f);
    }
    rep.block_entropy.push_back(h);
    double prev = (k == 1) ? 0.0 : rep.block_entropy[static_cast<std::size_t>(k - 2)];
    rep.conditional_entropy.push_back(h - prev);
    if (k >= 2)
      rep.conditional_gap =
          std::max(rep.conditional_gap, std::abs(rep.conditional_entropy.back() - rep.log_lambda));
  }

  // Windowwise decode; every determined stretch must spell an admissible word.
  rep.window_length = std::min<long>(steps, 512);
  rep.decoded_admissible = true;
  Word longest_run;
  for (long begin = 0; begin + rep.window_length <= steps; begin += rep.window_length) {
    WindowX chunk{-rep.window_length,
                  {edges.begin() + begin, edges.begin() + begin + rep.window_length}};
    DecodedWindow dec = omega_decode(ctx, chunk);
    rep.windows++;
    Word run;
    auto flush = [&]() {
      if (!run.empty() && !is_admissible(ctx.graph, run)) rep.decoded_admissible = false;
      if (run.size() > longest_run.size()) longest_run = run;
      run.clear();
    };
    for (const auto& letter : dec.letters) {
      rep.positions++;
      if (letter.has_value()) {
        rep.determined++;
        run.push_back(*letter);
      } else {
        flush();
      }
    }
    flush();
  }

  // The mirror sample: time reversal of the decoded word represents the
  // second maximal-entropy measure; its weight inequality flips.
  if (!longest_run.empty()) {
    Word mirrored = time_reverse(longest_run);
    rep.reversed_admissible = is_admissible(ctx.graph, mirrored);
    long rplus = 0;
    for (const Letter& l : mirrored)
      if (psi(l) == 1) rplus++;
    rep.reversed_freq_plus = static_cast<double>(rplus) / static_cast<double>(mirrored.size());
    rep.reversed_mirrored = rep.reversed_freq_plus < 0.5;
  }
  return rep;
}

}  // namespace mdyck
