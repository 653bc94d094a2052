#include <catch2/catch_amalgamated.hpp>

#include <optional>
#include <random>
#include <variant>

#include <mdyck/semigroup.hpp>

using namespace mdyck;

namespace {

Word random_word(const Graph& g, std::mt19937_64& rng, int max_len) {
  std::uniform_int_distribution<int> len(1, max_len);
  std::uniform_int_distribution<long> edge(0, static_cast<long>(g.edge_count()) - 1);
  std::uniform_int_distribution<int> sign(0, 1);
  Word w(len(rng));
  for (Letter& l : w) l = {edge(rng), sign(rng) ? Sign::plus : Sign::minus};
  return w;
}

// Independent evaluator: rewrites the word one randomly chosen redex at a
// time (minus-plus cancellation, idempotent absorption) and only checks
// vertex chaining at the very end. Confluence says the result is the same as
// reduce's single left-to-right pass.
struct IdToken {
  long vertex;
};
using Token = std::variant<Letter, IdToken>;

std::optional<SemigroupElement> rewrite_randomly(const Graph& g, const Word& w,
                                                 std::mt19937_64& rng) {
  std::vector<Token> ts(w.begin(), w.end());
  for (;;) {
    std::vector<size_t> redexes;
    for (size_t i = 0; i + 1 < ts.size(); ++i) {
      bool cancel = std::holds_alternative<Letter>(ts[i]) &&
                    std::holds_alternative<Letter>(ts[i + 1]) &&
                    std::get<Letter>(ts[i]).sign == Sign::minus &&
                    std::get<Letter>(ts[i + 1]).sign == Sign::plus;
      bool absorb = std::holds_alternative<IdToken>(ts[i]) ||
                    std::holds_alternative<IdToken>(ts[i + 1]);
      if (cancel || absorb) redexes.push_back(i);
    }
    if (redexes.empty()) break;
    size_t i = redexes[std::uniform_int_distribution<size_t>(0, redexes.size() - 1)(rng)];
    Token a = ts[i], b = ts[i + 1];
    Token merged = IdToken{-1};
    if (std::holds_alternative<Letter>(a) && std::holds_alternative<Letter>(b)) {
      Letter f = std::get<Letter>(a), h = std::get<Letter>(b);
      if (f.edge != h.edge) return SemigroupElement::zero_element();
      merged = IdToken{g.src(f.edge)};
    } else if (std::holds_alternative<IdToken>(a) && std::holds_alternative<IdToken>(b)) {
      if (std::get<IdToken>(a).vertex != std::get<IdToken>(b).vertex)
        return SemigroupElement::zero_element();
      merged = a;
    } else if (std::holds_alternative<IdToken>(a)) {
      Letter l = std::get<Letter>(b);
      if (std::get<IdToken>(a).vertex != letter_src(g, l))
        return SemigroupElement::zero_element();
      merged = b;
    } else {
      Letter l = std::get<Letter>(a);
      if (letter_dst(g, l) != std::get<IdToken>(b).vertex)
        return SemigroupElement::zero_element();
      merged = a;
    }
    ts[i] = merged;
    ts.erase(ts.begin() + static_cast<long>(i) + 1);
  }
  if (ts.size() == 1 && std::holds_alternative<IdToken>(ts[0]))
    return SemigroupElement::idempotent(std::get<IdToken>(ts[0]).vertex);
  // All tokens are letters in normal form; chain them and rebuild.
  Word flat;
  for (const Token& t : ts) flat.push_back(std::get<Letter>(t));
  for (size_t i = 0; i + 1 < flat.size(); ++i)
    if (letter_dst(g, flat[i]) != letter_src(g, flat[i + 1]))
      return SemigroupElement::zero_element();
  SemigroupElement x = SemigroupElement::idempotent(letter_src(g, flat.front()));
  for (const Letter& l : flat) {
    x = append_letter(g, x, l);
    if (x.zero) return x;
  }
  return x;
}

void check_normal_form(const Graph& g, const SemigroupElement& x) {
  if (x.zero) return;
  Word w = spell(x);
  for (size_t i = 0; i + 1 < w.size(); ++i) {
    CHECK_FALSE((w[i].sign == Sign::minus && w[i + 1].sign == Sign::plus));
    CHECK(letter_dst(g, w[i]) == letter_src(g, w[i + 1]));
  }
  if (!w.empty()) {
    CHECK(letter_src(g, w.front()) == x.start(g));
    CHECK(letter_dst(g, w.back()) == x.cursor(g));
  }
  CHECK(psi_sum(w) == static_cast<long>(x.down.size()) - static_cast<long>(x.up.size()));
}

}  // namespace

TEST_CASE("letter geometry and weights") {
  Graph g = build_rotational(HeightData({2}));
  long a = g.edge_by_name("e(1)");
  Letter am{a, Sign::minus}, ap{a, Sign::plus};
  CHECK(letter_src(g, am) == g.src(a));
  CHECK(letter_dst(g, am) == g.dst(a));
  CHECK(letter_src(g, ap) == g.dst(a));
  CHECK(letter_dst(g, ap) == g.src(a));
  CHECK(psi(am) == 1);
  CHECK(psi(ap) == -1);
  CHECK(psi_sum(Word{}) == 0);
  CHECK(psi_sum(Word{am, ap}) == 0);
  long b = g.edge_by_name("e(2)");
  CHECK(psi_sum(Word{am, am, {b, Sign::plus}}) == 1);
}

TEST_CASE("reduce applies the defining relations") {
  Graph g = build_rotational(HeightData({2}));
  long a = g.edge_by_name("e(1)"), b = g.edge_by_name("e(2)");
  Letter am{a, Sign::minus}, ap{a, Sign::plus}, bp{b, Sign::plus};

  SemigroupElement r = reduce(g, Word{am, ap});
  CHECK(r == SemigroupElement::idempotent(g.src(a)));
  CHECK(element_name(g, r) == "1_V(0)");

  CHECK(reduce(g, Word{am, bp}).is_zero());

  SemigroupElement s = reduce(g, Word{ap, am});
  REQUIRE_FALSE(s.is_zero());
  CHECK(s.apex == g.src(a));
  CHECK(s.up == std::vector<long>{a});
  CHECK(s.down == std::vector<long>{a});
  CHECK(element_name(g, s) == "e(1)+ e(1)-");

  CHECK(is_admissible(g, Word{am, am}));
  CHECK_FALSE(is_admissible(g, Word{am, bp}));
  CHECK_THROWS_AS(reduce(g, Word{}), InputError);
}

TEST_CASE("vertex chaining kills mismatched minus letters") {
  Graph g = fibonacci_graph();
  Letter e12m{g.edge_by_name("e12"), Sign::minus};
  Letter e11m{g.edge_by_name("e11"), Sign::minus};
  CHECK_FALSE(is_admissible(g, Word{e12m, e11m}));
  CHECK(is_admissible(g, Word{e11m, e12m}));
}

TEST_CASE("multiply matches the relation table") {
  Graph g = build_rotational(HeightData({1, 2}));
  long f = g.edge_by_name("f(1)");
  SemigroupElement zero = SemigroupElement::zero_element();
  SemigroupElement one_root = SemigroupElement::idempotent(0);
  SemigroupElement one_leaf = SemigroupElement::idempotent(g.dst(f));
  CHECK(multiply(g, zero, one_root).is_zero());
  CHECK(multiply(g, one_root, zero).is_zero());
  CHECK(multiply(g, one_root, one_leaf).is_zero());
  CHECK(multiply(g, one_root, one_root) == one_root);
  Letter fm{f, Sign::minus}, fp{f, Sign::plus};
  CHECK(multiply(g, reduce(g, Word{fm}), reduce(g, Word{fp})) ==
        SemigroupElement::idempotent(g.src(f)));
  CHECK(multiply(g, reduce(g, Word{fp}), reduce(g, Word{fm})) ==
        reduce(g, Word{fp, fm}));
}

TEST_CASE("time reversal is a sign-flipping involution") {
  Graph g = build_rotational(HeightData({2}));
  long a = g.edge_by_name("e(1)"), b = g.edge_by_name("e(2)");
  Word w{{a, Sign::minus}, {b, Sign::minus}};
  Word rev = time_reverse(w);
  CHECK(rev == Word{{b, Sign::plus}, {a, Sign::plus}});
  Word w3{{a, Sign::minus}, {b, Sign::plus}, {a, Sign::plus}};
  CHECK(time_reverse(time_reverse(w3)) == w3);
  Word ok{{a, Sign::minus}, {a, Sign::plus}};
  CHECK(is_admissible(g, ok) == is_admissible(g, time_reverse(ok)));
}

TEST_CASE("confluence against a random-order rewriter") {
  std::mt19937_64 rng(20240517);
  for (const HeightData& data : {HeightData({2}), HeightData({1, 2}), HeightData({1, 1, 2})}) {
    Graph g = build_rotational(data);
    for (int trial = 0; trial < 4000; ++trial) {
      Word w = random_word(g, rng, 10);
      SemigroupElement fast = reduce(g, w);
      auto slow = rewrite_randomly(g, w, rng);
      REQUIRE(slow.has_value());
      CHECK(fast == *slow);
      check_normal_form(g, fast);
    }
  }
}

TEST_CASE("reduce is a homomorphism on splits") {
  std::mt19937_64 rng(777);
  Graph g = build_rotational(HeightData({1, 2}));
  for (int trial = 0; trial < 3000; ++trial) {
    Word w = random_word(g, rng, 12);
    if (w.size() < 2) continue;
    std::uniform_int_distribution<size_t> cut(1, w.size() - 1);
    size_t k = cut(rng);
    Word pre(w.begin(), w.begin() + static_cast<long>(k));
    Word suf(w.begin() + static_cast<long>(k), w.end());
    CHECK(reduce(g, w) == multiply(g, reduce(g, pre), reduce(g, suf)));
  }
}

TEST_CASE("multiply is associative") {
  std::mt19937_64 rng(13);
  for (const HeightData& data : {HeightData({2}), HeightData({1, 2})}) {
    Graph g = build_rotational(data);
    for (int trial = 0; trial < 2000; ++trial) {
      SemigroupElement x = reduce(g, random_word(g, rng, 6));
      SemigroupElement y = reduce(g, random_word(g, rng, 6));
      SemigroupElement z = reduce(g, random_word(g, rng, 6));
      CHECK(multiply(g, multiply(g, x, y), z) == multiply(g, x, multiply(g, y, z)));
    }
  }
}

TEST_CASE("time reversal preserves nonzeroness and swaps the paths") {
  std::mt19937_64 rng(99);
  Graph g = build_rotational(HeightData({1, 2}));
  for (int trial = 0; trial < 3000; ++trial) {
    Word w = random_word(g, rng, 10);
    SemigroupElement fwd = reduce(g, w);
    SemigroupElement bwd = reduce(g, time_reverse(w));
    CHECK(fwd.is_zero() == bwd.is_zero());
    if (!fwd.is_zero()) {
      CHECK(bwd.apex == fwd.apex);
      CHECK(bwd.up == fwd.down);
      CHECK(bwd.down == fwd.up);
    }
  }
}

TEST_CASE("letter serialization round trips") {
  Graph g = build_rotational(HeightData({1, 2}));
  for (long e = 0; e < static_cast<long>(g.edge_count()); ++e) {
    for (Sign s : {Sign::minus, Sign::plus}) {
      Letter l{e, s};
      CHECK(parse_letter(g, letter_name(g, l)) == l);
    }
  }
  CHECK_THROWS_AS(parse_letter(g, "f(1)"), InputError);
  CHECK_THROWS_AS(parse_letter(g, "nope-"), InputError);
  CHECK(element_name(g, SemigroupElement::zero_element()) == "0");
}
