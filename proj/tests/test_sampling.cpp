#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include <mdyck/sampling.hpp>

using namespace mdyck;

namespace {

IntMatrix matrix_of(std::vector<std::vector<long>> rows) {
  IntMatrix a(static_cast<long>(rows.size()));
  for (long r = 0; r < a.size(); r++)
    for (long c = 0; c < a.size(); c++) a.at(r, c) = rows[static_cast<size_t>(r)][static_cast<size_t>(c)];
  return a;
}

void check_chain_invariants(const ParryChain& chain) {
  for (long v = 0; v < chain.graph.vertex_count(); v++) {
    double row = 0;
    for (long e : chain.graph.out_edges(v)) {
      CHECK(chain.edge_prob(e) > 0);
      row += chain.edge_prob(e);
    }
    CHECK(std::abs(row - 1.0) < 1e-12);
  }
  double mass = 0;
  for (long w = 0; w < chain.graph.vertex_count(); w++) {
    double in = 0;
    for (long e : chain.graph.in_edges(w)) in += chain.edge_measure(e);
    CHECK(std::abs(in - chain.stationary[static_cast<size_t>(w)]) < 1e-10);
    mass += chain.stationary[static_cast<size_t>(w)];
  }
  CHECK(std::abs(mass - 1.0) < 1e-12);
}

}  // namespace

TEST_CASE("parry chain on a two-state matrix") {
  ParryChain chain = parry_chain(matrix_of({{0, 3}, {2, 0}}));
  REQUIRE(chain.graph.edge_count() == 5);
  check_chain_invariants(chain);
  for (long e : chain.graph.out_edges(0)) CHECK(chain.edge_prob(e) == Catch::Approx(1.0 / 3).epsilon(1e-12));
  for (long e : chain.graph.out_edges(1)) CHECK(chain.edge_prob(e) == Catch::Approx(0.5).epsilon(1e-12));
  CHECK(chain.stationary[0] == Catch::Approx(0.5).epsilon(1e-10));
  CHECK(chain.lambda == Catch::Approx(std::sqrt(6.0)).epsilon(1e-12));
  CHECK(std::abs(chain.entropy_rate() - 0.5 * std::log(6.0)) < 1e-9);
}

TEST_CASE("parry chain on loops and deeper graphs") {
  ParryChain loops = parry_chain(matrix_of({{2}}));
  REQUIRE(loops.graph.edge_count() == 2);
  for (long e : loops.graph.out_edges(0)) CHECK(loops.edge_prob(e) == Catch::Approx(0.5).epsilon(1e-12));
  CHECK(loops.entropy_rate() == Catch::Approx(std::log(2.0)).epsilon(1e-9));

  CHECK_THROWS_AS(parry_chain(matrix_of({{1, 1}, {0, 1}})), InputError);

  for (const char* text : {"1,2", "1,1,2", "2,2,2"}) {
    HeightData data = HeightData::parse(text);
    ParryChain chain = parry_chain(data);
    check_chain_invariants(chain);
    double target = log_enclosure(perron_root(build_companion(data).second)).to_double();
    CHECK(std::abs(chain.entropy_rate() - target) < 1e-9);
  }

  // Companion of (1,2) realizes the two-state example with named edges.
  ParryChain comp = parry_chain(HeightData::parse("1,2"));
  CHECK(comp.edge_prob(comp.graph.edge_by_name("c-2(1)")) == Catch::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(comp.edge_prob(comp.graph.edge_by_name("c+2")) == Catch::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("path sampling") {
  ParryChain chain = parry_chain(HeightData::parse("1,2"));
  SamplePath a = sample_path(chain, 10, 42);
  SamplePath b = sample_path(chain, 10, 42);
  CHECK(a.window.edges == b.window.edges);
  CHECK(a.start_vertex == b.start_vertex);
  CHECK(a.prng == "mt19937_64");
  CHECK(a.seed == 42);
  CHECK(a.window.size() == 10);
  CHECK(sample_path(chain, 10, 43).window.edges != a.window.edges);
  CHECK_THROWS_AS(sample_path(chain, 0, 1), InputError);

  // The sample is a path and every edge id is in range.
  long at = chain.graph.src(a.window.edges.front());
  for (long e : a.window.edges) {
    REQUIRE(e >= 0);
    REQUIRE(e < chain.graph.edge_count());
    CHECK(chain.graph.src(e) == at);
    at = chain.graph.dst(e);
  }
}

TEST_CASE("long-run edge frequencies") {
  ParryChain chain = parry_chain(HeightData::parse("1,2"));
  const long steps = 1000000;
  SamplePath path = sample_path(chain, steps, 2024);
  std::vector<long> hits(static_cast<size_t>(chain.graph.edge_count()), 0);
  for (long e : path.window.edges) hits[static_cast<size_t>(e)]++;
  for (long e = 0; e < chain.graph.edge_count(); e++) {
    double freq = static_cast<double>(hits[static_cast<size_t>(e)]) / steps;
    CHECK(std::abs(freq - chain.edge_measure(e)) < 5e-3);
  }
}

TEST_CASE("maximal entropy measure checks") {
  MmeReport rep = mme_checks(HeightData::parse("1,2"), 200000, 7);
  CHECK(rep.log_lambda == Catch::Approx(0.5 * std::log(6.0)).epsilon(1e-9));
  CHECK(rep.freq_plus == Catch::Approx(7.0 / 12).margin(0.01));
  CHECK(rep.freq_plus > rep.freq_minus);
  CHECK(rep.plus_dominates);
  REQUIRE(rep.block_entropy.size() == 4);
  CHECK(rep.block_entropy[0] == Catch::Approx(std::log(2.0 * std::sqrt(6.0))).margin(0.05));
  CHECK(rep.conditional_entropy[1] == Catch::Approx(rep.log_lambda).margin(0.05));
  CHECK(rep.conditional_gap <= 0.05);
  CHECK(rep.windows > 0);
  CHECK(rep.decoded_admissible);
  CHECK(rep.determined * 2 > rep.positions);
  CHECK(rep.reversed_admissible);
  CHECK(rep.reversed_freq_plus < 0.5);
  CHECK(rep.reversed_mirrored);
  CHECK(rep.all_pass());

  MmeReport deep = mme_checks(HeightData::parse("1,1,2"), 100000, 11);
  CHECK(deep.plus_dominates);
  CHECK(deep.conditional_gap <= 0.05);
  CHECK(deep.decoded_admissible);
  CHECK(deep.all_pass());

  CHECK_THROWS_AS(mme_checks(HeightData::parse("1,2"), 0, 1), InputError);
}
