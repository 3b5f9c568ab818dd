#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "errors.hpp"
#include "graph.hpp"
#include "instance_io.hpp"
#include "rng.hpp"

using namespace hs;

namespace {

void check_simple_regular(const RegularGraph& g) {
    std::vector<int> deg(g.n, 0);
    std::set<std::pair<int32_t, int32_t>> seen;
    for (auto [a, b] : g.edges) {
        REQUIRE(a != b);
        REQUIRE(a >= 0);
        REQUIRE(b < g.n);
        CHECK(a < b);
        CHECK(seen.insert({a, b}).second); // no duplicate edges
        ++deg[a];
        ++deg[b];
    }
    for (int d : deg) CHECK(d == g.degree);
}

} // namespace

TEST_CASE("K4 is the unique 3-regular simple graph on 4 vertices") {
    auto g = gen_regular_graph(4, 3, 123);
    REQUIRE(g.edges.size() == 6);
    check_simple_regular(g);
}

TEST_CASE("degree 1 gives a perfect matching") {
    auto g = gen_regular_graph(6, 1, 5);
    REQUIRE(g.edges.size() == 3);
    check_simple_regular(g);
}

TEST_CASE("degree and simplicity checks on a midsize graph") {
    auto g = gen_regular_graph(2000, 21, 7);
    check_simple_regular(g);
    auto h = gen_regular_graph(2000, 21, 7);
    CHECK(g.edges == h.edges); // deterministic
}

TEST_CASE("parity and feasibility errors") {
    CHECK_THROWS_AS(gen_regular_graph(5, 3, 1), error);  // odd stub count
    CHECK_THROWS_AS(gen_regular_graph(4, 4, 1), error);  // degree >= n
    CHECK_NOTHROW(gen_regular_graph(5, 0, 1));
}

TEST_CASE("locally tree-like: radius-2 tree-ball fraction at low degree") {
    // Short-cycle counts through a vertex scale like degree^5 / n, so the
    // property is tested where it actually holds.
    auto g = gen_regular_graph(10000, 3, 13);
    CHECK(tree_ball_fraction(g, 2) >= 0.95);
    auto g2 = gen_regular_graph(3000, 4, 13);
    CHECK(tree_ball_fraction(g2, 2) >= 0.90);
}

TEST_CASE("tree_ball_fraction flags cycles") {
    // the unique 2-regular simple graph on 4 vertices is the 4-cycle
    auto c4 = gen_regular_graph(4, 2, 1);
    CHECK(tree_ball_fraction(c4, 1) == doctest::Approx(1.0)); // radius-1 balls are paths
    CHECK(tree_ball_fraction(c4, 2) == doctest::Approx(0.0)); // radius 2 closes the cycle
    auto k4 = gen_regular_graph(4, 3, 1);
    CHECK(tree_ball_fraction(k4, 1) == doctest::Approx(0.0)); // neighbors are adjacent
}

TEST_CASE("kappa_tilde formula") {
    // kappa=1, delta=100: kt = 1/(1+0.1) and label probability kt/10
    CHECK(kappa_tilde(1.0, 100) == doctest::Approx(10.0 / 11.0));
    CHECK(kappa_tilde(1.0, 100) / 10.0 == doctest::Approx(0.090909090909).epsilon(1e-9));
}

TEST_CASE("fixed-size sparse labels hit the target count exactly") {
    auto inst = gen_sparse_instance(3000, 25, 1.2, NoiseSpec::rademacher_clique(),
                                    SamplingMode::fixed_size, 77);
    auto expect = static_cast<int64_t>(
        std::llround(3000 * kappa_tilde(1.2, 25) / std::sqrt(25.0)));
    int64_t ones = 0;
    for (uint8_t b : inst.labels) ones += b;
    CHECK(ones == expect);
}

TEST_CASE("iid sparse labels concentrate as a binomial") {
    const int32_t n = 100000;
    auto inst = gen_sparse_instance(n, 100, 1.0, NoiseSpec::rademacher_clique(),
                                    SamplingMode::iid, 31);
    double p = kappa_tilde(1.0, 100) / 10.0;
    int64_t ones = 0;
    for (uint8_t b : inst.labels) ones += b;
    double sd = std::sqrt(n * p * (1 - p));
    CHECK(std::abs(static_cast<double>(ones) - n * p) <= 3.0 * sd);
}

TEST_CASE("sparse weights follow the label rule for the two-point model") {
    auto inst = gen_sparse_instance(500, 6, 2.0, NoiseSpec::rademacher_clique(),
                                    SamplingMode::iid, 9);
    for (size_t e = 0; e < inst.graph.edges.size(); ++e) {
        auto [a, b] = inst.graph.edges[e];
        if (inst.labels[a] && inst.labels[b])
            CHECK(inst.weights[e] == 1.0);
        else
            CHECK(std::abs(inst.weights[e]) == 1.0);
    }
    // determinism
    auto again = gen_sparse_instance(500, 6, 2.0, NoiseSpec::rademacher_clique(),
                                     SamplingMode::iid, 9);
    CHECK(inst.weights == again.weights);
    CHECK(inst.labels == again.labels);
}

TEST_CASE("sparse container round-trip") {
    auto inst = gen_sparse_instance(200, 5, 1.0, NoiseSpec::rademacher_clique(),
                                    SamplingMode::iid, 15);
    std::string path = "test_sparse_roundtrip.hsin";
    save_sparse_instance(inst, path);
    auto back = load_sparse_instance(path);
    CHECK(back.n == inst.n);
    CHECK(back.delta == inst.delta);
    CHECK(back.kappa == inst.kappa);
    CHECK(back.graph.edges == inst.graph.edges);
    CHECK(back.labels == inst.labels);
    CHECK(back.weights == inst.weights);
    CHECK(instance_file_kind(path) == 1);
    std::remove(path.c_str());
}
