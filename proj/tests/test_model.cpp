#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <vector>

#include "dense_instance.hpp"
#include "errors.hpp"
#include "instance_io.hpp"
#include "rng.hpp"

using namespace hs;

TEST_CASE("hidden set edge sizes") {
    CHECK(sample_hidden_set(5, 0, 7).empty());
    auto full = sample_hidden_set(5, 5, 7);
    CHECK(full == std::vector<int32_t>{0, 1, 2, 3, 4});
    CHECK_THROWS_AS(sample_hidden_set(5, 6, 7), error);
    CHECK_THROWS_AS(sample_hidden_set(5, -1, 7), error);
}

TEST_CASE("hidden set sampling is uniform over indices") {
    const int n = 100, k = 10, runs = 100000;
    std::vector<int64_t> counts(n, 0);
    for (int r = 0; r < runs; ++r)
        for (int32_t i : sample_hidden_set(n, k, derive_seed(42, r))) ++counts[i];
    double p = static_cast<double>(k) / n;
    double se = std::sqrt(p * (1 - p) / runs);
    for (int i = 0; i < n; ++i) {
        double freq = static_cast<double>(counts[i]) / runs;
        CHECK(std::abs(freq - p) <= 3.0 * se);
    }
}

TEST_CASE("hidden sets are sorted, duplicate-free, deterministic") {
    auto a = sample_hidden_set(1000, 50, 99);
    auto b = sample_hidden_set(1000, 50, 99);
    CHECK(a == b);
    REQUIRE(a.size() == 50);
    for (size_t i = 1; i < a.size(); ++i) CHECK(a[i] > a[i - 1]);
    CHECK(sample_hidden_set(1000, 50, 100) != a);
}

TEST_CASE("rademacher instance: clique entries are +1, all symmetric, zero diagonal") {
    std::vector<int32_t> hidden = {0, 1};
    auto inst = gen_dense_instance(4, hidden, NoiseSpec::rademacher_clique(), 5);
    CHECK(inst.w(0, 1) == 1.0);
    for (int i = 0; i < 4; ++i) {
        CHECK(inst.w(i, i) == 0.0);
        for (int j = 0; j < 4; ++j) {
            CHECK(inst.w(i, j) == inst.w(j, i));
            if (i != j) CHECK(std::abs(inst.w(i, j)) == 1.0);
        }
    }
}

TEST_CASE("clique submatrix is deterministically +1 for rademacher") {
    auto hidden = sample_hidden_set(60, 12, 3);
    auto inst = gen_dense_instance(60, hidden, NoiseSpec::rademacher_clique(), 3);
    for (int32_t i : hidden)
        for (int32_t j : hidden)
            if (i != j) CHECK(inst.w(i, j) == 1.0);
}

TEST_CASE("same seed twice gives identical matrices") {
    auto hidden = sample_hidden_set(50, 7, 11);
    auto a = gen_dense_instance(50, hidden, NoiseSpec::gaussian_shift(1.0), 11);
    auto b = gen_dense_instance(50, hidden, NoiseSpec::gaussian_shift(1.0), 11);
    CHECK(a.w.v == b.w.v);
}

TEST_CASE("empty hidden set, gaussian noise: moment oracle") {
    const int64_t n = 2000;
    auto inst = gen_dense_instance(n, {}, NoiseSpec::gaussian_shift(1.0), 17);
    double sum = 0.0, sum2 = 0.0;
    int64_t m = 0;
    for (int64_t i = 0; i < n; ++i)
        for (int64_t j = i + 1; j < n; ++j) {
            sum += inst.w(i, j);
            sum2 += inst.w(i, j) * inst.w(i, j);
            ++m;
        }
    double mean = sum / m;
    double var = sum2 / m - mean * mean;
    CHECK(std::abs(mean) <= 3.0 / std::sqrt(static_cast<double>(m)));
    CHECK(std::abs(var - 1.0) <= 0.01);
}

TEST_CASE("normalize divides by sqrt(n)") {
    std::vector<int32_t> hidden = {0, 1};
    auto inst = gen_dense_instance(4, hidden, NoiseSpec::rademacher_clique(), 5);
    auto a = normalize(inst);
    CHECK(a(0, 1) == doctest::Approx(0.5));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(a(i, j) == doctest::Approx(inst.w(i, j) / 2.0));
}

TEST_CASE("custom-discrete validation") {
    DiscreteDist good_q0{{1.0, -1.0}, {0.5, 0.5}};
    DiscreteDist q1{{1.0}, {1.0}};
    CHECK_NOTHROW(NoiseSpec::custom_discrete(good_q0, q1));
    DiscreteDist bad_mean{{1.0, -0.5}, {0.5, 0.5}};
    CHECK_THROWS_AS(NoiseSpec::custom_discrete(bad_mean, q1), error);
    DiscreteDist bad_var{{2.0, -2.0}, {0.5, 0.5}};
    CHECK_THROWS_AS(NoiseSpec::custom_discrete(bad_var, q1), error);
    DiscreteDist negative_mean_q1{{-1.0}, {1.0}};
    CHECK_THROWS_AS(NoiseSpec::custom_discrete(good_q0, negative_mean_q1), error);
}

TEST_CASE("likelihood transform: two-point tables") {
    // dQ1/dQ0 is 2 at +1 and 0 at -1; lambda-tilde^2 = 1.
    auto noise = NoiseSpec::rademacher_clique();
    CHECK(lambda_tilde(noise) == doctest::Approx(1.0));

    auto inst = gen_dense_instance(16, sample_hidden_set(16, 5, 2), noise, 2);
    auto lt = likelihood_transform(inst, noise);
    CHECK(lt.lambda_tilde == doctest::Approx(1.0));
    double s = std::sqrt(16.0);
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j) {
            if (i == j) continue;
            // entries map to +-1 up to the 1/sqrt(n) factor; clique pairs to +1
            CHECK(std::abs(lt.a(i, j)) * s == doctest::Approx(1.0));
            CHECK(lt.a(i, j) * s == doctest::Approx(inst.w(i, j)));
        }
}

TEST_CASE("likelihood transform: gaussian shift") {
    // lambda = 0 collapses to zero matrix and zero distance
    auto inst0 = gen_dense_instance(10, {}, NoiseSpec::gaussian_shift(0.0), 4);
    auto lt0 = likelihood_transform(inst0, NoiseSpec::gaussian_shift(0.0));
    CHECK(lt0.lambda_tilde == doctest::Approx(0.0));
    for (double v : lt0.a.v) CHECK(v == doctest::Approx(0.0));

    // numerical integration oracle for lambda = 1: integrate (e^{x-1/2}-1)^2 phi(x)
    double h = 1e-4, acc = 0.0;
    for (double x = -12.0; x < 12.0; x += h) {
        double d = std::exp(x - 0.5) - 1.0;
        acc += d * d * std::exp(-x * x / 2.0) / std::sqrt(2.0 * 3.14159265358979323846) * h;
    }
    CHECK(lambda_tilde(NoiseSpec::gaussian_shift(1.0)) ==
          doctest::Approx(std::sqrt(acc)).epsilon(1e-6));
    CHECK(lambda_tilde(NoiseSpec::gaussian_shift(1.0)) ==
          doctest::Approx(std::sqrt(std::exp(1.0) - 1.0)).epsilon(1e-12));
}

TEST_CASE("likelihood transform rejects singular pairs") {
    // point-mass Q1 outside the Q0 support
    DiscreteDist q0{{1.0, -1.0}, {0.5, 0.5}};
    DiscreteDist q1_outside{{2.0}, {1.0}};
    auto bad = NoiseSpec::custom_discrete(q0, q1_outside);
    auto inst = gen_dense_instance(6, {}, NoiseSpec::rademacher_clique(), 9);
    CHECK_THROWS_AS(likelihood_transform(inst, bad), error);
}

TEST_CASE("dense instance container round-trips bit for bit") {
    auto hidden = sample_hidden_set(40, 6, 21);
    auto inst = gen_dense_instance(40, hidden, NoiseSpec::gaussian_shift(1.5), 21);
    std::string path = "test_dense_roundtrip.hsin";
    save_dense_instance(inst, path);
    auto back = load_dense_instance(path);
    CHECK(back.n == inst.n);
    CHECK(back.hidden == inst.hidden);
    CHECK(back.seed == inst.seed);
    CHECK(back.noise.family() == inst.noise.family());
    CHECK(back.noise.lambda() == inst.noise.lambda());
    CHECK(back.w.v == inst.w.v);
    CHECK(instance_file_kind(path) == 0);
    std::remove(path.c_str());
}

TEST_CASE("loading garbage fails cleanly") {
    std::string path = "test_garbage.hsin";
    FILE* f = std::fopen(path.c_str(), "wb");
    std::fputs("not an instance", f);
    std::fclose(f);
    CHECK_THROWS_AS(load_dense_instance(path), error);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_dense_instance("does_not_exist.hsin"), error);
}
