#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "hiddenset.h"

TEST_CASE("version and error text") {
    CHECK(hs_version() != nullptr);
    CHECK(hs_last_error() != nullptr);
}

TEST_CASE("noise handles") {
    hs_noise* rad = nullptr;
    REQUIRE(hs_noise_rademacher(&rad) == HS_OK);
    CHECK(hs_noise_lambda(rad) == 1.0);
    double lt = 0.0;
    CHECK(hs_noise_lambda_tilde(rad, &lt) == HS_OK);
    CHECK(lt == doctest::Approx(1.0));
    hs_noise_free(rad);

    hs_noise* bad = nullptr;
    CHECK(hs_noise_gaussian_shift(-1.0, &bad) == HS_EINVAL);
    CHECK(std::strlen(hs_last_error()) > 0);

    double q0s[] = {1.0, -1.0}, q0p[] = {0.5, 0.5};
    double q1s[] = {1.0}, q1p[] = {1.0};
    hs_noise* custom = nullptr;
    REQUIRE(hs_noise_custom_discrete(q0s, q0p, 2, q1s, q1p, 1, 0.0, &custom) == HS_OK);
    CHECK(hs_noise_lambda(custom) == doctest::Approx(1.0));
    hs_noise_free(custom);
}

TEST_CASE("dense lifecycle: generate, inspect, save, load, run") {
    // high-SNR shifted-gaussian instance so the recovery outcome is stable
    hs_noise* noise = nullptr;
    REQUIRE(hs_noise_gaussian_shift(3.0, &noise) == HS_OK);

    hs_dense_instance* inst = nullptr;
    REQUIRE(hs_dense_generate(900, 120, noise, 77, &inst) == HS_OK);
    CHECK(hs_dense_n(inst) == 900);

    const int32_t* hidden = nullptr;
    size_t hlen = 0;
    REQUIRE(hs_dense_hidden(inst, &hidden, &hlen) == HS_OK);
    CHECK(hlen == 120);

    const double* w = nullptr;
    REQUIRE(hs_dense_matrix(inst, &w) == HS_OK);
    CHECK(w[hidden[0] * 900 + hidden[1]] == w[hidden[1] * 900 + hidden[0]]);

    const char* path = "capi_dense.hsin";
    REQUIRE(hs_dense_save(inst, path) == HS_OK);
    hs_dense_instance* back = nullptr;
    REQUIRE(hs_dense_load(path, &back) == HS_OK);
    CHECK(hs_dense_n(back) == 900);
    std::remove(path);

    hs_dense_params params{};
    hs_dense_result* res = nullptr;
    REQUIRE(hs_dense_run(inst, 120, &params, &res) == HS_OK);
    CHECK(hs_dense_result_success(res) == 1);
    const int32_t* set = nullptr;
    size_t slen = 0;
    REQUIRE(hs_dense_result_set(res, &set, &slen) == HS_OK);
    CHECK(slen == 120);
    CHECK(std::vector<int32_t>(set, set + slen) == std::vector<int32_t>(hidden, hidden + hlen));
    int64_t cand = 0, eig = 0, fin = 0;
    REQUIRE(hs_dense_result_stage_sizes(res, &cand, &eig, &fin) == HS_OK);
    CHECK(eig == 120);
    CHECK(fin == 120);
    std::vector<int32_t> first_run(set, set + slen);
    hs_dense_result_free(res);

    // rerunning is deterministic
    hs_dense_result* res2 = nullptr;
    REQUIRE(hs_dense_run(inst, 120, &params, &res2) == HS_OK);
    const int32_t* set2 = nullptr;
    size_t slen2 = 0;
    REQUIRE(hs_dense_result_set(res2, &set2, &slen2) == HS_OK);
    CHECK(std::vector<int32_t>(set2, set2 + slen2) == first_run);
    hs_dense_result_free(res2);

    std::vector<int32_t> spec_set(900);
    size_t spec_len = 0;
    double frac = -1.0, ev = -1.0;
    REQUIRE(hs_dense_spectral(inst, 120, 100, spec_set.data(), spec_set.size(), &spec_len, &frac,
                              &ev) == HS_OK);
    CHECK(spec_len == 120);
    CHECK(frac >= 0.0);
    CHECK(frac <= 1.0);

    hs_dense_free(back);
    hs_dense_free(inst);
    hs_noise_free(noise);
}

TEST_CASE("error paths surface codes, not crashes") {
    hs_noise* noise = nullptr;
    REQUIRE(hs_noise_rademacher(&noise) == HS_OK);
    hs_dense_instance* inst = nullptr;
    CHECK(hs_dense_generate(10, 40, noise, 1, &inst) == HS_EINVAL); // k > n
    hs_dense_instance* missing = nullptr;
    CHECK(hs_dense_load("no_such_file.hsin", &missing) == HS_EIO);
    hs_noise_free(noise);

    hs_schedule* sched = nullptr;
    CHECK(hs_schedule_build(1.0, 1.0, 0, 5, &sched) == HS_EINVAL);
}

TEST_CASE("schedule and SE traces through the C surface") {
    hs_schedule* sched = nullptr;
    REQUIRE(hs_schedule_build_auto(1.0, 1.0, 40, 10.0, 50, &sched) == HS_OK);
    int tstar = hs_schedule_t_star(sched);
    CHECK(tstar >= 1);
    double mu = 0.0;
    REQUIRE(hs_schedule_mu_hat(sched, tstar, &mu) == HS_OK);
    CHECK(mu > 10.0);

    std::vector<double> m(60), tau(60);
    size_t len = 0;
    int div = 0;
    REQUIRE(hs_se_general(sched, 8, m.data(), tau.data(), m.size(), &len, &div) == HS_OK);
    REQUIRE(len >= 2);
    CHECK(tau[1] == doctest::Approx(1.0).epsilon(1e-10));
    hs_schedule_free(sched);

    REQUIRE(hs_se_ideal(0.5, 20, m.data(), m.size(), &len, &div) == HS_OK);
    CHECK(len == 21);
    CHECK(div == -1);

    std::vector<double> mu0(10), mu1(10), s2(10), pe(10);
    REQUIRE(hs_se_sparse(1.0, 5, mu0.data(), mu1.data(), s2.data(), pe.data(), 10, &len, &div) ==
            HS_OK);
    REQUIRE(len >= 2);
    CHECK(mu0[1] == doctest::Approx(-0.5));
    CHECK(mu1[1] == doctest::Approx(0.5));
    CHECK(s2[1] == doctest::Approx(1.0));
}

TEST_CASE("sparse instance + BP through the C surface") {
    hs_noise* noise = nullptr;
    REQUIRE(hs_noise_rademacher(&noise) == HS_OK);
    hs_sparse_instance* inst = nullptr;
    REQUIRE(hs_sparse_generate(3000, 16, 1.0, noise, 0, 5, &inst) == HS_OK);
    CHECK(hs_sparse_n(inst) == 3000);
    const uint8_t* labels = nullptr;
    size_t llen = 0;
    REQUIRE(hs_sparse_labels(inst, &labels, &llen) == HS_OK);
    CHECK(llen == 3000);

    int64_t symdiff = -1;
    double rate = -1.0;
    size_t slen = 0;
    REQUIRE(hs_sparse_bp_run(inst, 2, &symdiff, &rate, nullptr, 0, &slen) == HS_OK);
    CHECK(symdiff >= 0);
    CHECK(rate >= 0.0);
    CHECK(rate <= 1.0);

    const char* path = "capi_sparse.hsin";
    REQUIRE(hs_sparse_save(inst, path) == HS_OK);
    hs_sparse_instance* back = nullptr;
    REQUIRE(hs_sparse_load(path, &back) == HS_OK);
    CHECK(hs_sparse_n(back) == 3000);
    std::remove(path);
    hs_sparse_free(back);
    hs_sparse_free(inst);
    hs_noise_free(noise);
}

TEST_CASE("population and local rule through the C surface") {
    hs_population* pop = nullptr;
    REQUIRE(hs_population_create(0.5, 100, 5000, 3, &pop) == HS_OK);
    REQUIRE(hs_population_step(pop, 1) == HS_OK);
    double m0 = 0.0, m1 = 0.0;
    REQUIRE(hs_population_means(pop, &m0, &m1) == HS_OK);
    CHECK(m0 > 0.0);
    CHECK(m1 > 0.0);
    double err = -1.0;
    REQUIRE(hs_population_misclassification(pop, 1, &err) == HS_OK);
    CHECK(err >= 0.0);
    CHECK(err <= 1.0);
    hs_population_free(pop);

    std::vector<double> p(5), q(5);
    size_t len = 0;
    REQUIRE(hs_local_rule_pq(1.2, 100, 0.1, 3, 20000, 7, p.data(), q.data(), 5, &len) == HS_OK);
    CHECK(len == 4);
    CHECK(p[0] == doctest::Approx(0.1));
}

TEST_CASE("harness entry points") {
    const char* cfg =
        "mode=dense\nn=120\nk=14\ntrials=2\nseed=9\nno_timing=1\n";
    int success = -1;
    int64_t symdiff = -1;
    double overlap = -1.0;
    uint64_t seed = 0;
    REQUIRE(hs_trial_run(cfg, 0, "", &success, &symdiff, &overlap, &seed) == HS_OK);
    CHECK(success >= 0);
    CHECK(symdiff >= 0);

    const char* out = "capi_sweep.csv";
    REQUIRE(hs_sweep_run(cfg, out) == HS_OK);
    std::ifstream in(out);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header.rfind("schema=1,", 0) == 0);
    int rows = 0;
    std::string line;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 3); // 2 trials + 1 aggregate
    in.close();
    std::remove(out);

    CHECK(hs_sweep_run("bogus=1\n", out) == HS_EINVAL);

    const char* se_cfg = "se_mode=sparse\nkappa=1.0\nt_max=3\n";
    const char* se_out = "capi_se.csv";
    REQUIRE(hs_se_csv(se_cfg, se_out) == HS_OK);
    std::remove(se_out);

    const char* sp_cfg = "sparse_mode=sparse-se\nkappa=1.0\ndelta=16\nbp_t=2\n";
    const char* sp_out = "capi_sparse.csv";
    REQUIRE(hs_sparse_modes_csv(sp_cfg, sp_out) == HS_OK);
    std::remove(sp_out);
}
