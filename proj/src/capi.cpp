#include "hiddenset.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "bp.hpp"
#include "dense_instance.hpp"
#include "dense_pipeline.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "harness.hpp"
#include "instance_io.hpp"
#include "population.hpp"
#include "se.hpp"

namespace {

thread_local std::string g_last_error;

int code_of(hs::errc c) {
    switch (c) {
    case hs::errc::ok: return HS_OK;
    case hs::errc::invalid_argument: return HS_EINVAL;
    case hs::errc::io_error: return HS_EIO;
    case hs::errc::diverged: return HS_EDIVERGED;
    case hs::errc::unsupported: return HS_EUNSUPPORTED;
    case hs::errc::internal: return HS_EINTERNAL;
    }
    return HS_EINTERNAL;
}

template <class Fn> int guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return HS_OK;
    } catch (const hs::error& e) {
        g_last_error = e.what();
        return code_of(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return HS_EINTERNAL;
    }
}

int write_text(const std::string& text, const char* out_path) {
    if (!out_path || !*out_path || std::strcmp(out_path, "-") == 0) {
        std::cout << text;
        return HS_OK;
    }
    std::ofstream f(out_path);
    if (!f.good()) {
        g_last_error = std::string("cannot open for writing: ") + out_path;
        return HS_EIO;
    }
    f << text;
    f.flush();
    if (!f.good()) {
        g_last_error = std::string("write failed: ") + out_path;
        return HS_EIO;
    }
    return HS_OK;
}

} // namespace

struct hs_noise {
    hs::NoiseSpec spec;
};
struct hs_dense_instance {
    hs::DenseInstance inst;
};
struct hs_sparse_instance {
    hs::SparseInstance inst;
};
struct hs_schedule {
    hs::PolynomialSchedule sched;
};
struct hs_dense_result {
    hs::RecoveryResult res;
};
struct hs_population {
    hs::TreePopulation pop;
};

extern "C" {

const char* hs_version(void) { return "1.0.0"; }

const char* hs_last_error(void) { return g_last_error.c_str(); }

int hs_noise_rademacher(hs_noise** out) {
    return guarded([&] { *out = new hs_noise{hs::NoiseSpec::rademacher_clique()}; });
}

int hs_noise_gaussian_shift(double lambda, hs_noise** out) {
    return guarded([&] { *out = new hs_noise{hs::NoiseSpec::gaussian_shift(lambda)}; });
}

int hs_noise_custom_discrete(const double* q0_support, const double* q0_prob, size_t q0_len,
                             const double* q1_support, const double* q1_prob, size_t q1_len,
                             double rho, hs_noise** out) {
    return guarded([&] {
        hs::DiscreteDist q0{{q0_support, q0_support + q0_len}, {q0_prob, q0_prob + q0_len}};
        hs::DiscreteDist q1{{q1_support, q1_support + q1_len}, {q1_prob, q1_prob + q1_len}};
        *out = new hs_noise{hs::NoiseSpec::custom_discrete(std::move(q0), std::move(q1), rho)};
    });
}

double hs_noise_lambda(const hs_noise* noise) { return noise->spec.lambda(); }

int hs_noise_lambda_tilde(const hs_noise* noise, double* out) {
    return guarded([&] { *out = hs::lambda_tilde(noise->spec); });
}

void hs_noise_free(hs_noise* noise) { delete noise; }

int hs_dense_generate(int64_t n, int64_t k, const hs_noise* noise, uint64_t seed,
                      hs_dense_instance** out) {
    return guarded([&] {
        auto hidden = hs::sample_hidden_set(n, k, seed);
        *out = new hs_dense_instance{hs::gen_dense_instance(n, hidden, noise->spec, seed)};
    });
}

int hs_dense_generate_with_set(int64_t n, const int32_t* hidden, size_t hidden_len,
                               const hs_noise* noise, uint64_t seed, hs_dense_instance** out) {
    return guarded([&] {
        std::span<const int32_t> h(hidden, hidden_len);
        *out = new hs_dense_instance{hs::gen_dense_instance(n, h, noise->spec, seed)};
    });
}

int hs_dense_save(const hs_dense_instance* inst, const char* path) {
    return guarded([&] { hs::save_dense_instance(inst->inst, path); });
}

int hs_dense_load(const char* path, hs_dense_instance** out) {
    return guarded([&] { *out = new hs_dense_instance{hs::load_dense_instance(path)}; });
}

int64_t hs_dense_n(const hs_dense_instance* inst) { return inst->inst.n; }

int hs_dense_hidden(const hs_dense_instance* inst, const int32_t** data, size_t* len) {
    return guarded([&] {
        *data = inst->inst.hidden.data();
        *len = inst->inst.hidden.size();
    });
}

int hs_dense_matrix(const hs_dense_instance* inst, const double** data) {
    return guarded([&] { *data = inst->inst.w.v.data(); });
}

void hs_dense_free(hs_dense_instance* inst) { delete inst; }

int hs_sparse_generate(int32_t n, int32_t delta, double kappa, const hs_noise* noise, int sampling,
                       uint64_t seed, hs_sparse_instance** out) {
    return guarded([&] {
        auto mode = sampling == 1 ? hs::SamplingMode::fixed_size : hs::SamplingMode::iid;
        *out = new hs_sparse_instance{
            hs::gen_sparse_instance(n, delta, kappa, noise->spec, mode, seed)};
    });
}

int hs_sparse_save(const hs_sparse_instance* inst, const char* path) {
    return guarded([&] { hs::save_sparse_instance(inst->inst, path); });
}

int hs_sparse_load(const char* path, hs_sparse_instance** out) {
    return guarded([&] { *out = new hs_sparse_instance{hs::load_sparse_instance(path)}; });
}

int32_t hs_sparse_n(const hs_sparse_instance* inst) { return inst->inst.n; }

int hs_sparse_labels(const hs_sparse_instance* inst, const uint8_t** data, size_t* len) {
    return guarded([&] {
        *data = inst->inst.labels.data();
        *len = inst->inst.labels.size();
    });
}

void hs_sparse_free(hs_sparse_instance* inst) { delete inst; }

int hs_schedule_build(double lambda, double kappa, int d_star, int t_star, hs_schedule** out) {
    return guarded([&] { *out = new hs_schedule{hs::build_schedule(lambda, kappa, d_star, t_star)}; });
}

int hs_schedule_build_auto(double lambda, double kappa, int d_star, double m_threshold, int t_cap,
                           hs_schedule** out) {
    return guarded([&] {
        *out = new hs_schedule{
            hs::build_schedule_auto(lambda, kappa, d_star, m_threshold, t_cap)};
    });
}

int hs_schedule_t_star(const hs_schedule* s) { return s->sched.t_star; }

int hs_schedule_mu_hat(const hs_schedule* s, int t, double* out) {
    return guarded([&] { *out = s->sched.mu_hat_at(t); });
}

int hs_schedule_diverged_at(const hs_schedule* s) { return s->sched.diverged_at; }

void hs_schedule_free(hs_schedule* s) { delete s; }

int hs_se_ideal(double lambda_kappa, int t_max, double* mu, size_t cap, size_t* len,
                int* diverged_at) {
    return guarded([&] {
        hs::IdealTrajectory tr = hs::ideal_recursion(lambda_kappa, t_max);
        size_t count = std::min(cap, tr.mu.size());
        for (size_t i = 0; i < count; ++i) mu[i] = tr.mu[i];
        *len = count;
        if (diverged_at) *diverged_at = tr.diverged_at;
    });
}

int hs_se_general(const hs_schedule* s, int t_max, double* mu, double* tau, size_t cap,
                  size_t* len, int* diverged_at) {
    return guarded([&] {
        hs::SETrace tr = hs::general_se(s->sched, t_max);
        size_t count = std::min(cap, tr.mu.size());
        for (size_t i = 0; i < count; ++i) {
            mu[i] = tr.mu[i];
            tau[i] = tr.tau[i];
        }
        *len = count;
        if (diverged_at) *diverged_at = tr.diverged_at;
    });
}

int hs_se_sparse(double kappa, int t_max, double* mu0, double* mu1, double* sigma2,
                 double* predicted_error, size_t cap, size_t* len, int* diverged_at) {
    return guarded([&] {
        hs::SparseSETrace tr = hs::sparse_gaussian_se(kappa, t_max);
        size_t count = std::min(cap, tr.mu0.size());
        for (size_t i = 0; i < count; ++i) {
            mu0[i] = tr.mu0[i];
            mu1[i] = tr.mu1[i];
            sigma2[i] = tr.sigma2[i];
            predicted_error[i] = tr.predicted_error[i];
        }
        *len = count;
        if (diverged_at) *diverged_at = tr.diverged_at;
    });
}

int hs_dense_run(const hs_dense_instance* inst, int64_t k, const hs_dense_params* params,
                 hs_dense_result** out) {
    return guarded([&] {
        hs_dense_params p{};
        if (params) p = *params;
        int d_star = p.d_star > 0 ? p.d_star : 40;
        double m = p.m_threshold > 0 ? p.m_threshold : 10.0;
        double kappa = static_cast<double>(k) / std::sqrt(static_cast<double>(inst->inst.n));
        hs::PolynomialSchedule sched;
        if (k > 0) {
            sched = p.t_star > 0
                        ? hs::build_schedule(inst->inst.noise.lambda(), kappa, d_star, p.t_star)
                        : hs::build_schedule_auto(inst->inst.noise.lambda(), kappa, d_star, m, 50);
        }
        hs::RecoveryResult res =
            hs::run_algorithm1(inst->inst, k, sched, p.t_power > 0 ? p.t_power : -1,
                               p.rho_bar > 0 ? p.rho_bar : -1.0, p.threads > 0 ? p.threads : 1);
        *out = new hs_dense_result{std::move(res)};
    });
}

int hs_dense_result_success(const hs_dense_result* r) { return r->res.success ? 1 : 0; }

int hs_dense_result_set(const hs_dense_result* r, const int32_t** data, size_t* len) {
    return guarded([&] {
        *data = r->res.final_set.data();
        *len = r->res.final_set.size();
    });
}

int hs_dense_result_stage_sizes(const hs_dense_result* r, int64_t* candidate, int64_t* eigen,
                                int64_t* final_size) {
    return guarded([&] {
        if (candidate) *candidate = r->res.stats.candidate_size;
        if (eigen) *eigen = r->res.stats.eigen_size;
        if (final_size) *final_size = r->res.stats.final_size;
    });
}

void hs_dense_result_free(hs_dense_result* r) { delete r; }

int hs_dense_spectral(const hs_dense_instance* inst, int64_t k, int iterations, int32_t* set_out,
                      size_t cap, size_t* len, double* truth_overlap, double* eigvec_overlap) {
    return guarded([&] {
        if (iterations <= 0)
            iterations =
                static_cast<int>(std::ceil(10.0 * std::log(std::max<int64_t>(2, inst->inst.n))));
        hs::SpectralResult sr =
            hs::spectral_solve(hs::normalize(inst->inst), k, iterations, inst->inst.hidden);
        size_t count = std::min(cap, sr.set.size());
        for (size_t i = 0; i < count; ++i) set_out[i] = sr.set[i];
        *len = count;
        if (truth_overlap) *truth_overlap = sr.truth_overlap_fraction;
        if (eigvec_overlap) *eigvec_overlap = sr.eigvec_overlap;
    });
}

int hs_sparse_bp_run(const hs_sparse_instance* inst, int t, int64_t* symdiff, double* error_rate,
                     int32_t* set_out, size_t cap, size_t* len) {
    return guarded([&] {
        hs::BPState st = hs::bp_init(inst->inst.graph);
        for (int i = 0; i < t; ++i) hs::bp_iterate(st, inst->inst);
        auto est = hs::bp_estimate(st, inst->inst.delta);
        auto truth = inst->inst.hidden_set();
        int64_t inter = 0;
        size_t i = 0, j = 0;
        while (i < truth.size() && j < est.size()) {
            if (truth[i] < est[j]) ++i;
            else if (truth[i] > est[j]) ++j;
            else ++inter, ++i, ++j;
        }
        int64_t sd = static_cast<int64_t>(truth.size()) + static_cast<int64_t>(est.size()) -
                     2 * inter;
        if (symdiff) *symdiff = sd;
        if (error_rate) *error_rate = static_cast<double>(sd) / inst->inst.n;
        if (set_out && len) {
            size_t count = std::min(cap, est.size());
            for (size_t q = 0; q < count; ++q) set_out[q] = est[q];
            *len = count;
        } else if (len) {
            *len = est.size();
        }
    });
}

int hs_population_create(double kappa, int32_t delta, int64_t pool_size, uint64_t seed,
                         hs_population** out) {
    return guarded([&] {
        *out = new hs_population{hs::make_population(kappa, delta, pool_size, seed)};
    });
}

int hs_population_step(hs_population* pop, int threads) {
    return guarded([&] { hs::population_step(pop->pop, threads > 0 ? threads : 1); });
}

int hs_population_means(const hs_population* pop, double* mean0, double* mean1) {
    return guarded([&] {
        if (mean0) *mean0 = pop->pop.mean0();
        if (mean1) *mean1 = pop->pop.mean1();
    });
}

int hs_population_misclassification(const hs_population* pop, int threads, double* out) {
    return guarded([&] {
        hs::VertexPools vp = hs::tree_vertex_distribution(pop->pop, threads > 0 ? threads : 1);
        *out = hs::misclassification_estimate(vp, pop->pop.kappa, pop->pop.delta);
    });
}

void hs_population_free(hs_population* pop) { delete pop; }

int hs_local_rule_pq(double kappa, int32_t delta, double eps, int t_rounds, int64_t replicas,
                     uint64_t seed, double* p, double* q, size_t cap, size_t* len) {
    return guarded([&] {
        hs::PqTrace tr = hs::local_rule_pq(kappa, delta, eps, t_rounds, replicas, seed);
        size_t count = std::min(cap, tr.p.size());
        for (size_t i = 0; i < count; ++i) {
            p[i] = tr.p[i];
            q[i] = tr.q[i];
        }
        *len = count;
    });
}

int hs_sweep_run(const char* config_text, const char* out_path) {
    return guarded([&] {
        hs::ExperimentConfig cfg = hs::parse_config_text(config_text ? config_text : "");
        std::ostringstream csv;
        std::vector<hs::TrialOutput> collected;
        hs::sweep(cfg, csv, cfg.dump_sets ? &collected : nullptr);
        int rc = write_text(csv.str(), out_path);
        if (rc != HS_OK) hs::fail(hs::errc::io_error, g_last_error);
        if (cfg.dump_sets) {
            std::string side = (out_path && *out_path && std::strcmp(out_path, "-") != 0)
                                   ? std::string(out_path) + ".sets.json"
                                   : std::string("sets.json");
            hs::write_sets_sidecar(collected, side);
        }
    });
}

int hs_trial_run(const char* config_text, int64_t trial_index, const char* algo, int* success,
                 int64_t* symdiff, double* overlap, uint64_t* seed_out) {
    return guarded([&] {
        hs::ExperimentConfig cfg = hs::parse_config_text(config_text ? config_text : "");
        hs::TrialOutput out = hs::run_trial(cfg, trial_index, -1.0, algo ? algo : "");
        if (success) *success = out.rec.success;
        if (symdiff) *symdiff = out.rec.symdiff;
        if (overlap) *overlap = out.rec.overlap;
        if (seed_out) *seed_out = out.rec.seed;
    });
}

int hs_sparse_modes_csv(const char* config_text, const char* out_path) {
    return guarded([&] {
        hs::ExperimentConfig cfg = hs::parse_config_text(config_text ? config_text : "");
        std::ostringstream os;
        hs::sparse_modes_csv(cfg, os);
        int rc = write_text(os.str(), out_path);
        if (rc != HS_OK) hs::fail(hs::errc::io_error, g_last_error);
    });
}

int hs_se_csv(const char* config_text, const char* out_path) {
    return guarded([&] {
        hs::ExperimentConfig cfg = hs::parse_config_text(config_text ? config_text : "");
        std::ostringstream os;
        hs::se_csv(cfg, os);
        int rc = write_text(os.str(), out_path);
        if (rc != HS_OK) hs::fail(hs::errc::io_error, g_last_error);
    });
}

} // extern "C"
