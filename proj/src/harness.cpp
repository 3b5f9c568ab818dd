#include "harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "bp.hpp"
#include "dense_instance.hpp"
#include "dense_pipeline.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "instance_io.hpp"
#include "population.hpp"
#include "rng.hpp"
#include "se.hpp"

namespace hs {

namespace {

int64_t now_ms() {
    using namespace std::chrono;
    return duration_cast<milliseconds>(steady_clock::now().time_since_epoch()).count();
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

bool parse_bool(const std::string& v) {
    if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
    if (v == "0" || v == "false" || v == "no" || v == "off") return false;
    fail(errc::invalid_argument, "bad boolean: " + v);
}

int64_t symdiff_of(const std::vector<int32_t>& truth, const std::vector<int32_t>& est) {
    // both sorted
    int64_t inter = 0;
    size_t i = 0, j = 0;
    while (i < truth.size() && j < est.size()) {
        if (truth[i] < est[j])
            ++i;
        else if (truth[i] > est[j])
            ++j;
        else
            ++inter, ++i, ++j;
    }
    return static_cast<int64_t>(truth.size()) + static_cast<int64_t>(est.size()) - 2 * inter;
}

double overlap_of(const std::vector<int32_t>& truth, const std::vector<int32_t>& est) {
    if (truth.empty()) return 0.0;
    int64_t total = static_cast<int64_t>(truth.size()) + static_cast<int64_t>(est.size());
    int64_t inter = (total - symdiff_of(truth, est)) / 2;
    return static_cast<double>(inter) / static_cast<double>(truth.size());
}

} // namespace

void set_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    try {
        if (key == "mode") cfg.mode = value;
        else if (key == "algo") cfg.algo = value;
        else if (key == "sparse_mode") cfg.sparse_mode = value;
        else if (key == "se_mode") cfg.se_mode = value;
        else if (key == "n") cfg.n = std::stoll(value);
        else if (key == "k") cfg.k = std::stoll(value);
        else if (key == "kappa") cfg.kappa = std::stod(value);
        else if (key == "kappa_grid") {
            cfg.kappa_grid.clear();
            for (const auto& part : split(value, ','))
                if (!trim(part).empty()) cfg.kappa_grid.push_back(std::stod(trim(part)));
        }
        else if (key == "noise") cfg.noise = value;
        else if (key == "lambda") cfg.lambda = std::stod(value);
        else if (key == "d_star") cfg.d_star = std::stoi(value);
        else if (key == "m") cfg.m_threshold = std::stod(value);
        else if (key == "t_star") cfg.t_star = std::stoi(value);
        else if (key == "t_power") cfg.t_power = std::stoi(value);
        else if (key == "rho_bar") cfg.rho_bar = std::stod(value);
        else if (key == "delta") cfg.delta = std::stoi(value);
        else if (key == "bp_t") cfg.bp_t = std::stoi(value);
        else if (key == "pool") cfg.pool_size = std::stoll(value);
        else if (key == "sampling") cfg.sampling = value;
        else if (key == "eps") cfg.eps = std::stod(value);
        else if (key == "t_max") cfg.t_max = std::stoi(value);
        else if (key == "seed") cfg.seed = std::stoull(value);
        else if (key == "trials") cfg.trials = std::stoll(value);
        else if (key == "jobs") cfg.jobs = std::stoi(value);
        else if (key == "threads") cfg.threads = std::stoi(value);
        else if (key == "no_timing") cfg.no_timing = parse_bool(value);
        else if (key == "dump_sets") cfg.dump_sets = parse_bool(value);
        else if (key == "out") cfg.out = value;
        else if (key == "instance") cfg.instance_file = value;
        else fail(errc::invalid_argument, "unknown config key: " + key);
    } catch (const error&) {
        throw;
    } catch (const std::exception&) {
        fail(errc::invalid_argument, "bad value for " + key + ": " + value);
    }
}

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        size_t eq = t.find('=');
        require(eq != std::string::npos, errc::invalid_argument, "config line missing '=': " + t);
        set_config_value(cfg, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return cfg;
}

NoiseSpec config_noise(const ExperimentConfig& cfg) {
    if (cfg.noise == "rademacher" || cfg.noise == "rademacher-clique")
        return NoiseSpec::rademacher_clique();
    if (cfg.noise == "gaussian" || cfg.noise == "gaussian-shift")
        return NoiseSpec::gaussian_shift(cfg.lambda);
    fail(errc::invalid_argument, "unknown noise family: " + cfg.noise);
}

namespace {

TrialOutput dense_trial(const ExperimentConfig& cfg, int64_t trial_index, double kappa,
                        const std::string& algo) {
    TrialOutput out;
    uint64_t trial_seed = derive_seed(cfg.seed, static_cast<uint64_t>(trial_index));
    NoiseSpec noise = config_noise(cfg);

    DenseInstance inst;
    if (!cfg.instance_file.empty()) {
        inst = load_dense_instance(cfg.instance_file);
    } else {
        int64_t k = cfg.k >= 0 ? cfg.k
                               : std::llround(kappa * std::sqrt(static_cast<double>(cfg.n)));
        inst = gen_dense_instance(cfg.n, sample_hidden_set(cfg.n, k, trial_seed), noise,
                                  trial_seed);
    }
    int64_t k = static_cast<int64_t>(inst.hidden.size());
    double kappa_eff = static_cast<double>(k) / std::sqrt(static_cast<double>(inst.n));

    out.rec.seed = trial_seed;
    out.rec.mode = "dense";
    out.rec.algo = algo;
    out.rec.n = inst.n;
    out.rec.kappa = kappa_eff;
    out.rec.lambda = inst.noise.lambda();
    out.rec.d_star = cfg.d_star;
    out.truth = inst.hidden;

    int64_t t0 = now_ms();
    if (algo == "spectral") {
        int iters = cfg.t_power > 0
                        ? cfg.t_power
                        : static_cast<int>(std::ceil(10.0 * std::log(std::max<int64_t>(2, inst.n))));
        SpectralResult sr = spectral_solve(normalize(inst), k, iters, inst.hidden);
        out.estimate = sr.set;
        out.rec.t_star = -1;
        out.rec.d_star = -1;
    } else {
        if (k == 0) {
            out.rec.success = 1;
            out.rec.runtime_ms = now_ms() - t0;
            return out;
        }
        PolynomialSchedule sched =
            cfg.t_star > 0
                ? build_schedule(inst.noise.lambda(), kappa_eff, cfg.d_star, cfg.t_star)
                : build_schedule_auto(inst.noise.lambda(), kappa_eff, cfg.d_star,
                                      cfg.m_threshold, 50);
        RecoveryResult rr = run_algorithm1(inst, k, sched, cfg.t_power, cfg.rho_bar, cfg.threads);
        out.estimate = rr.final_set;
        out.rec.t_star = sched.t_star;
        out.has_stages = true;
        out.stage_sizes[0] = rr.stats.candidate_size;
        out.stage_sizes[1] = rr.stats.eigen_size;
        out.stage_sizes[2] = rr.stats.final_size;
        out.stage_truth[0] = rr.stats.candidate_truth;
        out.stage_truth[1] = rr.stats.eigen_truth;
        out.stage_truth[2] = rr.stats.final_truth;
        out.aborted = rr.stats.aborted;
    }
    out.rec.runtime_ms = now_ms() - t0;
    out.rec.symdiff = symdiff_of(out.truth, out.estimate);
    out.rec.overlap = overlap_of(out.truth, out.estimate);
    out.rec.success = out.rec.symdiff == 0 ? 1 : 0;
    return out;
}

TrialOutput sparse_trial(const ExperimentConfig& cfg, int64_t trial_index, double kappa) {
    TrialOutput out;
    uint64_t trial_seed = derive_seed(cfg.seed, static_cast<uint64_t>(trial_index));
    SamplingMode mode = cfg.sampling == "fixed-size" ? SamplingMode::fixed_size : SamplingMode::iid;
    int64_t t0 = now_ms();
    SparseInstance inst =
        gen_sparse_instance(static_cast<int32_t>(cfg.n), cfg.delta, kappa,
                            NoiseSpec::rademacher_clique(), mode, trial_seed);
    BPState st = bp_init(inst.graph);
    for (int t = 0; t < cfg.bp_t; ++t) bp_iterate(st, inst);
    out.truth = inst.hidden_set();
    out.estimate = bp_estimate(st, inst.delta);
    out.rec.seed = trial_seed;
    out.rec.mode = "sparse";
    out.rec.algo = "graph-bp";
    out.rec.n = cfg.n;
    out.rec.kappa = kappa;
    out.rec.lambda = 1.0;
    out.rec.delta = cfg.delta;
    out.rec.t_star = cfg.bp_t;
    out.rec.runtime_ms = now_ms() - t0;
    out.rec.symdiff = symdiff_of(out.truth, out.estimate);
    out.rec.overlap = overlap_of(out.truth, out.estimate);
    out.rec.success = out.rec.symdiff == 0 ? 1 : 0;
    return out;
}

} // namespace

TrialOutput run_trial(const ExperimentConfig& cfg, int64_t trial_index, double kappa_override,
                      const std::string& algo) {
    double kappa = kappa_override >= 0.0 ? kappa_override : cfg.kappa;
    std::string a = algo.empty() ? cfg.algo : algo;
    if (cfg.mode == "dense") return dense_trial(cfg, trial_index, kappa, a);
    if (cfg.mode == "sparse") return sparse_trial(cfg, trial_index, kappa);
    fail(errc::invalid_argument, "run_trial supports dense/sparse modes, not " + cfg.mode);
}

std::string csv_header() {
    return "schema=1,seed,mode,n,kappa,lambda,delta,algo,t_star,d_star,success,symdiff,overlap,"
           "runtime_ms,agg,se_success";
}

std::string csv_row(const TrialRecord& r, bool no_timing) {
    std::ostringstream os;
    os << ',' << r.seed << ',' << r.mode << ',' << r.n << ',' << fmt(r.kappa) << ','
       << fmt(r.lambda) << ',';
    if (r.delta >= 0) os << r.delta;
    os << ',' << r.algo << ',';
    if (r.t_star >= 0) os << r.t_star;
    os << ',';
    if (r.d_star >= 0) os << r.d_star;
    os << ',' << r.success << ',' << r.symdiff << ',' << fmt(r.overlap) << ',';
    if (!no_timing) os << r.runtime_ms;
    os << ",,";
    return os.str();
}

namespace {

std::string csv_aggregate_row(const std::vector<const TrialRecord*>& group, bool no_timing) {
    const TrialRecord& r0 = *group.front();
    double mean_success = 0.0, mean_symdiff = 0.0, mean_overlap = 0.0, mean_ms = 0.0;
    for (const TrialRecord* r : group) {
        mean_success += r->success;
        mean_symdiff += static_cast<double>(r->symdiff) / static_cast<double>(r->n);
        mean_overlap += r->overlap;
        mean_ms += static_cast<double>(r->runtime_ms);
    }
    auto cnt = static_cast<double>(group.size());
    mean_success /= cnt;
    mean_symdiff /= cnt;
    mean_overlap /= cnt;
    mean_ms /= cnt;
    double se = std::sqrt(mean_success * (1.0 - mean_success) / cnt);

    std::ostringstream os;
    os << ",," << r0.mode << ',' << r0.n << ',' << fmt(r0.kappa) << ',' << fmt(r0.lambda) << ',';
    if (r0.delta >= 0) os << r0.delta;
    os << ',' << r0.algo << ',';
    if (r0.t_star >= 0) os << r0.t_star;
    os << ',';
    if (r0.d_star >= 0) os << r0.d_star;
    os << ',' << fmt(mean_success) << ',' << fmt(mean_symdiff) << ',' << fmt(mean_overlap) << ',';
    if (!no_timing) os << fmt(mean_ms);
    os << ",aggregate," << fmt(se);
    return os.str();
}

} // namespace

void sweep(const ExperimentConfig& cfg, std::ostream& csv, std::vector<TrialOutput>* collected) {
    require(cfg.trials >= 1, errc::invalid_argument, "trial count must be >= 1");
    std::vector<double> grid = cfg.kappa_grid.empty() ? std::vector<double>{cfg.kappa}
                                                      : cfg.kappa_grid;
    std::vector<std::string> algos;
    if (cfg.mode == "dense" && cfg.algo == "both")
        algos = {"mp", "spectral"};
    else
        algos = {cfg.algo};

    struct Task {
        double kappa;
        std::string algo;
        int64_t trial;
    };
    std::vector<Task> tasks;
    for (double g : grid)
        for (const auto& a : algos)
            for (int64_t j = 0; j < cfg.trials; ++j) tasks.push_back({g, a, j});

    std::vector<TrialOutput> results(tasks.size());
    auto worker = [&](size_t lo, size_t hi) {
        for (size_t idx = lo; idx < hi; ++idx)
            results[idx] = run_trial(cfg, tasks[idx].trial, tasks[idx].kappa, tasks[idx].algo);
    };
    int jobs = std::max(1, cfg.jobs);
    if (jobs == 1 || tasks.size() < 2) {
        worker(0, tasks.size());
    } else {
        std::vector<std::thread> pool;
        size_t chunk = (tasks.size() + jobs - 1) / jobs;
        for (int w = 0; w < jobs; ++w) {
            size_t lo = w * chunk, hi = std::min(tasks.size(), lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(worker, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    csv << csv_header() << '\n';
    size_t idx = 0;
    for (size_t gi = 0; gi < grid.size(); ++gi) {
        for (const auto& _ : algos) {
            (void)_;
            std::vector<const TrialRecord*> group;
            for (int64_t j = 0; j < cfg.trials; ++j, ++idx) {
                csv << csv_row(results[idx].rec, cfg.no_timing) << '\n';
                group.push_back(&results[idx].rec);
            }
            csv << csv_aggregate_row(group, cfg.no_timing) << '\n';
        }
    }
    if (collected) *collected = std::move(results);
}

void sparse_modes_csv(const ExperimentConfig& cfg, std::ostream& out) {
    out << "mode,kappa,delta,t,error_rate,predicted_error,pool_mean0,pool_mean1\n";
    SparseSETrace se = sparse_gaussian_se(cfg.kappa, cfg.bp_t);
    auto predicted = [&](int t) -> std::string {
        if (t < static_cast<int>(se.predicted_error.size())) return fmt(se.predicted_error[t]);
        return "";
    };

    if (cfg.sparse_mode == "graph-bp") {
        uint64_t trial_seed = derive_seed(cfg.seed, 0);
        SamplingMode mode =
            cfg.sampling == "fixed-size" ? SamplingMode::fixed_size : SamplingMode::iid;
        SparseInstance inst =
            gen_sparse_instance(static_cast<int32_t>(cfg.n), cfg.delta, cfg.kappa,
                                NoiseSpec::rademacher_clique(), mode, trial_seed);
        auto truth = inst.hidden_set();
        BPState st = bp_init(inst.graph);
        for (int t = 1; t <= cfg.bp_t; ++t) {
            bp_iterate(st, inst);
            auto est = bp_estimate(st, inst.delta);
            double rate = static_cast<double>(symdiff_of(truth, est)) / static_cast<double>(cfg.n);
            out << "graph-bp," << fmt(cfg.kappa) << ',' << cfg.delta << ',' << t << ',' << fmt(rate)
                << ',' << predicted(t) << ",,\n";
        }
    } else if (cfg.sparse_mode == "tree-population") {
        TreePopulation pop = make_population(cfg.kappa, cfg.delta, cfg.pool_size, cfg.seed);
        for (int t = 1; t <= cfg.bp_t; ++t) {
            population_step(pop, cfg.threads);
            VertexPools vp = tree_vertex_distribution(pop, cfg.threads);
            double err = misclassification_estimate(vp, cfg.kappa, cfg.delta);
            out << "tree-population," << fmt(cfg.kappa) << ',' << cfg.delta << ',' << t << ','
                << fmt(err) << ',' << predicted(t) << ',' << fmt(pop.mean0()) << ','
                << fmt(pop.mean1()) << '\n';
        }
    } else if (cfg.sparse_mode == "local-rule") {
        PqTrace tr = local_rule_pq(cfg.kappa, cfg.delta, cfg.eps, cfg.bp_t,
                                   std::max<int64_t>(cfg.pool_size, 1), cfg.seed);
        double pi = kappa_tilde(cfg.kappa, cfg.delta) / std::sqrt(static_cast<double>(cfg.delta));
        for (int t = 1; t <= cfg.bp_t; ++t) {
            double err = (1.0 - pi) * tr.p[t] + pi * (1.0 - tr.q[t]);
            out << "local-rule," << fmt(cfg.kappa) << ',' << cfg.delta << ',' << t << ','
                << fmt(err) << ",,,\n";
        }
    } else if (cfg.sparse_mode == "sparse-se") {
        for (int t = 1; t <= cfg.bp_t && t < static_cast<int>(se.mu0.size()); ++t) {
            out << "sparse-se," << fmt(cfg.kappa) << ',' << cfg.delta << ',' << t << ",,"
                << predicted(t) << ',' << fmt(se.mu0[t]) << ',' << fmt(se.mu1[t]) << '\n';
        }
    } else {
        fail(errc::invalid_argument, "unknown sparse mode: " + cfg.sparse_mode);
    }
}

void se_csv(const ExperimentConfig& cfg, std::ostream& out) {
    if (cfg.se_mode == "ideal") {
        IdealTrajectory tr = ideal_recursion(cfg.lambda * cfg.kappa, cfg.t_max);
        out << "t,mu,tau\n";
        for (size_t t = 0; t < tr.mu.size(); ++t)
            out << t << ',' << fmt(tr.mu[t]) << ",1\n";
    } else if (cfg.se_mode == "schedule") {
        PolynomialSchedule sched = build_schedule(cfg.lambda, cfg.kappa, cfg.d_star,
                                                  std::max(1, cfg.t_max));
        SETrace tr = general_se(sched, cfg.t_max);
        out << "t,mu,tau\n";
        for (size_t t = 0; t < tr.mu.size(); ++t)
            out << t << ',' << fmt(tr.mu[t]) << ',' << fmt(tr.tau[t]) << '\n';
    } else if (cfg.se_mode == "sparse") {
        SparseSETrace tr = sparse_gaussian_se(cfg.kappa, cfg.t_max);
        out << "t,mu0,mu1,sigma,predicted_error\n";
        for (size_t t = 0; t < tr.mu0.size(); ++t)
            out << t << ',' << fmt(tr.mu0[t]) << ',' << fmt(tr.mu1[t]) << ','
                << fmt(std::sqrt(tr.sigma2[t])) << ',' << fmt(tr.predicted_error[t]) << '\n';
    } else {
        fail(errc::invalid_argument, "unknown se mode: " + cfg.se_mode);
    }
}

void write_sets_sidecar(const std::vector<TrialOutput>& rows, const std::string& path) {
    std::ofstream out(path);
    require(out.good(), errc::io_error, "cannot open for writing: " + path);
    out << "[\n";
    for (size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        out << "  {\"seed\": " << r.rec.seed << ", \"algo\": \"" << r.rec.algo
            << "\", \"truth\": [";
        for (size_t j = 0; j < r.truth.size(); ++j) out << (j ? "," : "") << r.truth[j];
        out << "], \"estimate\": [";
        for (size_t j = 0; j < r.estimate.size(); ++j) out << (j ? "," : "") << r.estimate[j];
        out << "]";
        if (r.has_stages) {
            const char* names[3] = {"candidate", "eigen", "final"};
            out << ", \"stages\": {";
            for (int s = 0; s < 3; ++s)
                out << (s ? ", " : "") << "\"" << names[s] << "\": {\"size\": "
                    << r.stage_sizes[s] << ", \"truth_overlap\": " << r.stage_truth[s] << "}";
            out << "}, \"aborted\": " << (r.aborted ? "true" : "false");
        }
        out << "}" << (i + 1 < rows.size() ? "," : "") << '\n';
    }
    out << "]\n";
    require(out.good(), errc::io_error, "write failed: " + path);
}

} // namespace hs
