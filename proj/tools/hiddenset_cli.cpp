// Command-line harness over the hiddenset C API.
//
// Subcommands: generate, run-dense, run-sparse, se, sweep. Flags mirror the
// key=value config file; --config loads a file first and explicit flags
// override it. Exit codes: 0 ok, 2 invalid configuration, 3 I/O failure,
// 4 numeric divergence.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hiddenset.h"

namespace {

int exit_code_for(int rc) {
    switch (rc) {
    case HS_OK: return 0;
    case HS_EINVAL: return 2;
    case HS_EIO: return 3;
    case HS_EDIVERGED: return 4;
    case HS_EUNSUPPORTED: return 2;
    default: return 4;
    }
}

int finish(int rc) {
    if (rc != HS_OK) std::fprintf(stderr, "error: %s\n", hs_last_error());
    return exit_code_for(rc);
}

// Ordered key=value map; later assignments win.
struct ConfigText {
    std::vector<std::pair<std::string, std::string>> kv;

    void set(const std::string& k, const std::string& v) { kv.emplace_back(k, v); }
    void set_if(bool cond, const std::string& k, const std::string& v) {
        if (cond) set(k, v);
    }
    bool load_file(const std::string& path) {
        std::ifstream in(path);
        if (!in.good()) return false;
        std::string line;
        while (std::getline(in, line)) {
            auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            auto trim = [](std::string s) {
                size_t a = s.find_first_not_of(" \t\r");
                size_t b = s.find_last_not_of(" \t\r");
                return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
            };
            set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        }
        return true;
    }
    std::string str() const {
        std::ostringstream os;
        for (const auto& [k, v] : kv) os << k << '=' << v << '\n';
        return os.str();
    }
};

struct CommonFlags {
    std::string config_file;
    uint64_t seed = 1;
    bool seed_set = false;
    int jobs = 0;
    std::string out;
    bool no_timing = false;
    bool dump_sets = false;

    void attach(CLI::App* app) {
        app->add_option("--config", config_file, "key=value config file");
        app->add_option("--seed", seed, "base seed")->each([this](const std::string&) {
            seed_set = true;
        });
        app->add_option("--jobs", jobs, "concurrent trials");
        app->add_option("--out", out, "output path (default stdout)");
        app->add_flag("--no-timing", no_timing, "blank the runtime column");
        app->add_flag("--dump-sets", dump_sets, "write truth/estimate sets sidecar");
    }

    ConfigText base() const {
        ConfigText cfg;
        if (!config_file.empty() && !cfg.load_file(config_file)) {
            std::fprintf(stderr, "error: cannot read config file %s\n", config_file.c_str());
            std::exit(3);
        }
        cfg.set_if(seed_set, "seed", std::to_string(seed));
        cfg.set_if(jobs > 0, "jobs", std::to_string(jobs));
        cfg.set_if(no_timing, "no_timing", "1");
        cfg.set_if(dump_sets, "dump_sets", "1");
        return cfg;
    }
};

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hidden set recovery toolkit"};
    app.require_subcommand(1);

    CommonFlags common;

    // generate
    auto* gen = app.add_subcommand("generate", "generate an instance file");
    common.attach(gen);
    int64_t g_n = 2000, g_k = -1;
    double g_kappa = 1.0, g_lambda = 1.0;
    std::string g_noise = "rademacher", g_kind = "dense", g_sampling = "iid";
    int g_delta = 20;
    gen->add_option("--n", g_n);
    gen->add_option("--k", g_k, "hidden set size (default round(kappa sqrt(n)))");
    gen->add_option("--kappa", g_kappa);
    gen->add_option("--noise", g_noise, "rademacher | gaussian");
    gen->add_option("--lambda", g_lambda);
    gen->add_option("--kind", g_kind, "dense | sparse");
    gen->add_option("--delta", g_delta);
    gen->add_option("--sampling", g_sampling, "iid | fixed-size");

    // run-dense
    auto* rd = app.add_subcommand("run-dense", "single dense recovery trial (CSV row)");
    common.attach(rd);
    int64_t d_n = 2000, d_k = -1;
    double d_kappa = 1.0, d_lambda = 1.0, d_rho_bar = -1.0, d_m = 10.0;
    std::string d_noise = "rademacher", d_instance, d_algo = "mp";
    int d_dstar = 40, d_tstar = -1, d_tpower = -1;
    int64_t d_trials = 1;
    rd->add_option("--n", d_n);
    rd->add_option("--k", d_k);
    rd->add_option("--kappa", d_kappa);
    rd->add_option("--noise", d_noise);
    rd->add_option("--lambda", d_lambda);
    rd->add_option("--d-star", d_dstar);
    rd->add_option("--t-star", d_tstar);
    rd->add_option("--M", d_m, "mu_hat level that fixes t_star");
    rd->add_option("--t-power", d_tpower);
    rd->add_option("--rho-bar", d_rho_bar);
    rd->add_option("--instance", d_instance, "instance file instead of generation");
    rd->add_option("--algo", d_algo, "mp | spectral | both");
    rd->add_option("--trials", d_trials);

    // run-sparse
    auto* rs = app.add_subcommand("run-sparse", "sparse-side runs (CSV rows per t)");
    common.attach(rs);
    int64_t s_n = 50000, s_pool = 100000;
    double s_kappa = 1.0, s_eps = 0.1;
    int s_delta = 20, s_t = 3, s_threads = 1;
    std::string s_mode = "graph-bp", s_sampling = "iid";
    rs->add_option("--n", s_n);
    rs->add_option("--delta", s_delta);
    rs->add_option("--kappa", s_kappa);
    rs->add_option("--t", s_t);
    rs->add_option("--mode", s_mode, "graph-bp | tree-population | local-rule | sparse-se");
    rs->add_option("--pool", s_pool, "population pool size / replicas");
    rs->add_option("--eps", s_eps, "local-rule leaf error");
    rs->add_option("--sampling", s_sampling);
    rs->add_option("--threads", s_threads);

    // se
    auto* se = app.add_subcommand("se", "state evolution traces (CSV)");
    common.attach(se);
    double e_lambda = 1.0, e_kappa = 1.0;
    int e_dstar = 40, e_tmax = 20;
    std::string e_mode = "ideal";
    se->add_option("--lambda", e_lambda);
    se->add_option("--kappa", e_kappa);
    se->add_option("--d-star", e_dstar);
    se->add_option("--t-max", e_tmax);
    se->add_option("--mode", e_mode, "ideal | schedule | sparse");

    // sweep
    auto* sw = app.add_subcommand("sweep", "kappa grid x seeded trials, with aggregates");
    common.attach(sw);
    int64_t w_n = 2000, w_trials = 20, w_k = -1;
    double w_lambda = 1.0;
    std::string w_mode = "dense", w_algo = "mp", w_grid, w_noise = "rademacher";
    int w_delta = 20, w_bpt = 3, w_threads = 1;
    sw->add_option("--mode", w_mode, "dense | sparse");
    sw->add_option("--n", w_n);
    sw->add_option("--k", w_k);
    sw->add_option("--kappa-grid", w_grid, "comma-separated kappa values");
    sw->add_option("--trials", w_trials);
    sw->add_option("--noise", w_noise);
    sw->add_option("--lambda", w_lambda);
    sw->add_option("--algo", w_algo);
    sw->add_option("--delta", w_delta);
    sw->add_option("--bp-t", w_bpt);
    sw->add_option("--threads", w_threads);

    CLI11_PARSE(app, argc, argv);

    if (gen->parsed()) {
        uint64_t seed = common.seed_set ? common.seed : 1;
        hs_noise* noise = nullptr;
        int rc = g_noise == "gaussian" ? hs_noise_gaussian_shift(g_lambda, &noise)
                                       : hs_noise_rademacher(&noise);
        if (rc != HS_OK) return finish(rc);
        std::string out = common.out.empty() ? "instance.hsin" : common.out;
        if (g_kind == "dense") {
            if (g_k < 0) g_k = static_cast<int64_t>(g_kappa * std::sqrt((double)g_n) + 0.5);
            hs_dense_instance* inst = nullptr;
            rc = hs_dense_generate(g_n, g_k, noise, seed, &inst);
            if (rc == HS_OK) rc = hs_dense_save(inst, out.c_str());
            hs_dense_free(inst);
        } else {
            hs_sparse_instance* inst = nullptr;
            rc = hs_sparse_generate(static_cast<int32_t>(g_n), g_delta, g_kappa, noise,
                                    g_sampling == "fixed-size" ? 1 : 0, seed, &inst);
            if (rc == HS_OK) rc = hs_sparse_save(inst, out.c_str());
            hs_sparse_free(inst);
        }
        hs_noise_free(noise);
        if (rc == HS_OK) std::fprintf(stderr, "wrote %s\n", out.c_str());
        return finish(rc);
    }

    if (rd->parsed()) {
        ConfigText cfg = common.base();
        cfg.set("mode", "dense");
        cfg.set("n", std::to_string(d_n));
        cfg.set_if(d_k >= 0, "k", std::to_string(d_k));
        cfg.set("kappa", fmt_double(d_kappa));
        cfg.set("noise", d_noise);
        cfg.set("lambda", fmt_double(d_lambda));
        cfg.set("d_star", std::to_string(d_dstar));
        cfg.set_if(d_tstar > 0, "t_star", std::to_string(d_tstar));
        cfg.set("m", fmt_double(d_m));
        cfg.set_if(d_tpower > 0, "t_power", std::to_string(d_tpower));
        cfg.set_if(d_rho_bar > 0, "rho_bar", fmt_double(d_rho_bar));
        cfg.set_if(!d_instance.empty(), "instance", d_instance);
        cfg.set("algo", d_algo);
        cfg.set("trials", std::to_string(d_trials));
        return finish(hs_sweep_run(cfg.str().c_str(), common.out.c_str()));
    }

    if (rs->parsed()) {
        ConfigText cfg = common.base();
        cfg.set("mode", "sparse");
        cfg.set("n", std::to_string(s_n));
        cfg.set("delta", std::to_string(s_delta));
        cfg.set("kappa", fmt_double(s_kappa));
        cfg.set("bp_t", std::to_string(s_t));
        cfg.set("sparse_mode", s_mode);
        cfg.set("pool", std::to_string(s_pool));
        cfg.set("eps", fmt_double(s_eps));
        cfg.set("sampling", s_sampling);
        cfg.set("threads", std::to_string(s_threads));
        return finish(hs_sparse_modes_csv(cfg.str().c_str(), common.out.c_str()));
    }

    if (se->parsed()) {
        ConfigText cfg = common.base();
        cfg.set("lambda", fmt_double(e_lambda));
        cfg.set("kappa", fmt_double(e_kappa));
        cfg.set("d_star", std::to_string(e_dstar));
        cfg.set("t_max", std::to_string(e_tmax));
        cfg.set("se_mode", e_mode);
        return finish(hs_se_csv(cfg.str().c_str(), common.out.c_str()));
    }

    if (sw->parsed()) {
        ConfigText cfg = common.base();
        cfg.set("mode", w_mode);
        cfg.set("n", std::to_string(w_n));
        cfg.set_if(w_k >= 0, "k", std::to_string(w_k));
        cfg.set_if(!w_grid.empty(), "kappa_grid", w_grid);
        cfg.set("trials", std::to_string(w_trials));
        cfg.set("noise", w_noise);
        cfg.set("lambda", fmt_double(w_lambda));
        cfg.set("algo", w_algo);
        cfg.set("delta", std::to_string(w_delta));
        cfg.set("bp_t", std::to_string(w_bpt));
        cfg.set("threads", std::to_string(w_threads));
        return finish(hs_sweep_run(cfg.str().c_str(), common.out.c_str()));
    }

    return 2;
}
