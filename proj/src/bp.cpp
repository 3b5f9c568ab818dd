#include "bp.hpp"

#include "errors.hpp"

namespace hs {

BPState bp_init(const RegularGraph& g) {
    BPState st;
    st.log_msg.assign(g.edges.size() * 2, 0.0); // gamma = 1
    st.log_vertex.assign(g.n, 0.0);
    st.vertex_valid = false;
    return st;
}

void bp_iterate(BPState& st, const SparseInstance& inst) {
    require(inst.noise.two_point(), errc::unsupported,
            "sparse BP requires the two-point noise model");
    const RegularGraph& g = inst.graph;
    require(st.log_msg.size() == g.edges.size() * 2, errc::invalid_argument,
            "state/graph mismatch");

    double log_sd = 0.5 * std::log(static_cast<double>(inst.delta));
    double log_kappa = std::log(inst.kappa);

    // Factor per directed message l->i, then per-vertex totals; each outgoing
    // message divides its reverse factor back out.
    std::vector<double> lf(st.log_msg.size());
    for (size_t e = 0; e < g.edges.size(); ++e) {
        int w = inst.weights[e] > 0 ? 1 : -1;
        lf[2 * e] = log_bp_factor(st.log_msg[2 * e], w, log_sd);         // a->b factor at b
        lf[2 * e + 1] = log_bp_factor(st.log_msg[2 * e + 1], w, log_sd); // b->a factor at a
    }

    std::vector<double> total(g.n, 0.0);
    for (size_t e = 0; e < g.edges.size(); ++e) {
        auto [a, b] = g.edges[e];
        total[b] += lf[2 * e];
        total[a] += lf[2 * e + 1];
    }

    std::vector<double> next(st.log_msg.size());
    for (size_t e = 0; e < g.edges.size(); ++e) {
        auto [a, b] = g.edges[e];
        // a->b excludes b's contribution to a, which is the reverse factor.
        next[2 * e] = log_kappa + total[a] - lf[2 * e + 1];
        next[2 * e + 1] = log_kappa + total[b] - lf[2 * e];
    }

    for (int32_t i = 0; i < g.n; ++i) st.log_vertex[i] = log_kappa + total[i];
    st.vertex_valid = true;
    st.log_msg = std::move(next);
    ++st.t;
}

std::vector<int32_t> bp_estimate(const BPState& st, int32_t delta) {
    require(st.vertex_valid, errc::invalid_argument, "vertex values not populated yet");
    double thr = 0.5 * std::log(static_cast<double>(delta));
    std::vector<int32_t> out;
    for (size_t i = 0; i < st.log_vertex.size(); ++i)
        if (st.log_vertex[i] >= thr) out.push_back(static_cast<int32_t>(i));
    return out;
}

} // namespace hs
