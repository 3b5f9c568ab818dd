#include "instance_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "instance container assumes a little-endian host");

namespace hs {

namespace {

constexpr uint32_t kMagic = 0x4E495348; // "HSIN"
constexpr uint32_t kVersion = 1;

struct Writer {
    std::ofstream out;

    explicit Writer(const std::string& path) : out(path, std::ios::binary) {
        require(out.good(), errc::io_error, "cannot open for writing: " + path);
    }
    template <class T> void put(const T& v) {
        out.write(reinterpret_cast<const char*>(&v), sizeof(T));
    }
    void put_bytes(const void* p, size_t len) {
        out.write(reinterpret_cast<const char*>(p), static_cast<std::streamsize>(len));
    }
    void finish(const std::string& path) {
        out.flush();
        require(out.good(), errc::io_error, "write failed: " + path);
    }
};

struct Reader {
    std::ifstream in;
    std::string path;

    explicit Reader(const std::string& p) : in(p, std::ios::binary), path(p) {
        require(in.good(), errc::io_error, "cannot open for reading: " + p);
    }
    template <class T> T get() {
        T v{};
        in.read(reinterpret_cast<char*>(&v), sizeof(T));
        require(in.good(), errc::io_error, "truncated instance file: " + path);
        return v;
    }
    void get_bytes(void* p, size_t len) {
        in.read(reinterpret_cast<char*>(p), static_cast<std::streamsize>(len));
        require(in.good(), errc::io_error, "truncated instance file: " + path);
    }
};

void write_noise(Writer& w, const NoiseSpec& noise) {
    w.put(static_cast<uint32_t>(noise.family()));
    w.put(noise.lambda());
    w.put(noise.rho());
    if (noise.family() == NoiseFamily::custom_discrete) {
        auto put_table = [&](const DiscreteDist& d) {
            w.put(static_cast<uint32_t>(d.support.size()));
            for (size_t i = 0; i < d.support.size(); ++i) {
                w.put(d.support[i]);
                w.put(d.prob[i]);
            }
        };
        put_table(noise.q0_table());
        put_table(noise.q1_table());
    }
}

NoiseSpec read_noise(Reader& r) {
    auto family = static_cast<NoiseFamily>(r.get<uint32_t>());
    double lambda = r.get<double>();
    double rho = r.get<double>();
    switch (family) {
    case NoiseFamily::rademacher_clique:
        return NoiseSpec::rademacher_clique();
    case NoiseFamily::gaussian_shift:
        return NoiseSpec::gaussian_shift(lambda);
    case NoiseFamily::custom_discrete: {
        auto get_table = [&] {
            DiscreteDist d;
            auto m = r.get<uint32_t>();
            d.support.resize(m);
            d.prob.resize(m);
            for (uint32_t i = 0; i < m; ++i) {
                d.support[i] = r.get<double>();
                d.prob[i] = r.get<double>();
            }
            return d;
        };
        DiscreteDist q0 = get_table();
        DiscreteDist q1 = get_table();
        return NoiseSpec::custom_discrete(std::move(q0), std::move(q1), rho);
    }
    }
    fail(errc::io_error, "unknown noise family in " + r.path);
}

void read_header(Reader& r, uint32_t expect_kind) {
    require(r.get<uint32_t>() == kMagic, errc::io_error, "not an instance file: " + r.path);
    require(r.get<uint32_t>() == kVersion, errc::io_error, "unsupported version: " + r.path);
    require(r.get<uint32_t>() == expect_kind, errc::io_error,
            "instance kind mismatch in " + r.path);
}

} // namespace

void save_dense_instance(const DenseInstance& inst, const std::string& path) {
    Writer w(path);
    w.put(kMagic);
    w.put(kVersion);
    w.put(uint32_t{0});
    w.put(static_cast<uint64_t>(inst.n));
    w.put(static_cast<uint64_t>(inst.hidden.size()));
    write_noise(w, inst.noise);
    w.put(inst.seed);
    w.put_bytes(inst.hidden.data(), inst.hidden.size() * sizeof(int32_t));
    w.put_bytes(inst.w.v.data(), inst.w.v.size() * sizeof(double));
    w.finish(path);
}

DenseInstance load_dense_instance(const std::string& path) {
    Reader r(path);
    read_header(r, 0);
    DenseInstance inst;
    inst.n = static_cast<int64_t>(r.get<uint64_t>());
    auto k = r.get<uint64_t>();
    inst.noise = read_noise(r);
    inst.seed = r.get<uint64_t>();
    inst.hidden.resize(k);
    if (k) r.get_bytes(inst.hidden.data(), k * sizeof(int32_t));
    inst.w = Matrix(inst.n);
    if (inst.n) r.get_bytes(inst.w.v.data(), inst.w.v.size() * sizeof(double));
    return inst;
}

void save_sparse_instance(const SparseInstance& inst, const std::string& path) {
    Writer w(path);
    w.put(kMagic);
    w.put(kVersion);
    w.put(uint32_t{1});
    w.put(static_cast<uint64_t>(inst.n));
    w.put(static_cast<uint32_t>(inst.delta));
    w.put(static_cast<uint32_t>(inst.mode));
    w.put(inst.kappa);
    write_noise(w, inst.noise);
    w.put(inst.seed);
    w.put(static_cast<uint64_t>(inst.graph.edges.size()));
    for (auto [a, b] : inst.graph.edges) {
        w.put(a);
        w.put(b);
    }
    w.put_bytes(inst.labels.data(), inst.labels.size());
    w.put_bytes(inst.weights.data(), inst.weights.size() * sizeof(double));
    w.finish(path);
}

SparseInstance load_sparse_instance(const std::string& path) {
    Reader r(path);
    read_header(r, 1);
    SparseInstance inst;
    inst.n = static_cast<int32_t>(r.get<uint64_t>());
    inst.delta = static_cast<int32_t>(r.get<uint32_t>());
    inst.mode = static_cast<SamplingMode>(r.get<uint32_t>());
    inst.kappa = r.get<double>();
    inst.noise = read_noise(r);
    inst.seed = r.get<uint64_t>();
    auto m = r.get<uint64_t>();
    inst.graph.n = inst.n;
    inst.graph.degree = inst.delta + 1;
    inst.graph.edges.resize(m);
    for (auto& [a, b] : inst.graph.edges) {
        a = r.get<int32_t>();
        b = r.get<int32_t>();
    }
    inst.graph.build_adjacency();
    inst.labels.resize(inst.n);
    if (inst.n) r.get_bytes(inst.labels.data(), inst.labels.size());
    inst.weights.resize(m);
    if (m) r.get_bytes(inst.weights.data(), m * sizeof(double));
    return inst;
}

uint32_t instance_file_kind(const std::string& path) {
    Reader r(path);
    require(r.get<uint32_t>() == kMagic, errc::io_error, "not an instance file: " + path);
    require(r.get<uint32_t>() == kVersion, errc::io_error, "unsupported version: " + path);
    return r.get<uint32_t>();
}

} // namespace hs
