#include "autg/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace autg {

int SchreierGraph::component_count() const {
    std::vector<uint32_t> parent(vertices);
    std::iota(parent.begin(), parent.end(), 0u);
    std::function<uint32_t(uint32_t)> find = [&](uint32_t v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    for (const Edge& e : edges) parent[find(e.from)] = find(e.to);
    int count = 0;
    for (uint32_t v = 0; v < vertices; ++v)
        if (find(v) == v) ++count;
    return count;
}

std::string SchreierGraph::to_dot() const {
    std::string out = "digraph schreier {\n";
    for (uint32_t v = 0; v < vertices; ++v) out += "  v" + std::to_string(v) + ";\n";
    for (const Edge& e : edges)
        out += "  v" + std::to_string(e.from) + " -> v" + std::to_string(e.to) + " [label=\"" +
               gen_names[e.gen] + "\"];\n";
    out += "}\n";
    return out;
}

std::string SchreierGraph::to_edge_list() const {
    std::string out;
    for (const Edge& e : edges)
        out += gen_names[e.gen] + "\t" + std::to_string(e.from) + "\t" + std::to_string(e.to) +
               "\n";
    return out;
}

SchreierGraph schreier_graph(const GroupHandle& g, int n) {
    if (n > 12) throw std::invalid_argument("schreier level too large");
    SchreierGraph graph;
    graph.level = n;
    graph.vertices = 1u << n;
    const auto& sym = g.symmetric_generators();
    for (size_t gi = 0; gi < sym.size(); ++gi)
        graph.gen_names.push_back("g" + std::to_string(gi));
    for (size_t gi = 0; gi < sym.size(); ++gi) {
        const Element& e = sym[gi];
        for (uint32_t v = 0; v < graph.vertices; ++v) {
            int s = 0;
            uint32_t img = 0;
            for (int i = n - 1; i >= 0; --i) {
                int x = (v >> i) & 1;
                img = (img << 1) | static_cast<uint32_t>(e.perm_at(s)(x));
                s = e.child(s, x);
            }
            graph.edges.push_back({static_cast<int>(gi), v, img});
        }
    }
    if (sym.empty()) {
        // trivial group: keep the identity loop so the graph has edges
        graph.gen_names.push_back("id");
        for (uint32_t v = 0; v < graph.vertices; ++v)
            graph.edges.push_back({0, v, v});
    }
    return graph;
}

MarkovMatrix markov_matrix(const GroupHandle& g, int n) {
    SchreierGraph graph = schreier_graph(g, n);
    MarkovMatrix m;
    m.level = n;
    m.n = graph.vertices;
    m.denominator = std::max<int>(1, static_cast<int>(g.symmetric_generators().size()));
    m.counts.assign(static_cast<size_t>(m.n) * m.n, 0);
    if (g.symmetric_generators().empty()) {
        for (uint32_t v = 0; v < m.n; ++v) m.counts[static_cast<size_t>(v) * m.n + v] = 1;
    } else {
        for (const auto& e : graph.edges) ++m.counts[static_cast<size_t>(e.from) * m.n + e.to];
    }
    m.values.resize(m.counts.size());
    for (size_t i = 0; i < m.counts.size(); ++i)
        m.values[i] = static_cast<double>(m.counts[i]) / m.denominator;
    return m;
}

bool MarkovMatrix::symmetric_exact() const {
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = i + 1; j < n; ++j)
            if (counts[static_cast<size_t>(i) * n + j] != counts[static_cast<size_t>(j) * n + i])
                return false;
    return true;
}

bool MarkovMatrix::row_sums_one() const {
    for (uint32_t i = 0; i < n; ++i) {
        int sum = 0;
        for (uint32_t j = 0; j < n; ++j) sum += counts[static_cast<size_t>(i) * n + j];
        if (sum != denominator) return false;
    }
    return true;
}

SpectrumResult spectrum(const MarkovMatrix& m, double tol) {
    if (!m.symmetric_exact()) throw std::invalid_argument("spectrum needs a symmetric matrix");
    const uint32_t n = m.n;
    std::vector<double> a = m.values;  // working copy, row-major
    auto at = [&](uint32_t i, uint32_t j) -> double& { return a[static_cast<size_t>(i) * n + j]; };
    // eigenvector accumulation for residual spot checks
    std::vector<double> v(static_cast<size_t>(n) * n, 0.0);
    for (uint32_t i = 0; i < n; ++i) v[static_cast<size_t>(i) * n + i] = 1.0;

    double fro = 0;
    for (double x : a) fro += x * x;
    fro = std::sqrt(fro);
    const double target = std::max(tol * std::max(fro, 1.0), 1e-300);

    auto off_norm = [&]() {
        double s = 0;
        for (uint32_t i = 0; i < n; ++i)
            for (uint32_t j = i + 1; j < n; ++j) s += at(i, j) * at(i, j);
        return std::sqrt(2 * s);
    };

    for (int sweep = 0; sweep < 100 && off_norm() > target; ++sweep) {
        for (uint32_t p = 0; p + 1 < n; ++p) {
            for (uint32_t q = p + 1; q < n; ++q) {
                double apq = at(p, q);
                if (std::abs(apq) <= target / (static_cast<double>(n) * n)) continue;
                double app = at(p, p), aqq = at(q, q);
                double theta = (aqq - app) / (2 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (uint32_t k = 0; k < n; ++k) {
                    double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (uint32_t k = 0; k < n; ++k) {
                    double apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
                for (uint32_t k = 0; k < n; ++k) {
                    double vkp = v[static_cast<size_t>(k) * n + p];
                    double vkq = v[static_cast<size_t>(k) * n + q];
                    v[static_cast<size_t>(k) * n + p] = c * vkp - s * vkq;
                    v[static_cast<size_t>(k) * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    SpectrumResult out;
    out.level = m.level;
    out.tolerance = tol;
    std::vector<std::pair<double, uint32_t>> eig;
    for (uint32_t i = 0; i < n; ++i) eig.push_back({at(i, i), i});
    std::sort(eig.begin(), eig.end());
    // residuals on a few sampled eigenpairs against the exact matrix
    uint32_t samples = std::min<uint32_t>(n, 8);
    for (uint32_t si = 0; si < samples; ++si) {
        uint32_t col = eig[si * (n - 1) / std::max(1u, samples - 1)].second;
        double lambda = at(col, col);
        double res = 0;
        for (uint32_t i = 0; i < n; ++i) {
            double mv = 0;
            for (uint32_t j = 0; j < n; ++j)
                mv += m.values[static_cast<size_t>(i) * n + j] * v[static_cast<size_t>(j) * n + col];
            double diff = mv - lambda * v[static_cast<size_t>(i) * n + col];
            res += diff * diff;
        }
        out.max_residual = std::max(out.max_residual, std::sqrt(res));
    }
    out.eigenvalues.reserve(n);
    for (auto& [lambda, col] : eig) out.eigenvalues.push_back(lambda);
    for (double lambda : out.eigenvalues)
        if (std::abs(lambda - 1.0) <= 1e-9) ++out.multiplicity_one;
    return out;
}

std::vector<HistogramBin> spectrum_histogram(const std::vector<double>& eigenvalues, int bins) {
    std::vector<HistogramBin> out;
    out.reserve(bins);
    const double width = 2.0 / bins;
    for (int b = 0; b < bins; ++b) out.push_back({-1.0 + b * width, -1.0 + (b + 1) * width, 0});
    for (double lambda : eigenvalues) {
        int b = static_cast<int>(std::floor((lambda + 1.0) / width));
        if (b < 0) b = 0;
        if (b >= bins) b = bins - 1;  // right-closed last bin
        ++out[b].count;
    }
    return out;
}

std::string histogram_csv(const std::vector<HistogramBin>& bins) {
    std::ostringstream ss;
    ss << "bin_lo,bin_hi,count\n";
    ss.precision(12);
    for (const auto& b : bins) ss << b.lo << "," << b.hi << "," << b.count << "\n";
    return ss.str();
}

SpectrumUnion spectrum_union(const GroupHandle& g, int max_level, int bins) {
    SpectrumUnion out;
    for (int n = 0; n <= max_level; ++n) {
        MarkovMatrix m = markov_matrix(g, n);
        SpectrumResult s = spectrum(m);
        s.components = schreier_graph(g, n).component_count();
        out.merged.insert(out.merged.end(), s.eigenvalues.begin(), s.eigenvalues.end());
        out.per_level.push_back(std::move(s));
    }
    std::sort(out.merged.begin(), out.merged.end());
    out.histogram = spectrum_histogram(out.merged, bins);
    return out;
}

std::string spectrum_json(const SpectrumResult& s) {
    nlohmann::json j;
    j["level"] = s.level;
    j["eigenvalues"] = s.eigenvalues;
    j["mult_one"] = s.multiplicity_one;
    j["components"] = s.components;
    j["max_residual"] = s.max_residual;
    return j.dump(2);
}

}  // namespace autg
