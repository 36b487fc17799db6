// Level-n Schreier graphs, the Markov operator of the symmetrized generating
// set, dense symmetric eigensolves (cyclic Jacobi) and spectra histograms.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "autg/group.hpp"

namespace autg {

struct SchreierGraph {
    int level = 0;
    uint32_t vertices = 1;
    // one labeled edge (gen, v, image) per generator in S u S^-1 per vertex
    struct Edge {
        int gen;
        uint32_t from;
        uint32_t to;
    };
    std::vector<Edge> edges;
    std::vector<std::string> gen_names;

    int component_count() const;
    bool connected() const { return component_count() == 1; }
    std::string to_dot() const;
    std::string to_edge_list() const;
};

SchreierGraph schreier_graph(const GroupHandle& g, int n);

// Dense Markov matrix assembled from integer edge counts / |S u S^-1|.
struct MarkovMatrix {
    int level = 0;
    uint32_t n = 1;
    int denominator = 1;
    std::vector<int> counts;     // n*n integer edge counts (exact)
    std::vector<double> values;  // counts / denominator

    double at(uint32_t i, uint32_t j) const { return values[static_cast<size_t>(i) * n + j]; }
    bool symmetric_exact() const;
    bool row_sums_one() const;
};

MarkovMatrix markov_matrix(const GroupHandle& g, int n);

struct SpectrumResult {
    int level = 0;
    std::vector<double> eigenvalues;  // sorted ascending
    double tolerance = 0;
    int multiplicity_one = 0;         // eigenvalues within 1e-9 of 1
    int components = 0;               // of the Schreier graph, when known
    double max_residual = 0;          // ||M v - lambda v|| on sampled pairs
};

// cyclic Jacobi on the dense symmetric matrix until the off-diagonal norm
// drops below tol * ||M||_F
SpectrumResult spectrum(const MarkovMatrix& m, double tol = 1e-10);

struct HistogramBin {
    double lo;
    double hi;
    long long count;
};

// 64 uniform bins over [-1, 1], half-open, right-closed last bin
std::vector<HistogramBin> spectrum_histogram(const std::vector<double>& eigenvalues,
                                             int bins = 64);
std::string histogram_csv(const std::vector<HistogramBin>& bins);

struct SpectrumUnion {
    std::vector<SpectrumResult> per_level;  // levels 0..N
    std::vector<double> merged;             // sorted union
    std::vector<HistogramBin> histogram;
};

SpectrumUnion spectrum_union(const GroupHandle& g, int max_level, int bins = 64);

std::string spectrum_json(const SpectrumResult& s);

}  // namespace autg
