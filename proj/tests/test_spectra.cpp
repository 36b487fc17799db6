// schreier-spectra: graphs, Markov matrices, the Jacobi solve against an
// independent characteristic-polynomial oracle, histograms.
#include <cmath>

#include "doctest.h"

#include "autg/spectra.hpp"

using namespace autg;

namespace {

GroupHandle handle(int idx) { return GroupHandle(PresetRegistry::builtin().automaton(idx)); }

// Oracle: real roots of the characteristic polynomial of the integer count
// matrix, via Faddeev-LeVerrier coefficients, a square-free reduction (so
// repeated eigenvalues still produce sign changes) and bisection.
std::vector<double> charpoly_roots_4x4(const MarkovMatrix& m) {
    REQUIRE(m.n == 4);
    double A[4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) A[i][j] = static_cast<double>(m.counts[i * 4 + j]);
    // det(xI - C) = x^4 + c3 x^3 + c2 x^2 + c1 x + c0 (integer coefficients)
    double coeff[5];
    coeff[4] = 1.0;
    double Mk[4][4] = {};
    for (int i = 0; i < 4; ++i) Mk[i][i] = 1.0;
    for (int k = 1; k <= 4; ++k) {
        double T[4][4] = {};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int l = 0; l < 4; ++l) T[i][j] += A[i][l] * Mk[l][j];
        double tr = T[0][0] + T[1][1] + T[2][2] + T[3][3];
        double c = -tr / k;
        coeff[4 - k] = std::round(c);  // provably integral
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) Mk[i][j] = T[i][j] + (i == j ? coeff[4 - k] : 0.0);
    }
    using Poly = std::vector<double>;  // ascending coefficients
    auto deg = [](const Poly& p) {
        int d = static_cast<int>(p.size()) - 1;
        while (d > 0 && std::abs(p[d]) < 1e-9) --d;
        return d;
    };
    auto rem = [&](Poly a, const Poly& b) {
        int db = deg(b);
        for (int da = deg(a); da >= db; da = deg(a)) {
            double f = a[da] / b[db];
            for (int i = 0; i <= db; ++i) a[da - db + i] -= f * b[i];
            a[da] = 0.0;
            if (deg(a) == da) break;
        }
        a.resize(std::max(deg(a) + 1, 1));
        return a;
    };
    auto normalize = [&](Poly p) {
        double lead = p[deg(p)];
        for (double& c : p) c /= lead;
        return p;
    };
    Poly p = {coeff[0], coeff[1], coeff[2], coeff[3], coeff[4]};
    Poly dp = {coeff[1], 2 * coeff[2], 3 * coeff[3], 4 * coeff[4]};
    // gcd(p, p') by the Euclidean sequence; then the square-free part p / gcd
    Poly a = normalize(p), b = normalize(dp);
    for (;;) {
        if (deg(b) == 0) {
            if (std::abs(b[0]) > 1e-7) a = Poly{1.0};  // gcd is a unit
            break;
        }
        Poly r = rem(a, b);
        a = std::move(b);
        if (deg(r) == 0 && std::abs(r[0]) < 1e-7) break;  // divides exactly: gcd = a
        b = normalize(r);
    }
    Poly sqfree = p;
    if (deg(a) > 0) {
        // divide p by the gcd a (monic): synthetic long division
        Poly q(deg(p) - deg(a) + 1, 0.0);
        Poly work = p;
        for (int d = deg(p); d >= deg(a); --d) {
            double f = work[d] / a[deg(a)];
            q[d - deg(a)] = f;
            for (int i = 0; i <= deg(a); ++i) work[d - deg(a) + i] -= f * a[i];
        }
        sqfree = q;
    }
    auto eval = [&](double y) {
        double x = y * m.denominator;  // roots of p(den*y) are eigenvalues of M
        double v = 0;
        for (int i = deg(sqfree); i >= 0; --i) v = v * x + sqfree[i];
        return v;
    };
    std::vector<double> roots;
    const int samples = 400000;
    double prev_y = -1.000001, prev_v = eval(prev_y);
    for (int i = 1; i <= samples; ++i) {
        double y = -1.000001 + 2.000002 * i / samples;
        double v = eval(y);
        if ((prev_v <= 0 && v >= 0) || (prev_v >= 0 && v <= 0)) {
            double lo = prev_y, hi = y;
            for (int it = 0; it < 100; ++it) {
                double mid = (lo + hi) / 2;
                if ((eval(lo) <= 0) == (eval(mid) <= 0))
                    lo = mid;
                else
                    hi = mid;
            }
            roots.push_back((lo + hi) / 2);
        }
        prev_y = y;
        prev_v = v;
    }
    return roots;
}

}  // namespace

TEST_CASE("schreier graph shapes") {
    GroupHandle trivial(parse_recursion("e = (e, e)"));
    SchreierGraph g = schreier_graph(trivial, 2);
    CHECK(g.vertices == 4);
    CHECK(g.component_count() == 4);  // isolated vertices with self loops
    for (const auto& e : g.edges) CHECK(e.from == e.to);

    GroupHandle g891 = handle(891);
    CHECK(schreier_graph(g891, 3).connected());
    // edge count = |S u S^-1| * 2^n
    SchreierGraph s = schreier_graph(g891, 4);
    CHECK(s.edges.size() == g891.symmetric_generators().size() * 16);
    CHECK_THROWS(schreier_graph(g891, 13));
}

TEST_CASE("markov matrix for 802 at level 1") {
    GroupHandle g802 = handle(802);
    MarkovMatrix m = markov_matrix(g802, 1);
    // a active; b, c inactive; all involutive so |S u S^-1| = 3
    CHECK(m.denominator == 3);
    CHECK(m.at(0, 0) == doctest::Approx(2.0 / 3));
    CHECK(m.at(0, 1) == doctest::Approx(1.0 / 3));
    CHECK(m.at(1, 0) == doctest::Approx(1.0 / 3));
    CHECK(m.at(1, 1) == doctest::Approx(2.0 / 3));
    CHECK(m.symmetric_exact());
    CHECK(m.row_sums_one());

    SpectrumResult s = spectrum(m);
    REQUIRE(s.eigenvalues.size() == 2);
    CHECK(s.eigenvalues[0] == doctest::Approx(1.0 / 3).epsilon(1e-10));
    CHECK(s.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("identity group spectrum is all ones") {
    GroupHandle trivial(parse_recursion("e = (e, e)"));
    MarkovMatrix m = markov_matrix(trivial, 3);
    SpectrumResult s = spectrum(m);
    for (double lambda : s.eigenvalues) CHECK(lambda == doctest::Approx(1.0));
}

TEST_CASE("row sums and symmetry for 741 at level 5") {
    GroupHandle g741 = handle(741);
    MarkovMatrix m = markov_matrix(g741, 5);
    CHECK(m.symmetric_exact());
    CHECK(m.row_sums_one());
}

TEST_CASE("jacobi agrees with characteristic polynomial roots on 4x4") {
    for (int idx : {741, 802, 846, 891, 2294}) {
        GroupHandle g = handle(idx);
        MarkovMatrix m = markov_matrix(g, 2);
        SpectrumResult s = spectrum(m);
        std::vector<double> oracle = charpoly_roots_4x4(m);
        // every Jacobi eigenvalue is close to some oracle root
        for (double lambda : s.eigenvalues) {
            double best = 1e9;
            for (double r : oracle) best = std::min(best, std::abs(lambda - r));
            CHECK_MESSAGE(best < 1e-8, "preset ", idx, " lambda ", lambda);
        }
    }
}

TEST_CASE("multiplicity of eigenvalue one equals component count") {
    for (int idx : {802, 891, 741}) {
        GroupHandle g = handle(idx);
        for (int n = 1; n <= 5; ++n) {
            MarkovMatrix m = markov_matrix(g, n);
            SpectrumResult s = spectrum(m);
            CHECK(s.multiplicity_one == schreier_graph(g, n).component_count());
        }
    }
}

TEST_CASE("spectra nest between levels") {
    GroupHandle g802 = handle(802);
    SpectrumUnion u = spectrum_union(g802, 5);
    for (size_t n = 0; n + 1 < u.per_level.size(); ++n) {
        for (double lambda : u.per_level[n].eigenvalues) {
            double best = 1e9;
            for (double mu : u.per_level[n + 1].eigenvalues)
                best = std::min(best, std::abs(lambda - mu));
            CHECK(best < 1e-6);
        }
    }
}

TEST_CASE("histogram binning") {
    std::vector<double> eigs = {-1.0, -0.999, 0.0, 1.0, 1.0};
    auto bins = spectrum_histogram(eigs, 64);
    REQUIRE(bins.size() == 64);
    CHECK(bins.front().count == 2);   // -1 and -0.999
    CHECK(bins.back().count == 2);    // right-closed last bin takes both 1.0s
    long long total = 0;
    for (const auto& b : bins) total += b.count;
    CHECK(total == 5);
    std::string csv = histogram_csv(bins);
    CHECK(csv.rfind("bin_lo,bin_hi,count\n", 0) == 0);

    GroupHandle trivial(parse_recursion("e = (e, e)"));
    SpectrumUnion u = spectrum_union(trivial, 3);
    int nonzero = 0;
    for (const auto& b : u.histogram)
        if (b.count) ++nonzero;
    CHECK(nonzero == 1);  // single bin at 1
}

TEST_CASE("spectrum rejects non-symmetric input") {
    MarkovMatrix m;
    m.n = 2;
    m.denominator = 2;
    m.counts = {1, 1, 0, 2};
    m.values = {0.5, 0.5, 0.0, 1.0};
    CHECK_THROWS(spectrum(m));
}
