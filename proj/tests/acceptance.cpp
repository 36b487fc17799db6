// Acceptance suite: reproduces the published tables and the proved facts,
// one pass/fail line per criterion. Exit code = number of failed criteria.
#include <chrono>
#include <cmath>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "autg/classify.hpp"
#include "autg/group.hpp"
#include "autg/order.hpp"
#include "autg/recursive.hpp"
#include "autg/spectra.hpp"

using namespace autg;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::map<int, GroupHandle>& handles() {
    static std::map<int, GroupHandle> cache;
    if (cache.empty()) {
        for (int idx : PresetRegistry::builtin().indices())
            cache.emplace(idx, GroupHandle(PresetRegistry::builtin().automaton(idx)));
    }
    return cache;
}

Element elem(int preset, const std::string& w) {
    const MealyAutomaton& a = handles().at(preset).automaton();
    return Element::of_word(a, parse_word(a, w));
}

struct Criterion {
    int number;
    std::string name;
    bool pass = true;
    std::vector<std::string> details;
    double elapsed = 0;

    void fail(const std::string& msg) {
        pass = false;
        details.push_back(msg);
    }
    void note(const std::string& msg) { details.push_back(msg); }
};

// ---------------------------------------------------------------------------

Criterion criterion1_relators() {
    Criterion c{1, "relator regression (all printed relators trivial)"};
    auto t0 = Clock::now();
    for (const PaperTable& t : paper_tables()) {
        GroupHandle& g = handles().at(t.preset);
        for (const std::string& r : t.relators)
            if (!verify_relator(g, r)) c.fail(std::to_string(t.preset) + ": " + r);
    }
    c.elapsed = seconds_since(t0);
    if (c.elapsed > 60) c.fail("runtime over 60 s");
    return c;
}

Criterion criterion2_sf() {
    Criterion c{2, "SF regression (level quotient orders, n = 0..8)"};
    auto t0 = Clock::now();
    for (const PaperTable& t : paper_tables()) {
        GroupHandle& g = handles().at(t.preset);
        for (int n = 0; n <= 8; ++n) {
            int got = level_quotient_order(g, n).log2_order;
            if (got != t.sf[n])
                c.fail(std::to_string(t.preset) + " n=" + std::to_string(n) + ": 2^" +
                       std::to_string(got) + " want 2^" + std::to_string(t.sf[n]));
        }
    }
    c.elapsed = seconds_since(t0);
    if (c.elapsed > 120) c.fail("runtime over 120 s");
    return c;
}

Criterion criterion3_growth() {
    Criterion c{3, "Gr regression (ball sizes)"};
    auto t0 = Clock::now();
    for (const PaperTable& t : paper_tables()) {
        GroupHandle& g = handles().at(t.preset);
        auto got = growth_series(g, static_cast<int>(t.gr.size()) - 1);
        for (size_t i = 0; i < t.gr.size(); ++i)
            if (got[i] != t.gr[i])
                c.fail(std::to_string(t.preset) + " r=" + std::to_string(i) + ": " +
                       std::to_string(got[i]) + " want " + std::to_string(t.gr[i]));
    }
    c.elapsed = seconds_since(t0);
    if (c.elapsed > 300) c.fail("runtime over 300 s");
    return c;
}

Criterion criterion4_nucleus() {
    Criterion c{4, "nucleus verdicts with validated witnesses"};
    auto t0 = Clock::now();
    {
        NucleusResult r = nucleus(handles().at(752));
        if (r.kind != NucleusResult::Kind::kContracting || r.nucleus.size() != 41)
            c.fail("752: want contracting with |N| = 41, got " + r.to_string());
        else if (!verify_nucleus_set(handles().at(752), r.nucleus))
            c.fail("752: returned set fails the nucleus property check");
    }
    for (int idx : {775, 783, 802}) {
        NucleusResult r = nucleus(handles().at(idx));
        if (r.kind != NucleusResult::Kind::kContracting)
            c.fail(std::to_string(idx) + ": want contracting, got " + r.to_string());
        else if (!verify_nucleus_set(handles().at(idx), r.nucleus))
            c.fail(std::to_string(idx) + ": returned set fails the nucleus property check");
    }
    for (int idx : {741, 843, 849, 875, 891, 2193, 2280, 2852}) {
        NucleusResult r = nucleus(handles().at(idx));
        if (r.kind != NucleusResult::Kind::kNonContracting) {
            c.fail(std::to_string(idx) + ": want non-contracting with witness, got " +
                   r.to_string());
            continue;
        }
        bool ok = r.witness_element.fixes(r.witness_vertex) &&
                  r.witness_element.section(r.witness_vertex) == r.witness_element &&
                  r.witness_order.has_value() &&
                  check_infinite_certificate(r.witness_element, *r.witness_order);
        if (!ok)
            c.fail(std::to_string(idx) + ": witness failed validation");
        else
            c.note(std::to_string(idx) + ": witness " + r.witness_word + " at " +
                   r.witness_vertex);
    }
    c.elapsed = seconds_since(t0);
    return c;
}

Criterion criterion5_classification() {
    Criterion c{5, "classification pipeline counts"};
    auto t0 = Clock::now();
    ClassifyBudgets budgets;
    budgets.jobs = 4;
    ClassificationResult r = run_classification(budgets);
    if (r.summary.total_labeled != 5832)
        c.fail("labeled count " + std::to_string(r.summary.total_labeled));
    long long member_sum = 0;
    for (const ClassRecord& rec : r.classes) member_sum += rec.member_count;
    if (member_sum != 5832) c.fail("class member counts sum to " + std::to_string(member_sum));
    if (r.summary.nontrivial_minimal_classes != 194)
        c.fail("documented-convention class count " +
               std::to_string(r.summary.nontrivial_minimal_classes) + " want 194");
    c.note("labeled symmetry classes: " + std::to_string(r.summary.labeled_symmetry_classes) +
           "; 3-state-minimal: " + std::to_string(r.summary.three_state_minimal_classes) +
           "; nontrivial minimal forms: " +
           std::to_string(r.summary.nontrivial_minimal_classes));
    if (r.summary.finite_class_count != 6)
        c.fail("finite iso-type buckets " + std::to_string(r.summary.finite_class_count));
    std::vector<long long> want = {1, 2, 4, 8, 8, 16};
    if (r.summary.finite_orders != want) {
        std::string got;
        for (long long o : r.summary.finite_orders) got += std::to_string(o) + " ";
        c.fail("finite order multiset {" + got + "} want {1 2 4 8 8 16}");
    }
    if (r.summary.abelian_class_count != 6)
        c.fail("abelian iso-type buckets " + std::to_string(r.summary.abelian_class_count));
    c.note("fingerprint buckets (lower bound for distinct groups): " +
           std::to_string(r.summary.fingerprint_buckets) + " (paper's upper bound: 124)");

    // preset matching: conjugate/isomorphic pairs share fingerprints
    auto matches = match_presets(r, PresetRegistry::builtin());
    std::map<int, PresetMatch> by_preset;
    for (const auto& m : matches) by_preset[m.preset] = m;
    auto same_fp = [&](int u, int v) {
        return by_preset[u].fingerprint_key == by_preset[v].fingerprint_key;
    };
    if (!same_fp(775, 783)) c.fail("775 and 783 fingerprints differ");
    if (!same_fp(849, 2852)) c.fail("849 and 2852 fingerprints differ");
    if (!same_fp(2852, 933)) c.fail("2852 and 933 fingerprints differ");
    if (by_preset[775].class_key != by_preset[793].class_key)
        c.fail("775 and 793 should share a symmetry class (letter swap)");
    c.note(std::string("775 and 783 share a symmetry class: ") +
           (by_preset[775].class_key == by_preset[783].class_key ? "yes" : "no (conjugate only)"));
    c.elapsed = seconds_since(t0);
    if (c.elapsed > 600) c.fail("runtime over 600 s");
    return c;
}

Criterion criterion6_dual() {
    Criterion c{6, "dual of 846 and bireversibility"};
    auto t0 = Clock::now();
    DualResult r = dual_automaton(handles().at(846).automaton());
    MealyAutomaton printed = parse_recursion("A = (0 2 1) (B, A, A)\nB = (0 2) (A, B, B)");
    if (canonical_form_unpointed(r.dual) != canonical_form_unpointed(printed))
        c.fail("dual(846) differs from the printed two-state automaton");
    if (!r.bireversible) c.fail("846 not reported bireversible");
    c.elapsed = seconds_since(t0);
    return c;
}

Criterion criterion7_transitivity() {
    Criterion c{7, "spherical transitivity decisions"};
    auto t0 = Clock::now();
    struct Case {
        std::string name;
        Element g;
        bool want;
    };
    MealyAutomaton bsys = parse_recursion(
        "p = (q, r)\nq = s (s, r)\nr = s (s, q)\ns = s (t, u)\nt = s (p, u)\nu = s (p, t)");
    std::vector<Case> cases;
    cases.push_back({"843 c^-1a", elem(843, "c^-1a"), true});
    cases.push_back({"2294 ca^-1", elem(2294, "ca^-1"), true});
    cases.push_back({"B_b", Element::of_state(bsys, bsys.state_index("t").value()), true});
    cases.push_back({"identity", Element::identity(2), false});
    for (const Case& cs : cases) {
        auto t1 = Clock::now();
        bool got = is_spherically_transitive(cs.g);
        double dt = seconds_since(t1);
        if (got != cs.want) c.fail(cs.name + ": got " + (got ? "true" : "false"));
        if (dt > 1.0) c.fail(cs.name + ": took " + std::to_string(dt) + " s");
    }
    c.elapsed = seconds_since(t0);
    return c;
}

Criterion criterion8_identities() {
    Criterion c{8, "identity suite from the proofs section"};
    auto t0 = Clock::now();
    // 775: x = ba, y = cabc
    {
        Element x = elem(775, "ba"), y = elem(775, "cabc");
        Element a = elem(775, "a"), b = elem(775, "b"), cc = elem(775, "c");
        auto conj = [](const Element& u, const Element& g) { return g.inverse() * u * g; };
        if (conj(x, a) != x.inverse()) c.fail("775: x^a != x^-1");
        if (conj(y, a) != y.inverse()) c.fail("775: y^a != y^-1");
        if (conj(x, b) != x.inverse()) c.fail("775: x^b != x^-1");
        if (conj(y, b) != x * y.inverse() * x.inverse()) c.fail("775: y^b != x y^-1 x^-1");
        if (conj(x, cc) != y.inverse()) c.fail("775: x^c != y^-1");
        if (conj(y, cc) != x.inverse()) c.fail("775: y^c != x^-1");
    }
    // 891: x = ac, y = cb
    {
        Element x = elem(891, "ac"), y = elem(891, "cb");
        Element sigma = Element::wreath(Perm::transposition(2, 0, 1),
                                        {Element::identity(2), Element::identity(2)});
        if (x != Element::wreath(Perm::transposition(2, 0, 1), {y, x.inverse()}))
            c.fail("891: x != s(y, x^-1)");
        if (y != Element::wreath(Perm(2), {y.inverse(), x})) c.fail("891: y != (y^-1, x)");
        if (x * y != sigma) c.fail("891: xy != sigma");
        for (int n = 0; n <= 4; ++n) {
            Element sn = elem(891, "(cb)^-" + std::to_string(n) + "(ac)(cb)^" +
                                       std::to_string(n + 1));
            auto depth = finitary_depth(sn);
            if (!depth || *depth != 2 * n + 1)
                c.fail("891: depth(s_" + std::to_string(n) + ") != " + std::to_string(2 * n + 1));
        }
    }
    // 2294: a mu a^-1 = mu^-3
    {
        Element a = elem(2294, "a"), mu = elem(2294, "ca^-1");
        if (a * mu * a.inverse() != mu.power(-3)) c.fail("2294: a mu a^-1 != mu^-3");
    }
    // 849: [a^-1, c] . [c, a] = ([a, c], 1)
    {
        Element a = elem(849, "a"), cc = elem(849, "c");
        auto comm = [](const Element& u, const Element& v) {
            return u.inverse() * v.inverse() * u * v;
        };
        Element lhs = comm(a.inverse(), cc) * comm(cc, a);
        Element rhs = Element::wreath(Perm(2), {comm(a, cc), Element::identity(2)});
        if (lhs != rhs) c.fail("849: [a^-1,c][c,a] != ([a,c], 1)");
    }
    c.elapsed = seconds_since(t0);
    return c;
}

Criterion criterion9_free_monoid() {
    Criterion c{9, "free monoid evidence (positive words of length <= 7)"};
    auto t0 = Clock::now();
    auto check_free = [&](int preset, const std::vector<int>& gens, long long expect) {
        const MealyAutomaton& a = handles().at(preset).automaton();
        std::set<std::string> keys;
        long long count = 0;
        std::vector<Element> frontier = {Element::identity(2)};
        keys.insert(Element::identity(2).key());
        ++count;
        for (int len = 1; len <= 7; ++len) {
            std::vector<Element> next;
            for (const Element& u : frontier)
                for (int q : gens) {
                    Element v = u * Element::of_state(a, q);
                    keys.insert(v.key());
                    next.push_back(std::move(v));
                    ++count;
                }
            frontier = std::move(next);
        }
        if (static_cast<long long>(keys.size()) != count || count != expect)
            c.fail(std::to_string(preset) + ": " + std::to_string(keys.size()) + " distinct of " +
                   std::to_string(count) + " words (want " + std::to_string(expect) + ")");
    };
    check_free(2396, {0, 1, 2}, 3280);  // 1 + 3 + ... + 3^7
    check_free(2852, {0, 1}, 255);      // 1 + 2 + ... + 2^7
    c.elapsed = seconds_since(t0);
    if (c.elapsed > 120) c.fail("runtime over 2 x 60 s");
    return c;
}

Criterion criterion10_spectra() {
    Criterion c{10, "spectra properties for all presets, n <= 9"};
    auto t0 = Clock::now();
    for (const PaperTable& t : paper_tables()) {
        GroupHandle& g = handles().at(t.preset);
        auto t1 = Clock::now();
        std::vector<SpectrumResult> levels;
        for (int n = 0; n <= 9; ++n) {
            MarkovMatrix m = markov_matrix(g, n);
            if (!m.symmetric_exact()) c.fail(std::to_string(t.preset) + ": M_" +
                                             std::to_string(n) + " not symmetric");
            SpectrumResult s = spectrum(m);
            for (double lambda : s.eigenvalues)
                if (lambda < -1 - 1e-8 || lambda > 1 + 1e-8)
                    c.fail(std::to_string(t.preset) + ": eigenvalue " + std::to_string(lambda));
            int comps = schreier_graph(g, n).component_count();
            if (s.multiplicity_one != comps)
                c.fail(std::to_string(t.preset) + " n=" + std::to_string(n) + ": mult(1) = " +
                       std::to_string(s.multiplicity_one) + " vs components " +
                       std::to_string(comps));
            levels.push_back(std::move(s));
        }
        for (size_t n = 0; n + 1 < levels.size(); ++n)
            for (double lambda : levels[n].eigenvalues) {
                double best = 1e9;
                for (double mu : levels[n + 1].eigenvalues)
                    best = std::min(best, std::abs(lambda - mu));
                if (best > 1e-6) {
                    c.fail(std::to_string(t.preset) + ": sp(M_" + std::to_string(n) +
                           ") not inside sp(M_" + std::to_string(n + 1) + ") (gap " +
                           std::to_string(best) + ")");
                    break;
                }
            }
        double dt = seconds_since(t1);
        if (dt > 30.0 * 10)
            c.fail(std::to_string(t.preset) + ": spectra took " + std::to_string(dt) + " s");
    }
    c.elapsed = seconds_since(t0);
    return c;
}

Criterion criterion11_oracles() {
    Criterion c{11, "oracle equivalence (word problem and chain orders)"};
    auto t0 = Clock::now();
    for (const PaperTable& t : paper_tables()) {
        GroupHandle& g = handles().at(t.preset);
        const MealyAutomaton& a = g.automaton();
        // level-10 permutation action as the brute-force portrait oracle
        const int oracle_level = 10;
        const uint32_t N = 1u << oracle_level;
        LevelPerm id = perm_identity(N);
        long long mismatches = 0;
        std::vector<GroupWord> frontier = {GroupWord{}};
        TrivialCache& cache = g.trivial_cache();
        for (int len = 1; len <= 6 && mismatches == 0; ++len) {
            std::vector<GroupWord> next;
            for (const GroupWord& w : frontier) {
                for (int q = 1; q <= a.size(); ++q) {
                    for (int sign : {1, -1}) {
                        if (!w.letters.empty() && w.letters.back() == -sign * q) continue;
                        GroupWord w2 = w;
                        w2.letters.push_back(sign * q);
                        bool oracle = g.word_level_perm(w2, oracle_level) == id;
                        if (is_trivial(a, w2, &cache) != oracle) {
                            ++mismatches;
                            c.fail(std::to_string(t.preset) + ": " + word_to_string(a, w2));
                        }
                        next.push_back(std::move(w2));
                    }
                }
            }
            frontier = std::move(next);
        }
        for (int n = 1; n <= 4; ++n) {
            long long closure = level_quotient_order_exhaustive(g, n);
            long long chain = 1LL << level_quotient_order(g, n).log2_order;
            if (closure != chain)
                c.fail(std::to_string(t.preset) + " level " + std::to_string(n) + ": closure " +
                       std::to_string(closure) + " vs chain " + std::to_string(chain));
        }
    }
    c.elapsed = seconds_since(t0);
    return c;
}

}  // namespace

int main() {
    std::vector<Criterion (*)()> criteria = {
        criterion1_relators, criterion2_sf,         criterion3_growth,
        criterion4_nucleus,  criterion5_classification, criterion6_dual,
        criterion7_transitivity, criterion8_identities, criterion9_free_monoid,
        criterion10_spectra, criterion11_oracles,
    };
    int failures = 0;
    for (auto* fn : criteria) {
        Criterion c = fn();
        std::ostringstream line;
        line << "CRITERION " << c.number << " [" << c.name << "]: "
             << (c.pass ? "PASS" : "FAIL") << "  (" << static_cast<int>(c.elapsed * 1000) / 1000.0
             << " s)";
        std::cout << line.str() << "\n";
        for (const std::string& d : c.details) std::cout << "    - " << d << "\n";
        if (!c.pass) ++failures;
        std::cout.flush();
    }
    if (failures)
        std::cout << failures << " criterion(s) failed\n";
    else
        std::cout << "all criteria passed\n";
    return failures;
}
