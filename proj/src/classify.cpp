#include "autg/classify.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace autg {

// ---------------------------------------------------------------------------
// published table data

namespace {

const std::vector<PaperTable> kTables = {
    {741,
     {"ca^2", "b^-1a^-1cb^-1ababa", "bab^-1ca^-1b^-1aba", "a^-1b^-1a^-1b^-1cabc^-1ab",
      "a^-1b^-1a^-1b^-1acbc^-1ab", "b^-1c^-3b^-1cbcbc", "a^-1b^-1abc^-1a^-1bab^-1c",
      "a^-1b^-1aba^-1c^-1bab^-1c"},
     {0, 1, 3, 6, 12, 23, 45, 88, 174},
     {1, 7, 29, 115, 441, 1643},
     false,
     true},
    {752,
     {"a^2", "b^2", "c^2", "acbabacbab", "acacbacacb", "abcabcacbacb", "acbcbabacbcbab",
      "abcbacbabcbacb", "acbcacbacbcacb", "acacbcbacacbcb", "abcbcabcacbcbacb",
      "acbcbcbabacbcbcbab", "abcbcbacbabcbcbacb"},
     {0, 1, 3, 5, 7, 8, 10, 11, 13},
     {1, 4, 10, 22, 46, 84, 140, 217, 319, 448},
     true,
     false},
    {775,
     {"a^2", "b^2", "c^2", "acac", "acbcbabcbcabcbabcb", "acbcbabcbacbcbabcb",
      "abcbacbcbcacbcbcabcb", "acbcbacbcbabcbcabcbc", "acbcbacbcbcacbcbcabcbc"},
     {0, 1, 2, 4, 6, 9, 15, 26, 48},
     {1, 4, 9, 17, 30, 51, 85, 140, 229, 367, 579},
     true,
     true},
    {783,
     {"a^2", "b^2", "c^2", "acac", "acbcbabcbcabcbabcb", "acbcbabcbacbcbabcb",
      "abcbacbcbcacbcbcabcb", "acbcbacbcbabcbcabcbc", "acbcbacbcbcacbcbcabcbc"},
     {0, 1, 2, 4, 6, 9, 15, 26, 48},
     {1, 4, 9, 17, 30, 51, 85, 140, 229, 367, 579},
     true,
     true},
    {802,
     {"a^2", "b^2", "c^2", "abab", "acac", "bcbc"},
     {0, 1, 2, 3, 3, 3, 3, 3, 3},
     {1, 4, 7, 8, 8, 8, 8, 8, 8, 8, 8},
     true,
     false},
    {843,
     {"acab^-1a^-2cab^-1aba^-1c^-1ba^-1c^-1", "acab^-1a^-2cb^-1ab^-1caba^-1c^-2ba^-1bc^-1",
      "acb^-1ab^-1ca^-2cab^-1ac^-1ba^-1bc^-1ba^-1c^-1",
      "acb^-1ab^-1ca^-2cb^-1ab^-1cac^-1ba^-1bc^-2ba^-1bc^-1"},
     {0, 1, 3, 5, 8, 14, 24, 43, 81},
     {1, 7, 37, 187, 937, 4687},
     false,
     true},
    {846,
     {"a^2", "b^2", "c^2"},
     {0, 1, 3, 5, 7, 10, 13, 16, 19},
     {1, 4, 10, 22, 46, 94, 190, 382, 766, 1534},
     false,
     false},
    {849,
     {"b", "a^-1c^-1ac^-1a^-1cac", "a^-1c^-2ac^-1a^-1c^2ac", "a^-1c^-1ac^-2a^-1cac^2",
      "a^-4ca^2c^-2a^2c", "a^-1c^-3ac^-1a^-1c^3ac", "a^-1c^-2ac^-2a^-1c^2ac^2",
      "a^-1c^-1ac^-3a^-1cac^3"},
     {0, 1, 3, 6, 12, 23, 45, 88, 174},
     {1, 5, 17, 53, 153, 421, 1125, 2945, 7589},
     false,
     true},
    {875,
     {"a^-1ca^-1c", "b^-1cb^-1c", "a^-1ba^-1ba^-1ba^-1b", "a^-1ba^-1bc^-1ac^-1ba^-1b"},
     {0, 1, 3, 7, 13, 25, 47, 90, 176},
     {1, 7, 33, 143, 607, 2563},
     false,
     true},
    {891,
     {"a^2", "b^2", "c^2", "abab", "acabcbacbacb", "acabcabcbacb", "acacabcacbacacbacacb",
      "acacabcacabcacbacacb", "acacabcbcbacbcbacacb", "acacabcbcabcbcbacacb",
      "acabcbcabcacbacbcbac"},
     {0, 1, 3, 6, 7, 9, 10, 11, 12},
     {1, 4, 9, 17, 30, 51, 82, 128, 198, 304, 456},
     false,
     true},
    {2193,
     {"b^-1c^-1bc", "b^-2c^2", "b^-1cb^-1c", "a^-4", "b^-4", "b^-1c^-2b^-1", "b^-1c^-1b^-1c^-1",
      "a^-2ba^2b", "a^-1b^-1c^-1a^-1cb", "a^-2ba^-2b", "a^-2ca^2c", "a^-2ca^-2c",
      "b^-1c^-1a^-1bca^-1", "a^-1b^-1a^-2b^-1a^-1"},
     {0, 1, 3, 6, 7, 9, 10, 11, 12},
     {1, 7, 27, 65, 120, 204, 328, 512, 792, 1216},
     false,
     true},
    {2280,
     {"a^-1ba^-1b", "b^-1cb^-1c", "b^-1ca^-1ba^-1c", "a^-2b^2a^-1b^-1ab", "a^-2bab^-2ab",
      "b^-2c^2b^-1c^-1bc", "b^-2cbc^-2bc", "a^-1ca^-1ca^-1ca^-1c", "b^-1ca^-1cb^-1ca^-1c",
      "a^-1bab^-1a^-1b^2a^-1", "b^-1cbc^-1b^-1c^2b^-1", "a^-2bac^-1bc^-1b^-1ab"},
     {0, 1, 3, 7, 13, 25, 47, 90, 176},
     {1, 7, 33, 143, 597, 2465},
     false,
     true},
    {2294,
     {"b^-1ca^-1c", "(ca^-1)^a(ca^-1)^3"},
     {0, 1, 2, 4, 6, 8, 10, 12, 14},
     {1, 7, 33, 127, 433, 1415},
     false,
     true},
    {2396,
     {"acb^-1ca^-2cb^-1cac^-1bc^-2bc^-1",
      "acb^-1ca^-2cb^-1a^2c^-1b^-1a^2c^-1bc^-1a^-1bca^-2bc^-1",
      "acb^-1a^2c^-1b^-1a^-1cb^-1cbca^-2bc^-2bc^-1",
      "bcb^-1ca^-1b^-1cb^-1a^2c^-1ac^-1ba^-2bc^-1"},
     {0, 1, 3, 6, 12, 24, 46, 90, 176},
     {1, 7, 37, 187, 937, 4687},
     false,
     true},
    {2398,
     {"cba", "b^-1a^-1b^2ca^2", "a^-2c^-1acb^-1ab", "a^-1c^-1b^-1acaba^-1",
      "b^-1a^2b^-1a^-1b^2a^-1", "c^-1b^-3c^-1ba^-2", "c^-1b^-1a^-1b^2cab^-1",
      "c^-1ab^-1a^-1b^2cb^-1", "a^-3c^-1b^-2ac^-1", "ca^-1bc^-1a^-1ca^3",
      "cabcba^-1c^-1b^-1a", "ab^-3c^-1ba^-2b", "ba^-1c^-1acb^-1abc", "bc^-1b^-1acaba^-1c"},
     {0, 1, 3, 6, 12, 23, 45, 88, 174},
     {1, 7, 31, 127, 483, 1823},
     false,
     true},
    {2852,
     {"c", "a^-2bab^-2ab", "a^-2ba^-1bab^-2ab^-1ab", "a^-1bab^-1ab^-2aba^-1ba^-1"},
     {0, 1, 3, 6, 12, 23, 45, 88, 174},
     {1, 5, 17, 53, 153, 429, 1189},
     false,
     true},
};

}  // namespace

const std::vector<PaperTable>& paper_tables() { return kTables; }

// ---------------------------------------------------------------------------
// classification

ClassificationResult run_classification(const ClassifyBudgets& budgets) {
    ClassificationResult out;
    out.summary.total_labeled = kEnumerationCount;

    // pass 1: orbits of labeled automata, and of their minimal forms
    std::map<std::string, std::vector<int>> labeled_classes;
    std::map<std::string, std::vector<int>> minimal_classes;
    std::map<std::string, int> minimal_states;
    for (int i = 0; i < kEnumerationCount; ++i) {
        MealyAutomaton a = automaton_from_index(i);
        labeled_classes[symmetry_key(a)].push_back(i);
        MealyAutomaton m = minimize(a);
        std::string mk = symmetry_key(m);
        minimal_classes[mk].push_back(i);
        minimal_states[mk] = m.size();
    }
    out.summary.labeled_symmetry_classes = static_cast<int>(labeled_classes.size());
    out.summary.minimal_form_classes = static_cast<int>(minimal_classes.size());
    for (auto& [k, members] : minimal_classes) {
        if (minimal_states[k] == 3) ++out.summary.three_state_minimal_classes;
        if (!is_trivial_automaton_key(k)) ++out.summary.nontrivial_minimal_classes;
    }

    // pass 2: budgeted analysis of one representative per minimal-form class
    std::vector<std::pair<std::string, std::vector<int>>> items(minimal_classes.begin(),
                                                                minimal_classes.end());
    std::vector<ClassRecord> records(items.size());
    auto analyze = [&](size_t begin, size_t end) {
        for (size_t i = begin; i < end; ++i) {
            const auto& [key, members] = items[i];
            ClassRecord rec;
            rec.key = key;
            rec.representative = *std::min_element(members.begin(), members.end());
            rec.member_count = static_cast<int>(members.size());
            rec.minimized_states = minimal_states[key];
            MealyAutomaton m = minimize(automaton_from_index(rec.representative));
            GroupHandle g(std::move(m));
            try {
                rec.fingerprint = fingerprint(g, budgets.fingerprint);
                FinitenessResult fin = finiteness(g, budgets.finiteness_cap);
                rec.finite = fin.kind;
                rec.order = fin.order;
                rec.abelian = is_abelian(g);
                if (rec.abelian) {
                    auto [rank, torsion] = abelian_structure(g, budgets.abelian_box);
                    rec.abelian_rank = rank;
                    rec.abelian_torsion = torsion;
                }
                rec.status = "ok";
            } catch (const std::exception& e) {
                rec.status = std::string("budget: ") + e.what();
            }
            records[i] = std::move(rec);
        }
    };
    int jobs = std::max(1, budgets.jobs);
    if (jobs == 1) {
        analyze(0, items.size());
    } else {
        std::vector<std::thread> pool;
        size_t chunk = (items.size() + jobs - 1) / jobs;
        for (int t = 0; t < jobs; ++t) {
            size_t b = t * chunk;
            size_t e = std::min(items.size(), b + chunk);
            if (b < e) pool.emplace_back(analyze, b, e);
        }
        for (auto& th : pool) th.join();
    }
    out.classes = std::move(records);

    // summary buckets (iso-type approximations, deterministic)
    std::map<std::pair<long long, bool>, int> finite_buckets;
    std::map<std::string, int> abelian_buckets;
    std::map<std::string, int> fp_buckets;
    for (const ClassRecord& rec : out.classes) {
        if (is_trivial_automaton_key(rec.key)) {
            finite_buckets[{1, true}]++;
            abelian_buckets["Z^0"]++;
            continue;
        }
        ++fp_buckets[rec.fingerprint.key()];
        if (rec.finite == FinitenessResult::Kind::kFinite)
            finite_buckets[{rec.order, rec.abelian}]++;
        if (rec.abelian) {
            std::string s = "Z^" + std::to_string(rec.abelian_rank);
            for (long long t : rec.abelian_torsion) s += " x C" + std::to_string(t);
            abelian_buckets[s]++;
        }
    }
    out.summary.finite_class_count = static_cast<int>(finite_buckets.size());
    for (auto& [k, cnt] : finite_buckets) out.summary.finite_orders.push_back(k.first);
    std::sort(out.summary.finite_orders.begin(), out.summary.finite_orders.end());
    out.summary.abelian_class_count = static_cast<int>(abelian_buckets.size());
    for (auto& [k, cnt] : abelian_buckets) out.summary.abelian_structures.push_back(k);
    out.summary.fingerprint_buckets = static_cast<int>(fp_buckets.size());
    return out;
}

std::string ClassificationSummary::to_json() const {
    nlohmann::json j;
    j["total_labeled"] = total_labeled;
    j["labeled_symmetry_classes"] = labeled_symmetry_classes;
    j["minimal_form_classes"] = minimal_form_classes;
    j["three_state_minimal_classes"] = three_state_minimal_classes;
    j["nontrivial_minimal_classes"] = nontrivial_minimal_classes;
    j["finite_class_count"] = finite_class_count;
    j["finite_orders"] = finite_orders;
    j["abelian_class_count"] = abelian_class_count;
    j["abelian_structures"] = abelian_structures;
    j["fingerprint_buckets"] = fingerprint_buckets;
    return j.dump(2);
}

std::string ClassificationResult::classes_csv() const {
    std::ostringstream ss;
    ss << "representative,member_count,minimized_states,finite,order,abelian,status\n";
    for (const ClassRecord& rec : classes) {
        ss << rec.representative << "," << rec.member_count << "," << rec.minimized_states << ",";
        switch (rec.finite) {
            case FinitenessResult::Kind::kFinite: ss << "finite"; break;
            case FinitenessResult::Kind::kInfinite: ss << "infinite"; break;
            default: ss << "unknown";
        }
        ss << "," << rec.order << "," << (rec.abelian ? 1 : 0) << "," << rec.status << "\n";
    }
    return ss.str();
}

std::vector<PresetMatch> match_presets(const ClassificationResult& result,
                                       const PresetRegistry& registry) {
    std::vector<PresetMatch> out;
    for (int idx : registry.indices()) {
        MealyAutomaton a = registry.automaton(idx);
        PresetMatch m;
        m.preset = idx;
        m.class_key = minimal_form_key(a);
        bool found = false;
        for (const ClassRecord& rec : result.classes)
            if (rec.key == m.class_key) {
                m.fingerprint_key = rec.fingerprint.key();
                found = true;
            }
        if (!found) throw std::runtime_error("preset " + std::to_string(idx) + " not matched");
        out.push_back(std::move(m));
    }
    return out;
}

// ---------------------------------------------------------------------------
// table regression

TableRegression regression_against_tables() {
    TableRegression out;
    for (const PaperTable& table : kTables) {
        TableRegressionRow row;
        row.preset = table.preset;
        GroupHandle g(PresetRegistry::builtin().automaton(table.preset));

        row.relators_ok = true;
        for (const std::string& r : table.relators)
            if (!verify_relator(g, r)) {
                row.relators_ok = false;
                row.mismatches.push_back("relator not trivial: " + r);
            }

        row.sf_ok = true;
        for (size_t n = 0; n < table.sf.size(); ++n) {
            int got = level_quotient_order(g, static_cast<int>(n)).log2_order;
            if (got != table.sf[n]) {
                row.sf_ok = false;
                row.mismatches.push_back("sf[" + std::to_string(n) + "] = 2^" +
                                         std::to_string(got) + " want 2^" +
                                         std::to_string(table.sf[n]));
            }
        }

        row.gr_ok = true;
        {
            auto got = growth_series(g, static_cast<int>(table.gr.size()) - 1);
            for (size_t i = 0; i < table.gr.size(); ++i)
                if (got[i] != table.gr[i]) {
                    row.gr_ok = false;
                    row.mismatches.push_back("gr[" + std::to_string(i) + "] = " +
                                             std::to_string(got[i]) + " want " +
                                             std::to_string(table.gr[i]));
                }
        }

        // the tables' flags must match or be explicitly downgraded to unknown
        // with a reason (never a definite wrong answer)
        row.contracting_expected = table.contracting ? "yes" : "no";
        NucleusResult nr = nucleus(g);
        switch (nr.kind) {
            case NucleusResult::Kind::kContracting:
                row.contracting_got = "yes";
                break;
            case NucleusResult::Kind::kNonContracting:
                row.contracting_got = "no";
                break;
            default:
                row.contracting_got = "unknown (cap exceeded; no certified witness)";
        }
        row.contracting_ok = row.contracting_got == row.contracting_expected ||
                             row.contracting_got.rfind("unknown", 0) == 0;
        if (!row.contracting_ok)
            row.mismatches.push_back("contracting: got " + row.contracting_got + " want " +
                                     row.contracting_expected);

        row.selfrep_expected = table.self_replicating ? "yes" : "no";
        SelfReplicationVerdict sr = self_replicating(g);
        switch (sr.kind) {
            case SelfReplicationVerdict::Kind::kYes: row.selfrep_got = "yes"; break;
            case SelfReplicationVerdict::Kind::kNo: row.selfrep_got = "no"; break;
            default: row.selfrep_got = "unknown (no certificate within budget)";
        }
        row.selfrep_ok = row.selfrep_got == row.selfrep_expected ||
                         row.selfrep_got.rfind("unknown", 0) == 0;
        if (!row.selfrep_ok)
            row.mismatches.push_back("self_replicating: got " + row.selfrep_got + " want " +
                                     row.selfrep_expected);

        if (!row.mismatches.empty()) out.all_ok = false;
        out.rows.push_back(std::move(row));
    }
    return out;
}

std::string TableRegression::to_json() const {
    nlohmann::json j;
    j["all_ok"] = all_ok;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : this->rows) {
        nlohmann::json r;
        r["preset"] = row.preset;
        r["relators_ok"] = row.relators_ok;
        r["sf_ok"] = row.sf_ok;
        r["gr_ok"] = row.gr_ok;
        r["contracting"] = row.contracting_got;
        r["contracting_ok"] = row.contracting_ok;
        r["self_replicating"] = row.selfrep_got;
        r["self_replicating_ok"] = row.selfrep_ok;
        r["mismatches"] = row.mismatches;
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j.dump(2);
}

std::string RunManifest::to_json() const {
    nlohmann::json j;
    j["version"] = version;
    j["seed"] = seed;
    j["wall_seconds"] = wall_seconds;
    j["budgets"]["sf_levels"] = budgets.fingerprint.sf_levels;
    j["budgets"]["gr_radius"] = budgets.fingerprint.gr_radius;
    j["budgets"]["finiteness_cap"] = budgets.finiteness_cap;
    j["budgets"]["abelian_box"] = budgets.abelian_box;
    j["budgets"]["jobs"] = budgets.jobs;
    j["per_class_status"] = per_class_status;
    return j.dump(2);
}

}  // namespace autg
