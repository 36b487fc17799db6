// Classification of all 3-state binary invertible automata: enumeration,
// symmetry reduction, budgeted per-class analysis and the regression harness
// against the published tables.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "autg/group.hpp"

namespace autg {

struct ClassRecord {
    std::string key;               // symmetry key of the minimized automaton
    int representative = 0;        // smallest enumeration index in the class
    int member_count = 0;          // labeled automata in the class
    int minimized_states = 0;
    Fingerprint fingerprint;
    FinitenessResult::Kind finite = FinitenessResult::Kind::kUnknown;
    long long order = 0;           // when finite
    bool abelian = false;
    int abelian_rank = -1;                    // when abelian
    std::vector<long long> abelian_torsion;   // when abelian
    std::string status;            // per-class budget notes
};

struct ClassifyBudgets {
    FingerprintBudget fingerprint{.sf_levels = 5, .gr_radius = 4, .transitive_levels = 4};
    size_t finiteness_cap = 1000;
    int abelian_box = 4;
    int jobs = 1;
};

struct ClassificationSummary {
    int total_labeled = 0;
    int labeled_symmetry_classes = 0;   // classes of labeled automata
    int minimal_form_classes = 0;       // distinct minimized automata up to symmetry
    int three_state_minimal_classes = 0;
    int nontrivial_minimal_classes = 0;  // the documented 194 convention
    int finite_class_count = 0;         // iso-type buckets among finite groups
    std::vector<long long> finite_orders;  // order multiset over those buckets
    int abelian_class_count = 0;        // iso-type buckets among abelian groups
    std::vector<std::string> abelian_structures;
    int fingerprint_buckets = 0;        // lower bound for distinct groups
    std::string to_json() const;
};

struct ClassificationResult {
    std::vector<ClassRecord> classes;  // sorted by key
    ClassificationSummary summary;
    std::string classes_csv() const;
};

ClassificationResult run_classification(const ClassifyBudgets& budgets = {});

// Locates each preset automaton's class; reports which presets share classes
// and which share fingerprints.
struct PresetMatch {
    int preset = 0;
    std::string class_key;
    std::string fingerprint_key;
};
std::vector<PresetMatch> match_presets(const ClassificationResult& result,
                                       const PresetRegistry& registry);

// Reproduces the published per-automaton tables (relators, SF, Gr, flags).
struct TableRegressionRow {
    int preset = 0;
    bool relators_ok = false;
    bool sf_ok = false;
    bool gr_ok = false;
    std::string contracting_expected;
    std::string contracting_got;
    bool contracting_ok = false;
    std::string selfrep_expected;
    std::string selfrep_got;
    bool selfrep_ok = false;
    std::vector<std::string> mismatches;
};

struct TableRegression {
    std::vector<TableRegressionRow> rows;
    bool all_ok = true;
    std::string to_json() const;
};

TableRegression regression_against_tables();

// The published table data (verbatim §5 rows).
struct PaperTable {
    int preset;
    std::vector<std::string> relators;
    std::vector<int> sf;          // log2 orders, n = 0..8
    std::vector<long long> gr;
    bool contracting;
    bool self_replicating;
};
const std::vector<PaperTable>& paper_tables();

struct RunManifest {
    ClassifyBudgets budgets;
    uint64_t seed = 0;
    std::string version = "1";
    double wall_seconds = 0;
    std::map<std::string, std::string> per_class_status;
    std::string to_json() const;
};

}  // namespace autg
