// Whole-group analysis: growth series, level-quotient orders, relator
// enumeration, contraction and self-replication verdicts, finiteness,
// abelian structure, level transitivity and fingerprints.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "autg/bsgs.hpp"
#include "autg/element.hpp"
#include "autg/order.hpp"

namespace autg {

// Automaton plus symmetrized generating set (distinct nontrivial canonical
// elements, closed under inverse) and analysis caches.
class GroupHandle {
public:
    explicit GroupHandle(MealyAutomaton a);

    const MealyAutomaton& automaton() const { return aut_; }
    int d() const { return aut_.d(); }

    // distinct nontrivial generators (one per element value) and S u S^-1
    const std::vector<Element>& generators() const { return gens_; }
    const std::vector<Element>& symmetric_generators() const { return sym_gens_; }
    bool trivial_group_known() const { return gens_.empty(); }

    // level-n permutation of each automaton state (cached)
    const std::vector<LevelPerm>& state_level_perms(int n) const;
    LevelPerm word_level_perm(const GroupWord& w, int n) const;

    TrivialCache& trivial_cache() const { return cache_; }

private:
    MealyAutomaton aut_;
    std::vector<Element> gens_;
    std::vector<Element> sym_gens_;
    mutable std::map<int, std::vector<LevelPerm>> level_perms_;
    mutable TrivialCache cache_;
};

// --- growth -------------------------------------------------------------------

// ball sizes gamma(0..radius) over S u S^-1
std::vector<long long> growth_series(const GroupHandle& g, int radius,
                                     size_t element_cap = 2000000);

// --- level quotients ------------------------------------------------------------

struct LevelQuotient {
    int level = 0;
    int log2_order = 0;
    std::vector<uint32_t> base;
    int strong_generator_count = 0;
    std::string order_decimal() const { return pow2_decimal(log2_order); }
};

LevelQuotient level_quotient_order(const GroupHandle& g, int n);

// brute-force closure order (oracle for small n)
long long level_quotient_order_exhaustive(const GroupHandle& g, int n, size_t cap = 5000000);

// --- relators -------------------------------------------------------------------

// All freely and cyclically reduced trivial words of length <= max_len,
// deduplicated modulo rotation and inversion, filtered by removing any
// relator cyclically containing a shorter found relator.
std::vector<GroupWord> find_relators(const GroupHandle& g, int max_len);

bool verify_relator(const GroupHandle& g, const GroupWord& w);
bool verify_relator(const GroupHandle& g, const std::string& text);

// --- nucleus --------------------------------------------------------------------

struct NucleusCaps {
    size_t max_size = 512;
    int witness_word_len = 5;
    int witness_depth = 8;
    OrderBudget order_budget;
};

struct NucleusResult {
    enum class Kind { kContracting, kCapExceeded, kNonContracting };
    Kind kind = Kind::kCapExceeded;
    std::vector<Element> nucleus;  // kContracting
    // kNonContracting: g fixes v, section(g, v) = g, order(g) infinite
    Element witness_element;
    std::string witness_vertex;
    std::optional<InfiniteCertificate> witness_order;
    std::string witness_word;
    std::string note;
    std::string to_string() const;
};

NucleusResult nucleus(const GroupHandle& g, const NucleusCaps& caps = {});

// checks the defining property of a contracting set: section-closed, contains
// the identity, and every pairwise product's deep sections fall into it
bool verify_nucleus_set(const GroupHandle& g, const std::vector<Element>& nuc);

// --- self-replication -------------------------------------------------------------

struct SelfReplicationVerdict {
    enum class Kind { kYes, kNo, kUnknown };
    Kind kind = Kind::kUnknown;
    // kYes: per generator and per letter, a product over St(1)-section elements
    std::vector<std::string> witness;
    // kNo: the level and letter where the section subgroup falls short
    int no_level = 0;
    int no_letter = 0;
    int section_log2 = 0;
    int group_log2 = 0;
    std::string to_string() const;
};

struct SelfRepBudget {
    int yes_word_len = 12;
    size_t yes_ball_cap = 60000;
    int no_max_level = 6;
};

SelfReplicationVerdict self_replicating(const GroupHandle& g, const SelfRepBudget& budget = {});

// --- finiteness, abelianness, transitivity -------------------------------------------

struct FinitenessResult {
    enum class Kind { kFinite, kInfinite, kUnknown };
    Kind kind = Kind::kUnknown;
    long long order = 0;                    // kFinite
    std::vector<Element> elements;          // kFinite (the whole group)
    Element witness;                        // kInfinite
    std::optional<InfiniteCertificate> certificate;
    std::string witness_word;
    std::string to_string() const;
};

FinitenessResult finiteness(const GroupHandle& g, size_t cap = 100000);

bool is_abelian(const GroupHandle& g);

// invariant factors of the abelianization lattice found within the exponent
// box; (free_rank, torsion divisors). Exact for the finite/abelian groups in
// this class; a bounded relation search in general.
std::pair<int, std::vector<long long>> abelian_structure(const GroupHandle& g, int box = 4);

bool is_level_transitive(const GroupHandle& g, int n);

// --- fingerprint -----------------------------------------------------------------

struct Fingerprint {
    std::vector<int> sf;                 // log2 level-quotient orders
    std::vector<long long> gr;           // growth prefix
    bool abelian = false;
    std::vector<std::string> generator_orders;
    std::vector<bool> level_transitive;
    std::string key() const;
};

struct FingerprintBudget {
    int sf_levels = 6;
    int gr_radius = 4;
    int transitive_levels = 5;
    OrderBudget order_budget{.max_pow2_log = 8, .max_power = 4, .max_depth = 4, .max_nodes = 16};
};

Fingerprint fingerprint(const GroupHandle& g, const FingerprintBudget& budget = {});

// --- full JSON report ---------------------------------------------------------------

struct ReportBudget {
    int sf_levels = 8;
    int gr_radius = 6;
    int relator_max_len = 0;  // 0 = skip enumeration
    NucleusCaps nucleus_caps;
    SelfRepBudget selfrep;
    size_t finiteness_cap = 100000;
    FingerprintBudget fingerprint;
};

std::string group_report_json(const GroupHandle& g, const ReportBudget& budget);

}  // namespace autg
