// Element order: exact finite orders (orders in Aut(X*) for d=2 are powers
// of two), machine-checkable infinite-order certificates, spherical
// transitivity and finitary depth.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "autg/element.hpp"

namespace autg {

// Decides whether g acts transitively on every level of the binary tree.
// A single element is transitive on level n+1 iff it is transitive on level n
// and its first-return map there is active; unwinding the induction, g is
// spherically transitive iff the number of active vertices in its portrait is
// odd at every level. That parity sequence satisfies a linear recurrence over
// F2 on the state-count vector of g's automaton, so cycle detection decides.
bool is_spherically_transitive(const Element& g);

// Lowest level at which all sections are trivial; nullopt when g is not
// finitary (some nontrivial state lies on a cycle).
std::optional<int> finitary_depth(const Element& g);

struct OrderBudget {
    int max_pow2_log = 10;   // finite search tests g^(2^j), j <= this
    int max_power = 10;      // certificate search uses g^k, k <= this
    int max_depth = 7;       // fixed-vertex depth
    int max_nodes = 256;     // BFS size over reduction elements
    size_t element_size_cap = 3000;  // abort powers whose automata outgrow this
};

struct InfiniteCertificate {
    enum class Kind {
        kSphericallyTransitive,  // the carried element is spherically transitive
        kPowerSelfSection,       // g^k fixes v, section(g^k, v) = g^{+-1}, k even
        kRayEscape,              // the orbit of a boundary ray provably grows
    };
    Kind kind;
    // reduction path from the original element down to the certified one:
    // each step (k, v) means "previous element's k-th power fixes v; take the
    // section there". Soundness: if the element had finite order m, the
    // section would satisfy h^m = 1.
    std::vector<std::pair<int, std::string>> path;
    Element witness_element;
    int power = 0;           // kPowerSelfSection: the (even) exponent k
    std::string vertex;      // kPowerSelfSection: the fixed vertex
    bool parity_root_active = false;      // descriptive parity witnesses
    std::string parity_active_section;    // vertex with root-active section, if any
    Ray escape_ray;          // kRayEscape: the ray whose orbit grows
    std::string describe() const;
};

struct OrderVerdict {
    enum class Kind { kFinite, kInfinite, kUnknown };
    Kind kind = Kind::kUnknown;
    long long order = 0;                          // kFinite (a power of two)
    std::optional<InfiniteCertificate> certificate;  // kInfinite
    std::string note;                             // kUnknown: budget summary

    bool finite() const { return kind == Kind::kFinite; }
    bool infinite() const { return kind == Kind::kInfinite; }
    std::string to_string() const;
};

OrderVerdict order_of(const Element& g, const OrderBudget& budget = {});

// Verifies a certificate from scratch (used by tests and witness validation).
bool check_infinite_certificate(const Element& g, const InfiniteCertificate& cert);

// The head-growth ray certificate on its own: true if the <g>-orbit of some
// ray u . letter^inf is provably infinite (letter in {0,1}).
std::optional<Ray> ray_escape_certificate(const Element& g, int tail_letter);

}  // namespace autg
