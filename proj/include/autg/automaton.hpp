// Finite invertible Mealy automata: parsing, validation, transforms
// (inverse, dual, product-free minimization, canonical forms), enumeration,
// symmetry reduction and Moore-diagram export.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "autg/perm.hpp"

namespace autg {

struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(std::string msg, int l, int c)
        : std::runtime_error(std::move(msg)), line(l), column(c) {}
};

// A = (Q, X, tau, rho). States carry names; tau and rho are total tables.
class MealyAutomaton {
public:
    MealyAutomaton() = default;
    MealyAutomaton(std::vector<std::string> names, int d,
                   std::vector<std::vector<int>> tau, std::vector<Perm> rho);

    int size() const { return static_cast<int>(names_.size()); }
    int d() const { return d_; }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(int q) const { return names_[q]; }
    std::optional<int> state_index(const std::string& name) const;

    int tau(int q, int x) const { return tau_[q][x]; }
    const Perm& rho(int q) const { return rho_[q]; }

    bool is_invertible() const;

    // wreath recursion text, one line per state (round-trips through parse_recursion)
    std::string to_recursion_text() const;

    bool operator==(const MealyAutomaton& o) const {
        return d_ == o.d_ && tau_ == o.tau_ && rho_raw_ == o.rho_raw_;
    }

private:
    std::vector<std::string> names_;
    int d_ = 2;
    std::vector<std::vector<int>> tau_;
    std::vector<Perm> rho_;
    std::vector<std::vector<uint8_t>> rho_raw_;  // for cheap equality
    friend MealyAutomaton inverse_automaton(const MealyAutomaton&);
};

// Parses the wreath-recursion grammar:
//   name = [perm] (s0, s1, ..., s_{d-1})
// perm is `s` (the d=2 transposition) or cycle words like (0 1 2); identity omitted.
// Throws ParseError with line/column on syntax errors, undeclared or duplicate
// states, and non-permutation output rows.
MealyAutomaton parse_recursion(const std::string& text);

bool validate_invertible(const MealyAutomaton& a);

// State-wise inverse: q^-1 has output rho_q^-1 and sections
// tau(q^-1, x) = (tau(q, rho_q^-1(x)))^-1.
MealyAutomaton inverse_automaton(const MealyAutomaton& a);

struct DualResult {
    MealyAutomaton dual;
    bool dual_invertible = false;
    bool bireversible = false;
};

// Swap states and letters: dual has |X| states over alphabet Q with
// rho'(x, q) = tau(q, x) viewed as output, tau'(x, q) = rho(q, x).
// Requires |Q| <= kMaxAlphabet so the dual's alphabet fits.
DualResult dual_automaton(const MealyAutomaton& a);

// Moore-style partition refinement from the initial partition "equal output rows".
MealyAutomaton minimize(const MealyAutomaton& a);

// Number of states of minimize(a) without building it.
int minimized_state_count(const MealyAutomaton& a);

// Unpointed canonical encoding: minimum byte encoding over all state
// relabelings of the raw automaton. Pointed encodings live in Element.
std::string canonical_form_unpointed(const MealyAutomaton& a);

// --- enumeration of all 3-state binary invertible automata ---------------

// Our own injective index: mixed-radix over (rho activity bits, tau rows).
// Index 0 is the all-trivial automaton. Total count is 2^3 * 3^6 = 5832.
MealyAutomaton automaton_from_index(int index);
int index_of_automaton(const MealyAutomaton& a);  // inverse of the above
inline constexpr int kEnumerationCount = 5832;

// --- symmetry reduction ----------------------------------------------------

MealyAutomaton apply_state_perm(const MealyAutomaton& a, const std::vector<int>& pi);
MealyAutomaton apply_letter_perm(const MealyAutomaton& a, const Perm& lambda);

// Key of the orbit under state perms x letter perms x inversion.
std::string symmetry_key(const MealyAutomaton& a);

// symmetry_key(minimize(a)) with the state count prepended; the unit of the
// "together with minimization" bookkeeping.
std::string minimal_form_key(const MealyAutomaton& a);

bool is_trivial_automaton_key(const std::string& minimal_key);

// Moore diagram in DOT; deterministic node/edge order.
std::string moore_dot(const MealyAutomaton& a);

// --- preset registry ---------------------------------------------------------

// Paper-facing registry: index -> wreath recursion exactly as printed.
class PresetRegistry {
public:
    // the built-in table (741, 752, ..., 2852)
    static const PresetRegistry& builtin();
    // text format: index<TAB>line;line;...
    static PresetRegistry from_text(const std::string& text);
    static PresetRegistry from_file(const std::string& path);

    std::string to_text() const;
    bool has(int index) const { return entries_.count(index) != 0; }
    const std::string& recursion_text(int index) const;
    MealyAutomaton automaton(int index) const;
    std::vector<int> indices() const;

private:
    std::map<int, std::string> entries_;
};

}  // namespace autg
