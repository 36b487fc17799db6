// Self-referential wreath recursions: automorphisms defined by systems
//   X_i = pi_i(w_{i,0}, ..., w_{i,d-1})
// where the w's are words over a base automaton's states, their inverses and
// the unknowns. Supports exact portrait expansion and bounded conjugacy checks.
#pragma once

#include <string>
#include <vector>

#include "autg/element.hpp"

namespace autg {

// Word over base states and unknowns: letters q+1 / -(q+1) refer to base
// state q for q < base_size, and to unknown (q - base_size) otherwise.
using MixedWord = std::vector<int32_t>;

class RecursiveAutomorphism {
public:
    RecursiveAutomorphism(const MealyAutomaton& base, std::vector<std::string> unknown_names);

    // equation text like "s (m, c^-1 m)": sections separated by commas inside
    // the final parens; names resolve against base states first, then unknowns
    void define(const std::string& unknown, const std::string& equation);
    bool complete() const;  // every unknown defined exactly once

    int unknowns() const { return static_cast<int>(names_.size()); }
    const MealyAutomaton& base() const { return base_; }

    MixedWord parse_mixed(const std::string& text) const;

    Perm word_perm(const MixedWord& w) const;
    MixedWord word_section(const MixedWord& w, int x) const;

    // portrait of all root permutations of the word down to `depth`, BFS order
    std::vector<Perm> portrait(const MixedWord& w, int depth) const;
    std::vector<Perm> portrait_of_unknown(const std::string& unknown, int depth) const;

private:
    MealyAutomaton base_;
    std::vector<std::string> names_;
    std::vector<Perm> perm_;            // per unknown
    std::vector<std::vector<MixedWord>> sections_;  // per unknown, per letter
    std::vector<bool> defined_;
};

// Bounded verification of a conjugacy claim: for each (generator, image) pair,
// the portrait of mu^-1 * s * mu (mu defined by `conjugator` over its system)
// agrees to `depth` with the image word evaluated in the `target` system.
// Evidence to the stated depth, not a proof.
bool conjugacy_check(const RecursiveAutomorphism& conjugator, const std::string& mu_name,
                     const RecursiveAutomorphism& target,
                     const std::vector<std::pair<std::string, std::string>>& generator_images,
                     int depth);

}  // namespace autg
