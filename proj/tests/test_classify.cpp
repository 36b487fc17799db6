// classification-pipeline units kept light; the full run lives in the
// acceptance suite.
#include "doctest.h"

#include "autg/classify.hpp"

using namespace autg;

TEST_CASE("enumeration counts and determinism") {
    CHECK(kEnumerationCount == 5832);
    // spot-check the round trip on a few indices
    for (int i : {0, 1, 728, 729, 5831}) {
        MealyAutomaton a = automaton_from_index(i);
        CHECK(index_of_automaton(a) == i);
    }
}

TEST_CASE("paper tables are loaded for all 16 entries") {
    CHECK(paper_tables().size() == 16);  // 775 and 783 are separate presets of one entry
    for (const PaperTable& t : paper_tables()) {
        CHECK(t.sf.size() == 9);
        CHECK(!t.gr.empty());
        CHECK(PresetRegistry::builtin().has(t.preset));
    }
}

TEST_CASE("minimal form keys collapse symmetric variants") {
    MealyAutomaton a775 = PresetRegistry::builtin().automaton(775);
    MealyAutomaton a793 = PresetRegistry::builtin().automaton(793);
    // 793 is 775 with the letters swapped
    CHECK(minimal_form_key(a775) == minimal_form_key(a793));
    // 783 is conjugate in Aut(X*) but not symmetry-equivalent
    MealyAutomaton a783 = PresetRegistry::builtin().automaton(783);
    CHECK(minimal_form_key(a775) != minimal_form_key(a783));
}

TEST_CASE("trivial automaton key detection") {
    MealyAutomaton e = parse_recursion("e = (e, e)");
    CHECK(is_trivial_automaton_key(minimal_form_key(e)));
    CHECK(is_trivial_automaton_key(minimal_form_key(automaton_from_index(0))));
    CHECK(!is_trivial_automaton_key(minimal_form_key(PresetRegistry::builtin().automaton(741))));
}
