// Tree automorphisms as canonical pointed minimized automata, plus the word
// layer: free words over automaton states, the wreath-product arithmetic,
// a decidable word problem and exact action on eventually periodic rays.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "autg/automaton.hpp"

namespace autg {

// Freely reduced word over the states of a fixed automaton.
// Letters are q+1 for state q and -(q+1) for its inverse.
struct GroupWord {
    std::vector<int32_t> letters;

    static GroupWord generator(int q) { return GroupWord{{q + 1}}; }
    bool empty() const { return letters.empty(); }
    size_t size() const { return letters.size(); }
    GroupWord inverse() const;
    GroupWord operator*(const GroupWord& o) const;  // concatenation + free reduction
};

GroupWord free_reduce(const GroupWord& w);

// Parses the word grammar: juxtaposition, integer powers `a^3`, inverses
// `a^-1` (also unicode superscripts), conjugation `w^u` meaning u w u^-1,
// parentheses. Single-character state names only.
GroupWord parse_word(const MealyAutomaton& a, const std::string& text);
std::string word_to_string(const MealyAutomaton& a, const GroupWord& w);

// --- the canonical element --------------------------------------------------

// Value type for one tree automorphism: a pointed automaton, minimized, with
// states BFS-ordered from the point (letters ascending). Two Elements are
// equal as values iff they are equal as automorphisms.
class Element {
public:
    Element() = default;  // identity on the binary tree
    static Element identity(int d);

    // the automorphism of automaton state q
    static Element of_state(const MealyAutomaton& a, int q);
    // evaluate a word (leftmost letter acts last: word "fg" maps w to f(g(w)))
    static Element of_word(const MealyAutomaton& a, const GroupWord& w,
                           size_t closure_cap = 10000);
    // assemble from a root permutation and d sections
    static Element wreath(const Perm& root, const std::vector<Element>& sections);

    int d() const { return d_; }
    int size() const { return static_cast<int>(perm_.size()); }  // state count
    bool is_identity() const { return size() == 1 && perm_[0].is_identity(); }

    const Perm& root_perm() const { return perm_[0]; }
    const Perm& perm_at(int s) const { return perm_[s]; }
    int child(int s, int x) const { return child_[static_cast<size_t>(s) * d_ + x]; }

    Element operator*(const Element& g) const;  // (f*g)(w) = f(g(w))
    Element inverse() const;
    Element power(long long n) const;

    // product with a cap on the pair-closure size; nullopt when exceeded
    static std::optional<Element> try_multiply(const Element& f, const Element& g,
                                               size_t state_cap);

    // section at a vertex (string over '0'..'d-1'); no minimization needed,
    // sub-automata of a minimized automaton stay minimized
    Element section(const std::string& vertex) const;
    Element section_at_state(int s) const;

    bool fixes(const std::string& vertex) const;
    std::string act(const std::string& word) const;

    bool operator==(const Element& o) const { return d_ == o.d_ && key_ == o.key_; }
    bool operator!=(const Element& o) const { return !(*this == o); }
    bool operator<(const Element& o) const { return key_ < o.key_; }

    const std::string& key() const { return key_; }
    size_t hash() const { return hash_; }

    // true if root perm is trivial and all sections are (i.e. == identity)
    bool is_trivial() const { return is_identity(); }

    // portrait of root permutations down to the given depth, BFS order
    std::vector<Perm> portrait(int depth) const;

private:
    friend struct ElementBuilder;
    void finish();  // compute key_/hash_ from perm_/child_

    uint8_t d_ = 2;
    std::vector<Perm> perm_ = {Perm(2)};
    std::vector<uint32_t> child_ = {0, 0};
    std::string key_ = std::string("\x02\x00\x01\x00\x00", 5);
    size_t hash_ = 0;
};

struct ElementHash {
    size_t operator()(const Element& e) const { return e.hash(); }
};

// --- word-level operations ---------------------------------------------------

// image of the letter x under the word (and of finite words)
int act_letter(const MealyAutomaton& a, const GroupWord& w, int x);
std::string act_word(const MealyAutomaton& a, const GroupWord& w, const std::string& input);

// section of a word at one letter / at a vertex; result freely reduced
GroupWord word_section(const MealyAutomaton& a, const GroupWord& w, int x);
GroupWord word_section_at(const MealyAutomaton& a, const GroupWord& w, const std::string& v);

// Decides triviality by closing the word under sections (memoized recursion;
// sections of a length-n word have length <= n, so the closure is finite).
// The cache may be shared across calls for one automaton.
using TrivialCache = std::unordered_map<std::string, bool>;
bool is_trivial(const MealyAutomaton& a, const GroupWord& w, TrivialCache* cache = nullptr);
bool equals(const MealyAutomaton& a, const GroupWord& u, const GroupWord& v,
            TrivialCache* cache = nullptr);

// --- rays ---------------------------------------------------------------------

// u . v^inf on the boundary; normalized to the shortest head and a primitive period.
struct Ray {
    std::string head;
    std::string period;  // nonempty

    static Ray parse(const std::string& text);  // "head:period"
    std::string to_string() const { return head + ":" + period; }
    std::string prefix(size_t len) const;
    void normalize();
    bool operator==(const Ray& o) const { return head == o.head && period == o.period; }
};

Ray act_ray(const Element& g, const Ray& r);

}  // namespace autg

template <>
struct std::hash<autg::Element> {
    size_t operator()(const autg::Element& e) const { return e.hash(); }
};
