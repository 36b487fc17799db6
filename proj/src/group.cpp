#include "autg/group.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "json.hpp"

namespace autg {

GroupHandle::GroupHandle(MealyAutomaton a) : aut_(std::move(a)) {
    if (!aut_.is_invertible()) throw std::invalid_argument("group needs an invertible automaton");
    std::unordered_set<Element, ElementHash> seen;
    for (int q = 0; q < aut_.size(); ++q) {
        Element e = Element::of_state(aut_, q);
        if (e.is_identity()) continue;  // trivial generators dropped
        if (seen.insert(e).second) gens_.push_back(e);
    }
    for (const Element& e : gens_) {
        Element inv = e.inverse();
        sym_gens_.push_back(e);
        if (seen.insert(inv).second) sym_gens_.push_back(inv);
    }
}

const std::vector<LevelPerm>& GroupHandle::state_level_perms(int n) const {
    auto it = level_perms_.find(n);
    if (it != level_perms_.end()) return it->second;
    const int nstates = aut_.size();
    std::vector<LevelPerm> cur(nstates, LevelPerm{0});
    for (int lev = 1; lev <= n; ++lev) {
        uint32_t half = 1u << (lev - 1);
        std::vector<LevelPerm> next(nstates, LevelPerm(half * 2));
        for (int q = 0; q < nstates; ++q) {
            for (int x = 0; x < 2; ++x) {
                const LevelPerm& sub = cur[aut_.tau(q, x)];
                uint32_t y = static_cast<uint32_t>(aut_.rho(q)(x));
                for (uint32_t r = 0; r < half; ++r)
                    next[q][x * half + r] = y * half + sub[r];
            }
        }
        cur = std::move(next);
    }
    return level_perms_.emplace(n, std::move(cur)).first->second;
}

LevelPerm GroupHandle::word_level_perm(const GroupWord& w, int n) const {
    const auto& sp = state_level_perms(n);
    LevelPerm out = perm_identity(1u << n);
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
        int q = std::abs(*it) - 1;
        out = *it > 0 ? perm_compose(sp[q], out) : perm_compose(perm_inverse(sp[q]), out);
    }
    return out;
}

// ---------------------------------------------------------------------------
// growth

std::vector<long long> growth_series(const GroupHandle& g, int radius, size_t element_cap) {
    std::vector<long long> out = {1};
    std::unordered_set<Element, ElementHash> ball;
    ball.insert(Element::identity(g.d()));
    std::vector<Element> frontier = {Element::identity(g.d())};
    for (int r = 1; r <= radius; ++r) {
        std::vector<Element> next;
        for (const Element& u : frontier) {
            for (const Element& s : g.symmetric_generators()) {
                Element v = u * s;
                if (ball.insert(v).second) {
                    next.push_back(std::move(v));
                    if (ball.size() > element_cap)
                        throw std::runtime_error("growth: element cap exceeded");
                }
            }
        }
        out.push_back(static_cast<long long>(ball.size()));
        frontier = std::move(next);
    }
    return out;
}

// ---------------------------------------------------------------------------
// level quotients

LevelQuotient level_quotient_order(const GroupHandle& g, int n) {
    if (n < 0) throw std::invalid_argument("negative level");
    LevelQuotient out;
    out.level = n;
    if (n == 0 || g.trivial_group_known()) return out;
    StabilizerChain chain(1u << n);
    std::vector<LevelPerm> gens;
    for (const Element& e : g.generators()) {
        // element-level perms: walk the element automaton down n levels
        LevelPerm p(1u << n);
        for (uint32_t v = 0; v < (1u << n); ++v) {
            int s = 0;
            uint32_t img = 0;
            for (int i = n - 1; i >= 0; --i) {
                int x = (v >> i) & 1;
                img = (img << 1) | static_cast<uint32_t>(e.perm_at(s)(x));
                s = e.child(s, x);
            }
            p[v] = img;
        }
        gens.push_back(std::move(p));
    }
    chain.extend(gens);
    out.log2_order = chain.log2_order();
    out.base = chain.base();
    out.strong_generator_count = static_cast<int>(chain.strong_generators().size());
    return out;
}

long long level_quotient_order_exhaustive(const GroupHandle& g, int n, size_t cap) {
    if (n == 0 || g.trivial_group_known()) return 1;
    const uint32_t N = 1u << n;
    std::vector<LevelPerm> gens;
    const auto& sp = g.state_level_perms(n);
    for (int q = 0; q < g.automaton().size(); ++q) {
        gens.push_back(sp[q]);
        gens.push_back(perm_inverse(sp[q]));
    }
    std::set<LevelPerm> seen;
    std::deque<LevelPerm> todo;
    seen.insert(perm_identity(N));
    todo.push_back(perm_identity(N));
    while (!todo.empty()) {
        LevelPerm p = std::move(todo.front());
        todo.pop_front();
        for (const LevelPerm& s : gens) {
            LevelPerm q = perm_compose(p, s);
            if (seen.insert(q).second) {
                todo.push_back(q);
                if (seen.size() > cap) throw std::runtime_error("closure cap exceeded");
            }
        }
    }
    return static_cast<long long>(seen.size());
}

// ---------------------------------------------------------------------------
// relators

namespace {

std::vector<int32_t> cyclic_min_form(const std::vector<int32_t>& w) {
    // minimum over rotations of w and of its inverse
    auto rotations_min = [](std::vector<int32_t> v) {
        std::vector<int32_t> best = v;
        for (size_t r = 1; r < v.size(); ++r) {
            std::rotate(v.begin(), v.begin() + 1, v.end());
            if (v < best) best = v;
        }
        return best;
    };
    if (w.empty()) return w;
    std::vector<int32_t> a = rotations_min(w);
    std::vector<int32_t> iw(w.size());
    for (size_t i = 0; i < w.size(); ++i) iw[i] = -w[w.size() - 1 - i];
    std::vector<int32_t> b = rotations_min(iw);
    return std::min(a, b);
}

bool cyclically_reduced(const std::vector<int32_t>& w) {
    if (w.empty()) return true;
    for (size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] == -w[i + 1]) return false;
    return w.front() != -w.back();
}

bool contains_cyclic_subword(const std::vector<int32_t>& w, const std::vector<int32_t>& sub) {
    if (sub.size() > w.size()) return false;
    std::vector<int32_t> ww = w;
    ww.insert(ww.end(), w.begin(), w.end());
    auto it = std::search(ww.begin(), ww.end(), sub.begin(), sub.end());
    return it != ww.end() && static_cast<size_t>(it - ww.begin()) < w.size();
}

}  // namespace

std::vector<GroupWord> find_relators(const GroupHandle& g, int max_len) {
    const MealyAutomaton& a = g.automaton();
    // trivial generators are dropped from S first (so the degenerate
    // one-letter "relators" of the trivial group do not appear)
    std::vector<int32_t> alphabet;
    for (int q = 0; q < a.size(); ++q) {
        if (Element::of_state(a, q).is_identity()) continue;
        alphabet.push_back(q + 1);
        alphabet.push_back(-(q + 1));
    }
    std::vector<std::vector<int32_t>> found;   // canonical cyclic forms
    std::set<std::vector<int32_t>> found_set;
    std::set<std::vector<int32_t>> avoid;      // rotations/inverses of found relators
    TrivialCache& cache = g.trivial_cache();

    auto add_avoid = [&](const std::vector<int32_t>& r) {
        for (std::vector<int32_t> v : {r, GroupWord{r}.inverse().letters}) {
            for (size_t rot = 0; rot < v.size(); ++rot) {
                avoid.insert(v);
                std::rotate(v.begin(), v.begin() + 1, v.end());
            }
        }
    };
    auto ends_with_avoided = [&](const std::vector<int32_t>& w) {
        for (const auto& r : avoid)
            if (r.size() <= w.size() && std::equal(r.begin(), r.end(), w.end() - r.size()))
                return true;
        return false;
    };

    // iterative deepening so shorter relators prune the longer search
    std::vector<int32_t> word;
    std::function<void(int, int)> dfs = [&](int target, int remaining) {
        if (remaining == 0) {
            if (!cyclically_reduced(word)) return;
            std::vector<int32_t> canon = cyclic_min_form(word);
            if (found_set.count(canon)) return;
            if (is_trivial(a, GroupWord{word}, &cache)) {
                found.push_back(canon);
                found_set.insert(canon);
                add_avoid(canon);
            }
            return;
        }
        for (int32_t l : alphabet) {
            if (!word.empty() && word.back() == -l) continue;
            word.push_back(l);
            if (!ends_with_avoided(word)) dfs(target, remaining - 1);
            word.pop_back();
        }
    };
    for (int len = 1; len <= max_len; ++len) dfs(len, len);

    // final filter: no kept relator cyclically contains a shorter one
    std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) {
        return x.size() < y.size() || (x.size() == y.size() && x < y);
    });
    std::vector<GroupWord> out;
    std::vector<std::vector<int32_t>> kept;
    for (const auto& r : found) {
        bool redundant = false;
        for (const auto& k : kept)
            if (k.size() < r.size() && contains_cyclic_subword(r, k)) redundant = true;
        if (!redundant) {
            kept.push_back(r);
            out.push_back(GroupWord{r});
        }
    }
    return out;
}

bool verify_relator(const GroupHandle& g, const GroupWord& w) {
    return is_trivial(g.automaton(), w, &g.trivial_cache());
}

bool verify_relator(const GroupHandle& g, const std::string& text) {
    return verify_relator(g, parse_word(g.automaton(), text));
}

// ---------------------------------------------------------------------------
// nucleus

namespace {

// states of e's automaton occurring as sections at unboundedly deep levels:
// those on a cycle of the section graph, plus everything reachable from one
std::vector<int> limit_states(const Element& e) {
    const int n = e.size();
    const int d = e.d();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (int s = 0; s < n; ++s) {
        std::vector<int> stack;
        for (int x = 0; x < d; ++x) stack.push_back(static_cast<int>(e.child(s, x)));
        while (!stack.empty()) {
            int t = stack.back();
            stack.pop_back();
            if (reach[s][t]) continue;
            reach[s][t] = true;
            for (int x = 0; x < d; ++x) stack.push_back(static_cast<int>(e.child(t, x)));
        }
    }
    std::vector<bool> keep(n, false);
    for (int s = 0; s < n; ++s)
        if (reach[s][s]) {
            keep[s] = true;
            for (int t = 0; t < n; ++t)
                if (reach[s][t]) keep[t] = true;
        }
    std::vector<int> out;
    for (int s = 0; s < n; ++s)
        if (keep[s]) out.push_back(s);
    return out;
}

}  // namespace

std::string NucleusResult::to_string() const {
    switch (kind) {
        case Kind::kContracting:
            return "contracting(|N| = " + std::to_string(nucleus.size()) + ")";
        case Kind::kNonContracting:
            return "non-contracting(witness " + witness_word + " at " + witness_vertex + ")";
        default:
            return "cap-exceeded(" + note + ")";
    }
}

NucleusResult nucleus(const GroupHandle& g, const NucleusCaps& caps) {
    NucleusResult out;
    std::unordered_set<Element, ElementHash> nuc;
    nuc.insert(Element::identity(g.d()));
    for (const Element& e : g.symmetric_generators()) nuc.insert(e);

    bool capped = false;
    for (bool changed = true; changed && !capped;) {
        changed = false;
        std::vector<Element> cur(nuc.begin(), nuc.end());
        std::sort(cur.begin(), cur.end());
        for (size_t i = 0; i < cur.size() && !capped; ++i) {
            for (size_t j = 0; j < cur.size() && !capped; ++j) {
                Element p = cur[i] * cur[j];
                for (int s : limit_states(p)) {
                    Element h = p.section_at_state(s);
                    if (nuc.insert(std::move(h)).second) {
                        changed = true;
                        if (nuc.size() > caps.max_size) {
                            capped = true;
                            break;
                        }
                    }
                }
            }
        }
    }
    if (!capped) {
        out.kind = NucleusResult::Kind::kContracting;
        out.nucleus.assign(nuc.begin(), nuc.end());
        std::sort(out.nucleus.begin(), out.nucleus.end());
        return out;
    }

    // witness search: g with a fixed vertex whose section is g itself and
    // whose order is certifiably infinite
    const MealyAutomaton& a = g.automaton();
    std::vector<int32_t> alphabet;
    for (int q = 0; q < a.size(); ++q) {
        alphabet.push_back(q + 1);
        alphabet.push_back(-(q + 1));
    }
    std::unordered_set<Element, ElementHash> seen;
    std::vector<int32_t> word;
    NucleusResult found;
    found.kind = NucleusResult::Kind::kCapExceeded;
    found.note = "fixpoint exceeded " + std::to_string(caps.max_size) + " elements";

    std::function<bool(int)> dfs = [&](int remaining) -> bool {
        if (!word.empty()) {
            GroupWord w{word};
            Element e = Element::of_word(a, w);
            if (!e.is_identity() && seen.insert(e).second) {
                // self-section at a fixed vertex <=> the root state lies on a
                // cycle of fixed-letter edges
                std::vector<std::pair<int, std::string>> stack = {{0, ""}};
                std::string self_vertex;
                while (!stack.empty() && self_vertex.empty()) {
                    auto [s, v] = std::move(stack.back());
                    stack.pop_back();
                    if (v.size() > static_cast<size_t>(caps.witness_depth)) continue;
                    if (!v.empty() && s == 0) {
                        self_vertex = v;
                        break;
                    }
                    for (int x = 0; x < e.d(); ++x) {
                        if (e.perm_at(s)(x) != x) continue;
                        int c = static_cast<int>(e.child(s, x));
                        stack.push_back({c, v + static_cast<char>('0' + x)});
                    }
                }
                if (!self_vertex.empty()) {
                    OrderVerdict ov = order_of(e, caps.order_budget);
                    if (ov.infinite()) {
                        found.kind = NucleusResult::Kind::kNonContracting;
                        found.witness_element = e;
                        found.witness_vertex = self_vertex;
                        found.witness_order = ov.certificate;
                        found.witness_word = word_to_string(a, w);
                        return true;
                    }
                }
            }
        }
        if (remaining == 0) return false;
        for (int32_t l : alphabet) {
            if (!word.empty() && word.back() == -l) continue;
            word.push_back(l);
            bool done = dfs(remaining - 1);
            word.pop_back();
            if (done) return true;
        }
        return false;
    };
    // iterative deepening keeps the first (shortest) witness deterministic
    for (int len = 1; len <= caps.witness_word_len; ++len) {
        seen.clear();
        if (dfs(len)) break;
    }
    return found;
}

bool verify_nucleus_set(const GroupHandle& g, const std::vector<Element>& nuc) {
    std::unordered_set<Element, ElementHash> set(nuc.begin(), nuc.end());
    if (!set.count(Element::identity(g.d()))) return false;
    for (const Element& e : nuc)
        for (int x = 0; x < e.d(); ++x)
            if (!set.count(e.section(std::string(1, static_cast<char>('0' + x))))) return false;
    // every product's sections eventually land (and stay) in the set: the
    // non-member region reachable from g*h must be finite and acyclic
    for (const Element& u : nuc) {
        for (const Element& v : nuc) {
            Element p = u * v;
            // walk the section automaton of p; member states stop the search
            std::vector<int> color(p.size(), 0);  // 0 new, 1 active, 2 done
            std::vector<std::pair<int, int>> stack = {{0, 0}};
            if (set.count(p)) continue;
            color[0] = 1;
            bool bad = false;
            while (!stack.empty() && !bad) {
                auto& [s, xi] = stack.back();
                if (xi == p.d()) {
                    color[s] = 2;
                    stack.pop_back();
                    continue;
                }
                int c = static_cast<int>(p.child(s, xi++));
                if (set.count(p.section_at_state(c))) continue;
                if (color[c] == 1) bad = true;  // cycle outside the set
                if (color[c] == 0) {
                    color[c] = 1;
                    stack.push_back({c, 0});
                }
            }
            if (bad) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// self-replication

std::string SelfReplicationVerdict::to_string() const {
    switch (kind) {
        case Kind::kYes:
            return "yes";
        case Kind::kNo:
            return "no(level " + std::to_string(no_level) + ", letter " +
                   std::to_string(no_letter) + ": 2^" + std::to_string(section_log2) + " < 2^" +
                   std::to_string(group_log2) + ")";
        default:
            return "unknown";
    }
}

namespace {

// Schreier generators of St(1) as words over the automaton's states
std::vector<GroupWord> stabilizer1_generators(const GroupHandle& g) {
    const MealyAutomaton& a = g.automaton();
    std::vector<GroupWord> gens;
    for (int q = 0; q < a.size(); ++q) gens.push_back(GroupWord::generator(q));
    // transversal over the level-1 orbit of 0
    std::optional<GroupWord> t;  // maps 0 -> 1
    for (const GroupWord& w : gens)
        if (act_letter(a, w, 0) == 1) {
            t = w;
            break;
        }
    std::vector<GroupWord> out;
    if (!t) {
        // all generators stabilize level 1 already
        return gens;
    }
    for (const GroupWord& s : gens) {
        if (act_letter(a, s, 0) == 0) {
            out.push_back(s);                       // fixes the coset of 0
            out.push_back(t->inverse() * s * *t);   // u_1^-1 s u_1
        } else {
            out.push_back(t->inverse() * s);        // u_{s(0)}^-1 s u_0
            out.push_back(s * *t);                  // u_{s(1)}^-1 s u_1
        }
    }
    return out;
}

}  // namespace

SelfReplicationVerdict self_replicating(const GroupHandle& g, const SelfRepBudget& budget) {
    SelfReplicationVerdict out;
    if (g.trivial_group_known()) {
        out.kind = SelfReplicationVerdict::Kind::kYes;  // vacuous
        return out;
    }
    const MealyAutomaton& a = g.automaton();
    std::vector<GroupWord> st1 = stabilizer1_generators(g);
    // deduplicate as elements, drop trivial
    std::vector<std::pair<GroupWord, Element>> st1e;
    {
        std::unordered_set<Element, ElementHash> seen;
        for (const GroupWord& w : st1) {
            Element e = Element::of_word(a, w);
            if (!e.is_identity() && seen.insert(e).second) st1e.push_back({w, e});
        }
    }
    auto sections_at = [&](int x) {
        std::vector<std::pair<GroupWord, Element>> secs;
        std::unordered_set<Element, ElementHash> seen;
        for (auto& [w, e] : st1e) {
            GroupWord ws = word_section(a, w, x);
            Element es = e.section(std::string(1, static_cast<char>('0' + x)));
            if (!es.is_identity() && seen.insert(es).second) secs.push_back({ws, es});
        }
        return secs;
    };

    // No-certificate first (cheap): section subgroup order deficit at a level
    for (int n = 1; n <= budget.no_max_level; ++n) {
        LevelQuotient full = level_quotient_order(g, n);
        for (int x = 0; x < 2; ++x) {
            auto secs = sections_at(x);
            StabilizerChain chain(1u << n);
            std::vector<LevelPerm> perms;
            for (auto& [w, e] : secs) perms.push_back(g.word_level_perm(w, n));
            chain.extend(perms);
            int sub = chain.log2_order();
            if (sub < full.log2_order) {
                out.kind = SelfReplicationVerdict::Kind::kNo;
                out.no_level = n;
                out.no_letter = x;
                out.section_log2 = sub;
                out.group_log2 = full.log2_order;
                return out;
            }
        }
    }

    // Yes-search: express each generator as a product of x-sections
    bool yes_all = true;
    std::vector<std::string> witness;
    for (int x = 0; x < 2 && yes_all; ++x) {
        auto secs = sections_at(x);
        std::unordered_map<Element, std::string, ElementHash> ball;
        std::vector<std::pair<Element, std::string>> frontier;
        ball.emplace(Element::identity(2), "1");
        frontier.push_back({Element::identity(2), ""});
        std::vector<std::pair<Element, std::string>> sgen;
        for (size_t i = 0; i < secs.size(); ++i) {
            std::string nm = "s" + std::to_string(i);
            sgen.push_back({secs[i].second, nm});
            sgen.push_back({secs[i].second.inverse(), nm + "^-1"});
        }
        std::unordered_set<Element, ElementHash> need;
        for (const Element& e : g.generators()) need.insert(e);
        size_t found = 0;
        for (const auto& [e, nm] : ball)
            if (need.count(e)) ++found;
        for (int len = 1; len <= budget.yes_word_len && found < need.size(); ++len) {
            std::vector<std::pair<Element, std::string>> next;
            for (auto& [u, uw] : frontier) {
                for (auto& [s, nm] : sgen) {
                    Element v = u * s;
                    std::string vw = uw.empty() ? nm : uw + "." + nm;
                    if (ball.emplace(v, vw).second) {
                        if (need.count(v)) ++found;
                        next.push_back({v, vw});
                        if (ball.size() > budget.yes_ball_cap) {
                            next.clear();
                            len = budget.yes_word_len + 1;
                            break;
                        }
                    }
                }
            }
            frontier = std::move(next);
        }
        if (found < need.size()) {
            yes_all = false;
        } else {
            for (const Element& e : g.generators()) {
                auto it = ball.find(e);
                witness.push_back("x=" + std::to_string(x) + ": " + it->second);
            }
        }
    }
    if (yes_all) {
        out.kind = SelfReplicationVerdict::Kind::kYes;
        out.witness = std::move(witness);
        return out;
    }
    out.kind = SelfReplicationVerdict::Kind::kUnknown;
    return out;
}

// ---------------------------------------------------------------------------
// finiteness / abelian / transitivity

std::string FinitenessResult::to_string() const {
    switch (kind) {
        case Kind::kFinite:
            return "finite(" + std::to_string(order) + ")";
        case Kind::kInfinite:
            return "infinite(witness " + witness_word + ")";
        default:
            return "unknown";
    }
}

FinitenessResult finiteness(const GroupHandle& g, size_t cap) {
    FinitenessResult out;
    std::unordered_map<Element, GroupWord, ElementHash> ball;
    std::deque<std::pair<Element, GroupWord>> todo;
    Element id = Element::identity(g.d());
    ball.emplace(id, GroupWord{});
    todo.push_back({id, GroupWord{}});
    const MealyAutomaton& a = g.automaton();
    std::vector<std::pair<Element, GroupWord>> sym;
    {
        std::unordered_set<Element, ElementHash> seen;
        for (int q = 0; q < a.size(); ++q) {
            Element e = Element::of_state(a, q);
            if (e.is_identity()) continue;
            if (seen.insert(e).second) sym.push_back({e, GroupWord::generator(q)});
            Element ei = e.inverse();
            if (seen.insert(ei).second) sym.push_back({ei, GroupWord::generator(q).inverse()});
        }
    }
    bool capped = false;
    while (!todo.empty() && !capped) {
        auto [u, uw] = std::move(todo.front());
        todo.pop_front();
        for (auto& [s, sw] : sym) {
            Element v = u * s;
            GroupWord vw = uw * sw;
            if (ball.emplace(v, vw).second) {
                todo.push_back({std::move(v), std::move(vw)});
                if (ball.size() > cap) {
                    capped = true;
                    break;
                }
            }
        }
    }
    if (!capped) {
        out.kind = FinitenessResult::Kind::kFinite;
        out.order = static_cast<long long>(ball.size());
        out.elements.reserve(ball.size());
        for (auto& [e, w] : ball) out.elements.push_back(e);
        std::sort(out.elements.begin(), out.elements.end());
        return out;
    }
    // infinite witness: try short elements in deterministic order
    std::vector<std::pair<GroupWord, Element>> candidates;
    for (auto& [e, w] : ball) {
        if (e.is_identity() || w.size() > 4) continue;
        candidates.push_back({w, e});
    }
    std::sort(candidates.begin(), candidates.end(), [](const auto& x, const auto& y) {
        return x.first.size() < y.first.size() ||
               (x.first.size() == y.first.size() && x.first.letters < y.first.letters);
    });
    for (auto& [w, e] : candidates) {
        OrderVerdict ov = order_of(e);
        if (ov.infinite()) {
            out.kind = FinitenessResult::Kind::kInfinite;
            out.witness = e;
            out.certificate = ov.certificate;
            out.witness_word = word_to_string(a, w);
            return out;
        }
    }
    out.kind = FinitenessResult::Kind::kUnknown;
    return out;
}

bool is_abelian(const GroupHandle& g) {
    const auto& gens = g.generators();
    for (size_t i = 0; i < gens.size(); ++i)
        for (size_t j = i + 1; j < gens.size(); ++j)
            if (gens[i] * gens[j] != gens[j] * gens[i]) return false;
    return true;
}

std::pair<int, std::vector<long long>> abelian_structure(const GroupHandle& g, int box) {
    const auto& gens = g.generators();
    const int m = static_cast<int>(gens.size());
    if (m == 0) return {0, {}};
    // cache powers g^-box .. g^box
    std::vector<std::unordered_map<int, Element>> pows(m);
    for (int i = 0; i < m; ++i) {
        pows[i][0] = Element::identity(g.d());
        for (int v = 1; v <= box; ++v) pows[i][v] = pows[i][v - 1] * gens[i];
        Element inv = gens[i].inverse();
        for (int v = 1; v <= box; ++v) pows[i][-v] = pows[i][-(v - 1)] * inv;
    }
    std::vector<std::vector<long long>> rels;
    std::vector<int> vec(m, -box);
    for (;;) {
        bool zero = std::all_of(vec.begin(), vec.end(), [](int v) { return v == 0; });
        if (!zero) {
            Element e = Element::identity(g.d());
            for (int i = 0; i < m; ++i) e = e * pows[i][vec[i]];
            if (e.is_identity()) rels.push_back(std::vector<long long>(vec.begin(), vec.end()));
        }
        int i = 0;
        while (i < m && vec[i] == box) vec[i++] = -box;
        if (i == m) break;
        ++vec[i];
    }
    // Smith normal form on the (rels x m) lattice
    std::vector<std::vector<long long>> A = rels;
    std::vector<long long> divisors;
    size_t r = 0, c = 0;
    while (r < A.size() && c < static_cast<size_t>(m)) {
        size_t pi = r, pj = c;
        long long best = 0;
        for (size_t i = r; i < A.size(); ++i)
            for (size_t j = c; j < static_cast<size_t>(m); ++j)
                if (A[i][j] != 0 && (best == 0 || std::abs(A[i][j]) < best)) {
                    best = std::abs(A[i][j]);
                    pi = i;
                    pj = j;
                }
        if (best == 0) break;
        std::swap(A[r], A[pi]);
        for (auto& row : A) std::swap(row[c], row[pj]);
        bool again = true;
        while (again) {
            again = false;
            for (size_t i = 0; i < A.size(); ++i)
                if (i != r && A[i][c] != 0) {
                    long long q = A[i][c] / A[r][c];
                    for (size_t j = 0; j < static_cast<size_t>(m); ++j) A[i][j] -= q * A[r][j];
                    if (A[i][c] != 0) again = true;
                }
            for (size_t j = 0; j < static_cast<size_t>(m); ++j)
                if (j != c && A[r][j] != 0) {
                    long long q = A[r][j] / A[r][c];
                    for (size_t i = 0; i < A.size(); ++i) A[i][j] -= q * A[i][c];
                    if (A[r][j] != 0) again = true;
                }
        }
        divisors.push_back(std::abs(A[r][c]));
        ++r;
        ++c;
    }
    std::vector<long long> torsion;
    for (long long d : divisors)
        if (d != 1) torsion.push_back(d);
    return {m - static_cast<int>(divisors.size()), torsion};
}

bool is_level_transitive(const GroupHandle& g, int n) {
    const uint32_t N = 1u << n;
    if (n == 0) return true;
    if (g.trivial_group_known()) return false;
    const auto& sp = g.state_level_perms(n);
    std::vector<LevelPerm> gens;
    for (int q = 0; q < g.automaton().size(); ++q) {
        gens.push_back(sp[q]);
        gens.push_back(perm_inverse(sp[q]));
    }
    std::vector<bool> seen(N, false);
    std::vector<uint32_t> stack = {0};
    seen[0] = true;
    uint32_t count = 1;
    while (!stack.empty()) {
        uint32_t p = stack.back();
        stack.pop_back();
        for (const LevelPerm& gp : gens) {
            uint32_t q = gp[p];
            if (!seen[q]) {
                seen[q] = true;
                ++count;
                stack.push_back(q);
            }
        }
    }
    return count == N;
}

// ---------------------------------------------------------------------------
// fingerprint and report

std::string Fingerprint::key() const {
    std::ostringstream ss;
    ss << "sf=";
    for (int e : sf) ss << e << ",";
    ss << ";gr=";
    for (long long v : gr) ss << v << ",";
    ss << ";ab=" << (abelian ? 1 : 0) << ";ord=";
    for (const auto& o : generator_orders) ss << o << ",";
    ss << ";lt=";
    for (bool b : level_transitive) ss << (b ? 1 : 0);
    return ss.str();
}

Fingerprint fingerprint(const GroupHandle& g, const FingerprintBudget& budget) {
    Fingerprint f;
    for (int n = 0; n <= budget.sf_levels; ++n) f.sf.push_back(level_quotient_order(g, n).log2_order);
    f.gr = growth_series(g, budget.gr_radius);
    f.abelian = is_abelian(g);
    for (const Element& e : g.generators()) {
        OrderVerdict ov = order_of(e, budget.order_budget);
        f.generator_orders.push_back(ov.finite() ? std::to_string(ov.order)
                                                 : (ov.infinite() ? "inf" : "?"));
    }
    std::sort(f.generator_orders.begin(), f.generator_orders.end());
    for (int n = 1; n <= budget.transitive_levels; ++n)
        f.level_transitive.push_back(is_level_transitive(g, n));
    return f;
}

std::string group_report_json(const GroupHandle& g, const ReportBudget& budget) {
    nlohmann::json j;
    std::vector<int> sf;
    for (int n = 0; n <= budget.sf_levels; ++n) sf.push_back(level_quotient_order(g, n).log2_order);
    j["sf"] = sf;
    j["gr"] = growth_series(g, budget.gr_radius);
    if (budget.relator_max_len > 0) {
        std::vector<std::string> rels;
        for (const GroupWord& w : find_relators(g, budget.relator_max_len))
            rels.push_back(word_to_string(g.automaton(), w));
        j["relators"] = rels;
    }
    NucleusResult nr = nucleus(g, budget.nucleus_caps);
    j["contracting"] = nr.to_string();
    if (nr.kind == NucleusResult::Kind::kContracting)
        j["nucleus_size"] = nr.nucleus.size();
    SelfReplicationVerdict sr = self_replicating(g, budget.selfrep);
    j["self_replicating"] = sr.to_string();
    FinitenessResult fin = finiteness(g, budget.finiteness_cap);
    j["finite"] = fin.to_string();
    j["abelian"] = is_abelian(g);
    j["fingerprint"] = fingerprint(g, budget.fingerprint).key();
    return j.dump(2);
}

}  // namespace autg
