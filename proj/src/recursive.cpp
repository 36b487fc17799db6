#include "autg/recursive.hpp"

#include <cctype>
#include <stdexcept>

namespace autg {

namespace {

MixedWord reduce(MixedWord w) {
    MixedWord out;
    out.reserve(w.size());
    for (int32_t l : w) {
        if (!out.empty() && out.back() == -l)
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

MixedWord invert(const MixedWord& w) {
    MixedWord out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
    return out;
}

}  // namespace

RecursiveAutomorphism::RecursiveAutomorphism(const MealyAutomaton& base,
                                             std::vector<std::string> unknown_names)
    : base_(base), names_(std::move(unknown_names)) {
    perm_.assign(names_.size(), Perm(base_.d()));
    sections_.assign(names_.size(), {});
    defined_.assign(names_.size(), false);
}

MixedWord RecursiveAutomorphism::parse_mixed(const std::string& text) const {
    // single-character names; supports ^-1 / ^n and parentheses via a tiny
    // recursive splitter that mirrors the group-word grammar
    struct P {
        const RecursiveAutomorphism& r;
        const std::string& s;
        size_t i = 0;
        MixedWord atom() {
            while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
            if (i >= s.size()) throw std::runtime_error("mixed word: expected atom");
            if (s[i] == '(') {
                ++i;
                MixedWord inner = seq(')');
                if (i >= s.size() || s[i] != ')') throw std::runtime_error("mixed word: expected )");
                ++i;
                return inner;
            }
            char c = s[i++];
            std::string nm(1, c);
            if (auto q = r.base_.state_index(nm)) return {static_cast<int32_t>(*q + 1)};
            for (size_t u = 0; u < r.names_.size(); ++u)
                if (r.names_[u] == nm)
                    return {static_cast<int32_t>(r.base_.size() + u + 1)};
            throw std::runtime_error("mixed word: unknown name `" + nm + "`");
        }
        MixedWord seq(char stop) {
            MixedWord out;
            for (;;) {
                while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
                if (i >= s.size() || s[i] == stop) break;
                MixedWord a = atom();
                while (i < s.size() && s[i] == '^') {
                    ++i;
                    bool neg = i < s.size() && s[i] == '-';
                    if (neg) ++i;
                    long long n = 0;
                    bool any = false;
                    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                        n = n * 10 + (s[i++] - '0');
                        any = true;
                    }
                    if (!any) throw std::runtime_error("mixed word: expected exponent");
                    MixedWord b = neg ? invert(a) : a;
                    MixedWord acc;
                    for (long long j = 0; j < n; ++j) {
                        acc.insert(acc.end(), b.begin(), b.end());
                    }
                    a = reduce(acc);
                }
                out.insert(out.end(), a.begin(), a.end());
            }
            return reduce(out);
        }
    };
    P p{*this, text};
    return p.seq('\0');
}

void RecursiveAutomorphism::define(const std::string& unknown, const std::string& equation) {
    int idx = -1;
    for (size_t u = 0; u < names_.size(); ++u)
        if (names_[u] == unknown) idx = static_cast<int>(u);
    if (idx < 0) throw std::runtime_error("unknown `" + unknown + "` not declared");
    if (defined_[idx]) throw std::runtime_error("unknown `" + unknown + "` defined twice");

    // split "perm-part ( w0, w1, ... )"
    std::string body = equation;
    auto open = body.find_last_of('(');
    auto close = body.find(')', open);
    if (open == std::string::npos || close == std::string::npos)
        throw std::runtime_error("equation needs a section tuple");
    std::string permpart = body.substr(0, open);
    std::string sects = body.substr(open + 1, close - open - 1);

    Perm p(base_.d());
    {
        std::string stripped;
        for (char c : permpart)
            if (!std::isspace(static_cast<unsigned char>(c))) stripped += c;
        if (stripped == "s") {
            if (base_.d() != 2) throw std::runtime_error("`s` needs d = 2");
            p = Perm::transposition(2, 0, 1);
        } else if (!stripped.empty()) {
            throw std::runtime_error("unsupported permutation token `" + stripped + "`");
        }
    }
    std::vector<MixedWord> rows;
    {
        std::string cur;
        int depth = 0;
        auto flush = [&]() {
            rows.push_back(parse_mixed(cur));
            cur.clear();
        };
        for (char c : sects) {
            if (c == '(') ++depth;
            if (c == ')') --depth;
            if (c == ',' && depth == 0) {
                flush();
            } else {
                cur += c;
            }
        }
        flush();
    }
    if (static_cast<int>(rows.size()) != base_.d())
        throw std::runtime_error("section tuple size disagrees with alphabet");
    perm_[idx] = p;
    sections_[idx] = std::move(rows);
    defined_[idx] = true;
}

bool RecursiveAutomorphism::complete() const {
    for (bool b : defined_)
        if (!b) return false;
    return true;
}

Perm RecursiveAutomorphism::word_perm(const MixedWord& w) const {
    Perm p(base_.d());
    for (int32_t l : w) {
        int q = std::abs(l) - 1;
        Perm lp = q < base_.size() ? base_.rho(q) : perm_[q - base_.size()];
        if (l < 0) lp = lp.inverse();
        p = lp * p;
    }
    return p;
}

MixedWord RecursiveAutomorphism::word_section(const MixedWord& w, int x) const {
    std::vector<MixedWord> parts;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        int32_t l = *it;
        int q = std::abs(l) - 1;
        if (q < base_.size()) {
            if (l > 0) {
                parts.push_back({static_cast<int32_t>(base_.tau(q, x) + 1)});
                x = base_.rho(q)(x);
            } else {
                int y = base_.rho(q).inverse()(x);
                parts.push_back({static_cast<int32_t>(-(base_.tau(q, y) + 1))});
                x = y;
            }
        } else {
            int u = q - base_.size();
            if (!defined_[u]) throw std::runtime_error("system incomplete");
            if (l > 0) {
                parts.push_back(sections_[u][x]);
                x = perm_[u](x);
            } else {
                int y = perm_[u].inverse()(x);
                parts.push_back(invert(sections_[u][y]));
                x = y;
            }
        }
    }
    MixedWord out;
    for (auto it = parts.rbegin(); it != parts.rend(); ++it)
        out.insert(out.end(), it->begin(), it->end());
    return reduce(out);
}

std::vector<Perm> RecursiveAutomorphism::portrait(const MixedWord& w, int depth) const {
    if (!complete()) throw std::runtime_error("system incomplete");
    std::vector<Perm> out;
    std::vector<MixedWord> level = {reduce(w)};
    for (int lev = 0; lev <= depth; ++lev) {
        std::vector<MixedWord> next;
        for (const MixedWord& u : level) {
            out.push_back(word_perm(u));
            if (lev < depth)
                for (int x = 0; x < base_.d(); ++x) next.push_back(word_section(u, x));
        }
        level = std::move(next);
    }
    return out;
}

std::vector<Perm> RecursiveAutomorphism::portrait_of_unknown(const std::string& unknown,
                                                             int depth) const {
    return portrait(parse_mixed(unknown), depth);
}

bool conjugacy_check(const RecursiveAutomorphism& conjugator, const std::string& mu_name,
                     const RecursiveAutomorphism& target,
                     const std::vector<std::pair<std::string, std::string>>& generator_images,
                     int depth) {
    for (auto& [gen, image] : generator_images) {
        // s^mu = mu^-1 s mu over the conjugator's system
        MixedWord w = conjugator.parse_mixed("(" + mu_name + ")^-1 " + gen + " " + mu_name);
        std::vector<Perm> lhs = conjugator.portrait(w, depth);
        std::vector<Perm> rhs = target.portrait(target.parse_mixed(image), depth);
        if (lhs != rhs) return false;
    }
    return true;
}

}  // namespace autg
