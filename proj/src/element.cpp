#include "autg/element.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <stdexcept>

namespace autg {

// ---------------------------------------------------------------------------
// words

GroupWord free_reduce(const GroupWord& w) {
    GroupWord out;
    out.letters.reserve(w.letters.size());
    for (int32_t l : w.letters) {
        if (!out.letters.empty() && out.letters.back() == -l)
            out.letters.pop_back();
        else
            out.letters.push_back(l);
    }
    return out;
}

GroupWord GroupWord::inverse() const {
    GroupWord out;
    out.letters.reserve(letters.size());
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) out.letters.push_back(-*it);
    return out;
}

GroupWord GroupWord::operator*(const GroupWord& o) const {
    GroupWord cat;
    cat.letters.reserve(letters.size() + o.letters.size());
    cat.letters = letters;
    cat.letters.insert(cat.letters.end(), o.letters.begin(), o.letters.end());
    return free_reduce(cat);
}

namespace {

struct WordParser {
    const MealyAutomaton& aut;
    const std::string& s;
    size_t i = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("word: " + msg, 1, static_cast<int>(i + 1));
    }
    bool eof() const { return i >= s.size(); }
    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }

    // unicode superscripts: U+207B (minus), U+00B9, U+00B2, U+00B3, U+2070..U+2079
    std::optional<long long> try_superscript() {
        long long sign = 1;
        long long value = 0;
        bool any = false;
        size_t j = i;
        auto take3 = [&](const char* pat) {
            if (j + 2 < s.size() + 1 && s.compare(j, 3, pat) == 0) {
                j += 3;
                return true;
            }
            return false;
        };
        auto take2digit = [&]() -> int {
            if (j + 1 < s.size()) {
                unsigned char c0 = s[j], c1 = s[j + 1];
                if (c0 == 0xC2 && c1 == 0xB9) { j += 2; return 1; }
                if (c0 == 0xC2 && c1 == 0xB2) { j += 2; return 2; }
                if (c0 == 0xC2 && c1 == 0xB3) { j += 2; return 3; }
            }
            if (j + 2 < s.size()) {
                unsigned char c0 = s[j], c1 = s[j + 1], c2 = s[j + 2];
                if (c0 == 0xE2 && c1 == 0x81 && c2 >= 0xB0 && c2 <= 0xB9) {
                    j += 3;
                    return c2 - 0xB0;
                }
            }
            return -1;
        };
        if (take3("\xE2\x81\xBB")) sign = -1;  // superscript minus
        for (;;) {
            int dv = take2digit();
            if (dv < 0) break;
            value = value * 10 + dv;
            any = true;
        }
        if (!any) return std::nullopt;
        i = j;
        return sign * value;
    }

    GroupWord parse_sequence(char stop) {
        GroupWord out;
        for (;;) {
            skip_ws();
            if (eof() || s[i] == stop) break;
            GroupWord atom = parse_atom();
            // postfix operators bind to the atom just read
            for (;;) {
                skip_ws();
                if (!eof() && s[i] == '^') {
                    ++i;
                    skip_ws();
                    if (eof()) fail("dangling ^");
                    if (s[i] == '-' || std::isdigit(static_cast<unsigned char>(s[i]))) {
                        bool neg = s[i] == '-';
                        if (neg) ++i;
                        if (eof() || !std::isdigit(static_cast<unsigned char>(s[i])))
                            fail("expected exponent digits");
                        long long n = 0;
                        while (!eof() && std::isdigit(static_cast<unsigned char>(s[i])))
                            n = n * 10 + (s[i++] - '0');
                        atom = word_power(atom, neg ? -n : n);
                    } else {
                        // conjugation by the next atom: w^u = u w u^-1
                        GroupWord u = parse_atom();
                        atom = u * atom * u.inverse();
                    }
                    continue;
                }
                auto sup = try_superscript();
                if (sup) {
                    atom = word_power(atom, *sup);
                    continue;
                }
                break;
            }
            out = out * atom;
        }
        return out;
    }

    GroupWord parse_atom() {
        skip_ws();
        if (eof()) fail("expected word atom");
        if (s[i] == '(') {
            ++i;
            GroupWord inner = parse_sequence(')');
            if (eof() || s[i] != ')') fail("expected )");
            ++i;
            return inner;
        }
        char c = s[i];
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) fail("unexpected character");
        ++i;
        auto q = aut.state_index(std::string(1, c));
        if (!q) fail(std::string("unknown state `") + c + "`");
        return GroupWord::generator(*q);
    }

    static GroupWord word_power(const GroupWord& w, long long n) {
        GroupWord base = n < 0 ? w.inverse() : w;
        long long k = n < 0 ? -n : n;
        GroupWord out;
        for (long long j = 0; j < k; ++j) out = out * base;
        return out;
    }
};

}  // namespace

GroupWord parse_word(const MealyAutomaton& a, const std::string& text) {
    WordParser p{a, text};
    GroupWord w = p.parse_sequence('\0');
    p.skip_ws();
    if (!p.eof()) p.fail("trailing input");
    return free_reduce(w);
}

std::string word_to_string(const MealyAutomaton& a, const GroupWord& w) {
    if (w.empty()) return "1";
    std::string out;
    for (int32_t l : w.letters) {
        out += a.name(std::abs(l) - 1);
        if (l < 0) out += "^-1";
    }
    return out;
}

// ---------------------------------------------------------------------------
// word action and sections

namespace {

inline int letter_image(const MealyAutomaton& a, int32_t l, int x) {
    int q = std::abs(l) - 1;
    return l > 0 ? a.rho(q)(x) : a.rho(q).inverse()(x);
}

inline int32_t letter_section(const MealyAutomaton& a, int32_t l, int x, int* image) {
    int q = std::abs(l) - 1;
    if (l > 0) {
        *image = a.rho(q)(x);
        return a.tau(q, x) + 1;
    }
    int y = a.rho(q).inverse()(x);
    *image = y;
    return -(a.tau(q, y) + 1);
}

}  // namespace

int act_letter(const MealyAutomaton& a, const GroupWord& w, int x) {
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) x = letter_image(a, *it, x);
    return x;
}

GroupWord word_section(const MealyAutomaton& a, const GroupWord& w, int x) {
    GroupWord out;
    out.letters.resize(w.letters.size());
    size_t pos = w.letters.size();
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
        out.letters[--pos] = letter_section(a, *it, x, &x);
    return free_reduce(out);
}

GroupWord word_section_at(const MealyAutomaton& a, const GroupWord& w, const std::string& v) {
    GroupWord cur = free_reduce(w);
    for (char c : v) cur = word_section(a, cur, c - '0');
    return cur;
}

std::string act_word(const MealyAutomaton& a, const GroupWord& w, const std::string& input) {
    std::string out;
    out.reserve(input.size());
    GroupWord cur = free_reduce(w);
    for (char c : input) {
        int x = c - '0';
        if (x < 0 || x >= a.d()) throw std::out_of_range("letter out of alphabet");
        out += static_cast<char>('0' + act_letter(a, cur, x));
        cur = word_section(a, cur, x);
    }
    return out;
}

namespace {

std::string word_key(const GroupWord& w) {
    return std::string(reinterpret_cast<const char*>(w.letters.data()),
                       w.letters.size() * sizeof(int32_t));
}

}  // namespace

bool is_trivial(const MealyAutomaton& a, const GroupWord& w0, TrivialCache* cache) {
    GroupWord w = free_reduce(w0);
    std::string k0 = word_key(w);
    if (cache) {
        auto it = cache->find(k0);
        if (it != cache->end()) return it->second;
    }
    // close under sections; trivial iff every member has trivial root permutation
    std::unordered_map<std::string, GroupWord> closure;
    std::deque<GroupWord> todo;
    closure.emplace(k0, w);
    todo.push_back(w);
    bool trivial = true;
    while (!todo.empty()) {
        GroupWord u = std::move(todo.front());
        todo.pop_front();
        Perm p(a.d());
        for (int32_t l : u.letters) {
            int q = std::abs(l) - 1;
            p = (l > 0 ? a.rho(q) : a.rho(q).inverse()) * p;
        }
        if (!p.is_identity()) {
            trivial = false;
            break;
        }
        for (int x = 0; x < a.d(); ++x) {
            GroupWord s = word_section(a, u, x);
            std::string k = word_key(s);
            if (closure.emplace(k, s).second) todo.push_back(s);
        }
    }
    if (cache) {
        if (trivial) {
            for (auto& [k, u] : closure) (*cache)[k] = true;
        } else {
            (*cache)[k0] = false;
        }
    }
    return trivial;
}

bool equals(const MealyAutomaton& a, const GroupWord& u, const GroupWord& v, TrivialCache* cache) {
    return is_trivial(a, u * v.inverse(), cache);
}

// ---------------------------------------------------------------------------
// Element

namespace {

// raw (possibly unminimized) pointed automaton
struct RawElem {
    int d = 2;
    std::vector<Perm> perm;
    std::vector<uint32_t> child;  // n*d
};

// Moore minimization + BFS relabel from the root's class.
void canonicalize(const RawElem& raw, std::vector<Perm>* out_perm,
                  std::vector<uint32_t>* out_child) {
    const int n = static_cast<int>(raw.perm.size());
    const int d = raw.d;
    std::vector<int> cls(n), next(n);
    {
        std::map<std::vector<uint8_t>, int> sig;
        for (int q = 0; q < n; ++q) {
            std::vector<uint8_t> row(d);
            for (int x = 0; x < d; ++x) row[x] = static_cast<uint8_t>(raw.perm[q](x));
            cls[q] = sig.emplace(std::move(row), static_cast<int>(sig.size())).first->second;
        }
    }
    for (;;) {
        std::unordered_map<std::string, int> sig;
        sig.reserve(n * 2);
        for (int q = 0; q < n; ++q) {
            std::string key;
            key.reserve((d + 1) * 4);
            auto push = [&key](int v) {
                key.append(reinterpret_cast<const char*>(&v), sizeof(int));
            };
            push(cls[q]);
            for (int x = 0; x < d; ++x) push(cls[raw.child[static_cast<size_t>(q) * d + x]]);
            next[q] = sig.emplace(std::move(key), static_cast<int>(sig.size())).first->second;
        }
        if (next == cls) break;
        std::swap(cls, next);
    }
    // representative per class
    int m = 0;
    for (int q = 0; q < n; ++q) m = std::max(m, cls[q] + 1);
    std::vector<int> rep(m, -1);
    for (int q = 0; q < n; ++q)
        if (rep[cls[q]] == -1) rep[cls[q]] = q;
    // BFS from root class
    std::vector<int> pos(m, -1);
    std::vector<int> order;
    order.reserve(m);
    pos[cls[0]] = 0;
    order.push_back(cls[0]);
    for (size_t qi = 0; qi < order.size(); ++qi) {
        int q = rep[order[qi]];
        for (int x = 0; x < d; ++x) {
            int c = cls[raw.child[static_cast<size_t>(q) * d + x]];
            if (pos[c] == -1) {
                pos[c] = static_cast<int>(order.size());
                order.push_back(c);
            }
        }
    }
    const int k = static_cast<int>(order.size());
    out_perm->clear();
    out_perm->reserve(k);
    out_child->assign(static_cast<size_t>(k) * d, 0);
    for (int i = 0; i < k; ++i) {
        int q = rep[order[i]];
        out_perm->push_back(raw.perm[q]);
        for (int x = 0; x < d; ++x)
            (*out_child)[static_cast<size_t>(i) * d + x] =
                static_cast<uint32_t>(pos[cls[raw.child[static_cast<size_t>(q) * d + x]]]);
    }
}

}  // namespace

void Element::finish() {
    key_.clear();
    key_ += static_cast<char>(d_);
    for (size_t s = 0; s < perm_.size(); ++s) {
        for (int x = 0; x < d_; ++x) key_ += static_cast<char>(perm_[s](x));
        for (int x = 0; x < d_; ++x) {
            uint32_t c = child_[s * d_ + x];
            key_.append(reinterpret_cast<const char*>(&c), sizeof(uint32_t));
        }
    }
    hash_ = std::hash<std::string>{}(key_);
}

Element Element::identity(int d) {
    Element e;
    e.d_ = static_cast<uint8_t>(d);
    e.perm_ = {Perm(d)};
    e.child_.assign(d, 0);
    e.finish();
    return e;
}

Element Element::of_state(const MealyAutomaton& a, int q) {
    RawElem raw;
    raw.d = a.d();
    const int n = a.size();
    raw.perm.reserve(n);
    raw.child.resize(static_cast<size_t>(n) * raw.d);
    // state order: rotate so q is state 0
    std::vector<int> map(n);
    for (int i = 0; i < n; ++i) map[(i - q + n) % n] = i;
    std::vector<int> inv(n);
    for (int i = 0; i < n; ++i) inv[map[i]] = i;
    for (int i = 0; i < n; ++i) {
        raw.perm.push_back(a.rho(map[i]));
        for (int x = 0; x < raw.d; ++x)
            raw.child[static_cast<size_t>(i) * raw.d + x] =
                static_cast<uint32_t>(inv[a.tau(map[i], x)]);
    }
    Element e;
    e.d_ = static_cast<uint8_t>(raw.d);
    canonicalize(raw, &e.perm_, &e.child_);
    e.finish();
    return e;
}

Element Element::of_word(const MealyAutomaton& a, const GroupWord& w0, size_t closure_cap) {
    GroupWord w = free_reduce(w0);
    // closure of reduced words under sections
    std::unordered_map<std::string, int> index;
    std::vector<GroupWord> words;
    words.push_back(w);
    index.emplace(word_key(w), 0);
    RawElem raw;
    raw.d = a.d();
    for (size_t qi = 0; qi < words.size(); ++qi) {
        GroupWord u = words[qi];  // copy: words may reallocate
        Perm p(a.d());
        for (int32_t l : u.letters) {
            int q = std::abs(l) - 1;
            p = (l > 0 ? a.rho(q) : a.rho(q).inverse()) * p;
        }
        raw.perm.push_back(p);
        for (int x = 0; x < a.d(); ++x) {
            GroupWord s = word_section(a, u, x);
            std::string k = word_key(s);
            auto [it, fresh] = index.emplace(k, static_cast<int>(words.size()));
            if (fresh) {
                words.push_back(s);
                if (words.size() > closure_cap)
                    throw std::runtime_error("element closure cap exceeded");
            }
            raw.child.push_back(static_cast<uint32_t>(it->second));
        }
    }
    Element e;
    e.d_ = static_cast<uint8_t>(a.d());
    canonicalize(raw, &e.perm_, &e.child_);
    e.finish();
    return e;
}

Element Element::wreath(const Perm& root, const std::vector<Element>& sections) {
    const int d = root.d();
    if (static_cast<int>(sections.size()) != d)
        throw std::invalid_argument("wreath: section count");
    RawElem raw;
    raw.d = d;
    raw.perm.push_back(root);
    raw.child.assign(d, 0);
    std::vector<uint32_t> offset(sections.size());
    uint32_t base = 1;
    for (int x = 0; x < d; ++x) {
        offset[x] = base;
        base += static_cast<uint32_t>(sections[x].size());
    }
    for (int x = 0; x < d; ++x) {
        raw.child[x] = offset[x];
        const Element& s = sections[x];
        if (s.d() != d) throw std::invalid_argument("wreath: alphabet mismatch");
        for (int q = 0; q < s.size(); ++q) {
            raw.perm.push_back(s.perm_at(q));
            for (int y = 0; y < d; ++y)
                raw.child.push_back(offset[x] + static_cast<uint32_t>(s.child(q, y)));
        }
    }
    Element e;
    e.d_ = static_cast<uint8_t>(d);
    canonicalize(raw, &e.perm_, &e.child_);
    e.finish();
    return e;
}

Element Element::operator*(const Element& g) const {
    return *try_multiply(*this, g, static_cast<size_t>(-1));
}

std::optional<Element> Element::try_multiply(const Element& f, const Element& g,
                                             size_t state_cap) {
    if (f.d_ != g.d_) throw std::invalid_argument("alphabet mismatch");
    const int d = f.d_;
    RawElem raw;
    raw.d = d;
    std::unordered_map<uint64_t, uint32_t> index;
    std::vector<uint64_t> order;
    auto pack = [](uint32_t i, uint32_t j) { return (static_cast<uint64_t>(i) << 32) | j; };
    index.emplace(pack(0, 0), 0);
    order.push_back(pack(0, 0));
    for (size_t qi = 0; qi < order.size(); ++qi) {
        uint32_t i = static_cast<uint32_t>(order[qi] >> 32);
        uint32_t j = static_cast<uint32_t>(order[qi] & 0xffffffffu);
        raw.perm.push_back(f.perm_[i] * g.perm_[j]);
        for (int x = 0; x < d; ++x) {
            int y = g.perm_[j](x);
            uint64_t key = pack(f.child_[static_cast<size_t>(i) * d + y],
                                g.child_[static_cast<size_t>(j) * d + x]);
            auto [it, fresh] = index.emplace(key, static_cast<uint32_t>(order.size()));
            if (fresh) {
                order.push_back(key);
                if (order.size() > state_cap) return std::nullopt;
            }
            raw.child.push_back(it->second);
        }
    }
    Element e;
    e.d_ = f.d_;
    canonicalize(raw, &e.perm_, &e.child_);
    e.finish();
    return e;
}

Element Element::inverse() const {
    const int d = d_;
    RawElem raw;
    raw.d = d;
    const int n = size();
    raw.perm.reserve(n);
    raw.child.resize(static_cast<size_t>(n) * d);
    for (int s = 0; s < n; ++s) {
        Perm inv = perm_[s].inverse();
        raw.perm.push_back(inv);
        for (int x = 0; x < d; ++x)
            raw.child[static_cast<size_t>(s) * d + x] = child_[static_cast<size_t>(s) * d + inv(x)];
    }
    Element e;
    e.d_ = d_;
    canonicalize(raw, &e.perm_, &e.child_);
    e.finish();
    return e;
}

Element Element::power(long long n) const {
    Element base = n < 0 ? inverse() : *this;
    long long k = n < 0 ? -n : n;
    Element acc = Element::identity(d_);
    while (k) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

Element Element::section_at_state(int s) const {
    if (s == 0) return *this;
    const int d = d_;
    // BFS relabel from s; already minimized
    std::vector<int> pos(size(), -1);
    std::vector<int> order;
    pos[s] = 0;
    order.push_back(s);
    for (size_t qi = 0; qi < order.size(); ++qi) {
        int q = order[qi];
        for (int x = 0; x < d; ++x) {
            int c = static_cast<int>(child_[static_cast<size_t>(q) * d + x]);
            if (pos[c] == -1) {
                pos[c] = static_cast<int>(order.size());
                order.push_back(c);
            }
        }
    }
    Element e;
    e.d_ = d_;
    e.perm_.clear();
    e.child_.assign(order.size() * d, 0);
    for (size_t i = 0; i < order.size(); ++i) {
        e.perm_.push_back(perm_[order[i]]);
        for (int x = 0; x < d; ++x)
            e.child_[i * d + x] =
                static_cast<uint32_t>(pos[child_[static_cast<size_t>(order[i]) * d + x]]);
    }
    e.finish();
    return e;
}

Element Element::section(const std::string& vertex) const {
    int s = 0;
    for (char c : vertex) {
        int x = c - '0';
        if (x < 0 || x >= d_) throw std::out_of_range("letter out of alphabet");
        s = static_cast<int>(child_[static_cast<size_t>(s) * d_ + x]);
    }
    return section_at_state(s);
}

bool Element::fixes(const std::string& vertex) const {
    int s = 0;
    for (char c : vertex) {
        int x = c - '0';
        if (perm_[s](x) != x) return false;
        s = static_cast<int>(child_[static_cast<size_t>(s) * d_ + x]);
    }
    return true;
}

std::string Element::act(const std::string& word) const {
    std::string out;
    out.reserve(word.size());
    int s = 0;
    for (char c : word) {
        int x = c - '0';
        if (x < 0 || x >= d_) throw std::out_of_range("letter out of alphabet");
        out += static_cast<char>('0' + perm_[s](x));
        s = static_cast<int>(child_[static_cast<size_t>(s) * d_ + x]);
    }
    return out;
}

std::vector<Perm> Element::portrait(int depth) const {
    std::vector<Perm> out;
    std::vector<int> level = {0};
    for (int lev = 0; lev <= depth; ++lev) {
        std::vector<int> next;
        for (int s : level) {
            out.push_back(perm_[s]);
            if (lev < depth)
                for (int x = 0; x < d_; ++x)
                    next.push_back(static_cast<int>(child_[static_cast<size_t>(s) * d_ + x]));
        }
        level = std::move(next);
    }
    return out;
}

// ---------------------------------------------------------------------------
// rays

Ray Ray::parse(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("ray: expected head:period");
    Ray r{text.substr(0, colon), text.substr(colon + 1)};
    if (r.period.empty()) throw std::invalid_argument("ray: empty period");
    r.normalize();
    return r;
}

void Ray::normalize() {
    // primitive period
    for (size_t len = 1; len < period.size(); ++len) {
        if (period.size() % len) continue;
        bool ok = true;
        for (size_t i = len; i < period.size() && ok; ++i) ok = period[i] == period[i % len];
        if (ok) {
            period.resize(len);
            break;
        }
    }
    // shortest head: absorb trailing head letters matching the rotated period
    while (!head.empty() && head.back() == period.back()) {
        head.pop_back();
        std::rotate(period.rbegin(), period.rbegin() + 1, period.rend());
    }
}

std::string Ray::prefix(size_t len) const {
    std::string out = head.substr(0, std::min(len, head.size()));
    size_t i = 0;
    while (out.size() < len) {
        out += period[i % period.size()];
        ++i;
    }
    return out;
}

Ray act_ray(const Element& g, const Ray& r) {
    Ray out;
    int s = 0;
    for (char c : r.head) {
        int x = c - '0';
        out.head += static_cast<char>('0' + g.perm_at(s)(x));
        s = g.child(s, x);
    }
    // iterate (state, phase) over the periodic tail until repetition
    std::map<std::pair<int, size_t>, size_t> seen;
    std::string tail;
    size_t phase = 0;
    for (;;) {
        auto key = std::make_pair(s, phase);
        auto it = seen.find(key);
        if (it != seen.end()) {
            out.head += tail.substr(0, it->second);
            out.period = tail.substr(it->second);
            break;
        }
        seen.emplace(key, tail.size());
        int x = r.period[phase] - '0';
        tail += static_cast<char>('0' + g.perm_at(s)(x));
        s = g.child(s, x);
        phase = (phase + 1) % r.period.size();
    }
    out.normalize();
    return out;
}

}  // namespace autg
