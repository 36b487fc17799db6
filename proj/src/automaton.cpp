#include "autg/automaton.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace autg {

MealyAutomaton::MealyAutomaton(std::vector<std::string> names, int d,
                               std::vector<std::vector<int>> tau, std::vector<Perm> rho)
    : names_(std::move(names)), d_(d), tau_(std::move(tau)), rho_(std::move(rho)) {
    if (d_ < 2 || d_ > kMaxAlphabet) throw std::invalid_argument("alphabet size out of range");
    const int n = size();
    if (static_cast<int>(tau_.size()) != n || static_cast<int>(rho_.size()) != n)
        throw std::invalid_argument("table sizes disagree with state count");
    for (int q = 0; q < n; ++q) {
        if (static_cast<int>(tau_[q].size()) != d_) throw std::invalid_argument("tau row size");
        for (int x = 0; x < d_; ++x)
            if (tau_[q][x] < 0 || tau_[q][x] >= n) throw std::invalid_argument("tau out of range");
    }
    rho_raw_.resize(n);
    for (int q = 0; q < n; ++q) {
        rho_raw_[q].resize(d_);
        for (int x = 0; x < d_; ++x) rho_raw_[q][x] = static_cast<uint8_t>(rho_[q](x));
    }
}

std::optional<int> MealyAutomaton::state_index(const std::string& name) const {
    for (int q = 0; q < size(); ++q)
        if (names_[q] == name) return q;
    return std::nullopt;
}

bool MealyAutomaton::is_invertible() const {
    for (int q = 0; q < size(); ++q)
        if (!rho_[q].is_bijection()) return false;
    return true;
}

std::string MealyAutomaton::to_recursion_text() const {
    std::string out;
    for (int q = 0; q < size(); ++q) {
        out += names_[q];
        out += " = ";
        if (!rho_[q].is_identity()) {
            out += rho_[q].to_string();
            out += ' ';
        }
        out += '(';
        for (int x = 0; x < d_; ++x) {
            if (x) out += ", ";
            out += names_[tau_[q][x]];
        }
        out += ')';
        if (q + 1 < size()) out += '\n';
    }
    return out;
}

bool validate_invertible(const MealyAutomaton& a) { return a.is_invertible(); }

// ---------------------------------------------------------------------------
// parsing

namespace {

struct Cursor {
    const std::string& s;
    size_t i = 0;
    int line = 1;
    int col = 1;

    bool eof() const { return i >= s.size(); }
    char peek() const { return s[i]; }
    char get() {
        char c = s[i++];
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        return c;
    }
    void skip_blanks() {
        while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) get();
    }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line, col); }
};

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::string read_name(Cursor& c) {
    c.skip_blanks();
    if (c.eof() || !is_name_char(c.peek())) c.fail("expected state name");
    std::string out;
    while (!c.eof() && is_name_char(c.peek())) out += c.get();
    return out;
}

}  // namespace

MealyAutomaton parse_recursion(const std::string& text) {
    // first pass: split lines, collect declarations
    std::vector<std::string> lines;
    {
        std::stringstream ss(text);
        std::string line;
        while (std::getline(ss, line)) lines.push_back(line);
    }
    std::vector<std::string> names;
    std::vector<std::string> rhs;
    std::vector<int> line_no;
    std::unordered_map<std::string, int> index;
    for (size_t li = 0; li < lines.size(); ++li) {
        const std::string& raw = lines[li];
        bool blank = std::all_of(raw.begin(), raw.end(),
                                 [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
        if (blank) continue;
        auto eq = raw.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected `name = ...`", static_cast<int>(li + 1), 1);
        std::string name = raw.substr(0, eq);
        // trim
        while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.pop_back();
        size_t b = 0;
        while (b < name.size() && std::isspace(static_cast<unsigned char>(name[b]))) ++b;
        name = name.substr(b);
        if (name.empty() || !std::all_of(name.begin(), name.end(), is_name_char))
            throw ParseError("bad state name", static_cast<int>(li + 1), 1);
        if (index.count(name))
            throw ParseError("duplicate state `" + name + "`", static_cast<int>(li + 1), 1);
        index[name] = static_cast<int>(names.size());
        names.push_back(name);
        rhs.push_back(raw.substr(eq + 1));
        line_no.push_back(static_cast<int>(li + 1));
    }
    if (names.empty()) throw ParseError("no state declarations", 1, 1);

    // second pass: parse each right-hand side
    int d = -1;
    std::vector<std::vector<int>> tau;
    std::vector<Perm> rho;
    for (size_t qi = 0; qi < names.size(); ++qi) {
        std::string body = rhs[qi];
        const int ln = line_no[qi];
        // tokenize paren groups and leading perm tokens
        std::vector<std::string> groups;   // contents of (...) groups, in order
        std::string stray;                 // non-paren tokens (perm letters like `s`)
        std::vector<int> group_col;
        for (size_t i = 0; i < body.size();) {
            char c = body[i];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++i;
                continue;
            }
            if (c == '(') {
                size_t j = i + 1;
                while (j < body.size() && body[j] != ')') ++j;
                if (j >= body.size()) throw ParseError("unclosed `(`", ln, static_cast<int>(i + 1));
                groups.push_back(body.substr(i + 1, j - i - 1));
                group_col.push_back(static_cast<int>(i + 1));
                i = j + 1;
            } else {
                stray += c;
                ++i;
            }
        }
        if (groups.empty()) throw ParseError("missing section tuple", ln, 1);

        // last group = sections; preceding groups + stray = permutation
        std::string sections = groups.back();
        groups.pop_back();

        std::vector<int> row;
        {
            std::stringstream ss(sections);
            std::string item;
            while (std::getline(ss, item, ',')) {
                // trim
                size_t b = 0, e = item.size();
                while (b < e && std::isspace(static_cast<unsigned char>(item[b]))) ++b;
                while (e > b && std::isspace(static_cast<unsigned char>(item[e - 1]))) --e;
                std::string nm = item.substr(b, e - b);
                if (nm.empty() || !std::all_of(nm.begin(), nm.end(), is_name_char))
                    throw ParseError("bad section name", ln, 1);
                auto it = index.find(nm);
                if (it == index.end())
                    throw ParseError("undeclared state `" + nm + "`", ln, 1);
                row.push_back(it->second);
            }
        }
        if (d == -1) {
            d = static_cast<int>(row.size());
            if (d < 2 || d > kMaxAlphabet) throw ParseError("alphabet size out of range", ln, 1);
        } else if (static_cast<int>(row.size()) != d) {
            throw ParseError("section tuple size disagrees with alphabet", ln, 1);
        }

        Perm p(d);
        if (!stray.empty()) {
            if (stray == "s") {
                if (d != 2) throw ParseError("`s` is only the d=2 transposition", ln, 1);
                p = Perm::transposition(2, 0, 1);
            } else {
                throw ParseError("unrecognized permutation token `" + stray + "`", ln, 1);
            }
        }
        for (const std::string& cyc : groups) {
            // one cycle per group: digits (optionally space separated)
            std::vector<int> pts;
            for (char c : cyc) {
                if (std::isspace(static_cast<unsigned char>(c))) continue;
                if (!std::isdigit(static_cast<unsigned char>(c)))
                    throw ParseError("bad cycle letter", ln, 1);
                int x = c - '0';
                if (x >= d) throw ParseError("cycle letter out of alphabet", ln, 1);
                pts.push_back(x);
            }
            Perm cp(d);
            for (size_t i = 0; i < pts.size(); ++i) cp.set(pts[i], pts[(i + 1) % pts.size()]);
            if (!cp.is_bijection()) throw ParseError("malformed cycle", ln, 1);
            p = cp * p;
        }
        if (!p.is_bijection()) throw ParseError("output row is not a permutation", ln, 1);
        tau.push_back(std::move(row));
        rho.push_back(p);
    }
    return MealyAutomaton(names, d, std::move(tau), std::move(rho));
}

// ---------------------------------------------------------------------------
// transforms

MealyAutomaton inverse_automaton(const MealyAutomaton& a) {
    if (!a.is_invertible()) throw std::invalid_argument("automaton is not invertible");
    const int n = a.size();
    const int dd = a.d();
    std::vector<std::string> names(n);
    std::vector<std::vector<int>> tau(n, std::vector<int>(dd));
    std::vector<Perm> rho;
    rho.reserve(n);
    for (int q = 0; q < n; ++q) {
        names[q] = a.name(q) + "^-1";
        Perm inv = a.rho(q).inverse();
        for (int x = 0; x < dd; ++x) tau[q][x] = a.tau(q, inv(x));
        rho.push_back(inv);
    }
    return MealyAutomaton(std::move(names), dd, std::move(tau), std::move(rho));
}

namespace {

MealyAutomaton dual_core(const MealyAutomaton& a) {
    const int n = a.size();
    const int dd = a.d();
    if (n > kMaxAlphabet) throw std::invalid_argument("too many states for dual alphabet");
    std::vector<std::string> names(dd);
    std::vector<std::vector<int>> tau(dd, std::vector<int>(n));
    std::vector<Perm> rho;
    for (int x = 0; x < dd; ++x) {
        names[x] = std::string(1, static_cast<char>('A' + x));
        Perm p(n);
        for (int q = 0; q < n; ++q) {
            p.set(q, a.tau(q, x));           // dual output: q -> tau(q, x)
            tau[x][q] = a.rho(q)(x);         // dual transition: rho(q, x)
        }
        rho.push_back(p);
    }
    return MealyAutomaton(std::move(names), n, std::move(tau), std::move(rho));
}

}  // namespace

DualResult dual_automaton(const MealyAutomaton& a) {
    DualResult r;
    r.dual = dual_core(a);
    r.dual_invertible = r.dual.is_invertible();
    r.bireversible = a.is_invertible() && r.dual_invertible &&
                     dual_core(inverse_automaton(a)).is_invertible();
    return r;
}

namespace {

// bisimulation classes via refinement from the output-row partition
std::vector<int> state_classes(const MealyAutomaton& a) {
    const int n = a.size();
    const int dd = a.d();
    std::vector<int> cls(n), next(n);
    {
        std::map<std::vector<uint8_t>, int> sig;
        for (int q = 0; q < n; ++q) {
            std::vector<uint8_t> row(dd);
            for (int x = 0; x < dd; ++x) row[x] = static_cast<uint8_t>(a.rho(q)(x));
            auto it = sig.emplace(row, static_cast<int>(sig.size()));
            cls[q] = it.first->second;
        }
    }
    for (;;) {
        std::map<std::vector<int>, int> sig;
        for (int q = 0; q < n; ++q) {
            std::vector<int> key;
            key.reserve(dd + 1);
            key.push_back(cls[q]);
            for (int x = 0; x < dd; ++x) key.push_back(cls[a.tau(q, x)]);
            auto it = sig.emplace(std::move(key), static_cast<int>(sig.size()));
            next[q] = it.first->second;
        }
        if (next == cls) break;
        cls = next;
    }
    return cls;
}

}  // namespace

MealyAutomaton minimize(const MealyAutomaton& a) {
    std::vector<int> cls = state_classes(a);
    const int n = a.size();
    const int dd = a.d();
    std::vector<int> rep;
    std::vector<int> cls_of;
    {
        std::vector<int> seen(n, -1);
        for (int q = 0; q < n; ++q) {
            if (seen[cls[q]] == -1) {
                seen[cls[q]] = static_cast<int>(rep.size());
                rep.push_back(q);
            }
        }
        cls_of.resize(n);
        for (int q = 0; q < n; ++q) cls_of[q] = seen[cls[q]];
    }
    const int m = static_cast<int>(rep.size());
    std::vector<std::string> names(m);
    std::vector<std::vector<int>> tau(m, std::vector<int>(dd));
    std::vector<Perm> rho;
    for (int i = 0; i < m; ++i) {
        int q = rep[i];
        names[i] = a.name(q);
        for (int x = 0; x < dd; ++x) tau[i][x] = cls_of[a.tau(q, x)];
        rho.push_back(a.rho(q));
    }
    return MealyAutomaton(std::move(names), dd, std::move(tau), std::move(rho));
}

int minimized_state_count(const MealyAutomaton& a) {
    std::vector<int> cls = state_classes(a);
    return static_cast<int>(*std::max_element(cls.begin(), cls.end())) + 1;
}

// ---------------------------------------------------------------------------
// canonical encodings and symmetry

namespace {

std::string encode_labeled(const MealyAutomaton& a) {
    std::string out;
    out += static_cast<char>(a.size());
    out += static_cast<char>(a.d());
    for (int q = 0; q < a.size(); ++q) {
        for (int x = 0; x < a.d(); ++x) out += static_cast<char>(a.rho(q)(x));
        for (int x = 0; x < a.d(); ++x) out += static_cast<char>(a.tau(q, x));
    }
    return out;
}

void all_state_perms(int n, std::vector<std::vector<int>>& out) {
    std::vector<int> pi(n);
    std::iota(pi.begin(), pi.end(), 0);
    do {
        out.push_back(pi);
    } while (std::next_permutation(pi.begin(), pi.end()));
}

}  // namespace

MealyAutomaton apply_state_perm(const MealyAutomaton& a, const std::vector<int>& pi) {
    // new state i = old state pi[i]
    const int n = a.size();
    const int dd = a.d();
    std::vector<int> inv(n);
    for (int i = 0; i < n; ++i) inv[pi[i]] = i;
    std::vector<std::string> names(n);
    std::vector<std::vector<int>> tau(n, std::vector<int>(dd));
    std::vector<Perm> rho;
    for (int i = 0; i < n; ++i) {
        names[i] = a.name(pi[i]);
        for (int x = 0; x < dd; ++x) tau[i][x] = inv[a.tau(pi[i], x)];
        rho.push_back(a.rho(pi[i]));
    }
    return MealyAutomaton(std::move(names), dd, std::move(tau), std::move(rho));
}

MealyAutomaton apply_letter_perm(const MealyAutomaton& a, const Perm& lambda) {
    const int n = a.size();
    const int dd = a.d();
    Perm il = lambda.inverse();
    std::vector<std::vector<int>> tau(n, std::vector<int>(dd));
    std::vector<Perm> rho;
    for (int q = 0; q < n; ++q) {
        Perm p(dd);
        for (int x = 0; x < dd; ++x) {
            tau[q][x] = a.tau(q, lambda(x));
            p.set(x, il(a.rho(q)(lambda(x))));
        }
        rho.push_back(p);
    }
    return MealyAutomaton(a.names(), dd, std::move(tau), std::move(rho));
}

std::string canonical_form_unpointed(const MealyAutomaton& a) {
    std::vector<std::vector<int>> perms;
    all_state_perms(a.size(), perms);
    std::string best;
    for (const auto& pi : perms) {
        std::string k = encode_labeled(apply_state_perm(a, pi));
        if (best.empty() || k < best) best = k;
    }
    return best;
}

std::string symmetry_key(const MealyAutomaton& a) {
    std::vector<std::vector<int>> perms;
    all_state_perms(a.size(), perms);
    std::vector<Perm> letter_perms;
    {
        // all permutations of the alphabet
        std::vector<int> lp(a.d());
        std::iota(lp.begin(), lp.end(), 0);
        do {
            Perm p(a.d());
            for (int x = 0; x < a.d(); ++x) p.set(x, lp[x]);
            letter_perms.push_back(p);
        } while (std::next_permutation(lp.begin(), lp.end()));
    }
    std::string best;
    for (int invf = 0; invf < 2; ++invf) {
        if (invf && !a.is_invertible()) continue;
        MealyAutomaton b = invf ? inverse_automaton(a) : a;
        for (const Perm& lp : letter_perms) {
            MealyAutomaton c = lp.is_identity() ? b : apply_letter_perm(b, lp);
            for (const auto& pi : perms) {
                std::string k = encode_labeled(apply_state_perm(c, pi));
                if (best.empty() || k < best) best = k;
            }
        }
    }
    return best;
}

std::string minimal_form_key(const MealyAutomaton& a) { return symmetry_key(minimize(a)); }

bool is_trivial_automaton_key(const std::string& key) {
    // one state, identity output row, self loops
    if (key.size() < 2 || key[0] != 1) return false;
    int dd = key[1];
    for (int x = 0; x < dd; ++x) {
        if (key[2 + x] != static_cast<char>(x)) return false;   // identity perm
        if (key[2 + dd + x] != 0) return false;                 // self loops
    }
    return true;
}

// ---------------------------------------------------------------------------
// enumeration

MealyAutomaton automaton_from_index(int index) {
    if (index < 0 || index >= kEnumerationCount) throw std::out_of_range("automaton index");
    int r = index / 729;   // rho bits, state-major
    int t = index % 729;
    std::vector<std::string> names = {"a", "b", "c"};
    std::vector<std::vector<int>> tau(3, std::vector<int>(2));
    std::vector<Perm> rho;
    for (int q = 0; q < 3; ++q) {
        bool active = ((r >> q) & 1) != 0;
        rho.push_back(active ? Perm::transposition(2, 0, 1) : Perm(2));
    }
    for (int q = 0; q < 3; ++q) {
        for (int x = 0; x < 2; ++x) {
            tau[q][x] = t % 3;
            t /= 3;
        }
    }
    return MealyAutomaton(std::move(names), 2, std::move(tau), std::move(rho));
}

int index_of_automaton(const MealyAutomaton& a) {
    if (a.size() != 3 || a.d() != 2) throw std::invalid_argument("index needs 3 states, d=2");
    int r = 0;
    for (int q = 0; q < 3; ++q)
        if (!a.rho(q).is_identity()) r |= 1 << q;
    int t = 0;
    for (int q = 2; q >= 0; --q)
        for (int x = 1; x >= 0; --x) t = t * 3 + a.tau(q, x);
    return r * 729 + t;
}

// ---------------------------------------------------------------------------
// DOT

std::string moore_dot(const MealyAutomaton& a) {
    std::string out = "digraph moore {\n";
    for (int q = 0; q < a.size(); ++q) {
        out += "  q" + std::to_string(q) + " [label=\"" + a.name(q) + "|" +
               a.rho(q).to_string() + "\"];\n";
    }
    for (int q = 0; q < a.size(); ++q)
        for (int x = 0; x < a.d(); ++x)
            out += "  q" + std::to_string(q) + " -> q" + std::to_string(a.tau(q, x)) +
                   " [label=\"" + std::to_string(x) + "\"];\n";
    out += "}\n";
    return out;
}

// ---------------------------------------------------------------------------
// registry

namespace {

// §5/§6 recursions, verbatim modulo the grammar's `s` for sigma.
const char* kBuiltinPresets =
    "741\ta = s (c, a);b = (b, a);c = (a, a)\n"
    "752\ta = s (b, b);b = (c, a);c = (a, a)\n"
    "775\ta = s (a, a);b = (c, b);c = (a, a)\n"
    "783\ta = s (c, c);b = (c, b);c = (a, a)\n"
    "793\ta = s (a, a);b = (b, c);c = (a, a)\n"
    "802\ta = s (a, a);b = (c, c);c = (a, a)\n"
    "843\ta = s (c, b);b = (a, b);c = (b, a)\n"
    "846\ta = s (c, c);b = (a, b);c = (b, a)\n"
    "849\ta = s (c, a);b = (b, b);c = (b, a)\n"
    "875\ta = s (b, a);b = (b, c);c = (b, a)\n"
    "891\ta = s (c, c);b = (c, c);c = (b, a)\n"
    "933\ta = s (b, 1);b = (b, a);1 = (1, 1)\n"
    "2193\ta = s (c, b);b = s (a, a);c = (a, a)\n"
    "2280\ta = s (c, a);b = s (b, a);c = (b, a)\n"
    "2294\ta = s (b, c);b = s (c, a);c = (b, a)\n"
    "2396\ta = s (b, a);b = s (c, b);c = (c, a)\n"
    "2398\ta = s (a, b);b = s (c, b);c = (c, a)\n"
    "2852\ta = s (b, c);b = s (b, a);c = (c, c)\n";

}  // namespace

const PresetRegistry& PresetRegistry::builtin() {
    static PresetRegistry reg = from_text(kBuiltinPresets);
    return reg;
}

PresetRegistry PresetRegistry::from_text(const std::string& text) {
    PresetRegistry reg;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) throw std::runtime_error("registry: missing tab");
        int idx = std::stoi(line.substr(0, tab));
        std::string rec = line.substr(tab + 1);
        std::replace(rec.begin(), rec.end(), ';', '\n');
        reg.entries_[idx] = rec;
    }
    // every entry must parse to an invertible automaton
    for (const auto& [idx, rec] : reg.entries_) {
        MealyAutomaton a = parse_recursion(rec);
        if (!a.is_invertible())
            throw std::runtime_error("registry entry " + std::to_string(idx) + " not invertible");
    }
    return reg;
}

PresetRegistry PresetRegistry::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open registry file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_text(ss.str());
}

std::string PresetRegistry::to_text() const {
    std::string out;
    for (const auto& [idx, rec] : entries_) {
        std::string r = rec;
        std::replace(r.begin(), r.end(), '\n', ';');
        out += std::to_string(idx) + "\t" + r + "\n";
    }
    return out;
}

const std::string& PresetRegistry::recursion_text(int index) const {
    auto it = entries_.find(index);
    if (it == entries_.end()) throw std::out_of_range("no preset " + std::to_string(index));
    return it->second;
}

MealyAutomaton PresetRegistry::automaton(int index) const {
    return parse_recursion(recursion_text(index));
}

std::vector<int> PresetRegistry::indices() const {
    std::vector<int> out;
    out.reserve(entries_.size());
    for (const auto& [idx, _] : entries_) out.push_back(idx);
    return out;
}

}  // namespace autg
