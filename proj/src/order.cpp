#include "autg/order.hpp"

#include <deque>
#include <map>
#include <set>
#include <unordered_set>

namespace autg {

// ---------------------------------------------------------------------------
// spherical transitivity via level activity parity

bool is_spherically_transitive(const Element& g) {
    if (g.d() != 2) throw std::invalid_argument("spherical transitivity: d = 2 only");
    const int n = g.size();
    // state-count parity vector per level; one linear step per level
    std::vector<uint8_t> vec(n, 0);
    vec[0] = 1;
    std::map<std::vector<uint8_t>, int> seen;
    for (;;) {
        auto [it, fresh] = seen.emplace(vec, static_cast<int>(seen.size()));
        if (!fresh) return true;  // cycled with all parities odd so far
        int parity = 0;
        for (int s = 0; s < n; ++s)
            if (vec[s] && !g.perm_at(s).is_identity()) parity ^= 1;
        if (!parity) return false;
        std::vector<uint8_t> next(n, 0);
        for (int s = 0; s < n; ++s)
            if (vec[s])
                for (int x = 0; x < 2; ++x) next[g.child(s, x)] ^= 1;
        vec = std::move(next);
    }
}

// ---------------------------------------------------------------------------
// finitary depth

std::optional<int> finitary_depth(const Element& g) {
    const int n = g.size();
    const int d = g.d();
    // the minimized automaton has at most one trivial (identity) state
    std::vector<bool> trivial(n, false);
    for (int s = 0; s < n; ++s) {
        if (!g.perm_at(s).is_identity()) continue;
        bool self = true;
        for (int x = 0; x < d; ++x) self = self && g.child(s, x) == static_cast<uint32_t>(s);
        if (self) trivial[s] = true;
    }
    // depth(s) = 0 for the trivial state; 1 + max over children otherwise;
    // a cycle through a nontrivial state means not finitary
    std::vector<int> depth(n, -1);
    std::vector<int> state(n, 0);  // 0 unvisited, 1 on stack, 2 done
    std::vector<std::pair<int, int>> stack;  // (node, next child)
    auto visit = [&](int root) -> bool {
        stack.push_back({root, 0});
        state[root] = 1;
        while (!stack.empty()) {
            auto& [s, xi] = stack.back();
            if (trivial[s]) {
                depth[s] = 0;
                state[s] = 2;
                stack.pop_back();
                continue;
            }
            if (xi == d) {
                int m = 0;
                for (int x = 0; x < d; ++x) m = std::max(m, depth[g.child(s, x)]);
                depth[s] = 1 + m;
                state[s] = 2;
                stack.pop_back();
                continue;
            }
            int c = static_cast<int>(g.child(s, xi++));
            if (state[c] == 1) return false;  // cycle through nontrivial state
            if (state[c] == 0) {
                state[c] = 1;
                stack.push_back({c, 0});
            }
        }
        return true;
    };
    if (!visit(0)) return std::nullopt;
    return depth[0];
}

// ---------------------------------------------------------------------------
// ray escape certificate

namespace {

// image ray of letter^inf from automaton state s: (head, period) over letters
std::pair<std::string, std::string> tail_image(const Element& g, int s, int letter) {
    std::map<int, size_t> seen;
    std::string out;
    int cur = s;
    for (;;) {
        auto it = seen.find(cur);
        if (it != seen.end())
            return {out.substr(0, it->second), out.substr(it->second)};
        seen.emplace(cur, out.size());
        out += static_cast<char>('0' + g.perm_at(cur)(letter));
        cur = g.child(cur, letter);
    }
}

bool all_letter(const std::string& s, char c) {
    return std::all_of(s.begin(), s.end(), [c](char x) { return x == c; });
}

}  // namespace

std::optional<Ray> ray_escape_certificate(const Element& g, int tail_letter) {
    if (g.d() != 2) return std::nullopt;
    const char tc = static_cast<char>('0' + tail_letter);
    const int other = 1 - tail_letter;
    const int n = g.size();
    // (a) every state sends letter^inf to an eventually-letter ray, so the
    //     orbit stays inside the u . letter^inf family
    for (int s = 0; s < n; ++s) {
        auto [h, p] = tail_image(g, s, tail_letter);
        if (!all_letter(p, tc)) return std::nullopt;
    }
    // (b) head monotonicity: a state may flip the head's final letter only if
    //     its section there pushes a new non-tail letter out
    for (int s = 0; s < n; ++s) {
        if (g.perm_at(s)(other) == other) continue;
        auto [h, p] = tail_image(g, g.child(s, other), tail_letter);
        if (all_letter(h, tc) && all_letter(p, tc)) return std::nullopt;
    }
    // (c) one witness ray whose head strictly grows
    auto head_len = [&](const std::string& s) {
        size_t last = 0;
        for (size_t i = 0; i < s.size(); ++i)
            if (s[i] != tc) last = i + 1;
        return last;
    };
    for (int len = 1; len <= 10; ++len) {
        for (int bits = 0; bits < (1 << len); ++bits) {
            std::string u(len, '0');
            for (int i = 0; i < len; ++i)
                if (bits & (1 << i)) u[i] = '1';
            if (u.back() != static_cast<char>('0' + other)) continue;
            int s = 0;
            std::string img;
            for (char c : u) {
                int x = c - '0';
                img += static_cast<char>('0' + g.perm_at(s)(x));
                s = g.child(s, x);
            }
            auto [h, p] = tail_image(g, s, tail_letter);
            if (head_len(img + h) > static_cast<size_t>(len)) {
                Ray r{u, std::string(1, tc)};
                r.normalize();
                return r;
            }
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// order

namespace {

// vertices fixed by g with the section's automaton state, up to depth
void fixed_vertices(const Element& g, int max_depth,
                    std::vector<std::pair<std::string, int>>* out) {
    std::vector<std::pair<int, std::string>> stack = {{0, ""}};
    while (!stack.empty()) {
        auto [s, v] = std::move(stack.back());
        stack.pop_back();
        if (static_cast<int>(v.size()) >= max_depth) continue;
        for (int x = 0; x < g.d(); ++x) {
            if (g.perm_at(s)(x) != x) continue;
            int c = static_cast<int>(g.child(s, x));
            std::string v2 = v + static_cast<char>('0' + x);
            out->push_back({v2, c});
            stack.push_back({c, v2});
        }
    }
}

std::optional<std::string> active_section_vertex(const Element& g, int max_depth) {
    std::vector<std::pair<std::string, int>> fv;
    fixed_vertices(g, max_depth, &fv);
    for (auto& [v, s] : fv)
        if (!g.perm_at(s).is_identity()) return v;
    return std::nullopt;
}

}  // namespace

std::string InfiniteCertificate::describe() const {
    std::string out;
    for (auto& [k, v] : path) out += "sec(g^" + std::to_string(k) + ", " + v + ") -> ";
    switch (kind) {
        case Kind::kSphericallyTransitive:
            out += "spherically transitive";
            break;
        case Kind::kPowerSelfSection:
            out += "self-section: h^" + std::to_string(power) + " fixes " + vertex +
                   " with section h" + (parity_root_active ? " (root active)" : "");
            if (!parity_active_section.empty())
                out += " (active section at " + parity_active_section + ")";
            break;
        case Kind::kRayEscape:
            out += "ray orbit of " + escape_ray.to_string() + " grows";
            break;
    }
    return out;
}

std::string OrderVerdict::to_string() const {
    switch (kind) {
        case Kind::kFinite:
            return "finite(" + std::to_string(order) + ")";
        case Kind::kInfinite:
            return "infinite[" + certificate->describe() + "]";
        default:
            return "unknown(" + note + ")";
    }
}

OrderVerdict order_of(const Element& g, const OrderBudget& b) {
    OrderVerdict out;
    if (g.is_identity()) {
        out.kind = OrderVerdict::Kind::kFinite;
        out.order = 1;
        return out;
    }
    // finite side: orders divide a power of two, so test repeated squares;
    // blowing past the size cap is a strong infinite signal but not a proof
    {
        Element h = g;
        long long e = 1;
        for (int j = 1; j <= b.max_pow2_log; ++j) {
            auto next = Element::try_multiply(h, h, b.element_size_cap);
            if (!next) break;
            h = std::move(*next);
            e <<= 1;
            if (h.is_identity()) {
                out.kind = OrderVerdict::Kind::kFinite;
                out.order = e;
                return out;
            }
        }
    }
    auto finish_inf = [&](InfiniteCertificate cert) {
        out.kind = OrderVerdict::Kind::kInfinite;
        out.certificate = std::move(cert);
        return out;
    };
    auto base_certificate = [&](const Element& h) -> std::optional<InfiniteCertificate> {
        if (is_spherically_transitive(h)) {
            InfiniteCertificate c;
            c.kind = InfiniteCertificate::Kind::kSphericallyTransitive;
            c.witness_element = h;
            return c;
        }
        for (int letter = 0; letter < 2; ++letter) {
            if (auto r = ray_escape_certificate(h, letter)) {
                InfiniteCertificate c;
                c.kind = InfiniteCertificate::Kind::kRayEscape;
                c.witness_element = h;
                c.escape_ray = *r;
                return c;
            }
        }
        return std::nullopt;
    };
    if (auto c = base_certificate(g)) return finish_inf(std::move(*c));

    // reduction BFS: h -> sections of h^k at fixed vertices
    struct Node {
        Element elem;
        std::vector<std::pair<int, std::string>> path;
    };
    std::unordered_set<Element, ElementHash> visited = {g};
    std::deque<Node> queue;
    queue.push_back({g, {}});
    int nodes = 0;
    while (!queue.empty() && nodes < b.max_nodes) {
        Node node = std::move(queue.front());
        queue.pop_front();
        ++nodes;
        const Element& u = node.elem;
        Element iu = u.inverse();
        Element p = Element::identity(u.d());
        for (int k = 1; k <= b.max_power; ++k) {
            auto next = Element::try_multiply(p, u, b.element_size_cap);
            if (!next) break;
            p = std::move(*next);
            if (p.is_identity()) break;
            std::vector<std::pair<std::string, int>> fv;
            fixed_vertices(p, b.max_depth, &fv);
            for (auto& [v, st] : fv) {
                Element h = p.section_at_state(st);
                if (h.is_identity()) continue;
                if (k % 2 == 0 && (h == u || h == iu)) {
                    // u^k fixes v with section u^{+-1}; finite orders are
                    // 2-powers, so gcd(order, k) = 1 forces order 1
                    InfiniteCertificate c;
                    c.kind = InfiniteCertificate::Kind::kPowerSelfSection;
                    c.witness_element = u;
                    c.power = k;
                    c.vertex = v;
                    c.path = node.path;
                    c.parity_root_active = !u.root_perm().is_identity();
                    if (!c.parity_root_active)
                        if (auto av = active_section_vertex(u, b.max_depth))
                            c.parity_active_section = *av;
                    return finish_inf(std::move(c));
                }
                if (visited.insert(h).second) {
                    auto path = node.path;
                    path.push_back({k, v});
                    if (auto c = base_certificate(h)) {
                        c->path = path;
                        return finish_inf(std::move(*c));
                    }
                    queue.push_back({std::move(h), std::move(path)});
                }
            }
        }
    }
    out.kind = OrderVerdict::Kind::kUnknown;
    out.note = "budget spent (" + std::to_string(nodes) + " reduction nodes)";
    return out;
}

bool check_infinite_certificate(const Element& g, const InfiniteCertificate& cert) {
    // replay the reduction path
    Element cur = g;
    for (auto& [k, v] : cert.path) {
        Element p = cur.power(k);
        if (!p.fixes(v)) return false;
        cur = p.section(v);
        if (cur.is_identity()) return false;
    }
    switch (cert.kind) {
        case InfiniteCertificate::Kind::kSphericallyTransitive:
            return cur == cert.witness_element && is_spherically_transitive(cur);
        case InfiniteCertificate::Kind::kRayEscape: {
            if (cur != cert.witness_element) return false;
            for (int letter = 0; letter < 2; ++letter)
                if (ray_escape_certificate(cur, letter)) return true;
            return false;
        }
        case InfiniteCertificate::Kind::kPowerSelfSection: {
            if (cur != cert.witness_element) return false;
            if (cert.power % 2 != 0 || cur.is_identity()) return false;
            Element p = cur.power(cert.power);
            if (!p.fixes(cert.vertex)) return false;
            Element h = p.section(cert.vertex);
            return h == cur || h == cur.inverse();
        }
    }
    return false;
}

}  // namespace autg
