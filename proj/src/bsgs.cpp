#include "autg/bsgs.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace autg {

LevelPerm perm_identity(uint32_t n) {
    LevelPerm p(n);
    std::iota(p.begin(), p.end(), 0u);
    return p;
}

LevelPerm perm_compose(const LevelPerm& f, const LevelPerm& g) {
    LevelPerm out(f.size());
    for (size_t i = 0; i < f.size(); ++i) out[i] = f[g[i]];
    return out;
}

LevelPerm perm_inverse(const LevelPerm& g) {
    LevelPerm out(g.size());
    for (size_t i = 0; i < g.size(); ++i) out[g[i]] = static_cast<uint32_t>(i);
    return out;
}

namespace {

bool is_identity(const LevelPerm& g) {
    for (size_t i = 0; i < g.size(); ++i)
        if (g[i] != i) return false;
    return true;
}

uint32_t first_moved(const LevelPerm& g) {
    for (size_t i = 0; i < g.size(); ++i)
        if (g[i] != i) return static_cast<uint32_t>(i);
    throw std::logic_error("identity has no moved point");
}

}  // namespace

void StabilizerChain::build_orbit(size_t i) {
    Level& lev = levels_[i];
    lev.transversal.assign(n_, {});
    lev.orbit.clear();
    lev.transversal[lev.base_point] = perm_identity(n_);
    lev.orbit.push_back(lev.base_point);
    for (size_t qi = 0; qi < lev.orbit.size(); ++qi) {
        uint32_t p = lev.orbit[qi];
        for (const LevelPerm& g : lev.gens) {
            uint32_t q = g[p];
            if (lev.transversal[q].empty()) {
                lev.transversal[q] = perm_compose(g, lev.transversal[p]);
                lev.orbit.push_back(q);
            }
        }
    }
}

std::pair<LevelPerm, size_t> StabilizerChain::strip(LevelPerm g, size_t from) const {
    for (size_t i = from; i < levels_.size(); ++i) {
        uint32_t p = g[levels_[i].base_point];
        if (levels_[i].transversal[p].empty()) return {std::move(g), i};
        g = perm_compose(perm_inverse(levels_[i].transversal[p]), g);
    }
    return {std::move(g), levels_.size()};
}

void StabilizerChain::complete_from(size_t start) {
    // Holt-style completeness loop: ensure every Schreier generator at level i
    // sifts to the identity through the deeper levels.
    size_t i = start;
    for (;;) {
        bool descended = false;
        // index-based access: a descent may grow levels_ and invalidate refs
        for (size_t oi = 0; !descended && oi < levels_[i].orbit.size(); ++oi) {
            uint32_t p = levels_[i].orbit[oi];
            for (size_t gi = 0; !descended && gi < levels_[i].gens.size(); ++gi) {
                LevelPerm sg =
                    perm_compose(perm_inverse(levels_[i].transversal[levels_[i].gens[gi][p]]),
                                 perm_compose(levels_[i].gens[gi], levels_[i].transversal[p]));
                if (is_identity(sg)) continue;
                auto [h, j] = strip(std::move(sg), i + 1);
                if (is_identity(h)) continue;
                if (j == levels_.size()) {
                    Level nl;
                    nl.base_point = first_moved(h);
                    levels_.push_back(std::move(nl));
                }
                for (size_t k = i + 1; k <= j; ++k) {
                    levels_[k].gens.push_back(h);
                    build_orbit(k);
                }
                i = j;
                descended = true;
            }
        }
        if (descended) continue;
        if (i == start) break;
        --i;
    }
}

void StabilizerChain::extend(const std::vector<LevelPerm>& generators) {
    std::vector<LevelPerm> fresh;
    for (const LevelPerm& g : generators) {
        if (g.size() != n_) throw std::invalid_argument("degree mismatch");
        if (!is_identity(g)) fresh.push_back(g);
    }
    if (fresh.empty()) return;
    if (levels_.empty()) {
        Level l0;
        l0.base_point = first_moved(fresh.front());
        levels_.push_back(std::move(l0));
        build_orbit(0);
    }
    for (LevelPerm& g : fresh) {
        auto [h, j] = strip(std::move(g), 0);
        if (is_identity(h)) continue;
        if (j == levels_.size()) {
            Level nl;
            nl.base_point = first_moved(h);
            levels_.push_back(std::move(nl));
        }
        for (size_t k = 0; k <= j; ++k) {
            levels_[k].gens.push_back(h);
            build_orbit(k);
        }
        complete_from(0);
    }
}

int StabilizerChain::log2_order() const {
    int e = 0;
    for (const Level& lev : levels_) {
        size_t L = lev.orbit.size();
        if ((L & (L - 1)) != 0)
            throw std::logic_error("orbit length is not a power of two");
        while (L > 1) {
            L >>= 1;
            ++e;
        }
    }
    return e;
}

bool StabilizerChain::contains(const LevelPerm& g) const {
    if (is_identity(g)) return true;
    if (levels_.empty()) return false;
    auto [h, j] = strip(g, 0);
    return is_identity(h);
}

std::vector<uint32_t> StabilizerChain::base() const {
    std::vector<uint32_t> out;
    out.reserve(levels_.size());
    for (const Level& lev : levels_) out.push_back(lev.base_point);
    return out;
}

std::vector<LevelPerm> StabilizerChain::strong_generators() const {
    std::vector<LevelPerm> out;
    for (const Level& lev : levels_)
        for (const LevelPerm& g : lev.gens) out.push_back(g);
    return out;
}

std::string pow2_decimal(int exponent) {
    std::vector<uint8_t> digits = {1};  // little-endian decimal
    for (int i = 0; i < exponent; ++i) {
        int carry = 0;
        for (auto& dgt : digits) {
            int v = dgt * 2 + carry;
            dgt = static_cast<uint8_t>(v % 10);
            carry = v / 10;
        }
        if (carry) digits.push_back(static_cast<uint8_t>(carry));
    }
    std::string out;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it)
        out += static_cast<char>('0' + *it);
    return out;
}

}  // namespace autg
