// Deterministic Schreier-Sims for subgroups of Aut(X^n) acting on level
// words. Groups here are 2-groups, so every orbit length is a power of two
// and orders are carried as exact exponents.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace autg {

using LevelPerm = std::vector<uint32_t>;

LevelPerm perm_identity(uint32_t n);
LevelPerm perm_compose(const LevelPerm& f, const LevelPerm& g);  // f after g
LevelPerm perm_inverse(const LevelPerm& g);

// Base and strong generating set with full transversals.
class StabilizerChain {
public:
    explicit StabilizerChain(uint32_t npoints) : n_(npoints) {}

    void extend(const std::vector<LevelPerm>& generators);

    // exponent e with |G| = 2^e; throws if some orbit is not a 2-power
    int log2_order() const;
    bool contains(const LevelPerm& g) const;

    std::vector<uint32_t> base() const;
    std::vector<LevelPerm> strong_generators() const;

private:
    struct Level {
        uint32_t base_point = 0;
        std::vector<LevelPerm> gens;
        // orbit transversal: point -> perm mapping base_point to it (empty = outside)
        std::vector<LevelPerm> transversal;
        std::vector<uint32_t> orbit;
    };

    void build_orbit(size_t i);
    // sifts g through levels [from..); returns stuck level (== size when id)
    std::pair<LevelPerm, size_t> strip(LevelPerm g, size_t from) const;
    void complete_from(size_t level);

    uint32_t n_;
    std::vector<Level> levels_;
};

// Exact power of two as decimal text (for report output).
std::string pow2_decimal(int exponent);

}  // namespace autg
