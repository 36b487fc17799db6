// Small permutations on the alphabet {0, .., d-1}.
#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace autg {

inline constexpr int kMaxAlphabet = 8;

class Perm {
public:
    Perm() : d_(2) { map_ = {0, 1, 2, 3, 4, 5, 6, 7}; }

    explicit Perm(int d) : d_(static_cast<uint8_t>(d)) {
        if (d < 1 || d > kMaxAlphabet) throw std::invalid_argument("alphabet size out of range");
        for (int i = 0; i < kMaxAlphabet; ++i) map_[i] = static_cast<uint8_t>(i);
    }

    static Perm transposition(int d, int i, int j) {
        Perm p(d);
        p.map_[i] = static_cast<uint8_t>(j);
        p.map_[j] = static_cast<uint8_t>(i);
        return p;
    }

    int d() const { return d_; }
    int operator()(int x) const { return map_[x]; }

    void set(int x, int y) { map_[x] = static_cast<uint8_t>(y); }

    bool is_identity() const {
        for (int i = 0; i < d_; ++i)
            if (map_[i] != i) return false;
        return true;
    }

    bool is_bijection() const {
        uint32_t seen = 0;
        for (int i = 0; i < d_; ++i) {
            if (map_[i] >= d_) return false;
            seen |= 1u << map_[i];
        }
        return seen == (1u << d_) - 1;
    }

    Perm inverse() const {
        Perm p(d_);
        for (int i = 0; i < d_; ++i) p.map_[map_[i]] = static_cast<uint8_t>(i);
        return p;
    }

    // composition: (*this after other), i.e. (f*g)(x) = f(g(x))
    Perm operator*(const Perm& g) const {
        Perm p(d_);
        for (int i = 0; i < d_; ++i) p.map_[i] = map_[g.map_[i]];
        return p;
    }

    bool operator==(const Perm& o) const {
        if (d_ != o.d_) return false;
        for (int i = 0; i < d_; ++i)
            if (map_[i] != o.map_[i]) return false;
        return true;
    }
    bool operator!=(const Perm& o) const { return !(*this == o); }

    // cycle notation over letters; "()" for the identity, "s" for the d=2 transposition
    std::string to_string() const;

    uint8_t raw(int i) const { return map_[i]; }

private:
    uint8_t d_;
    std::array<uint8_t, kMaxAlphabet> map_;
};

inline std::string Perm::to_string() const {
    if (is_identity()) return "1";
    if (d_ == 2) return "s";
    std::string out;
    std::array<bool, kMaxAlphabet> done{};
    for (int i = 0; i < d_; ++i) {
        if (done[i] || map_[i] == i) continue;
        out += '(';
        int j = i;
        bool first = true;
        while (!done[j]) {
            done[j] = true;
            if (!first) out += ' ';
            out += static_cast<char>('0' + j);
            first = false;
            j = map_[j];
        }
        out += ')';
    }
    return out;
}

}  // namespace autg
