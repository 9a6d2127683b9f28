#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace latt {

/// Subset of the atom universe; label i (1-based) lives at bit i-1.
using Mask = std::uint64_t;

constexpr int kMaxUniverse = 62;

inline Mask label_bit(int label) { return Mask{1} << (label - 1); }

inline bool has_label(Mask m, int label) { return (m >> (label - 1)) & 1; }

inline int card(Mask m) { return std::popcount(m); }

inline bool subset_of(Mask a, Mask b) { return (a & ~b) == 0; }

inline Mask full_mask(int universe) {
    return universe == 0 ? 0 : (~Mask{0} >> (64 - universe));
}

inline std::vector<int> labels_of(Mask m) {
    std::vector<int> out;
    while (m) {
        int b = std::countr_zero(m);
        out.push_back(b + 1);
        m &= m - 1;
    }
    return out;
}

inline Mask mask_of(const std::vector<int>& labels) {
    Mask m = 0;
    for (int l : labels) m |= label_bit(l);
    return m;
}

/// Orders subsets by cardinality first, then numeric value. Used everywhere a
/// family is stored or iterated, so enumeration order is reproducible.
inline bool mask_less(Mask a, Mask b) {
    int ca = card(a), cb = card(b);
    if (ca != cb) return ca < cb;
    return a < b;
}

inline std::string mask_str(Mask m) {
    std::string s = "{";
    bool first = true;
    for (int l : labels_of(m)) {
        if (!first) s += ",";
        s += std::to_string(l);
        first = false;
    }
    return s + "}";
}

} // namespace latt
