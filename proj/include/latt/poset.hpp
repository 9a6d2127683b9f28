#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "latt/errors.hpp"

namespace latt {

/// Per-element height ell(x) = length of [0,x] as longest cover path, plus the
/// total length ell(P). Not assumed graded.
struct HeightProfile {
    std::vector<int> height;
    int length = 0;
};

/// Finite poset given by its cover relation. Validated on construction:
/// indices in range, no duplicate pairs, acyclic, and the pairs form their own
/// transitive reduction (no redundant edges).
class Poset {
public:
    Poset() = default;

    static Poset from_covers(int n, std::vector<std::pair<int, int>> covers) {
        if (n <= 0) throw InvalidCovers("element count must be positive");
        std::sort(covers.begin(), covers.end());
        for (std::size_t i = 0; i < covers.size(); ++i) {
            auto [a, b] = covers[i];
            if (a < 0 || a >= n || b < 0 || b >= n || a == b)
                throw InvalidCovers("cover pair (" + std::to_string(a) + "," +
                                    std::to_string(b) + ") out of range");
            if (i > 0 && covers[i] == covers[i - 1])
                throw InvalidCovers("duplicate cover pair (" + std::to_string(a) + "," +
                                    std::to_string(b) + ")");
        }

        Poset p;
        p.n_ = n;
        p.covers_ = std::move(covers);
        p.up_.assign(n, {});
        p.down_.assign(n, {});
        for (auto [a, b] : p.covers_) {
            p.up_[a].push_back(b);
            p.down_[b].push_back(a);
        }

        // Reflexive-transitive closure; cycle check via topological order.
        std::vector<int> order = p.topo_order();
        p.leq_.assign(n, std::vector<char>(n, 0));
        for (int i = n - 1; i >= 0; --i) {
            int v = order[i];
            p.leq_[v][v] = 1;
            for (int w : p.up_[v])
                for (int z = 0; z < n; ++z)
                    if (p.leq_[w][z]) p.leq_[v][z] = 1;
        }

        // An edge (a,b) is redundant when a < c < b for some c.
        for (auto [a, b] : p.covers_)
            for (int c = 0; c < n; ++c)
                if (c != a && c != b && p.leq_[a][c] && p.leq_[c][b])
                    throw RedundantEdge(a, b);

        p.compute_heights();
        return p;
    }

    int size() const { return n_; }
    const std::vector<std::pair<int, int>>& covers() const { return covers_; }
    const std::vector<int>& upper_covers(int x) const { return up_[x]; }
    const std::vector<int>& lower_covers(int x) const { return down_[x]; }

    bool leq(int a, int b) const { return leq_[a][b]; }
    bool less(int a, int b) const { return a != b && leq_[a][b]; }
    bool parallel(int a, int b) const { return !leq_[a][b] && !leq_[b][a]; }
    bool covered_by(int a, int b) const {
        return std::find(up_[a].begin(), up_[a].end(), b) != up_[a].end();
    }

    std::vector<int> minimal_elements() const {
        std::vector<int> out;
        for (int v = 0; v < n_; ++v)
            if (down_[v].empty()) out.push_back(v);
        return out;
    }
    std::vector<int> maximal_elements() const {
        std::vector<int> out;
        for (int v = 0; v < n_; ++v)
            if (up_[v].empty()) out.push_back(v);
        return out;
    }

    bool bounded() const {
        return minimal_elements().size() == 1 && maximal_elements().size() == 1;
    }
    int bottom() const {
        auto mins = minimal_elements();
        if (mins.size() != 1) throw NotBounded("poset has " + std::to_string(mins.size()) + " minimal elements");
        return mins[0];
    }
    int top() const {
        auto maxs = maximal_elements();
        if (maxs.size() != 1) throw NotBounded("poset has " + std::to_string(maxs.size()) + " maximal elements");
        return maxs[0];
    }

    /// Longest-path height from the minimal elements.
    const std::vector<int>& heights() const { return height_; }
    int height(int x) const { return height_[x]; }
    int length() const { return length_; }

    HeightProfile height_profile() const { return {height_, length_}; }

    /// Atoms: elements covering the unique bottom.
    std::vector<int> atoms() const {
        std::vector<int> out = up_[bottom()];
        std::sort(out.begin(), out.end());
        return out;
    }

    /// A(y): atoms of the interval [0,y].
    std::vector<int> atoms_below(int y) const {
        std::vector<int> out;
        for (int a : up_[bottom()])
            if (leq_[a][y]) out.push_back(a);
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Definition of an atomistic poset: x < y forces A(x) strictly inside A(y),
    /// and incomparable elements have incomparable atom sets. Returns a violating
    /// pair on failure.
    std::optional<std::pair<int, int>> atomistic_violation() const {
        int b = bottom();
        std::vector<std::vector<char>> below(n_, std::vector<char>(n_, 0));
        for (int a : up_[b])
            for (int y = 0; y < n_; ++y)
                if (leq_[a][y]) below[y][a] = 1;
        auto atom_le = [&](int x, int y) {
            for (int a : up_[b])
                if (below[x][a] && !below[y][a]) return false;
            return true;
        };
        for (int x = 0; x < n_; ++x)
            for (int y = 0; y < n_; ++y) {
                if (x == y) continue;
                if (less(x, y)) {
                    if (!atom_le(x, y) || atom_le(y, x)) return std::make_pair(x, y);
                } else if (x < y && parallel(x, y)) {
                    if (atom_le(x, y) || atom_le(y, x)) return std::make_pair(x, y);
                }
            }
        return std::nullopt;
    }

    bool is_atomistic() const { return !atomistic_violation().has_value(); }

    /// All maximal chains from bottom to x have the same length? (Longest and
    /// shortest maximal-chain lengths agree below every element.)
    bool graded_below(int x) const {
        std::vector<int> shortest(n_, -1);
        shortest[bottom()] = 0;
        // Down-covers are already acyclic; process by height order.
        std::vector<int> by_height(n_);
        for (int v = 0; v < n_; ++v) by_height[v] = v;
        std::sort(by_height.begin(), by_height.end(),
                  [&](int a, int b) { return height_[a] < height_[b]; });
        for (int v : by_height) {
            if (down_[v].empty()) continue;
            int s = n_ + 1;
            for (int w : down_[v]) s = std::min(s, shortest[w]);
            shortest[v] = s + 1;
        }
        for (int v = 0; v < n_; ++v)
            if (leq_[v][x] && shortest[v] != height_[v]) return false;
        return true;
    }

private:
    std::vector<int> topo_order() const {
        std::vector<int> indeg(n_, 0), order;
        for (auto& [a, b] : covers_) { (void)a; indeg[b]++; }
        std::vector<int> stack;
        for (int v = 0; v < n_; ++v)
            if (indeg[v] == 0) stack.push_back(v);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            order.push_back(v);
            for (int w : up_[v])
                if (--indeg[w] == 0) stack.push_back(w);
        }
        if ((int)order.size() != n_) throw InvalidCovers("cover relation contains a cycle");
        return order;
    }

    void compute_heights() {
        height_.assign(n_, 0);
        std::vector<int> order = topo_order();
        for (int v : order)
            for (int w : up_[v]) height_[w] = std::max(height_[w], height_[v] + 1);
        length_ = 0;
        for (int v = 0; v < n_; ++v) length_ = std::max(length_, height_[v]);
    }

    int n_ = 0;
    std::vector<std::pair<int, int>> covers_;
    std::vector<std::vector<char>> leq_;
    std::vector<std::vector<int>> up_, down_;
    std::vector<int> height_;
    int length_ = 0;
};

} // namespace latt
