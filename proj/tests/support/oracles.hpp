// Independent cross-checks used by the test suite.  Everything here is
// deliberately naive: dense matrices, textbook algorithms, its own face
// enumeration.  None of it shares code with the library under test, so a
// matching answer from both sides is meaningful evidence.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Big = boost::multiprecision::cpp_int;
using Dense = std::vector<std::vector<Big>>;

// Diagonal invariant factors of an integer matrix, textbook elimination with
// a globally minimal pivot re-chosen every sweep to keep entries tame.
inline std::vector<Big> dense_snf(Dense m) {
    std::size_t rows = m.size();
    std::size_t cols = rows ? m[0].size() : 0;
    std::vector<Big> diag;
    std::size_t top = 0;
    while (top < rows && top < cols) {
        bool clean = false;
        while (!clean) {
            // locate smallest nonzero |entry| in the remaining block
            std::size_t pr = top, pc = top;
            Big best = 0;
            for (std::size_t r = top; r < rows; ++r)
                for (std::size_t c = top; c < cols; ++c)
                    if (m[r][c] != 0 && (best == 0 || abs(m[r][c]) < best)) {
                        best = abs(m[r][c]);
                        pr = r;
                        pc = c;
                    }
            if (best == 0) break;
            std::swap(m[top], m[pr]);
            for (std::size_t r = top; r < rows; ++r) std::swap(m[r][top], m[r][pc]);
            clean = true;
            for (std::size_t r = top + 1; r < rows; ++r) {
                if (m[r][top] == 0) continue;
                Big q = m[r][top] / m[top][top];
                for (std::size_t c = top; c < cols; ++c) m[r][c] -= q * m[top][c];
                if (m[r][top] != 0) clean = false;  // smaller remainder survives
            }
            for (std::size_t c = top + 1; c < cols; ++c) {
                if (m[top][c] == 0) continue;
                Big q = m[top][c] / m[top][top];
                for (std::size_t r = top; r < rows; ++r) m[r][c] -= q * m[r][top];
                if (m[top][c] != 0) clean = false;
            }
        }
        if (m[top][top] == 0) break;
        diag.push_back(abs(m[top][top]));
        ++top;
    }
    // enforce divisibility
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < diag.size(); ++i)
            for (std::size_t j = i + 1; j < diag.size(); ++j)
                if (diag[j] % diag[i] != 0) {
                    Big g = gcd(diag[i], diag[j]);
                    Big l = diag[i] / g * diag[j];
                    diag[i] = g;
                    diag[j] = l;
                    changed = true;
                }
    }
    return diag;
}

// Reduced homology of the downward closure of the given maximal simplices,
// computed entirely from scratch: own closure, own bases, own dense SNF.
// Result: groups[k] = {free rank, torsion factors > 1} for 0 <= k <= dim.
struct Group {
    long rank = 0;
    std::vector<long> torsion;
    bool operator==(const Group&) const = default;
};

inline std::vector<Group> homology(const std::vector<std::vector<int>>& maximal) {
    std::set<std::vector<int>> faces;
    for (auto s : maximal) {
        std::sort(s.begin(), s.end());
        std::size_t n = s.size();
        for (std::size_t mask = 1; mask < (1u << n); ++mask) {
            std::vector<int> f;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (1u << i)) f.push_back(s[i]);
            faces.insert(f);
        }
    }
    if (faces.empty()) return {};
    int dim = 0;
    for (const auto& f : faces) dim = std::max<int>(dim, static_cast<int>(f.size()) - 1);

    std::vector<std::vector<std::vector<int>>> by_dim(static_cast<std::size_t>(dim) + 1);
    for (const auto& f : faces) by_dim[f.size() - 1].push_back(f);
    std::vector<std::map<std::vector<int>, std::size_t>> index(by_dim.size());
    for (std::size_t k = 0; k < by_dim.size(); ++k)
        for (std::size_t i = 0; i < by_dim[k].size(); ++i) index[k][by_dim[k][i]] = i;

    // boundary in degree k maps k-chains to (k-1)-chains; degree 0 boundary is
    // the augmentation to a single point
    auto boundary = [&](std::size_t k) -> Dense {
        if (k == 0) return Dense(1, std::vector<Big>(by_dim[0].size(), 1));
        Dense d(by_dim[k - 1].size(), std::vector<Big>(by_dim[k].size(), 0));
        for (std::size_t j = 0; j < by_dim[k].size(); ++j) {
            const auto& s = by_dim[k][j];
            for (std::size_t i = 0; i < s.size(); ++i) {
                std::vector<int> f = s;
                f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
                d[index[k - 1][f]][j] += (i % 2 == 0) ? 1 : -1;
            }
        }
        return d;
    };

    std::vector<std::vector<Big>> factors(by_dim.size() + 1);
    for (std::size_t k = 0; k < by_dim.size(); ++k) factors[k] = dense_snf(boundary(k));

    std::vector<Group> out;
    for (std::size_t k = 0; k < by_dim.size(); ++k) {
        Group g;
        std::size_t rk = 0, rk1 = 0;
        for (const Big& f : factors[k])
            if (f != 0) ++rk;
        if (k + 1 < by_dim.size())
            for (const Big& f : factors[k + 1])
                if (f != 0) ++rk1;
        g.rank = static_cast<long>(by_dim[k].size()) - static_cast<long>(rk) -
                 static_cast<long>(rk1);
        if (k + 1 < by_dim.size())
            for (const Big& f : factors[k + 1])
                if (f > 1) g.torsion.push_back(static_cast<long>(f));
        out.push_back(g);
    }
    return out;
}

// Standard complexes, listed by maximal simplices.

inline std::vector<std::vector<int>> simplex_boundary(int n) {
    // all n-subsets of {0..n}
    std::vector<std::vector<int>> out;
    for (int omit = 0; omit <= n; ++omit) {
        std::vector<int> s;
        for (int v = 0; v <= n; ++v)
            if (v != omit) s.push_back(v);
        out.push_back(s);
    }
    return out;
}

inline std::vector<std::vector<int>> projective_plane() {
    // minimal 6-vertex triangulation (hemi-icosahedron)
    return {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 5, 1},
            {1, 2, 4}, {2, 3, 5}, {3, 4, 1}, {4, 5, 2}, {5, 1, 3}};
}

inline std::vector<std::vector<int>> complete_bipartite_33() {
    std::vector<std::vector<int>> out;
    for (int a = 0; a < 3; ++a)
        for (int b = 3; b < 6; ++b) out.push_back({a, b});
    return out;
}

inline std::vector<std::vector<int>> torus7() {
    // 7-vertex (Csaszar) triangulation of the torus
    return {{0, 1, 3}, {1, 3, 4}, {1, 2, 4}, {2, 4, 5}, {2, 3, 5}, {3, 5, 6}, {3, 4, 6},
            {4, 6, 0}, {4, 5, 0}, {5, 0, 1}, {5, 6, 1}, {6, 1, 2}, {6, 0, 2}, {0, 2, 3}};
}

}  // namespace oracle
