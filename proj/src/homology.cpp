#include "stablab/homology.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <json.hpp>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "stablab/errors.hpp"

namespace stablab {

void SparseIntMatrix::add(std::size_t r, std::size_t c, std::int64_t v) {
    if (r >= rows_ || c >= cols_) throw malformed_input("sparse matrix: index out of range");
    if (v == 0) return;
    auto key = std::make_pair(r, c);
    auto it = entries_.find(key);
    if (it == entries_.end()) {
        entries_.emplace(key, v);
    } else {
        it->second += v;
        if (it->second == 0) entries_.erase(it);
    }
}

std::int64_t SparseIntMatrix::at(std::size_t r, std::size_t c) const {
    auto it = entries_.find({r, c});
    return it == entries_.end() ? 0 : it->second;
}

namespace {

using Row = std::map<std::size_t, BigInt>;

struct Eliminator {
    std::vector<Row> rows;                 // active content, by row
    std::vector<std::set<std::size_t>> col_rows;  // rows with a nonzero in each col
    bool track;
    std::vector<std::vector<BigInt>> U, V;

    Eliminator(const SparseIntMatrix& m, bool with_transforms)
        : rows(m.rows()), col_rows(m.cols()), track(with_transforms) {
        for (const auto& [rc, v] : m.entries()) {
            rows[rc.first][rc.second] = v;
            col_rows[rc.second].insert(rc.first);
        }
        if (track) {
            U.assign(m.rows(), std::vector<BigInt>(m.rows(), 0));
            V.assign(m.cols(), std::vector<BigInt>(m.cols(), 0));
            for (std::size_t i = 0; i < m.rows(); ++i) U[i][i] = 1;
            for (std::size_t j = 0; j < m.cols(); ++j) V[j][j] = 1;
        }
    }

    void set_entry(std::size_t r, std::size_t c, const BigInt& v) {
        auto it = rows[r].find(c);
        if (v == 0) {
            if (it != rows[r].end()) {
                rows[r].erase(it);
                col_rows[c].erase(r);
            }
        } else {
            if (it == rows[r].end()) {
                rows[r][c] = v;
                col_rows[c].insert(r);
            } else {
                it->second = v;
            }
        }
    }

    // row r -= q * row pr
    void row_op(std::size_t r, std::size_t pr, const BigInt& q) {
        if (q == 0) return;
        for (const auto& [c, v] : Row(rows[pr])) {
            BigInt nv = (rows[r].count(c) ? rows[r][c] : BigInt(0)) - q * v;
            set_entry(r, c, nv);
        }
        if (track)
            for (std::size_t k = 0; k < U[0].size(); ++k) U[r][k] -= q * U[pr][k];
    }

    // col c -= q * col pc
    void col_op(std::size_t c, std::size_t pc, const BigInt& q) {
        if (q == 0) return;
        for (std::size_t r : std::set<std::size_t>(col_rows[pc])) {
            BigInt nv = (rows[r].count(c) ? rows[r][c] : BigInt(0)) - q * rows[r][pc];
            set_entry(r, c, nv);
        }
        if (track)
            for (std::size_t k = 0; k < V.size(); ++k) V[k][c] -= q * V[k][pc];
    }

    void negate_row(std::size_t r) {
        for (auto& [c, v] : rows[r]) v = -v;
        if (track)
            for (auto& u : U[r]) u = -u;
    }
};

}  // namespace

SmithResult smith_normal_form(const SparseIntMatrix& m, bool with_transforms) {
    Eliminator e(m, with_transforms);
    std::vector<char> row_done(m.rows(), 0), col_done(m.cols(), 0);
    std::vector<std::pair<std::size_t, std::size_t>> pivots;
    std::vector<BigInt> diag;

    while (true) {
        // smallest |entry| among the active submatrix
        std::size_t pr = 0, pc = 0;
        BigInt best = 0;
        for (std::size_t r = 0; r < e.rows.size(); ++r) {
            if (row_done[r]) continue;
            for (const auto& [c, v] : e.rows[r]) {
                if (col_done[c]) continue;
                BigInt a = abs(v);
                if (best == 0 || a < best) {
                    best = a;
                    pr = r;
                    pc = c;
                    if (best == 1) break;
                }
            }
            if (best == 1) break;
        }
        if (best == 0) break;

        // Reduce until the pivot's row and column are clear elsewhere; any
        // nonzero remainder is strictly smaller and becomes the new pivot.
        while (true) {
            bool moved = false;
            for (std::size_t r : std::set<std::size_t>(e.col_rows[pc])) {
                if (r == pr || row_done[r]) continue;
                BigInt q = e.rows[r][pc] / e.rows[pr][pc];
                e.row_op(r, pr, q);
                if (e.rows[r].count(pc)) {
                    pr = r;
                    moved = true;
                    break;
                }
            }
            if (moved) continue;
            for (const auto& [c, v] : Row(e.rows[pr])) {
                if (c == pc || col_done[c]) continue;
                BigInt q = v / e.rows[pr][pc];
                e.col_op(c, pc, q);
                if (e.rows[pr].count(c)) {
                    pc = c;
                    moved = true;
                    break;
                }
            }
            if (!moved) break;
        }
        if (e.rows[pr][pc] < 0) e.negate_row(pr);
        diag.push_back(e.rows[pr][pc]);
        pivots.emplace_back(pr, pc);
        row_done[pr] = 1;
        col_done[pc] = 1;
    }

    SmithResult out;
    out.rank = diag.size();

    if (with_transforms) {
        // Permute pivots into leading diagonal position.
        std::vector<std::size_t> row_perm, col_perm;
        for (auto [r, c] : pivots) {
            row_perm.push_back(r);
            col_perm.push_back(c);
        }
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (!std::count(row_perm.begin(), row_perm.end(), r)) row_perm.push_back(r);
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (!std::count(col_perm.begin(), col_perm.end(), c)) col_perm.push_back(c);
        std::vector<std::vector<BigInt>> pu(m.rows()), pv(m.cols(), std::vector<BigInt>(m.cols()));
        for (std::size_t i = 0; i < m.rows(); ++i) pu[i] = e.U[row_perm[i]];
        for (std::size_t j = 0; j < m.cols(); ++j)
            for (std::size_t k = 0; k < m.cols(); ++k) pv[k][j] = e.V[k][col_perm[j]];
        e.U = std::move(pu);
        e.V = std::move(pv);
    }

    // Enforce the divisibility chain d_i | d_j via 2x2 unimodular moves.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < diag.size(); ++i) {
            for (std::size_t j = i + 1; j < diag.size(); ++j) {
                if (diag[j] % diag[i] == 0) continue;
                changed = true;
                BigInt a = diag[i], b = diag[j], x, y;
                BigInt g = boost::multiprecision::gcd(a, b);
                // extended gcd
                {
                    BigInt r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
                    while (r1 != 0) {
                        BigInt q = r0 / r1;
                        std::swap(r0 -= q * r1, r1);
                        std::swap(s0 -= q * s1, s1);
                        std::swap(t0 -= q * t1, t1);
                    }
                    if (r0 < 0) {
                        r0 = -r0;
                        s0 = -s0;
                        t0 = -t0;
                    }
                    x = s0;
                    y = t0;
                    g = r0;
                }
                BigInt l = a / g * b;
                if (with_transforms) {
                    // rows i,j of U:  [x y; -b/g a/g]
                    auto &ui = e.U[i], &uj = e.U[j];
                    for (std::size_t k = 0; k < ui.size(); ++k) {
                        BigInt ni = x * ui[k] + y * uj[k];
                        BigInt nj = -(b / g) * ui[k] + (a / g) * uj[k];
                        ui[k] = ni;
                        uj[k] = nj;
                    }
                    // cols i,j of V: [1, -y*b/g; 1, 1 - y*b/g]
                    BigInt c12 = -y * (b / g), c22 = 1 - y * (b / g);
                    for (std::size_t k = 0; k < e.V.size(); ++k) {
                        BigInt ni = e.V[k][i] + e.V[k][j];
                        BigInt nj = c12 * e.V[k][i] + c22 * e.V[k][j];
                        e.V[k][i] = ni;
                        e.V[k][j] = nj;
                    }
                }
                diag[i] = g;
                diag[j] = l;
            }
        }
    }

    out.factors = std::move(diag);
    if (with_transforms) {
        out.U = std::move(e.U);
        out.V = std::move(e.V);
    }
    return out;
}

std::string FgAbelianGroup::str() const {
    if (trivial()) return "0";
    std::string s;
    if (rank > 0) s = "Z^" + std::to_string(rank);
    for (std::int64_t t : torsion) s += (s.empty() ? "Z/" : " + Z/") + std::to_string(t);
    return s;
}

namespace {

SparseIntMatrix augmentation_row(std::size_t n0) {
    SparseIntMatrix a(1, n0);
    for (std::size_t j = 0; j < n0; ++j) a.add(0, j, 1);
    return a;
}

std::int64_t narrow(const BigInt& v) {
    if (v > std::numeric_limits<std::int64_t>::max())
        throw unsupported_input("torsion factor exceeds 64-bit range");
    return static_cast<std::int64_t>(v);
}

HomologyProfile profile_from_boundaries(const std::vector<SparseIntMatrix>& d,
                                        const std::vector<std::size_t>& cells) {
    HomologyProfile p;
    if (cells.empty()) {
        p.empty_complex = true;
        return p;
    }
    std::vector<SmithResult> snf(d.size());
    for (std::size_t k = 0; k < d.size(); ++k) snf[k] = smith_normal_form(d[k]);
    for (std::size_t k = 0; k < cells.size(); ++k) {
        FgAbelianGroup g;
        std::size_t rk = snf[k].rank;
        std::size_t rk1 = (k + 1 < snf.size()) ? snf[k + 1].rank : 0;
        g.rank = static_cast<std::int64_t>(cells[k]) - static_cast<std::int64_t>(rk) -
                 static_cast<std::int64_t>(rk1);
        if (g.rank < 0) throw internal_error("negative homology rank");
        if (k + 1 < snf.size())
            for (const BigInt& f : snf[k + 1].factors)
                if (f > 1) g.torsion.push_back(narrow(f));
        p.groups.push_back(std::move(g));
    }
    return p;
}

}  // namespace

std::vector<SparseIntMatrix> boundary_matrices(const SimplicialComplex& x, bool reduced) {
    std::vector<SparseIntMatrix> out;
    if (x.empty()) return out;
    out.push_back(reduced ? augmentation_row(x.faces(0).size())
                          : SparseIntMatrix(0, x.faces(0).size()));
    for (int k = 1; k <= x.dim(); ++k) {
        SparseIntMatrix d(x.faces(k - 1).size(), x.faces(k).size());
        for (std::size_t j = 0; j < x.faces(k).size(); ++j) {
            const Simplex& s = x.faces(k)[j];
            for (std::size_t i = 0; i <= static_cast<std::size_t>(k); ++i)
                d.add(x.face_index(s.facet(i)), j, (i % 2 == 0) ? 1 : -1);
        }
        out.push_back(std::move(d));
    }
    return out;
}

std::vector<SparseIntMatrix> boundary_matrices(const SemiSimplicialComplex& x, bool reduced) {
    std::vector<SparseIntMatrix> out;
    if (x.empty()) return out;
    out.push_back(reduced ? augmentation_row(x.cells(0)) : SparseIntMatrix(0, x.cells(0)));
    for (int k = 1; k <= x.dim(); ++k) {
        SparseIntMatrix d(x.cells(k - 1), x.cells(k));
        for (std::size_t c = 0; c < x.cells(k); ++c)
            for (std::size_t i = 0; i <= static_cast<std::size_t>(k); ++i)
                d.add(x.face(k, c, i), c, (i % 2 == 0) ? 1 : -1);
        out.push_back(std::move(d));
    }
    return out;
}

const FgAbelianGroup& HomologyProfile::reduced(int k) const {
    static const FgAbelianGroup kZero;
    if (k < 0 || k >= static_cast<int>(groups.size())) return kZero;
    return groups[static_cast<std::size_t>(k)];
}

bool HomologyProfile::all_trivial() const {
    if (empty_complex) return false;
    return std::all_of(groups.begin(), groups.end(),
                       [](const FgAbelianGroup& g) { return g.trivial(); });
}

HomologyProfile reduced_homology(const SimplicialComplex& x) {
    std::vector<std::size_t> cells;
    for (int k = 0; k <= x.dim(); ++k) cells.push_back(x.faces(k).size());
    return profile_from_boundaries(boundary_matrices(x, true), cells);
}

HomologyProfile reduced_homology(const SemiSimplicialComplex& x) {
    std::vector<std::size_t> cells;
    for (int k = 0; k <= x.dim(); ++k) cells.push_back(x.cells(k));
    return profile_from_boundaries(boundary_matrices(x, true), cells);
}

const char* to_string(Pi1Status s) {
    switch (s) {
        case Pi1Status::kTrivial: return "trivial";
        case Pi1Status::kNontrivial: return "nontrivial";
        default: return "unknown";
    }
}

namespace {

ConnectivityCertificate certificate_from_profile(const HomologyProfile& p, int dim) {
    ConnectivityCertificate c;
    c.dim = dim;
    if (p.empty_complex) {
        c.homological_connectivity = -2;
        return c;
    }
    int conn = -1;
    for (int k = 0; k <= dim; ++k) {
        if (!p.reduced(k).trivial()) break;
        conn = k;
    }
    c.homological_connectivity = conn;
    c.acyclic = p.all_trivial();
    return c;
}

}  // namespace

ConnectivityCertificate connectivity(const SimplicialComplex& x, const ConnectivityOptions& opts) {
    HomologyProfile p = reduced_homology(x);
    ConnectivityCertificate c = certificate_from_profile(p, x.dim());
    if (!opts.skip_pi1 && !c.is_empty() && c.homological_connectivity >= 0) {
        if (!p.reduced(1).trivial())
            c.pi1 = Pi1Status::kNontrivial;
        else
            c.pi1 = pi1_status(x, opts.tietze_budget);
    }
    return c;
}

ConnectivityCertificate connectivity(const SemiSimplicialComplex& x,
                                     const ConnectivityOptions& opts) {
    (void)opts;  // no edge-path presentation for semi-simplicial cells
    return certificate_from_profile(reduced_homology(x), x.dim());
}

Pi1Status pi1_status(const SimplicialComplex& x, std::size_t tietze_budget) {
    if (x.empty()) return Pi1Status::kUnknown;
    const auto& verts = x.vertices();
    std::map<VertexId, std::size_t> vidx;
    for (std::size_t i = 0; i < verts.size(); ++i) vidx[verts[i]] = i;

    // spanning tree by BFS from the smallest vertex
    std::vector<std::vector<std::size_t>> adj(verts.size());
    for (const Simplex& e : x.faces(1)) {
        adj[vidx[e[0]]].push_back(vidx[e[1]]);
        adj[vidx[e[1]]].push_back(vidx[e[0]]);
    }
    std::vector<int> parent(verts.size(), -1);
    std::vector<char> seen(verts.size(), 0);
    std::queue<std::size_t> q;
    q.push(0);
    seen[0] = 1;
    std::size_t reached = 1;
    while (!q.empty()) {
        std::size_t u = q.front();
        q.pop();
        for (std::size_t v : adj[u])
            if (!seen[v]) {
                seen[v] = 1;
                parent[v] = static_cast<int>(u);
                ++reached;
                q.push(v);
            }
    }
    if (reached != verts.size()) return Pi1Status::kUnknown;  // disconnected

    auto tree_edge = [&](std::size_t a, std::size_t b) {
        return parent[a] == static_cast<int>(b) || parent[b] == static_cast<int>(a);
    };

    // generators: non-tree edges
    std::map<std::pair<std::size_t, std::size_t>, int> gen;
    int ngen = 0;
    for (const Simplex& e : x.faces(1)) {
        std::size_t a = vidx[e[0]], b = vidx[e[1]];
        if (!tree_edge(a, b)) gen[{a, b}] = ngen++;
    }
    if (ngen == 0) return Pi1Status::kTrivial;

    // letter for the oriented edge a->b: 0 if tree, else +-(gen+1)
    auto letter = [&](std::size_t a, std::size_t b) -> int {
        std::size_t lo = std::min(a, b), hi = std::max(a, b);
        auto it = gen.find({lo, hi});
        if (it == gen.end()) return 0;
        return a < b ? it->second + 1 : -(it->second + 1);
    };

    std::vector<std::vector<int>> relators;
    for (const Simplex& t : x.faces(2)) {
        std::size_t a = vidx[t[0]], b = vidx[t[1]], c = vidx[t[2]];
        std::vector<int> w;
        for (int l : {letter(a, b), letter(b, c), letter(c, a)})
            if (l != 0) w.push_back(l);
        relators.push_back(std::move(w));
    }

    // Abelianization first: if the exponent-sum matrix has rank below the
    // generator count, or any invariant factor exceeds 1, the group surjects
    // onto a nontrivial abelian group.
    {
        SparseIntMatrix ab(relators.size(), static_cast<std::size_t>(ngen));
        for (std::size_t i = 0; i < relators.size(); ++i)
            for (int l : relators[i])
                ab.add(i, static_cast<std::size_t>(std::abs(l) - 1), l > 0 ? 1 : -1);
        SmithResult s = smith_normal_form(ab);
        if (s.rank < static_cast<std::size_t>(ngen)) return Pi1Status::kNontrivial;
        for (const BigInt& f : s.factors)
            if (f > 1) return Pi1Status::kNontrivial;
    }

    auto free_reduce = [](std::vector<int>& w) {
        std::vector<int> out;
        for (int l : w) {
            if (!out.empty() && out.back() == -l)
                out.pop_back();
            else
                out.push_back(l);
        }
        // cyclic reduction
        while (out.size() >= 2 && out.front() == -out.back()) {
            out.erase(out.begin());
            out.pop_back();
        }
        w = std::move(out);
    };
    for (auto& r : relators) free_reduce(r);

    std::set<int> alive;
    for (int g = 1; g <= ngen; ++g) alive.insert(g);

    std::size_t moves = 0;
    while (moves < tietze_budget) {
        relators.erase(std::remove_if(relators.begin(), relators.end(),
                                      [](const std::vector<int>& r) { return r.empty(); }),
                       relators.end());
        if (alive.empty()) return Pi1Status::kTrivial;

        // find a relator in which some generator occurs exactly once
        std::size_t best_rel = relators.size();
        int best_gen = 0;
        std::size_t best_len = SIZE_MAX;
        for (std::size_t i = 0; i < relators.size(); ++i) {
            std::map<int, int> count;
            for (int l : relators[i]) ++count[std::abs(l)];
            for (auto [g, n] : count)
                if (n == 1 && relators[i].size() < best_len) {
                    best_len = relators[i].size();
                    best_rel = i;
                    best_gen = g;
                    break;
                }
        }
        if (best_rel == relators.size()) break;  // stuck

        // solve relator u g^eps v = 1 for best_gen
        const std::vector<int> rel = relators[best_rel];
        std::size_t pos = 0;
        while (std::abs(rel[pos]) != best_gen) ++pos;
        std::vector<int> repl;  // word equal to g
        if (rel[pos] > 0) {
            // g = u^-1 v^-1
            for (std::size_t i = pos; i-- > 0;) repl.push_back(-rel[i]);
            for (std::size_t i = rel.size(); i-- > pos + 1;) repl.push_back(-rel[i]);
        } else {
            // g = v u
            for (std::size_t i = pos + 1; i < rel.size(); ++i) repl.push_back(rel[i]);
            for (std::size_t i = 0; i < pos; ++i) repl.push_back(rel[i]);
        }

        relators.erase(relators.begin() + static_cast<std::ptrdiff_t>(best_rel));
        alive.erase(best_gen);
        std::size_t total = 0;
        for (auto& r : relators) {
            std::vector<int> nw;
            for (int l : r) {
                if (std::abs(l) == best_gen) {
                    if (l > 0)
                        nw.insert(nw.end(), repl.begin(), repl.end());
                    else
                        for (auto it = repl.rbegin(); it != repl.rend(); ++it) nw.push_back(-*it);
                } else {
                    nw.push_back(l);
                }
            }
            free_reduce(nw);
            r = std::move(nw);
            total += r.size();
        }
        if (total > 200'000) return Pi1Status::kUnknown;  // runaway growth
        ++moves;
    }

    relators.erase(std::remove_if(relators.begin(), relators.end(),
                                  [](const std::vector<int>& r) { return r.empty(); }),
                   relators.end());
    if (alive.empty()) return Pi1Status::kTrivial;
    return Pi1Status::kUnknown;
}

std::string betti_csv(const HomologyProfile& p) {
    std::ostringstream os;
    os << "dimension,rank,torsion\n";
    if (p.empty_complex) return os.str();
    for (std::size_t k = 0; k < p.groups.size(); ++k) {
        os << k << "," << p.groups[k].rank << ",";
        for (std::size_t i = 0; i < p.groups[k].torsion.size(); ++i) {
            if (i) os << ";";
            os << p.groups[k].torsion[i];
        }
        os << "\n";
    }
    return os.str();
}

std::string profile_json(const HomologyProfile& p) {
    nlohmann::json j;
    j["empty_complex"] = p.empty_complex;
    j["groups"] = nlohmann::json::array();
    for (const auto& g : p.groups)
        j["groups"].push_back({{"rank", g.rank}, {"torsion", g.torsion}});
    return j.dump(2);
}

}  // namespace stablab
