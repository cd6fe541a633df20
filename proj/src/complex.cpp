#include "stablab/complex.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <numeric>
#include <set>

namespace stablab {

namespace {
std::atomic<std::size_t> g_budget{0};
}

std::size_t active_face_budget() {
    std::size_t b = g_budget.load();
    return b == 0 ? kDefaultFaceBudget : b;
}

void set_face_budget(std::size_t budget) { g_budget.store(budget); }

SimplicialComplex SimplicialComplex::from_maximal(std::vector<Simplex> maximal,
                                                  std::optional<std::size_t> budget) {
    const std::size_t cap = budget.value_or(active_face_budget());
    SimplicialComplex out;

    // Drop duplicates and simplices contained in others.
    std::sort(maximal.begin(), maximal.end());
    maximal.erase(std::unique(maximal.begin(), maximal.end()), maximal.end());
    std::vector<Simplex> keep;
    for (std::size_t i = 0; i < maximal.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < maximal.size() && !dominated; ++j)
            if (i != j && maximal[i].is_face_of(maximal[j]) && maximal[i] != maximal[j])
                dominated = true;
        if (!dominated) keep.push_back(maximal[i]);
    }
    out.maximal_ = std::move(keep);

    for (const Simplex& m : out.maximal_) {
        for (Simplex& f : m.faces()) {
            int d = f.dim();
            if (d >= static_cast<int>(out.faces_by_dim_.size()))
                out.faces_by_dim_.resize(static_cast<std::size_t>(d) + 1);
            if (out.index_.emplace(f, 0).second) {
                out.faces_by_dim_[static_cast<std::size_t>(d)].push_back(std::move(f));
                if (++out.face_count_ > cap)
                    throw budget_exceeded("complex exceeds face budget of " + std::to_string(cap));
            }
        }
    }
    for (auto& level : out.faces_by_dim_) std::sort(level.begin(), level.end());
    for (std::size_t d = 0; d < out.faces_by_dim_.size(); ++d)
        for (std::size_t i = 0; i < out.faces_by_dim_[d].size(); ++i)
            out.index_[out.faces_by_dim_[d][i]] = i;
    if (!out.faces_by_dim_.empty())
        for (const Simplex& v : out.faces_by_dim_[0]) out.vertices_.push_back(v[0]);
    return out;
}

const std::vector<Simplex>& SimplicialComplex::faces(int d) const {
    static const std::vector<Simplex> kNone;
    if (d < 0 || d > dim()) return kNone;
    return faces_by_dim_[static_cast<std::size_t>(d)];
}

std::size_t SimplicialComplex::face_index(const Simplex& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) throw malformed_input("face_index: " + s.str() + " not in complex");
    return it->second;
}

std::vector<Simplex> SimplicialComplex::all_faces() const {
    std::vector<Simplex> out;
    out.reserve(face_count_);
    for (const auto& level : faces_by_dim_) out.insert(out.end(), level.begin(), level.end());
    return out;
}

SimplicialComplex link(const SimplicialComplex& x, const Simplex& s) {
    if (!x.has_face(s)) return SimplicialComplex::from_maximal({});
    std::vector<Simplex> maximal;
    for (const Simplex& m : x.maximal_simplices()) {
        if (!s.is_face_of(m)) continue;
        if (m == s) continue;  // contributes only the empty link
        maximal.push_back(m.without(s));
    }
    return SimplicialComplex::from_maximal(std::move(maximal));
}

SimplicialComplex star(const SimplicialComplex& x, const Simplex& s) {
    if (!x.has_face(s)) return SimplicialComplex::from_maximal({});
    std::vector<Simplex> maximal;
    for (const Simplex& m : x.maximal_simplices())
        if (s.is_face_of(m)) maximal.push_back(m);
    return SimplicialComplex::from_maximal(std::move(maximal));
}

JoinResult join(const SimplicialComplex& x, const SimplicialComplex& y) {
    JoinResult out;
    if (y.empty()) {
        out.complex = x;
        return out;
    }
    VertexId base = x.empty() ? 0 : x.vertices().back() + 1;
    VertexId ymin = y.vertices().front();
    for (VertexId v : y.vertices()) out.y_relabel[v] = base + (v - ymin);

    auto relabel = [&](const Simplex& s) {
        std::vector<VertexId> vs;
        vs.reserve(s.size());
        for (VertexId v : s.vertices()) vs.push_back(out.y_relabel.at(v));
        return Simplex(std::move(vs));
    };

    if (x.empty()) {
        std::vector<Simplex> maximal;
        for (const Simplex& m : y.maximal_simplices()) maximal.push_back(relabel(m));
        out.complex = SimplicialComplex::from_maximal(std::move(maximal));
        return out;
    }
    std::vector<Simplex> maximal;
    for (const Simplex& mx : x.maximal_simplices())
        for (const Simplex& my : y.maximal_simplices()) maximal.push_back(mx.join(relabel(my)));
    out.complex = SimplicialComplex::from_maximal(std::move(maximal));
    return out;
}

VertexId LabeledComplex::encode(VertexId base_vertex, int label) const {
    return base_vertex * labels + label;
}
VertexId LabeledComplex::base_of(VertexId lv) const {
    return lv >= 0 ? lv / labels : -((-lv - 1) / labels) - 1;
}
int LabeledComplex::label_of(VertexId lv) const {
    int r = lv % labels;
    return r < 0 ? r + labels : r;
}

LabeledComplex labeled(const SimplicialComplex& x, int labels) {
    if (labels < 1) throw malformed_input("labeled: need at least one label");
    LabeledComplex out;
    out.labels = labels;
    std::vector<Simplex> maximal;
    for (const Simplex& m : x.maximal_simplices()) {
        const std::size_t n = m.size();
        std::vector<int> choice(n, 0);
        while (true) {
            std::vector<VertexId> vs;
            vs.reserve(n);
            for (std::size_t i = 0; i < n; ++i) vs.push_back(out.encode(m[i], choice[i]));
            maximal.emplace_back(std::move(vs));
            std::size_t i = 0;
            while (i < n && ++choice[i] == labels) choice[i++] = 0;
            if (i == n) break;
        }
    }
    out.complex = SimplicialComplex::from_maximal(std::move(maximal));
    return out;
}

Poset::Poset(std::size_t size, std::vector<std::pair<int, int>> leq_pairs) : n_(size) {
    rel_.assign(n_ * n_, 0);
    auto at = [&](int a, int b) -> char& { return rel_[static_cast<std::size_t>(a) * n_ + b]; };
    for (std::size_t i = 0; i < n_; ++i) at(static_cast<int>(i), static_cast<int>(i)) = 1;
    for (auto [a, b] : leq_pairs) {
        if (a < 0 || b < 0 || a >= static_cast<int>(n_) || b >= static_cast<int>(n_))
            throw malformed_input("poset: relation element out of range");
        at(a, b) = 1;
    }
    // transitive closure (Warshall)
    for (std::size_t k = 0; k < n_; ++k)
        for (std::size_t i = 0; i < n_; ++i)
            if (rel_[i * n_ + k])
                for (std::size_t j = 0; j < n_; ++j)
                    if (rel_[k * n_ + j]) rel_[i * n_ + j] = 1;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
            if (rel_[i * n_ + j] && rel_[j * n_ + i])
                throw malformed_input("poset: antisymmetry violated between " +
                                      std::to_string(i) + " and " + std::to_string(j));
}

SimplicialComplex order_complex(const Poset& p) {
    // Simplices are chains; it suffices to emit every maximal chain.  Chains
    // are grown upward from their minimum, so each maximal chain appears once.
    const int n = static_cast<int>(p.size());
    std::vector<Simplex> maximal;
    std::vector<int> chain;
    std::function<void()> grow = [&]() {
        bool extended = false;
        for (int v = 0; v < n; ++v)
            if (p.lt(chain.back(), v)) {
                chain.push_back(v);
                grow();
                chain.pop_back();
                extended = true;
            }
        if (extended) return;
        // Cannot extend upward; keep only if nothing fits below or between.
        for (int v = 0; v < n; ++v) {
            if (std::find(chain.begin(), chain.end(), v) != chain.end()) continue;
            bool comparable_to_all = true;
            for (int c : chain)
                if (!p.lt(c, v) && !p.lt(v, c)) {
                    comparable_to_all = false;
                    break;
                }
            if (comparable_to_all) return;
        }
        maximal.emplace_back(std::vector<VertexId>(chain.begin(), chain.end()));
    };
    for (int v = 0; v < n; ++v) {
        chain = {v};
        grow();
    }
    return SimplicialComplex::from_maximal(std::move(maximal));
}

SimplexPoset face_poset(const SimplicialComplex& x) {
    std::vector<Simplex> elems = x.all_faces();
    std::vector<std::pair<int, int>> leq;
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = 0; j < elems.size(); ++j)
            if (i != j && elems[i].is_face_of(elems[j]))
                leq.emplace_back(static_cast<int>(i), static_cast<int>(j));
    Poset p(elems.size(), std::move(leq));
    for (const Simplex& s : elems) p.names.push_back(s.str());
    return SimplexPoset{std::move(p), std::move(elems)};
}

SemiSimplicialComplex::SemiSimplicialComplex(
    std::vector<std::size_t> cell_counts,
    std::vector<std::vector<std::vector<std::size_t>>> faces)
    : counts_(std::move(cell_counts)), faces_(std::move(faces)) {
    while (!counts_.empty() && counts_.back() == 0) counts_.pop_back();
    if (counts_.empty()) {
        faces_.clear();
        return;
    }
    if (faces_.size() != counts_.size())
        throw malformed_input("semi-simplicial: need one face table per dimension");
    if (!faces_[0].empty())
        throw malformed_input("semi-simplicial: 0-cells have no face maps");
    std::size_t total = 0;
    for (std::size_t c : counts_) {
        total += c;
        if (total > active_face_budget())
            throw budget_exceeded("semi-simplicial complex exceeds face budget");
    }
    for (std::size_t d = 1; d < counts_.size(); ++d) {
        if (faces_[d].size() != counts_[d])
            throw malformed_input("semi-simplicial: face table size mismatch in dim " +
                                  std::to_string(d));
        for (std::size_t c = 0; c < counts_[d]; ++c) {
            if (faces_[d][c].size() != d + 1)
                throw malformed_input("semi-simplicial: cell needs d+1 faces");
            for (std::size_t f : faces_[d][c])
                if (f >= counts_[d - 1])
                    throw malformed_input("semi-simplicial: face index out of range");
        }
    }
    // d_i d_j = d_{j-1} d_i for i < j, verified cell by cell.
    for (std::size_t d = 2; d < counts_.size(); ++d)
        for (std::size_t c = 0; c < counts_[d]; ++c)
            for (std::size_t j = 1; j <= d; ++j)
                for (std::size_t i = 0; i < j; ++i) {
                    std::size_t lhs = faces_[d - 1][faces_[d][c][j]][i];
                    std::size_t rhs = faces_[d - 1][faces_[d][c][i]][j - 1];
                    if (lhs != rhs)
                        throw malformed_input("semi-simplicial identity fails at dim " +
                                              std::to_string(d) + " cell " + std::to_string(c));
                }
}

std::size_t SemiSimplicialComplex::cells(int d) const {
    if (d < 0 || d > dim()) return 0;
    return counts_[static_cast<std::size_t>(d)];
}

std::size_t SemiSimplicialComplex::total_cells() const {
    return std::accumulate(counts_.begin(), counts_.end(), std::size_t{0});
}

std::size_t SemiSimplicialComplex::face(int d, std::size_t c, std::size_t i) const {
    return faces_.at(static_cast<std::size_t>(d)).at(c).at(i);
}

std::vector<std::size_t> SemiSimplicialComplex::cell_vertices(int d, std::size_t c) const {
    if (d == 0) return {c};
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i <= static_cast<std::size_t>(d); ++i) {
        // Extract position i: delete every position after it, then every one
        // before it.
        std::size_t cur = c;
        int dd = d;
        while (dd > static_cast<int>(i)) {
            cur = faces_[static_cast<std::size_t>(dd)][cur][static_cast<std::size_t>(dd)];
            --dd;
        }
        while (dd > 0) {
            cur = faces_[static_cast<std::size_t>(dd)][cur][0];
            --dd;
        }
        out.push_back(cur);
    }
    return out;
}

SemiSimplicialComplex as_semi_simplicial(const SimplicialComplex& x) {
    if (x.empty()) return SemiSimplicialComplex();
    std::vector<std::size_t> counts;
    std::vector<std::vector<std::vector<std::size_t>>> faces;
    counts.resize(static_cast<std::size_t>(x.dim()) + 1);
    faces.resize(counts.size());
    for (int d = 0; d <= x.dim(); ++d) {
        counts[static_cast<std::size_t>(d)] = x.faces(d).size();
        if (d == 0) continue;
        auto& tbl = faces[static_cast<std::size_t>(d)];
        tbl.reserve(x.faces(d).size());
        for (const Simplex& s : x.faces(d)) {
            std::vector<std::size_t> fs;
            for (std::size_t i = 0; i <= static_cast<std::size_t>(d); ++i)
                fs.push_back(x.face_index(s.facet(i)));
            tbl.push_back(std::move(fs));
        }
    }
    return SemiSimplicialComplex(std::move(counts), std::move(faces));
}

namespace {
std::uint64_t factorial(std::size_t n) {
    std::uint64_t f = 1;
    for (std::size_t i = 2; i <= n; ++i) f *= i;
    return f;
}
}  // namespace

OrderedComplex ordered(const SimplicialComplex& x) {
    OrderedComplex out;
    if (x.empty()) return out;
    const int dim = x.dim();

    // Sanity budget: (k+1)! cells per k-simplex.
    std::size_t total = 0;
    for (int d = 0; d <= dim; ++d)
        total += x.faces(d).size() * factorial(static_cast<std::size_t>(d) + 1);
    if (total > active_face_budget())
        throw budget_exceeded("ordered complex would have " + std::to_string(total) + " cells");

    out.decode.resize(static_cast<std::size_t>(dim) + 1);
    std::vector<std::map<std::pair<std::size_t, std::vector<VertexId>>, std::size_t>> ids(
        static_cast<std::size_t>(dim) + 1);
    std::vector<std::size_t> counts(static_cast<std::size_t>(dim) + 1, 0);
    for (int d = 0; d <= dim; ++d) {
        for (std::size_t si = 0; si < x.faces(d).size(); ++si) {
            const Simplex& s = x.faces(d)[si];
            std::vector<VertexId> perm = s.vertices();
            std::sort(perm.begin(), perm.end());
            do {
                ids[static_cast<std::size_t>(d)][{si, perm}] =
                    counts[static_cast<std::size_t>(d)]++;
                out.decode[static_cast<std::size_t>(d)].push_back(OrderedCell{s, perm});
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
    }
    std::vector<std::vector<std::vector<std::size_t>>> faces(counts.size());
    for (int d = 1; d <= dim; ++d) {
        auto& tbl = faces[static_cast<std::size_t>(d)];
        for (const OrderedCell& cell : out.decode[static_cast<std::size_t>(d)]) {
            std::vector<std::size_t> fs;
            for (std::size_t i = 0; i <= static_cast<std::size_t>(d); ++i) {
                std::vector<VertexId> sub = cell.order;
                sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(i));
                Simplex face_simplex{std::vector<VertexId>(sub)};
                std::size_t fsi = x.face_index(face_simplex);
                fs.push_back(ids[static_cast<std::size_t>(d) - 1].at({fsi, sub}));
            }
            tbl.push_back(std::move(fs));
        }
    }
    out.complex = SemiSimplicialComplex(std::move(counts), std::move(faces));
    return out;
}

SimplicialComplex barycentric(const SemiSimplicialComplex& k) {
    if (k.empty()) return SimplicialComplex();
    // Global vertex id of cell c in dim d: offset[d] + c.
    std::vector<VertexId> offset(static_cast<std::size_t>(k.dim()) + 1, 0);
    for (int d = 1; d <= k.dim(); ++d)
        offset[static_cast<std::size_t>(d)] =
            offset[static_cast<std::size_t>(d) - 1] + static_cast<VertexId>(k.cells(d - 1));

    for (int d = 0; d <= k.dim(); ++d)
        for (std::size_t c = 0; c < k.cells(d); ++c) {
            auto vs = k.cell_vertices(d, c);
            std::sort(vs.begin(), vs.end());
            if (std::adjacent_find(vs.begin(), vs.end()) != vs.end())
                throw unsupported_input(
                    "barycentric: cell with repeated vertices (dim " + std::to_string(d) +
                    ", cell " + std::to_string(c) + ")");
        }

    // Every maximal chain in the face poset is a full flag descending from a
    // cell that is itself nobody's face, dropping one dimension per step.
    std::vector<std::vector<char>> is_face(static_cast<std::size_t>(k.dim()) + 1);
    for (int d = 0; d <= k.dim(); ++d) is_face[static_cast<std::size_t>(d)].assign(k.cells(d), 0);
    for (int d = 1; d <= k.dim(); ++d)
        for (std::size_t c = 0; c < k.cells(d); ++c)
            for (std::size_t i = 0; i <= static_cast<std::size_t>(d); ++i)
                is_face[static_cast<std::size_t>(d) - 1][k.face(d, c, i)] = 1;

    std::vector<Simplex> maximal;
    std::vector<VertexId> chain;
    std::function<void(int, std::size_t)> descend = [&](int d, std::size_t c) {
        chain.push_back(offset[static_cast<std::size_t>(d)] + static_cast<VertexId>(c));
        if (d == 0) {
            maximal.emplace_back(std::vector<VertexId>(chain));
        } else {
            std::set<std::size_t> next;
            for (std::size_t i = 0; i <= static_cast<std::size_t>(d); ++i)
                next.insert(k.face(d, c, i));
            for (std::size_t f : next) descend(d - 1, f);
        }
        chain.pop_back();
    };
    for (int d = 0; d <= k.dim(); ++d)
        for (std::size_t c = 0; c < k.cells(d); ++c)
            if (!is_face[static_cast<std::size_t>(d)][c]) descend(d, c);
    return SimplicialComplex::from_maximal(std::move(maximal));
}

SimplicialMap::SimplicialMap(const SimplicialComplex& domain, const SimplicialComplex& codomain,
                             std::unordered_map<VertexId, VertexId> vertex_map)
    : dom_(&domain), cod_(&codomain), vmap_(std::move(vertex_map)) {
    for (VertexId v : domain.vertices())
        if (!vmap_.count(v))
            throw malformed_input("simplicial map: vertex " + std::to_string(v) + " unmapped");
    for (const Simplex& m : domain.maximal_simplices()) {
        Simplex img = image(m);
        if (!codomain.has_face(img))
            throw malformed_input("simplicial map: image " + img.str() + " of " + m.str() +
                                  " not a face of codomain");
    }
}

VertexId SimplicialMap::apply(VertexId v) const {
    auto it = vmap_.find(v);
    if (it == vmap_.end()) throw malformed_input("simplicial map: vertex unmapped");
    return it->second;
}

Simplex SimplicialMap::image(const Simplex& s) const {
    std::vector<VertexId> vs;
    vs.reserve(s.size());
    for (VertexId v : s.vertices()) vs.push_back(apply(v));
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return Simplex(std::move(vs));
}

SimplicialComplex SimplicialMap::image() const {
    std::vector<Simplex> out;
    for (const Simplex& s : dom_->maximal_simplices()) out.push_back(image(s));
    return SimplicialComplex::from_maximal(out);
}

}  // namespace stablab
