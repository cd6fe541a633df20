#include "stablab/models.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <string>

#include "stablab/errors.hpp"

namespace stablab {

namespace {

void check_disk(const PuncturedDisk& disk) {
    if (disk.n < 1 || disk.d < 1)
        throw malformed_input("disk needs at least one puncture and one marked point");
}

void check_same_disk(const NormalArcSystem& a, const NormalArcSystem& b) {
    if (!(a.disk() == b.disk()))
        throw malformed_input("arc systems live on different disks");
}

}  // namespace

PuncturedDisk punctured_disk(int n, int d) {
    PuncturedDisk disk;
    disk.n = n;
    disk.d = d;
    check_disk(disk);
    disk.base_triangulation = disk_triangulation(n, d);
    return disk;
}

NormalArcSystem::NormalArcSystem(PuncturedDisk disk, std::vector<Tether> components)
    : disk_(std::move(disk)), components_(std::move(components)) {
    check_disk(disk_);
    for (const Tether& t : components_)
        if (t.punctures != disk_.n || t.basepoints != disk_.d)
            throw malformed_input("component belongs to a different disk");
    for (std::size_t i = 0; i < components_.size(); ++i)
        for (std::size_t j = i + 1; j < components_.size(); ++j)
            if (components_[i] == components_[j])
                throw malformed_input("duplicate component in arc system");
    if (!components_.empty() && family_crossing_number(components_) != 0)
        throw malformed_input("components are not realizable disjointly");
    coords_ = routed_edge_counts(components_, disk_.n, disk_.d);
}

std::vector<std::pair<int, int>> NormalArcSystem::component_labels() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(components_.size());
    for (const Tether& t : components_) out.emplace_back(t.basepoint, t.puncture);
    return out;
}

bool NormalArcSystem::coconnected() const {
    std::set<int> ends;
    for (const Tether& t : components_)
        if (!ends.insert(t.puncture).second) return false;
    return true;
}

NormalArcSystem base_tethers(const PuncturedDisk& disk) {
    check_disk(disk);
    std::vector<Tether> comps;
    comps.reserve(static_cast<std::size_t>(disk.n));
    for (int p = 1; p <= disk.n; ++p)
        comps.push_back(straight_tether(disk.n, disk.d, 1, p));
    return NormalArcSystem(disk, std::move(comps));
}

NormalArcSystem braid_act(int signed_generator, const NormalArcSystem& s) {
    int k = signed_generator < 0 ? -signed_generator : signed_generator;
    if (k < 1 || k > s.disk().n - 1)
        throw malformed_input("braid generator index out of range");
    std::vector<Tether> comps;
    comps.reserve(s.components().size());
    for (const Tether& t : s.components()) comps.push_back(braid_image(t, signed_generator));
    return NormalArcSystem(s.disk(), std::move(comps));
}

NormalArcSystem braid_act_word(const std::vector<int>& word, const NormalArcSystem& s) {
    NormalArcSystem out = s;
    for (int g : word) out = braid_act(g, out);
    return out;
}

std::int64_t intersection_number(const NormalArcSystem& a, const NormalArcSystem& b) {
    check_same_disk(a, b);
    return system_intersection(a.components(), b.components());
}

NormalArcSystem surger(const NormalArcSystem& t, const NormalArcSystem& s) {
    check_same_disk(t, s);
    if (t.components().size() != 1)
        throw malformed_input("surgery wants a single tether as its first argument");
    if (intersection_number(t, s) == 0)
        throw malformed_input("surgery requires intersecting systems");
    Tether cut = surger_system(t.components()[0], s.components());
    return NormalArcSystem(t.disk(), {std::move(cut)});
}

namespace {

// Pairwise compatibility graph for tether_complex; adj is a flattened matrix.
struct TetherGraph {
    std::size_t n = 0;
    std::vector<char> adj;
    bool edge(std::size_t i, std::size_t j) const { return adj[i * n + j] != 0; }
};

void bron_kerbosch(const TetherGraph& g, std::vector<std::size_t>& r,
                   std::vector<std::size_t> p, std::vector<std::size_t> x,
                   std::vector<std::vector<std::size_t>>& out) {
    if (p.empty() && x.empty()) {
        out.push_back(r);
        return;
    }
    // pivot on the candidate with most neighbours in p
    std::size_t pivot = 0, best = 0;
    bool have = false;
    for (const auto& pool : {p, x})
        for (std::size_t u : pool) {
            std::size_t cnt = 0;
            for (std::size_t v : p)
                if (g.edge(u, v)) ++cnt;
            if (!have || cnt > best) {
                have = true;
                best = cnt;
                pivot = u;
            }
        }
    std::vector<std::size_t> loop;
    for (std::size_t v : p)
        if (!g.edge(pivot, v)) loop.push_back(v);
    for (std::size_t v : loop) {
        std::vector<std::size_t> p2, x2;
        for (std::size_t u : p)
            if (g.edge(v, u)) p2.push_back(u);
        for (std::size_t u : x)
            if (g.edge(v, u)) x2.push_back(u);
        r.push_back(v);
        bron_kerbosch(g, r, std::move(p2), std::move(x2), out);
        r.pop_back();
        p.erase(std::remove(p.begin(), p.end(), v), p.end());
        x.push_back(v);
    }
}

std::vector<std::vector<std::size_t>> maximal_cliques(const TetherGraph& g) {
    std::vector<std::size_t> all(g.n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> r;
    bron_kerbosch(g, r, std::move(all), {}, out);
    return out;
}

}  // namespace

TetherComplexResult tether_complex(const PuncturedDisk& disk, std::int64_t bound,
                                   bool coconnected, int word_length,
                                   std::size_t max_vertices) {
    check_disk(disk);
    if (bound < 0 || word_length < 0)
        throw malformed_input("tether complex budgets must be nonnegative");

    const NormalArcSystem base = base_tethers(disk);

    // Breadth-first orbit of the base tethers under the twist generators.
    // Classes beyond the crossing bound still propagate; the bound only
    // filters which classes become vertices.
    std::set<Tether> seen(base.components().begin(), base.components().end());
    std::vector<Tether> frontier(base.components().begin(), base.components().end());
    for (int step = 0; step < word_length && !frontier.empty(); ++step) {
        std::vector<Tether> next;
        for (const Tether& t : frontier) {
            for (int g = 1; g <= disk.n - 1; ++g) {
                for (int sign : {1, -1}) {
                    Tether img = braid_image(t, sign * g);
                    if (seen.insert(img).second) {
                        if (seen.size() > max_vertices)
                            throw budget_exceeded("tether orbit exceeds " +
                                                  std::to_string(max_vertices) + " classes");
                        next.push_back(std::move(img));
                    }
                }
            }
        }
        frontier = std::move(next);
    }

    std::vector<Tether> verts;
    for (const Tether& t : seen)
        if (system_intersection({t}, base.components()) <= bound) verts.push_back(t);
    // std::set iteration already sorted via Tether::operator<

    TetherGraph g;
    g.n = verts.size();
    g.adj.assign(g.n * g.n, 0);
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = i + 1; j < g.n; ++j) {
            if (coconnected && verts[i].puncture == verts[j].puncture) continue;
            if (tether_intersection(verts[i], verts[j]) != 0) continue;
            g.adj[i * g.n + j] = g.adj[j * g.n + i] = 1;
        }

    std::vector<Simplex> maximal;
    for (const auto& clique : maximal_cliques(g)) {
        if (clique.empty()) continue;
        std::vector<Tether> family;
        for (std::size_t v : clique) family.push_back(verts[v]);
        // Joint realization check.  Pairwise disjoint arcs in a disk are
        // disjoint simultaneously, so a failure here means the routing and
        // the pairwise counts disagree.
        if (family.size() > 1 && family_crossing_number(family) != 0)
            throw internal_error("pairwise disjoint family failed joint routing");
        std::vector<VertexId> ids;
        for (std::size_t v : clique) ids.push_back(static_cast<VertexId>(v));
        maximal.push_back(Simplex(std::move(ids)));
    }

    TetherComplexResult out;
    out.complex = SimplicialComplex::from_maximal(std::move(maximal));
    out.vertex_tethers = std::move(verts);
    return out;
}

SemiSimplicialComplex quotient_simplex_mod_order(int n) {
    if (n < 1) throw malformed_input("quotient complex needs n >= 1");
    std::vector<std::size_t> counts(static_cast<std::size_t>(n), 1);
    std::vector<std::vector<std::vector<std::size_t>>> faces(counts.size());
    for (int k = 1; k < n; ++k)
        faces[static_cast<std::size_t>(k)] = {
            std::vector<std::size_t>(static_cast<std::size_t>(k) + 1, 0)};
    return SemiSimplicialComplex(std::move(counts), std::move(faces));
}

SimplicialComplex polygon_arc_complex(int m) {
    if (m < 4) throw malformed_input("polygon arc complex needs m >= 4");
    std::vector<std::pair<int, int>> diag;
    for (int i = 0; i < m; ++i)
        for (int j = i + 2; j < m; ++j) {
            if (i == 0 && j == m - 1) continue;  // boundary edge, not a diagonal
            diag.emplace_back(i, j);
        }
    auto crossing = [](std::pair<int, int> x, std::pair<int, int> y) {
        auto inside = [](int v, std::pair<int, int> c) { return c.first < v && v < c.second; };
        return inside(y.first, x) != inside(y.second, x) && x.first != y.first &&
               x.first != y.second && x.second != y.first && x.second != y.second;
    };
    TetherGraph g;
    g.n = diag.size();
    g.adj.assign(g.n * g.n, 0);
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = i + 1; j < g.n; ++j)
            if (!crossing(diag[i], diag[j])) g.adj[i * g.n + j] = g.adj[j * g.n + i] = 1;
    std::vector<Simplex> maximal;
    for (const auto& clique : maximal_cliques(g)) {
        std::vector<VertexId> ids;
        for (std::size_t v : clique) ids.push_back(static_cast<VertexId>(v));
        maximal.push_back(Simplex(std::move(ids)));
    }
    return SimplicialComplex::from_maximal(std::move(maximal));
}

SimplicialComplex wedge_join_model(int g, int k) {
    if (g < 1 || k < 1) throw malformed_input("wedge model needs g, k >= 1");
    // vertex id = copy * k + point; maximal simplices pick one point per copy
    std::vector<Simplex> maximal;
    std::vector<int> pick(static_cast<std::size_t>(g), 0);
    for (;;) {
        std::vector<VertexId> ids;
        for (int c = 0; c < g; ++c) ids.push_back(c * k + pick[static_cast<std::size_t>(c)]);
        maximal.push_back(Simplex(std::move(ids)));
        int c = g - 1;
        while (c >= 0 && ++pick[static_cast<std::size_t>(c)] == k) pick[static_cast<std::size_t>(c--)] = 0;
        if (c < 0) break;
    }
    return SimplicialComplex::from_maximal(std::move(maximal));
}

namespace {

int sign_normalize(std::array<int, 2>& v) {
    int lead = v[0] != 0 ? v[0] : v[1];
    if (lead < 0) {
        v[0] = -v[0];
        v[1] = -v[1];
        return -1;
    }
    return 1;
}

}  // namespace

ChainVertex make_chain_vertex(std::array<int, 2> a, std::array<int, 2> b, int orientation) {
    if (orientation != 1 && orientation != -1)
        throw malformed_input("chain orientation must be +1 or -1");
    long det = static_cast<long>(a[0]) * b[1] - static_cast<long>(a[1]) * b[0];
    if (det != 1 && det != -1)
        throw malformed_input("chain curves must meet exactly once (|det| = 1)");
    ChainVertex out;
    out.a = a;
    out.b = b;
    sign_normalize(out.a);
    out.orientation = orientation * sign_normalize(out.b);
    return out;
}

std::vector<ChainVertex> chain_vertices(int bound) {
    if (bound < 1) throw malformed_input("chain truncation bound must be positive");
    // Primitive vectors with positive first nonzero coordinate: p > 0 with
    // gcd(p, |q|) = 1, plus (0, 1).
    std::vector<std::array<int, 2>> prim;
    for (int p = 0; p <= bound; ++p)
        for (int q = -bound; q <= bound; ++q) {
            if (p == 0 ? q != 1 : std::gcd(p, std::abs(q)) != 1) continue;
            prim.push_back({p, q});
        }
    std::vector<ChainVertex> out;
    for (const auto& a : prim)
        for (const auto& b : prim) {
            long det = static_cast<long>(a[0]) * b[1] - static_cast<long>(a[1]) * b[0];
            if (det != 1 && det != -1) continue;
            for (int s : {1, -1}) out.push_back(make_chain_vertex(a, b, s));
        }
    std::sort(out.begin(), out.end());
    return out;
}

ChainTruncation chain_truncation(
    int genus, int bound, std::optional<std::pair<std::size_t, std::size_t>> part_caps) {
    if (genus != 1 && genus != 2)
        throw malformed_input("chain truncation models genus 1 and 2 only");
    ChainTruncation out;
    out.part_a = chain_vertices(bound);
    if (genus == 1) {
        std::vector<Simplex> maximal;
        for (std::size_t i = 0; i < out.part_a.size(); ++i)
            maximal.push_back(Simplex{static_cast<VertexId>(i)});
        out.complex = SimplicialComplex::from_maximal(std::move(maximal));
        return out;
    }
    out.part_b = out.part_a;
    if (part_caps) {
        if (part_caps->first < 1 || part_caps->second < 1)
            throw malformed_input("part caps must be positive");
        if (part_caps->first < out.part_a.size()) out.part_a.resize(part_caps->first);
        if (part_caps->second < out.part_b.size()) out.part_b.resize(part_caps->second);
    }
    std::vector<Simplex> maximal;
    const auto offset = static_cast<VertexId>(out.part_a.size());
    for (std::size_t i = 0; i < out.part_a.size(); ++i)
        for (std::size_t j = 0; j < out.part_b.size(); ++j)
            maximal.push_back(Simplex{static_cast<VertexId>(i),
                                      static_cast<VertexId>(offset + static_cast<VertexId>(j))});
    out.complex = SimplicialComplex::from_maximal(std::move(maximal));
    return out;
}

}  // namespace stablab
