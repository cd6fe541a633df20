#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "stablab/arcs.hpp"
#include "stablab/complex.hpp"

namespace stablab {

// Disk with n punctures and d marked boundary points, plus the fixed
// triangulation that normal coordinates refer to.
struct PuncturedDisk {
    int n = 1;
    int d = 1;
    DiskTriangulation base_triangulation;

    bool operator==(const PuncturedDisk& o) const { return n == o.n && d == o.d; }
};
PuncturedDisk punctured_disk(int n, int d);

// Family of tethers realized disjointly in one disk, carried both as isotopy
// classes and as normal coordinates against the base triangulation.
class NormalArcSystem {
  public:
    NormalArcSystem(PuncturedDisk disk, std::vector<Tether> components);

    const PuncturedDisk& disk() const { return disk_; }
    const std::vector<Tether>& components() const { return components_; }

    // Crossing count with each triangulation edge, in triangulation edge order.
    const std::vector<std::int64_t>& coords() const { return coords_; }

    // (marked point, puncture) per component.
    std::vector<std::pair<int, int>> component_labels() const;

    // Every component ends at a different puncture.
    bool coconnected() const;

    bool operator==(const NormalArcSystem& o) const {
        return disk_ == o.disk_ && components_ == o.components_;
    }
    bool operator!=(const NormalArcSystem& o) const { return !(*this == o); }

  private:
    PuncturedDisk disk_;
    std::vector<Tether> components_;
    std::vector<std::int64_t> coords_;
};

// The straight spider: one tether from the first marked point to each
// puncture, pairwise disjoint.
NormalArcSystem base_tethers(const PuncturedDisk& disk);

// Action of the half-twist generator swapping punctures |i| and |i|+1
// (negative i for the inverse) on every component.
NormalArcSystem braid_act(int signed_generator, const NormalArcSystem& s);

// Word applied left to right: braid_act(word[k], ...) for k = 0, 1, ...
NormalArcSystem braid_act_word(const std::vector<int>& word, const NormalArcSystem& s);

// Geometric (minimal) crossing count between the two families.
std::int64_t intersection_number(const NormalArcSystem& a, const NormalArcSystem& b);

// One surgery step: t must be a single tether crossing s; cut the component
// of s owning the crossing nearest t's marked point and return the arc that
// keeps s's puncture end, rerouted home along t.  The result crosses t fewer
// times than s does and is disjoint from s.
NormalArcSystem surger(const NormalArcSystem& t, const NormalArcSystem& s);

// Truncated tether complex: vertices are the braid orbit of the base tethers
// under words of length <= word_length, kept when they cross the base system
// at most bound times; simplices are families realizable disjointly with
// pairwise distinct classes, and with distinct end punctures when coconnected
// is set.  vertex_tethers[v] is the class behind vertex v, in the order that
// fixes the numbering.
struct TetherComplexResult {
    SimplicialComplex complex;
    std::vector<Tether> vertex_tethers;
};
TetherComplexResult tether_complex(const PuncturedDisk& disk, std::int64_t bound,
                                   bool coconnected, int word_length,
                                   std::size_t max_vertices = 4096);

// One cell in each dimension 0..n-1 with every face map landing on the unique
// lower cell: the quotient of the (n-1)-simplex identifying its faces
// order-preservingly.
SemiSimplicialComplex quotient_simplex_mod_order(int n);

// Diagonals of a convex m-gon; a face is a pairwise noncrossing set.
SimplicialComplex polygon_arc_complex(int m);

// Join of g copies of the k-point discrete complex.
SimplicialComplex wedge_join_model(int g, int k);

// Ordered pair of primitive classes meeting once on the torus, with a sign on
// the second.  Both vectors are normalized to a positive first nonzero
// coordinate; flipping b's sign flips the orientation.
struct ChainVertex {
    std::array<int, 2> a{1, 0};
    std::array<int, 2> b{0, 1};
    int orientation = 1;

    bool operator==(const ChainVertex& o) const {
        return a == o.a && b == o.b && orientation == o.orientation;
    }
    bool operator<(const ChainVertex& o) const {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return orientation < o.orientation;
    }
};

// Validated, sign-normalized chain; |det(a b)| must be 1.
ChainVertex make_chain_vertex(std::array<int, 2> a, std::array<int, 2> b, int orientation);

// All chains whose four coordinates lie in [-bound, bound], sorted.
std::vector<ChainVertex> chain_vertices(int bound);

// Genus 1: the discrete set chain_vertices(bound).  Genus 2: the join of two
// such sets (a complete bipartite complex), optionally truncated to the first
// part_caps.first / part_caps.second vertices of each part.  Vertex v of the
// complex decodes through part_a (then part_b, offset by part_a.size()).
struct ChainTruncation {
    SimplicialComplex complex;
    std::vector<ChainVertex> part_a;
    std::vector<ChainVertex> part_b;
};
ChainTruncation chain_truncation(
    int genus, int bound,
    std::optional<std::pair<std::size_t, std::size_t>> part_caps = std::nullopt);

}  // namespace stablab
