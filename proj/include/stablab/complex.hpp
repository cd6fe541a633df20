#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "stablab/simplex.hpp"

namespace stablab {

// Global default ceiling on the number of faces any one complex may hold.
// Constructions that would exceed the active budget throw budget_exceeded.
inline constexpr std::size_t kDefaultFaceBudget = 1'000'000;

// Process-wide override used by the CLI (STABLAB_BUDGET_FACES); 0 = use default.
std::size_t active_face_budget();
void set_face_budget(std::size_t budget);

// Finite abstract simplicial complex: downward-closed, stored as maximal
// simplices plus a complete face table grouped by dimension.
class SimplicialComplex {
  public:
    SimplicialComplex() = default;  // the empty complex

    static SimplicialComplex from_maximal(std::vector<Simplex> maximal,
                                          std::optional<std::size_t> budget = std::nullopt);

    bool empty() const { return faces_by_dim_.empty(); }
    int dim() const { return static_cast<int>(faces_by_dim_.size()) - 1; }
    const std::vector<VertexId>& vertices() const { return vertices_; }
    const std::vector<Simplex>& maximal_simplices() const { return maximal_; }

    // Faces of one dimension, sorted lexicographically; index order is the
    // canonical chain-group basis order.
    const std::vector<Simplex>& faces(int d) const;
    std::size_t face_count() const { return face_count_; }
    bool has_face(const Simplex& s) const { return index_.count(s) > 0; }
    // Position of s within faces(s.dim()); throws if absent.
    std::size_t face_index(const Simplex& s) const;

    std::vector<Simplex> all_faces() const;

    bool operator==(const SimplicialComplex& o) const {
        return faces_by_dim_ == o.faces_by_dim_;
    }

  private:
    std::vector<VertexId> vertices_;
    std::vector<Simplex> maximal_;
    std::vector<std::vector<Simplex>> faces_by_dim_;
    std::unordered_map<Simplex, std::size_t, SimplexHash> index_;
    std::size_t face_count_ = 0;
};

// lk(s): faces disjoint from s whose join with s lies in x.  st(s) = s * lk(s).
SimplicialComplex link(const SimplicialComplex& x, const Simplex& s);
SimplicialComplex star(const SimplicialComplex& x, const Simplex& s);

// Join; the second factor is re-indexed to fresh vertex ids (offset so its
// smallest vertex lands just above the first factor's largest).
struct JoinResult {
    SimplicialComplex complex;
    // new id of each vertex of y after re-indexing
    std::unordered_map<VertexId, VertexId> y_relabel;
};
JoinResult join(const SimplicialComplex& x, const SimplicialComplex& y);

// Labeled complex X^S: vertices are pairs (v, s) with v a vertex of x and s in
// 0..labels-1; a simplex is a simplex of x with an arbitrary label per vertex.
struct LabeledComplex {
    SimplicialComplex complex;
    int labels = 0;
    VertexId encode(VertexId base_vertex, int label) const;
    VertexId base_of(VertexId labeled_vertex) const;
    int label_of(VertexId labeled_vertex) const;
};
LabeledComplex labeled(const SimplicialComplex& x, int labels);

// Finite poset on elements 0..size-1.  Relation checked for reflexivity,
// antisymmetry and transitivity at construction.
class Poset {
  public:
    Poset(std::size_t size, std::vector<std::pair<int, int>> leq_pairs);

    std::size_t size() const { return n_; }
    bool leq(int a, int b) const { return rel_[static_cast<std::size_t>(a) * n_ + b]; }
    bool lt(int a, int b) const { return a != b && leq(a, b); }

    // Optional display names for elements (used in reports/witnesses).
    std::vector<std::string> names;

  private:
    std::size_t n_ = 0;
    std::vector<char> rel_;
};

// Order complex: vertices are poset elements, simplices are chains.
SimplicialComplex order_complex(const Poset& p);

// The poset of nonempty simplices of x ordered by inclusion, with a parallel
// list giving the simplex of each element.
struct SimplexPoset {
    Poset poset;
    std::vector<Simplex> elements;
};
SimplexPoset face_poset(const SimplicialComplex& x);

// Semi-simplicial complex: cells per dimension with face maps d_0..d_k, checked
// against the simplicial identities d_i d_j = d_{j-1} d_i (i < j) on build.
class SemiSimplicialComplex {
  public:
    SemiSimplicialComplex() = default;
    // faces[k][c][i] = index of d_i(c) among the (k-1)-cells, for k >= 1.
    SemiSimplicialComplex(std::vector<std::size_t> cell_counts,
                          std::vector<std::vector<std::vector<std::size_t>>> faces);

    bool empty() const { return counts_.empty(); }
    int dim() const { return static_cast<int>(counts_.size()) - 1; }
    std::size_t cells(int d) const;
    std::size_t total_cells() const;
    // d_i of cell c in dimension d (d >= 1).
    std::size_t face(int d, std::size_t c, std::size_t i) const;

    // Vertex set of a cell under iterated face maps (with multiplicity).
    std::vector<std::size_t> cell_vertices(int d, std::size_t c) const;

    bool operator==(const SemiSimplicialComplex& o) const {
        return counts_ == o.counts_ && faces_ == o.faces_;
    }

  private:
    std::vector<std::size_t> counts_;
    std::vector<std::vector<std::vector<std::size_t>>> faces_;
};

// View x as a semi-simplicial complex (cells = simplices in canonical order,
// d_i deletes the i-th smallest vertex).
SemiSimplicialComplex as_semi_simplicial(const SimplicialComplex& x);

// Ordered version X^ord: one k-cell per (k-simplex, ordering of its vertices);
// d_i deletes the i-th vertex of the ordering.
struct OrderedCell {
    Simplex base;
    std::vector<VertexId> order;
};
struct OrderedComplex {
    SemiSimplicialComplex complex;
    // decode[d][cell] = underlying cell data
    std::vector<std::vector<OrderedCell>> decode;
};
OrderedComplex ordered(const SimplicialComplex& x);

// Barycentric subdivision of a semi-simplicial complex whose cells all have
// pairwise-distinct vertices (throws unsupported_input otherwise).  Vertices of
// the result are cells of k, numbered dimension-by-dimension.
SimplicialComplex barycentric(const SemiSimplicialComplex& k);

// Simplicial map determined by a vertex map; every image of a simplex of the
// domain must be a face of the codomain (collapses allowed).
class SimplicialMap {
  public:
    SimplicialMap(const SimplicialComplex& domain, const SimplicialComplex& codomain,
                  std::unordered_map<VertexId, VertexId> vertex_map);

    const SimplicialComplex& domain() const { return *dom_; }
    const SimplicialComplex& codomain() const { return *cod_; }
    VertexId apply(VertexId v) const;
    Simplex image(const Simplex& s) const;  // deduplicated image simplex
    SimplicialComplex image() const;        // image subcomplex of the codomain

  private:
    const SimplicialComplex* dom_;
    const SimplicialComplex* cod_;
    std::unordered_map<VertexId, VertexId> vmap_;
};

}  // namespace stablab
