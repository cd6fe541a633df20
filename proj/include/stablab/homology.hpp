#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stablab/complex.hpp"

namespace stablab {

using BigInt = boost::multiprecision::cpp_int;

// Sparse integer matrix, column-major entry list.  Rows index the lower chain
// group, columns the higher one.
class SparseIntMatrix {
  public:
    SparseIntMatrix() = default;
    SparseIntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    void add(std::size_t r, std::size_t c, std::int64_t v);
    std::int64_t at(std::size_t r, std::size_t c) const;
    const std::map<std::pair<std::size_t, std::size_t>, std::int64_t>& entries() const {
        return entries_;
    }
    std::size_t nnz() const { return entries_.size(); }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::map<std::pair<std::size_t, std::size_t>, std::int64_t> entries_;
};

// Result of Smith normal form: invariant factors d_1 | d_2 | ... | d_r (all
// positive), plus optional unimodular transforms with U * M * V diagonal.
struct SmithResult {
    std::vector<BigInt> factors;
    std::size_t rank = 0;
    std::optional<std::vector<std::vector<BigInt>>> U;  // rows x rows
    std::optional<std::vector<std::vector<BigInt>>> V;  // cols x cols
};

SmithResult smith_normal_form(const SparseIntMatrix& m, bool with_transforms = false);

// Finitely generated abelian group Z^rank + Z/d_1 + ... with d_1 | d_2 | ...
struct FgAbelianGroup {
    std::int64_t rank = 0;
    std::vector<std::int64_t> torsion;  // each > 1, divisibility chain

    bool trivial() const { return rank == 0 && torsion.empty(); }
    bool operator==(const FgAbelianGroup& o) const {
        return rank == o.rank && torsion == o.torsion;
    }
    std::string str() const;
};

// Boundary maps of the (possibly augmented) simplicial chain complex; entry k
// is the map C_k -> C_{k-1}.  With reduced set, entry 0 is the 1 x n0
// augmentation; otherwise it is a 0 x n0 zero map.
std::vector<SparseIntMatrix> boundary_matrices(const SimplicialComplex& x, bool reduced);
std::vector<SparseIntMatrix> boundary_matrices(const SemiSimplicialComplex& x, bool reduced);

// Reduced homology in all degrees 0..dim.  empty_complex marks the convention
// H~_{-1}(empty) = Z, in which case groups is empty.
struct HomologyProfile {
    bool empty_complex = false;
    std::vector<FgAbelianGroup> groups;

    const FgAbelianGroup& reduced(int k) const;  // zero group when out of range
    bool all_trivial() const;
};

HomologyProfile reduced_homology(const SimplicialComplex& x);
HomologyProfile reduced_homology(const SemiSimplicialComplex& x);

enum class Pi1Status { kTrivial, kNontrivial, kUnknown };
const char* to_string(Pi1Status s);

struct ConnectivityOptions {
    std::size_t tietze_budget = 10'000;
    bool skip_pi1 = false;
};

// Homological connectivity certificate.  homological_connectivity is the
// largest k <= dim with H~_i = 0 for all i <= k (-2 for the empty complex, -1
// for nonempty disconnected); acyclic reports that every reduced group
// vanishes, i.e. the cap at dim is the only thing stopping a larger value.
struct ConnectivityCertificate {
    int homological_connectivity = -2;
    bool acyclic = false;
    int dim = -1;
    Pi1Status pi1 = Pi1Status::kUnknown;

    // "is at least k" taking the acyclic cap into account
    bool at_least(int k) const {
        return homological_connectivity >= k || (acyclic && !is_empty());
    }
    bool is_empty() const { return homological_connectivity == -2; }
};

ConnectivityCertificate connectivity(const SimplicialComplex& x,
                                     const ConnectivityOptions& opts = {});
ConnectivityCertificate connectivity(const SemiSimplicialComplex& x,
                                     const ConnectivityOptions& opts = {});

// Fundamental-group status of the 2-skeleton via an edge-path presentation and
// bounded simplification.  Never used to certify failure of a connectivity
// hypothesis on its own; callers treat kUnknown as "no pi1 evidence".
Pi1Status pi1_status(const SimplicialComplex& x, std::size_t tietze_budget);

// Betti/torsion table as CSV: dimension,rank,"t1;t2;..." per row.
std::string betti_csv(const HomologyProfile& p);

// JSON rendering of a profile: {"empty_complex": ..., "groups": [{"rank": ...,
// "torsion": [...]}, ...]}.
std::string profile_json(const HomologyProfile& p);

}  // namespace stablab
