#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stablab/homology.hpp"
#include "stablab/rational.hpp"
#include "stablab/toolbox.hpp"

namespace stablab {

// Bookkeeping for the spectral sequence of a group acting highly transitively
// on an (n-1)-dimensional complex.  Group homology is never computed here;
// callers supply whatever concrete groups they know and everything else stays
// symbolic.  The map lattice {zero, iso, inclusion, unknown} is deliberately
// coarse so symbolic propagation can never overclaim.

enum class MapKind { kZero, kIso, kInclusion, kUnknown };

std::string to_string(MapKind k);

struct TableEntry {
    bool known = false;
    FgAbelianGroup group;
};

// Homology of a family of nested groups, indexed by (family index m, degree q),
// together with the kind of each stabilization map H_q(G_m) -> H_q(G_{m+1}).
// Entries never set stay symbolic.  Concrete degree-zero entries must be a
// single copy of the integers (the groups are assumed connected in the sense
// that H_0 is free of rank one).
class GroupHomologyTable {
  public:
    void set(std::int64_t m, std::int64_t q, FgAbelianGroup g);
    void set_map(std::int64_t m, std::int64_t q, MapKind kind);

    TableEntry entry(std::int64_t m, std::int64_t q) const;
    MapKind map_kind(std::int64_t m, std::int64_t q) const;

    // Constant family of trivial groups: one Z in degree zero, nothing above,
    // every stabilization map an isomorphism.
    static GroupHomologyTable trivial_groups(std::int64_t mmax, std::int64_t qmax);

  private:
    std::map<std::pair<std::int64_t, std::int64_t>, FgAbelianGroup> entries_;
    std::map<std::pair<std::int64_t, std::int64_t>, MapKind> kinds_;
};

// Seam for orientation-twisted coefficients.  Stabilizers fixing simplices
// pointwise make every coefficient system untwisted, and untwisted is the only
// supported mode; asking for the twisted variant is a hard error.
class CoefficientSystem {
  public:
    CoefficientSystem() = default;
    explicit CoefficientSystem(bool twisted);
    bool twisted() const { return false; }
};

// First page of the column filtration: column p holds H_q(G_{n-p-1}) for
// -1 <= p <= n-1, and the differential maps column p to column p-1.  The
// augmentation column p = -1 carries the homology of the full group.
struct E1Page {
    int n = 1;
    int qmax = 0;
    std::map<std::pair<int, int>, TableEntry> grid;
    std::map<std::pair<int, int>, MapKind> d1;

    TableEntry entry(int p, int q) const;
    MapKind d1_kind(int p, int q) const;
};

// Populates the grid from the table.  The only differential kind filled in is
// the one for column zero, whose single face term is the stabilization map
// itself; all other columns start unknown because their differentials are
// alternating sums of several conjugated inclusion maps.
E1Page e1_page(int n, const GroupHomologyTable& table, int qmax,
               const CoefficientSystem& coefficients = CoefficientSystem());

// Overwrites the differential kinds of a page built from `table` under the
// edge-swap symmetry, which makes the p+1 face terms of each differential
// equal: an even number of equal terms with alternating signs cancels, so odd
// columns carry zero and even columns carry the stabilization map.
void apply_equal_terms_symmetry(E1Page& page, const GroupHomologyTable& table);

// Affine connectivity formula slope*n + offset, used for the connectivity of
// the complex the group acts on and of its quotient.
struct AffineFormula {
    Rat slope{0};
    Rat offset{0};
    std::string label;

    Rat at(std::int64_t n) const;

    static AffineFormula parameter_minus(std::int64_t k);
    static AffineFormula half_parameter_minus(std::int64_t k);
    static AffineFormula custom(Rat slope, Rat offset, std::string label);
};

struct StabilityCondition {
    std::string name;
    bool holds = false;
    std::string note;
};

// Standing assumptions for the stability argument: a transitive action on an
// (n-1)-dimensional complex, stabilizers conjugate to the group one step down
// the family and fixing simplices pointwise, and an element swapping the two
// endpoints of any edge while commuting with the edge stabilizer.  The swap
// condition admits a weakened form (a swap supported in an enlarged
// neighborhood) that still yields the injectivity half of the argument.
struct StabilityHypotheses {
    StabilityCondition transitive_action;
    StabilityCondition stabilizer_pattern;
    StabilityCondition edge_swap;
    bool weakened_edge_swap = false;
    std::string weakened_note;
    AffineFormula complex_connectivity;
    AffineFormula quotient_connectivity = AffineFormula::parameter_minus(2);

    // All three conditions asserted by the caller, with the given connectivity
    // formula for the complex and the default one for the quotient.
    static StabilityHypotheses standard(AffineFormula cx);
};

struct InequalityLine {
    std::int64_t i = 0;
    std::string name;
    std::string rendered;
    bool holds = false;
    Rat slack{0};
};

// Outcome of the range search.  `c` is the least constant for which the
// stabilization maps are surjective from n = 2i+c on and injective from
// n = 2i+c+1 on, so isomorphisms for n > 2i+c.  `conditional` flags reports
// whose standing conditions were asserted but not verified.
struct StabilityRangeReport {
    bool feasible = false;
    bool conditional = false;
    std::int64_t c = 0;
    std::string phi;
    std::vector<HypothesisCheck> conditions;
    std::vector<InequalityLine> ledger;
    std::string binding;
    std::string infeasibility;

    std::string to_json() const;
};

StabilityRangeReport stability_ranges(const StabilityHypotheses& h, std::int64_t imax,
                                      std::int64_t c_cap = 8);

// Symbolic audit of the braid-group page.  For odd n the induction forces the
// augmentation-column differential to be an isomorphism in every degree, and
// for every n the convergence-to-zero constraint forces the homology of the
// n-strand group to vanish from degree n on.
struct BraidPatternResult {
    int n = 1;
    int qmax = 0;
    bool odd_regime = false;
    bool forced_iso = false;
    int vanishing_from = 1;
    E1Page page;
    Report report;
};

BraidPatternResult braid_pattern(int n, int imax);

// Stable-range arithmetic in homology degree i for the four boundary
// stabilization maps on mapping class groups of surfaces with boundary.
struct MapRange {
    std::string map_name;
    std::string description;
    std::int64_t iso_from = 0;
    std::optional<std::int64_t> surjective_from;
    std::string note;
};

std::vector<MapRange> mcg_ranges(std::int64_t i);

enum class E2Kind { kZero, kGroup, kUnknown };

struct E2Cell {
    E2Kind kind = E2Kind::kUnknown;
    FgAbelianGroup group;
};

// Row homology of the page wherever the map-kind lattice pins it down; cells
// the lattice cannot determine stay symbolic.
std::map<std::pair<int, int>, E2Cell> e2_page(const E1Page& page);

// Checks that the page can converge to zero on the given range: differential
// kinds must compose to zero, and no concrete nonzero second-page cell may sit
// in the range with every potential higher differential source and target
// already known to vanish.
Report convergence_audit(const E1Page& page,
                         const std::function<bool(int, int)>& target_zero);

std::string page_json(const E1Page& page, const std::vector<Report>& audits = {});

}  // namespace stablab
