#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace stablab {

// Exact engine for arcs ("tethers") in a disk with n punctures arranged on a
// horizontal line and d marked points on the bottom boundary, all to the left
// of the first puncture.  A tether runs from a marked point to a puncture and
// is considered up to isotopy fixing the boundary pointwise and the puncture
// set setwise.
//
// Each puncture carries a vertical wall: an upper ray to the top boundary and
// a lower ray to the bottom boundary.  Cutting along the walls leaves simply
// connected strips, so an isotopy class is pinned down by its reduced sequence
// of wall crossings.  Internally a class is stored two ways at once: as a loop
// in the free group on one generator per puncture (the boundary of a ribbon
// neighbourhood of the tether, convenient for the braid action) and as the
// derived crossing sequence (convenient for routing and counting).

// One transversal crossing of a wall ray.
struct WallLetter {
    int wall = 1;          // 1-based puncture index owning the wall
    bool upper = false;    // upper ray (above the puncture) or lower ray
    bool rightward = true; // direction of the crossing

    bool operator==(const WallLetter& o) const {
        return wall == o.wall && upper == o.upper && rightward == o.rightward;
    }
    bool operator<(const WallLetter& o) const {
        if (wall != o.wall) return wall < o.wall;
        if (upper != o.upper) return upper < o.upper;
        return rightward < o.rightward;
    }
};

struct Tether {
    int punctures = 1;   // n, the ambient puncture count
    int basepoints = 1;  // d, marked points on the boundary
    int basepoint = 1;   // 1-based marked point where the tether starts
    int puncture = 1;    // 1-based puncture where it ends
    bool arrive_left = true; // final approach from the left strip or the right

    // Reduced loop word, entries +-g for the standard loop around puncture g,
    // with no trailing power of the end puncture's generator.
    std::vector<int> loop;

    // Reduced wall-crossing sequence from basepoint to puncture.
    std::vector<WallLetter> crossings;

    bool operator==(const Tether& o) const {
        return punctures == o.punctures && basepoints == o.basepoints &&
               basepoint == o.basepoint && puncture == o.puncture &&
               arrive_left == o.arrive_left && crossings == o.crossings;
    }
    bool operator!=(const Tether& o) const { return !(*this == o); }
    // Deterministic total order used to fix vertex numbering in complexes.
    bool operator<(const Tether& o) const;
};

// The tether running straight from the marked point to the puncture, passing
// under every intermediate puncture.
Tether straight_tether(int punctures, int basepoints, int basepoint, int puncture);

// Rebuild a tether from basepoint, puncture and loop word; crossings and the
// arrival side are derived and the loop is put in canonical form.
Tether tether_from_loop(int punctures, int basepoints, int basepoint, int puncture,
                        std::vector<int> loop);

// Image under the half-twist generator swapping punctures |g| and |g|+1
// (negative g for the inverse twist).  The twist moving the left puncture
// under the right one is the positive generator.
Tether braid_image(const Tether& t, int signed_generator);

// Geometric (minimal) intersection count between two classes.  Tethers meeting
// only at a shared marked point or a shared end puncture count as disjoint;
// equal classes count as a parallel push-off, also disjoint.
std::int64_t tether_intersection(const Tether& a, const Tether& b);

// Sum of pairwise counts between two families (not within them).
std::int64_t system_intersection(const std::vector<Tether>& a,
                                 const std::vector<Tether>& b);

// Total crossings within one jointly routed family, self-crossings included.
// Zero for a lone tether: taut routing keeps every component embedded.
std::int64_t family_crossing_number(const std::vector<Tether>& arcs);

// Position along t of the first crossing with v, walking t from its marked
// point: (index of the segment of t between consecutive wall crossings, rank
// of the crossing within that segment).  Empty when the classes are disjoint.
std::optional<std::pair<std::int64_t, std::int64_t>>
first_crossing_rank(const Tether& t, const Tether& v);

// Surgery: cut v at its crossing with t nearest the marked end of t, keep the
// piece of v ending at its puncture, and reroute the lost piece along t back
// to t's marked point.  Requires at least one crossing.
Tether surger_tether(const Tether& t, const Tether& v);

// Same cut applied to the family member owning the crossing nearest t's
// marked end, with the whole family routed jointly.
Tether surger_system(const Tether& t, const std::vector<Tether>& family);

// Index into the family of the component owning that nearest crossing.
std::size_t nearest_crossing_owner(const Tether& t, const std::vector<Tether>& family);

// Fixed triangulation of the disk model: vertices are the punctures, the wall
// feet on the boundary, the marked points and four corners; every strip is
// triangulated by a fan from its left puncture (from the first puncture for
// the leftmost strip).
struct DiskTriangulation {
    std::vector<std::string> vertex_names;
    std::vector<std::pair<int, int>> edges;     // vertex index pairs
    std::vector<std::array<int, 3>> triangles;  // vertex index triples
};
DiskTriangulation disk_triangulation(int punctures, int basepoints);

// Crossing counts of a family with the edges of disk_triangulation, in the
// same edge order.  The family is routed jointly, so the counts describe one
// simultaneous taut picture.
std::vector<std::int64_t> routed_edge_counts(const std::vector<Tether>& arcs,
                                             int punctures, int basepoints);

// Per-triangle consistency check of an edge-count vector: every corner count
// computed from the triangle's three edge counts and its arc ends must be a
// nonnegative integer.  Returns true when the counts match a normal picture.
bool edge_counts_consistent(const std::vector<Tether>& arcs, int punctures,
                            int basepoints, const std::vector<std::int64_t>& counts);

}  // namespace stablab
