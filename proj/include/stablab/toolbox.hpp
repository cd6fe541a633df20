#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stablab/complex.hpp"
#include "stablab/homology.hpp"
#include "stablab/rational.hpp"

namespace stablab {

// Marks a set of simplices of an ambient complex as "bad".  The predicate must
// be pure: audits may evaluate it several times per simplex and will reject a
// rule that answers inconsistently.
struct BadSimplexRule {
    std::string name;
    std::function<bool(const Simplex&)> predicate;

    bool bad(const Simplex& s) const { return predicate(s); }
};

// Nonnegative vertex weights; the weight of a simplex is the sum over its
// vertices.  Retraction arguments require strictly positive weight on every
// vertex outside the target subcomplex.
struct ComplexityFunction {
    std::function<std::int64_t(VertexId)> vertex_cost;

    std::int64_t cost(const Simplex& s) const;
};

// Surgery flow data: delta(v) is the replacement simplex for a vertex v
// outside the target subcomplex, pick(s) selects which vertex of s to move
// first.  Both must be pure functions.
struct FlowRule {
    std::function<Simplex(VertexId)> delta;
    std::function<VertexId(const Simplex&)> pick;
};

struct HypothesisCheck {
    std::string name;
    bool pass = true;
    std::string witness;  // populated on failure, or as an informational note
};

// Uniform audit result: each hypothesis gets a pass/fail row, and when all
// hypotheses hold the conclusion is re-derived by an independent computation.
struct Report {
    std::string statement;
    std::vector<HypothesisCheck> hypotheses;
    std::string conclusion_crosscheck = "skipped";  // "confirmed ...", "failed: ...", "skipped"
    std::string binding_constraint;

    bool hypotheses_pass() const;
    // hypotheses pass and the cross-check did not fail
    bool ok() const;
    std::string to_json() const;
};

using RuleAudit = Report;
using FlowAudit = Report;

// Audits the two structural conditions a bad-simplex rule must satisfy inside
// x relative to the subcomplex y: every simplex with no bad face lies in y,
// and bad faces of a common simplex span a bad simplex.  Exhaustive over the
// face table.  Throws malformed_input if y is not a subcomplex of x or the
// rule is not deterministic.
RuleAudit check_bad_rule(const SimplicialComplex& x, const SimplicialComplex& y,
                         const BadSimplexRule& rule);

// The subcomplex of lk(sigma) of simplices tau such that every bad face of
// tau * sigma is contained in sigma.  Requires sigma to be a bad face of x.
SimplicialComplex good_link(const SimplicialComplex& x, const BadSimplexRule& rule,
                            const Simplex& sigma);

// Which conclusion a link argument is asked to certify:
//   kPair       the pair (x, y) is n-connected
//   kSubcomplex x n-connected plus good links one degree stronger gives y n-connected
//   kAmbient    y n-connected plus the standard good-link bound gives x n-connected
enum class LinkConclusion { kPair, kSubcomplex, kAmbient };

// Runs check_bad_rule, then checks the connectivity of every good link G_sigma
// against n - dim(sigma) - 1 (kPair, kAmbient) or n - dim(sigma) (kSubcomplex),
// plus the mode's absolute connectivity hypothesis.  On a full pass the
// conclusion is cross-checked homologically.
Report verify_link_argument(const SimplicialComplex& x, const SimplicialComplex& y,
                            const BadSimplexRule& rule, int n,
                            LinkConclusion mode = LinkConclusion::kPair);

// Monotone map of finite posets; owns copies of both posets.
struct PosetMap {
    Poset domain;
    Poset codomain;
    std::vector<std::size_t> map;  // element of domain -> element of codomain

    PosetMap(Poset dom, Poset cod, std::vector<std::size_t> m);
};

// A fiber of a poset map, with the original element indices kept alongside
// the induced order.
struct SubPoset {
    Poset poset;
    std::vector<std::size_t> elements;
};

// A fiber of the induced map on face posets, listed by domain simplex.
struct SimplexSubPoset {
    Poset poset;
    std::vector<Simplex> simplices;
};

// The four fiber notions.  For a poset map phi and target element q:
//   under_fiber = { p : phi(p) <= q }       over_fiber = { p : phi(p) >= q }
// For a simplicial map f and target simplex sigma, the same notions applied to
// the induced map of face posets:
//   under_fiber = { tau : f(tau) <= sigma }   (isomorphic to the face poset of
//                                              preimage_complex)
//   over_fiber  = { tau : f(tau) >= sigma }
//   barycentric_fiber = { tau : f(tau) = sigma }, the fiber over the
//                       barycenter of sigma
// preimage_complex returns the honest subcomplex { tau : f(tau) <= sigma }.
SubPoset under_fiber(const PosetMap& phi, std::size_t q);
SubPoset over_fiber(const PosetMap& phi, std::size_t q);
SimplexSubPoset under_fiber(const SimplicialMap& f, const Simplex& sigma);
SimplexSubPoset over_fiber(const SimplicialMap& f, const Simplex& sigma);
SimplexSubPoset barycentric_fiber(const SimplicialMap& f, const Simplex& sigma);
SimplicialComplex preimage_complex(const SimplicialMap& f, const Simplex& sigma);

enum class FiberDirection { kLower, kUpper };

// Checks that every fiber of phi in the chosen direction is homologically
// contractible (nonempty and acyclic), with fundamental-group evidence
// attached but not gating.  On a full pass, cross-checks that the order
// complexes of domain and codomain have identical reduced homology.
Report quillen_audit(const PosetMap& phi, FiberDirection direction);

// Checks that the codomain of f is n-connected and that the barycentric fiber
// over every k-simplex is (n - k)-connected; on a full pass, cross-checks that
// the domain is n-connected.
Report fiber_connectivity_check(const SimplicialMap& f, int n);

// Audits the deformation-retraction hypotheses for flowing x onto y:
//   (i)   the span of sigma with delta(pick(sigma)) is a simplex of x,
//   (ii)  complexity strictly decreases from v to delta(v),
//   (iii) faces of sigma keeping the picked vertex pick the same vertex.
// On a full pass, cross-checks that x and y have identical reduced homology.
// Throws malformed_input if y is not a subcomplex of x or pick returns a
// vertex outside its simplex.
FlowAudit check_flow(const SimplicialComplex& x, const SimplicialComplex& y,
                     const FlowRule& flow, const ComplexityFunction& c);

struct WcmEntry {
    std::optional<Simplex> simplex;  // nullopt for the whole-complex row
    int required = 0;
    ConnectivityCertificate got;
    bool pass = false;
};

struct WcmResult {
    bool wcm = false;
    std::vector<WcmEntry> ledger;
    std::string binding;  // tightest constraint among the passing/failing rows
};

// Weak Cohen-Macaulay test at a rational level: the complex must be
// (floor(level) - 1)-connected and the link of every k-simplex must be
// (floor(level) - k - 2)-connected, all certified homologically.
WcmResult is_wCM(const SimplicialComplex& x, const Rat& level);

// If x is wCM of level n, computes the homological connectivity of the
// ordered-tuples complex of x and checks it is at least n - 1.  Both values
// appear in the report.
Report ordered_connectivity_test(const SimplicialComplex& x, int n);

struct InjectivityResult {
    bool injective = false;       // every collapsed edge lies in z
    bool link_condition = false;  // f(lk(v)) inside lk(f(v)) for vertices outside z
    std::optional<Simplex> witness;
};

// Simplexwise injectivity of f relative to a subcomplex z of its domain: an
// edge may be collapsed only if it lies in z.  The equivalent link-image
// condition is computed alongside and the two are checked against each other
// whenever z contains every domain edge between its own vertices.
InjectivityResult simplexwise_injective_rel(const SimplicialMap& f, const SimplicialComplex& z);

enum class ClaimStatus { kVerifiedAt, kUntestable, kRegistryOnly };

// A connectivity statement about a named family at concrete parameter values.
// Comparisons against certificates take the floor of the claimed value, and
// contractible claims accept any acyclic nonempty certificate.
struct ConnectivityClaim {
    std::string family;
    std::map<std::string, std::int64_t> parameters;
    Rat claimed{0};
    bool contractible = false;
    ClaimStatus status = ClaimStatus::kRegistryOnly;
    std::string statement;

    bool met_by(const ConnectivityCertificate& cert) const;
};

// The claims this library ships with, at representative parameter values.
std::vector<ConnectivityClaim> builtin_claims();

}  // namespace stablab
