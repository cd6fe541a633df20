#include "stablab/toolbox.hpp"

#include <algorithm>
#include <climits>
#include <json.hpp>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace stablab {

namespace {

bool is_subcomplex(const SimplicialComplex& sub, const SimplicialComplex& amb) {
    for (const Simplex& m : sub.maximal_simplices())
        if (!amb.has_face(m)) return false;
    return true;
}

// Merge vertex sets; unlike Simplex::join this tolerates overlap.
Simplex span_union(const Simplex& a, const Simplex& b) {
    std::vector<VertexId> v(a.vertices());
    v.insert(v.end(), b.vertices().begin(), b.vertices().end());
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return Simplex(std::move(v));
}

// Purity spot-check: the audits promise deterministic rules, so every rule
// evaluation goes through one of these and a flake becomes a hard error.
bool eval_bad(const BadSimplexRule& rule, const Simplex& s) {
    bool a = rule.bad(s), b = rule.bad(s);
    if (a != b) throw malformed_input("bad-simplex rule '" + rule.name + "' is not deterministic on " + s.str());
    return a;
}

std::string cert_desc(const ConnectivityCertificate& c) {
    if (c.is_empty()) return "empty";
    std::string s = "connectivity " + std::to_string(c.homological_connectivity);
    if (c.acyclic) s += " (acyclic)";
    return s;
}

std::string group_list(const HomologyProfile& p) {
    if (p.empty_complex) return "(empty complex)";
    std::string s;
    for (std::size_t i = 0; i < p.groups.size(); ++i) {
        if (i) s += " ";
        s += "H~" + std::to_string(i) + "=" + p.groups[i].str();
    }
    return s.empty() ? "(all trivial)" : s;
}

// First degree where the reduced homology profiles differ, described; empty
// optional when they agree everywhere.
std::optional<std::string> profile_mismatch(const HomologyProfile& a, const HomologyProfile& b) {
    if (a.empty_complex != b.empty_complex)
        return std::string("one side is the empty complex and the other is not");
    int top = static_cast<int>(std::max(a.groups.size(), b.groups.size()));
    for (int k = 0; k < top; ++k)
        if (!(a.reduced(k) == b.reduced(k)))
            return "H~" + std::to_string(k) + ": " + a.reduced(k).str() + " vs " + b.reduced(k).str();
    return std::nullopt;
}

// Homology of the quotient chain complex C(x)/C(y), one group per degree.
// Used as the finitely checkable meaning of "the pair (x, y) is n-connected".
std::vector<FgAbelianGroup> relative_homology(const SimplicialComplex& x,
                                              const SimplicialComplex& y) {
    int dim = x.dim();
    if (dim < 0) return {};
    // basis: faces of x not in y, per dimension
    std::vector<std::vector<Simplex>> basis(dim + 1);
    std::vector<std::unordered_map<Simplex, std::size_t, SimplexHash>> pos(dim + 1);
    for (int k = 0; k <= dim; ++k)
        for (const Simplex& s : x.faces(k))
            if (!y.has_face(s)) {
                pos[k][s] = basis[k].size();
                basis[k].push_back(s);
            }
    std::vector<SparseIntMatrix> bd(dim + 2);
    bd[0] = SparseIntMatrix(0, basis[0].size());
    for (int k = 1; k <= dim; ++k) {
        SparseIntMatrix m(basis[k - 1].size(), basis[k].size());
        for (std::size_t c = 0; c < basis[k].size(); ++c) {
            const Simplex& s = basis[k][c];
            for (std::size_t i = 0; i < s.size(); ++i) {
                Simplex f = s.facet(i);
                auto it = pos[k - 1].find(f);
                if (it != pos[k - 1].end()) m.add(it->second, c, (i % 2 == 0) ? 1 : -1);
            }
        }
        bd[k] = std::move(m);
    }
    bd[dim + 1] = SparseIntMatrix(basis[dim].size(), 0);
    std::vector<SmithResult> snf(dim + 2);
    for (int k = 0; k <= dim + 1; ++k) snf[k] = smith_normal_form(bd[k]);
    std::vector<FgAbelianGroup> out(dim + 1);
    for (int k = 0; k <= dim; ++k) {
        FgAbelianGroup g;
        g.rank = static_cast<std::int64_t>(basis[k].size()) -
                 static_cast<std::int64_t>(snf[k].rank) - static_cast<std::int64_t>(snf[k + 1].rank);
        for (const BigInt& d : snf[k + 1].factors)
            if (d > 1) {
                if (d > BigInt(INT64_MAX)) throw unsupported_input("relative torsion coefficient overflows int64");
                g.torsion.push_back(static_cast<std::int64_t>(d));
            }
        out[k] = std::move(g);
    }
    return out;
}

// Shared by check_bad_rule and verify_link_argument.
struct BadAnalysis {
    Report audit;
    std::vector<Simplex> bad;
};

BadAnalysis analyze_bad_rule(const SimplicialComplex& x, const SimplicialComplex& y,
                             const BadSimplexRule& rule) {
    if (!is_subcomplex(y, x)) throw malformed_input("bad-simplex audit: second complex is not a subcomplex of the first");
    BadAnalysis out;
    out.audit.statement =
        "rule '" + rule.name + "': every simplex free of bad faces lies in the subcomplex, "
        "and bad faces of a common simplex span a bad simplex";

    // per-dimension bad flags plus a downward "has a bad face" table
    std::vector<std::vector<char>> bad_flag, has_bad;
    int dim = x.dim();
    bad_flag.resize(dim + 1);
    has_bad.resize(dim + 1);
    for (int k = 0; k <= dim; ++k) {
        const auto& fk = x.faces(k);
        bad_flag[k].assign(fk.size(), 0);
        has_bad[k].assign(fk.size(), 0);
        for (std::size_t i = 0; i < fk.size(); ++i) {
            bool b = eval_bad(rule, fk[i]);
            bad_flag[k][i] = b ? 1 : 0;
            char hb = b ? 1 : 0;
            if (k > 0)
                for (std::size_t j = 0; j < fk[i].size() && !hb; ++j)
                    hb = has_bad[k - 1][x.face_index(fk[i].facet(j))];
            has_bad[k][i] = hb;
            if (b) out.bad.push_back(fk[i]);
        }
    }

    HypothesisCheck outside{"bad simplices lie outside the subcomplex", true, ""};
    for (const Simplex& s : out.bad)
        if (y.has_face(s)) {
            outside.pass = false;
            outside.witness = s.str() + " is bad but lies in the subcomplex";
            break;
        }
    out.audit.hypotheses.push_back(outside);

    HypothesisCheck cond1{"simplices with no bad face lie in the subcomplex", true, ""};
    for (int k = 0; k <= dim && cond1.pass; ++k) {
        const auto& fk = x.faces(k);
        for (std::size_t i = 0; i < fk.size(); ++i)
            if (!has_bad[k][i] && !y.has_face(fk[i])) {
                cond1.pass = false;
                cond1.witness = fk[i].str() + " has no bad face yet is outside the subcomplex";
                break;
            }
    }
    out.audit.hypotheses.push_back(cond1);

    HypothesisCheck cond2{"bad faces of a common simplex span a bad simplex", true, ""};
    for (std::size_t i = 0; i < out.bad.size() && cond2.pass; ++i)
        for (std::size_t j = i + 1; j < out.bad.size(); ++j) {
            Simplex sp = span_union(out.bad[i], out.bad[j]);
            if (!x.has_face(sp)) continue;  // not faces of a common simplex
            if (!bad_flag[sp.dim()][x.face_index(sp)]) {
                cond2.pass = false;
                cond2.witness = out.bad[i].str() + " and " + out.bad[j].str() + " span " + sp.str() + ", which is not bad";
                break;
            }
        }
    out.audit.hypotheses.push_back(cond2);

    if (!out.audit.hypotheses_pass())
        for (const auto& h : out.audit.hypotheses)
            if (!h.pass) {
                out.audit.binding_constraint = h.name;
                break;
            }
    return out;
}

void min_slack_update(long long slack, const std::string& desc, long long& best,
                      std::string& best_desc) {
    if (slack < best) {
        best = slack;
        best_desc = desc;
    }
}

}  // namespace

std::int64_t ComplexityFunction::cost(const Simplex& s) const {
    std::int64_t total = 0;
    for (VertexId v : s.vertices()) total += vertex_cost(v);
    return total;
}

bool Report::hypotheses_pass() const {
    for (const auto& h : hypotheses)
        if (!h.pass) return false;
    return true;
}

bool Report::ok() const {
    return hypotheses_pass() && conclusion_crosscheck.rfind("failed", 0) != 0;
}

std::string Report::to_json() const {
    nlohmann::json j;
    j["statement"] = statement;
    j["hypotheses"] = nlohmann::json::array();
    for (const auto& h : hypotheses)
        j["hypotheses"].push_back({{"name", h.name}, {"pass", h.pass}, {"witness", h.witness}});
    j["conclusion_crosscheck"] = conclusion_crosscheck;
    j["binding_constraint"] = binding_constraint;
    return j.dump(2);
}

RuleAudit check_bad_rule(const SimplicialComplex& x, const SimplicialComplex& y,
                         const BadSimplexRule& rule) {
    return analyze_bad_rule(x, y, rule).audit;
}

SimplicialComplex good_link(const SimplicialComplex& x, const BadSimplexRule& rule,
                            const Simplex& sigma) {
    if (!x.has_face(sigma)) throw malformed_input("good_link: " + sigma.str() + " is not a simplex of the complex");
    if (!eval_bad(rule, sigma)) throw malformed_input("good_link: " + sigma.str() + " is not bad under rule '" + rule.name + "'");
    SimplicialComplex lk = link(x, sigma);
    std::vector<Simplex> good;
    for (const Simplex& tau : lk.all_faces()) {
        Simplex total = tau.join(sigma);
        bool ok = true;
        // a bad face of tau * sigma not inside sigma must touch tau
        for (const Simplex& beta : total.faces()) {
            if (beta.is_face_of(sigma)) continue;
            if (eval_bad(rule, beta)) {
                ok = false;
                break;
            }
        }
        if (ok) good.push_back(tau);
    }
    return SimplicialComplex::from_maximal(std::move(good));
}

Report verify_link_argument(const SimplicialComplex& x, const SimplicialComplex& y,
                            const BadSimplexRule& rule, int n, LinkConclusion mode) {
    BadAnalysis an = analyze_bad_rule(x, y, rule);
    Report r;
    switch (mode) {
        case LinkConclusion::kPair:
            r.statement = "link argument: good links of bad simplices are (n - dim - 1)-connected, "
                          "so the inclusion of the subcomplex is n-connected as a pair (n = " + std::to_string(n) + ")";
            break;
        case LinkConclusion::kSubcomplex:
            r.statement = "link argument: ambient complex n-connected and good links (n - dim)-connected, "
                          "so the subcomplex is n-connected (n = " + std::to_string(n) + ")";
            break;
        case LinkConclusion::kAmbient:
            r.statement = "link argument: subcomplex n-connected and good links (n - dim - 1)-connected, "
                          "so the ambient complex is n-connected (n = " + std::to_string(n) + ")";
            break;
    }

    bool structural = an.audit.hypotheses_pass();
    r.hypotheses.push_back({"bad-simplex structural conditions", structural,
                            structural ? "" : an.audit.binding_constraint});

    ConnectivityOptions fast;
    fast.skip_pi1 = true;

    if (mode == LinkConclusion::kSubcomplex) {
        ConnectivityCertificate cx = connectivity(x, fast);
        r.hypotheses.push_back({"ambient complex is n-connected", cx.at_least(n),
                                cx.at_least(n) ? "" : cert_desc(cx)});
    } else if (mode == LinkConclusion::kAmbient) {
        ConnectivityCertificate cy = connectivity(y, fast);
        r.hypotheses.push_back({"subcomplex is n-connected", cy.at_least(n),
                                cy.at_least(n) ? "" : cert_desc(cy)});
    }

    HypothesisCheck links{"good links reach the required connectivity", true, ""};
    long long best_slack = LLONG_MAX;
    std::string best_desc;
    if (structural) {
        for (const Simplex& s : an.bad) {
            SimplicialComplex g = good_link(x, rule, s);
            ConnectivityCertificate cg = connectivity(g, fast);
            int required = n - s.dim() - (mode == LinkConclusion::kSubcomplex ? 0 : 1);
            bool pass = cg.at_least(required);
            long long achieved = (cg.acyclic && !cg.is_empty()) ? LLONG_MAX / 2
                                                                : cg.homological_connectivity;
            min_slack_update(achieved - required,
                             "good link of " + s.str() + " needs connectivity " +
                                 std::to_string(required) + ", has " + cert_desc(cg),
                             best_slack, best_desc);
            if (!pass && links.pass) {
                links.pass = false;
                links.witness = "good link of " + s.str() + " needs connectivity " +
                                std::to_string(required) + " but has " + cert_desc(cg);
            }
        }
    } else {
        links.pass = false;
        links.witness = "structural conditions failed, good links not evaluated";
    }
    r.hypotheses.push_back(links);
    if (best_slack < LLONG_MAX) r.binding_constraint = best_desc;

    if (r.hypotheses_pass()) {
        if (mode == LinkConclusion::kPair) {
            std::vector<FgAbelianGroup> rel = relative_homology(x, y);
            std::string fail;
            for (int k = 0; k <= n && k < static_cast<int>(rel.size()); ++k)
                if (!rel[k].trivial()) {
                    fail = "relative H_" + std::to_string(k) + " = " + rel[k].str();
                    break;
                }
            r.conclusion_crosscheck = fail.empty()
                ? "confirmed: relative homology vanishes through degree " + std::to_string(n)
                : "failed: " + fail;
        } else {
            const SimplicialComplex& target = (mode == LinkConclusion::kSubcomplex) ? y : x;
            ConnectivityCertificate ct = connectivity(target, fast);
            r.conclusion_crosscheck = ct.at_least(n)
                ? "confirmed: conclusion complex has " + cert_desc(ct)
                : "failed: conclusion complex has only " + cert_desc(ct);
        }
    }
    return r;
}

PosetMap::PosetMap(Poset dom, Poset cod, std::vector<std::size_t> m)
    : domain(std::move(dom)), codomain(std::move(cod)), map(std::move(m)) {
    if (map.size() != domain.size()) throw malformed_input("poset map: size mismatch with domain");
    for (std::size_t v : map)
        if (v >= codomain.size()) throw malformed_input("poset map: image element out of range");
    for (std::size_t a = 0; a < domain.size(); ++a)
        for (std::size_t b = 0; b < domain.size(); ++b)
            if (domain.leq(static_cast<int>(a), static_cast<int>(b)) &&
                !codomain.leq(static_cast<int>(map[a]), static_cast<int>(map[b])))
                throw malformed_input("poset map: not monotone at pair (" + std::to_string(a) + ", " + std::to_string(b) + ")");
}

namespace {

SubPoset restrict_poset(const Poset& p, std::vector<std::size_t> elements) {
    std::vector<std::pair<int, int>> pairs;
    for (std::size_t i = 0; i < elements.size(); ++i)
        for (std::size_t j = 0; j < elements.size(); ++j)
            if (i != j && p.leq(static_cast<int>(elements[i]), static_cast<int>(elements[j])))
                pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
    Poset sub(elements.size(), std::move(pairs));
    if (!p.names.empty()) {
        sub.names.reserve(elements.size());
        for (std::size_t e : elements) sub.names.push_back(p.names[e]);
    }
    return {std::move(sub), std::move(elements)};
}

}  // namespace

SubPoset under_fiber(const PosetMap& phi, std::size_t q) {
    if (q >= phi.codomain.size()) throw malformed_input("fiber target out of range");
    std::vector<std::size_t> sel;
    for (std::size_t p = 0; p < phi.domain.size(); ++p)
        if (phi.codomain.leq(static_cast<int>(phi.map[p]), static_cast<int>(q))) sel.push_back(p);
    return restrict_poset(phi.domain, std::move(sel));
}

SubPoset over_fiber(const PosetMap& phi, std::size_t q) {
    if (q >= phi.codomain.size()) throw malformed_input("fiber target out of range");
    std::vector<std::size_t> sel;
    for (std::size_t p = 0; p < phi.domain.size(); ++p)
        if (phi.codomain.leq(static_cast<int>(q), static_cast<int>(phi.map[p]))) sel.push_back(p);
    return restrict_poset(phi.domain, std::move(sel));
}

namespace {

enum class SimplexFiberKind { kUnder, kOver, kEqual };

SimplexSubPoset simplex_fiber(const SimplicialMap& f, const Simplex& sigma, SimplexFiberKind kind) {
    if (!f.codomain().has_face(sigma))
        throw malformed_input("fiber target " + sigma.str() + " is not a simplex of the codomain");
    std::vector<Simplex> sel;
    for (const Simplex& tau : f.domain().all_faces()) {
        Simplex img = f.image(tau);
        bool in = false;
        switch (kind) {
            case SimplexFiberKind::kUnder: in = img.is_face_of(sigma); break;
            case SimplexFiberKind::kOver: in = sigma.is_face_of(img); break;
            case SimplexFiberKind::kEqual: in = img == sigma; break;
        }
        if (in) sel.push_back(tau);
    }
    std::vector<std::pair<int, int>> pairs;
    for (std::size_t i = 0; i < sel.size(); ++i)
        for (std::size_t j = 0; j < sel.size(); ++j)
            if (i != j && sel[i].is_face_of(sel[j]))
                pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
    Poset p(sel.size(), std::move(pairs));
    p.names.reserve(sel.size());
    for (const Simplex& s : sel) p.names.push_back(s.str());
    return {std::move(p), std::move(sel)};
}

}  // namespace

SimplexSubPoset under_fiber(const SimplicialMap& f, const Simplex& sigma) {
    return simplex_fiber(f, sigma, SimplexFiberKind::kUnder);
}

SimplexSubPoset over_fiber(const SimplicialMap& f, const Simplex& sigma) {
    return simplex_fiber(f, sigma, SimplexFiberKind::kOver);
}

SimplexSubPoset barycentric_fiber(const SimplicialMap& f, const Simplex& sigma) {
    return simplex_fiber(f, sigma, SimplexFiberKind::kEqual);
}

SimplicialComplex preimage_complex(const SimplicialMap& f, const Simplex& sigma) {
    if (!f.codomain().has_face(sigma))
        throw malformed_input("fiber target " + sigma.str() + " is not a simplex of the codomain");
    std::vector<Simplex> sel;
    for (const Simplex& tau : f.domain().all_faces())
        if (f.image(tau).is_face_of(sigma)) sel.push_back(tau);
    return SimplicialComplex::from_maximal(std::move(sel));
}

Report quillen_audit(const PosetMap& phi, FiberDirection direction) {
    Report r;
    r.statement = "a poset map whose fibers are all contractible induces a homotopy equivalence of order complexes";
    std::vector<std::string> pi1_unknown;
    for (std::size_t q = 0; q < phi.codomain.size(); ++q) {
        SubPoset fb = (direction == FiberDirection::kLower) ? under_fiber(phi, q) : over_fiber(phi, q);
        ConnectivityCertificate cert = connectivity(order_complex(fb.poset));
        std::string label = phi.codomain.names.empty() ? std::to_string(q) : phi.codomain.names[q];
        bool pass = cert.acyclic && !cert.is_empty() && cert.pi1 != Pi1Status::kNontrivial;
        r.hypotheses.push_back({"fiber over " + label + " is contractible", pass,
                                pass ? "" : cert_desc(cert)});
        if (pass && cert.pi1 == Pi1Status::kUnknown) pi1_unknown.push_back(label);
        if (!pass && r.binding_constraint.empty())
            r.binding_constraint = "fiber over " + label + ": " + cert_desc(cert);
    }
    if (!pi1_unknown.empty()) {
        std::string note = "no fundamental-group certificate for fibers over:";
        for (const auto& s : pi1_unknown) note += " " + s;
        r.hypotheses.push_back({"fundamental-group evidence", true, note});
    }
    if (r.hypotheses_pass()) {
        HomologyProfile hp = reduced_homology(order_complex(phi.domain));
        HomologyProfile hq = reduced_homology(order_complex(phi.codomain));
        auto mismatch = profile_mismatch(hp, hq);
        r.conclusion_crosscheck = mismatch
            ? "failed: order complexes differ at " + *mismatch
            : "confirmed: order complexes share reduced homology " + group_list(hq);
    }
    return r;
}

Report fiber_connectivity_check(const SimplicialMap& f, int n) {
    Report r;
    r.statement = "a simplicial map whose barycentric fibers over k-simplices are (n - k)-connected "
                  "transfers n-connectedness from the codomain to the domain (n = " + std::to_string(n) + ")";
    ConnectivityOptions fast;
    fast.skip_pi1 = true;

    ConnectivityCertificate cy = connectivity(f.codomain(), fast);
    r.hypotheses.push_back({"codomain is n-connected", cy.at_least(n),
                            cy.at_least(n) ? "" : cert_desc(cy)});

    HypothesisCheck fibers{"barycentric fibers reach the required connectivity", true, ""};
    long long best_slack = LLONG_MAX;
    std::string best_desc;
    for (int k = 0; k <= f.codomain().dim(); ++k)
        for (const Simplex& s : f.codomain().faces(k)) {
            SimplexSubPoset fb = barycentric_fiber(f, s);
            ConnectivityCertificate cert = connectivity(order_complex(fb.poset), fast);
            int required = n - k;
            bool pass = cert.at_least(required);
            long long achieved = (cert.acyclic && !cert.is_empty()) ? LLONG_MAX / 2
                                                                    : cert.homological_connectivity;
            min_slack_update(achieved - required,
                             "fiber over " + s.str() + " needs connectivity " +
                                 std::to_string(required) + ", has " + cert_desc(cert),
                             best_slack, best_desc);
            if (!pass && fibers.pass) {
                fibers.pass = false;
                fibers.witness = "fiber over " + s.str() + " needs connectivity " +
                                 std::to_string(required) + " but has " + cert_desc(cert);
            }
        }
    r.hypotheses.push_back(fibers);
    if (best_slack < LLONG_MAX) r.binding_constraint = best_desc;

    if (r.hypotheses_pass()) {
        ConnectivityCertificate cx = connectivity(f.domain(), fast);
        r.conclusion_crosscheck = cx.at_least(n)
            ? "confirmed: domain has " + cert_desc(cx)
            : "failed: domain has only " + cert_desc(cx);
    }
    return r;
}

FlowAudit check_flow(const SimplicialComplex& x, const SimplicialComplex& y,
                     const FlowRule& flow, const ComplexityFunction& c) {
    if (!is_subcomplex(y, x)) throw malformed_input("flow audit: target is not a subcomplex");
    Report r;
    r.statement = "a complexity-decreasing surgery flow certifies the target as a deformation retract";

    auto cost_of = [&](VertexId v) {
        std::int64_t a = c.vertex_cost(v), b = c.vertex_cost(v);
        if (a != b) throw malformed_input("complexity function is not deterministic at vertex " + std::to_string(v));
        return a;
    };

    HypothesisCheck nonneg{"complexity is nonnegative", true, ""};
    HypothesisCheck positive{"complexity is positive outside the target", true, ""};
    std::unordered_map<VertexId, std::int64_t> vcost;
    for (VertexId v : x.vertices()) {
        std::int64_t cv = cost_of(v);
        vcost[v] = cv;
        if (cv < 0 && nonneg.pass) {
            nonneg.pass = false;
            nonneg.witness = "vertex " + std::to_string(v) + " has cost " + std::to_string(cv);
        }
        if (cv <= 0 && !y.has_face(Simplex{v}) && positive.pass) {
            positive.pass = false;
            positive.witness = "vertex " + std::to_string(v) + " outside the target has cost " + std::to_string(cv);
        }
    }
    r.hypotheses.push_back(nonneg);
    r.hypotheses.push_back(positive);

    // replacement simplex per vertex outside the target
    HypothesisCheck in_link{"replacement simplices lie in the link of their vertex", true, ""};
    HypothesisCheck decreases{"complexity strictly decreases under replacement", true, ""};
    std::unordered_map<VertexId, Simplex> delta;
    std::unordered_map<VertexId, bool> delta_ok;
    for (VertexId v : x.vertices()) {
        if (y.has_face(Simplex{v})) continue;
        Simplex d1 = flow.delta(v), d2 = flow.delta(v);
        if (d1 != d2) throw malformed_input("flow replacement rule is not deterministic at vertex " + std::to_string(v));
        delta.emplace(v, d1);
        bool ok = x.has_face(d1) && !d1.contains(v) && x.has_face(span_union(d1, Simplex{v}));
        delta_ok[v] = ok;
        if (!ok && in_link.pass) {
            in_link.pass = false;
            in_link.witness = "replacement " + d1.str() + " for vertex " + std::to_string(v) +
                              " is not a link simplex";
        }
        if (ok) {
            std::int64_t dc = c.cost(d1);
            if (dc >= vcost[v] && decreases.pass) {
                decreases.pass = false;
                decreases.witness = "vertex " + std::to_string(v) + " has cost " + std::to_string(vcost[v]) +
                                    " but its replacement " + d1.str() + " costs " + std::to_string(dc);
            }
        }
    }
    r.hypotheses.push_back(in_link);
    r.hypotheses.push_back(decreases);

    HypothesisCheck outside{"the picked vertex lies outside the target", true, ""};
    HypothesisCheck span_ok{"each simplex spans a simplex with its replacement", true, ""};
    HypothesisCheck compatible{"faces keeping the picked vertex pick the same vertex", true, ""};
    std::unordered_map<Simplex, VertexId, SimplexHash> picked;
    for (const Simplex& s : x.all_faces()) {
        if (y.has_face(s)) continue;
        VertexId v1 = flow.pick(s), v2 = flow.pick(s);
        if (v1 != v2) throw malformed_input("flow pick rule is not deterministic on " + s.str());
        if (!s.contains(v1))
            throw malformed_input("flow pick rule returned vertex " + std::to_string(v1) +
                                  " outside simplex " + s.str());
        picked.emplace(s, v1);
        if (y.has_face(Simplex{v1}) && outside.pass) {
            outside.pass = false;
            outside.witness = "simplex " + s.str() + " picked vertex " + std::to_string(v1) +
                              ", which lies in the target";
            continue;
        }
        auto dit = delta.find(v1);
        bool ok = dit != delta.end() && delta_ok[v1] && x.has_face(span_union(s, dit->second));
        if (!ok && span_ok.pass) {
            span_ok.pass = false;
            span_ok.witness = "simplex " + s.str() + " with replacement for vertex " +
                              std::to_string(v1) + " does not span a simplex";
        }
    }
    for (const auto& [s, v] : picked) {
        if (s.dim() == 0) continue;
        for (const Simplex& t : s.faces()) {
            if (t == s || !t.contains(v)) continue;
            auto it = picked.find(t);
            // t contains v, which is outside the target, so t was audited above
            if (it != picked.end() && it->second != v && compatible.pass) {
                compatible.pass = false;
                compatible.witness = "face " + t.str() + " of " + s.str() + " picks vertex " +
                                     std::to_string(it->second) + " instead of " + std::to_string(v);
            }
        }
    }
    r.hypotheses.push_back(outside);
    r.hypotheses.push_back(span_ok);
    r.hypotheses.push_back(compatible);

    if (!r.hypotheses_pass()) {
        for (const auto& h : r.hypotheses)
            if (!h.pass) {
                r.binding_constraint = h.name;
                break;
            }
    } else {
        auto mismatch = profile_mismatch(reduced_homology(x), reduced_homology(y));
        r.conclusion_crosscheck = mismatch
            ? "failed: reduced homology differs at " + *mismatch
            : "confirmed: complex and target share reduced homology";
    }
    return r;
}

WcmResult is_wCM(const SimplicialComplex& x, const Rat& level) {
    int n = static_cast<int>(floor_int(level));
    WcmResult out;
    out.wcm = true;
    ConnectivityOptions fast;
    fast.skip_pi1 = true;

    long long best_slack = LLONG_MAX;
    auto consider = [&](const WcmEntry& e) {
        long long achieved = (e.got.acyclic && !e.got.is_empty()) ? LLONG_MAX / 2
                                                                  : e.got.homological_connectivity;
        long long slack = achieved - e.required;
        if (slack < best_slack) {
            best_slack = slack;
            out.binding = (e.simplex ? "link of " + e.simplex->str() : std::string("whole complex")) +
                          " needs connectivity " + std::to_string(e.required) + ", has " + cert_desc(e.got);
        }
    };

    WcmEntry whole;
    whole.required = n - 1;
    whole.got = connectivity(x, fast);
    whole.pass = whole.got.at_least(whole.required);
    out.wcm = out.wcm && whole.pass;
    consider(whole);
    out.ledger.push_back(std::move(whole));

    for (int k = 0; k <= x.dim(); ++k)
        for (const Simplex& s : x.faces(k)) {
            WcmEntry e;
            e.simplex = s;
            e.required = n - k - 2;
            e.got = connectivity(link(x, s), fast);
            e.pass = e.got.at_least(e.required);
            out.wcm = out.wcm && e.pass;
            consider(e);
            out.ledger.push_back(std::move(e));
        }
    if (best_slack >= LLONG_MAX / 4) out.binding = "no finite constraint";
    return out;
}

Report ordered_connectivity_test(const SimplicialComplex& x, int n) {
    Report r;
    r.statement = "a weakly Cohen-Macaulay complex of level n has an (n - 1)-connected "
                  "ordered-tuples complex (n = " + std::to_string(n) + ")";
    WcmResult w = is_wCM(x, Rat(n));
    r.hypotheses.push_back({"complex is weakly Cohen-Macaulay of level n", w.wcm,
                            w.wcm ? "" : w.binding});
    r.binding_constraint = w.binding;
    if (w.wcm) {
        OrderedComplex oc = ordered(x);
        ConnectivityCertificate cert = connectivity(oc.complex);
        r.conclusion_crosscheck = cert.at_least(n - 1)
            ? "confirmed: ordered complex has " + cert_desc(cert) + ", required " + std::to_string(n - 1)
            : "failed: ordered complex has only " + cert_desc(cert) + ", required " + std::to_string(n - 1);
    }
    return r;
}

InjectivityResult simplexwise_injective_rel(const SimplicialMap& f, const SimplicialComplex& z) {
    const SimplicialComplex& dom = f.domain();
    if (!is_subcomplex(z, dom))
        throw malformed_input("injectivity check: exempt complex is not a subcomplex of the domain");

    InjectivityResult out;
    out.injective = true;
    out.link_condition = true;

    if (dom.dim() >= 1)
        for (const Simplex& e : dom.faces(1))
            if (f.apply(e[0]) == f.apply(e[1]) && !z.has_face(e)) {
                out.injective = false;
                if (!out.witness) out.witness = e;
                break;
            }

    for (VertexId v : dom.vertices()) {
        if (z.has_face(Simplex{v})) continue;
        VertexId a = f.apply(v);
        SimplicialComplex lk = link(dom, Simplex{v});
        bool bad = false;
        for (const Simplex& tau : lk.all_faces()) {
            Simplex img = f.image(tau);
            if (img.contains(a) || !f.codomain().has_face(span_union(img, Simplex{a}))) {
                bad = true;
                if (!out.witness) out.witness = span_union(tau, Simplex{v});
                break;
            }
        }
        if (bad) {
            out.link_condition = false;
            break;
        }
    }

    // The two formulations agree whenever z contains every domain edge joining
    // two of its own vertices; outside that case only the edge condition can
    // be the stricter one.
    if (out.injective && !out.link_condition)
        throw internal_error("injectivity check: edge condition held but link condition failed");
    bool z_edge_full = true;
    if (dom.dim() >= 1)
        for (const Simplex& e : dom.faces(1))
            if (z.has_face(Simplex{e[0]}) && z.has_face(Simplex{e[1]}) && !z.has_face(e)) {
                z_edge_full = false;
                break;
            }
    if (z_edge_full && !out.injective && out.link_condition)
        throw internal_error("injectivity check: link condition held but edge condition failed on an edge-full subcomplex");
    return out;
}

bool ConnectivityClaim::met_by(const ConnectivityCertificate& cert) const {
    if (contractible) return cert.acyclic && !cert.is_empty();
    return cert.at_least(static_cast<int>(floor_int(claimed)));
}

std::vector<ConnectivityClaim> builtin_claims() {
    std::vector<ConnectivityClaim> out;
    out.push_back({"simplex-labelings", {{"p", 3}, {"labels", 2}}, Rat(2), false, ClaimStatus::kVerifiedAt,
                   "labelings of the vertices of a solid p-simplex form a (p+1)-fold join of label sets, "
                   "exactly (p-1)-connected"});
    out.push_back({"polygon-diagonal-arcs", {{"sides", 6}}, Rat(1), false, ClaimStatus::kVerifiedAt,
                   "diagonal systems of a convex m-gon form a triangulated sphere of dimension m-4"});
    out.push_back({"ordered-edge", {}, Rat(0), false, ClaimStatus::kVerifiedAt,
                   "the ordered-tuples complex of a single edge is a circle, exactly 0-connected"});
    out.push_back({"tether-systems", {{"punctures", 3}, {"basepoints", 1}}, Rat(0), true, ClaimStatus::kVerifiedAt,
                   "systems of disjoint tethers from boundary basepoints to punctures form a contractible complex"});
    out.push_back({"coconnected-tether-systems", {{"punctures", 3}, {"basepoints", 1}}, Rat(0), true,
                   ClaimStatus::kVerifiedAt,
                   "tether systems with connected complement form a contractible complex"});
    out.push_back({"chain-systems", {{"genus", 4}, {"boundary", 1}}, Rat(1, 2), false, ClaimStatus::kRegistryOnly,
                   "systems of disjoint chains on a genus-g surface form a (g-3)/2-connected complex"});
    out.push_back({"tethered-curve-systems", {{"genus", 5}, {"boundary", 1}}, Rat(1), false,
                   ClaimStatus::kRegistryOnly,
                   "coconnected systems of tethered curves on a genus-g surface form a (g-3)/2-connected complex"});
    out.push_back({"curve-systems", {{"genus", 2}, {"boundary", 1}}, Rat(1), false, ClaimStatus::kRegistryOnly,
                   "curve systems on a genus-g surface with one boundary circle form a (2g-3)-connected complex"});
    out.push_back({"coconnected-curve-systems", {{"genus", 3}, {"boundary", 1}}, Rat(1), false,
                   ClaimStatus::kRegistryOnly,
                   "coconnected curve systems on a genus-g surface form a (g-2)-connected complex"});
    return out;
}

}  // namespace stablab
