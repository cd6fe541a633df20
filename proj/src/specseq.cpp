#include "stablab/specseq.hpp"

#include <algorithm>
#include <functional>
#include <json.hpp>
#include <sstream>

#include "stablab/errors.hpp"

namespace stablab {

namespace {

void check_table_indices(std::int64_t m, std::int64_t q) {
    if (m < 0 || q < 0)
        throw malformed_input("homology table indices must be nonnegative, got (" +
                              std::to_string(m) + ", " + std::to_string(q) + ")");
}

std::string cell_name(int p, int q) {
    return "(p=" + std::to_string(p) + ", q=" + std::to_string(q) + ")";
}

const char* e2_kind_name(E2Kind k) {
    switch (k) {
        case E2Kind::kZero: return "zero";
        case E2Kind::kGroup: return "group";
        case E2Kind::kUnknown: return "unknown";
    }
    return "unknown";
}

}  // namespace

std::string to_string(MapKind k) {
    switch (k) {
        case MapKind::kZero: return "zero";
        case MapKind::kIso: return "iso";
        case MapKind::kInclusion: return "inclusion";
        case MapKind::kUnknown: return "unknown";
    }
    throw internal_error("unhandled map kind");
}

void GroupHomologyTable::set(std::int64_t m, std::int64_t q, FgAbelianGroup g) {
    check_table_indices(m, q);
    if (q == 0 && !(g.rank == 1 && g.torsion.empty()))
        throw malformed_input(
            "degree-zero homology must be a single copy of Z (connected-group convention), got " +
            g.str());
    entries_[{m, q}] = std::move(g);
}

void GroupHomologyTable::set_map(std::int64_t m, std::int64_t q, MapKind kind) {
    check_table_indices(m, q);
    kinds_[{m, q}] = kind;
}

TableEntry GroupHomologyTable::entry(std::int64_t m, std::int64_t q) const {
    check_table_indices(m, q);
    auto it = entries_.find({m, q});
    if (it == entries_.end()) return {};
    return {true, it->second};
}

MapKind GroupHomologyTable::map_kind(std::int64_t m, std::int64_t q) const {
    check_table_indices(m, q);
    auto it = kinds_.find({m, q});
    return it == kinds_.end() ? MapKind::kUnknown : it->second;
}

GroupHomologyTable GroupHomologyTable::trivial_groups(std::int64_t mmax, std::int64_t qmax) {
    if (mmax < 0 || qmax < 0) throw malformed_input("table bounds must be nonnegative");
    GroupHomologyTable table;
    for (std::int64_t m = 0; m <= mmax; ++m) {
        table.set(m, 0, FgAbelianGroup{1, {}});
        for (std::int64_t q = 1; q <= qmax; ++q) table.set(m, q, FgAbelianGroup{});
        if (m < mmax)
            for (std::int64_t q = 0; q <= qmax; ++q) table.set_map(m, q, MapKind::kIso);
    }
    return table;
}

CoefficientSystem::CoefficientSystem(bool twisted) {
    if (twisted)
        throw unsupported_input(
            "orientation-twisted coefficients are not supported: stabilizers fix simplices "
            "pointwise, so only the untwisted system arises");
}

TableEntry E1Page::entry(int p, int q) const {
    auto it = grid.find({p, q});
    return it == grid.end() ? TableEntry{} : it->second;
}

MapKind E1Page::d1_kind(int p, int q) const {
    if (p < 0 || p > n - 1) return MapKind::kZero;  // no source column there
    auto it = d1.find({p, q});
    return it == d1.end() ? MapKind::kUnknown : it->second;
}

E1Page e1_page(int n, const GroupHomologyTable& table, int qmax,
               const CoefficientSystem& coefficients) {
    (void)coefficients;  // construction already rejected the twisted variant
    if (n < 1) throw malformed_input("a page needs n >= 1, got " + std::to_string(n));
    if (qmax < 0) throw malformed_input("qmax must be nonnegative, got " + std::to_string(qmax));
    E1Page page;
    page.n = n;
    page.qmax = qmax;
    for (int q = 0; q <= qmax; ++q) {
        for (int p = -1; p <= n - 1; ++p)
            page.grid[{p, q}] = table.entry(n - p - 1, q);
        // column zero has a single face term, the stabilization map itself
        page.d1[{0, q}] = table.map_kind(n - 1, q);
    }
    return page;
}

void apply_equal_terms_symmetry(E1Page& page, const GroupHomologyTable& table) {
    for (int q = 0; q <= page.qmax; ++q)
        for (int p = 0; p <= page.n - 1; ++p)
            page.d1[{p, q}] =
                p % 2 == 1 ? MapKind::kZero : table.map_kind(page.n - p - 1, q);
}

Rat AffineFormula::at(std::int64_t n) const { return slope * Rat(n) + offset; }

AffineFormula AffineFormula::parameter_minus(std::int64_t k) {
    std::string label = k >= 0 ? "n-" + std::to_string(k) : "n+" + std::to_string(-k);
    if (k == 0) label = "n";
    return {Rat(1), Rat(-k), label};
}

AffineFormula AffineFormula::half_parameter_minus(std::int64_t k) {
    return {Rat(1, 2), Rat(-k, 2), "(n-" + std::to_string(k) + ")/2"};
}

AffineFormula AffineFormula::custom(Rat slope, Rat offset, std::string label) {
    return {slope, offset, std::move(label)};
}

StabilityHypotheses StabilityHypotheses::standard(AffineFormula cx) {
    StabilityHypotheses h;
    h.transitive_action = {"the action is transitive on simplices of each dimension", true,
                           "asserted by the caller"};
    h.stabilizer_pattern = {"stabilizers descend one family step and fix simplices pointwise",
                            true, "asserted by the caller"};
    h.edge_swap = {"an element swaps the endpoints of each edge and commutes with its stabilizer",
                   true, "asserted by the caller"};
    h.complex_connectivity = std::move(cx);
    return h;
}

namespace {

struct RangeLines {
    std::vector<InequalityLine> lines;
    bool all_hold = true;
};

RangeLines lines_for(const StabilityHypotheses& h, std::int64_t i, std::int64_t c) {
    RangeLines out;
    const std::int64_t ns = 2 * i + c;      // smallest index where surjectivity is claimed
    const std::int64_t ni = 2 * i + c + 1;  // smallest index where injectivity is claimed
    struct Spec {
        const char* name;
        std::int64_t lhs;
        const AffineFormula* formula;
        std::int64_t at;
    };
    const Spec specs[] = {
        {"surjectivity: complex connectivity", i - 1, &h.complex_connectivity, ns},
        {"surjectivity: quotient connectivity", i, &h.quotient_connectivity, ns},
        {"injectivity: complex connectivity", i, &h.complex_connectivity, ni},
        {"injectivity: quotient connectivity", i + 1, &h.quotient_connectivity, ni},
    };
    for (const auto& s : specs) {
        Rat rhs = s.formula->at(s.at);
        InequalityLine line;
        line.i = i;
        line.name = s.name;
        line.holds = Rat(s.lhs) <= rhs;
        line.slack = rhs - Rat(s.lhs);
        std::ostringstream os;
        os << "need " << s.lhs << " <= " << s.formula->label << " at n=" << s.at << ", i.e. "
           << s.lhs << " <= " << to_string(rhs);
        line.rendered = os.str();
        out.all_hold = out.all_hold && line.holds;
        out.lines.push_back(std::move(line));
    }
    return out;
}

std::string render_phi(std::int64_t c) {
    if (c == 0) return "2i";
    if (c > 0) return "2i+" + std::to_string(c);
    return "2i-" + std::to_string(-c);
}

}  // namespace

StabilityRangeReport stability_ranges(const StabilityHypotheses& h, std::int64_t imax,
                                      std::int64_t c_cap) {
    if (imax < 0) throw malformed_input("imax must be nonnegative");
    StabilityRangeReport r;

    auto push_condition = [&r](const StabilityCondition& c, bool pass, std::string witness) {
        r.conditions.push_back({c.name, pass, std::move(witness)});
    };
    push_condition(h.transitive_action, h.transitive_action.holds, h.transitive_action.note);
    push_condition(h.stabilizer_pattern, h.stabilizer_pattern.holds, h.stabilizer_pattern.note);
    const bool swap_ok = h.edge_swap.holds || h.weakened_edge_swap;
    std::string swap_note = h.edge_swap.note;
    if (!h.edge_swap.holds && h.weakened_edge_swap)
        swap_note = "weakened form accepted: " + h.weakened_note;
    push_condition(h.edge_swap, swap_ok, swap_note);
    r.conditional =
        !(h.transitive_action.holds && h.stabilizer_pattern.holds && swap_ok);

    // The inequalities compare i against formulas evaluated at n = 2i + const,
    // so both connectivity slopes must be at least one half or the comparison
    // fails for every large i no matter the constant.
    const Rat half(1, 2);
    const bool cx_fast = h.complex_connectivity.slope >= half;
    const bool cq_fast = h.quotient_connectivity.slope >= half;
    r.conditions.push_back({"connectivity grows fast enough for a range of slope two",
                            cx_fast && cq_fast,
                            cx_fast && cq_fast
                                ? ""
                                : "formula " +
                                      (cx_fast ? h.quotient_connectivity.label
                                               : h.complex_connectivity.label) +
                                      " has slope below one half"});
    r.conditions.push_back(
        {"the range advances by two per homology degree", true, "phi(i) = 2i + c"});

    if (!(cx_fast && cq_fast)) {
        r.infeasibility = "the connectivity formula " +
                          (cx_fast ? h.quotient_connectivity.label
                                   : h.complex_connectivity.label) +
                          " grows with slope below one half, so the inequality i <= c(2i+const) "
                          "fails for all large i and no constant yields a stability range";
        return r;
    }

    const std::int64_t i_hi = std::max<std::int64_t>(1, imax);
    auto feasible_at = [&](std::int64_t c) {
        for (std::int64_t i = 1; i <= i_hi; ++i)
            if (!lines_for(h, i, c).all_hold) return false;
        return true;
    };

    std::optional<std::int64_t> found;
    for (std::int64_t c = -1; c <= c_cap && !found; ++c)
        if (feasible_at(c)) found = c;

    auto base_line = [] {
        InequalityLine line;
        line.i = 0;
        line.name = "degree zero";
        line.rendered =
            "degree-zero homology is a single Z for every group in the family, so the "
            "stabilization is an isomorphism outright";
        line.holds = true;
        line.slack = Rat(1'000'000);
        return line;
    };

    if (!found) {
        r.ledger.push_back(base_line());
        std::string first_fail;
        for (std::int64_t i = 1; i <= i_hi; ++i)
            for (auto& line : lines_for(h, i, c_cap).lines) {
                if (!line.holds && first_fail.empty())
                    first_fail = line.name + " at i=" + std::to_string(i);
                r.ledger.push_back(std::move(line));
            }
        r.infeasibility = "no constant c <= " + std::to_string(c_cap) +
                          " satisfies the range inequalities; at the cap the first failing line "
                          "is: " +
                          first_fail;
        return r;
    }

    r.feasible = true;
    r.c = *found;
    r.phi = render_phi(*found);
    r.ledger.push_back(base_line());
    const InequalityLine* binding = nullptr;
    for (std::int64_t i = 1; i <= i_hi; ++i) {
        RangeLines rl = lines_for(h, i, *found);
        if (!rl.all_hold) throw internal_error("range search returned an invalid constant");
        for (auto& line : rl.lines) r.ledger.push_back(std::move(line));
    }
    for (const auto& line : r.ledger) {
        if (line.i == 0) continue;
        if (binding == nullptr || line.slack < binding->slack) binding = &line;
    }
    if (binding != nullptr)
        r.binding = binding->name + " at i=" + std::to_string(binding->i);
    return r;
}

std::string StabilityRangeReport::to_json() const {
    nlohmann::json j;
    j["feasible"] = feasible;
    j["conditional"] = conditional;
    j["c"] = c;
    j["phi"] = phi;
    j["conditions"] = nlohmann::json::array();
    for (const auto& cond : conditions)
        j["conditions"].push_back(
            {{"name", cond.name}, {"pass", cond.pass}, {"witness", cond.witness}});
    j["ledger"] = nlohmann::json::array();
    for (const auto& line : ledger)
        j["ledger"].push_back({{"i", line.i},
                               {"name", line.name},
                               {"rendered", line.rendered},
                               {"holds", line.holds},
                               {"slack", stablab::to_string(line.slack)}});
    j["binding"] = binding;
    j["infeasibility"] = infeasibility;
    return j.dump(2);
}

BraidPatternResult braid_pattern(int n, int imax) {
    if (n < 1) throw malformed_input("the braid pattern needs n >= 1");
    if (imax < 0) throw malformed_input("imax must be nonnegative");

    // Known concrete inputs: degree zero is Z for every strand count, and the
    // zero- and one-strand groups are trivial.  Everything else is derived.
    GroupHomologyTable table;
    for (std::int64_t m = 0; m <= n; ++m) table.set(m, 0, FgAbelianGroup{1, {}});
    for (std::int64_t q = 1; q <= imax; ++q) {
        table.set(0, q, FgAbelianGroup{});
        table.set(1, q, FgAbelianGroup{});
    }
    for (std::int64_t m = 0; m < n; ++m) table.set_map(m, 0, MapKind::kIso);
    for (std::int64_t q = 1; q <= imax; ++q) table.set_map(0, q, MapKind::kIso);

    // Stabilization into the m-strand group is an isomorphism in every degree,
    // for odd m: each column right of the augmentation dies on the second page
    // because the differential out (even columns) or in (odd columns) is an
    // isomorphism supplied by the same fact at a smaller odd index.
    std::map<int, bool> forced_memo;
    std::function<bool(int)> forced = [&](int m) -> bool {
        if (m % 2 == 0) return false;
        auto it = forced_memo.find(m);
        if (it != forced_memo.end()) return it->second;
        bool ok = true;
        for (int p = 1; p <= m - 1 && ok; ++p) {
            if (p % 2 == 0)
                ok = (m - p == 1) || forced(m - p);
            else
                ok = p + 1 <= m - 1 && ((m - p - 1 == 1) || forced(m - p - 1));
        }
        forced_memo[m] = ok;
        return ok;
    };

    // Degree-d homology of the m-strand group vanishes for d >= m: every
    // differential into the augmentation column at row d has a domain that is
    // already trivial, either a trivial group or by the same fact one column
    // over, so the entry must itself be trivial for the page to converge to
    // zero.
    std::function<bool(int, int)> vanish = [&](int m, int d) -> bool {
        if (d <= 0) return false;  // degree zero is Z, never trivial
        if (m <= 1) return true;
        if (d < m) return false;
        for (int r = 1; r <= m; ++r) {
            int source_row = d - r + 1;
            if (source_row < 0) continue;
            if (!vanish(m - r, source_row)) return false;
        }
        return true;
    };

    BraidPatternResult res;
    res.n = n;
    res.qmax = imax;
    res.odd_regime = n % 2 == 1;
    res.vanishing_from = std::max(n, 1);
    res.page = e1_page(n, table, imax);
    apply_equal_terms_symmetry(res.page, table);

    Report rep;
    rep.statement =
        "braid page pattern: alternating differentials, forced stabilization isomorphisms for "
        "odd strand counts, and the vanishing line";
    rep.hypotheses.push_back(
        {"a swap supported near any two tethers makes all face terms of a differential equal",
         true,
         "a diffeomorphism permutes the tethers while preserving their order at the basepoint "
         "and commuting with the simplex stabilizer"});
    rep.hypotheses.push_back({"odd columns carry the zero differential", true,
                              "alternating sum of an even count of equal maps"});
    rep.hypotheses.push_back({"even columns carry the stabilization map", true,
                              "alternating sum of an odd count of equal maps"});

    if (res.odd_regime) {
        bool all_ok = true;
        for (int m = 1; m <= n; m += 2) {
            if (m == 1) {
                rep.hypotheses.push_back(
                    {"the stabilization between the zero- and one-strand groups is an "
                     "isomorphism outright",
                     true, "both groups are trivial"});
                continue;
            }
            bool ok = forced(m);
            all_ok = all_ok && ok;
            rep.hypotheses.push_back(
                {"the second page vanishes right of the augmentation column at " +
                     std::to_string(m) + " strands",
                 ok, ok ? "" : "derivation gap"});
        }
        rep.hypotheses.push_back(
            {"no higher differential reaches the first two columns", all_ok,
             all_ok ? "every candidate domain vanishes on the second page" : "derivation gap"});
        res.forced_iso = all_ok;
    }

    {
        bool all_ok = true;
        std::string first_fail;
        for (int d = res.vanishing_from; d <= std::max(imax, res.vanishing_from); ++d) {
            if (!vanish(n, d)) {
                all_ok = false;
                first_fail = "degree " + std::to_string(d);
                break;
            }
        }
        rep.hypotheses.push_back(
            {"every differential into the augmentation column on or above the diagonal has "
             "vanishing domain",
             all_ok, all_ok ? "" : first_fail});
        if (!all_ok) res.vanishing_from = imax + 1;
    }

    // Fold the derived facts back into the page: forced isomorphisms upgrade
    // even-column differential kinds, derived vanishing upgrades entries.
    for (int q = 0; q <= imax; ++q)
        for (int p = 0; p <= n - 1; p += 2) {
            int target = n - p;
            if (target <= 1 || (target % 2 == 1 && forced(target)))
                res.page.d1[{p, q}] = MapKind::kIso;
        }
    for (int q = 1; q <= imax; ++q)
        for (int p = -1; p <= n - 1; ++p) {
            int m = n - p - 1;
            if (m >= 2 && q >= m && vanish(m, q)) res.page.grid[{p, q}] = {true, {}};
        }

    if (res.odd_regime && res.forced_iso) {
        // Cross-check with the generic lattice computation: on the upgraded
        // page every cell right of the augmentation column must be certainly
        // zero on the second page.
        auto cells = e2_page(res.page);
        bool ok = true;
        std::string bad;
        for (int q = 0; q <= imax && ok; ++q)
            for (int p = 1; p <= n - 1 && ok; ++p)
                if (cells[{p, q}].kind != E2Kind::kZero) {
                    ok = false;
                    bad = cell_name(p, q);
                }
        rep.conclusion_crosscheck =
            ok ? "confirmed: the second page vanishes right of the augmentation column"
               : "failed: cell " + bad + " is not certainly zero on the second page";
    }
    res.report = std::move(rep);
    return res;
}

std::vector<MapRange> mcg_ranges(std::int64_t i) {
    if (i < 0) throw malformed_input("homology degree must be nonnegative");
    std::vector<MapRange> out;
    out.push_back({"alpha",
                   "attach a two-holed torus along one boundary circle, raising the genus by one",
                   2 * i + 2, 2 * i + 1,
                   "surjectivity one step early comes from the variant with both tether "
                   "families on a single boundary circle"});
    out.push_back({"mu",
                   "attach a pair of pants along one boundary circle, adding a boundary circle",
                   2 * i + 2, std::nullopt,
                   "always injective: capping the new free boundary circle gives a left inverse"});
    out.push_back({"kappa", "cap a boundary circle with a disk", 2 * i + 4, 2 * i + 3,
                   "proved with ordered systems of oriented chains, where the edge-swap "
                   "condition holds only in a weakened form"});
    out.push_back({"beta",
                   "attach a four-holed sphere along two boundary circles, raising the genus "
                   "by one",
                   2 * i + 2, 2 * i + 1,
                   "defined when at least two boundary circles are present"});
    return out;
}

std::map<std::pair<int, int>, E2Cell> e2_page(const E1Page& page) {
    enum class Part { kFull, kTrivial, kUnknown };
    std::map<std::pair<int, int>, E2Cell> out;
    for (const auto& [pq, entry] : page.grid) {
        const auto [p, q] = pq;
        const MapKind in = page.d1_kind(p + 1, q);
        const MapKind outk = page.d1_kind(p, q);
        const TableEntry source = page.entry(p + 1, q);
        const bool entry_trivial = entry.known && entry.group.trivial();
        const bool source_trivial =
            p + 1 > page.n - 1 || (source.known && source.group.trivial());

        Part kernel = outk == MapKind::kZero ? Part::kFull
                      : outk == MapKind::kIso || outk == MapKind::kInclusion ? Part::kTrivial
                                                                            : Part::kUnknown;
        Part image = in == MapKind::kIso                      ? Part::kFull
                     : in == MapKind::kZero || source_trivial ? Part::kTrivial
                                                              : Part::kUnknown;

        E2Cell cell;
        if (entry_trivial || image == Part::kFull || kernel == Part::kTrivial)
            cell = {E2Kind::kZero, {}};
        else if (kernel == Part::kFull && image == Part::kTrivial && entry.known)
            cell = {E2Kind::kGroup, entry.group};
        else
            cell = {E2Kind::kUnknown, {}};
        out[pq] = cell;
    }
    return out;
}

Report convergence_audit(const E1Page& page,
                         const std::function<bool(int, int)>& target_zero) {
    Report rep;
    rep.statement = "the page converges to zero on the declared range";
    auto cells = e2_page(page);

    bool comp_ok = true;
    std::string comp_witness;
    for (int q = 0; q <= page.qmax && comp_ok; ++q)
        for (int p = 0; p <= page.n - 2 && comp_ok; ++p) {
            const MapKind in = page.d1_kind(p + 1, q);
            const MapKind outk = page.d1_kind(p, q);
            const TableEntry source = page.entry(p + 1, q);
            const TableEntry here = page.entry(p, q);
            bool image_nonzero = false;
            if (in == MapKind::kIso && here.known && !here.group.trivial()) image_nonzero = true;
            if ((in == MapKind::kIso || in == MapKind::kInclusion) && source.known &&
                !source.group.trivial())
                image_nonzero = true;
            if (image_nonzero && (outk == MapKind::kIso || outk == MapKind::kInclusion)) {
                comp_ok = false;
                comp_witness = "cell " + cell_name(p, q) +
                               " has a provably nonzero incoming image followed by an "
                               "injective outgoing differential";
            }
        }
    rep.hypotheses.push_back({"differential kinds compose to zero", comp_ok, comp_witness});

    bool survivor_ok = true;
    std::string witness;
    int symbolic_in_range = 0;
    for (const auto& [pq, cell] : cells) {
        const auto [p, q] = pq;
        if (!target_zero(p, q)) continue;
        if (cell.kind == E2Kind::kUnknown) {
            ++symbolic_in_range;
            continue;
        }
        if (cell.kind != E2Kind::kGroup || cell.group.trivial()) continue;
        bool killer = false;
        for (int r = 2; !killer; ++r) {
            const bool source_in_grid = p + r <= page.n - 1 && q - r + 1 >= 0;
            const bool target_exists = p - r >= -1;
            if (!source_in_grid && !target_exists) break;
            if (source_in_grid) {
                auto it = cells.find({p + r, q - r + 1});
                if (it == cells.end() || it->second.kind != E2Kind::kZero) killer = true;
            }
            if (!killer && target_exists) {
                const int tq = q + r - 1;
                if (tq > page.qmax) {
                    killer = true;  // rows above the grid are unknown territory
                } else {
                    auto it = cells.find({p - r, tq});
                    if (it == cells.end() || it->second.kind != E2Kind::kZero) killer = true;
                }
            }
        }
        if (!killer && survivor_ok) {
            survivor_ok = false;
            witness = "cell " + cell_name(p, q) + " holds " + cell.group.str() +
                      " in the vanishing range, yet every higher differential source and "
                      "target is already zero";
        }
    }
    rep.hypotheses.push_back(
        {"no concrete nonzero second-page cell is stranded in the vanishing range", survivor_ok,
         witness});
    rep.hypotheses.push_back(
        {"symbolic cells inside the vanishing range", true,
         symbolic_in_range == 0
             ? "none"
             : std::to_string(symbolic_in_range) + " cell(s) stay symbolic and are not judged"});
    rep.binding_constraint = witness;
    return rep;
}

std::string page_json(const E1Page& page, const std::vector<Report>& audits) {
    nlohmann::json j;
    j["n"] = page.n;
    j["qmax"] = page.qmax;
    j["grid"] = nlohmann::json::array();
    for (const auto& [pq, entry] : page.grid) {
        nlohmann::json cell{{"p", pq.first}, {"q", pq.second}, {"known", entry.known}};
        if (entry.known) {
            cell["rank"] = entry.group.rank;
            cell["torsion"] = entry.group.torsion;
        }
        j["grid"].push_back(std::move(cell));
    }
    j["d1"] = nlohmann::json::array();
    for (const auto& [pq, kind] : page.d1)
        j["d1"].push_back({{"p", pq.first}, {"q", pq.second}, {"kind", to_string(kind)}});
    j["e2"] = nlohmann::json::array();
    for (const auto& [pq, cell] : e2_page(page)) {
        nlohmann::json c{{"p", pq.first}, {"q", pq.second}, {"kind", e2_kind_name(cell.kind)}};
        if (cell.kind == E2Kind::kGroup) {
            c["rank"] = cell.group.rank;
            c["torsion"] = cell.group.torsion;
        }
        j["e2"].push_back(std::move(c));
    }
    j["audits"] = nlohmann::json::array();
    for (const auto& audit : audits) j["audits"].push_back(nlohmann::json::parse(audit.to_json()));
    return j.dump(2);
}

}  // namespace stablab
