#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <optional>
#include <random>

#include "stablab/errors.hpp"
#include "stablab/specseq.hpp"
#include "support/oracles.hpp"

using namespace stablab;

namespace {

// Plain restatement of the four range inequalities, used to double-check the
// engine's least-constant search without going through its ledger machinery.
std::optional<std::int64_t> least_constant(const StabilityHypotheses& h, std::int64_t imax) {
    auto cx = [&](std::int64_t n) {
        return h.complex_connectivity.slope * Rat(n) + h.complex_connectivity.offset;
    };
    auto cq = [&](std::int64_t n) {
        return h.quotient_connectivity.slope * Rat(n) + h.quotient_connectivity.offset;
    };
    for (std::int64_t c = -1; c <= 8; ++c) {
        bool ok = true;
        for (std::int64_t i = 1; i <= std::max<std::int64_t>(1, imax) && ok; ++i)
            ok = Rat(i - 1) <= cx(2 * i + c) && Rat(i) <= cq(2 * i + c) &&
                 Rat(i) <= cx(2 * i + c + 1) && Rat(i + 1) <= cq(2 * i + c + 1);
        if (ok) return c;
    }
    return std::nullopt;
}

long dense_rank(const oracle::Dense& m) { return static_cast<long>(oracle::dense_snf(m).size()); }

}  // namespace

TEST_CASE("homology tables enforce the connected-group convention") {
    GroupHomologyTable table;
    table.set(0, 0, FgAbelianGroup{1, {}});
    CHECK_THROWS_AS(table.set(1, 0, FgAbelianGroup{2, {}}), malformed_input);
    CHECK_THROWS_AS(table.set(1, 0, FgAbelianGroup{1, {3}}), malformed_input);
    CHECK_THROWS_AS(table.set(-1, 0, FgAbelianGroup{1, {}}), malformed_input);
    CHECK_THROWS_AS(table.set(0, -2, FgAbelianGroup{}), malformed_input);
    table.set(0, 1, FgAbelianGroup{0, {2}});  // torsion is fine above degree zero

    CHECK(table.entry(0, 0).known);
    CHECK(table.entry(0, 0).group.rank == 1);
    CHECK(table.entry(0, 1).group.torsion == std::vector<std::int64_t>{2});
    CHECK_FALSE(table.entry(5, 3).known);
    CHECK_THROWS_AS(table.entry(-1, 0), malformed_input);

    CHECK(table.map_kind(0, 0) == MapKind::kUnknown);
    table.set_map(0, 0, MapKind::kIso);
    CHECK(table.map_kind(0, 0) == MapKind::kIso);
    CHECK_THROWS_AS(table.set_map(0, -1, MapKind::kZero), malformed_input);

    auto trivial = GroupHomologyTable::trivial_groups(3, 2);
    for (std::int64_t m = 0; m <= 3; ++m) {
        CHECK(trivial.entry(m, 0).group == FgAbelianGroup{1, {}});
        for (std::int64_t q = 1; q <= 2; ++q) {
            CHECK(trivial.entry(m, q).known);
            CHECK(trivial.entry(m, q).group.trivial());
        }
    }
    CHECK(trivial.map_kind(2, 1) == MapKind::kIso);
    CHECK(trivial.map_kind(3, 0) == MapKind::kUnknown);  // no successor in the table
    CHECK(to_string(MapKind::kInclusion) == "inclusion");
}

TEST_CASE("page construction mirrors the table") {
    auto table = GroupHomologyTable::trivial_groups(4, 2);
    E1Page page = e1_page(3, table, 2);
    CHECK(page.n == 3);
    CHECK(page.qmax == 2);
    CHECK(page.grid.size() == 12);  // p in {-1..2} times q in {0..2}
    for (int q = 0; q <= 2; ++q) {
        for (int p = -1; p <= 2; ++p) {
            CHECK(page.entry(p, q).known);
            CHECK(page.entry(p, q).group.rank == (q == 0 ? 1 : 0));
        }
        // the column-zero differential is the stabilization map itself
        CHECK(page.d1_kind(0, q) == MapKind::kIso);
        CHECK(page.d1_kind(1, q) == MapKind::kUnknown);
        CHECK(page.d1_kind(-1, q) == MapKind::kZero);
        CHECK(page.d1_kind(3, q) == MapKind::kZero);
    }

    apply_equal_terms_symmetry(page, table);
    for (int q = 0; q <= 2; ++q) {
        CHECK(page.d1_kind(0, q) == MapKind::kIso);
        CHECK(page.d1_kind(1, q) == MapKind::kZero);
        CHECK(page.d1_kind(2, q) == MapKind::kIso);
    }

    // entries depend only on the underlying family index
    E1Page other = e1_page(4, table, 2);
    for (int q = 0; q <= 2; ++q)
        for (int p = -1; p <= 2; ++p) {
            CHECK(page.entry(p, q).known == other.entry(p + 1, q).known);
            CHECK(page.entry(p, q).group == other.entry(p + 1, q).group);
        }

    CHECK_THROWS_AS(e1_page(0, table, 1), malformed_input);
    CHECK_THROWS_AS(e1_page(2, table, -1), malformed_input);

    CHECK_THROWS_AS(CoefficientSystem(true), unsupported_input);
    CoefficientSystem untwisted(false);
    CHECK_FALSE(untwisted.twisted());
    E1Page with_coeffs = e1_page(2, table, 1, untwisted);
    CHECK(with_coeffs.grid.size() == 6);
}

TEST_CASE("stability ranges reproduce the published constants") {
    auto check_all_hold = [](const StabilityRangeReport& r) {
        for (const auto& line : r.ledger) CHECK(line.holds);
    };

    StabilityRangeReport a =
        stability_ranges(StabilityHypotheses::standard(AffineFormula::parameter_minus(3)), 4);
    CHECK(a.feasible);
    CHECK(a.c == 1);
    CHECK(a.phi == "2i+1");
    CHECK_FALSE(a.conditional);
    CHECK(a.ledger.size() == 1 + 4 * 4);
    check_all_hold(a);
    for (const auto& cond : a.conditions) CHECK(cond.pass);

    StabilityRangeReport b = stability_ranges(
        StabilityHypotheses::standard(AffineFormula::half_parameter_minus(3)), 4);
    CHECK(b.feasible);
    CHECK(b.c == 2);
    CHECK(b.phi == "2i+2");
    check_all_hold(b);

    StabilityRangeReport d =
        stability_ranges(StabilityHypotheses::standard(AffineFormula::parameter_minus(2)), 4);
    CHECK(d.feasible);
    CHECK(d.c == 1);
    CHECK(d.binding.find("quotient") != std::string::npos);

    auto parsed = nlohmann::json::parse(a.to_json());
    CHECK(parsed["feasible"] == true);
    CHECK(parsed["c"] == 1);
    CHECK(parsed["ledger"].size() == a.ledger.size());
    CHECK(parsed["ledger"][0]["name"] == "degree zero");
}

TEST_CASE("stability ranges flag infeasible slopes") {
    using AF = AffineFormula;
    for (std::int64_t m : {3, 4, 7}) {
        StabilityRangeReport r = stability_ranges(
            StabilityHypotheses::standard(
                AF::custom(Rat(1, m), Rat(-3, m), "(n-3)/" + std::to_string(m))),
            3);
        CHECK_FALSE(r.feasible);
        CHECK(r.infeasibility.find("slope below one half") != std::string::npos);
        bool slope_row_failed = false;
        for (const auto& cond : r.conditions)
            if (!cond.pass && cond.name.find("fast enough") != std::string::npos)
                slope_row_failed = true;
        CHECK(slope_row_failed);
    }

    // slow quotient formulas break the range just as slow complex formulas do
    StabilityHypotheses h = StabilityHypotheses::standard(AF::parameter_minus(3));
    h.quotient_connectivity = AF::custom(Rat(1, 3), Rat(0), "n/3");
    CHECK_FALSE(stability_ranges(h, 3).feasible);

    // a legal slope can still be starved by the offset within the search cap
    StabilityRangeReport starved = stability_ranges(
        StabilityHypotheses::standard(AF::custom(Rat(1, 2), Rat(-50), "(n-100)/2")), 3);
    CHECK_FALSE(starved.feasible);
    CHECK(starved.infeasibility.find("no constant") != std::string::npos);
}

TEST_CASE("stability ranges match a direct inequality search") {
    std::mt19937 rng(2818);
    int feasible_seen = 0;
    for (int trial = 0; trial < 60; ++trial) {
        StabilityHypotheses h = StabilityHypotheses::standard(AffineFormula::custom(
            Rat(1 + static_cast<int>(rng() % 4), 2), Rat(-static_cast<int>(rng() % 13), 2),
            "random"));
        if (rng() % 3 == 0)
            h.quotient_connectivity = AffineFormula::custom(
                Rat(1 + static_cast<int>(rng() % 4), 2), Rat(-static_cast<int>(rng() % 9), 2),
                "random quotient");
        std::int64_t imax = 1 + rng() % 5;
        StabilityRangeReport r = stability_ranges(h, imax);
        auto expected = least_constant(h, imax);
        CHECK(r.feasible == expected.has_value());
        if (expected) {
            CHECK(r.c == *expected);
            ++feasible_seen;
        }
    }
    CHECK(feasible_seen > 10);
}

TEST_CASE("conditional and weakened hypotheses") {
    StabilityHypotheses h = StabilityHypotheses::standard(AffineFormula::parameter_minus(3));
    h.edge_swap.holds = false;
    h.edge_swap.note = "";
    StabilityRangeReport r = stability_ranges(h, 2);
    CHECK(r.conditional);
    CHECK(r.feasible);  // the arithmetic still goes through, just flagged
    CHECK(r.c == 1);

    h.weakened_edge_swap = true;
    h.weakened_note = "a swap supported in an enlarged neighborhood of the edge";
    StabilityRangeReport w = stability_ranges(h, 2);
    CHECK_FALSE(w.conditional);
    bool noted = false;
    for (const auto& cond : w.conditions)
        if (cond.witness.find("weakened") != std::string::npos) noted = true;
    CHECK(noted);
}

TEST_CASE("braid pattern forces stabilization isomorphisms at odd strand counts") {
    BraidPatternResult one = braid_pattern(1, 3);
    CHECK(one.odd_regime);
    CHECK(one.forced_iso);
    CHECK(one.vanishing_from == 1);
    CHECK(one.report.ok());

    BraidPatternResult three = braid_pattern(3, 4);
    CHECK(three.forced_iso);
    CHECK(three.report.ok());
    CHECK(three.report.conclusion_crosscheck.rfind("confirmed", 0) == 0);
    for (int q = 0; q <= 4; ++q) {
        CHECK(three.page.d1_kind(0, q) == MapKind::kIso);
        CHECK(three.page.d1_kind(1, q) == MapKind::kZero);
        CHECK(three.page.d1_kind(2, q) == MapKind::kIso);
    }

    for (int n : {5, 7}) {
        BraidPatternResult r = braid_pattern(n, n + 2);
        CHECK(r.odd_regime);
        CHECK(r.forced_iso);
        CHECK(r.report.ok());
    }
    for (int n : {2, 4, 6}) {
        BraidPatternResult r = braid_pattern(n, n + 2);
        CHECK_FALSE(r.odd_regime);
        CHECK_FALSE(r.forced_iso);
        CHECK(r.report.ok());  // the pattern and vanishing rows still pass
    }

    // the vanishing line: degree >= strand count forces trivial homology
    for (int n = 1; n <= 6; ++n) {
        BraidPatternResult r = braid_pattern(n, n + 3);
        CHECK(r.vanishing_from == n);
        for (int q = n; q <= n + 3; ++q) {
            if (q == 0) continue;
            CHECK(r.page.entry(-1, q).known);
            CHECK(r.page.entry(-1, q).group.trivial());
        }
    }

    CHECK_THROWS_AS(braid_pattern(0, 2), malformed_input);
    CHECK_THROWS_AS(braid_pattern(3, -1), malformed_input);
}

TEST_CASE("braid conclusions refine monotonically") {
    for (int n = 1; n <= 6; ++n) {
        BraidPatternResult small = braid_pattern(n, 3);
        BraidPatternResult large = braid_pattern(n, 6);
        CHECK(small.forced_iso == large.forced_iso);
        CHECK(small.vanishing_from == large.vanishing_from);
        for (const auto& [pq, kind] : small.page.d1)
            CHECK(large.page.d1_kind(pq.first, pq.second) == kind);
        for (const auto& [pq, entry] : small.page.grid) {
            CHECK(large.page.entry(pq.first, pq.second).known == entry.known);
            if (entry.known)
                CHECK(large.page.entry(pq.first, pq.second).group == entry.group);
        }
    }
}

TEST_CASE("mapping class group ranges") {
    auto zero = mcg_ranges(0);
    REQUIRE(zero.size() == 4);
    CHECK(zero[0].map_name == "alpha");
    CHECK(zero[1].map_name == "mu");
    CHECK(zero[2].map_name == "kappa");
    CHECK(zero[3].map_name == "beta");

    CHECK(zero[0].iso_from == 2);
    CHECK(zero[1].iso_from == 2);
    CHECK_FALSE(zero[1].surjective_from.has_value());  // always injective instead
    CHECK(zero[2].iso_from == 4);
    CHECK(zero[2].surjective_from == 3);

    auto one = mcg_ranges(1);
    CHECK(one[3].surjective_from == 3);
    CHECK(one[3].iso_from == 4);

    for (std::size_t k = 0; k < 4; ++k)
        for (std::int64_t i = 0; i < 5; ++i) {
            auto lo = mcg_ranges(i), hi = mcg_ranges(i + 1);
            CHECK(lo[k].iso_from < hi[k].iso_from);
            if (lo[k].surjective_from)
                CHECK(*lo[k].surjective_from < *hi[k].surjective_from);
        }

    CHECK_THROWS_AS(mcg_ranges(-1), malformed_input);
}

TEST_CASE("second page lattice matches a matrix oracle on concrete rows") {
    std::mt19937 rng(4207);
    for (int trial = 0; trial < 80; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 6);
        std::vector<long> rank(n + 1);  // rank[p + 1] is the rank at column p
        for (auto& r : rank) r = static_cast<long>(rng() % 4);
        std::vector<int> kind(n, 0);  // 1 marks an isomorphism
        bool forced_zero = false;
        for (int p = n - 1; p >= 0; --p) {
            if (!forced_zero && rng() % 2 == 0) {
                kind[p] = 1;
                rank[p] = rank[p + 1];
                forced_zero = true;  // the next map down must vanish to compose to zero
            } else {
                forced_zero = false;
            }
        }

        E1Page page;
        page.n = n;
        page.qmax = 0;
        for (int p = -1; p <= n - 1; ++p)
            page.grid[{p, 0}] = {true, FgAbelianGroup{rank[p + 1], {}}};
        for (int p = 0; p <= n - 1; ++p)
            page.d1[{p, 0}] = kind[p] ? MapKind::kIso : MapKind::kZero;

        // realize the row as honest integer matrices and take homology there
        auto unimodular = [&rng](long r) {
            oracle::Dense m(r, std::vector<oracle::Big>(r, 0));
            for (long i = 0; i < r; ++i) m[i][i] = 1;
            for (int shear = 0; shear < 6 && r > 1; ++shear) {
                long a = rng() % r, b = rng() % r;
                if (a == b) continue;
                int mult = static_cast<int>(rng() % 5) - 2;
                for (long c = 0; c < r; ++c) m[a][c] += oracle::Big(mult) * m[b][c];
            }
            return m;
        };
        std::vector<oracle::Dense> d(n);
        for (int p = 0; p < n; ++p) {
            if (kind[p])
                d[p] = unimodular(rank[p]);
            else
                d[p] = oracle::Dense(rank[p], std::vector<oracle::Big>(rank[p + 1], 0));
        }

        auto cells = e2_page(page);
        for (int p = -1; p <= n - 1; ++p) {
            long out_rank = p >= 0 ? dense_rank(d[p]) : 0;
            long in_rank = p + 1 < n ? dense_rank(d[p + 1]) : 0;
            long h = rank[p + 1] - out_rank - in_rank;
            E2Cell cell = cells[{p, 0}];
            REQUIRE(cell.kind != E2Kind::kUnknown);
            if (h == 0) {
                CHECK(cell.kind == E2Kind::kZero);
            } else {
                CHECK(cell.kind == E2Kind::kGroup);
                CHECK(cell.group.rank == h);
                CHECK(cell.group.torsion.empty());
            }
        }
    }

    // torsion passes through untouched when both neighboring maps vanish
    E1Page page;
    page.n = 1;
    page.qmax = 1;
    page.grid[{-1, 0}] = {true, FgAbelianGroup{1, {}}};
    page.grid[{0, 0}] = {true, FgAbelianGroup{1, {}}};
    page.grid[{-1, 1}] = {true, FgAbelianGroup{0, {2}}};
    page.grid[{0, 1}] = {true, FgAbelianGroup{}};
    page.d1[{0, 0}] = MapKind::kIso;
    page.d1[{0, 1}] = MapKind::kZero;
    auto cells = e2_page(page);
    CHECK(cells[{-1, 0}].kind == E2Kind::kZero);
    CHECK(cells[{-1, 1}].kind == E2Kind::kGroup);
    CHECK(cells[{-1, 1}].group == FgAbelianGroup{0, {2}});
}

TEST_CASE("convergence audits") {
    auto everywhere = [](int, int) { return true; };

    // a page of nothing converges to nothing
    E1Page zero;
    zero.n = 3;
    zero.qmax = 1;
    for (int q = 0; q <= 1; ++q) {
        for (int p = -1; p <= 2; ++p) zero.grid[{p, q}] = {true, FgAbelianGroup{}};
        for (int p = 0; p <= 2; ++p) zero.d1[{p, q}] = MapKind::kZero;
    }
    CHECK(convergence_audit(zero, everywhere).ok());

    // alternating zero/iso differentials on constant Z rows: the top corner
    // survives exactly when n is even, and with every higher row known zero
    // the audit can prove the contradiction
    auto table = GroupHomologyTable::trivial_groups(6, 5);
    for (int n = 2; n <= 6; ++n) {
        E1Page page = e1_page(n, table, 5);
        apply_equal_terms_symmetry(page, table);
        auto cells = e2_page(page);
        for (int q = 0; q <= 5; ++q)
            for (int p = -1; p <= n - 1; ++p) {
                if (n % 2 == 0 && p == n - 1 && q == 0) {
                    CHECK(cells[{p, q}].kind == E2Kind::kGroup);
                    CHECK(cells[{p, q}].group.rank == 1);
                } else {
                    CHECK(cells[{p, q}].kind == E2Kind::kZero);
                }
            }
        Report audit = convergence_audit(page, everywhere);
        if (n % 2 == 1) {
            CHECK(audit.ok());
        } else {
            CHECK_FALSE(audit.ok());
            std::string corner = "(p=" + std::to_string(n - 1) + ", q=0)";
            CHECK(audit.binding_constraint.find(corner) != std::string::npos);
        }
    }

    // planted contradiction: a Z at (0, 0) with no differential able to move
    E1Page planted;
    planted.n = 2;
    planted.qmax = 1;
    for (int q = 0; q <= 1; ++q)
        for (int p = -1; p <= 1; ++p) planted.grid[{p, q}] = {true, FgAbelianGroup{}};
    planted.grid[{0, 0}] = {true, FgAbelianGroup{1, {}}};
    for (int q = 0; q <= 1; ++q)
        for (int p = 0; p <= 1; ++p) planted.d1[{p, q}] = MapKind::kZero;
    Report bad = convergence_audit(planted, everywhere);
    CHECK_FALSE(bad.ok());
    CHECK(bad.binding_constraint.find("(p=0, q=0)") != std::string::npos);

    // a pass elsewhere: exclude the planted cell from the claimed range
    auto away = [](int p, int q) { return !(p == 0 && q == 0); };
    CHECK(convergence_audit(planted, away).ok());

    // kinds that cannot compose to zero are flagged
    E1Page inconsistent = e1_page(3, GroupHomologyTable::trivial_groups(3, 0), 0);
    for (int p = 0; p <= 2; ++p) inconsistent.d1[{p, 0}] = MapKind::kIso;
    Report comp = convergence_audit(inconsistent, everywhere);
    bool comp_row_failed = false;
    for (const auto& row : comp.hypotheses)
        if (!row.pass && row.name.find("compose") != std::string::npos) comp_row_failed = true;
    CHECK(comp_row_failed);
}

TEST_CASE("page json includes the grid, differentials, second page and audits") {
    auto table = GroupHomologyTable::trivial_groups(3, 1);
    E1Page page = e1_page(3, table, 1);
    apply_equal_terms_symmetry(page, table);
    Report audit = convergence_audit(page, [](int, int) { return true; });
    auto parsed = nlohmann::json::parse(page_json(page, {audit}));
    CHECK(parsed["n"] == 3);
    CHECK(parsed["qmax"] == 1);
    CHECK(parsed["grid"].size() == 8);
    CHECK(parsed["d1"].size() == 6);
    CHECK(parsed["e2"].size() == 8);
    REQUIRE(parsed["audits"].size() == 1);
    CHECK(parsed["audits"][0]["statement"] == audit.statement);
    bool saw_kind = false;
    for (const auto& cell : parsed["d1"])
        if (cell["kind"] == "iso") saw_kind = true;
    CHECK(saw_kind);
}
