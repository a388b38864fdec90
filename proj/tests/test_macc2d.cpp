#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "maccsim/macc2d.hpp"
#include "maccsim/sim.hpp"
#include "maccsim/util.hpp"

using namespace maccsim;

namespace {

// Label key making Type I and Type II namespaces disjoint.
using LabelKey = std::tuple<int, int, std::vector<int>>;

std::map<LabelKey, std::vector<std::pair<int, int>>> q_label_cells(const QGrid& q) {
    std::map<LabelKey, std::vector<std::pair<int, int>>> out;
    for (int r = 0; r < q.rows; ++r)
        for (int c = 0; c < q.cols; ++c) {
            const QCell& cell = q.at(r, c);
            if (cell.kind == QCell::TypeI) out[{1, cell.label, {}}].push_back({r, c});
            else if (cell.kind == QCell::TypeII) out[{2, cell.s, cell.e}].push_back({r, c});
        }
    return out;
}

// Literal pair scan over the whole delivery array.
bool q_full_c3_scan(const QGrid& q) {
    std::vector<std::tuple<int, int, LabelKey>> cells;
    for (int r = 0; r < q.rows; ++r)
        for (int c = 0; c < q.cols; ++c) {
            const QCell& cell = q.at(r, c);
            if (cell.kind == QCell::TypeI) cells.push_back({r, c, {1, cell.label, {}}});
            else if (cell.kind == QCell::TypeII) cells.push_back({r, c, {2, cell.s, cell.e}});
        }
    for (size_t a = 0; a < cells.size(); ++a)
        for (size_t b = a + 1; b < cells.size(); ++b) {
            if (std::get<2>(cells[a]) != std::get<2>(cells[b])) continue;
            auto [r1, c1, k1] = cells[a];
            auto [r2, c2, k2] = cells[b];
            if (r1 == r2 || c1 == c2) return false;
            if (q.at(r1, c2).kind != QCell::Star || q.at(r2, c1).kind != QCell::Star) return false;
        }
    return true;
}

void check_lemma_5_6(const Macc2dScheme& s) {
    const auto& h = s.hybrid();
    const auto& q = h.user_delivery;
    CHECK(q_full_c3_scan(q));

    // Coverage: every outer label and every vector over [K2]^{t+1} appears.
    std::set<int> seen_s;
    std::set<std::vector<int>> seen_e;
    for (const auto& cell : q.cells)
        if (cell.kind == QCell::TypeII) {
            seen_s.insert(cell.s);
            seen_e.insert(cell.e);
        }
    CHECK(static_cast<int>(seen_s.size()) == h.outer.source.s);
    if (!seen_s.empty()) {
        CHECK(*seen_s.begin() == 1);
        CHECK(*seen_s.rbegin() == h.outer.source.s);
    }
    long long expect_e = 1;
    const int t = static_cast<int>(s.t.numerator());
    for (int i = 0; i <= t; ++i) expect_e *= s.K2;
    CHECK(static_cast<long long>(seen_e.size()) == expect_e);
}

}  // namespace

// ---------------------------------------------------------------------------
// closed forms
// ---------------------------------------------------------------------------

TEST_CASE("baseline load formula") {
    CHECK(baseline_load(12, 8, 2, Rational(8)) == Rational(64, 3));
    CHECK(baseline_load(12, 8, 2, Rational(0)) == Rational(96));
    CHECK(baseline_load(4, 4, 2, Rational(1)) == Rational(8));  // gamma = 1/2
    CHECK(baseline_load(4, 2, 2, Rational(1)) == Rational(2));  // K2 <= L branch
}

TEST_CASE("grouping load formula") {
    CHECK(grouping_load(4, 4, 2, Rational(1)) == Rational(6));
    CHECK(grouping_load(6, 4, 2, Rational(3)) == Rational(3));
    CHECK(grouping_load(4, 4, 2, Rational(4)) == Rational(0));
}

TEST_CASE("hybrid load formula") {
    CHECK(hybrid_load(5, 3, 2, Rational(2)) == Rational(3));
    CHECK(hybrid_load(4, 3, 2, Rational(1)) == Rational(5));
    CHECK(hybrid_load(7, 3, 2, Rational(2)) == Rational(5));
    CHECK(hybrid_load(6, 4, 3, Rational(1)) == Rational(9));
    CHECK(hybrid_load(12, 8, 2, Rational(8)) == Rational(76, 9));
    CHECK_THROWS_AS(hybrid_load(5, 3, 2, Rational(0)), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// baseline construction
// ---------------------------------------------------------------------------

TEST_CASE("baseline_scheme branches and feasibility grid") {
    auto small = baseline_scheme(4, 2, 2, Rational(1), 8);
    CHECK(small.kind == SchemeKind::BaselineSmall);
    CHECK(small.load == Rational(2));
    CHECK(small.baseline().col_t == 1);

    auto coded = baseline_scheme(12, 8, 2, Rational(8), 96);
    CHECK(coded.kind == SchemeKind::BaselineMds);
    CHECK(coded.load == Rational(64, 3));
    CHECK(coded.baseline().col_t == 2);
    CHECK(coded.baseline().mds_l == 2);
    CHECK(coded.baseline().mds_shares == 8);

    // Fractional t on the grid: (4,3,2) admits t = 3/2 with per-column i = 1.
    auto frac = baseline_scheme(4, 3, 2, Rational(3, 2), 24);
    CHECK(frac.load == Rational(3));
    CHECK(frac.memory_ratio == Rational(1, 8));

    CHECK_THROWS_WITH_AS(baseline_scheme(4, 4, 2, Rational(1), 16),
                         doctest::Contains("nearest feasible t: 0 and 2"), std::invalid_argument);
    CHECK_THROWS_AS(baseline_scheme(4, 2, 2, Rational(3), 8), std::invalid_argument);
    CHECK_THROWS_AS(baseline_scheme(2, 4, 2, Rational(0), 8), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// grouping construction
// ---------------------------------------------------------------------------

TEST_CASE("grouping_scheme partitions the grid on the stride-L lattice") {
    auto s = grouping_scheme(4, 4, 2, 1, 16);
    CHECK(s.load == Rational(6));
    CHECK(s.memory_ratio == Rational(1, 16));
    const auto& g = s.grouping();
    CHECK(g.group_size == 4);
    CHECK(g.node_groups[0][0] ==
          std::vector<Grid2dIndex>{{1, 1}, {1, 3}, {3, 1}, {3, 3}});
    CHECK(g.node_groups[1][1] ==
          std::vector<Grid2dIndex>{{2, 2}, {2, 4}, {4, 2}, {4, 4}});

    CHECK(grouping_scheme(4, 4, 2, 4, 16).load == Rational(0));
    CHECK(grouping_scheme(6, 4, 2, 3, 24).load == Rational(3));
    CHECK_THROWS_AS(grouping_scheme(5, 4, 2, 1, 20), std::invalid_argument);
    CHECK_THROWS_AS(grouping_scheme(4, 4, 2, 5, 16), std::invalid_argument);
}

TEST_CASE("grouping: no user reaches two nodes of one group") {
    for (auto [K1, K2, L] : {std::tuple{4, 4, 2}, {6, 4, 2}, {6, 2, 2}, {6, 6, 3}}) {
        auto s = grouping_scheme(K1, K2, L, 1, K1 * K2);
        for (const auto& row : s.grouping().node_groups)
            for (const auto& group : row)
                for (size_t a = 0; a < group.size(); ++a)
                    for (size_t b = a + 1; b < group.size(); ++b)
                        for (int u1 = 1; u1 <= K1; ++u1)
                            for (int u2 = 1; u2 <= K2; ++u2) {
                                auto acc = accessible_nodes({u1, u2}, K1, K2, L);
                                bool both =
                                    std::count(acc.begin(), acc.end(), group[a]) &&
                                    std::count(acc.begin(), acc.end(), group[b]);
                                CHECK(!both);
                            }
    }
}

// ---------------------------------------------------------------------------
// hybrid construction
// ---------------------------------------------------------------------------

namespace {

int qrow(int j, const std::vector<int>& f, int K2) {
    int code = 0, stride = 1;
    for (int v : f) {
        code += (v - 1) * stride;
        stride *= K2;
    }
    int F2 = stride;
    return j * F2 + code;
}

}  // namespace

TEST_CASE("hybrid node placement: block layout of the (5,3,2,2) instance") {
    auto outer = make_1d_scheme(mn_pda(3, 2), 2, 2, 15);
    auto family = partition_macc_family(3, 2, 2);
    auto c = hybrid_node_placement(outer, family);
    REQUIRE(c.rows == 27);
    REQUIRE(c.cols == 15);

    // Outer row 1 puts E1 at column group (1,[3]) and E2 at (3,[3]).
    const std::vector<std::vector<int>> e_cols{{1, 3}, {1, 4}, {2, 4}};
    for (int j = 0; j < 3; ++j)
        for (int f0 = 0; f0 < 9; ++f0) {
            const auto& f = family.partition.sub_arrays[0].row_tags[f0];
            std::set<int> expect;
            for (int i = 0; i < 2; ++i)
                expect.insert(grid_col({e_cols[j][i], f[i]}, 3));
            for (int col = 0; col < 15; ++col)
                CHECK(c.star(j * 9 + f0, col) == (expect.count(col) > 0));
        }
}

TEST_CASE("hybrid node placement: any two stars in a row are >= L apart") {
    for (auto [K1, K2, L, t] :
         {std::tuple{5, 3, 2, 2}, {7, 3, 2, 2}, {6, 4, 3, 1}, {4, 3, 2, 1}}) {
        auto outer = make_1d_scheme(mn_pda(K1 - t * (L - 1), t), L, t, K1 * K2);
        auto family = partition_macc_family(K2, L, t);
        auto c = hybrid_node_placement(outer, family);
        for (int r = 0; r < c.rows; ++r) {
            std::vector<int> k1s;
            for (int col = 0; col < c.cols; ++col)
                if (c.star(r, col)) k1s.push_back(grid_from_col(col, K2).k1);
            for (size_t a = 0; a < k1s.size(); ++a)
                for (size_t b = a + 1; b < k1s.size(); ++b)
                    CHECK(ring_distance(k1s[a], k1s[b], K1) >= L);
        }
    }
}

TEST_CASE("hybrid user retrieve: run replacement and the null census") {
    auto outer = make_1d_scheme(mn_pda(3, 2), 2, 2, 15);
    auto family = partition_macc_family(3, 2, 2);
    auto u = hybrid_user_retrieve(outer, family);

    // Outer row 1: B1 over column groups 1 and 2, B2 over groups 3 and 4.
    const std::vector<std::vector<int>> b_cols{{1, 2, 3, 4}, {1, 2, 4, 5}, {2, 3, 4, 5}};
    for (int j = 0; j < 3; ++j)
        for (int f0 = 0; f0 < 9; ++f0) {
            int stars = 0, type1_nulls = 0, type2_nulls = 0;
            for (int col = 0; col < 15; ++col) {
                auto g = grid_from_col(col, 3);
                bool in_block = std::count(b_cols[j].begin(), b_cols[j].end(), g.k1) > 0;
                if (u.star(j * 9 + f0, col)) {
                    ++stars;
                    CHECK(in_block);
                } else {
                    (in_block ? type1_nulls : type2_nulls)++;
                }
            }
            CHECK(stars == 8);        // t L^2
            CHECK(type1_nulls == 4);  // t (K2-L) L
            CHECK(type2_nulls == 3);  // K2 (K1-tL)
        }
}

TEST_CASE("hybrid with L=1: retrieve blocks collapse onto placement") {
    auto s = hybrid_scheme(2, 2, 1, 1, 4);
    const auto& h = s.hybrid();
    CHECK(h.node_placement == h.user_retrieve);
    CHECK(q_full_c3_scan(h.user_delivery));
}

TEST_CASE("hybrid Type I filling reproduces the offset table") {
    auto s = hybrid_scheme(5, 3, 2, 2, 15);
    const auto& h = s.hybrid();
    const auto& q = h.user_delivery;
    const auto& h1 = h.inner.delivery(0);
    const auto& h2 = h.inner.delivery(1);

    // (outer row, k1) -> the sub-array and offset multiple expected there.
    struct Block { int j, k1; const PdaArray* sub; int shift; };
    const std::vector<Block> table{
        {0, 1, &h1, 0},  {0, 2, &h1, 9},  {0, 3, &h2, 0},  {0, 4, &h2, 9},
        {1, 1, &h1, 18}, {1, 2, &h1, 27}, {1, 4, &h2, 18}, {1, 5, &h2, 27},
        {2, 2, &h1, 36}, {2, 3, &h1, 45}, {2, 4, &h2, 36}, {2, 5, &h2, 45},
    };
    for (const auto& blk : table)
        for (int f0 = 0; f0 < 9; ++f0)
            for (int k2 = 1; k2 <= 3; ++k2) {
                const QCell& cell = q.at(blk.j * 9 + f0, grid_col({blk.k1, k2}, 3));
                auto src = blk.sub->at(f0, k2 - 1);
                if (src.is_star()) {
                    CHECK(cell.kind == QCell::Star);
                } else {
                    REQUIRE(cell.kind == QCell::TypeI);
                    CHECK(cell.label == src.label_id() + blk.shift);
                }
            }

    auto cells = q_label_cells(q);
    int type1 = 0;
    for (auto& [key, where] : cells)
        if (std::get<0>(key) == 1) {
            ++type1;
            CHECK(where.size() == 2);  // every Type I label occurs t times
        }
    CHECK(type1 == 54);
}

TEST_CASE("hybrid Type I offset classes each satisfy the cross condition") {
    auto s = hybrid_scheme(5, 3, 2, 2, 15);
    const auto& q = s.hybrid().user_delivery;
    for (int v = 0; v < 6; ++v) {
        // Restrict the scan to labels in (9v, 9(v+1)].
        std::map<int, std::vector<std::pair<int, int>>> cells;
        for (int r = 0; r < q.rows; ++r)
            for (int c = 0; c < q.cols; ++c) {
                const QCell& cell = q.at(r, c);
                if (cell.kind == QCell::TypeI && cell.label > 9 * v && cell.label <= 9 * (v + 1))
                    cells[cell.label].push_back({r, c});
            }
        CHECK(cells.size() == 9);
        for (auto& [label, where] : cells)
            for (size_t a = 0; a < where.size(); ++a)
                for (size_t b = a + 1; b < where.size(); ++b) {
                    auto [r1, c1] = where[a];
                    auto [r2, c2] = where[b];
                    CHECK(r1 != r2);
                    CHECK(c1 != c2);
                    CHECK(q.at(r1, c2).kind == QCell::Star);
                    CHECK(q.at(r2, c1).kind == QCell::Star);
                }
    }
}

TEST_CASE("hybrid Type II filling reproduces the worked (1,(3,2,1)) cells") {
    auto s = hybrid_scheme(5, 3, 2, 2, 15);
    const auto& q = s.hybrid().user_delivery;

    const int r1 = qrow(0, {3, 2}, 3), c1 = grid_col({5, 1}, 3);
    const int r2 = qrow(1, {3, 1}, 3), c2 = grid_col({3, 2}, 3);
    const int r3 = qrow(2, {2, 1}, 3), c3 = grid_col({1, 3}, 3);
    for (auto [r, c] : {std::pair{r1, c1}, {r2, c2}, {r3, c3}}) {
        const QCell& cell = q.at(r, c);
        REQUIRE(cell.kind == QCell::TypeII);
        CHECK(cell.s == 1);
        CHECK(cell.e == std::vector<int>{3, 2, 1});
    }
    // The 3x3 sub-array on those rows and columns is star-complementary.
    for (int r : {r1, r2, r3})
        for (int c : {c1, c2, c3}) {
            bool diagonal = (r == r1 && c == c1) || (r == r2 && c == c2) || (r == r3 && c == c3);
            CHECK((q.at(r, c).kind == (diagonal ? QCell::TypeII : QCell::Star)));
        }
}

TEST_CASE("hybrid Type II label budget and multiplicity under the MN outer") {
    auto s = hybrid_scheme(5, 3, 2, 2, 15);
    auto cells = q_label_cells(s.hybrid().user_delivery);
    int type2 = 0;
    for (auto& [key, where] : cells)
        if (std::get<0>(key) == 2) {
            ++type2;
            CHECK(where.size() == 3);  // t + 1
        }
    CHECK(type2 == 27);  // S1' K2^{t+1}
}

TEST_CASE("hybrid cross condition and coverage on the desk-scale instances") {
    for (auto [K1, K2, L, t] :
         {std::tuple{5, 3, 2, 2}, {4, 3, 2, 1}, {7, 3, 2, 2}, {6, 4, 3, 1}}) {
        auto s = hybrid_scheme(K1, K2, L, t, K1 * K2);
        check_lemma_5_6(s);
    }
}

TEST_CASE("hybrid accepts a Partition outer array") {
    auto outer = partition_pda(2, 1, 1).combined();  // 1-(2,2,1,2), t = 1
    auto s = hybrid_scheme(2, 2, 1, 1, 4, outer);
    check_lemma_5_6(s);
    CHECK(s.load == hybrid_load_general(2, 1, 1, outer.s, outer.rows));

    auto big_outer = partition_pda(3, 2, 2).combined();  // t = 4, K1 = 10 at L = 2
    auto big = hybrid_scheme(10, 3, 2, 4, 30, big_outer);
    check_lemma_5_6(big);
    CHECK(big.load == hybrid_load_general(3, 2, 4, 9, 9));
}

TEST_CASE("hybrid full-coverage corner: all-star outer leaves no Type II") {
    auto s = hybrid_scheme(4, 3, 2, 2, 12);  // K1' = t = 2: the outer is all-star
    CHECK(s.load == Rational(2));            // L (K2 - L)
    for (const auto& cell : s.hybrid().user_delivery.cells)
        CHECK(cell.kind != QCell::TypeII);
}

TEST_CASE("hybrid rejects out-of-contract parameters") {
    CHECK_THROWS_AS(hybrid_scheme(4, 2, 2, 1, 8), std::invalid_argument);   // K2 <= L
    CHECK_THROWS_AS(hybrid_scheme(5, 3, 2, 3, 15), std::invalid_argument);  // t too big
    CHECK_THROWS_AS(hybrid_scheme(5, 3, 2, 0, 15), std::invalid_argument);
    auto wrong = mn_pda(4, 2);  // wrong column count for (5,3,2,2)
    CHECK_THROWS_AS(hybrid_scheme(5, 3, 2, 2, 15, wrong), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// tradeoff corners and envelope
// ---------------------------------------------------------------------------

TEST_CASE("envelope of a single point is that point") {
    std::vector<TradeoffPoint> pts{{Rational(1, 4), Rational(3), "hybrid", Rational(2)}};
    auto env = lower_envelope(pts);
    REQUIRE(env.size() == 1);
    CHECK(env[0].memory_ratio == Rational(1, 4));
    CHECK(*envelope_value(env, Rational(1, 4)) == Rational(3));
    CHECK(!envelope_value(env, Rational(1, 8)).has_value());
}

TEST_CASE("figure-scale sweep (12,8,2): grouping <= hybrid <= baseline") {
    auto base = lower_envelope(baseline_corners(12, 8, 2));
    auto grp = lower_envelope(grouping_corners(12, 8, 2));
    auto hyb = lower_envelope(hybrid_corners(12, 8, 2));
    REQUIRE(!grp.empty());

    std::set<Rational> memories;
    for (const auto* env : {&base, &grp, &hyb})
        for (const auto& p : *env) memories.insert(p.memory_ratio);
    for (const auto& m : memories) {
        auto rb = envelope_value(base, m);
        auto rg = envelope_value(grp, m);
        auto rh = envelope_value(hyb, m);
        if (!rb || !rg || !rh) continue;
        CHECK(*rg <= *rh);
        CHECK(*rh <= *rb);
    }

    // Spot values on the baseline grid.
    CHECK(*envelope_value(base, Rational(1, 12)) == Rational(64, 3));
    CHECK(*envelope_value(grp, Rational(1, 24)) == Rational(16));
}

TEST_CASE("figure-scale sweep (11,9,2): grouping infeasible, hybrid below baseline") {
    CHECK(grouping_corners(11, 9, 2).empty());
    auto base = lower_envelope(baseline_corners(11, 9, 2));
    auto hyb = lower_envelope(hybrid_corners(11, 9, 2));
    std::set<Rational> memories;
    for (const auto* env : {&base, &hyb})
        for (const auto& p : *env) memories.insert(p.memory_ratio);
    for (const auto& m : memories) {
        auto rb = envelope_value(base, m);
        auto rh = envelope_value(hyb, m);
        if (!rb || !rh) continue;
        CHECK(*rh <= *rb);
    }
}

TEST_CASE("tradeoff_envelope unions kinds and keeps source tags") {
    auto env = tradeoff_envelope(12, 8, 2, 96, {"baseline", "grouping", "hybrid"});
    REQUIRE(env.size() >= 2);
    CHECK(env.front().memory_ratio == Rational(0));
    CHECK(env.back().load == Rational(0));
    for (size_t i = 1; i < env.size(); ++i) {
        CHECK(env[i - 1].memory_ratio < env[i].memory_ratio);
        CHECK(env[i - 1].load > env[i].load);
    }
    // With grouping available it dominates the interior.
    for (const auto& p : env)
        if (p.memory_ratio != Rational(0) && p.load != Rational(0))
            CHECK(p.scheme == "grouping");
    CHECK_THROWS_AS(tradeoff_envelope(4, 4, 2, 16, {"nonesuch"}), std::invalid_argument);
}
