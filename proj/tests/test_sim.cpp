#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "maccsim/sim.hpp"
#include "maccsim/util.hpp"

using namespace maccsim;

namespace {

// The full test matrix used by several invariants: every kind, K1 K2 <= 24.
std::vector<Macc2dScheme> scheme_matrix() {
    std::vector<Macc2dScheme> out;
    for (int t = 0; t <= 2; ++t) out.push_back(baseline_scheme(4, 2, 2, Rational(t), 8));
    for (int t = 0; t <= 2; ++t) out.push_back(baseline_scheme(6, 3, 3, Rational(t), 18));
    for (int i = 0; i <= 2; ++i) out.push_back(baseline_scheme(5, 4, 2, Rational(2 * i), 20));
    out.push_back(baseline_scheme(4, 3, 2, Rational(3, 2), 24));
    for (int t = 0; t <= 4; ++t) out.push_back(grouping_scheme(4, 4, 2, t, 16));
    for (int t : {0, 2, 3}) out.push_back(grouping_scheme(6, 2, 2, t, 12));
    for (int t : {1, 4, 6}) out.push_back(grouping_scheme(6, 4, 2, t, 24));
    for (int t : {1, 2}) out.push_back(hybrid_scheme(5, 3, 2, t, 15));
    out.push_back(hybrid_scheme(4, 3, 2, 1, 12));
    out.push_back(hybrid_scheme(7, 3, 2, 2, 21));
    out.push_back(hybrid_scheme(6, 4, 3, 1, 24));
    return out;
}

}  // namespace

TEST_CASE("accessible_nodes follows the wrap-around window") {
    auto acc = accessible_nodes({2, 2}, 3, 3, 2);
    CHECK(acc == std::vector<Grid2dIndex>{{1, 1}, {1, 2}, {2, 1}, {2, 2}});

    CHECK(accessible_nodes({3, 1}, 3, 3, 1) == std::vector<Grid2dIndex>{{3, 1}});

    auto wrapped = accessible_nodes({1, 1}, 5, 3, 2);
    CHECK(wrapped == std::vector<Grid2dIndex>{{1, 1}, {1, 3}, {5, 1}, {5, 3}});

    // |window| = min(L,K1) * min(L,K2), exhaustively via the mod oracle.
    for (auto [K1, K2, L] : {std::tuple{4, 2, 2}, {5, 3, 2}, {6, 4, 3}, {3, 3, 4}}) {
        for (int u1 = 1; u1 <= K1; ++u1)
            for (int u2 = 1; u2 <= K2; ++u2) {
                auto nodes = accessible_nodes({u1, u2}, K1, K2, L);
                std::set<std::pair<int, int>> expect;
                for (int d1 = 0; d1 < L; ++d1)
                    for (int d2 = 0; d2 < L; ++d2)
                        expect.insert({wrap1(u1 - d1, K1), wrap1(u2 - d2, K2)});
                CHECK(nodes.size() == expect.size());
                for (auto n : nodes) CHECK(expect.count({n.k1, n.k2}));
            }
    }
}

TEST_CASE("shared-link run of the 3-user fixture") {
    auto ctx = SimContext::prepare(make_plan(mn_pda(3, 2)), 3, 16, 7);
    auto cc = place(ctx);
    CHECK(ctx.plan.node_packets[0] == std::vector<int>{0, 1});  // packets 1 and 2
    CHECK(cc.per_node_files == Rational(2));

    auto log = deliver(ctx, {1, 2, 3});
    REQUIRE(log.total_messages == 1);
    CHECK(log.measured_load == Rational(1, 3));

    // The payload is W_{1,3} ^ W_{2,2} ^ W_{3,1}.
    std::vector<std::uint8_t> expect(16, 0);
    for (auto [file, packet] : {std::pair{1, 2}, {2, 1}, {3, 0}}) {
        auto bytes = ctx.original.packet(file - 1, packet);
        for (int b = 0; b < 16; ++b) expect[b] ^= bytes[b];
    }
    CHECK(log.messages[0].payload == expect);

    for (int u = 0; u < 3; ++u) CHECK(decode_user(ctx, u, {1, 2, 3}, log).ok);
}

TEST_CASE("1D scheme round-1 message matches the worked example") {
    auto ctx = SimContext::prepare(make_plan(cwlzc_scheme(5, 2, 2, 15)), 15, 8, 9);
    auto log = deliver(ctx, {1, 2, 3, 4, 5});
    CHECK(log.total_messages == 5);  // one per round
    CHECK(log.per_round == std::vector<long long>(5, 1));
    CHECK(log.measured_load == Rational(1, 3));

    // Round 1: W_{1,3}^(1) ^ W_{3,2}^(1) ^ W_{5,1}^(1).
    const auto& m = log.messages[0];
    std::set<std::pair<int, int>> parts;  // (user, packet)
    for (size_t i = 0; i < m.beneficiaries.size(); ++i) parts.insert({m.beneficiaries[i], 0});
    std::vector<std::uint8_t> expect(8, 0);
    for (auto [file, packet] : {std::pair{1, 2}, {3, 1}, {5, 0}}) {
        auto bytes = ctx.original.packet(file - 1, packet);
        for (int b = 0; b < 8; ++b) expect[b] ^= bytes[b];
    }
    CHECK(m.payload == expect);

    auto rep = simulate(ctx, {1, 2, 3, 4, 5});
    CHECK(rep.all_decoded);
    CHECK(measure_worst_case(ctx) == Rational(1, 3));
}

TEST_CASE("1D memory accounting: 6/15 of the library for the (5,2) scheme") {
    auto ctx = SimContext::prepare(make_plan(cwlzc_scheme(5, 2, 2, 15)), 15, 4, 1);
    auto cc = place(ctx);
    CHECK(ctx.plan.memory_ratio == Rational(6, 15));
    CHECK(cc.per_node_files == Rational(6));  // M = 6 files
}

TEST_CASE("t = 0 means empty caches and unicast delivery") {
    auto ctx = SimContext::prepare(make_plan(cwlzc_scheme(4, 2, 0, 4)), 4, 8, 2);
    for (const auto& cached : ctx.plan.node_packets) CHECK(cached.empty());
    auto rep = simulate(ctx, all_distinct_demand(ctx.plan, 4));
    CHECK(rep.log.measured_load == Rational(4));
    CHECK(rep.all_decoded);
}

TEST_CASE("full-coverage corner sends nothing") {
    auto ctx = SimContext::prepare(make_plan(grouping_scheme(4, 4, 2, 4, 16)), 16, 8, 3);
    auto rep = simulate(ctx, all_distinct_demand(ctx.plan, 16));
    CHECK(rep.log.total_messages == 0);
    CHECK(rep.all_decoded);
}

TEST_CASE("load identity: simulation meets the closed form on the whole matrix") {
    for (const auto& scheme : scheme_matrix()) {
        CAPTURE(to_string(scheme.kind));
        CAPTURE(scheme.K1);
        CAPTURE(scheme.K2);
        CAPTURE(to_string(scheme.t));
        auto ctx = SimContext::prepare(make_plan(scheme), scheme.K1 * scheme.K2, 8, 11);
        place(ctx);
        auto rep = simulate(ctx, all_distinct_demand(ctx.plan, scheme.K1 * scheme.K2));
        CHECK(rep.log.measured_load == scheme.load);
        CHECK(rep.all_decoded);
        CHECK(measure_worst_case(ctx, 4) == scheme.load);
    }
}

TEST_CASE("seeded random demands decode byte-exactly") {
    auto grouping = SimContext::prepare(make_plan(grouping_scheme(4, 4, 2, 1, 16)), 16, 8, 5);
    auto hybrid = SimContext::prepare(make_plan(hybrid_scheme(5, 3, 2, 2, 15)), 15, 8, 5);
    for (const SimContext* ctx : {&grouping, &hybrid})
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            auto rep = simulate(*ctx, seeded_demand(ctx->plan, ctx->original.num_files, seed));
            CHECK(rep.all_decoded);
        }
}

TEST_CASE("every multicast component is cancellable by every beneficiary") {
    for (const auto& scheme : scheme_matrix()) {
        auto plan = make_plan(scheme);
        for (const auto& m : plan.messages)
            for (auto& [user, packet] : m.parts)
                for (auto& [other, q] : m.parts) {
                    if (other == user && q == packet) continue;
                    const auto& held = plan.user_packets[user];
                    CHECK(std::binary_search(held.begin(), held.end(), q));
                }
    }
}

TEST_CASE("memory exactness across the matrix") {
    for (const auto& scheme : scheme_matrix()) {
        auto plan = make_plan(scheme);
        for (const auto& cached : plan.node_packets)
            CHECK(Rational(static_cast<long long>(cached.size()), plan.original_f) ==
                  scheme.memory_ratio);
    }
}

TEST_CASE("cyclic closure: per-node packet totals equal the column sums") {
    // 1D: over the K rounds each node stores K'Z' packet rows.
    auto s = cwlzc_scheme(6, 2, 2, 12);
    auto plan = make_plan(s);
    for (const auto& cached : plan.node_packets)
        CHECK(static_cast<long long>(cached.size()) ==
              static_cast<long long>(s.source.cols) * *s.source.z);

    // Hybrid: K1' Z1' Z2 with Z2 = K2^{t-1} tag stars per inner column.
    auto h = hybrid_scheme(5, 3, 2, 2, 15);
    auto hplan = make_plan(h);
    for (const auto& cached : hplan.node_packets) CHECK(cached.size() == 18);
}

TEST_CASE("round shifts are column rotations of round 1") {
    auto s = cwlzc_scheme(5, 2, 2, 15);
    auto plan = make_plan(s);
    const int F1 = s.node_placement.rows;
    for (int k = 1; k <= 5; ++k)
        for (int r = 2; r <= 5; ++r)
            for (int j = 0; j < F1; ++j) {
                bool round_r = std::binary_search(plan.node_packets[k - 1].begin(),
                                                  plan.node_packets[k - 1].end(),
                                                  (r - 1) * F1 + j);
                bool base = std::binary_search(
                    plan.node_packets[wrap1(k - (r - 1), 5) - 1].begin(),
                    plan.node_packets[wrap1(k - (r - 1), 5) - 1].end(), j);
                CHECK(round_r == base);
            }
}

TEST_CASE("baseline MDS end to end on (5,4,2)") {
    for (int i : {1, 2}) {
        auto scheme = baseline_scheme(5, 4, 2, Rational(2 * i), 20);
        auto ctx = SimContext::prepare(make_plan(scheme), 20, 8, 13);
        REQUIRE(ctx.plan.is_coded());
        CHECK(ctx.plan.delivery_f == 4 * ctx.plan.stripes());
        auto rep = simulate(ctx, all_distinct_demand(ctx.plan, 20));
        CHECK(rep.all_decoded);
        CHECK(rep.log.measured_load == scheme.load);
    }
}

TEST_CASE("decode reports the first failing coordinate on corruption") {
    auto ctx = SimContext::prepare(make_plan(cwlzc_scheme(5, 2, 2, 15)), 15, 8, 17);
    auto demand = all_distinct_demand(ctx.plan, 15);
    auto log = deliver(ctx, demand);
    log.messages[0].payload[0] ^= 0xFF;
    bool any_fail = false;
    for (int u = 0; u < ctx.plan.num_users; ++u) {
        auto out = decode_user(ctx, u, demand, log);
        if (!out.ok) {
            any_fail = true;
            CHECK(out.detail.find("packet") != std::string::npos);
        }
    }
    CHECK(any_fail);
}

TEST_CASE("all-distinct demand needs a large enough library") {
    auto plan = make_plan(cwlzc_scheme(5, 2, 2, 15));
    CHECK_THROWS_AS(all_distinct_demand(plan, 4), std::invalid_argument);
}
