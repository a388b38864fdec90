#include "maccsim/sim.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "maccsim/mds.hpp"
#include "maccsim/util.hpp"

namespace maccsim {

std::vector<Grid2dIndex> accessible_nodes(Grid2dIndex user, int K1, int K2, int L) {
    std::vector<Grid2dIndex> out;
    for (int k1 = 1; k1 <= K1; ++k1)
        for (int k2 = 1; k2 <= K2; ++k2)
            if (mod0(user.k1 - k1, K1) < L && mod0(user.k2 - k2, K2) < L)
                out.push_back({k1, k2});
    return out;
}

std::vector<int> accessible_nodes_1d(int user, int K, int L) {
    std::vector<int> out;
    for (int k = 1; k <= K; ++k)
        if (mod0(user - k, K) < L) out.push_back(k);
    return out;
}

namespace {

void sort_unique(std::vector<int>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::vector<std::vector<int>> derive_user_packets(
    const std::vector<std::vector<int>>& node_packets,
    const std::vector<std::vector<int>>& accessible_per_user) {
    std::vector<std::vector<int>> out(accessible_per_user.size());
    for (size_t u = 0; u < accessible_per_user.size(); ++u) {
        for (int node : accessible_per_user[u])
            out[u].insert(out[u].end(), node_packets[node].begin(), node_packets[node].end());
        sort_unique(out[u]);
    }
    return out;
}

void finish_plan(SimPlan& plan, const std::vector<std::vector<int>>& accessible_per_user) {
    for (auto& v : plan.node_packets) sort_unique(v);
    if (plan.user_packets.empty())
        plan.user_packets = derive_user_packets(plan.node_packets, accessible_per_user);
    else
        for (auto& v : plan.user_packets) sort_unique(v);
    if (!check_retrieve_consistency(plan, accessible_per_user))
        throw std::runtime_error(plan.description +
                                 ": user-retrieve array disagrees with node placement");
}

}  // namespace

bool check_retrieve_consistency(const SimPlan& plan,
                                const std::vector<std::vector<int>>& accessible_per_user) {
    return plan.user_packets == derive_user_packets(plan.node_packets, accessible_per_user);
}

// ---------------------------------------------------------------------------
// plan lowering
// ---------------------------------------------------------------------------

SimPlan make_plan(const PdaArray& p) {
    SimPlan plan;
    plan.description = "shared-link";
    plan.num_nodes = plan.num_users = p.cols;
    plan.rounds = 1;
    plan.delivery_f = plan.original_f = p.rows;

    int z;
    if (p.z.has_value()) {
        z = *p.z;
    } else {
        z = static_cast<int>(p.row_star_cols(0).size());  // uniform or verify_pda complains
    }
    plan.memory_ratio = Rational(z, p.rows);
    plan.nominal_load = Rational(p.s, p.rows);

    plan.node_packets.resize(p.cols);
    plan.user_packets.resize(p.cols);
    std::map<int, std::vector<std::pair<int, int>>> by_label;
    for (int j = 0; j < p.rows; ++j)
        for (int k = 1; k <= p.cols; ++k) {
            auto cell = p.at(j, k - 1);
            if (cell.is_star()) {
                plan.node_packets[k - 1].push_back(j);
                plan.user_packets[k - 1].push_back(j);
            } else {
                by_label[cell.label_id()].push_back({k - 1, j});
            }
        }
    for (auto& [s, cells] : by_label) {
        SimPlan::Message msg;
        msg.label = "s" + std::to_string(s);
        msg.round = 1;
        for (auto& [user, packet] : cells) msg.parts.push_back({user, packet});
        plan.messages.push_back(std::move(msg));
    }

    std::vector<std::vector<int>> acc(p.cols);
    for (int k = 0; k < p.cols; ++k) acc[k] = {k};  // each user reads its own cache
    finish_plan(plan, acc);
    return plan;
}

SimPlan make_plan(const Macc1dScheme& s) {
    SimPlan plan;
    plan.description = "macc1d K=" + std::to_string(s.K) + " L=" + std::to_string(s.L);
    plan.num_nodes = plan.num_users = s.K;
    plan.rounds = s.K;
    const int F1 = s.node_placement.rows;
    plan.delivery_f = plan.original_f = s.K * F1;
    plan.memory_ratio = s.memory_ratio;
    plan.nominal_load = s.load;

    plan.node_packets.resize(s.K);
    plan.user_packets.resize(s.K);
    for (int r = 1; r <= s.K; ++r)
        for (int j = 0; j < F1; ++j) {
            const int packet = (r - 1) * F1 + j;
            for (int k = 1; k <= s.K; ++k) {
                const int src = wrap1(k - (r - 1), s.K);
                if (s.node_placement.has_star(j, src)) plan.node_packets[k - 1].push_back(packet);
                if (s.user_retrieve.has_star(j, src)) plan.user_packets[k - 1].push_back(packet);
            }
        }

    std::map<int, std::vector<std::pair<int, int>>> by_label;  // s -> (col1, row)
    for (int j = 0; j < F1; ++j)
        for (int k = 1; k <= s.K; ++k) {
            auto cell = s.user_delivery.at(j, k - 1);
            if (!cell.is_star()) by_label[cell.label_id()].push_back({k, j});
        }
    for (int r = 1; r <= s.K; ++r)
        for (auto& [label, cells] : by_label) {
            SimPlan::Message msg;
            msg.label = "r" + std::to_string(r) + ":s" + std::to_string(label);
            msg.round = r;
            for (auto& [k, j] : cells)
                msg.parts.push_back({wrap1(k + (r - 1), s.K) - 1, (r - 1) * F1 + j});
            plan.messages.push_back(std::move(msg));
        }

    std::vector<std::vector<int>> acc(s.K);
    for (int u = 1; u <= s.K; ++u) {
        for (int node : accessible_nodes_1d(u, s.K, s.L)) acc[u - 1].push_back(node - 1);
    }
    finish_plan(plan, acc);
    return plan;
}

namespace {

SimPlan plan_baseline(const Macc2dScheme& s) {
    const auto& data = s.baseline();
    const auto& col = data.column;
    const int K1 = s.K1, K2 = s.K2;
    const int F1 = col.node_placement.rows;
    const int stripes = K1 * F1;

    SimPlan plan;
    plan.description = to_string(s.kind);
    plan.num_nodes = plan.num_users = K1 * K2;
    plan.rounds = K1;
    plan.delivery_f = K2 * stripes;
    plan.original_f = (data.mds ? data.mds_l : K2) * stripes;
    plan.memory_ratio = s.memory_ratio;
    plan.nominal_load = s.load;
    if (data.mds) {
        plan.mds_l = data.mds_l;
        plan.mds_shares = data.mds_shares;
    }

    auto packet_id = [&](int subfile, int r, int j) {
        return (subfile - 1) * stripes + (r - 1) * F1 + j;
    };

    plan.node_packets.resize(plan.num_nodes);
    plan.user_packets.resize(plan.num_users);
    for (int k1 = 1; k1 <= K1; ++k1)
        for (int k2 = 1; k2 <= K2; ++k2) {
            auto& cached = plan.node_packets[grid_col({k1, k2}, K2)];
            auto& got = plan.user_packets[grid_col({k1, k2}, K2)];
            for (int r = 1; r <= K1; ++r) {
                const int src = wrap1(k1 - (r - 1), K1);
                for (int j = 0; j < F1; ++j) {
                    if (col.node_placement.has_star(j, src))
                        cached.push_back(packet_id(k2, r, j));
                    if (col.user_retrieve.has_star(j, src))
                        for (int k2p = 1; k2p <= K2; ++k2p)
                            if (mod0(k2 - k2p, K2) < s.L) got.push_back(packet_id(k2p, r, j));
                }
            }
        }

    std::map<int, std::vector<std::pair<int, int>>> by_label;  // s -> (col1, row)
    for (int j = 0; j < F1; ++j)
        for (int k = 1; k <= K1; ++k) {
            auto cell = col.user_delivery.at(j, k - 1);
            if (!cell.is_star()) by_label[cell.label_id()].push_back({k, j});
        }
    for (int r = 1; r <= K1; ++r)
        for (int k2 = 1; k2 <= K2; ++k2)  // the column of users being served
            for (int k2p = 1; k2p <= K2; ++k2p) {
                if (mod0(k2 - k2p, K2) >= s.L) continue;  // outside the window
                for (auto& [label, cells] : by_label) {
                    SimPlan::Message msg;
                    msg.label = "r" + std::to_string(r) + ":u" + std::to_string(k2) + ":c" +
                                std::to_string(k2p) + ":s" + std::to_string(label);
                    msg.round = r;
                    for (auto& [k, j] : cells)
                        msg.parts.push_back(
                            {grid_col({wrap1(k + (r - 1), K1), k2}, K2), packet_id(k2p, r, j)});
                    plan.messages.push_back(std::move(msg));
                }
            }

    std::vector<std::vector<int>> acc(plan.num_users);
    for (int u = 0; u < plan.num_users; ++u)
        for (auto node : accessible_nodes(grid_from_col(u, K2), K1, K2, s.L))
            acc[u].push_back(grid_col(node, K2));
    finish_plan(plan, acc);
    return plan;
}

SimPlan plan_grouping(const Macc2dScheme& s) {
    const auto& data = s.grouping();
    const int K1 = s.K1, K2 = s.K2, L = s.L;
    const int khat = data.group_size;
    const int t = static_cast<int>(s.t.numerator());
    const int fmn = data.mn.rows;

    SimPlan plan;
    plan.description = "grouping";
    plan.num_nodes = plan.num_users = K1 * K2;
    plan.rounds = 1;
    plan.delivery_f = plan.original_f = L * L * fmn;
    plan.memory_ratio = s.memory_ratio;
    plan.nominal_load = s.load;

    auto subfile_of = [&](int j1, int j2) { return (j1 - 1) * L + (j2 - 1); };
    auto packet_id = [&](int j1, int j2, int row) { return subfile_of(j1, j2) * fmn + row; };

    plan.node_packets.resize(plan.num_nodes);
    for (int j1 = 1; j1 <= L; ++j1)
        for (int j2 = 1; j2 <= L; ++j2) {
            const auto& members = data.node_groups[j1 - 1][j2 - 1];
            for (int g = 1; g <= khat; ++g) {
                auto& cached = plan.node_packets[grid_col(members[g - 1], K2)];
                for (int row = 0; row < fmn; ++row) {
                    const auto& subset = data.mn.row_tags[row];
                    if (std::binary_search(subset.begin(), subset.end(), g))
                        cached.push_back(packet_id(j1, j2, row));
                }
            }
        }

    // User u in group (j1', j2') reads exactly one node of each node group.
    auto serving_user = [&](Grid2dIndex node, int j1p, int j2p) -> int {
        for (const auto& user : data.node_groups[j1p - 1][j2p - 1])
            if (mod0(user.k1 - node.k1, K1) < L && mod0(user.k2 - node.k2, K2) < L)
                return grid_col(user, K2);
        throw std::runtime_error("grouping: no user of the group reaches the node");
    };

    const auto multicast_subsets = subsets_lex(khat, t + 1);
    for (int j1p = 1; j1p <= L; ++j1p)
        for (int j2p = 1; j2p <= L; ++j2p)
            for (int j1 = 1; j1 <= L; ++j1)
                for (int j2 = 1; j2 <= L; ++j2)
                    for (size_t m = 0; m < multicast_subsets.size(); ++m) {
                        const auto& chosen = multicast_subsets[m];
                        SimPlan::Message msg;
                        msg.round = 1;
                        msg.label = "u" + std::to_string(j1p) + "." + std::to_string(j2p) +
                                    ":slot" + std::to_string(j1) + "." + std::to_string(j2) +
                                    ":m" + std::to_string(m + 1);
                        for (int g : chosen) {
                            std::vector<int> rest;
                            for (int v : chosen)
                                if (v != g) rest.push_back(v);
                            const int row =
                                static_cast<int>(subset_lex_rank(khat, rest)) - 1;
                            const auto node = data.node_groups[j1 - 1][j2 - 1][g - 1];
                            msg.parts.push_back(
                                {serving_user(node, j1p, j2p), packet_id(j1, j2, row)});
                        }
                        plan.messages.push_back(std::move(msg));
                    }

    std::vector<std::vector<int>> acc(plan.num_users);
    for (int u = 0; u < plan.num_users; ++u)
        for (auto node : accessible_nodes(grid_from_col(u, K2), K1, K2, L))
            acc[u].push_back(grid_col(node, K2));
    finish_plan(plan, acc);
    return plan;
}

SimPlan plan_hybrid(const Macc2dScheme& s) {
    const auto& data = s.hybrid();
    const int K1 = s.K1, K2 = s.K2;
    const int rows = data.node_placement.rows;  // F1' K2^t

    SimPlan plan;
    plan.description = "hybrid";
    plan.num_nodes = plan.num_users = K1 * K2;
    plan.rounds = K1;
    plan.delivery_f = plan.original_f = K1 * rows;
    plan.memory_ratio = s.memory_ratio;
    plan.nominal_load = s.load;

    plan.node_packets.resize(plan.num_nodes);
    plan.user_packets.resize(plan.num_users);
    for (int r = 1; r <= K1; ++r)
        for (int row = 0; row < rows; ++row) {
            const int packet = (r - 1) * rows + row;
            for (int k1 = 1; k1 <= K1; ++k1) {
                const int src_k1 = wrap1(k1 - (r - 1), K1);
                for (int k2 = 1; k2 <= K2; ++k2) {
                    const int col = grid_col({src_k1, k2}, K2);
                    const int here = grid_col({k1, k2}, K2);
                    if (data.node_placement.star(row, col))
                        plan.node_packets[here].push_back(packet);
                    if (data.user_retrieve.star(row, col))
                        plan.user_packets[here].push_back(packet);
                }
            }
        }

    std::map<int, std::vector<std::pair<int, int>>> type1;  // label -> (row, col0)
    std::map<std::pair<int, std::vector<int>>, std::vector<std::pair<int, int>>> type2;
    for (int row = 0; row < rows; ++row)
        for (int col = 0; col < K1 * K2; ++col) {
            const QCell& cell = data.user_delivery.at(row, col);
            if (cell.kind == QCell::TypeI) type1[cell.label].push_back({row, col});
            else if (cell.kind == QCell::TypeII) type2[{cell.s, cell.e}].push_back({row, col});
        }

    auto shifted_user = [&](int col0, int r) {
        auto g = grid_from_col(col0, K2);
        return grid_col({wrap1(g.k1 + (r - 1), K1), g.k2}, K2);
    };

    for (int r = 1; r <= K1; ++r) {
        for (auto& [label, cells] : type1) {
            SimPlan::Message msg;
            msg.round = r;
            msg.label = "r" + std::to_string(r) + ":I" + std::to_string(label);
            for (auto& [row, col] : cells)
                msg.parts.push_back({shifted_user(col, r), (r - 1) * rows + row});
            plan.messages.push_back(std::move(msg));
        }
        for (auto& [key, cells] : type2) {
            SimPlan::Message msg;
            msg.round = r;
            std::ostringstream os;
            os << "r" << r << ":II:s" << key.first << ":e";
            for (int e : key.second) os << e;
            msg.label = os.str();
            for (auto& [row, col] : cells)
                msg.parts.push_back({shifted_user(col, r), (r - 1) * rows + row});
            plan.messages.push_back(std::move(msg));
        }
    }

    std::vector<std::vector<int>> acc(plan.num_users);
    for (int u = 0; u < plan.num_users; ++u)
        for (auto node : accessible_nodes(grid_from_col(u, K2), K1, K2, s.L))
            acc[u].push_back(grid_col(node, K2));
    finish_plan(plan, acc);
    return plan;
}

}  // namespace

SimPlan make_plan(const Macc2dScheme& s) {
    switch (s.kind) {
        case SchemeKind::BaselineSmall:
        case SchemeKind::BaselineMds: return plan_baseline(s);
        case SchemeKind::Grouping: return plan_grouping(s);
        case SchemeKind::Hybrid: return plan_hybrid(s);
    }
    throw std::logic_error("make_plan: unknown scheme kind");
}

// ---------------------------------------------------------------------------
// library and context
// ---------------------------------------------------------------------------

FileLibrary FileLibrary::random(int num_files, int packets_per_file, int packet_size,
                                std::uint64_t seed) {
    FileLibrary lib;
    lib.num_files = num_files;
    lib.packets_per_file = packets_per_file;
    lib.packet_size = packet_size;
    std::mt19937_64 rng(seed);
    lib.files.resize(num_files);
    for (auto& f : lib.files) {
        f.resize(static_cast<size_t>(packets_per_file) * packet_size);
        for (auto& b : f) b = static_cast<std::uint8_t>(rng() & 0xFF);
    }
    return lib;
}

std::span<const std::uint8_t> FileLibrary::packet(int file0, int packet_id) const {
    return {files[file0].data() + static_cast<size_t>(packet_id) * packet_size,
            static_cast<size_t>(packet_size)};
}

SimContext SimContext::prepare(SimPlan plan, int num_files, int packet_size, std::uint64_t seed) {
    SimContext ctx;
    ctx.original = FileLibrary::random(num_files, plan.original_f, packet_size, seed);
    if (plan.is_coded()) {
        MdsCode code(plan.mds_l, plan.mds_shares);
        const int stripes = plan.stripes();
        ctx.delivery.num_files = num_files;
        ctx.delivery.packets_per_file = plan.delivery_f;
        ctx.delivery.packet_size = packet_size;
        ctx.delivery.files.resize(num_files);
        for (int n = 0; n < num_files; ++n) {
            auto& out = ctx.delivery.files[n];
            out.resize(static_cast<size_t>(plan.delivery_f) * packet_size);
            for (int stripe = 0; stripe < stripes; ++stripe) {
                std::vector<std::vector<std::uint8_t>> sources(plan.mds_l);
                for (int l = 0; l < plan.mds_l; ++l) {
                    auto src = ctx.original.packet(n, l * stripes + stripe);
                    sources[l].assign(src.begin(), src.end());
                }
                auto shares = code.encode(sources);
                for (int share = 0; share < plan.mds_shares; ++share)
                    std::copy(shares[share].begin(), shares[share].end(),
                              out.begin() + (static_cast<size_t>(share) * stripes + stripe) *
                                                packet_size);
            }
        }
    } else {
        ctx.delivery = ctx.original;
    }
    ctx.plan = std::move(plan);
    return ctx;
}

// ---------------------------------------------------------------------------
// placement / delivery / decoding
// ---------------------------------------------------------------------------

CacheContents place(const SimContext& ctx) {
    CacheContents cc;
    const auto& plan = ctx.plan;
    for (int node = 0; node < plan.num_nodes; ++node) {
        Rational used(static_cast<long long>(plan.node_packets[node].size()), plan.original_f);
        if (used != plan.memory_ratio)
            throw std::runtime_error("place: node " + std::to_string(node + 1) + " caches " +
                                     to_string(used) + " of each file, budget is " +
                                     to_string(plan.memory_ratio));
        cc.packets_cached.push_back(
            static_cast<long long>(plan.node_packets[node].size()) * ctx.original.num_files);
    }
    cc.per_node_files = plan.memory_ratio * ctx.original.num_files;
    return cc;
}

namespace {

bool user_has(const SimPlan& plan, int user, int packet) {
    const auto& v = plan.user_packets[user];
    return std::binary_search(v.begin(), v.end(), packet);
}

}  // namespace

DeliveryLog deliver(const SimContext& ctx, const std::vector<int>& demand, bool drop_unneeded) {
    const auto& plan = ctx.plan;
    if (static_cast<int>(demand.size()) != plan.num_users)
        throw std::invalid_argument("deliver: demand vector length mismatch");
    for (int d : demand)
        if (d < 1 || d > ctx.original.num_files)
            throw std::invalid_argument("deliver: demanded file out of range");

    DeliveryLog log;
    log.per_round.assign(plan.rounds, 0);
    for (const auto& m : plan.messages) {
        if (drop_unneeded) {
            bool all_covered = true;
            for (auto& [user, packet] : m.parts)
                if (!user_has(plan, user, packet)) {
                    all_covered = false;
                    break;
                }
            if (all_covered) continue;
        }
        MulticastMessage out;
        out.label = m.label;
        out.round = m.round;
        out.payload.assign(ctx.delivery.packet_size, 0);
        for (auto& [user, packet] : m.parts) {
            out.beneficiaries.push_back(user);
            auto bytes = ctx.delivery.packet(demand[user] - 1, packet);
            for (int b = 0; b < ctx.delivery.packet_size; ++b) out.payload[b] ^= bytes[b];
        }
        out.payload_hash = fnv1a64(out.payload);
        ++log.per_round[m.round - 1];
        ++log.total_messages;
        log.messages.push_back(std::move(out));
    }
    log.measured_load = Rational(log.total_messages, plan.original_f);
    return log;
}

DecodeOutcome decode_user(const SimContext& ctx, int user, const std::vector<int>& demand,
                          const DeliveryLog& log) {
    const auto& plan = ctx.plan;
    const int want = demand[user] - 1;
    const int psize = ctx.delivery.packet_size;

    std::vector<char> have(plan.delivery_f, 0);
    std::vector<std::uint8_t> bytes(static_cast<size_t>(plan.delivery_f) * psize);

    for (int packet : plan.user_packets[user]) {
        auto src = ctx.delivery.packet(want, packet);
        std::copy(src.begin(), src.end(), bytes.begin() + static_cast<size_t>(packet) * psize);
        have[packet] = 1;
    }

    // Peel the user's packet out of every message it benefits from. Labels
    // are unique per round, so they pair the payload with its plan entry.
    std::map<std::string, const std::vector<std::uint8_t>*> payload_by_label;
    for (const auto& m : log.messages) payload_by_label[m.label] = &m.payload;
    for (const auto& m : plan.messages) {
        auto it = payload_by_label.find(m.label);
        if (it == payload_by_label.end()) continue;
        const auto& payload = *it->second;
        for (auto& [u, packet] : m.parts) {
            if (u != user || have[packet]) continue;
            std::vector<std::uint8_t> acc(payload);
            bool usable = true;
            for (auto& [v, q] : m.parts) {
                if (v == u && q == packet) continue;
                if (!user_has(plan, user, q)) {
                    usable = false;
                    break;
                }
                auto side = ctx.delivery.packet(demand[v] - 1, q);
                for (int b = 0; b < psize; ++b) acc[b] ^= side[b];
            }
            if (!usable) continue;
            std::copy(acc.begin(), acc.end(), bytes.begin() + static_cast<size_t>(packet) * psize);
            have[packet] = 1;
        }
    }

    // Assemble the original file from the delivery-space packets.
    std::vector<std::uint8_t> file;
    if (!plan.is_coded()) {
        for (int packet = 0; packet < plan.delivery_f; ++packet)
            if (!have[packet])
                return {false, "user " + std::to_string(user + 1) + " misses packet " +
                                   std::to_string(packet)};
        file = bytes;
    } else {
        const int stripes = plan.stripes();
        MdsCode code(plan.mds_l, plan.mds_shares);
        file.resize(static_cast<size_t>(plan.original_f) * psize);
        for (int stripe = 0; stripe < stripes; ++stripe) {
            std::vector<int> ids;
            std::vector<std::vector<std::uint8_t>> shares;
            for (int share = 1; share <= plan.mds_shares && static_cast<int>(ids.size()) < plan.mds_l;
                 ++share) {
                const int packet = (share - 1) * stripes + stripe;
                if (!have[packet]) continue;
                ids.push_back(share);
                shares.emplace_back(bytes.begin() + static_cast<size_t>(packet) * psize,
                                    bytes.begin() + static_cast<size_t>(packet + 1) * psize);
            }
            if (static_cast<int>(ids.size()) < plan.mds_l)
                return {false, "user " + std::to_string(user + 1) + " holds only " +
                                   std::to_string(ids.size()) + " shares of stripe " +
                                   std::to_string(stripe)};
            auto sources = code.decode(ids, shares);
            for (int l = 0; l < plan.mds_l; ++l)
                std::copy(sources[l].begin(), sources[l].end(),
                          file.begin() +
                              (static_cast<size_t>(l) * stripes + stripe) * psize);
        }
    }

    const auto& truth = ctx.original.files[want];
    if (file != truth) {
        for (int packet = 0; packet < plan.original_f; ++packet) {
            auto a = file.begin() + static_cast<size_t>(packet) * psize;
            if (!std::equal(a, a + psize, truth.begin() + static_cast<size_t>(packet) * psize))
                return {false, "user " + std::to_string(user + 1) + " reconstructed packet " +
                                   std::to_string(packet) + " incorrectly"};
        }
        return {false, "user " + std::to_string(user + 1) + " length mismatch"};
    }
    return {true, ""};
}

SimReport simulate(const SimContext& ctx, const std::vector<int>& demand,
                   bool keep_payload_hashes_only) {
    SimReport rep;
    rep.demand = demand;
    rep.log = deliver(ctx, demand, false);
    rep.all_decoded = true;
    for (int u = 0; u < ctx.plan.num_users; ++u) {
        auto outcome = decode_user(ctx, u, demand, rep.log);
        rep.per_user_ok.push_back(outcome.ok);
        if (!outcome.ok) rep.all_decoded = false;
    }
    if (keep_payload_hashes_only)
        for (auto& m : rep.log.messages) m.payload.clear();
    return rep;
}

std::vector<int> all_distinct_demand(const SimPlan& plan, int num_files) {
    if (num_files < plan.num_users)
        throw std::invalid_argument("all_distinct_demand: needs N >= number of users");
    std::vector<int> d(plan.num_users);
    for (int u = 0; u < plan.num_users; ++u) d[u] = u + 1;
    return d;
}

std::vector<int> seeded_demand(const SimPlan& plan, int num_files, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<int> d(plan.num_users);
    for (auto& v : d) v = static_cast<int>(rng() % num_files) + 1;
    return d;
}

Rational measure_worst_case(const SimContext& ctx, int samples, std::uint64_t seed) {
    auto base = deliver(ctx, all_distinct_demand(ctx.plan, ctx.original.num_files), true);
    Rational worst = base.measured_load;
    for (int i = 0; i < samples; ++i) {
        auto log = deliver(ctx, seeded_demand(ctx.plan, ctx.original.num_files, seed + i), true);
        if (log.measured_load > worst)
            throw std::runtime_error(
                "measure_worst_case: a sampled demand beat the all-distinct demand");
    }
    return worst;
}

}  // namespace maccsim
