#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "maccsim/macc1d.hpp"
#include "maccsim/macc2d.hpp"
#include "maccsim/rational.hpp"

namespace maccsim {

// Cache-nodes a user can read: both cyclic coordinate distances below L.
std::vector<Grid2dIndex> accessible_nodes(Grid2dIndex user, int K1, int K2, int L);
// 1D version: nodes k' with mod(k - k', K) < L.
std::vector<int> accessible_nodes_1d(int user, int K, int L);

// A scheme lowered to its executable form. Packet ids index the delivery
// packet space of one file; every file shares the same placement pattern.
struct SimPlan {
    std::string description;
    int num_nodes = 0;
    int num_users = 0;
    int rounds = 1;

    // Delivery-space packets per file. Equals original_f except for MDS
    // precoded plans, where the delivery space holds K2 coded shares of L
    // source blocks.
    int delivery_f = 0;
    int original_f = 0;

    std::vector<std::vector<int>> node_packets;  // per node, ascending packet ids
    std::vector<std::vector<int>> user_packets;  // derived from node_packets

    struct Message {
        std::string label;
        int round = 1;  // 1-based
        // (user 0-based, packet id): the XOR component owed to that user.
        std::vector<std::pair<int, int>> parts;
    };
    std::vector<Message> messages;

    // MDS structure (set when delivery_f != original_f): packet id
    // (share-1)*stripes + stripe with share in [1..mds_shares]; original id
    // (l-1)*stripes + stripe with l in [1..mds_l].
    int mds_l = 0;
    int mds_shares = 0;
    int stripes() const { return mds_shares ? delivery_f / mds_shares : 0; }
    bool is_coded() const { return mds_shares != 0; }

    Rational memory_ratio;  // per-node packets / original_f
    Rational nominal_load;  // the scheme's closed-form R
};

SimPlan make_plan(const PdaArray& shared_link_pda);  // nodes = users
SimPlan make_plan(const Macc1dScheme& scheme);
SimPlan make_plan(const Macc2dScheme& scheme);

struct FileLibrary {
    int num_files = 0;
    int packets_per_file = 0;
    int packet_size = 0;
    std::vector<std::vector<std::uint8_t>> files;  // packets_per_file * packet_size each

    static FileLibrary random(int num_files, int packets_per_file, int packet_size,
                              std::uint64_t seed);

    std::span<const std::uint8_t> packet(int file0, int packet_id) const;
};

// Library plus, for MDS plans, the precoded delivery-space copy.
struct SimContext {
    SimPlan plan;
    FileLibrary original;
    FileLibrary delivery;  // == original unless the plan is coded

    static SimContext prepare(SimPlan plan, int num_files, int packet_size,
                              std::uint64_t seed);
};

struct CacheContents {
    // packets_cached[node] counts (file, packet) pairs; contents follow
    // plan.node_packets for every file.
    std::vector<long long> packets_cached;
    Rational per_node_files;  // cached packets / original_f, in units of files
};

// Materialises cache counts and verifies them against memory_ratio * F exactly.
CacheContents place(const SimContext& ctx);

struct MulticastMessage {
    std::string label;
    int round = 1;
    std::vector<int> beneficiaries;  // user ids, 0-based
    std::vector<std::uint8_t> payload;
    std::uint64_t payload_hash = 0;
};

struct DeliveryLog {
    long long total_messages = 0;
    std::vector<long long> per_round;
    Rational measured_load;  // total / original_f
    std::vector<MulticastMessage> messages;
};

// d maps user (0-based) to file id in [1..N]. One message per label; when
// drop_unneeded is set, a label whose every beneficiary can already retrieve
// its packet is skipped (never the case for these schemes; off by default).
DeliveryLog deliver(const SimContext& ctx, const std::vector<int>& demand,
                    bool drop_unneeded = false);

struct DecodeOutcome {
    bool ok = false;
    std::string detail;  // first failing (user, packet) when not ok
};

// Reconstructs user's demanded file from its retrieved packets and the
// multicast payloads; byte-compares against the library.
DecodeOutcome decode_user(const SimContext& ctx, int user, const std::vector<int>& demand,
                          const DeliveryLog& log);

struct SimReport {
    std::vector<int> demand;
    DeliveryLog log;
    bool all_decoded = false;
    std::vector<bool> per_user_ok;
};

SimReport simulate(const SimContext& ctx, const std::vector<int>& demand,
                   bool keep_payload_hashes_only = false);

std::vector<int> all_distinct_demand(const SimPlan& plan, int num_files);
std::vector<int> seeded_demand(const SimPlan& plan, int num_files, std::uint64_t seed);

// Max of S_d/F over the all-distinct demand and `samples` seeded demands;
// asserts that no sample exceeds the all-distinct load.
Rational measure_worst_case(const SimContext& ctx, int samples = 8,
                            std::uint64_t seed = 1);

// Every user's retrieve set must equal the union of its accessible nodes'
// placements. make_plan derives user_packets this way; scheme-declared U
// arrays are checked against it by the callers' tests.
bool check_retrieve_consistency(const SimPlan& plan,
                                const std::vector<std::vector<int>>& accessible_per_user);

}  // namespace maccsim
