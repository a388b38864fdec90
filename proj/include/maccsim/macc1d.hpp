#pragma once

#include <vector>

#include "maccsim/pda.hpp"
#include "maccsim/rational.hpp"

namespace maccsim {

// Star-only array (node-placement and user-retrieve arrays have no labels).
struct StarMap {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<int>> star_cols;  // per row, ascending 1-based column ids

    StarMap() = default;
    StarMap(int rows_, int cols_) : rows(rows_), cols(cols_), star_cols(rows_) {}

    bool has_star(int row, int col1) const;
    int count_in_col(int col1) const;

    bool operator==(const StarMap&) const = default;
};

// One cyclic MACC scheme on a line of K cache-nodes, K users each reading L
// consecutive nodes. Round-1 arrays are stored; round r is the cyclic right
// shift by r-1 columns.
struct Macc1dScheme {
    int K = 0;
    int L = 0;
    int t = 0;  // nodes caching each packet; K M / N
    int N = 0;

    PdaArray source;         // the (K', F', Z', S') array the scheme was built from
    StarMap node_placement;  // C: F' x K
    StarMap user_retrieve;   // U: F' x K, t runs of L stars per row
    PdaArray user_delivery;  // Q: F' x K, same stars as U, labels in [1..S']

    // Per row j, the ordered star columns of C (C_j); run i of U starts at
    // node_cols[j][i].
    std::vector<std::vector<int>> node_cols;

    Rational load;          // S'/F'
    Rational memory_ratio;  // K'Z' / (F'K)

    int rounds() const { return K; }

    // Which retrieve-run of row `row` contains 1-based column k, in [1..t];
    // 0 if k is not a star column of U.
    int run_of(int row, int k) const;
};

// The three per-sub-array 1D schemes cut out of a Partition family: tag-star
// placement E_i, its L-run expansion B_i, and the sub-array H_i as delivery.
struct HorizontalFamily {
    int K2 = 0;  // q
    int L = 0;   // z
    int t = 0;   // m

    PartitionFamily partition;
    std::vector<StarMap> node_placement;  // E_i: q^t x K2, one tag star per row
    std::vector<StarMap> user_retrieve;   // B_i: star pattern of sub-array i

    const PdaArray& delivery(int i) const { return partition.sub_arrays[i]; }
};

// Row j of the result stars at A_j[i] + (i-1)(L-1) for each of the t stars of
// p's row j; consecutive stars end up at ring distance >= L.
StarMap build_node_placement(const PdaArray& p, int t, int L);

// Expands every star at column k into the run {k, k+1, ..., k+L-1} (mod-K
// wrap); rejects overlapping runs.
StarMap build_user_retrieve(const StarMap& c, int L, int K);

// Fills the non-star cells of u with the labels of p under the rank-preserving
// map between the sorted star complements of each row.
PdaArray build_user_delivery(const StarMap& u, const PdaArray& p);

// Runs the whole transform: verifies p against C1-C5, builds C/U/Q, attaches
// exact load S'/F' and memory ratio K'Z'/(F'K).
Macc1dScheme make_1d_scheme(const PdaArray& p, int L, int t, int N);

// MN-seeded scheme for (K, L, M, N) with t = KM/N: load (K - tL)/(t + 1).
Macc1dScheme cwlzc_scheme(int K, int L, int t, int N);

// The t single-star schemes of the (q=K2, z=L, m=t) Partition family.
HorizontalFamily partition_macc_family(int K2, int L, int t);

}  // namespace maccsim
