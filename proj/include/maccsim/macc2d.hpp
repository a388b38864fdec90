#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "maccsim/macc1d.hpp"
#include "maccsim/pda.hpp"
#include "maccsim/rational.hpp"

namespace maccsim {

// Position on the K1 x K2 node/user grid, 1-based. Columns of the 2D arrays
// are ordered row-major: (1,1), (1,2), ..., (1,K2), (2,1), ...
struct Grid2dIndex {
    int k1 = 0;
    int k2 = 0;

    bool operator==(const Grid2dIndex&) const = default;
    auto operator<=>(const Grid2dIndex&) const = default;
};

inline int grid_col(Grid2dIndex g, int K2) { return (g.k1 - 1) * K2 + (g.k2 - 1); }
inline Grid2dIndex grid_from_col(int col0, int K2) { return {col0 / K2 + 1, col0 % K2 + 1}; }

// Dense star grid for the 2D node-placement and user-retrieve arrays.
struct StarGrid {
    int rows = 0;
    int cols = 0;
    std::vector<uint8_t> cells;  // row-major, 1 = star

    StarGrid() = default;
    StarGrid(int rows_, int cols_) : rows(rows_), cols(cols_), cells(static_cast<size_t>(rows_) * cols_, 0) {}

    bool star(int row, int col) const { return cells[static_cast<size_t>(row) * cols + col] != 0; }
    void set_star(int row, int col) { cells[static_cast<size_t>(row) * cols + col] = 1; }

    bool operator==(const StarGrid&) const = default;
};

// One cell of the hybrid user-delivery array Q. Type I labels are the shifted
// Partition integers, Type II labels are (s, e) pairs with e in [1..K2]^{t+1}.
struct QCell {
    enum Kind { Null, Star, TypeI, TypeII };
    Kind kind = Null;
    int label = 0;           // valid when kind == TypeI
    int s = 0;               // valid when kind == TypeII
    std::vector<int> e;      // valid when kind == TypeII

    static QCell null() { return {}; }
    static QCell star() { return {Star, 0, 0, {}}; }
    static QCell type1(int v) { return {TypeI, v, 0, {}}; }
    static QCell type2(int s_, std::vector<int> e_) { return {TypeII, 0, s_, std::move(e_)}; }

    bool operator==(const QCell&) const = default;
};

struct QGrid {
    int rows = 0;
    int cols = 0;
    std::vector<QCell> cells;

    QGrid() = default;
    QGrid(int rows_, int cols_) : rows(rows_), cols(cols_), cells(static_cast<size_t>(rows_) * cols_) {}

    const QCell& at(int row, int col) const { return cells[static_cast<size_t>(row) * cols + col]; }
    QCell& at(int row, int col) { return cells[static_cast<size_t>(row) * cols + col]; }

    bool operator==(const QGrid&) const = default;
};

enum class SchemeKind { BaselineSmall, BaselineMds, Grouping, Hybrid };

std::string to_string(SchemeKind k);

// Baseline: every grid column runs the same CWLZC line scheme, on plain
// subfiles when K2 <= L and on [K2, L] MDS-coded subfiles when K2 > L.
struct BaselineData {
    bool mds = false;
    int col_t = 0;            // cache parameter of the per-column line scheme
    Macc1dScheme column;      // the (K1, L) scheme every column uses
    int mds_l = 0;            // L source blocks per file (mds only)
    int mds_shares = 0;       // K2 coded shares per file (mds only)
};

// Grouping: L^2 node groups on the stride-L lattice, each running the MN
// scheme for K1K2/L^2 nodes on its own subfile.
struct GroupingData {
    int group_size = 0;  // K1K2 / L^2
    PdaArray mn;         // MN array for group_size users at parameter t
    // groups[j1-1][j2-1] lists the member nodes in in-group order.
    std::vector<std::vector<std::vector<Grid2dIndex>>> node_groups;
};

// Hybrid: outer line scheme down the rows, t Partition schemes across the
// columns, Type I / Type II label filling.
struct HybridData {
    Macc1dScheme outer;       // (K1, L) scheme from the outer array
    HorizontalFamily inner;   // (K2, L, t) Partition family
    StarGrid node_placement;  // C: F1' K2^t rows, K1 K2 cols
    StarGrid user_retrieve;   // U
    QGrid user_delivery;      // Q
};

struct Macc2dScheme {
    SchemeKind kind = SchemeKind::Grouping;
    int K1 = 0, K2 = 0, L = 0, N = 0;
    Rational t;             // K1 K2 M / N (integer except on the MDS grid)
    Rational memory_ratio;  // t / (K1 K2)
    Rational load;
    int rounds = 1;

    std::variant<BaselineData, GroupingData, HybridData> detail;

    const BaselineData& baseline() const { return std::get<BaselineData>(detail); }
    const GroupingData& grouping() const { return std::get<GroupingData>(detail); }
    const HybridData& hybrid() const { return std::get<HybridData>(detail); }
};

struct TradeoffPoint {
    Rational memory_ratio;
    Rational load;
    std::string scheme;  // "baseline" | "grouping" | "hybrid"
    Rational t;
};

// ---- closed-form loads (pure formula evaluation, no feasibility check) ----

// (K1K2 - tLK2)/(t+1) when K2 <= L, else (K1K2 - tL^2)/(gamma t + 1) with
// gamma = L/K2.
Rational baseline_load(int K1, int K2, int L, const Rational& t);
Rational grouping_load(int K1, int K2, int L, const Rational& t);
// MN outer: (K2 t L - t L^2)/t + (K1 K2 - K2 t L)/(t+1).
Rational hybrid_load(int K1, int K2, int L, const Rational& t);
// General outer with S1' labels over F1' rows: (K2tL - tL^2)/t + K2 S1'/F1'.
Rational hybrid_load_general(int K2, int L, int t, long long s1, long long f1);

// ---- scheme construction ----

// t must sit on the branch's feasibility grid; off-grid values are rejected
// with the nearest feasible neighbours named.
Macc2dScheme baseline_scheme(int K1, int K2, int L, const Rational& t, int N);

Macc2dScheme grouping_scheme(int K1, int K2, int L, int t, int N);

// Replaces the i-th star of every outer row by E_i and nulls by null blocks.
StarGrid hybrid_node_placement(const Macc1dScheme& outer, const HorizontalFamily& family);

// Replaces the i-th L-run of every outer row by L copies of B_i; the runs are
// anchored at the outer node placement and validated against its retrieve map.
StarGrid hybrid_user_retrieve(const Macc1dScheme& outer, const HorizontalFamily& family);

// Step 1: the v-th copy of B_i in row-major scan order becomes
// H_i + v K2^t (K2-L). Star and Type I cells are placed; Type II stay null.
QGrid hybrid_fill_type1(const StarGrid& u2d, const Macc1dScheme& outer,
                        const HorizontalFamily& family);

// Step 2: every remaining null at ((j,f),(k1,k2)) gets the pair (s, e) driven
// by the outer delivery array. Throws if any cell stays unfilled.
void hybrid_fill_type2(QGrid& q, const Macc1dScheme& outer, const HorizontalFamily& family);

// Full hybrid build; outer defaults to the MN array for K1' = K1 - t(L-1).
Macc2dScheme hybrid_scheme(int K1, int K2, int L, int t, int N,
                           const std::optional<PdaArray>& outer_pda = std::nullopt);

// ---- tradeoff corners and envelope ----

std::vector<TradeoffPoint> baseline_corners(int K1, int K2, int L);
// Empty when L does not divide both K1 and K2.
std::vector<TradeoffPoint> grouping_corners(int K1, int K2, int L);
// Empty when K2 <= L.
std::vector<TradeoffPoint> hybrid_corners(int K1, int K2, int L);

// Lower convex envelope of a corner set, sorted by memory, exact arithmetic.
std::vector<TradeoffPoint> lower_envelope(std::vector<TradeoffPoint> points);

// Piecewise-linear evaluation of an envelope; nullopt outside its memory span.
std::optional<Rational> envelope_value(const std::vector<TradeoffPoint>& envelope,
                                       const Rational& memory_ratio);

// Union of the requested kinds' feasible corners ("baseline", "grouping",
// "hybrid"), reduced to the combined lower envelope.
std::vector<TradeoffPoint> tradeoff_envelope(int K1, int K2, int L, int N,
                                             const std::vector<std::string>& kinds);

}  // namespace maccsim
