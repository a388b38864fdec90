#include "maccsim/macc2d.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "maccsim/util.hpp"

namespace maccsim {

std::string to_string(SchemeKind k) {
    switch (k) {
        case SchemeKind::BaselineSmall: return "baseline-small";
        case SchemeKind::BaselineMds: return "baseline-mds";
        case SchemeKind::Grouping: return "grouping";
        case SchemeKind::Hybrid: return "hybrid";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// closed-form loads
// ---------------------------------------------------------------------------

Rational baseline_load(int K1, int K2, int L, const Rational& t) {
    const long long cells = static_cast<long long>(K1) * K2;
    if (K2 <= L) return (Rational(cells) - t * L * K2) / (t + 1);
    const Rational gamma(L, K2);
    return (Rational(cells) - t * L * L) / (gamma * t + 1);
}

Rational grouping_load(int K1, int K2, int L, const Rational& t) {
    const long long cells = static_cast<long long>(K1) * K2;
    return (Rational(cells) - t * L * L) / (t + 1);
}

Rational hybrid_load(int K1, int K2, int L, const Rational& t) {
    if (t == Rational(0)) throw std::invalid_argument("hybrid_load: t must be nonzero");
    const long long cells = static_cast<long long>(K1) * K2;
    const Rational inner = (t * K2 * L - t * L * L) / t;
    const Rational outer = (Rational(cells) - t * K2 * L) / (t + 1);
    return inner + outer;
}

Rational hybrid_load_general(int K2, int L, int t, long long s1, long long f1) {
    if (t < 1) throw std::invalid_argument("hybrid_load_general: t must be >= 1");
    return Rational(static_cast<long long>(K2) * t * L - static_cast<long long>(t) * L * L, t) +
           Rational(K2 * s1, f1);
}

// ---------------------------------------------------------------------------
// baseline
// ---------------------------------------------------------------------------

Macc2dScheme baseline_scheme(int K1, int K2, int L, const Rational& t, int N) {
    if (K1 < K2 || K2 < 1) throw std::invalid_argument("baseline_scheme: need K1 >= K2 >= 1");
    if (L < 1) throw std::invalid_argument("baseline_scheme: L must be >= 1");

    Macc2dScheme s;
    s.K1 = K1;
    s.K2 = K2;
    s.L = L;
    s.N = N;
    s.t = t;
    s.memory_ratio = t / (static_cast<long long>(K1) * K2);
    s.rounds = K1;

    BaselineData data;
    const int tmax = K1 / L;
    if (K2 <= L) {
        if (!is_integer(t) || t < 0 || t > tmax)
            throw std::invalid_argument(
                "baseline_scheme: t must be an integer in [0.." + std::to_string(tmax) + "]");
        data.mds = false;
        data.col_t = static_cast<int>(t.numerator());
        s.kind = SchemeKind::BaselineSmall;
    } else {
        // Feasible grid: t = i K2/L with the per-column parameter i integral.
        const Rational col_t = t * L / K2;
        if (!is_integer(col_t) || col_t < 0 || col_t > tmax) {
            long long below = col_t >= 0 ? (col_t.numerator() / col_t.denominator()) : -1;
            Rational lo = Rational(std::clamp(below, 0LL, static_cast<long long>(tmax))) *
                          Rational(K2, L);
            Rational hi = Rational(std::clamp(below + 1, 0LL, static_cast<long long>(tmax))) *
                          Rational(K2, L);
            throw std::invalid_argument("baseline_scheme: t=" + to_string(t) +
                                        " is off the K2>L grid; nearest feasible t: " +
                                        to_string(lo) + " and " + to_string(hi));
        }
        data.mds = true;
        data.col_t = static_cast<int>(col_t.numerator());
        data.mds_l = L;
        data.mds_shares = K2;
        s.kind = SchemeKind::BaselineMds;
    }
    data.column = cwlzc_scheme(K1, L, data.col_t, N);
    s.load = baseline_load(K1, K2, L, t);
    s.detail = std::move(data);
    return s;
}

// ---------------------------------------------------------------------------
// grouping
// ---------------------------------------------------------------------------

Macc2dScheme grouping_scheme(int K1, int K2, int L, int t, int N) {
    if (L < 1 || K1 % L != 0 || K2 % L != 0)
        throw std::invalid_argument("grouping_scheme: L must divide both K1 and K2");
    const int group_size = K1 * K2 / (L * L);
    if (t < 0 || t > group_size)
        throw std::invalid_argument("grouping_scheme: t must lie in [0.." +
                                    std::to_string(group_size) + "]");

    Macc2dScheme s;
    s.kind = SchemeKind::Grouping;
    s.K1 = K1;
    s.K2 = K2;
    s.L = L;
    s.N = N;
    s.t = Rational(t);
    s.memory_ratio = Rational(t, static_cast<long long>(K1) * K2);
    s.load = grouping_load(K1, K2, L, Rational(t));
    s.rounds = 1;

    GroupingData data;
    data.group_size = group_size;
    data.mn = mn_pda(group_size, t);
    data.node_groups.assign(L, std::vector<std::vector<Grid2dIndex>>(L));
    for (int j1 = 1; j1 <= L; ++j1)
        for (int j2 = 1; j2 <= L; ++j2) {
            auto& members = data.node_groups[j1 - 1][j2 - 1];
            for (int i1 = 0; i1 < K1 / L; ++i1)
                for (int i2 = 0; i2 < K2 / L; ++i2)
                    members.push_back({j1 + i1 * L, j2 + i2 * L});
        }
    s.detail = std::move(data);
    return s;
}

// ---------------------------------------------------------------------------
// hybrid
// ---------------------------------------------------------------------------

namespace {

int partition_rows(const HorizontalFamily& family) {
    return family.partition.sub_arrays.front().rows;
}

// Row of the 2D arrays for outer row j (0-based) and inner vector code f0.
int hybrid_row(int j, int f0, int F2) { return j * F2 + f0; }

std::vector<int> vector_of_code(int f0, int t, int K2) {
    std::vector<int> f(t);
    for (int i = 0; i < t; ++i) {
        f[i] = f0 % K2 + 1;
        f0 /= K2;
    }
    return f;
}

}  // namespace

StarGrid hybrid_node_placement(const Macc1dScheme& outer, const HorizontalFamily& family) {
    if (static_cast<int>(family.node_placement.size()) != outer.t)
        throw std::invalid_argument("hybrid_node_placement: family size differs from outer t");

    const int F2 = partition_rows(family);
    const int K2 = family.K2;
    StarGrid c(outer.node_placement.rows * F2, outer.K * K2);
    for (int j = 0; j < outer.node_placement.rows; ++j) {
        const auto& stars = outer.node_cols[j];
        for (int i = 0; i < outer.t; ++i) {
            const int k1 = stars[i];
            for (int f0 = 0; f0 < F2; ++f0) {
                int k2 = family.partition.tag_star_col(i, f0);
                c.set_star(hybrid_row(j, f0, F2), grid_col({k1, k2}, K2));
            }
        }
    }
    return c;
}

StarGrid hybrid_user_retrieve(const Macc1dScheme& outer, const HorizontalFamily& family) {
    if (static_cast<int>(family.user_retrieve.size()) != outer.t)
        throw std::invalid_argument("hybrid_user_retrieve: family size differs from outer t");

    const int F2 = partition_rows(family);
    const int K2 = family.K2;
    StarGrid u(outer.user_retrieve.rows * F2, outer.K * K2);
    for (int j = 0; j < outer.user_retrieve.rows; ++j) {
        int covered = 0;
        for (int i = 0; i < outer.t; ++i)
            for (int d = 0; d < outer.L; ++d) {
                const int k1 = wrap1(outer.node_cols[j][i] + d, outer.K);
                if (!outer.user_retrieve.has_star(j, k1))
                    throw std::invalid_argument("hybrid_user_retrieve: malformed run in row " +
                                                std::to_string(j + 1));
                ++covered;
                const auto& b = family.user_retrieve[i];
                for (int f0 = 0; f0 < F2; ++f0)
                    for (int k2 : b.star_cols[f0])
                        u.set_star(hybrid_row(j, f0, F2), grid_col({k1, k2}, K2));
            }
        if (covered != static_cast<int>(outer.user_retrieve.star_cols[j].size()))
            throw std::invalid_argument("hybrid_user_retrieve: runs do not cover row " +
                                        std::to_string(j + 1));
    }
    return u;
}

QGrid hybrid_fill_type1(const StarGrid& u2d, const Macc1dScheme& outer,
                        const HorizontalFamily& family) {
    const int F2 = partition_rows(family);
    const int K2 = family.K2;
    const int labels_per_subarray = F2 * (K2 - family.L);

    QGrid q(u2d.rows, u2d.cols);
    for (int r = 0; r < u2d.rows; ++r)
        for (int c = 0; c < u2d.cols; ++c)
            if (u2d.star(r, c)) q.at(r, c) = QCell::star();

    // The v-th copy of B_i in row-major scan order carries H_i shifted by
    // v * K2^t (K2-L); copies in one outer row share v across different i.
    for (int j = 0; j < outer.user_retrieve.rows; ++j)
        for (int i = 0; i < outer.t; ++i)
            for (int d = 0; d < outer.L; ++d) {
                const int k1 = wrap1(outer.node_cols[j][i] + d, outer.K);
                const int offset = (j * outer.L + d) * labels_per_subarray;
                const auto& h = family.delivery(i);
                for (int f0 = 0; f0 < F2; ++f0)
                    for (int k2 = 1; k2 <= K2; ++k2) {
                        auto cell = h.at(f0, k2 - 1);
                        if (cell.is_star()) continue;
                        q.at(hybrid_row(j, f0, F2), grid_col({k1, k2}, K2)) =
                            QCell::type1(cell.label_id() + offset);
                    }
            }
    return q;
}

void hybrid_fill_type2(QGrid& q, const Macc1dScheme& outer, const HorizontalFamily& family) {
    const int F2 = partition_rows(family);
    const int K2 = family.K2;
    const int t = outer.t;
    const PdaArray& qv = outer.user_delivery;

    // Columns of the outer delivery array holding each label s.
    std::map<int, std::vector<std::pair<int, int>>> occurrences;  // s -> (row, col1)
    for (int j = 0; j < qv.rows; ++j)
        for (int k = 1; k <= qv.cols; ++k) {
            auto cell = qv.at(j, k - 1);
            if (!cell.is_star()) occurrences[cell.label_id()].push_back({j, k});
        }

    std::map<int, std::vector<int>> s_cols;
    for (auto& [s, occ] : occurrences) {
        std::vector<int> cols;
        for (auto& [j, k] : occ) cols.push_back(k);
        std::sort(cols.begin(), cols.end());
        s_cols[s] = std::move(cols);
    }

    for (int j = 0; j < qv.rows; ++j) {
        for (int k1 = 1; k1 <= qv.cols; ++k1) {
            auto cell = qv.at(j, k1 - 1);
            if (cell.is_star()) continue;
            const int s = cell.label_id();
            const auto& cols = s_cols[s];
            const int gs = static_cast<int>(cols.size());
            const int h =
                static_cast<int>(std::lower_bound(cols.begin(), cols.end(), k1) - cols.begin()) + 1;

            // Which sub-array replaced the star of row j at each other column
            // of the label's footprint.
            std::vector<int> lambda;
            for (int k1p : cols) {
                if (k1p == k1) continue;
                int run = outer.run_of(j, k1p);
                if (run == 0)
                    throw std::runtime_error("hybrid_fill_type2: footprint column is not a star");
                lambda.push_back(run);
            }
            std::sort(lambda.begin(), lambda.end());
            if (std::adjacent_find(lambda.begin(), lambda.end()) != lambda.end())
                throw std::runtime_error("hybrid_fill_type2: two footprint columns share a run");
            std::vector<int> lambda_rest;
            for (int i = 1; i <= t; ++i)
                if (!std::binary_search(lambda.begin(), lambda.end(), i)) lambda_rest.push_back(i);

            for (int f0 = 0; f0 < F2; ++f0) {
                const auto f = vector_of_code(f0, t, K2);
                for (int k2 = 1; k2 <= K2; ++k2) {
                    std::vector<int> e;
                    e.reserve(t + 1);
                    for (int idx = 0; idx < h - 1; ++idx) e.push_back(f[lambda[idx] - 1]);
                    e.push_back(k2);
                    for (int idx = h - 1; idx < gs - 1; ++idx) e.push_back(f[lambda[idx] - 1]);
                    for (int lam : lambda_rest) e.push_back(f[lam - 1]);

                    QCell& slot = q.at(hybrid_row(j, f0, F2), grid_col({k1, k2}, K2));
                    if (slot.kind != QCell::Null)
                        throw std::runtime_error("hybrid_fill_type2: cell already filled");
                    slot = QCell::type2(s, std::move(e));
                }
            }
        }
    }

    for (const auto& cell : q.cells)
        if (cell.kind == QCell::Null)
            throw std::runtime_error("hybrid_fill_type2: unfilled cell after the pass");
}

Macc2dScheme hybrid_scheme(int K1, int K2, int L, int t, int N,
                           const std::optional<PdaArray>& outer_pda) {
    if (L < 1 || K2 <= L)
        throw std::invalid_argument("hybrid_scheme: needs K2 > L >= 1 (use baseline or grouping)");
    if (t < 1 || t * L > K1)
        throw std::invalid_argument("hybrid_scheme: t must lie in [1..floor(K1/L)]");

    const int K1p = K1 - t * (L - 1);
    PdaArray p = outer_pda.has_value() ? *outer_pda : mn_pda(K1p, t);
    if (p.cols != K1p)
        throw std::invalid_argument("hybrid_scheme: outer array has " + std::to_string(p.cols) +
                                    " columns, expected K1 - t(L-1) = " + std::to_string(K1p));

    Macc2dScheme s;
    s.kind = SchemeKind::Hybrid;
    s.K1 = K1;
    s.K2 = K2;
    s.L = L;
    s.N = N;
    s.t = Rational(t);
    s.memory_ratio = Rational(t, static_cast<long long>(K1) * K2);
    s.rounds = K1;

    HybridData data;
    data.outer = make_1d_scheme(p, L, t, N);
    data.inner = partition_macc_family(K2, L, t);
    data.node_placement = hybrid_node_placement(data.outer, data.inner);
    data.user_retrieve = hybrid_user_retrieve(data.outer, data.inner);
    data.user_delivery = hybrid_fill_type1(data.user_retrieve, data.outer, data.inner);
    hybrid_fill_type2(data.user_delivery, data.outer, data.inner);

    s.load = hybrid_load_general(K2, L, t, p.s, p.rows);
    s.detail = std::move(data);
    return s;
}

}  // namespace maccsim
