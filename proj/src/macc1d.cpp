#include "maccsim/macc1d.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "maccsim/util.hpp"

namespace maccsim {

bool StarMap::has_star(int row, int col1) const {
    const auto& v = star_cols[row];
    return std::binary_search(v.begin(), v.end(), col1);
}

int StarMap::count_in_col(int col1) const {
    int n = 0;
    for (const auto& row : star_cols)
        if (std::binary_search(row.begin(), row.end(), col1)) ++n;
    return n;
}

int Macc1dScheme::run_of(int row, int k) const {
    const auto& starts = node_cols[row];
    for (int i = 0; i < static_cast<int>(starts.size()); ++i)
        for (int d = 0; d < L; ++d)
            if (wrap1(starts[i] + d, K) == k) return i + 1;
    return 0;
}

StarMap build_node_placement(const PdaArray& p, int t, int L) {
    if (t < 0) throw std::invalid_argument("build_node_placement: t must be >= 0");
    if (L < 1) throw std::invalid_argument("build_node_placement: L must be >= 1");

    const int K = p.cols + t * (L - 1);
    StarMap c(p.rows, K);
    for (int r = 0; r < p.rows; ++r) {
        auto stars = p.row_star_cols(r);
        if (static_cast<int>(stars.size()) != t)
            throw std::invalid_argument("build_node_placement: row " + std::to_string(r + 1) +
                                        " has " + std::to_string(stars.size()) +
                                        " stars, expected t=" + std::to_string(t));
        auto& out = c.star_cols[r];
        for (int i = 1; i <= t; ++i) out.push_back(stars[i - 1] + (i - 1) * (L - 1));
    }
    return c;
}

StarMap build_user_retrieve(const StarMap& c, int L, int K) {
    StarMap u(c.rows, K);
    for (int r = 0; r < c.rows; ++r) {
        std::vector<int> cols;
        for (int start : c.star_cols[r])
            for (int d = 0; d < L; ++d) cols.push_back(wrap1(start + d, K));
        std::sort(cols.begin(), cols.end());
        if (std::adjacent_find(cols.begin(), cols.end()) != cols.end())
            throw std::runtime_error("build_user_retrieve: overlapping runs in row " +
                                     std::to_string(r + 1) +
                                     " (node placement violates the distance constraint)");
        u.star_cols[r] = std::move(cols);
    }
    return u;
}

PdaArray build_user_delivery(const StarMap& u, const PdaArray& p) {
    if (u.rows != p.rows)
        throw std::invalid_argument("build_user_delivery: row counts differ");

    PdaArray q(u.rows, u.cols, std::nullopt, p.s);
    q.row_tag_kind = p.row_tag_kind;
    q.row_tags = p.row_tags;
    for (int r = 0; r < u.rows; ++r) {
        std::vector<int> u_gap, p_gap;
        for (int k = 1; k <= u.cols; ++k)
            if (!u.has_star(r, k)) u_gap.push_back(k);
        p_gap = p.row_label_cols(r);
        if (u_gap.size() != p_gap.size())
            throw std::invalid_argument("build_user_delivery: row " + std::to_string(r + 1) +
                                        " complement sizes differ");
        for (size_t mu = 0; mu < u_gap.size(); ++mu)
            q.set(r, u_gap[mu] - 1, p.at(r, p_gap[mu] - 1));
    }
    return q;
}

Macc1dScheme make_1d_scheme(const PdaArray& p, int L, int t, int N) {
    if (L < 1) throw std::invalid_argument("make_1d_scheme: L must be >= 1");
    auto rep = verify_pda(p, t, L);
    if (!rep.all_ok()) {
        std::string what = "make_1d_scheme: source array fails";
        for (const auto& v : rep.violations) {
            what += " C";
            what += v.condition;
        }
        throw std::invalid_argument(what + " (scheme would be undecodable)");
    }

    Macc1dScheme s;
    s.L = L;
    s.t = t;
    s.N = N;
    s.K = p.cols + t * (L - 1);
    s.source = p;
    s.node_placement = build_node_placement(p, t, L);
    s.user_retrieve = build_user_retrieve(s.node_placement, L, s.K);
    s.user_delivery = build_user_delivery(s.user_retrieve, p);
    s.node_cols = s.node_placement.star_cols;
    s.load = Rational(p.s, p.rows);
    long long zz = p.z.value_or(0);
    s.memory_ratio = Rational(static_cast<long long>(p.cols) * zz,
                              static_cast<long long>(p.rows) * s.K);
    return s;
}

Macc1dScheme cwlzc_scheme(int K, int L, int t, int N) {
    if (L < 1 || K < 1) throw std::invalid_argument("cwlzc_scheme: need K >= 1 and L >= 1");
    if (t < 0 || t * L > K)
        throw std::invalid_argument("cwlzc_scheme: t must lie in [0..floor(K/L)], got t=" +
                                    std::to_string(t));
    const int Kp = K - t * (L - 1);
    return make_1d_scheme(mn_pda(Kp, t), L, t, N);
}

HorizontalFamily partition_macc_family(int K2, int L, int t) {
    if (L <= 0 || L >= K2)
        throw std::invalid_argument("partition_macc_family: need 0 < L < K2");
    if (t < 1) throw std::invalid_argument("partition_macc_family: t must be >= 1");

    HorizontalFamily fam;
    fam.K2 = K2;
    fam.L = L;
    fam.t = t;
    fam.partition = partition_pda(K2, L, t);

    const int F = fam.partition.sub_arrays.front().rows;
    for (int i = 0; i < t; ++i) {
        StarMap e(F, K2);
        for (int r = 0; r < F; ++r) e.star_cols[r] = {fam.partition.tag_star_col(i, r)};
        StarMap b = build_user_retrieve(e, L, K2);
        // The expansion must land exactly on the sub-array's star pattern.
        for (int r = 0; r < F; ++r)
            if (b.star_cols[r] != fam.partition.sub_arrays[i].row_star_cols(r))
                throw std::runtime_error("partition_macc_family: retrieve pattern mismatch");
        fam.node_placement.push_back(std::move(e));
        fam.user_retrieve.push_back(std::move(b));
    }
    return fam;
}

}  // namespace maccsim
