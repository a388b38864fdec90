#include "maccsim/pda.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "maccsim/util.hpp"

namespace maccsim {

std::vector<int> PdaArray::row_star_cols(int row) const {
    std::vector<int> out;
    for (int c = 0; c < cols; ++c)
        if (at(row, c).is_star()) out.push_back(c + 1);
    return out;
}

std::vector<int> PdaArray::row_label_cols(int row) const {
    std::vector<int> out;
    for (int c = 0; c < cols; ++c)
        if (!at(row, c).is_star()) out.push_back(c + 1);
    return out;
}

PdaArray mn_pda(int K, int t) {
    if (K < 1) throw std::invalid_argument("mn_pda: K must be >= 1");
    if (t < 0 || t > K)
        throw std::invalid_argument("mn_pda: t must lie in [0.." + std::to_string(K) + "]");

    const int F = static_cast<int>(binomial(K, t));
    const int Z = t == 0 ? 0 : static_cast<int>(binomial(K - 1, t - 1));
    const int S = static_cast<int>(binomial(K, t + 1));

    PdaArray p(F, K, Z, S);
    p.row_tag_kind = RowTagKind::Subset;
    p.row_tags = subsets_lex(K, t);

    for (int r = 0; r < F; ++r) {
        const auto& subset = p.row_tags[r];
        for (int k = 1; k <= K; ++k) {
            if (std::binary_search(subset.begin(), subset.end(), k)) continue;
            std::vector<int> merged = subset;
            merged.insert(std::lower_bound(merged.begin(), merged.end(), k), k);
            p.set(r, k - 1, PdaEntry::label(static_cast<int>(subset_lex_rank(K, merged))));
        }
    }
    return p;
}

int PartitionFamily::label_of_vector(const std::vector<int>& v) const {
    // First coordinate fastest, the appended difference coordinate slowest.
    long long idx = 0, stride = 1;
    for (int i = 0; i < m; ++i) {
        idx += static_cast<long long>(v[i] - 1) * stride;
        stride *= q;
    }
    idx += static_cast<long long>(v[m] - 1) * stride;
    return static_cast<int>(idx + 1);
}

PdaArray PartitionFamily::combined() const {
    const int F = sub_arrays.front().rows;
    PdaArray out(F, m * q, z * (F / q), static_cast<int>(label_vectors.size()));
    out.row_tag_kind = RowTagKind::Vector;
    out.row_tags = sub_arrays.front().row_tags;
    for (int i = 0; i < m; ++i)
        for (int r = 0; r < F; ++r)
            for (int c = 0; c < q; ++c) out.set(r, i * q + c, sub_arrays[i].at(r, c));
    return out;
}

PartitionFamily partition_pda(int q, int z, int m) {
    if (m < 1) throw std::invalid_argument("partition_pda: m must be >= 1");
    if (z <= 0 || z >= q)
        throw std::invalid_argument("partition_pda: need 0 < z < q, got z=" + std::to_string(z) +
                                    ", q=" + std::to_string(q));

    PartitionFamily fam;
    fam.q = q;
    fam.z = z;
    fam.m = m;

    long long rows64 = 1;
    for (int i = 0; i < m; ++i) rows64 *= q;
    const int F = static_cast<int>(rows64);
    const int S = static_cast<int>(rows64 * (q - z));
    const int Zcol = static_cast<int>(z * rows64 / q);

    // Row vectors in first-coordinate-fastest order, matching the label map.
    std::vector<std::vector<int>> row_vectors(F, std::vector<int>(m));
    for (int r = 0; r < F; ++r) {
        int x = r;
        for (int i = 0; i < m; ++i) {
            row_vectors[r][i] = x % q + 1;
            x /= q;
        }
    }

    fam.label_vectors.assign(S, {});
    fam.sub_arrays.reserve(m);
    for (int i = 0; i < m; ++i) {
        PdaArray sub(F, q, Zcol, S);
        sub.row_tag_kind = RowTagKind::Vector;
        sub.row_tags = row_vectors;
        for (int r = 0; r < F; ++r) {
            const auto& f = row_vectors[r];
            for (int k = 1; k <= q; ++k) {
                // Star run B_{f_i} = {f_i, <f_i+1>_q, ..., <f_i+z-1>_q}.
                int gap = mod0(k - f[i], q);
                if (gap < z) continue;
                std::vector<int> vec = f;
                vec[i] = k;
                vec.push_back(wrap1(f[i] - k, q));
                int label = fam.label_of_vector(vec);
                sub.set(r, k - 1, PdaEntry::label(label));
                if (fam.label_vectors[label - 1].empty()) fam.label_vectors[label - 1] = vec;
            }
        }
        fam.sub_arrays.push_back(std::move(sub));
    }
    return fam;
}

namespace {

struct Cell {
    int row;
    int col;  // 0-based
    int label;
};

std::vector<Cell> label_cells(const PdaArray& p) {
    std::vector<Cell> cells;
    for (int r = 0; r < p.rows; ++r)
        for (int c = 0; c < p.cols; ++c) {
            auto e = p.at(r, c);
            if (!e.is_star()) cells.push_back({r, c, e.label_id()});
        }
    return cells;
}

// U_j of the K = K' + t(L-1) node line derived from the star columns of row j.
std::set<int> retrieve_set(const std::vector<int>& star_cols, int t, int L, int K) {
    std::set<int> u;
    for (int i = 1; i <= t; ++i) {
        int start = star_cols[i - 1] + (i - 1) * (L - 1);
        for (int d = 0; d < L; ++d) u.insert(wrap1(start + d, K));
    }
    return u;
}

}  // namespace

PdaReport verify_pda(const PdaArray& p, std::optional<int> t, std::optional<int> L) {
    if (L.has_value() && !t.has_value())
        throw std::invalid_argument("verify_pda: C5 needs t together with L");

    PdaReport rep;

    // C1: star count per column, uniform and equal to the declared Z if any.
    rep.c1_ok = true;
    int inferred_z = -1;
    for (int c = 0; c < p.cols; ++c) {
        int stars = 0;
        for (int r = 0; r < p.rows; ++r)
            if (p.at(r, c).is_star()) ++stars;
        int want = p.z.has_value() ? *p.z : (inferred_z < 0 ? stars : inferred_z);
        if (inferred_z < 0) inferred_z = want;
        if (stars != want) {
            rep.c1_ok = false;
            rep.violations.push_back({'1',
                                      "column " + std::to_string(c + 1) + " has " +
                                          std::to_string(stars) + " stars, expected " +
                                          std::to_string(want),
                                      {{0, c}}});
        }
    }

    // C2: labels cover [1..S], nothing outside.
    std::vector<int> mult(p.s, 0);
    rep.c2_ok = true;
    for (int r = 0; r < p.rows; ++r)
        for (int c = 0; c < p.cols; ++c) {
            auto e = p.at(r, c);
            if (e.is_star()) continue;
            if (e.label_id() < 1 || e.label_id() > p.s) {
                rep.c2_ok = false;
                rep.violations.push_back(
                    {'2', "label " + std::to_string(e.label_id()) + " outside [1..S]", {{r, c}}});
            } else {
                ++mult[e.label_id() - 1];
            }
        }
    for (int s = 1; s <= p.s; ++s)
        if (mult[s - 1] == 0) {
            rep.c2_ok = false;
            rep.violations.push_back({'2', "label " + std::to_string(s) + " never occurs", {}});
        }
    for (int m : mult)
        if (m > 0) ++rep.gain_histogram[m];

    // C3: the full pair scan. Every equal-label pair must sit in distinct rows
    // and columns with stars at both cross positions.
    auto cells = label_cells(p);
    rep.c3_ok = true;
    for (size_t a = 0; a < cells.size(); ++a)
        for (size_t b = a + 1; b < cells.size(); ++b) {
            if (cells[a].label != cells[b].label) continue;
            const auto& x = cells[a];
            const auto& y = cells[b];
            bool ok = x.row != y.row && x.col != y.col && p.at(x.row, y.col).is_star() &&
                      p.at(y.row, x.col).is_star();
            if (!ok) {
                rep.c3_ok = false;
                rep.violations.push_back({'3',
                                          "label " + std::to_string(x.label) +
                                              " breaks the star cross pattern",
                                          {{x.row, x.col}, {y.row, y.col}}});
            }
        }

    if (t.has_value()) {
        rep.c4_ok = true;
        for (int r = 0; r < p.rows; ++r) {
            int stars = static_cast<int>(p.row_star_cols(r).size());
            if (stars != *t) {
                rep.c4_ok = false;
                rep.violations.push_back({'4',
                                          "row " + std::to_string(r + 1) + " has " +
                                              std::to_string(stars) + " stars, expected t=" +
                                              std::to_string(*t),
                                          {{r, 0}}});
            }
        }
    }

    if (L.has_value()) {
        if (!rep.c4_ok.value_or(false)) {
            rep.c5_ok = rep.c4_ok;  // run geometry undefined without C4
        } else {
            rep.c5_ok = true;
            const int K = p.cols + *t * (*L - 1);
            std::vector<std::vector<int>> star_cols(p.rows);
            std::vector<std::set<int>> u(p.rows);
            for (int r = 0; r < p.rows; ++r) {
                star_cols[r] = p.row_star_cols(r);
                u[r] = retrieve_set(star_cols[r], *t, *L, K);
            }
            auto slot_of = [&](int row, int k) {
                // Rank of k inside A_row + {k}; k is a label column, so the
                // union has t+1 elements.
                int rank = 1;
                for (int a : star_cols[row])
                    if (a < k) ++rank;
                return rank;
            };
            for (size_t a = 0; a < cells.size(); ++a)
                for (size_t b = a + 1; b < cells.size(); ++b) {
                    if (cells[a].label != cells[b].label) continue;
                    const auto& x = cells[a];
                    const auto& y = cells[b];
                    int i1 = slot_of(x.row, x.col + 1);
                    int i2 = slot_of(y.row, y.col + 1);
                    bool ok = u[y.row].count(x.col + 1 + (i1 - 1) * (*L - 1)) &&
                              u[x.row].count(y.col + 1 + (i2 - 1) * (*L - 1));
                    if (!ok) {
                        rep.c5_ok = false;
                        rep.violations.push_back({'5',
                                                  "label " + std::to_string(x.label) +
                                                      " lands outside the paired retrieve set",
                                                  {{x.row, x.col}, {y.row, y.col}}});
                    }
                }
        }
    }

    return rep;
}

std::map<int, int> gain_profile(const PdaArray& p) {
    std::map<int, int> mult;
    for (const auto& cell : p.cells)
        if (!cell.is_star()) ++mult[cell.label_id()];
    return mult;
}

}  // namespace maccsim
