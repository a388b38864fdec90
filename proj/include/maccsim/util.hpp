#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace maccsim {

// Cyclic index in [1..q]: <a>_q, the representative of a modulo q that stays
// inside the 1-based column range.
inline int wrap1(long long a, int q) {
    long long r = a % q;
    if (r < 0) r += q;
    return r == 0 ? q : static_cast<int>(r);
}

// Least non-negative residue of a modulo q.
inline int mod0(long long a, int q) {
    long long r = a % q;
    if (r < 0) r += q;
    return static_cast<int>(r);
}

// Cyclic ring distance between two 1-based positions in [1..q].
inline int ring_distance(int a, int b, int q) {
    int d = mod0(a - b, q);
    return d < q - d ? d : q - d;
}

inline long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// All k-subsets of [1..n] as sorted vectors, in lexicographic order.
inline std::vector<std::vector<int>> subsets_lex(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> cur(k);
    for (int i = 0; i < k; ++i) cur[i] = i + 1;
    while (true) {
        out.push_back(cur);
        if (k == 0) break;
        int i = k - 1;
        while (i >= 0 && cur[i] == n - (k - 1 - i)) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

// 1-based lexicographic rank of a sorted k-subset of [1..n].
inline long long subset_lex_rank(int n, std::span<const int> subset) {
    long long rank = 1;
    int k = static_cast<int>(subset.size());
    int prev = 0;
    for (int i = 0; i < k; ++i) {
        for (int v = prev + 1; v < subset[i]; ++v) rank += binomial(n - v, k - i - 1);
        prev = subset[i];
    }
    return rank;
}

inline std::vector<int> subset_by_lex_rank(int n, int k, long long rank) {
    if (rank < 1 || rank > binomial(n, k)) throw std::out_of_range("subset rank out of range");
    std::vector<int> out;
    out.reserve(k);
    int v = 1;
    for (int i = 0; i < k; ++i) {
        while (true) {
            long long block = binomial(n - v, k - i - 1);
            if (rank <= block) break;
            rank -= block;
            ++v;
        }
        out.push_back(v++);
    }
    return out;
}

inline std::uint64_t fnv1a64(std::span<const std::uint8_t> data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::uint8_t b : data) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace maccsim
