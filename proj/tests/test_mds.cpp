#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "maccsim/mds.hpp"
#include "maccsim/util.hpp"

using namespace maccsim;

namespace {

std::vector<std::vector<std::uint8_t>> random_blocks(int count, int len, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::vector<std::uint8_t>> out(count);
    for (auto& b : out) {
        b.resize(len);
        for (auto& v : b) v = static_cast<std::uint8_t>(rng() & 0xFF);
    }
    return out;
}

}  // namespace

TEST_CASE("gf256 basics") {
    CHECK(gf256::mul(0, 7) == 0);
    CHECK(gf256::mul(1, 7) == 7);
    for (int a = 1; a < 256; ++a) {
        auto x = static_cast<std::uint8_t>(a);
        CHECK(gf256::mul(x, gf256::inv(x)) == 1);
    }
    CHECK_THROWS_AS(gf256::inv(0), std::domain_error);
}

TEST_CASE("k = n is the identity code") {
    auto src = random_blocks(3, 16, 1);
    MdsCode code(3, 3);
    CHECK(code.encode(src) == src);
}

TEST_CASE("k = 1 replicates, and every single share decodes") {
    auto src = random_blocks(1, 16, 2);
    MdsCode code(1, 5);
    auto shares = code.encode(src);
    for (const auto& share : shares) CHECK(share == src[0]);
    for (int id = 1; id <= 5; ++id) CHECK(code.decode({id}, {shares[id - 1]}) == src);
}

TEST_CASE("[3,2]: the named share subsets reconstruct the sources") {
    auto src = random_blocks(2, 32, 3);
    MdsCode code(2, 3);
    auto shares = code.encode(src);
    CHECK(code.decode({1, 3}, {shares[0], shares[2]}) == src);
    CHECK(code.decode({2, 3}, {shares[1], shares[2]}) == src);
    CHECK(code.decode({1, 2}, {shares[0], shares[1]}) == src);
}

TEST_CASE("every L-subset of shares decodes, for all n <= 8") {
    for (int n = 1; n <= 8; ++n)
        for (int k = 1; k <= n; ++k) {
            auto src = random_blocks(k, 24, 100 * n + k);
            MdsCode code(k, n);
            auto shares = code.encode(src);
            for (const auto& subset : subsets_lex(n, k)) {
                std::vector<std::vector<std::uint8_t>> chosen;
                for (int id : subset) chosen.push_back(shares[id - 1]);
                CHECK(code.decode(subset, chosen) == src);
            }
        }
}

TEST_CASE("decode signals unusable share sets") {
    auto src = random_blocks(2, 8, 4);
    MdsCode code(2, 4);
    auto shares = code.encode(src);
    CHECK_THROWS_AS(code.decode({1}, {shares[0]}), std::invalid_argument);
    CHECK_THROWS_AS(code.decode({1, 1}, {shares[0], shares[0]}), std::invalid_argument);
    CHECK_THROWS_AS(code.decode({1, 9}, {shares[0], shares[1]}), std::invalid_argument);
    CHECK_THROWS_AS(MdsCode(2, 300), std::invalid_argument);
    CHECK_THROWS_AS(MdsCode(0, 3), std::invalid_argument);
}
