#include "maccsim/mds.hpp"

#include <array>
#include <stdexcept>

namespace maccsim {

namespace gf256 {

namespace {

struct Tables {
    std::array<std::uint8_t, 256> log{};
    std::array<std::uint8_t, 512> exp{};

    Tables() {
        int x = 1;
        for (int i = 0; i < 255; ++i) {
            exp[i] = static_cast<std::uint8_t>(x);
            log[x] = static_cast<std::uint8_t>(i);
            x <<= 1;
            if (x & 0x100) x ^= 0x11D;
        }
        for (int i = 255; i < 512; ++i) exp[i] = exp[i - 255];
    }
};

const Tables& tables() {
    static const Tables t;
    return t;
}

}  // namespace

std::uint8_t add(std::uint8_t a, std::uint8_t b) { return a ^ b; }

std::uint8_t mul(std::uint8_t a, std::uint8_t b) {
    if (a == 0 || b == 0) return 0;
    const auto& t = tables();
    return t.exp[t.log[a] + t.log[b]];
}

std::uint8_t inv(std::uint8_t a) {
    if (a == 0) throw std::domain_error("gf256: zero has no inverse");
    const auto& t = tables();
    return t.exp[255 - t.log[a]];
}

}  // namespace gf256

MdsCode::MdsCode(int k, int n) : k_(k), n_(n) {
    if (k < 1 || n < k) throw std::invalid_argument("MdsCode: need 1 <= k <= n");
    if (n > 255) throw std::invalid_argument("MdsCode: GF(256) supports at most 255 shares");
}

namespace {

// Lagrange coefficients for evaluating the degree-<k interpolant of points
// (xs[j], .) at x.
std::vector<std::uint8_t> lagrange_row(const std::vector<std::uint8_t>& xs, std::uint8_t x) {
    const int k = static_cast<int>(xs.size());
    std::vector<std::uint8_t> coeff(k);
    for (int j = 0; j < k; ++j) {
        std::uint8_t num = 1, den = 1;
        for (int i = 0; i < k; ++i) {
            if (i == j) continue;
            num = gf256::mul(num, gf256::add(x, xs[i]));
            den = gf256::mul(den, gf256::add(xs[j], xs[i]));
        }
        coeff[j] = gf256::mul(num, gf256::inv(den));
    }
    return coeff;
}

}  // namespace

std::vector<std::vector<std::uint8_t>> MdsCode::encode(
    const std::vector<std::vector<std::uint8_t>>& sources) const {
    if (static_cast<int>(sources.size()) != k_)
        throw std::invalid_argument("MdsCode::encode: expected k source blocks");
    const size_t len = sources.front().size();
    for (const auto& s : sources)
        if (s.size() != len) throw std::invalid_argument("MdsCode::encode: unequal block sizes");

    // The sources are the polynomial's values at points 1..k, so shares 1..k
    // come out verbatim.
    std::vector<std::uint8_t> xs(k_);
    for (int j = 0; j < k_; ++j) xs[j] = static_cast<std::uint8_t>(j + 1);

    std::vector<std::vector<std::uint8_t>> shares(n_);
    for (int share = 1; share <= n_; ++share) {
        if (share <= k_) {
            shares[share - 1] = sources[share - 1];
            continue;
        }
        auto coeff = lagrange_row(xs, static_cast<std::uint8_t>(share));
        auto& out = shares[share - 1];
        out.assign(len, 0);
        for (int j = 0; j < k_; ++j) {
            if (coeff[j] == 0) continue;
            for (size_t b = 0; b < len; ++b)
                out[b] = gf256::add(out[b], gf256::mul(coeff[j], sources[j][b]));
        }
    }
    return shares;
}

std::vector<std::vector<std::uint8_t>> MdsCode::decode(
    const std::vector<int>& share_ids,
    const std::vector<std::vector<std::uint8_t>>& shares) const {
    if (static_cast<int>(share_ids.size()) != k_ || shares.size() != share_ids.size())
        throw std::invalid_argument("MdsCode::decode: exactly k distinct shares required");
    const size_t len = shares.front().size();

    std::vector<std::uint8_t> xs(k_);
    for (int j = 0; j < k_; ++j) {
        if (share_ids[j] < 1 || share_ids[j] > n_)
            throw std::invalid_argument("MdsCode::decode: share id out of range");
        for (int i = 0; i < j; ++i)
            if (share_ids[i] == share_ids[j])
                throw std::invalid_argument("MdsCode::decode: duplicate share id");
        xs[j] = static_cast<std::uint8_t>(share_ids[j]);
    }

    std::vector<std::vector<std::uint8_t>> sources(k_);
    for (int l = 1; l <= k_; ++l) {
        auto coeff = lagrange_row(xs, static_cast<std::uint8_t>(l));
        auto& out = sources[l - 1];
        out.assign(len, 0);
        for (int j = 0; j < k_; ++j) {
            if (coeff[j] == 0) continue;
            for (size_t b = 0; b < len; ++b)
                out[b] = gf256::add(out[b], gf256::mul(coeff[j], shares[j][b]));
        }
    }
    return sources;
}

}  // namespace maccsim
