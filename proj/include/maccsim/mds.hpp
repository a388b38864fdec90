#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace maccsim {

// GF(256) with the 0x11D reduction polynomial, log/antilog tables built once.
namespace gf256 {

std::uint8_t add(std::uint8_t a, std::uint8_t b);
std::uint8_t mul(std::uint8_t a, std::uint8_t b);
std::uint8_t inv(std::uint8_t a);

}  // namespace gf256

// Systematic [n, k] Reed-Solomon code: the k source blocks are the values of
// a degree-<k polynomial at points 1..k, share j is its value at point j.
// Any k of the n shares reconstruct the sources. n <= 255.
class MdsCode {
  public:
    MdsCode(int k, int n);

    int k() const { return k_; }
    int n() const { return n_; }

    // k equal-length source blocks -> n coded blocks (blocks 1..k verbatim).
    std::vector<std::vector<std::uint8_t>> encode(
        const std::vector<std::vector<std::uint8_t>>& sources) const;

    // share_ids are distinct 1-based ids; exactly k shares are required.
    std::vector<std::vector<std::uint8_t>> decode(
        const std::vector<int>& share_ids,
        const std::vector<std::vector<std::uint8_t>>& shares) const;

  private:
    int k_;
    int n_;
};

}  // namespace maccsim
