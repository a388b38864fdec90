#include <algorithm>
#include <stdexcept>

#include "maccsim/macc2d.hpp"

namespace maccsim {

std::vector<TradeoffPoint> baseline_corners(int K1, int K2, int L) {
    std::vector<TradeoffPoint> pts;
    const long long cells = static_cast<long long>(K1) * K2;
    const int tmax = K1 / L;
    if (K2 <= L) {
        for (int t = 0; t <= tmax; ++t)
            pts.push_back({Rational(t, cells), baseline_load(K1, K2, L, Rational(t)), "baseline",
                           Rational(t)});
        pts.push_back({Rational(1, static_cast<long long>(K2) * L), Rational(0), "baseline",
                       Rational(K1, L)});
    } else {
        for (int i = 0; i <= tmax; ++i) {
            Rational t = Rational(i) * Rational(K2, L);
            pts.push_back({t / cells, baseline_load(K1, K2, L, t), "baseline", t});
        }
        pts.push_back({Rational(1, static_cast<long long>(L) * L), Rational(0), "baseline",
                       Rational(cells, static_cast<long long>(L) * L)});
    }
    return pts;
}

std::vector<TradeoffPoint> grouping_corners(int K1, int K2, int L) {
    std::vector<TradeoffPoint> pts;
    if (L < 1 || K1 % L != 0 || K2 % L != 0) return pts;
    const long long cells = static_cast<long long>(K1) * K2;
    const int tmax = K1 * K2 / (L * L);
    for (int t = 0; t <= tmax; ++t)
        pts.push_back(
            {Rational(t, cells), grouping_load(K1, K2, L, Rational(t)), "grouping", Rational(t)});
    return pts;
}

std::vector<TradeoffPoint> hybrid_corners(int K1, int K2, int L) {
    std::vector<TradeoffPoint> pts;
    if (K2 <= L) return pts;
    const long long cells = static_cast<long long>(K1) * K2;
    pts.push_back({Rational(0), Rational(cells), "hybrid", Rational(0)});
    for (int t = 1; t <= K1 / L; ++t)
        pts.push_back(
            {Rational(t, cells), hybrid_load(K1, K2, L, Rational(t)), "hybrid", Rational(t)});
    pts.push_back({Rational(1, static_cast<long long>(L) * L), Rational(0), "hybrid",
                   Rational(cells, static_cast<long long>(L) * L)});
    return pts;
}

namespace {

Rational cross(const TradeoffPoint& o, const TradeoffPoint& a, const TradeoffPoint& b) {
    return (a.memory_ratio - o.memory_ratio) * (b.load - o.load) -
           (a.load - o.load) * (b.memory_ratio - o.memory_ratio);
}

}  // namespace

std::vector<TradeoffPoint> lower_envelope(std::vector<TradeoffPoint> points) {
    std::sort(points.begin(), points.end(), [](const TradeoffPoint& a, const TradeoffPoint& b) {
        if (a.memory_ratio != b.memory_ratio) return a.memory_ratio < b.memory_ratio;
        return a.load < b.load;
    });
    // Keep the best point per memory value.
    std::vector<TradeoffPoint> unique;
    for (auto& p : points)
        if (unique.empty() || unique.back().memory_ratio != p.memory_ratio)
            unique.push_back(std::move(p));

    std::vector<TradeoffPoint> hull;
    for (auto& p : unique) {
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= Rational(0))
            hull.pop_back();
        hull.push_back(std::move(p));
    }
    return hull;
}

std::optional<Rational> envelope_value(const std::vector<TradeoffPoint>& envelope,
                                       const Rational& memory_ratio) {
    if (envelope.empty() || memory_ratio < envelope.front().memory_ratio ||
        memory_ratio > envelope.back().memory_ratio)
        return std::nullopt;
    for (size_t i = 0; i + 1 < envelope.size(); ++i) {
        const auto& a = envelope[i];
        const auto& b = envelope[i + 1];
        if (memory_ratio > b.memory_ratio) continue;
        if (memory_ratio == a.memory_ratio) return a.load;
        if (memory_ratio == b.memory_ratio) return b.load;
        Rational frac = (memory_ratio - a.memory_ratio) / (b.memory_ratio - a.memory_ratio);
        return a.load + frac * (b.load - a.load);
    }
    return envelope.back().load;
}

std::vector<TradeoffPoint> tradeoff_envelope(int K1, int K2, int L, int /*N*/,
                                             const std::vector<std::string>& kinds) {
    std::vector<TradeoffPoint> all;
    for (const auto& kind : kinds) {
        std::vector<TradeoffPoint> pts;
        if (kind == "baseline") pts = baseline_corners(K1, K2, L);
        else if (kind == "grouping") pts = grouping_corners(K1, K2, L);
        else if (kind == "hybrid") pts = hybrid_corners(K1, K2, L);
        else throw std::invalid_argument("tradeoff_envelope: unknown kind '" + kind + "'");
        all.insert(all.end(), pts.begin(), pts.end());
    }
    return lower_envelope(std::move(all));
}

}  // namespace maccsim
