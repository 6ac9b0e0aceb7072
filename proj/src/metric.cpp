#include "morphplan/metric.hpp"

#include <algorithm>
#include <limits>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "morphplan/errors.hpp"

namespace morphplan {

namespace {

// Optimal 1-D assignment cost after shifting a by t: sort both sides, match in
// order. Lower-bounds the 2-D assignment restricted to this axis.
int axis_cost(const std::vector<int>& a, const std::vector<int>& b, int t) {
    int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] + t - b[i]);
    return s;
}

// Exact min-cost perfect matching over <= 12 cells by subset DP.
int assignment_cost(const std::vector<Vec2>& a, const std::vector<Vec2>& b, Vec2 t, int bound) {
    const int n = static_cast<int>(a.size());
    const int full = (1 << n) - 1;
    const int INF = std::numeric_limits<int>::max() / 2;
    std::vector<int> dp(full + 1, INF);
    dp[0] = 0;
    for (int mask = 0; mask < full; ++mask) {
        if (dp[mask] >= std::min(bound, INF)) continue;
        int i = __builtin_popcount(mask);  // a[i] matches next
        Vec2 ai = a[i] + t;
        for (int j = 0; j < n; ++j) {
            if (mask >> j & 1) continue;
            int cost = dp[mask] + manhattan(ai, b[j]);
            int nm = mask | (1 << j);
            if (cost < dp[nm]) dp[nm] = cost;
        }
    }
    return dp[full];
}

int compute(const Configuration& ca, const Configuration& cb) {
    std::vector<Vec2> a = ca.cells_sorted(), b = cb.cells_sorted();
    const int n = static_cast<int>(a.size());

    std::vector<int> ax, ay, bx, by;
    for (Vec2 v : a) {
        ax.push_back(v.x);
        ay.push_back(v.y);
    }
    for (Vec2 v : b) {
        bx.push_back(v.x);
        by.push_back(v.y);
    }
    std::sort(ax.begin(), ax.end());
    std::sort(ay.begin(), ay.end());
    std::sort(bx.begin(), bx.end());
    std::sort(by.begin(), by.end());

    // Some optimal translation aligns medians, so per-axis coordinate
    // differences cover it.
    std::vector<int> txs, tys;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            txs.push_back(bx[j] - ax[i]);
            tys.push_back(by[j] - ay[i]);
        }
    std::sort(txs.begin(), txs.end());
    txs.erase(std::unique(txs.begin(), txs.end()), txs.end());
    std::sort(tys.begin(), tys.end());
    tys.erase(std::unique(tys.begin(), tys.end()), tys.end());

    struct Cand {
        int lb, tx, ty;
    };
    std::vector<std::pair<int, int>> xcs, ycs;  // (axis lower bound, t)
    for (int t : txs) xcs.push_back({axis_cost(ax, bx, t), t});
    for (int t : tys) ycs.push_back({axis_cost(ay, by, t), t});
    std::sort(xcs.begin(), xcs.end());
    std::sort(ycs.begin(), ycs.end());

    std::vector<Cand> cands;
    for (const auto& [lx, tx] : xcs)
        for (const auto& [ly, ty] : ycs) cands.push_back({lx + ly, tx, ty});
    std::sort(cands.begin(), cands.end(),
              [](const Cand& p, const Cand& q) { return p.lb < q.lb; });

    int best = std::numeric_limits<int>::max() / 2;
    for (const Cand& c : cands) {
        if (c.lb >= best) break;  // sorted: nothing better follows
        best = std::min(best, assignment_cost(a, b, {c.tx, c.ty}, best));
    }
    return best;
}

}  // namespace

int group_manhattan_distance(const Configuration& a, const Configuration& b) {
    if (a.size() != b.size()) throw SizeMismatch("shape sizes differ");
    if (a.size() == 0) return 0;

    std::string ka = a.shape_key(), kb = b.shape_key();
    bool swap = kb < ka;
    std::string key = swap ? kb + "#" + ka : ka + "#" + kb;

    static std::mutex mu;
    static std::unordered_map<std::string, int> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    int d = compute(a, b);
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(std::move(key), d);
    return d;
}

}  // namespace morphplan
