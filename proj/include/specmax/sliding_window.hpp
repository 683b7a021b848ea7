#pragma once

// Sliding-window maximum over a periodic sequence via a monotone deque.
// One pass, O(1) amortized per element; this is the per-radius performance
// contract of the maximal-operator engine.

#include <Eigen/Core>

#include <cstdint>
#include <vector>

namespace specmax {

// For each center c in [0,n), the maximum of v over the circular index window
// [c - reach, c + reach]. When the window covers the whole ring the global
// maximum is broadcast.
inline Eigen::ArrayXd circular_window_max(const Eigen::ArrayXd& v,
                                          std::int64_t reach) {
    const std::int64_t n = v.size();
    Eigen::ArrayXd out(n);
    if (reach <= 0) {
        out = v;
        return out;
    }
    if (2 * reach + 1 >= n) {
        out.setConstant(v.maxCoeff());
        return out;
    }

    // Walk j = c + reach over the extended range [-reach, n + reach); the
    // deque holds indices of a nonincreasing run of values. Buffer is sized
    // for every push, so no wraparound bookkeeping is needed.
    std::vector<std::int64_t> deque(static_cast<std::size_t>(n + 2 * reach + 1));
    std::int64_t head = 0, tail = 0; // live entries in [head, tail)
    auto value = [&](std::int64_t j) { return v[((j % n) + n) % n]; };

    for (std::int64_t j = -reach; j < n + reach; ++j) {
        const double x = value(j);
        while (tail > head && value(deque[static_cast<std::size_t>(tail - 1)]) <= x)
            --tail;
        deque[static_cast<std::size_t>(tail++)] = j;
        const std::int64_t c = j - reach; // window [c-reach, c+reach] complete
        while (deque[static_cast<std::size_t>(head)] < c - reach) ++head;
        if (c >= 0) out[c] = value(deque[static_cast<std::size_t>(head)]);
    }
    return out;
}

} // namespace specmax
