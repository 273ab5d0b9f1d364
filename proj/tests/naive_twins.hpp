#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

// deliberately independent of the library: plain vectors, definitions only,
// exponential brute force. Used as the ground truth the fast code must match.
namespace naive {

inline bool same_relative_order(const std::vector<long long>& a,
                                const std::vector<long long>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = i + 1; j < a.size(); ++j)
            if ((a[i] < a[j]) != (b[i] < b[j])) return false;
    return true;
}

// largest common length of r disjoint pairwise similar subsequences, found
// by sweeping every assignment of labels {unused, 1..r} to the positions
inline int max_twins_length(const std::vector<long long>& host, int r) {
    const int n = static_cast<int>(host.size());
    int best = 0;
    std::vector<int> label(static_cast<size_t>(n), 0);
    std::vector<std::vector<long long>> sub(static_cast<size_t>(r));
    while (true) {
        for (auto& s : sub) s.clear();
        for (int i = 0; i < n; ++i)
            if (label[static_cast<size_t>(i)] > 0)
                sub[static_cast<size_t>(label[static_cast<size_t>(i)] - 1)].push_back(
                    host[static_cast<size_t>(i)]);
        bool ok = true;
        for (int t = 1; t < r && ok; ++t)
            if (sub[static_cast<size_t>(t)].size() != sub[0].size()) ok = false;
        for (int t1 = 0; t1 < r && ok; ++t1)
            for (int t2 = t1 + 1; t2 < r && ok; ++t2)
                if (!same_relative_order(sub[static_cast<size_t>(t1)],
                                         sub[static_cast<size_t>(t2)]))
                    ok = false;
        if (ok) best = std::max(best, static_cast<int>(sub[0].size()));

        int pos = 0;
        while (pos < n && label[static_cast<size_t>(pos)] == r) {
            label[static_cast<size_t>(pos)] = 0;
            ++pos;
        }
        if (pos == n) break;
        ++label[static_cast<size_t>(pos)];
    }
    return best;
}

// largest r with r disjoint pairwise similar subsequences of length r
inline int max_square(const std::vector<long long>& host) {
    const int n = static_cast<int>(host.size());
    int best = n >= 1 ? 1 : 0;
    for (int r = 2; r * r <= n; ++r)
        if (max_twins_length(host, r) >= r) best = r;
    return best;
}

}  // namespace naive
