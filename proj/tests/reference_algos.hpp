#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

// textbook quadratic versions of the sequence algorithms, kept separate from
// the library implementations on purpose
namespace reference {

inline int lis_quadratic(const std::vector<long long>& v) {
    const int n = static_cast<int>(v.size());
    std::vector<int> dp(static_cast<size_t>(n), 1);
    int best = n > 0 ? 1 : 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < i; ++j)
            if (v[static_cast<size_t>(j)] < v[static_cast<size_t>(i)])
                dp[static_cast<size_t>(i)] =
                    std::max(dp[static_cast<size_t>(i)], dp[static_cast<size_t>(j)] + 1);
        best = std::max(best, dp[static_cast<size_t>(i)]);
    }
    return best;
}

inline int lds_quadratic(const std::vector<long long>& v) {
    std::vector<long long> neg(v.size());
    for (size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
    return lis_quadratic(neg);
}

// longest common subsequence of two sequences of distinct values
inline int lcs_two(const std::vector<long long>& a, const std::vector<long long>& b) {
    const size_t n = a.size(), m = b.size();
    std::vector<std::vector<int>> dp(n + 1, std::vector<int>(m + 1, 0));
    for (size_t i = 1; i <= n; ++i)
        for (size_t j = 1; j <= m; ++j)
            dp[i][j] = a[i - 1] == b[j - 1]
                           ? dp[i - 1][j - 1] + 1
                           : std::max(dp[i - 1][j], dp[i][j - 1]);
    return dp[n][m];
}

inline std::vector<long long> reversed(std::vector<long long> v) {
    std::reverse(v.begin(), v.end());
    return v;
}

inline std::vector<long long> complemented(const std::vector<long long>& v) {
    long long lo = v[0], hi = v[0];
    for (long long x : v) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    std::vector<long long> out;
    out.reserve(v.size());
    for (long long x : v) out.push_back(lo + hi - x);
    return out;
}

// is needle a subsequence of haystack (exact values)
inline bool contains_subsequence(const std::vector<long long>& haystack,
                                 const std::vector<long long>& needle) {
    size_t i = 0;
    for (long long x : haystack)
        if (i < needle.size() && x == needle[i]) ++i;
    return i == needle.size();
}

}  // namespace reference
