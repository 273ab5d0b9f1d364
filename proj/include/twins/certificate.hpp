#pragma once

#include <vector>

#include "twins/permutation.hpp"

namespace twins {

// Proof object for r-twins: r pairwise disjoint, pairwise similar
// subsequences of a host permutation, stored as 1-based position lists.
// Positions rather than values, so disjointness is checkable without the
// host's value map.
struct twins_certificate {
    int host_n = 0;  // 0 when loaded from a bare file and not yet bound to a host
    int r = 0;
    int k = 0;
    std::vector<std::vector<int>> index_lists;
    std::vector<int> pattern;  // shared canonical pattern, {1..k}
};

// fills k, pattern (from the first list) and host_n; throws
// invalid_index_error for out-of-range positions and
// invalid_certificate_error for ragged lists
twins_certificate make_certificate(const permutation& host,
                                   std::vector<std::vector<int>> index_lists);

// true iff every certificate invariant holds against host; false means
// structurally consistent but not twins; out-of-range indices throw
// invalid_index_error instead of returning false
bool verify(const permutation& host, const twins_certificate& cert);

struct column_width_list {
    std::vector<long long> widths;  // widths[i] = max - min of column i values
    long long max_width() const;
};

// per-column widths of the value sets {x_i^(1), ..., x_i^(r)}; requires a
// certificate that verifies, otherwise invalid_certificate_error
column_width_list column_widths(const permutation& host, const twins_certificate& cert);

bool is_w_narrow(const permutation& host, const twins_certificate& cert, long long w);

// true iff (a) every position of left precedes every position of right and
// (b) each right value-column lies entirely below the minimum or entirely
// above the maximum of each left value-column
bool can_concatenate(const permutation& host, const twins_certificate& left,
                     const twins_certificate& right);

// joins left and right into twins of summed length; the two conditions of
// can_concatenate are exactly what makes the result verify
twins_certificate concatenate(const permutation& host, const twins_certificate& left,
                              const twins_certificate& right);

}  // namespace twins
