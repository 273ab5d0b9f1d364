#pragma once

#include <vector>

#include "twins/certificate.hpp"
#include "twins/multi_lcs.hpp"

namespace twins {

struct round_plan {
    long long M = 0;  // block width scale
    long long N = 0;  // blocks per round
    long long block_width_cap = 0;          // 2M
    long long per_round_consumption_cap = 0;  // 2rN, the budgeting target; the
                                              // enforced bound is (2r-1)N + 2Mk
    long long rounds_target = 0;            // about M/(2r)

    // M is the smallest integer with M^(2R-1) >= n^(R-1), R = C(2r-1, r);
    // N = floor(n/M), clamped so a round never asks for more than n elements
    static round_plan derive(long long n, int r);
};

struct round_trace {
    std::vector<long long> a_values;             // the (2r-1)N leftmost remaining, position order
    std::vector<std::vector<long long>> blocks;  // N value-consecutive blocks of 2r-1
    std::vector<int> narrow_block_ids;           // blocks of width <= 2M, 0-based
    std::vector<std::vector<long long>> renamed; // 2r-1 sequences of block ids, position order
    subset_selection selection;
    twins_certificate round_cert;                // 2M-narrow by construction
    std::vector<long long> removed_values;       // sorted; superset of a_values
    std::vector<int> removed_positions;          // same elements as positions
    bool narrow_warning = false;                 // fewer than N/2 narrow blocks
};

// One round: take the (2r-1)N leftmost remaining elements, split by value
// into N blocks, keep the narrow ones, build the 2r-1 block-index
// subsequences, pick the best r of them by common sub-permutation, and emit
// the resulting narrow twins plus the removal set (A itself and one
// 2M-length value interval per column, which is what keeps later rounds
// concatenable). alive_positions must be ascending.
round_trace run_round(const permutation& host, const std::vector<int>& alive_positions,
                      int r, const round_plan& plan);

struct find_result {
    twins_certificate cert;
    std::vector<round_trace> traces;
    round_plan plan;
};

// Full iterated construction on a host over 1..n: rounds run while at least
// (2r-1)N elements remain and their certificates are concatenated in round
// order. Below n = 4(2r-1) the machinery degenerates, so a single width-
// unfiltered round (or plain singletons) is used instead.
find_result find_constructive(const permutation& host, int r);

}  // namespace twins
