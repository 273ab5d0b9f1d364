#pragma once

#include <vector>

#include "twins/permutation.hpp"

namespace twins {

struct lcs_budget {
    // the pairwise chain DP touches about m^2 * r point pairs
    long long max_ops = 2'000'000'000;
};

struct common_subperm_result {
    int length = 0;
    // the common sub-permutation itself: element values in their shared order
    std::vector<long long> elements;
    // for each input permutation, the increasing 1-based positions realizing it
    std::vector<std::vector<int>> per_perm_positions;
};

// Exact longest common sub-permutation of r permutations of one common
// element set. Since every element occurs exactly once per permutation, a
// common subsequence is a chain of elements whose position vectors increase
// coordinatewise; two permutations reduce to longest increasing subsequence,
// more use the O(m^2 r) pairwise chain DP.
common_subperm_result common_subperm(const std::vector<permutation>& perms,
                                     const lcs_budget& budget = {});

struct subset_selection {
    std::vector<int> chosen_indices;  // r indices into {1, ..., 2r-1}, increasing
    common_subperm_result result;
};

// best r-subset of 2r-1 permutations by common sub-permutation length; ties
// go to the lexicographically smallest index tuple. The result is checked
// against the ceil(m^(1/R)) floor, R = C(2r-1, r); a shorter result would
// contradict the selection guarantee, so it raises lemma_violation_error.
subset_selection best_r_of_2r_minus_1(const std::vector<permutation>& perms, int r,
                                      const lcs_budget& budget = {});

unsigned long long binomial(int a, int b);

// smallest L with L^R >= m, integer arithmetic only
int integer_root_ceil(long long m, int R);

}  // namespace twins
