#pragma once

#include "twins/certificate.hpp"

namespace twins {

struct oracle_budget {
    int max_n = 12;
    long long max_nodes = 50'000'000;
    enum class exceed_policy { fail, return_lower_bound };
    exceed_policy on_exceed = exceed_policy::fail;
};

struct oracle_result {
    int k = 0;
    twins_certificate witness;
    bool exact = true;  // false when the node budget stopped the search early
};

// exact t^(r)(p): the largest k such that p contains r-twins of length k.
// Search walks column by column over the r subsequences, memoizing on the
// unordered set of per-twin value masks. k = 0 with an empty witness happens
// only for n < r; for n >= r any r singletons give k >= 1.
oracle_result exact_twins_length(const permutation& p, int r, const oracle_budget& budget = {});

struct t_of_n_result {
    int k = 0;
    permutation argmin;  // first permutation in lexicographic order attaining k
};

// exact t^(r)(n): minimum of exact_twins_length over all n! permutations
t_of_n_result exact_t_r_n(int n, int r, const oracle_budget& budget = {});

struct square_result {
    int r = 0;
    twins_certificate witness;  // multiplicity = length = r
};

// largest r such that p contains r-twins of length r
square_result exact_square(const permutation& p, const oracle_budget& budget = {});

// number of unordered families of r pairwise disjoint, pairwise similar
// length-k subsequences of p; exhaustive, intended for small n
unsigned long long count_twins_families(const permutation& p, int k, int r);

}  // namespace twins
