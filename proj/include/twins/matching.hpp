#pragma once

#include <map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "twins/certificate.hpp"
#include "twins/permutation.hpp"

namespace twins {

using boost::multiprecision::cpp_rational;

struct grid_params {
    long long n = 0;
    int r = 0;
    long long a = 0;           // block side length
    long long num_blocks = 0;  // floor(n/a)
    int degree_cutoff = 7;

    // a ~ (r!)^(1/(2r-1)) n^((r-1)/(2r-1)), clamped to at least r;
    // a_override > 0 pins a for tests
    static grid_params derive(long long n, int r, int degree_cutoff = 7,
                              long long a_override = 0);
};

// bipartite block graph: position blocks vs value blocks over the first
// num_blocks*a positions, values rank-reduced so both sides split evenly;
// an edge means the cell holds at least r elements
struct matching_graph {
    long long nb = 0;
    std::vector<long long> counts;               // nb*nb cell occupancies
    std::vector<std::pair<int, int>> edges;      // lex sorted
    std::vector<long long> row_degree, col_degree;
    std::map<long long, long long> degree_histogram() const;  // both sides
};

matching_graph build_graph(const permutation& host, const grid_params& params);

struct matching_result {
    std::vector<std::pair<int, int>> edges;  // the matching, ascending in i
    long long e_prime = 0;                   // edges left after pruning
    long long delta_prime = 0;               // max degree after pruning
};

// drop vertices of degree >= cutoff, then take edges greedily in lex order;
// the result is maximal in the pruned graph, so its size is at least
// e' / (2 delta')
matching_result greedy_matching(const matching_graph& g, int degree_cutoff);

// each matching edge contributes one column: the r leftmost elements of its
// cell, split across the twins by position rank
twins_certificate extract_twins(const permutation& host, const grid_params& params,
                                const matching_result& m);

struct matching_outcome {
    grid_params params;
    long long total_edges = 0;
    long long pruned_edges = 0;
    long long delta_prime = 0;
    long long matching_size = 0;
    twins_certificate cert;
};

matching_outcome find_matching(const permutation& host, int r, int degree_cutoff = 7);

// probability that r fixed disjoint k-element position sets induce pairwise
// similar patterns in a uniform host: (1/k!)^(r-1)
cpp_rational position_match_probability(int k, int r);

// expected number of r-twin families of length k in a uniform host of size n:
// n! / (r! (k!)^(2r-1) (n-rk)!)
cpp_rational expected_twin_count(long long n, int k, int r);

// natural log of the same quantity, safe for huge n; -inf when rk > n
double log_expected_twin_count(long long n, long long k, int r);

// smallest k at which the first-moment bound certifies absence whp:
// ceil(2e n^(r/(2r-1)))
long long upper_threshold(long long n, int r);

}  // namespace twins
