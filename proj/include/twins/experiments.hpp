#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "twins/matching.hpp"
#include "twins/permutation.hpp"

namespace twins {

enum class finder_kind { constructive, matching, baseline, exact_oracle };

// accepts "constructive", "matching", "baseline", "exact"
finder_kind parse_finder(const std::string& name);
std::string finder_name(finder_kind f);

// run one finder on one host and return the certified length; every
// certificate is re-verified here, a finder is never trusted
long long finder_length(finder_kind f, const permutation& host, int r);

struct scaling_config {
    finder_kind finder = finder_kind::constructive;
    int r = 2;
    std::vector<long long> ns;
    int seeds_per_n = 5;
    std::uint64_t base_seed = 0;
};

struct scaling_cell {
    std::string finder;
    int r = 0;
    long long n = 0;
    std::uint64_t seed = 0;   // the derived per-cell seed
    long long length = -1;    // -1 when the cell failed
    double runtime_ms = 0.0;
    std::string error;        // empty on success
};

struct fit_result {
    bool valid = false;
    double exponent = 0.0;   // slope of log length vs log n
    double intercept = 0.0;
    double r_squared = 0.0;
};

struct scaling_summary {
    scaling_config config;
    std::vector<scaling_cell> cells;
    std::vector<long long> ns;  // n values with at least one successful cell
    std::vector<double> mean_length, min_length, max_length;
    fit_result fit_mean, fit_min, fit_max;
};

// cell seed = splitmix64(splitmix64(splitmix64(base) ^ n) ^ idx), so any
// cell can be rerun in isolation; failed cells are recorded and skipped by
// the fits, which need at least three usable n values
scaling_summary run_scaling(const scaling_config& cfg);

std::uint64_t cell_seed(std::uint64_t base_seed, long long n, long long idx);

struct concentration_config {
    finder_kind finder = finder_kind::constructive;
    int r = 2;
    long long n = 0;
    int count = 0;                     // used when seeds is empty
    std::uint64_t base_seed = 0;
    std::vector<std::uint64_t> seeds;  // explicit override
};

struct concentration_summary {
    std::vector<std::uint64_t> seeds;
    std::vector<long long> lengths;
    double mean = 0.0;
    double stddev = 0.0;            // sample, n-1
    double normalized_spread = 0.0; // stddev / mean
    bool flagged = false;           // spread above 0.25
};

concentration_summary run_concentration(const concentration_config& cfg);

struct moment_config {
    long long n = 0;
    int k = 0;
    int r = 2;
    long long samples = 0;  // 0 = exhaustive over all n! hosts
    std::uint64_t seed = 0;
    long long max_exhaustive_n = 8;
};

struct moment_summary {
    bool exhaustive = false;
    bool feasible = true;            // rk <= n
    cpp_rational empirical_exact;    // exhaustive only
    cpp_rational expected_exact;     // 0 when infeasible
    double mean = 0.0;
    double expected = 0.0;
    double z = 0.0;                  // sampling only
    long long samples = 0;
    bool match = false;              // exact equality, or |z| <= 4
};

// compares the average twin-family count against its closed form, either
// exactly over all hosts of size n or by Monte Carlo
moment_summary run_moment_check(const moment_config& cfg);

}  // namespace twins
