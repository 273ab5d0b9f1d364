#pragma once

#include <stdexcept>
#include <string>

namespace twins {

struct twins_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct empty_sequence_error : twins_error {
    using twins_error::twins_error;
};

struct duplicate_value_error : twins_error {
    using twins_error::twins_error;
};

struct invalid_index_error : twins_error {
    using twins_error::twins_error;
};

struct invalid_certificate_error : twins_error {
    using twins_error::twins_error;
};

struct multiplicity_mismatch_error : twins_error {
    using twins_error::twins_error;
};

struct concatenation_invalid_error : twins_error {
    using twins_error::twins_error;
};

// carries the best lower bound found before the node cap was hit (-1 if none)
struct budget_exceeded_error : twins_error {
    long long best_lower_bound;
    explicit budget_exceeded_error(const std::string& msg, long long lb = -1)
        : twins_error(msg), best_lower_bound(lb) {}
};

struct set_mismatch_error : twins_error {
    using twins_error::twins_error;
};

struct arity_mismatch_error : twins_error {
    using twins_error::twins_error;
};

// raised when an exact subset search returns a common sub-permutation shorter
// than the guaranteed ceil(m^(1/R)) floor; this should never happen
struct lemma_violation_error : twins_error {
    using twins_error::twins_error;
};

struct no_narrow_blocks_error : twins_error {
    using twins_error::twins_error;
};

// internal-consistency failure of the round construction, not an input condition
struct construction_bug_error : twins_error {
    using twins_error::twins_error;
};

struct block_too_small_error : twins_error {
    using twins_error::twins_error;
};

struct infeasible_length_error : twins_error {
    using twins_error::twins_error;
};

struct invalid_matching_error : twins_error {
    using twins_error::twins_error;
};

struct too_short_error : twins_error {
    using twins_error::twins_error;
};

struct io_error : twins_error {
    using twins_error::twins_error;
};

}  // namespace twins
