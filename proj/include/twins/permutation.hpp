#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "twins/errors.hpp"

namespace twins {

// A permutation here is any finite sequence of distinct integers, not just a
// rearrangement of 1..n; sub-permutations of an [n] host live on arbitrary
// value sets. All positions and values in the public API are 1-based.
class permutation {
public:
    permutation() = default;
    explicit permutation(std::vector<long long> values);

    static permutation identity(int n);
    // uniform over all n! permutations; mt19937_64 plus masked-rejection
    // Fisher-Yates, so identical (n, seed) reproduces identical output on
    // every platform
    static permutation random(int n, std::uint64_t seed);

    int size() const { return static_cast<int>(vals_.size()); }
    bool empty() const { return vals_.empty(); }

    long long value_at(int pos) const;       // pos in 1..n
    int position_of(long long value) const;  // returns 1-based position
    bool contains(long long value) const;

    const std::vector<long long>& values() const { return vals_; }
    std::vector<long long> values_at(const std::vector<int>& positions) const;

    // true when the value set is exactly {1, ..., n}
    bool over_contiguous_range() const { return over_1n_; }

    bool operator==(const permutation& o) const { return vals_ == o.vals_; }
    bool operator!=(const permutation& o) const { return vals_ != o.vals_; }

private:
    struct trusted {};
    permutation(std::vector<long long> values, trusted);
    void build_index();

    std::vector<long long> vals_;
    std::vector<int> direct_inv_;                       // used when over 1..n
    std::vector<std::pair<long long, int>> sorted_inv_; // fallback, binary search
    bool over_1n_ = false;
};

// the unique permutation of {1..k} with the same relative order as seq
std::vector<int> canonical_pattern(const std::vector<long long>& seq);
std::vector<int> canonical_pattern(const permutation& p);

// relative order identical at every index pair; length mismatch gives false
bool is_similar(const std::vector<long long>& x, const std::vector<long long>& y);
bool is_similar(const permutation& x, const permutation& y);

// uniform integer in [0, bound); masked rejection keeps this unbiased and
// independent of library-specific distribution code
std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t bound);

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace twins
