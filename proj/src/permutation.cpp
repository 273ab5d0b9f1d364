#include "twins/permutation.hpp"

#include <algorithm>
#include <numeric>

namespace twins {

permutation::permutation(std::vector<long long> values) : vals_(std::move(values)) {
    std::vector<long long> sorted(vals_);
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i] == sorted[i - 1]) {
            throw duplicate_value_error("duplicate value " + std::to_string(sorted[i]) +
                                        " in permutation");
        }
    }
    build_index();
}

permutation::permutation(std::vector<long long> values, trusted) : vals_(std::move(values)) {
    build_index();
}

void permutation::build_index() {
    const int n = size();
    over_1n_ = false;
    direct_inv_.clear();
    sorted_inv_.clear();
    if (n == 0) return;

    long long mn = vals_[0], mx = vals_[0];
    for (long long v : vals_) {
        mn = std::min(mn, v);
        mx = std::max(mx, v);
    }
    if (mn == 1 && mx == n) {
        // distinct values with min 1 and max n means the set is exactly 1..n
        over_1n_ = true;
        direct_inv_.assign(n, 0);
        for (int i = 0; i < n; ++i) direct_inv_[vals_[i] - 1] = i + 1;
        return;
    }
    sorted_inv_.reserve(n);
    for (int i = 0; i < n; ++i) sorted_inv_.emplace_back(vals_[i], i + 1);
    std::sort(sorted_inv_.begin(), sorted_inv_.end());
}

permutation permutation::identity(int n) {
    if (n < 0) throw empty_sequence_error("identity length must be nonnegative");
    std::vector<long long> v(n);
    std::iota(v.begin(), v.end(), 1);
    return permutation(std::move(v), trusted{});
}

std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t bound) {
    if (bound <= 1) return 0;
    std::uint64_t mask = bound - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    std::uint64_t x;
    do {
        x = gen() & mask;
    } while (x >= bound);
    return x;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

permutation permutation::random(int n, std::uint64_t seed) {
    if (n < 1) throw empty_sequence_error("random permutation needs n >= 1");
    std::vector<long long> v(n);
    std::iota(v.begin(), v.end(), 1);
    std::mt19937_64 gen(seed);
    for (int i = n - 1; i >= 1; --i) {
        const auto j = static_cast<int>(uniform_below(gen, static_cast<std::uint64_t>(i) + 1));
        std::swap(v[i], v[j]);
    }
    return permutation(std::move(v), trusted{});
}

long long permutation::value_at(int pos) const {
    if (pos < 1 || pos > size()) {
        throw invalid_index_error("position " + std::to_string(pos) + " outside 1.." +
                                  std::to_string(size()));
    }
    return vals_[pos - 1];
}

int permutation::position_of(long long value) const {
    if (over_1n_) {
        if (value < 1 || value > size()) {
            throw invalid_index_error("value " + std::to_string(value) + " not in permutation");
        }
        return direct_inv_[value - 1];
    }
    auto it = std::lower_bound(sorted_inv_.begin(), sorted_inv_.end(),
                               std::make_pair(value, 0));
    if (it == sorted_inv_.end() || it->first != value) {
        throw invalid_index_error("value " + std::to_string(value) + " not in permutation");
    }
    return it->second;
}

bool permutation::contains(long long value) const {
    if (over_1n_) return value >= 1 && value <= size();
    auto it = std::lower_bound(sorted_inv_.begin(), sorted_inv_.end(),
                               std::make_pair(value, 0));
    return it != sorted_inv_.end() && it->first == value;
}

std::vector<long long> permutation::values_at(const std::vector<int>& positions) const {
    std::vector<long long> out;
    out.reserve(positions.size());
    for (int p : positions) out.push_back(value_at(p));
    return out;
}

std::vector<int> canonical_pattern(const std::vector<long long>& seq) {
    if (seq.empty()) throw empty_sequence_error("canonical pattern of empty sequence");
    const int k = static_cast<int>(seq.size());
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return seq[a] < seq[b]; });
    std::vector<int> out(k);
    for (int rank = 0; rank < k; ++rank) out[idx[rank]] = rank + 1;
    return out;
}

std::vector<int> canonical_pattern(const permutation& p) {
    return canonical_pattern(p.values());
}

bool is_similar(const std::vector<long long>& x, const std::vector<long long>& y) {
    if (x.size() != y.size()) return false;
    if (x.empty()) return true;
    return canonical_pattern(x) == canonical_pattern(y);
}

bool is_similar(const permutation& x, const permutation& y) {
    return is_similar(x.values(), y.values());
}

}  // namespace twins
