#include "twins/multi_lcs.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace twins {

unsigned long long binomial(int a, int b) {
    if (b < 0 || b > a) return 0;
    b = std::min(b, a - b);
    unsigned long long out = 1;
    for (int i = 1; i <= b; ++i) {
        out = out * static_cast<unsigned long long>(a - b + i) / i;
    }
    return out;
}

int integer_root_ceil(long long m, int R) {
    if (m <= 1) return m < 1 ? 0 : 1;
    int L = 1;
    for (;;) {
        // overflow-safe L^R >= m test
        long long pow = 1;
        bool big = false;
        for (int i = 0; i < R; ++i) {
            if (pow > m / L + 1) {
                big = true;
                break;
            }
            pow *= L;
        }
        if (big || pow >= m) return L;
        ++L;
    }
}

namespace {

void check_common_set(const std::vector<permutation>& perms) {
    if (perms.size() < 2) throw arity_mismatch_error("need at least two permutations");
    std::vector<long long> base = perms[0].values();
    std::sort(base.begin(), base.end());
    for (std::size_t i = 1; i < perms.size(); ++i) {
        std::vector<long long> other = perms[i].values();
        std::sort(other.begin(), other.end());
        if (other != base) {
            throw set_mismatch_error("permutations are not over a common element set");
        }
    }
}

common_subperm_result result_from_chain(const std::vector<permutation>& perms,
                                        const std::vector<long long>& chain) {
    common_subperm_result out;
    out.length = static_cast<int>(chain.size());
    out.elements = chain;
    out.per_perm_positions.resize(perms.size());
    for (std::size_t j = 0; j < perms.size(); ++j) {
        auto& pos = out.per_perm_positions[j];
        pos.reserve(chain.size());
        for (long long e : chain) pos.push_back(perms[j].position_of(e));
        if (!std::is_sorted(pos.begin(), pos.end())) {
            throw construction_bug_error("common sub-permutation positions not increasing");
        }
    }
    return out;
}

// strictly increasing subsequence of ys, maximum length, via patience tails;
// returns chosen indices into ys
std::vector<int> lis_indices(const std::vector<int>& ys) {
    const int m = static_cast<int>(ys.size());
    std::vector<int> tails;       // tails[l] = index of smallest tail of a length-(l+1) run
    std::vector<int> parent(m, -1);
    tails.reserve(m);
    for (int i = 0; i < m; ++i) {
        const auto it = std::lower_bound(tails.begin(), tails.end(), ys[i],
                                         [&](int idx, int v) { return ys[idx] < v; });
        const auto l = static_cast<int>(it - tails.begin());
        parent[i] = l > 0 ? tails[l - 1] : -1;
        if (it == tails.end()) {
            tails.push_back(i);
        } else {
            *it = i;
        }
    }
    std::vector<int> chain;
    if (tails.empty()) return chain;
    for (int i = tails.back(); i >= 0; i = parent[i]) chain.push_back(i);
    std::reverse(chain.begin(), chain.end());
    return chain;
}

}  // namespace

common_subperm_result common_subperm(const std::vector<permutation>& perms,
                                     const lcs_budget& budget) {
    check_common_set(perms);
    const auto r_in = static_cast<int>(perms.size());
    const int m = perms[0].size();
    if (m == 0) return result_from_chain(perms, {});

    if (r_in == 2) {
        // walk the first permutation in order, look at positions in the second
        std::vector<int> ys(m);
        for (int i = 1; i <= m; ++i) ys[i - 1] = perms[1].position_of(perms[0].value_at(i));
        const auto chain_idx = lis_indices(ys);
        std::vector<long long> chain;
        chain.reserve(chain_idx.size());
        for (int i : chain_idx) chain.push_back(perms[0].value_at(i + 1));
        return result_from_chain(perms, chain);
    }

    if (static_cast<long long>(m) * m * r_in > budget.max_ops) {
        throw budget_exceeded_error("common sub-permutation instance above the op budget");
    }

    // elements as points in r_in dimensions; longest coordinatewise-increasing chain
    std::vector<std::vector<int>> coord(m, std::vector<int>(r_in));
    for (int i = 1; i <= m; ++i) {
        const long long e = perms[0].value_at(i);
        coord[i - 1][0] = i;
        for (int j = 1; j < r_in; ++j) coord[i - 1][j] = perms[j].position_of(e);
    }
    std::vector<int> dp(m, 1), parent(m, -1);
    int best = 0, best_at = 0;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < i; ++j) {
            bool dominates = true;
            for (int d = 1; d < r_in; ++d) {
                if (coord[j][d] >= coord[i][d]) {
                    dominates = false;
                    break;
                }
            }
            if (dominates && dp[j] + 1 > dp[i]) {
                dp[i] = dp[j] + 1;
                parent[i] = j;
            }
        }
        if (dp[i] > best) {
            best = dp[i];
            best_at = i;
        }
    }
    std::vector<long long> chain;
    for (int i = best_at; i >= 0; i = parent[i]) chain.push_back(perms[0].value_at(i + 1));
    std::reverse(chain.begin(), chain.end());
    return result_from_chain(perms, chain);
}

subset_selection best_r_of_2r_minus_1(const std::vector<permutation>& perms, int r,
                                      const lcs_budget& budget) {
    if (r < 2) throw arity_mismatch_error("selection needs r >= 2");
    const int total = 2 * r - 1;
    if (static_cast<int>(perms.size()) != total) {
        throw arity_mismatch_error("expected " + std::to_string(total) + " permutations, got " +
                                   std::to_string(perms.size()));
    }
    check_common_set(perms);
    const int m = perms[0].size();

    subset_selection out;
    std::vector<int> subset(r);
    std::iota(subset.begin(), subset.end(), 0);
    for (;;) {
        std::vector<permutation> chosen;
        chosen.reserve(r);
        for (int idx : subset) chosen.push_back(perms[idx]);
        auto res = common_subperm(chosen, budget);
        if (out.chosen_indices.empty() || res.length > out.result.length) {
            out.result = std::move(res);
            out.chosen_indices.clear();
            for (int idx : subset) out.chosen_indices.push_back(idx + 1);
        }
        // next r-combination of {0, ..., total-1} in lexicographic order
        int i = r - 1;
        while (i >= 0 && subset[i] == total - r + i) --i;
        if (i < 0) break;
        ++subset[i];
        for (int j = i + 1; j < r; ++j) subset[j] = subset[j - 1] + 1;
    }

    const int floor_len = integer_root_ceil(m, static_cast<int>(binomial(total, r)));
    if (out.result.length < floor_len) {
        throw lemma_violation_error(
            "best subset common sub-permutation length " + std::to_string(out.result.length) +
            " below the guaranteed floor " + std::to_string(floor_len) + " for m = " +
            std::to_string(m) + ", r = " + std::to_string(r));
    }
    return out;
}

}  // namespace twins
