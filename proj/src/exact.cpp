#include "twins/exact.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>
#include <unordered_map>

namespace twins {

namespace {

struct twin_state {
    std::uint64_t mask = 0;  // set of value ranks used by this twin (bit v-1)
    int last_pos = 0;        // 1-based position of the most recent element
};

// Column-by-column search. A partial solution is summarized by the r value
// masks: column c pairs the c-th smallest value of every twin, positions are
// recoverable through the host bijection, and a new column is feasible iff
// all r new values fall into the same sorted-gap of their own twin and sit
// to the right of that twin's last position. Extension potential depends
// only on the mask set, which is what makes memoization sound.
struct searcher {
    int n = 0;
    int r = 0;
    std::vector<int> pos_of_rank;  // value rank (1..n) -> host position (1..n)
    long long nodes = 0;
    long long max_nodes = 0;
    bool budget_hit = false;
    bool use_memo = false;
    std::unordered_map<std::uint64_t, int> memo;

    // deepest partial solution seen, for the lower-bound exit
    int best_depth = 0;
    std::vector<std::vector<int>> cur_cols;   // per column: rank per twin
    std::vector<std::vector<int>> best_cols;

    std::uint64_t pack(const std::vector<twin_state>& tw) const {
        std::uint64_t masks[8];
        for (int j = 0; j < r; ++j) masks[j] = tw[j].mask;
        std::sort(masks, masks + r);
        std::uint64_t key = 0;
        for (int j = 0; j < r; ++j) key = (key << n) | masks[j];
        return key;
    }

    // enumerate child columns in deterministic order: gap index ascending,
    // then the rank tuple lexicographically; fn returning false stops the
    // enumeration
    template <typename Fn>
    void for_each_child(const std::vector<twin_state>& tw, Fn&& fn) const {
        const int depth = std::popcount(tw[0].mask);
        std::uint64_t used = 0;
        for (const auto& t : tw) used |= t.mask;

        std::vector<std::vector<int>> cand(r);
        std::vector<int> picks(r);
        bool stop = false;
        for (int g = 0; g <= depth && !stop; ++g) {
            bool empty = false;
            for (int j = 0; j < r; ++j) {
                cand[j].clear();
                const std::uint64_t mask = tw[j].mask;
                for (int v = 1; v <= n; ++v) {
                    if ((used >> (v - 1)) & 1ULL) continue;
                    if (pos_of_rank[v] <= tw[j].last_pos) continue;
                    const std::uint64_t below = mask & ((1ULL << (v - 1)) - 1);
                    if (std::popcount(below) != g) continue;
                    cand[j].push_back(v);
                }
                if (cand[j].empty()) {
                    empty = true;
                    break;
                }
            }
            if (empty) continue;

            // product over twins with pairwise-distinct ranks; twins with
            // identical masks (only the empty ones at the root) take
            // increasing ranks to kill the relabeling symmetry
            std::uint64_t chosen = 0;
            auto rec = [&](auto&& self, int j) -> void {
                if (stop) return;
                if (j == r) {
                    std::vector<twin_state> child = tw;
                    for (int t = 0; t < r; ++t) {
                        child[t].mask |= 1ULL << (picks[t] - 1);
                        child[t].last_pos = pos_of_rank[picks[t]];
                    }
                    if (!fn(child, picks)) stop = true;
                    return;
                }
                for (int v : cand[j]) {
                    if ((chosen >> (v - 1)) & 1ULL) continue;
                    if (j > 0 && tw[j].mask == tw[j - 1].mask && v <= picks[j - 1]) continue;
                    picks[j] = v;
                    chosen |= 1ULL << (v - 1);
                    self(self, j + 1);
                    chosen &= ~(1ULL << (v - 1));
                    if (stop) return;
                }
            };
            rec(rec, 0);
        }
    }

    // maximum number of additional columns from state tw; depth must equal
    // the column count of tw
    int dfs(std::vector<twin_state>& tw, int depth) {
        std::uint64_t key = 0;
        if (use_memo) {
            key = pack(tw);
            auto it = memo.find(key);
            if (it != memo.end()) return it->second;
        }
        if (++nodes > max_nodes) {
            budget_hit = true;
            return 0;
        }
        const int cap = (n - r * depth) / r;
        if (cap == 0) {
            if (use_memo) memo.emplace(key, 0);
            return 0;
        }
        int best = 0;
        for_each_child(tw, [&](std::vector<twin_state>& child, const std::vector<int>& picks) {
            cur_cols.push_back(picks);
            if (depth + 1 > best_depth) {
                best_depth = depth + 1;
                best_cols = cur_cols;
            }
            const int ext = dfs(child, depth + 1);
            cur_cols.pop_back();
            if (budget_hit) return false;
            best = std::max(best, 1 + ext);
            return best < cap;
        });
        if (budget_hit) return best;
        if (use_memo) memo.emplace(key, best);
        return best;
    }
};

twins_certificate cert_from_columns(const permutation& host,
                                    const std::vector<std::vector<int>>& cols, int r,
                                    const std::vector<int>& pos_of_rank) {
    std::vector<std::vector<int>> lists(r);
    for (const auto& col : cols) {
        for (int j = 0; j < r; ++j) lists[j].push_back(pos_of_rank[col[j]]);
    }
    std::sort(lists.begin(), lists.end());
    return make_certificate(host, std::move(lists));
}

twins_certificate empty_certificate(const permutation& host, int r) {
    return make_certificate(host, std::vector<std::vector<int>>(r));
}

twins_certificate singleton_certificate(const permutation& host, int r) {
    std::vector<std::vector<int>> lists(r);
    for (int j = 0; j < r; ++j) lists[j] = {j + 1};
    return make_certificate(host, std::move(lists));
}

}  // namespace

oracle_result exact_twins_length(const permutation& p, int r, const oracle_budget& budget) {
    if (r < 2) throw twins_error("twin multiplicity must be at least 2");
    const int n = p.size();
    if (n > budget.max_n) {
        throw budget_exceeded_error("host length " + std::to_string(n) +
                                    " above oracle cap " + std::to_string(budget.max_n));
    }
    if (n > 62) {
        // value sets are tracked as 64-bit masks
        throw budget_exceeded_error("exact search supports hosts up to 62 elements");
    }
    if (n < r) return {0, empty_certificate(p, r), true};

    searcher s;
    s.n = n;
    s.r = r;
    s.max_nodes = budget.max_nodes;
    s.use_memo = r * n <= 62;
    s.pos_of_rank.assign(n + 1, 0);
    {
        std::vector<int> idx(n);
        std::iota(idx.begin(), idx.end(), 1);
        std::sort(idx.begin(), idx.end(),
                  [&](int a, int b) { return p.value_at(a) < p.value_at(b); });
        for (int rank = 1; rank <= n; ++rank) s.pos_of_rank[rank] = idx[rank - 1];
    }

    std::vector<twin_state> root(r);
    const int k = s.dfs(root, 0);

    if (s.budget_hit) {
        if (budget.on_exceed == oracle_budget::exceed_policy::fail) {
            throw budget_exceeded_error("oracle node budget exceeded", s.best_depth);
        }
        if (s.best_depth == 0) return {1, singleton_certificate(p, r), false};
        return {s.best_depth, cert_from_columns(p, s.best_cols, r, s.pos_of_rank), false};
    }

    // witness walk: repeatedly take the first child whose extension value is
    // one less than the current one; memo entries missing because of the
    // cap cutoff are computed on demand
    s.max_nodes = std::numeric_limits<long long>::max();
    std::vector<twin_state> tw(r);
    std::vector<std::vector<int>> cols;
    int remaining = k;
    while (remaining > 0) {
        bool advanced = false;
        s.for_each_child(tw, [&](std::vector<twin_state>& child, const std::vector<int>& picks) {
            const int depth = static_cast<int>(cols.size()) + 1;
            int f;
            if (s.use_memo) {
                const std::uint64_t key = s.pack(child);
                auto it = s.memo.find(key);
                f = (it != s.memo.end()) ? it->second : s.dfs(child, depth);
            } else {
                f = s.dfs(child, depth);
            }
            if (f == remaining - 1) {
                cols.push_back(picks);
                tw = child;
                advanced = true;
                return false;
            }
            return true;
        });
        if (!advanced) {
            throw construction_bug_error("witness walk found no extension matching the optimum");
        }
        --remaining;
    }
    return {k, cert_from_columns(p, cols, r, s.pos_of_rank), true};
}

t_of_n_result exact_t_r_n(int n, int r, const oracle_budget& budget) {
    if (n < 1) throw empty_sequence_error("t^(r)(n) needs n >= 1");
    if (n > budget.max_n) {
        throw budget_exceeded_error("n above oracle cap for the full n! sweep");
    }
    std::vector<long long> vals(n);
    std::iota(vals.begin(), vals.end(), 1);
    t_of_n_result out;
    out.k = -1;
    do {
        permutation p{std::vector<long long>(vals)};
        const auto res = exact_twins_length(p, r, budget);
        if (out.k < 0 || res.k < out.k) {
            out.k = res.k;
            out.argmin = p;
        }
    } while (std::next_permutation(vals.begin(), vals.end()));
    return out;
}

square_result exact_square(const permutation& p, const oracle_budget& budget) {
    const int n = p.size();
    if (n < 1) throw empty_sequence_error("square of empty permutation");
    if (n > budget.max_n) {
        throw budget_exceeded_error("host length above oracle cap");
    }
    square_result out;
    out.r = 1;
    out.witness = make_certificate(p, {{1}});
    for (int r = 2; static_cast<long long>(r) * r <= n; ++r) {
        const auto res = exact_twins_length(p, r, budget);
        if (!res.exact && res.k < r) {
            throw budget_exceeded_error("square search stopped by the oracle budget", out.r);
        }
        if (res.k < r) break;
        std::vector<std::vector<int>> lists;
        lists.reserve(r);
        for (const auto& list : res.witness.index_lists) {
            lists.emplace_back(list.begin(), list.begin() + r);
        }
        out.r = r;
        out.witness = make_certificate(p, std::move(lists));
    }
    return out;
}

namespace {

struct family_counter {
    const permutation* host;
    int n, k, r;
    unsigned long long count = 0;
    std::vector<char> used;
    std::vector<std::vector<int>> chosen;
    std::vector<int> pattern0;

    void pick(int t, int start, int cnt) {
        auto& mine = chosen[t];
        if (cnt == k) {
            const auto pat = canonical_pattern(host->values_at(mine));
            if (t == 0) {
                pattern0 = pat;
                next_twin(t);
                pattern0.clear();
            } else if (pat == pattern0) {
                next_twin(t);
            }
            return;
        }
        for (int pos = start; pos <= n - (k - cnt - 1); ++pos) {
            if (used[pos]) continue;
            used[pos] = 1;
            mine.push_back(pos);
            pick(t, pos + 1, cnt + 1);
            mine.pop_back();
            used[pos] = 0;
        }
    }

    void next_twin(int t) {
        if (t + 1 == r) {
            ++count;
            return;
        }
        // families are unordered; ordering twins by first position counts
        // each family exactly once
        pick(t + 1, chosen[t][0] + 1, 0);
    }
};

}  // namespace

unsigned long long count_twins_families(const permutation& p, int k, int r) {
    if (k < 1) throw twins_error("family counting needs k >= 1");
    if (r < 2) throw twins_error("family counting needs r >= 2");
    const int n = p.size();
    if (static_cast<long long>(r) * k > n) return 0;
    family_counter fc;
    fc.host = &p;
    fc.n = n;
    fc.k = k;
    fc.r = r;
    fc.used.assign(n + 1, 0);
    fc.chosen.assign(r, {});
    fc.pick(0, 1, 0);
    return fc.count;
}

}  // namespace twins
