#include "twins/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "twins/errors.hpp"

namespace twins {

namespace {

// indices (0-based) of one longest strictly increasing subsequence
std::vector<int> lis_indices(const std::vector<long long>& vals) {
    const int m = static_cast<int>(vals.size());
    std::vector<int> tails;      // index whose value ends the best chain of each length
    std::vector<int> parent(m, -1);
    for (int i = 0; i < m; ++i) {
        auto it = std::lower_bound(tails.begin(), tails.end(), vals[i],
                                   [&vals](int idx, long long v) { return vals[idx] < v; });
        if (it != tails.begin()) parent[i] = *std::prev(it);
        if (it == tails.end())
            tails.push_back(i);
        else
            *it = i;
    }
    std::vector<int> chain;
    if (!tails.empty()) {
        for (int cur = tails.back(); cur != -1; cur = parent[cur]) chain.push_back(cur);
        std::reverse(chain.begin(), chain.end());
    }
    return chain;
}

}  // namespace

monotone_witness longest_monotone(const permutation& p) {
    if (p.empty()) throw empty_sequence_error("no monotone run in an empty sequence");
    std::vector<long long> vals = p.values();
    std::vector<long long> neg(vals.size());
    for (size_t i = 0; i < vals.size(); ++i) neg[i] = -vals[i];

    std::vector<int> inc = lis_indices(vals);
    std::vector<int> dec = lis_indices(neg);

    monotone_witness w;
    w.increasing = inc.size() >= dec.size();
    const std::vector<int>& chain = w.increasing ? inc : dec;
    for (int idx : chain) w.positions.push_back(idx + 1);
    return w;
}

twins_certificate es_twins(const permutation& p, int r) {
    if (r < 2) throw twins_error("multiplicity must be at least 2");
    monotone_witness w = longest_monotone(p);
    const int len = static_cast<int>(w.positions.size());
    if (len < r) throw too_short_error("monotone run shorter than the multiplicity");
    const int k = len / r;
    std::vector<std::vector<int>> lists(static_cast<size_t>(r));
    for (int t = 0; t < r; ++t)
        for (int c = 0; c < k; ++c)
            lists[static_cast<size_t>(t)].push_back(w.positions[static_cast<size_t>(t * k + c)]);
    return make_certificate(p, lists);
}

square_result greedy_square(const permutation& p) {
    const long long n = static_cast<long long>(p.size());
    if (n == 0) throw empty_sequence_error("no square in an empty sequence");

    long long cap = static_cast<long long>(std::sqrt(static_cast<double>(n)));
    while ((cap + 1) * (cap + 1) <= n) ++cap;
    while (cap * cap > n) --cap;

    std::vector<int> remaining(static_cast<size_t>(n));
    for (long long i = 0; i < n; ++i) remaining[static_cast<size_t>(i)] = static_cast<int>(i) + 1;

    std::vector<std::vector<int>> extractions;
    bool direction_set = false;
    bool increasing = true;
    while (!remaining.empty()) {
        std::vector<long long> vals, neg;
        vals.reserve(remaining.size());
        for (int pos : remaining) vals.push_back(p.value_at(pos));
        neg.resize(vals.size());
        for (size_t i = 0; i < vals.size(); ++i) neg[i] = -vals[i];

        std::vector<int> chain;
        if (!direction_set) {
            std::vector<int> inc = lis_indices(vals);
            std::vector<int> dec = lis_indices(neg);
            increasing = inc.size() >= dec.size();
            direction_set = true;
            chain = increasing ? inc : dec;
        } else {
            chain = lis_indices(increasing ? vals : neg);
        }

        size_t take = std::min<size_t>(chain.size(), static_cast<size_t>(cap));
        int t = static_cast<int>(extractions.size()) + 1;
        if (static_cast<int>(take) < t) break;

        std::vector<int> run;
        run.reserve(take);
        for (size_t i = 0; i < take; ++i)
            run.push_back(remaining[static_cast<size_t>(chain[i])]);

        std::vector<bool> gone(static_cast<size_t>(n) + 1, false);
        for (int pos : run) gone[static_cast<size_t>(pos)] = true;
        std::vector<int> next;
        next.reserve(remaining.size() - run.size());
        for (int pos : remaining)
            if (!gone[static_cast<size_t>(pos)]) next.push_back(pos);
        remaining.swap(next);
        extractions.push_back(std::move(run));
    }

    const int r_star = static_cast<int>(extractions.size());
    square_result out;
    out.r = r_star;
    if (r_star == 0) throw construction_bug_error("no extraction from a nonempty sequence");
    std::vector<std::vector<int>> lists(static_cast<size_t>(r_star));
    for (int t = 0; t < r_star; ++t)
        for (int c = 0; c < r_star; ++c)
            lists[static_cast<size_t>(t)].push_back(extractions[static_cast<size_t>(t)][static_cast<size_t>(c)]);
    out.witness = make_certificate(p, lists);
    return out;
}

}  // namespace twins
