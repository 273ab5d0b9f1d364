#include "twins/constructive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

#include "twins/errors.hpp"

namespace twins {

namespace {

using boost::multiprecision::cpp_int;

bool width_condition(long long m_cand, long long n, int big_r) {
    // M^(2R-1) >= n^(R-1), evaluated exactly
    cpp_int lhs = boost::multiprecision::pow(cpp_int(m_cand), 2 * big_r - 1);
    cpp_int rhs = boost::multiprecision::pow(cpp_int(n), big_r - 1);
    return lhs >= rhs;
}

}  // namespace

round_plan round_plan::derive(long long n, int r) {
    if (n < 1) throw empty_sequence_error("cannot plan rounds for an empty host");
    if (r < 2) throw twins_error("multiplicity must be at least 2");
    int big_r = static_cast<int>(binomial(2 * r - 1, r));

    // start just below the real-valued root, then walk up to the exact cap
    double guess = std::pow(static_cast<double>(n),
                            static_cast<double>(big_r - 1) / (2.0 * big_r - 1.0));
    long long m = std::max<long long>(1, static_cast<long long>(guess) - 2);
    while (!width_condition(m, n, big_r)) ++m;
    while (m > 1 && width_condition(m - 1, n, big_r)) --m;

    round_plan plan;
    plan.M = m;
    plan.N = std::min(n / m, n / (2 * r - 1));
    plan.block_width_cap = 2 * m;
    plan.per_round_consumption_cap = 2 * r * plan.N;
    plan.rounds_target = m / (2 * r);
    return plan;
}

round_trace run_round(const permutation& host, const std::vector<int>& alive_positions,
                      int r, const round_plan& plan) {
    if (r < 2) throw twins_error("multiplicity must be at least 2");
    const int group = 2 * r - 1;
    const long long need = static_cast<long long>(group) * plan.N;
    if (plan.N < 1 || static_cast<long long>(alive_positions.size()) < need)
        throw twins_error("round needs (2r-1)N remaining elements");

    round_trace trace;

    // A: leftmost (2r-1)N of the remaining elements
    std::vector<std::pair<long long, int>> a_elems;  // (value, position)
    a_elems.reserve(need);
    for (long long i = 0; i < need; ++i) {
        int pos = alive_positions[static_cast<size_t>(i)];
        long long v = host.value_at(pos);
        trace.a_values.push_back(v);
        a_elems.emplace_back(v, pos);
    }
    std::sort(a_elems.begin(), a_elems.end());

    // N value-consecutive blocks of 2r-1 each
    const int nb = static_cast<int>(plan.N);
    trace.blocks.assign(nb, {});
    for (int b = 0; b < nb; ++b) {
        for (int j = 0; j < group; ++j)
            trace.blocks[b].push_back(a_elems[static_cast<size_t>(b) * group + j].first);
        long long width = trace.blocks[b].back() - trace.blocks[b].front();
        if (width <= plan.block_width_cap) trace.narrow_block_ids.push_back(b);
    }
    if (trace.narrow_block_ids.empty())
        throw no_narrow_blocks_error("every block in this round is wider than 2M");
    trace.narrow_warning = 2 * static_cast<long long>(trace.narrow_block_ids.size()) < plan.N;

    // the 2r-1 subsequences: j-th smallest element of each narrow block, read
    // in host position order and renamed to its 0-based block id
    std::vector<std::vector<int>> elem_pos(group, std::vector<int>(nb, 0));
    trace.renamed.assign(group, {});
    for (int j = 0; j < group; ++j) {
        std::vector<std::pair<int, long long>> by_pos;  // (position, block id)
        by_pos.reserve(trace.narrow_block_ids.size());
        for (int b : trace.narrow_block_ids) {
            const auto& e = a_elems[static_cast<size_t>(b) * group + j];
            elem_pos[j][b] = e.second;
            by_pos.emplace_back(e.second, b);
        }
        std::sort(by_pos.begin(), by_pos.end());
        for (const auto& pb : by_pos) trace.renamed[j].push_back(pb.second);
    }

    std::vector<permutation> seqs;
    seqs.reserve(group);
    for (const auto& seq : trace.renamed) seqs.emplace_back(seq);
    trace.selection = best_r_of_2r_minus_1(seqs, r);

    // twins: for the t-th chosen j, the j-th smallest element of each common
    // block; common blocks are listed in an order that ascends in every
    // chosen subsequence, hence in host position for each twin
    std::vector<std::vector<int>> lists(r);
    for (int t = 0; t < r; ++t) {
        int j = trace.selection.chosen_indices[t] - 1;
        for (long long b : trace.selection.result.elements)
            lists[t].push_back(elem_pos[j][static_cast<int>(b)]);
        if (!std::is_sorted(lists[t].begin(), lists[t].end()))
            throw construction_bug_error("twin positions out of order");
    }
    trace.round_cert = make_certificate(host, lists);
    if (!verify(host, trace.round_cert))
        throw construction_bug_error("round output failed verification");
    if (!is_w_narrow(host, trace.round_cert, plan.block_width_cap))
        throw construction_bug_error("round output is not 2M-narrow");

    // removal set: all of A, plus every remaining element whose value falls
    // in [min_c, min_c + 2M - 1] for some column c; interval length 2M plus
    // narrowness is what forces later values past each column entirely
    std::vector<std::pair<long long, long long>> intervals;
    int k = trace.round_cert.k;
    for (int c = 0; c < k; ++c) {
        long long min_c = host.value_at(lists[0][c]);
        for (int t = 1; t < r; ++t)
            min_c = std::min(min_c, host.value_at(lists[t][c]));
        intervals.emplace_back(min_c, min_c + plan.block_width_cap - 1);
    }
    std::sort(intervals.begin(), intervals.end());
    std::vector<std::pair<long long, long long>> merged;
    for (const auto& iv : intervals) {
        if (!merged.empty() && iv.first <= merged.back().second)
            merged.back().second = std::max(merged.back().second, iv.second);
        else
            merged.push_back(iv);
    }
    auto in_interval = [&merged](long long v) {
        auto it = std::upper_bound(merged.begin(), merged.end(),
                                   std::make_pair(v, std::numeric_limits<long long>::max()));
        return it != merged.begin() && v <= std::prev(it)->second;
    };

    for (size_t i = 0; i < alive_positions.size(); ++i) {
        int pos = alive_positions[i];
        long long v = host.value_at(pos);
        if (static_cast<long long>(i) < need || in_interval(v)) {
            trace.removed_positions.push_back(pos);
            trace.removed_values.push_back(v);
        }
    }
    std::sort(trace.removed_values.begin(), trace.removed_values.end());
    if (static_cast<long long>(trace.removed_positions.size()) >
        need + static_cast<long long>(k) * plan.block_width_cap)
        throw construction_bug_error("removal exceeded A plus k value intervals");
    return trace;
}

find_result find_constructive(const permutation& host, int r) {
    if (r < 2) throw twins_error("multiplicity must be at least 2");
    const long long n = host.size();
    if (n == 0) throw empty_sequence_error("cannot search an empty host");
    if (!host.over_contiguous_range())
        throw twins_error("constructive search expects a host over 1..n");

    const int group = 2 * r - 1;
    find_result out;

    if (n < 4LL * group) {
        // too small for the width filter to bite: one unfiltered round, or
        // bare singletons when even a single block does not fit
        if (n >= group) {
            out.plan.M = n;
            out.plan.N = n / group;
            out.plan.block_width_cap = 2 * n;
            out.plan.per_round_consumption_cap = 2LL * r * out.plan.N;
            out.plan.rounds_target = 1;
            std::vector<int> alive(static_cast<size_t>(n));
            for (long long i = 0; i < n; ++i) alive[static_cast<size_t>(i)] = static_cast<int>(i) + 1;
            round_trace trace = run_round(host, alive, r, out.plan);
            out.cert = trace.round_cert;
            out.traces.push_back(std::move(trace));
        } else if (n >= r) {
            std::vector<std::vector<int>> lists(r);
            for (int t = 0; t < r; ++t) lists[t] = {t + 1};
            out.cert = make_certificate(host, lists);
        } else {
            out.cert.r = r;
            out.cert.index_lists.assign(r, {});
            out.cert.host_n = static_cast<int>(n);
        }
        return out;
    }

    out.plan = round_plan::derive(n, r);
    std::vector<int> alive(static_cast<size_t>(n));
    for (long long i = 0; i < n; ++i) alive[static_cast<size_t>(i)] = static_cast<int>(i) + 1;

    bool first = true;
    const long long need = static_cast<long long>(group) * out.plan.N;
    while (static_cast<long long>(alive.size()) >= need) {
        round_trace trace = run_round(host, alive, r, out.plan);
        if (trace.narrow_warning)
            throw construction_bug_error("fewer than N/2 narrow blocks on a 1..n host");

        if (first) {
            out.cert = trace.round_cert;
            first = false;
        } else {
            if (!can_concatenate(host, out.cert, trace.round_cert))
                throw construction_bug_error("round certificate does not concatenate");
            out.cert = concatenate(host, out.cert, trace.round_cert);
        }

        std::vector<bool> dead(host.size() + 1, false);
        for (int pos : trace.removed_positions) dead[static_cast<size_t>(pos)] = true;
        std::vector<int> next_alive;
        next_alive.reserve(alive.size() - trace.removed_positions.size());
        for (int pos : alive)
            if (!dead[static_cast<size_t>(pos)]) next_alive.push_back(pos);
        alive.swap(next_alive);
        out.traces.push_back(std::move(trace));
    }
    return out;
}

}  // namespace twins
