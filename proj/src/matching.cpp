#include "twins/matching.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "twins/errors.hpp"

namespace twins {

using boost::multiprecision::cpp_int;

grid_params grid_params::derive(long long n, int r, int degree_cutoff, long long a_override) {
    if (n < 1) throw empty_sequence_error("cannot build a grid over an empty host");
    if (r < 2) throw twins_error("multiplicity must be at least 2");
    grid_params p;
    p.n = n;
    p.r = r;
    p.degree_cutoff = degree_cutoff;
    if (a_override > 0) {
        p.a = a_override;
    } else {
        double rf = 1.0;
        for (int i = 2; i <= r; ++i) rf *= i;
        double a_real = std::pow(rf, 1.0 / (2.0 * r - 1.0)) *
                        std::pow(static_cast<double>(n),
                                 (r - 1.0) / (2.0 * r - 1.0));
        p.a = std::max<long long>(r, std::llround(a_real));
    }
    if (p.a < r) throw block_too_small_error("block side smaller than the multiplicity");
    p.num_blocks = n / p.a;
    if (p.num_blocks < 1) throw block_too_small_error("host shorter than one block");
    return p;
}

std::map<long long, long long> matching_graph::degree_histogram() const {
    std::map<long long, long long> hist;
    for (long long d : row_degree) ++hist[d];
    for (long long d : col_degree) ++hist[d];
    return hist;
}

matching_graph build_graph(const permutation& host, const grid_params& params) {
    const long long nb = params.num_blocks;
    const long long a = params.a;
    const long long used = nb * a;
    if (used > static_cast<long long>(host.size()))
        throw invalid_index_error("grid larger than the host");

    // rank-reduce the used prefix so each value block gets exactly a values
    std::vector<std::pair<long long, long long>> by_value;
    by_value.reserve(static_cast<size_t>(used));
    for (long long p = 1; p <= used; ++p)
        by_value.emplace_back(host.value_at(static_cast<int>(p)), p);
    std::sort(by_value.begin(), by_value.end());

    matching_graph g;
    g.nb = nb;
    g.counts.assign(static_cast<size_t>(nb * nb), 0);
    for (long long rank = 0; rank < used; ++rank) {
        long long pos = by_value[static_cast<size_t>(rank)].second;
        long long i = (pos - 1) / a;
        long long j = rank / a;
        ++g.counts[static_cast<size_t>(i * nb + j)];
    }

    g.row_degree.assign(static_cast<size_t>(nb), 0);
    g.col_degree.assign(static_cast<size_t>(nb), 0);
    for (long long i = 0; i < nb; ++i)
        for (long long j = 0; j < nb; ++j)
            if (g.counts[static_cast<size_t>(i * nb + j)] >= params.r) {
                g.edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
                ++g.row_degree[static_cast<size_t>(i)];
                ++g.col_degree[static_cast<size_t>(j)];
            }
    return g;
}

matching_result greedy_matching(const matching_graph& g, int degree_cutoff) {
    if (degree_cutoff < 1) throw twins_error("degree cutoff must be positive");
    matching_result out;

    std::vector<std::pair<int, int>> kept;
    for (const auto& e : g.edges)
        if (g.row_degree[static_cast<size_t>(e.first)] < degree_cutoff &&
            g.col_degree[static_cast<size_t>(e.second)] < degree_cutoff)
            kept.push_back(e);
    out.e_prime = static_cast<long long>(kept.size());

    std::vector<long long> rd(static_cast<size_t>(g.nb), 0), cd(static_cast<size_t>(g.nb), 0);
    for (const auto& e : kept) {
        ++rd[static_cast<size_t>(e.first)];
        ++cd[static_cast<size_t>(e.second)];
    }
    for (long long d : rd) out.delta_prime = std::max(out.delta_prime, d);
    for (long long d : cd) out.delta_prime = std::max(out.delta_prime, d);

    std::vector<bool> used_row(static_cast<size_t>(g.nb), false);
    std::vector<bool> used_col(static_cast<size_t>(g.nb), false);
    for (const auto& e : kept) {
        if (used_row[static_cast<size_t>(e.first)] || used_col[static_cast<size_t>(e.second)])
            continue;
        used_row[static_cast<size_t>(e.first)] = true;
        used_col[static_cast<size_t>(e.second)] = true;
        out.edges.push_back(e);
    }

    // maximality gives nu >= e' / (2 delta')
    if (out.e_prime > 0 &&
        static_cast<long long>(out.edges.size()) * 2 * out.delta_prime < out.e_prime)
        throw construction_bug_error("matching below the maximality bound");
    return out;
}

twins_certificate extract_twins(const permutation& host, const grid_params& params,
                                const matching_result& m) {
    const long long nb = params.num_blocks;
    const long long a = params.a;
    const int r = params.r;
    const long long used = nb * a;
    if (used > static_cast<long long>(host.size()))
        throw invalid_index_error("grid larger than the host");

    std::vector<std::pair<int, int>> edges = m.edges;
    std::sort(edges.begin(), edges.end());
    std::vector<bool> seen_row(static_cast<size_t>(nb), false);
    std::vector<bool> seen_col(static_cast<size_t>(nb), false);
    for (const auto& e : edges) {
        if (e.first < 0 || e.first >= nb || e.second < 0 || e.second >= nb)
            throw invalid_matching_error("edge outside the grid");
        if (seen_row[static_cast<size_t>(e.first)] || seen_col[static_cast<size_t>(e.second)])
            throw invalid_matching_error("edges share a block");
        seen_row[static_cast<size_t>(e.first)] = true;
        seen_col[static_cast<size_t>(e.second)] = true;
    }

    std::vector<std::pair<long long, long long>> by_value;
    by_value.reserve(static_cast<size_t>(used));
    for (long long p = 1; p <= used; ++p)
        by_value.emplace_back(host.value_at(static_cast<int>(p)), p);
    std::sort(by_value.begin(), by_value.end());
    std::vector<long long> vrank(static_cast<size_t>(used) + 1, 0);  // by position
    for (long long rank = 0; rank < used; ++rank)
        vrank[static_cast<size_t>(by_value[static_cast<size_t>(rank)].second)] = rank;

    std::vector<std::vector<int>> lists(static_cast<size_t>(r));
    for (const auto& e : edges) {
        std::vector<int> cell;
        for (long long p = e.first * a + 1; p <= (e.first + 1) * a; ++p)
            if (vrank[static_cast<size_t>(p)] / a == e.second)
                cell.push_back(static_cast<int>(p));
        if (static_cast<int>(cell.size()) < r)
            throw invalid_matching_error("cell holds fewer than r elements");
        for (int t = 0; t < r; ++t) lists[static_cast<size_t>(t)].push_back(cell[static_cast<size_t>(t)]);
    }
    if (edges.empty()) {
        twins_certificate cert;
        cert.host_n = static_cast<int>(host.size());
        cert.r = r;
        cert.index_lists.assign(static_cast<size_t>(r), {});
        return cert;
    }
    return make_certificate(host, lists);
}

matching_outcome find_matching(const permutation& host, int r, int degree_cutoff) {
    matching_outcome out;
    out.params = grid_params::derive(static_cast<long long>(host.size()), r, degree_cutoff);
    matching_graph g = build_graph(host, out.params);
    matching_result m = greedy_matching(g, degree_cutoff);
    out.total_edges = static_cast<long long>(g.edges.size());
    out.pruned_edges = m.e_prime;
    out.delta_prime = m.delta_prime;
    out.matching_size = static_cast<long long>(m.edges.size());
    out.cert = extract_twins(host, out.params, m);
    if (!verify(host, out.cert))
        throw construction_bug_error("matching extraction failed verification");
    return out;
}

cpp_rational position_match_probability(int k, int r) {
    if (k < 1) throw twins_error("pattern length must be positive");
    if (r < 2) throw twins_error("multiplicity must be at least 2");
    cpp_int kf = 1;
    for (int i = 2; i <= k; ++i) kf *= i;
    cpp_int den = 1;
    for (int i = 1; i < r; ++i) den *= kf;
    return cpp_rational(1, den);
}

cpp_rational expected_twin_count(long long n, int k, int r) {
    if (n < 0) throw twins_error("host length must be nonnegative");
    if (k < 1) throw twins_error("pattern length must be positive");
    if (r < 2) throw twins_error("multiplicity must be at least 2");
    if (static_cast<long long>(r) * k > n)
        throw infeasible_length_error("rk exceeds the host length");
    cpp_int num = 1;
    for (long long v = n - static_cast<long long>(r) * k + 1; v <= n; ++v) num *= v;
    cpp_int kf = 1;
    for (int i = 2; i <= k; ++i) kf *= i;
    cpp_int den = 1;
    for (int i = 2; i <= r; ++i) den *= i;
    for (int i = 0; i < 2 * r - 1; ++i) den *= kf;
    return cpp_rational(num, den);
}

double log_expected_twin_count(long long n, long long k, int r) {
    if (n < 0) throw twins_error("host length must be nonnegative");
    if (k < 1) throw twins_error("pattern length must be positive");
    if (r < 2) throw twins_error("multiplicity must be at least 2");
    if (static_cast<long long>(r) * k > n) return -HUGE_VAL;
    double lg = std::lgamma(static_cast<double>(n) + 1.0) -
                std::lgamma(static_cast<double>(n - r * k) + 1.0) -
                std::lgamma(static_cast<double>(r) + 1.0) -
                (2.0 * r - 1.0) * std::lgamma(static_cast<double>(k) + 1.0);
    return lg;
}

long long upper_threshold(long long n, int r) {
    if (n < 1) throw empty_sequence_error("host length must be positive");
    if (r < 2) throw twins_error("multiplicity must be at least 2");
    double v = 2.0 * std::exp(1.0) *
               std::pow(static_cast<double>(n), static_cast<double>(r) / (2.0 * r - 1.0));
    return static_cast<long long>(std::ceil(v));
}

}  // namespace twins
