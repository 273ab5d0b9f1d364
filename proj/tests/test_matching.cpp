#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "doctest.h"

#include "twins/certificate.hpp"
#include "twins/errors.hpp"
#include "twins/exact.hpp"
#include "twins/matching.hpp"
#include "twins/permutation.hpp"

using namespace twins;
using boost::multiprecision::cpp_int;

namespace {

matching_graph graph_from_edges(long long nb, std::vector<std::pair<int, int>> edges) {
    matching_graph g;
    g.nb = nb;
    g.counts.assign(static_cast<size_t>(nb * nb), 0);
    std::sort(edges.begin(), edges.end());
    g.edges = std::move(edges);
    g.row_degree.assign(static_cast<size_t>(nb), 0);
    g.col_degree.assign(static_cast<size_t>(nb), 0);
    for (const auto& e : g.edges) {
        ++g.row_degree[static_cast<size_t>(e.first)];
        ++g.col_degree[static_cast<size_t>(e.second)];
    }
    return g;
}

cpp_int factorial(int m) {
    cpp_int f = 1;
    for (int i = 2; i <= m; ++i) f *= i;
    return f;
}

}  // namespace

TEST_CASE("grid parameters follow the dimension formula") {
    grid_params p2 = grid_params::derive(10000, 2);
    CHECK(p2.a == 27);
    CHECK(p2.num_blocks == 370);
    CHECK(p2.degree_cutoff == 7);

    grid_params p3 = grid_params::derive(10000, 3);
    CHECK(p3.a == 57);
    CHECK(p3.num_blocks == 175);

    grid_params small = grid_params::derive(100, 2);
    CHECK(small.a == 6);
    CHECK(small.num_blocks == 16);

    grid_params pinned = grid_params::derive(16, 2, 5, 4);
    CHECK(pinned.a == 4);
    CHECK(pinned.num_blocks == 4);
    CHECK(pinned.degree_cutoff == 5);

    grid_params tiny = grid_params::derive(3, 2);
    CHECK(tiny.a == 2);
    CHECK(tiny.num_blocks == 1);

    CHECK_THROWS_AS(grid_params::derive(1, 2), block_too_small_error);   // no full block
    CHECK_THROWS_AS(grid_params::derive(10, 3, 7, 2), block_too_small_error);  // a < r
    CHECK_THROWS_AS(grid_params::derive(0, 2), empty_sequence_error);
    CHECK_THROWS_AS(grid_params::derive(10, 1), twins_error);
}

TEST_CASE("the block graph of the identity is the diagonal") {
    permutation id = permutation::identity(16);
    grid_params params = grid_params::derive(16, 2, 7, 4);
    matching_graph g = build_graph(id, params);

    CHECK(g.nb == 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(g.counts[static_cast<size_t>(i * 4 + j)] == (i == j ? 4 : 0));

    std::vector<std::pair<int, int>> diag = {{0, 0}, {1, 1}, {2, 2}, {3, 3}};
    CHECK(g.edges == diag);
    for (int i = 0; i < 4; ++i) {
        CHECK(g.row_degree[static_cast<size_t>(i)] == 1);
        CHECK(g.col_degree[static_cast<size_t>(i)] == 1);
    }
    std::map<long long, long long> ones = {{1, 8}};
    CHECK(g.degree_histogram() == ones);
}

TEST_CASE("the block graph of the reversal is the anti-diagonal") {
    std::vector<long long> vals;
    for (int v = 16; v >= 1; --v) vals.push_back(v);
    permutation rev{vals};
    matching_graph g = build_graph(rev, grid_params::derive(16, 2, 7, 4));

    std::vector<std::pair<int, int>> anti = {{0, 3}, {1, 2}, {2, 1}, {3, 0}};
    CHECK(g.edges == anti);
    for (int i = 0; i < 4; ++i)
        CHECK(g.counts[static_cast<size_t>(i * 4 + (3 - i))] == 4);
}

TEST_CASE("cell occupancies conserve the block size") {
    for (int r = 2; r <= 3; ++r) {
        grid_params params = grid_params::derive(100, r);
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            permutation host = permutation::random(100, 900 + seed * 7 + r);
            matching_graph g = build_graph(host, params);
            long long nb = g.nb;
            for (long long i = 0; i < nb; ++i) {
                long long row_sum = 0, col_sum = 0;
                for (long long j = 0; j < nb; ++j) {
                    row_sum += g.counts[static_cast<size_t>(i * nb + j)];
                    col_sum += g.counts[static_cast<size_t>(j * nb + i)];
                }
                CHECK(row_sum == params.a);
                CHECK(col_sum == params.a);
            }
        }
    }
}

TEST_CASE("pruning removes high-degree hubs") {
    matching_graph star = graph_from_edges(
        3, {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {2, 0}});

    matching_result strict = greedy_matching(star, 3);
    CHECK(strict.e_prime == 0);
    CHECK(strict.delta_prime == 0);
    CHECK(strict.edges.empty());

    matching_result loose = greedy_matching(star, 4);
    CHECK(loose.e_prime == 5);
    CHECK(loose.delta_prime == 3);
    REQUIRE(loose.edges.size() == 1);
    CHECK(loose.edges[0] == std::pair<int, int>(0, 0));

    CHECK_THROWS_AS(greedy_matching(star, 0), twins_error);
}

TEST_CASE("a perfect diagonal matches completely") {
    std::vector<std::pair<int, int>> diag;
    for (int i = 0; i < 10; ++i) diag.emplace_back(i, i);
    matching_graph g = graph_from_edges(10, diag);
    matching_result m = greedy_matching(g, 7);
    CHECK(m.e_prime == 10);
    CHECK(m.delta_prime == 1);
    CHECK(m.edges == diag);
}

TEST_CASE("greedy matchings are maximal and meet the degree bound") {
    const int nb = 12;
    const int cutoff = 7;
    for (int pct : {5, 15, 35}) {
        for (std::uint64_t seed = 0; seed < 15; ++seed) {
            std::mt19937_64 gen(4000 + seed * 100 + pct);
            std::vector<std::pair<int, int>> edges;
            for (int i = 0; i < nb; ++i)
                for (int j = 0; j < nb; ++j)
                    if (uniform_below(gen, 100) < static_cast<std::uint64_t>(pct))
                        edges.emplace_back(i, j);
            matching_graph g = graph_from_edges(nb, edges);
            matching_result m = greedy_matching(g, cutoff);

            // recompute the pruned graph from scratch
            std::vector<std::pair<int, int>> kept;
            for (const auto& e : g.edges)
                if (g.row_degree[static_cast<size_t>(e.first)] < cutoff &&
                    g.col_degree[static_cast<size_t>(e.second)] < cutoff)
                    kept.push_back(e);
            CHECK(m.e_prime == static_cast<long long>(kept.size()));

            std::vector<long long> rd(nb, 0), cd(nb, 0);
            long long want_delta = 0;
            for (const auto& e : kept) {
                want_delta = std::max(want_delta, ++rd[static_cast<size_t>(e.first)]);
                want_delta = std::max(want_delta, ++cd[static_cast<size_t>(e.second)]);
            }
            CHECK(m.delta_prime == want_delta);

            std::vector<bool> row_used(nb, false), col_used(nb, false);
            for (const auto& e : m.edges) {
                CHECK(std::binary_search(kept.begin(), kept.end(), e));
                CHECK(!row_used[static_cast<size_t>(e.first)]);
                CHECK(!col_used[static_cast<size_t>(e.second)]);
                row_used[static_cast<size_t>(e.first)] = true;
                col_used[static_cast<size_t>(e.second)] = true;
            }
            for (const auto& e : kept)  // maximal: nothing addable
                CHECK((row_used[static_cast<size_t>(e.first)] ||
                       col_used[static_cast<size_t>(e.second)]));
            if (m.e_prime > 0)
                CHECK(static_cast<long long>(m.edges.size()) * 2 * m.delta_prime >=
                      m.e_prime);
        }
    }
}

TEST_CASE("extraction turns the diagonal into increasing twins") {
    permutation id = permutation::identity(16);
    grid_params params = grid_params::derive(16, 2, 7, 4);
    matching_result m = greedy_matching(build_graph(id, params), params.degree_cutoff);
    twins_certificate cert = extract_twins(id, params, m);

    CHECK(cert.k == 4);
    CHECK(verify(id, cert));
    CHECK(cert.index_lists[0] == std::vector<int>{1, 5, 9, 13});
    CHECK(cert.index_lists[1] == std::vector<int>{2, 6, 10, 14});
    CHECK(cert.pattern == std::vector<int>{1, 2, 3, 4});

    permutation big = permutation::identity(100);
    grid_params bp = grid_params::derive(100, 2);
    matching_outcome out = find_matching(big, 2);
    CHECK(out.cert.k == bp.num_blocks);
    CHECK(verify(big, out.cert));
}

TEST_CASE("extraction of a single edge gives one column") {
    permutation id = permutation::identity(4);
    grid_params params = grid_params::derive(4, 2, 7, 2);
    matching_result one;
    one.edges = {{0, 0}};
    twins_certificate cert = extract_twins(id, params, one);
    CHECK(cert.k == 1);
    CHECK(cert.index_lists[0] == std::vector<int>{1});
    CHECK(cert.index_lists[1] == std::vector<int>{2});
    CHECK(verify(id, cert));
}

TEST_CASE("defective matchings are rejected") {
    permutation id = permutation::identity(16);
    grid_params params = grid_params::derive(16, 2, 7, 4);

    matching_result bad;
    bad.edges = {{0, 0}, {0, 1}};  // shared position block
    CHECK_THROWS_AS(extract_twins(id, params, bad), invalid_matching_error);

    bad.edges = {{0, 0}, {1, 0}};  // shared value block
    CHECK_THROWS_AS(extract_twins(id, params, bad), invalid_matching_error);

    bad.edges = {{4, 0}};  // outside the grid
    CHECK_THROWS_AS(extract_twins(id, params, bad), invalid_matching_error);

    bad.edges = {{0, 1}};  // empty cell on the identity
    CHECK_THROWS_AS(extract_twins(id, params, bad), invalid_matching_error);

    matching_result none;
    twins_certificate empty = extract_twins(id, params, none);
    CHECK(empty.k == 0);
    CHECK(empty.r == 2);
    CHECK(empty.host_n == 16);
    CHECK(verify(id, empty));
}

TEST_CASE("the matching finder verifies on random hosts") {
    const int n = 2000;
    for (int r = 2; r <= 3; ++r) {
        grid_params params = grid_params::derive(n, r);
        long long used = params.num_blocks * params.a;
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            permutation host = permutation::random(n, 7100 + 31 * seed + r);
            matching_outcome out = find_matching(host, r);
            CHECK(verify(host, out.cert));
            CHECK(out.cert.r == r);
            CHECK(out.cert.k == out.matching_size);
            CHECK(out.cert.k >= 1);
            CHECK(out.pruned_edges <= out.total_edges);
            // each column sits inside one value block of the used prefix
            CHECK(is_w_narrow(host, out.cert, params.a - 1 + (n - used)));
        }
    }
}

TEST_CASE("expected twin counts match exhaustive enumeration") {
    CHECK(expected_twin_count(6, 2, 2) == cpp_rational(45, 2));
    CHECK(expected_twin_count(5, 2, 2) == cpp_rational(15, 2));
    CHECK(expected_twin_count(4, 2, 2) == cpp_rational(3, 2));
    CHECK(expected_twin_count(4, 1, 2) == 6);
    CHECK(expected_twin_count(6, 1, 3) == 20);
    CHECK(expected_twin_count(6, 3, 2) == cpp_rational(5, 3));
    CHECK(expected_twin_count(12, 3, 2) == 1540);
    CHECK(expected_twin_count(30, 3, 2) == 989625);

    // (rk)! / (r! (k!)^(2r-1)) with test-side factorials when n = rk
    for (int r = 2; r <= 3; ++r)
        for (int k = 1; k <= 3; ++k) {
            cpp_int den = factorial(r);
            for (int i = 0; i < 2 * r - 1; ++i) den *= factorial(k);
            CHECK(expected_twin_count(r * k, k, r) ==
                  cpp_rational(factorial(r * k), den));
        }

    auto exhaustive_sum = [](int n, int k, int r) {
        std::vector<long long> vals(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) vals[static_cast<size_t>(i)] = i + 1;
        unsigned long long total = 0;
        do {
            total += count_twins_families(permutation{vals}, k, r);
        } while (std::next_permutation(vals.begin(), vals.end()));
        return total;
    };
    CHECK(exhaustive_sum(6, 2, 2) == 16200ULL);  // 720 * 45/2
    CHECK(exhaustive_sum(5, 2, 2) == 900ULL);    // 120 * 15/2
    CHECK(exhaustive_sum(6, 1, 3) == 14400ULL);  // 720 * 20
    CHECK(count_twins_families(permutation::identity(6), 1, 3) == 20ULL);

    CHECK_THROWS_AS(expected_twin_count(3, 2, 2), infeasible_length_error);
    CHECK_THROWS_AS(expected_twin_count(5, 0, 2), twins_error);
}

TEST_CASE("position match probability") {
    for (int r = 2; r <= 4; ++r) CHECK(position_match_probability(1, r) == 1);
    CHECK(position_match_probability(2, 2) == cpp_rational(1, 2));
    CHECK(position_match_probability(3, 2) == cpp_rational(1, 6));
    CHECK(position_match_probability(4, 2) == cpp_rational(1, 24));
    CHECK(position_match_probability(3, 3) == cpp_rational(1, 36));
    CHECK(position_match_probability(2, 3) == cpp_rational(1, 4));

    // exhaustive n = 4, r = 2: positions {1,2} vs {3,4}
    {
        std::vector<long long> vals = {1, 2, 3, 4};
        int good = 0, all = 0;
        do {
            permutation p{vals};
            ++all;
            if (is_similar(p.values_at({1, 2}), p.values_at({3, 4}))) ++good;
        } while (std::next_permutation(vals.begin(), vals.end()));
        CHECK(all == 24);
        CHECK(good == 12);  // probability 1/2
    }

    // exhaustive n = 6, r = 3: three disjoint pairs, all same direction
    {
        std::vector<long long> vals = {1, 2, 3, 4, 5, 6};
        int good = 0;
        do {
            permutation p{vals};
            auto a = p.values_at({1, 2});
            auto b = p.values_at({3, 4});
            auto c = p.values_at({5, 6});
            if (is_similar(a, b) && is_similar(a, c) && is_similar(b, c)) ++good;
        } while (std::next_permutation(vals.begin(), vals.end()));
        CHECK(good == 180);  // 720 / 4
    }

    // monte carlo for the same pair event, 4 sigma tolerance
    {
        const int samples = 20000;
        int good = 0;
        for (int s = 0; s < samples; ++s) {
            permutation p = permutation::random(6, 500000 + static_cast<std::uint64_t>(s));
            if (is_similar(p.values_at({1, 2}), p.values_at({3, 4}))) ++good;
        }
        double phat = static_cast<double>(good) / samples;
        CHECK(std::fabs(phat - 0.5) <= 4.0 * std::sqrt(0.25 / samples));
    }

    CHECK_THROWS_AS(position_match_probability(0, 2), twins_error);
    CHECK_THROWS_AS(position_match_probability(2, 1), twins_error);
}

TEST_CASE("the first-moment threshold certifies vanishing expectation") {
    CHECK(upper_threshold(1, 2) == 6);
    CHECK(upper_threshold(10000, 2) == 2524);
    CHECK(upper_threshold(1000000, 2) == 54366);
    CHECK(upper_threshold(10000, 3) == 1366);

    long long prev2 = 0, prev3 = 0;
    for (long long n = 1; n <= 2000; n += 37) {
        long long u2 = upper_threshold(n, 2), u3 = upper_threshold(n, 3);
        CHECK(u2 >= prev2);
        CHECK(u3 >= prev3);
        prev2 = u2;
        prev3 = u3;
    }

    for (int r = 2; r <= 3; ++r) {
        long long n = 10000;
        long long k = upper_threshold(n, r);
        REQUIRE(r * k <= n);
        CHECK(log_expected_twin_count(n, k, r) <
              -(2.0 * r - 1.0) * static_cast<double>(k) * std::log(2.0));
    }

    CHECK(log_expected_twin_count(3, 2, 2) == -HUGE_VAL);
}

TEST_CASE("log and exact moments agree") {
    CHECK(std::fabs(log_expected_twin_count(30, 3, 2) - std::log(989625.0)) < 1e-9);

    cpp_rational e = expected_twin_count(100, 5, 2);
    double as_double = e.convert_to<double>();
    CHECK(std::fabs(log_expected_twin_count(100, 5, 2) - std::log(as_double)) < 1e-9);
}
