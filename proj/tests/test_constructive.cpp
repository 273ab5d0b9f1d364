#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "doctest.h"

#include "twins/certificate.hpp"
#include "twins/constructive.hpp"
#include "twins/errors.hpp"
#include "twins/exact.hpp"
#include "worked_example.hpp"

using twins::can_concatenate;
using twins::find_constructive;
using twins::is_w_narrow;
using twins::permutation;
using twins::round_plan;
using twins::round_trace;
using twins::run_round;
using twins::verify;

namespace {

std::vector<int> all_positions(int n) {
    std::vector<int> out(static_cast<size_t>(n));
    std::iota(out.begin(), out.end(), 1);
    return out;
}

}  // namespace

TEST_CASE("plan sizes follow the exact integer root") {
    round_plan p30 = round_plan::derive(30, 3);
    // M must satisfy M^19 >= 30^9: 5^19 falls short, 6^19 does not
    CHECK(p30.M == 6);
    CHECK(p30.block_width_cap == 12);

    round_plan p900 = round_plan::derive(900, 2);
    // M^5 >= 900^2: 15^5 = 759375 < 810000, 16^5 = 1048576
    CHECK(p900.M == 16);
    CHECK(p900.N == std::min<long long>(900 / 16, 900 / 3));

    round_plan big = round_plan::derive(100000, 2);
    CHECK(big.M * big.M * big.M * big.M * big.M >= 100000LL * 100000LL);
    long long m1 = big.M - 1;
    CHECK(m1 * m1 * m1 * m1 * m1 < 100000LL * 100000LL);
    CHECK(big.per_round_consumption_cap == 4 * big.N);
    CHECK(big.rounds_target == big.M / 4);
}

TEST_CASE("a round on the identity keeps every block") {
    permutation id = permutation::identity(30);
    round_plan plan = round_plan::derive(30, 2);
    round_trace tr = run_round(id, all_positions(30), 2, plan);
    CHECK(static_cast<long long>(tr.blocks.size()) == plan.N);
    CHECK(static_cast<long long>(tr.narrow_block_ids.size()) == plan.N);
    CHECK_FALSE(tr.narrow_warning);
    // identical block sequences: the best pair keeps all N blocks
    CHECK(tr.round_cert.k == plan.N);
    CHECK(verify(id, tr.round_cert));
    // columns come from one block of 3 consecutive values
    CHECK(is_w_narrow(id, tr.round_cert, 2));
}

TEST_CASE("the worked host reproduces the hand-derived block sequences") {
    permutation h(fixture::host30());
    round_plan plan;
    plan.M = 5;
    plan.N = 6;
    plan.block_width_cap = 10;
    plan.per_round_consumption_cap = 36;
    plan.rounds_target = 1;

    round_trace tr = run_round(h, all_positions(30), 3, plan);
    CHECK(tr.blocks.size() == 6);
    CHECK(tr.narrow_block_ids.size() == 6);  // a host over 1..30 has width-4 blocks
    CHECK(tr.renamed == fixture::renamed_expected());
    CHECK(tr.selection.result.length == 3);
    CHECK(tr.round_cert.k == 3);
    CHECK(verify(h, tr.round_cert));
    CHECK(is_w_narrow(h, tr.round_cert, 10));
}

TEST_CASE("round removal is bounded and well-formed") {
    for (uint64_t seed = 0; seed < 25; ++seed) {
        int n = 60 + static_cast<int>(seed % 5) * 37;
        int r = 2 + static_cast<int>(seed % 2);
        permutation h = permutation::random(n, seed);
        round_plan plan = round_plan::derive(n, r);
        round_trace tr = run_round(h, all_positions(n), r, plan);

        const long long group = 2 * r - 1;
        CHECK(static_cast<long long>(tr.a_values.size()) == group * plan.N);
        CHECK(std::is_sorted(tr.removed_values.begin(), tr.removed_values.end()));
        CHECK(tr.removed_positions.size() == tr.removed_values.size());
        CHECK(static_cast<long long>(tr.removed_positions.size()) >= group * plan.N);
        CHECK(static_cast<long long>(tr.removed_positions.size()) <=
              group * plan.N + static_cast<long long>(tr.round_cert.k) * plan.block_width_cap);

        // everything in A is removed
        std::set<long long> removed(tr.removed_values.begin(), tr.removed_values.end());
        for (long long v : tr.a_values) CHECK(removed.count(v) == 1);
        // twins are 2M-narrow
        CHECK(is_w_narrow(h, tr.round_cert, plan.block_width_cap));
    }
}

TEST_CASE("rounds concatenate into one verified certificate") {
    for (uint64_t seed = 0; seed < 12; ++seed) {
        int n = 80 + static_cast<int>(seed) * 40;
        for (int r : {2, 3}) {
            permutation h = permutation::random(n, seed * 2 + static_cast<uint64_t>(r));
            auto res = find_constructive(h, r);
            CHECK(verify(h, res.cert));
            CHECK(res.cert.r == r);

            long long total = 0;
            for (const auto& tr : res.traces) {
                total += tr.round_cert.k;
                // at least half the blocks survive the narrowness filter
                CHECK(2 * static_cast<long long>(tr.narrow_block_ids.size()) >= res.plan.N);
                CHECK(static_cast<long long>(tr.removed_positions.size()) <=
                      (2 * r - 1) * res.plan.N + tr.round_cert.k * res.plan.block_width_cap);
            }
            CHECK(total == res.cert.k);
            CHECK(res.cert.k >= 1);

            // round certificates concatenate pairwise, not just adjacently
            for (size_t i = 0; i < res.traces.size(); ++i)
                for (size_t j = i + 1; j < res.traces.size(); ++j)
                    CHECK(can_concatenate(h, res.traces[i].round_cert,
                                          res.traces[j].round_cert));
        }
    }
}

TEST_CASE("construction never beats the oracle on small hosts") {
    for (uint64_t seed = 0; seed < 30; ++seed) {
        int n = 8 + static_cast<int>(seed % 5);
        permutation h = permutation::random(n, seed + 500);
        for (int r : {2, 3}) {
            auto res = find_constructive(h, r);
            CHECK(verify(h, res.cert));
            CHECK(res.cert.k <= twins::exact_twins_length(h, r).k);
        }
    }
}

TEST_CASE("degenerate sizes fall back cleanly") {
    // one unfiltered round when a single batch fits
    auto res7 = find_constructive(permutation::random(7, 3), 2);
    CHECK(res7.traces.size() == 1);
    CHECK(res7.cert.k >= 1);
    CHECK(verify(permutation::random(7, 3), res7.cert));

    // singletons when not even one block of 2r-1 fits
    auto res3 = find_constructive(permutation({2, 3, 1}), 3);
    CHECK(res3.cert.k == 1);
    CHECK(verify(permutation({2, 3, 1}), res3.cert));

    // empty twins when the host is shorter than the multiplicity
    auto res2 = find_constructive(permutation({2, 1}), 3);
    CHECK(res2.cert.k == 0);
    CHECK(verify(permutation({2, 1}), res2.cert));

    auto res5 = find_constructive(permutation({5, 4, 3, 2, 1}), 3);
    CHECK(res5.cert.k == 1);
    CHECK(verify(permutation({5, 4, 3, 2, 1}), res5.cert));
}

TEST_CASE("hosts must cover a contiguous range") {
    CHECK_THROWS_AS(find_constructive(permutation({2, 4, 6}), 2), twins::twins_error);
}

TEST_CASE("lengths grow with the host") {
    // spot check that more room gives at least as long twins on average
    double small_avg = 0, large_avg = 0;
    for (uint64_t seed = 0; seed < 10; ++seed) {
        small_avg += static_cast<double>(
            find_constructive(permutation::random(200, seed), 2).cert.k);
        large_avg += static_cast<double>(
            find_constructive(permutation::random(3200, seed), 2).cert.k);
    }
    CHECK(large_avg > small_avg);
}
