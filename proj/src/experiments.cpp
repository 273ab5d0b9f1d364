#include "twins/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "twins/baselines.hpp"
#include "twins/constructive.hpp"
#include "twins/errors.hpp"
#include "twins/exact.hpp"

namespace twins {

using boost::multiprecision::cpp_int;

finder_kind parse_finder(const std::string& name) {
    if (name == "constructive") return finder_kind::constructive;
    if (name == "matching") return finder_kind::matching;
    if (name == "baseline") return finder_kind::baseline;
    if (name == "exact") return finder_kind::exact_oracle;
    throw io_error("unknown finder: " + name);
}

std::string finder_name(finder_kind f) {
    switch (f) {
        case finder_kind::constructive: return "constructive";
        case finder_kind::matching: return "matching";
        case finder_kind::baseline: return "baseline";
        case finder_kind::exact_oracle: return "exact";
    }
    throw twins_error("unreachable finder kind");
}

long long finder_length(finder_kind f, const permutation& host, int r) {
    twins_certificate cert;
    switch (f) {
        case finder_kind::constructive:
            cert = find_constructive(host, r).cert;
            break;
        case finder_kind::matching:
            cert = find_matching(host, r).cert;
            break;
        case finder_kind::baseline:
            cert = es_twins(host, r);
            break;
        case finder_kind::exact_oracle: {
            oracle_budget budget;
            budget.max_n = 14;
            cert = exact_twins_length(host, r, budget).witness;
            break;
        }
    }
    if (!verify(host, cert))
        throw construction_bug_error("finder produced an invalid certificate");
    return cert.k;
}

std::uint64_t cell_seed(std::uint64_t base_seed, long long n, long long idx) {
    std::uint64_t s = splitmix64(base_seed);
    s = splitmix64(s ^ static_cast<std::uint64_t>(n));
    s = splitmix64(s ^ static_cast<std::uint64_t>(idx));
    return s;
}

namespace {

fit_result fit_log_log(const std::vector<long long>& ns, const std::vector<double>& lens) {
    fit_result fit;
    std::vector<double> xs, ys;
    for (size_t i = 0; i < ns.size(); ++i) {
        if (lens[i] >= 1.0) {
            xs.push_back(std::log(static_cast<double>(ns[i])));
            ys.push_back(std::log(lens[i]));
        }
    }
    const size_t m = xs.size();
    if (m < 3) return fit;
    double sx = std::accumulate(xs.begin(), xs.end(), 0.0);
    double sy = std::accumulate(ys.begin(), ys.end(), 0.0);
    double mx = sx / m, my = sy / m;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (size_t i = 0; i < m; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx <= 0.0) return fit;
    fit.valid = true;
    fit.exponent = sxy / sxx;
    fit.intercept = my - fit.exponent * mx;
    fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

}  // namespace

scaling_summary run_scaling(const scaling_config& cfg) {
    if (cfg.ns.empty()) throw io_error("scaling needs at least one host length");
    if (cfg.seeds_per_n < 1) throw io_error("scaling needs at least one seed per length");

    scaling_summary out;
    out.config = cfg;
    const std::string fname = finder_name(cfg.finder);

    for (long long n : cfg.ns) {
        double sum = 0.0;
        long long ok = 0;
        double lo = 0.0, hi = 0.0;
        for (int idx = 0; idx < cfg.seeds_per_n; ++idx) {
            scaling_cell cell;
            cell.finder = fname;
            cell.r = cfg.r;
            cell.n = n;
            cell.seed = cell_seed(cfg.base_seed, n, idx);
            permutation host = permutation::random(static_cast<int>(n), cell.seed);
            auto t0 = std::chrono::steady_clock::now();
            try {
                cell.length = finder_length(cfg.finder, host, cfg.r);
            } catch (const std::exception& e) {
                cell.length = -1;
                cell.error = e.what();
            }
            auto t1 = std::chrono::steady_clock::now();
            cell.runtime_ms =
                std::chrono::duration<double, std::milli>(t1 - t0).count();
            if (cell.length >= 0) {
                double len = static_cast<double>(cell.length);
                if (ok == 0) {
                    lo = hi = len;
                } else {
                    lo = std::min(lo, len);
                    hi = std::max(hi, len);
                }
                sum += len;
                ++ok;
            }
            out.cells.push_back(std::move(cell));
        }
        if (ok > 0) {
            out.ns.push_back(n);
            out.mean_length.push_back(sum / static_cast<double>(ok));
            out.min_length.push_back(lo);
            out.max_length.push_back(hi);
        }
    }
    out.fit_mean = fit_log_log(out.ns, out.mean_length);
    out.fit_min = fit_log_log(out.ns, out.min_length);
    out.fit_max = fit_log_log(out.ns, out.max_length);
    return out;
}

concentration_summary run_concentration(const concentration_config& cfg) {
    if (cfg.n < 1) throw io_error("concentration needs a positive host length");
    concentration_summary out;
    if (!cfg.seeds.empty()) {
        out.seeds = cfg.seeds;
    } else {
        if (cfg.count < 2) throw io_error("concentration needs at least two hosts");
        for (int idx = 0; idx < cfg.count; ++idx)
            out.seeds.push_back(cell_seed(cfg.base_seed, cfg.n, idx));
    }
    if (out.seeds.size() < 2) throw io_error("concentration needs at least two hosts");

    for (std::uint64_t s : out.seeds) {
        permutation host = permutation::random(static_cast<int>(cfg.n), s);
        out.lengths.push_back(finder_length(cfg.finder, host, cfg.r));
    }

    const double m = static_cast<double>(out.lengths.size());
    double sum = 0.0;
    for (long long v : out.lengths) sum += static_cast<double>(v);
    out.mean = sum / m;
    double ss = 0.0;
    for (long long v : out.lengths) {
        double d = static_cast<double>(v) - out.mean;
        ss += d * d;
    }
    out.stddev = std::sqrt(ss / (m - 1.0));
    out.normalized_spread = out.mean > 0.0 ? out.stddev / out.mean : 0.0;
    out.flagged = out.normalized_spread > 0.25;
    return out;
}

moment_summary run_moment_check(const moment_config& cfg) {
    if (cfg.n < 1) throw io_error("moment check needs a positive host length");
    if (cfg.k < 1) throw io_error("moment check needs a positive pattern length");
    if (cfg.r < 2) throw io_error("moment check needs multiplicity at least 2");

    moment_summary out;
    out.feasible = static_cast<long long>(cfg.r) * cfg.k <= cfg.n;
    out.expected_exact = out.feasible
                             ? expected_twin_count(cfg.n, cfg.k, cfg.r)
                             : cpp_rational(0);
    out.expected = static_cast<double>(out.expected_exact);

    if (cfg.samples == 0) {
        if (cfg.n > cfg.max_exhaustive_n)
            throw budget_exceeded_error("exhaustive moment check capped at small hosts");
        out.exhaustive = true;
        std::vector<long long> vals(static_cast<size_t>(cfg.n));
        for (long long i = 0; i < cfg.n; ++i) vals[static_cast<size_t>(i)] = i + 1;
        cpp_int total = 0;
        cpp_int hosts = 0;
        do {
            permutation host(vals);
            total += count_twins_families(host, cfg.k, cfg.r);
            ++hosts;
        } while (std::next_permutation(vals.begin(), vals.end()));
        out.empirical_exact = cpp_rational(total, hosts);
        out.samples = static_cast<long long>(hosts);
        out.mean = static_cast<double>(out.empirical_exact);
        out.match = out.empirical_exact == out.expected_exact;
        return out;
    }

    // cost guard: the family counter visits at most C(n,k)^r states
    double bound = 1.0;
    for (int t = 0; t < cfg.r; ++t) {
        double binom = 1.0;
        for (int i = 0; i < cfg.k; ++i)
            binom *= static_cast<double>(cfg.n - i) / static_cast<double>(i + 1);
        bound *= binom;
    }
    if (bound * static_cast<double>(cfg.samples) > 5e9)
        throw budget_exceeded_error("moment sampling would visit too many families");

    out.samples = cfg.samples;
    std::vector<double> xs;
    xs.reserve(static_cast<size_t>(cfg.samples));
    for (long long i = 0; i < cfg.samples; ++i) {
        std::uint64_t s = cell_seed(cfg.seed, cfg.n, i);
        permutation host = permutation::random(static_cast<int>(cfg.n), s);
        xs.push_back(static_cast<double>(count_twins_families(host, cfg.k, cfg.r)));
    }
    double sum = std::accumulate(xs.begin(), xs.end(), 0.0);
    out.mean = sum / static_cast<double>(cfg.samples);
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    double sd = cfg.samples > 1 ? std::sqrt(ss / static_cast<double>(cfg.samples - 1)) : 0.0;
    if (sd == 0.0) {
        out.z = (out.mean == out.expected) ? 0.0 : HUGE_VAL;
    } else {
        out.z = (out.mean - out.expected) /
                (sd / std::sqrt(static_cast<double>(cfg.samples)));
    }
    out.match = std::abs(out.z) <= 4.0;
    return out;
}

}  // namespace twins
