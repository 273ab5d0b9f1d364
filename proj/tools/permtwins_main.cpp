#include <cstdint>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "twins/baselines.hpp"
#include "twins/certificate.hpp"
#include "twins/constructive.hpp"
#include "twins/errors.hpp"
#include "twins/exact.hpp"
#include "twins/experiments.hpp"
#include "twins/io.hpp"
#include "twins/matching.hpp"
#include "twins/multi_lcs.hpp"
#include "twins/permutation.hpp"

namespace {

struct global_opts {
    std::uint64_t seed = 0;
    std::string out_dir;
    std::string format = "csv";
};

std::string out_path(const global_opts& g, const std::string& name) {
    if (g.out_dir.empty()) return name;
    std::filesystem::create_directories(g.out_dir);
    return (std::filesystem::path(g.out_dir) / name).string();
}

twins::permutation load_single_host(const std::string& path) {
    auto perms = twins::read_permutations(path);
    if (perms.size() != 1)
        throw twins::io_error(path + ": expected exactly one permutation");
    return perms.front();
}

std::vector<long long> parse_grid(const std::string& text) {
    std::vector<long long> out;
    std::string token;
    std::istringstream ss(text);
    while (std::getline(ss, token, ',')) {
        if (token.empty()) continue;
        out.push_back(std::stoll(token));
    }
    if (out.empty()) throw twins::io_error("empty length grid");
    return out;
}

void print_certificate_summary(const twins::twins_certificate& cert) {
    std::cout << "r=" << cert.r << " k=" << cert.k << "\n";
    for (const auto& list : cert.index_lists) {
        std::cout << " ";
        for (int pos : list) std::cout << " " << pos;
        std::cout << "\n";
    }
}

int run_gen(const global_opts& g, int n, int count, const std::string& file) {
    std::vector<twins::permutation> hosts;
    hosts.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i)
        hosts.push_back(twins::permutation::random(n, twins::cell_seed(g.seed, n, i)));
    std::string name = file;
    if (name.empty()) name = g.format == "json" ? "hosts.json" : "hosts.csv";
    std::string path = out_path(g, name);
    twins::write_permutations(path, hosts, g.format);
    std::cout << "wrote " << count << " host(s) of length " << n << " to " << path << "\n";
    return 0;
}

int run_verify(const std::string& host_file, const std::string& cert_file) {
    twins::permutation host = load_single_host(host_file);
    twins::raw_certificate raw = twins::read_certificate_json(cert_file);
    twins::twins_certificate cert = twins::bind_certificate(host, raw);
    if (!twins::verify(host, cert)) {
        std::cout << "INVALID\n";
        return 1;
    }
    twins::column_width_list widths = twins::column_widths(host, cert);
    std::cout << "VALID r=" << cert.r << " k=" << cert.k
              << " max_column_width=" << (cert.k > 0 ? widths.max_width() : 0) << "\n";
    return 0;
}

int run_exact(const global_opts& g, const std::string& host_file, int r, int table_max_n,
              long long max_nodes, bool lower_bound_ok, const std::string& cert_out) {
    twins::oracle_budget budget;
    if (max_nodes > 0) budget.max_nodes = max_nodes;
    budget.max_n = 64;  // CLI trusts the caller; the node budget is the brake
    if (lower_bound_ok)
        budget.on_exceed = twins::oracle_budget::exceed_policy::return_lower_bound;

    if (table_max_n > 0) {
        std::cout << "n,k,argmin\n";
        for (int n = 1; n <= table_max_n; ++n) {
            twins::oracle_budget b = budget;
            b.max_n = table_max_n;
            auto res = twins::exact_t_r_n(n, r, b);
            std::cout << n << "," << res.k << ",";
            const auto vals = res.argmin.values();
            for (size_t i = 0; i < vals.size(); ++i) {
                if (i) std::cout << " ";
                std::cout << vals[i];
            }
            std::cout << "\n";
        }
        return 0;
    }

    twins::permutation host = load_single_host(host_file);
    auto res = twins::exact_twins_length(host, r, budget);
    std::cout << (res.exact ? "t=" : "t>=") << res.k << "\n";
    print_certificate_summary(res.witness);
    if (!cert_out.empty())
        twins::write_certificate_json(out_path(g, cert_out), res.witness);
    return 0;
}

int run_lcs(const std::string& input_file, int r) {
    auto perms = twins::read_permutations(input_file);
    if (r > 0) {
        twins::subset_selection sel = twins::best_r_of_2r_minus_1(perms, r);
        std::cout << "length=" << sel.result.length << "\nchosen=";
        for (size_t i = 0; i < sel.chosen_indices.size(); ++i) {
            if (i) std::cout << " ";
            std::cout << sel.chosen_indices[i];
        }
        std::cout << "\ncommon=";
        for (size_t i = 0; i < sel.result.elements.size(); ++i) {
            if (i) std::cout << " ";
            std::cout << sel.result.elements[i];
        }
        std::cout << "\n";
        return 0;
    }
    twins::common_subperm_result res = twins::common_subperm(perms);
    std::cout << "length=" << res.length << "\ncommon=";
    for (size_t i = 0; i < res.elements.size(); ++i) {
        if (i) std::cout << " ";
        std::cout << res.elements[i];
    }
    std::cout << "\n";
    return 0;
}

int run_find_constructive(const global_opts& g, const std::string& host_file, int r,
                          bool trace, const std::string& cert_out) {
    twins::permutation host = load_single_host(host_file);
    twins::find_result res = twins::find_constructive(host, r);
    std::cout << "k=" << res.cert.k << " rounds=" << res.traces.size()
              << " M=" << res.plan.M << " N=" << res.plan.N << "\n";
    if (trace) {
        for (size_t i = 0; i < res.traces.size(); ++i) {
            const auto& t = res.traces[i];
            std::cout << "round " << i + 1 << ": narrow=" << t.narrow_block_ids.size()
                      << "/" << t.blocks.size() << " k=" << t.round_cert.k
                      << " removed=" << t.removed_positions.size() << "\n";
        }
    }
    if (!twins::verify(host, res.cert)) {
        std::cout << "INVALID\n";
        return 1;
    }
    if (!cert_out.empty())
        twins::write_certificate_json(out_path(g, cert_out), res.cert);
    return 0;
}

int run_find_matching(const global_opts& g, const std::string& host_file, int r, int cutoff,
                      long long a_override, const std::string& cert_out) {
    twins::permutation host = load_single_host(host_file);
    twins::grid_params params = twins::grid_params::derive(
        static_cast<long long>(host.size()), r, cutoff, a_override);
    twins::matching_graph graph = twins::build_graph(host, params);
    twins::matching_result m = twins::greedy_matching(graph, cutoff);
    twins::twins_certificate cert = twins::extract_twins(host, params, m);
    if (!twins::verify(host, cert)) {
        std::cout << "INVALID\n";
        return 1;
    }
    std::cout << "a=" << params.a << " blocks=" << params.num_blocks
              << " edges=" << graph.edges.size() << " pruned_edges=" << m.e_prime
              << " max_degree=" << m.delta_prime << " matching=" << m.edges.size()
              << " k=" << cert.k << "\n";
    std::cout << "degree_histogram:";
    for (const auto& [d, count] : graph.degree_histogram())
        std::cout << " " << d << ":" << count;
    std::cout << "\n";
    if (!cert_out.empty())
        twins::write_certificate_json(out_path(g, cert_out), cert);
    return 0;
}

int run_baseline(const global_opts& g, const std::string& host_file, int r,
                 const std::string& which, const std::string& cert_out) {
    twins::permutation host = load_single_host(host_file);
    if (which == "monotone") {
        twins::monotone_witness w = twins::longest_monotone(host);
        std::cout << "length=" << w.positions.size()
                  << " direction=" << (w.increasing ? "increasing" : "decreasing") << "\n";
        return 0;
    }
    if (which == "greedy-square") {
        twins::square_result res = twins::greedy_square(host);
        if (!twins::verify(host, res.witness)) {
            std::cout << "INVALID\n";
            return 1;
        }
        std::cout << "square=" << res.r << "\n";
        if (!cert_out.empty())
            twins::write_certificate_json(out_path(g, cert_out), res.witness);
        return 0;
    }
    if (which != "es") throw twins::io_error("unknown baseline: " + which);
    twins::twins_certificate cert = twins::es_twins(host, r);
    if (!twins::verify(host, cert)) {
        std::cout << "INVALID\n";
        return 1;
    }
    std::cout << "k=" << cert.k << "\n";
    if (!cert_out.empty())
        twins::write_certificate_json(out_path(g, cert_out), cert);
    return 0;
}

int run_moment(const global_opts& g, long long n, int k, int r, long long samples) {
    twins::moment_config cfg;
    cfg.n = n;
    cfg.k = k;
    cfg.r = r;
    cfg.samples = samples;
    cfg.seed = g.seed;
    twins::moment_summary s = twins::run_moment_check(cfg);
    std::cout << "expected=" << s.expected_exact << " (" << s.expected << ")\n";
    if (s.exhaustive) {
        std::cout << "empirical=" << s.empirical_exact << " over " << s.samples
                  << " hosts\nmatch=" << (s.match ? "yes" : "no") << "\n";
    } else {
        std::cout << "mean=" << s.mean << " over " << s.samples << " samples, z=" << s.z
                  << "\nmatch=" << (s.match ? "yes" : "no") << "\n";
    }
    if (g.format == "json")
        twins::write_text_file(out_path(g, "moment.json"),
                               twins::moment_to_json(s).dump(2) + "\n");
    return s.match ? 0 : 1;
}

int run_scale(const global_opts& g, const std::string& finder, int r, const std::string& grid,
              int seeds_per_n, const std::string& file) {
    twins::scaling_config cfg;
    cfg.finder = twins::parse_finder(finder);
    cfg.r = r;
    cfg.ns = parse_grid(grid);
    cfg.seeds_per_n = seeds_per_n;
    cfg.base_seed = g.seed;
    twins::scaling_summary s = twins::run_scaling(cfg);
    std::string path = out_path(g, file.empty() ? "scaling.csv" : file);
    twins::write_scaling_csv(path, s.cells);
    std::cout << "wrote " << s.cells.size() << " cells to " << path << "\n";
    if (s.fit_mean.valid)
        std::cout << "exponent_mean=" << s.fit_mean.exponent << " r2=" << s.fit_mean.r_squared
                  << "\nexponent_min=" << s.fit_min.exponent
                  << " exponent_max=" << s.fit_max.exponent << "\n";
    else
        std::cout << "no exponent fit (need at least three usable lengths)\n";
    if (g.format == "json")
        twins::write_text_file(out_path(g, "scaling.json"),
                               twins::scaling_summary_to_json(s).dump(2) + "\n");
    return 0;
}

int run_concentration(const global_opts& g, const std::string& finder, int r, long long n,
                      int samples, const std::string& seed_list) {
    twins::concentration_config cfg;
    cfg.finder = twins::parse_finder(finder);
    cfg.r = r;
    cfg.n = n;
    cfg.count = samples;
    cfg.base_seed = g.seed;
    if (!seed_list.empty())
        for (long long s : parse_grid(seed_list))
            cfg.seeds.push_back(static_cast<std::uint64_t>(s));
    twins::concentration_summary s = twins::run_concentration(cfg);
    std::cout << "mean=" << s.mean << " stddev=" << s.stddev
              << " normalized_spread=" << s.normalized_spread
              << " flagged=" << (s.flagged ? "yes" : "no") << "\n";
    if (g.format == "json")
        twins::write_text_file(out_path(g, "concentration.json"),
                               twins::concentration_to_json(s).dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"construct, verify and measure twin subsequences in permutations"};
    app.require_subcommand(1);
    app.fallthrough();

    global_opts g;
    app.add_option("--seed", g.seed, "base seed for anything randomized");
    app.add_option("--out", g.out_dir, "output directory (created if missing)");
    app.add_option("--format", g.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    auto* gen = app.add_subcommand("gen", "generate uniform random hosts");
    int gen_n = 0, gen_count = 1;
    std::string gen_file;
    gen->add_option("--n", gen_n, "host length")->required();
    gen->add_option("--count", gen_count, "how many hosts");
    gen->add_option("--file", gen_file, "output file name");

    auto* ver = app.add_subcommand("verify", "check a certificate against a host");
    std::string ver_host, ver_cert;
    ver->add_option("--host", ver_host, "host file")->required();
    ver->add_option("--cert", ver_cert, "certificate JSON")->required();

    auto* exa = app.add_subcommand("exact", "exact search for optimal twins");
    std::string exa_host, exa_cert_out;
    int exa_r = 2, exa_table = 0;
    long long exa_nodes = 0;
    bool exa_lb = false;
    exa->add_option("--host", exa_host, "host file");
    exa->add_option("--r", exa_r, "multiplicity");
    exa->add_option("--table", exa_table, "print t(n) for n up to this bound");
    exa->add_option("--max-nodes", exa_nodes, "search node budget");
    exa->add_flag("--lower-bound-ok", exa_lb, "return the best found on budget exhaustion");
    exa->add_option("--cert-out", exa_cert_out, "write the witness here");

    auto* lcs = app.add_subcommand("lcs", "longest common sub-permutation");
    std::string lcs_input;
    int lcs_r = 0;
    lcs->add_option("--input", lcs_input, "file with the permutations")->required();
    lcs->add_option("--r", lcs_r, "pick the best r of the 2r-1 inputs");

    auto* fc = app.add_subcommand("find-constructive", "round-based twin construction");
    std::string fc_host, fc_cert_out;
    int fc_r = 2;
    bool fc_trace = false;
    fc->add_option("--host,--perm", fc_host, "host file")->required();
    fc->add_option("--r", fc_r, "multiplicity");
    fc->add_flag("--trace", fc_trace, "print per-round details");
    fc->add_option("--cert-out", fc_cert_out, "write the certificate here");

    auto* fm = app.add_subcommand("find-matching", "block-matching twin construction");
    std::string fm_host, fm_cert_out;
    int fm_r = 2, fm_cutoff = 7;
    long long fm_a = 0;
    fm->add_option("--host", fm_host, "host file")->required();
    fm->add_option("--r", fm_r, "multiplicity");
    fm->add_option("--cutoff", fm_cutoff, "degree pruning threshold");
    fm->add_option("--a", fm_a, "override the block side length");
    fm->add_option("--cert-out", fm_cert_out, "write the certificate here");

    auto* base = app.add_subcommand("baseline", "monotone-run baselines");
    std::string base_host, base_which = "es", base_cert_out;
    int base_r = 2;
    base->add_option("--host", base_host, "host file")->required();
    base->add_option("--r", base_r, "multiplicity");
    base->add_option("--which", base_which, "es, greedy-square or monotone")
        ->check(CLI::IsMember({"es", "greedy-square", "monotone"}));
    base->add_option("--cert-out", base_cert_out, "write the certificate here");

    auto* mom = app.add_subcommand("moment", "first-moment identity check");
    long long mom_n = 0, mom_samples = 0;
    int mom_k = 0, mom_r = 2;
    mom->add_option("--n", mom_n, "host length")->required();
    mom->add_option("--k", mom_k, "twin length")->required();
    mom->add_option("--r", mom_r, "multiplicity");
    mom->add_option("--samples", mom_samples, "Monte Carlo samples, 0 = exhaustive");

    auto* sca = app.add_subcommand("scale", "length scaling across host sizes");
    std::string sca_finder = "constructive", sca_grid, sca_file;
    int sca_r = 2, sca_seeds = 5;
    sca->add_option("--finder", sca_finder, "constructive, matching, baseline or exact");
    sca->add_option("--r", sca_r, "multiplicity");
    sca->add_option("--n-grid", sca_grid, "comma-separated host lengths")->required();
    sca->add_option("--seeds", sca_seeds, "hosts per length");
    sca->add_option("--file", sca_file, "CSV file name");

    auto* con = app.add_subcommand("concentration", "spread of a finder statistic");
    std::string con_finder = "matching", con_seeds_list;
    int con_r = 2, con_samples = 30;
    long long con_n = 0;
    con->add_option("--finder", con_finder, "constructive, matching, baseline or exact");
    con->add_option("--r", con_r, "multiplicity");
    con->add_option("--n", con_n, "host length")->required();
    con->add_option("--samples", con_samples, "number of hosts");
    con->add_option("--seeds", con_seeds_list, "explicit comma-separated seeds");

    try {
        app.parse(argc, argv);
        if (gen->parsed()) return run_gen(g, gen_n, gen_count, gen_file);
        if (ver->parsed()) return run_verify(ver_host, ver_cert);
        if (exa->parsed()) {
            if (exa_table == 0 && exa_host.empty())
                throw twins::io_error("exact needs --host or --table");
            return run_exact(g, exa_host, exa_r, exa_table, exa_nodes, exa_lb, exa_cert_out);
        }
        if (lcs->parsed()) return run_lcs(lcs_input, lcs_r);
        if (fc->parsed()) return run_find_constructive(g, fc_host, fc_r, fc_trace, fc_cert_out);
        if (fm->parsed()) return run_find_matching(g, fm_host, fm_r, fm_cutoff, fm_a, fm_cert_out);
        if (base->parsed()) return run_baseline(g, base_host, base_r, base_which, base_cert_out);
        if (mom->parsed()) return run_moment(g, mom_n, mom_k, mom_r, mom_samples);
        if (sca->parsed()) return run_scale(g, sca_finder, sca_r, sca_grid, sca_seeds, sca_file);
        if (con->parsed())
            return run_concentration(g, con_finder, con_r, con_n, con_samples, con_seeds_list);
        throw twins::io_error("no subcommand");
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    } catch (const twins::budget_exceeded_error& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 2;
    } catch (const twins::io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const twins::twins_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
