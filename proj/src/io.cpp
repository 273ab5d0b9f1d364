#include "twins/io.hpp"

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "twins/errors.hpp"

namespace twins {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool has_suffix(const std::string& s, const std::string& suf) {
    return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

std::vector<long long> parse_int_line(const std::string& line, const std::string& path) {
    std::vector<long long> vals;
    std::string token;
    auto flush = [&]() {
        if (token.empty()) return;
        size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(token, &used);
        } catch (const std::exception&) {
            throw io_error(path + ": not an integer: " + token);
        }
        if (used != token.size()) throw io_error(path + ": not an integer: " + token);
        vals.push_back(v);
        token.clear();
    };
    for (char c : line) {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c)))
            flush();
        else
            token.push_back(c);
    }
    flush();
    return vals;
}

permutation perm_from_values(std::vector<long long> vals, const std::string& path) {
    try {
        return permutation(std::move(vals));
    } catch (const duplicate_value_error& e) {
        throw io_error(path + ": " + e.what());
    } catch (const empty_sequence_error&) {
        throw io_error(path + ": empty permutation");
    }
}

std::vector<long long> json_int_array(const json& arr, const std::string& path) {
    if (!arr.is_array()) throw io_error(path + ": expected an array of integers");
    std::vector<long long> vals;
    for (const auto& v : arr) {
        if (!v.is_number_integer()) throw io_error(path + ": expected an integer entry");
        vals.push_back(v.get<long long>());
    }
    return vals;
}

double parse_double(const std::string& token, const std::string& path) {
    size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(token, &used);
    } catch (const std::exception&) {
        throw io_error(path + ": not a number: " + token);
    }
    if (used != token.size()) throw io_error(path + ": not a number: " + token);
    return v;
}

long long parse_ll(const std::string& token, const std::string& path) {
    size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(token, &used);
    } catch (const std::exception&) {
        throw io_error(path + ": not an integer: " + token);
    }
    if (used != token.size()) throw io_error(path + ": not an integer: " + token);
    return v;
}

std::uint64_t parse_ull(const std::string& token, const std::string& path) {
    size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(token, &used);
    } catch (const std::exception&) {
        throw io_error(path + ": not an unsigned integer: " + token);
    }
    if (used != token.size())
        throw io_error(path + ": not an unsigned integer: " + token);
    return v;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

ordered_json fit_to_json(const fit_result& fit) {
    ordered_json j;
    j["valid"] = fit.valid;
    if (fit.valid) {
        j["exponent"] = fit.exponent;
        j["intercept"] = fit.intercept;
        j["r_squared"] = fit.r_squared;
    }
    return j;
}

std::string rational_to_string(const cpp_rational& q) {
    std::ostringstream ss;
    ss << q;
    return ss.str();
}

}  // namespace

std::vector<permutation> read_permutations(const std::string& path) {
    std::string content = slurp(path);
    std::vector<permutation> out;
    if (has_suffix(path, ".json")) {
        json doc;
        try {
            doc = json::parse(content);
        } catch (const json::parse_error& e) {
            throw io_error(path + ": " + e.what());
        }
        if (!doc.is_array()) throw io_error(path + ": expected a JSON array");
        if (!doc.empty() && doc.front().is_array()) {
            for (const auto& arr : doc)
                out.push_back(perm_from_values(json_int_array(arr, path), path));
        } else {
            out.push_back(perm_from_values(json_int_array(doc, path), path));
        }
        return out;
    }
    std::istringstream in(content);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<long long> vals = parse_int_line(line, path);
        if (vals.empty()) continue;
        out.push_back(perm_from_values(std::move(vals), path));
    }
    if (out.empty()) throw io_error(path + ": no permutations found");
    return out;
}

void write_permutations(const std::string& path, const std::vector<permutation>& perms,
                        const std::string& format) {
    std::ostringstream ss;
    if (format == "json") {
        ordered_json doc = ordered_json::array();
        for (const auto& p : perms) doc.push_back(p.values());
        ss << (perms.size() == 1 ? doc.front().dump() : doc.dump()) << "\n";
    } else {
        for (const auto& p : perms) {
            const auto vals = p.values();
            for (size_t i = 0; i < vals.size(); ++i) {
                if (i) ss << ",";
                ss << vals[i];
            }
            ss << "\n";
        }
    }
    write_text_file(path, ss.str());
}

raw_certificate read_certificate_json(const std::string& path) {
    json doc;
    try {
        doc = json::parse(slurp(path));
    } catch (const json::parse_error& e) {
        throw io_error(path + ": " + e.what());
    }
    if (!doc.is_object() || doc.size() != 3 || !doc.contains("r") || !doc.contains("k") ||
        !doc.contains("indices"))
        throw io_error(path + ": certificate must have exactly the keys r, k, indices");
    if (!doc["r"].is_number_integer() || !doc["k"].is_number_integer())
        throw io_error(path + ": r and k must be integers");

    raw_certificate raw;
    raw.r = doc["r"].get<int>();
    raw.k = doc["k"].get<int>();
    if (raw.r < 1) throw io_error(path + ": r must be at least 1");
    if (raw.k < 0) throw io_error(path + ": k must be nonnegative");
    if (!doc["indices"].is_array() || static_cast<int>(doc["indices"].size()) != raw.r)
        throw io_error(path + ": indices must hold exactly r lists");
    for (const auto& arr : doc["indices"]) {
        std::vector<long long> vals = json_int_array(arr, path);
        if (static_cast<int>(vals.size()) != raw.k)
            throw io_error(path + ": every index list must have length k");
        std::vector<int> list;
        for (long long v : vals) {
            if (v < 1) throw io_error(path + ": positions are 1-based");
            list.push_back(static_cast<int>(v));
        }
        raw.indices.push_back(std::move(list));
    }
    return raw;
}

void write_certificate_json(const std::string& path, const twins_certificate& cert) {
    ordered_json doc;
    doc["r"] = cert.r;
    doc["k"] = cert.k;
    doc["indices"] = cert.index_lists;
    write_text_file(path, doc.dump(2) + "\n");
}

twins_certificate bind_certificate(const permutation& host, const raw_certificate& raw) {
    if (raw.k == 0) {
        twins_certificate cert;
        cert.host_n = static_cast<int>(host.size());
        cert.r = raw.r;
        cert.index_lists.assign(static_cast<size_t>(raw.r), {});
        return cert;
    }
    return make_certificate(host, raw.indices);
}

void write_scaling_csv(const std::string& path, const std::vector<scaling_cell>& cells) {
    std::ostringstream ss;
    ss << "finder,r,n,seed,length,runtime_ms\n";
    for (const auto& c : cells)
        ss << c.finder << "," << c.r << "," << c.n << "," << c.seed << "," << c.length << ","
           << format_double(c.runtime_ms) << "\n";
    write_text_file(path, ss.str());
}

std::vector<scaling_cell> read_scaling_csv(const std::string& path) {
    std::istringstream in(slurp(path));
    std::string line;
    if (!std::getline(in, line) || line != "finder,r,n,seed,length,runtime_ms")
        throw io_error(path + ": bad scaling header");
    std::vector<scaling_cell> cells;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string token;
        for (char c : line) {
            if (c == ',') {
                fields.push_back(token);
                token.clear();
            } else {
                token.push_back(c);
            }
        }
        fields.push_back(token);
        if (fields.size() != 6) throw io_error(path + ": bad scaling row: " + line);
        scaling_cell cell;
        cell.finder = fields[0];
        cell.r = static_cast<int>(parse_ll(fields[1], path));
        cell.n = parse_ll(fields[2], path);
        cell.seed = parse_ull(fields[3], path);
        cell.length = parse_ll(fields[4], path);
        cell.runtime_ms = parse_double(fields[5], path);
        cells.push_back(std::move(cell));
    }
    return cells;
}

nlohmann::ordered_json scaling_summary_to_json(const scaling_summary& s) {
    ordered_json j;
    j["finder"] = finder_name(s.config.finder);
    j["r"] = s.config.r;
    j["seeds_per_n"] = s.config.seeds_per_n;
    j["base_seed"] = s.config.base_seed;
    j["cells"] = ordered_json::array();
    for (const auto& c : s.cells) {
        ordered_json cj;
        cj["finder"] = c.finder;
        cj["r"] = c.r;
        cj["n"] = c.n;
        cj["seed"] = c.seed;
        cj["length"] = c.length;
        cj["runtime_ms"] = c.runtime_ms;
        if (!c.error.empty()) cj["error"] = c.error;
        j["cells"].push_back(std::move(cj));
    }
    j["ns"] = s.ns;
    j["mean_length"] = s.mean_length;
    j["min_length"] = s.min_length;
    j["max_length"] = s.max_length;
    j["fit_mean"] = fit_to_json(s.fit_mean);
    j["fit_min"] = fit_to_json(s.fit_min);
    j["fit_max"] = fit_to_json(s.fit_max);
    return j;
}

nlohmann::ordered_json concentration_to_json(const concentration_summary& s) {
    ordered_json j;
    j["seeds"] = s.seeds;
    j["lengths"] = s.lengths;
    j["mean"] = s.mean;
    j["stddev"] = s.stddev;
    j["normalized_spread"] = s.normalized_spread;
    j["flagged"] = s.flagged;
    return j;
}

nlohmann::ordered_json moment_to_json(const moment_summary& s) {
    ordered_json j;
    j["exhaustive"] = s.exhaustive;
    j["feasible"] = s.feasible;
    j["samples"] = s.samples;
    j["expected"] = s.expected;
    j["expected_exact"] = rational_to_string(s.expected_exact);
    if (s.exhaustive) j["empirical_exact"] = rational_to_string(s.empirical_exact);
    j["mean"] = s.mean;
    if (!s.exhaustive) j["z"] = s.z;
    j["match"] = s.match;
    return j;
}

nlohmann::ordered_json certificate_to_json(const twins_certificate& cert) {
    ordered_json doc;
    doc["r"] = cert.r;
    doc["k"] = cert.k;
    doc["indices"] = cert.index_lists;
    return doc;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot write " + path);
    out << content;
    if (!out) throw io_error("write failed: " + path);
}

}  // namespace twins
