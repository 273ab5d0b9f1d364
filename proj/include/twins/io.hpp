#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "twins/certificate.hpp"
#include "twins/experiments.hpp"
#include "twins/permutation.hpp"

namespace twins {

// text files hold one permutation per line, values separated by commas or
// whitespace; .json files hold one array or an array of arrays
std::vector<permutation> read_permutations(const std::string& path);
void write_permutations(const std::string& path, const std::vector<permutation>& perms,
                        const std::string& format);  // "json" or "csv"

struct raw_certificate {
    int r = 0;
    int k = 0;
    std::vector<std::vector<int>> indices;
};

// certificate files carry exactly the keys r, k, indices (1-based positions);
// anything else is rejected
raw_certificate read_certificate_json(const std::string& path);
void write_certificate_json(const std::string& path, const twins_certificate& cert);

// attach a host-free certificate to a host: recomputes the pattern and leaves
// the real checking to verify()
twins_certificate bind_certificate(const permutation& host, const raw_certificate& raw);

void write_scaling_csv(const std::string& path, const std::vector<scaling_cell>& cells);
std::vector<scaling_cell> read_scaling_csv(const std::string& path);

nlohmann::ordered_json scaling_summary_to_json(const scaling_summary& s);
nlohmann::ordered_json concentration_to_json(const concentration_summary& s);
nlohmann::ordered_json moment_to_json(const moment_summary& s);
nlohmann::ordered_json certificate_to_json(const twins_certificate& cert);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace twins
