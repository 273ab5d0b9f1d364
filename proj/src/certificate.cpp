#include "twins/certificate.hpp"

#include <algorithm>
#include <string>

namespace twins {

long long column_width_list::max_width() const {
    long long m = 0;
    for (long long w : widths) m = std::max(m, w);
    return m;
}

twins_certificate make_certificate(const permutation& host,
                                   std::vector<std::vector<int>> index_lists) {
    twins_certificate cert;
    cert.host_n = host.size();
    cert.r = static_cast<int>(index_lists.size());
    cert.k = index_lists.empty() ? 0 : static_cast<int>(index_lists[0].size());
    for (const auto& list : index_lists) {
        if (static_cast<int>(list.size()) != cert.k) {
            throw invalid_certificate_error("index lists have unequal lengths");
        }
        for (int p : list) {
            if (p < 1 || p > host.size()) {
                throw invalid_index_error("certificate position " + std::to_string(p) +
                                          " outside host of length " +
                                          std::to_string(host.size()));
            }
        }
    }
    cert.index_lists = std::move(index_lists);
    if (cert.k > 0) cert.pattern = canonical_pattern(host.values_at(cert.index_lists[0]));
    return cert;
}

bool verify(const permutation& host, const twins_certificate& cert) {
    if (cert.r < 1) return false;
    if (cert.host_n != 0 && cert.host_n != host.size()) return false;
    if (static_cast<int>(cert.index_lists.size()) != cert.r) return false;
    if (cert.k < 0) return false;

    const int n = host.size();
    std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& list : cert.index_lists) {
        if (static_cast<int>(list.size()) != cert.k) return false;
        int prev = 0;
        for (int p : list) {
            if (p < 1 || p > n) {
                throw invalid_index_error("certificate position " + std::to_string(p) +
                                          " outside host of length " + std::to_string(n));
            }
            if (p <= prev) return false;  // not strictly increasing
            prev = p;
            if (seen[p]) return false;  // lists not disjoint
            seen[p] = 1;
        }
    }

    if (cert.k == 0) return cert.pattern.empty();

    const auto first = canonical_pattern(host.values_at(cert.index_lists[0]));
    if (first != cert.pattern) return false;
    for (int j = 1; j < cert.r; ++j) {
        if (canonical_pattern(host.values_at(cert.index_lists[j])) != first) return false;
    }
    return true;
}

column_width_list column_widths(const permutation& host, const twins_certificate& cert) {
    if (!verify(host, cert)) {
        throw invalid_certificate_error("column widths of a certificate that does not verify");
    }
    column_width_list out;
    out.widths.reserve(cert.k);
    for (int c = 0; c < cert.k; ++c) {
        long long mn = 0, mx = 0;
        for (int j = 0; j < cert.r; ++j) {
            const long long v = host.value_at(cert.index_lists[j][c]);
            if (j == 0) {
                mn = mx = v;
            } else {
                mn = std::min(mn, v);
                mx = std::max(mx, v);
            }
        }
        out.widths.push_back(mx - mn);
    }
    return out;
}

bool is_w_narrow(const permutation& host, const twins_certificate& cert, long long w) {
    return column_widths(host, cert).max_width() <= w;
}

namespace {

// per-column (min, max) over the r twin values
std::vector<std::pair<long long, long long>> column_ranges(const permutation& host,
                                                           const twins_certificate& cert) {
    std::vector<std::pair<long long, long long>> out;
    out.reserve(cert.k);
    for (int c = 0; c < cert.k; ++c) {
        long long mn = host.value_at(cert.index_lists[0][c]);
        long long mx = mn;
        for (int j = 1; j < cert.r; ++j) {
            const long long v = host.value_at(cert.index_lists[j][c]);
            mn = std::min(mn, v);
            mx = std::max(mx, v);
        }
        out.emplace_back(mn, mx);
    }
    return out;
}

}  // namespace

bool can_concatenate(const permutation& host, const twins_certificate& left,
                     const twins_certificate& right) {
    if (left.r != right.r) {
        throw multiplicity_mismatch_error("concatenation of twins with different multiplicity");
    }
    if (!verify(host, left) || !verify(host, right)) {
        throw invalid_certificate_error("concatenation requires certificates that verify");
    }

    int left_max_pos = 0;
    for (const auto& list : left.index_lists) {
        for (int p : list) left_max_pos = std::max(left_max_pos, p);
    }
    int right_min_pos = host.size() + 1;
    for (const auto& list : right.index_lists) {
        for (int p : list) right_min_pos = std::min(right_min_pos, p);
    }
    if (left.k > 0 && right.k > 0 && left_max_pos >= right_min_pos) return false;

    const auto lranges = column_ranges(host, left);
    const auto rranges = column_ranges(host, right);
    for (const auto& [lmin, lmax] : lranges) {
        for (const auto& [rmin, rmax] : rranges) {
            if (!(rmax < lmin || rmin > lmax)) return false;
        }
    }
    return true;
}

twins_certificate concatenate(const permutation& host, const twins_certificate& left,
                              const twins_certificate& right) {
    if (!can_concatenate(host, left, right)) {
        throw concatenation_invalid_error("certificates do not satisfy the concatenation conditions");
    }
    std::vector<std::vector<int>> lists;
    lists.reserve(left.r);
    for (int j = 0; j < left.r; ++j) {
        std::vector<int> merged = left.index_lists[j];
        merged.insert(merged.end(), right.index_lists[j].begin(), right.index_lists[j].end());
        lists.push_back(std::move(merged));
    }
    twins_certificate out = make_certificate(host, std::move(lists));
    if (!verify(host, out)) {
        throw construction_bug_error("concatenation produced a certificate that does not verify");
    }
    return out;
}

}  // namespace twins
