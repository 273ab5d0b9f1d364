#pragma once

#include <vector>

#include "twins/certificate.hpp"
#include "twins/exact.hpp"
#include "twins/permutation.hpp"

namespace twins {

struct monotone_witness {
    bool increasing = true;
    std::vector<int> positions;  // 1-based, ascending
};

// longest increasing or decreasing subsequence, whichever is longer
// (increasing on a tie)
monotone_witness longest_monotone(const permutation& p);

// chop the first r*floor(L/r) elements of a longest monotone run into r
// equal chunks; guarantees length floor(sqrt(n)/r) or so but never beats
// the constructive bound asymptotically
twins_certificate es_twins(const permutation& p, int r);

// repeatedly strip monotone runs in one fixed direction, each capped at
// sqrt(n) elements, while the t-th run still has at least t elements; the
// first r* runs trimmed to r* columns form an r*-square
square_result greedy_square(const permutation& p);

}  // namespace twins
