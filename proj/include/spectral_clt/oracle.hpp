#pragma once

#include "spectral_clt/block_model.hpp"

namespace spectral_clt {

// Raw moments of the rescaled entry (sqrt(n) H_ij) for a block pair; the
// entries have mean zero, so m2, m3 are the cumulants and m4 = Q4 + 3 Q2^2.
struct EntryMoments {
    double m1 = 0.0;
    double m2 = 0.0;
    double m3 = 0.0;
    double m4 = 0.0;
};

EntryMoments entry_moments(const BlockModelParams& p, int k, int l);

// Blocks of params rescaled to total size n, preserving the size fractions;
// rejects n that does not split into integer blocks.
std::vector<int> scale_sizes(const BlockModelParams& p, int n);

// Exact E Tr H^k at finite n via enumeration of index-coincidence patterns
// (odd k vanish; k = 2 pairs entries; k = 4 splits into a fourth-moment
// term and two-edge path terms). k <= 4; n <= 100 when k = 4.
double exact_trace_moment(const BlockModelParams& p, int n, int k);

// Exact Var Tr H^2 = (2/n^2) sum over ordered pairs of (Q4 + 2 Q2^2).
double exact_var_tr_h2(const BlockModelParams& p, int n);

} // namespace spectral_clt
