#pragma once

#include "protocol.hpp"

namespace cohfluct {

// Comparison of the collapsed block implementation against a dense
// enumeration of the full (system, battery-label) space.
struct OracleReport {
    int u = 0;
    int n = 0;
    int d_sys = 0;
    int dense_dim = 0;
    double row_sum_err = 0.0;    // max |dense row sum - 1|
    double col_sum_err = 0.0;    // max |dense column sum - 1|
    double transport_err = 0.0;  // dense G*phi vs collapsed psi, block-aggregated
    double forward_err = 0.0;    // dense forward distribution vs collapsed
    double reverse_err = 0.0;    // dense reverse distribution vs collapsed

    double max_err() const;
};

// Dense full-label check. Restricted to u = 2 (multiplicities 2^x stay in
// native integers), n <= 8 and system dimension <= 3; throws SizeCapError
// beyond that. The forward battery is uniform on S, the reverse battery
// uniform on the inner window S'.
OracleReport full_label_oracle(const Coupling& c, int u, int n);

}  // namespace cohfluct
