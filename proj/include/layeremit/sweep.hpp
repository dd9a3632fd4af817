// sweep.hpp -- executes the configured parameter sweep and renders the
// fixed-schema CSV. Points are independent; any degree of parallelism
// yields byte-identical output.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "layeremit/config.hpp"

namespace layeremit {

struct SweepRow {
    double axis = 0.0;
    std::optional<double> gamma_x, gamma_z, gamma_avg;
    std::optional<double> gamma_prop, gamma_evan;
    std::optional<double> err_est;
    std::string status = "ok";
};

struct SweepOutcome {
    std::vector<SweepRow> rows;
    int failures = 0;
};

// threads <= 0 selects the hardware concurrency. With switched = true the
// [switch] material substitutions are applied to the built structure
// first (Kerr on state, geometry unchanged).
SweepOutcome run_sweep(const RunConfig& cfg, int threads = 1, bool switched = false);

// Header: axis,gamma_x,gamma_z,gamma_avg,gamma_prop,gamma_evan,err_est,status
// Numbers carry 12 significant digits; absent quantities are empty fields.
void write_csv(const SweepOutcome& outcome, std::ostream& out);

std::string format_number(double v);  // %.12g

}  // namespace layeremit
