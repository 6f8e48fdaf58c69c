#pragma once

#include <ostream>

#include "subtile/experiment.hpp"

namespace subtile {

// Exact invariants of a model, one line per check: rule geometry, spectral
// consistency, self-similarity of the additive measures, hierarchy and
// oracle agreement, residual cancellation on supertile supports, and
// determinism of a small seeded experiment. Returns true if all pass.
bool run_selftest(const Model& model, std::ostream& os);

// Heuristic translation-period search on a rasterized window: reports the
// smallest lattice vector (by sup norm) under which the probe region is
// invariant, if any. Evidence only; a finite window cannot prove
// aperiodicity.
struct PeriodScanResult {
    bool found = false;
    std::array<long long, 2> period{0, 0};
    long long bound = 0;
    long long probe_cells = 0;
};

PeriodScanResult period_scan(const Model& model, long long bound);

}  // namespace subtile
