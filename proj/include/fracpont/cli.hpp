#pragma once

#include <cstddef>
#include <vector>

namespace fracpont {

// Entry point behind the fracpont binary; exposed so tests can drive the
// command pipeline in-process. Exit codes: 0 success, 1 input error,
// 2 solver non-convergence, 3 property/threshold failure.
int run_cli(int argc, const char* const* argv);

// Canonical operator-identity diagnostics shared by `fracpont operators` and
// the acceptance suite. All errors are normalized so the thresholds read:
// semigroup_rel <= 1e-3, intparts <= 1e-6, comp_* <= 1e-2 at the finest grid,
// alpha_continuity <= 1e-2.
struct OperatorLadderRow {
    std::size_t n = 0;
    double semigroup_rel = 0.0; // ||I^a1 I^a2 g - I^{a1+a2} g|| / ||I^{a1+a2} g||
    double intparts = 0.0;      // |<I_- g1, g2> - <g1, I_+ g2>| / (||g1|| ||g2|| (b-a))
    double comp_forward = 0.0;  // ||cD(I g) - g|| / ||g||, first two nodes excluded
    double comp_inverse = 0.0;  // ||I(cD g) - (g - g(a))|| / ||g||, same exclusion
};

struct OperatorsReport {
    std::vector<OperatorLadderRow> rows;
    double alpha_continuity = 0.0; // sup |cD^0.999 g - cD^1 g|, first two nodes excluded
    bool ladders_monotone = false;
    bool thresholds_met = false;
};

OperatorsReport run_operator_suite(const std::vector<std::size_t>& ladder);

} // namespace fracpont
