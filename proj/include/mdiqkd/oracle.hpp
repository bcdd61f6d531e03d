#pragma once

#include <string>
#include <vector>

#include "mdiqkd/bounds_analytic.hpp"

namespace mdiqkd {

/// A finite restriction of the bounding problem: optimise objective . x over
/// the box [0,1]^D subject to one inequality offset + constraint . x >= 0.
struct TruncatedLp {
    std::vector<double> objective;
    std::vector<double> constraint;
    double offset = 0.0;
};

enum class OptSense { Min, Max };

struct LpSolution {
    double value = 0.0;
    std::vector<double> point;
};

/// Brute-force optimum over all candidate vertices: every variable at a box
/// bound, plus, for each variable, the point where it alone moves off its
/// bound to make the constraint tight.  Throws OracleTooLarge above 12
/// variables and DegenerateChannel-free: infeasible instances (offset < 0
/// with all-zero still violating) raise InvalidParameter.
LpSolution vertex_enumerate(const TruncatedLp& lp, OptSense sense);

/// One validity line of a bound-vs-truth comparison.
struct BoundCheck {
    std::string name;
    double value = 0.0;
    double truth = 0.0;
    double gap = 0.0;        // truth - value for lower bounds, value - truth for upper
    bool lower_bound = true;
    bool pass = false;
};

struct ValidationReport {
    std::vector<BoundCheck> checks;
    bool all_pass = true;
};

/// Checks every yield bound against the true s11 from below and every error
/// bound against the true e11 from above, with the given slack.
ValidationReport validate_bounds(const std::vector<AnalyticBound>& bounds, double s11_true,
                                 double e11_true, double slack = 1e-12);

}  // namespace mdiqkd
