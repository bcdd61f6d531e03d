#include "mdiqkd/oracle.hpp"

#include <cmath>

#include "mdiqkd/errors.hpp"

namespace mdiqkd {

LpSolution vertex_enumerate(const TruncatedLp& lp, OptSense sense) {
    const int d = static_cast<int>(lp.objective.size());
    if (d != static_cast<int>(lp.constraint.size())) {
        throw InvalidParameter("objective and constraint dimensions differ");
    }
    if (d > 12) throw OracleTooLarge("vertex enumeration limited to 12 variables");

    const double feas_tol = 1e-12 * std::max(1.0, std::abs(lp.offset));
    LpSolution best;
    bool found = false;
    std::vector<double> x(d, 0.0);

    auto consider = [&](const std::vector<double>& pt) {
        double con = lp.offset;
        double val = 0.0;
        for (int i = 0; i < d; ++i) {
            con += lp.constraint[i] * pt[i];
            val += lp.objective[i] * pt[i];
        }
        if (con < -feas_tol) return;
        if (!found || (sense == OptSense::Min ? val < best.value : val > best.value)) {
            best.value = val;
            best.point = pt;
            found = true;
        }
    };

    for (unsigned mask = 0; mask < (1u << d); ++mask) {
        for (int i = 0; i < d; ++i) x[i] = (mask >> i) & 1u ? 1.0 : 0.0;
        consider(x);
        // one coordinate moves off its bound to make the constraint tight
        for (int j = 0; j < d; ++j) {
            if (lp.constraint[j] == 0.0) continue;
            double rest = lp.offset;
            for (int i = 0; i < d; ++i) {
                if (i != j) rest += lp.constraint[i] * x[i];
            }
            const double xj = -rest / lp.constraint[j];
            if (xj >= 0.0 && xj <= 1.0) {
                const double saved = x[j];
                x[j] = xj;
                consider(x);
                x[j] = saved;
            }
        }
    }
    if (!found) throw InvalidParameter("LP instance is infeasible");
    return best;
}

ValidationReport validate_bounds(const std::vector<AnalyticBound>& bounds, double s11_true,
                                 double e11_true, double slack) {
    ValidationReport report;
    for (const auto& b : bounds) {
        BoundCheck c;
        c.name = to_string(b.method);
        c.value = b.value;
        const bool is_error_bound =
            b.method == BoundMethod::E11Simple || b.method == BoundMethod::E11Exact;
        c.lower_bound = !is_error_bound;
        c.truth = is_error_bound ? e11_true : s11_true;
        c.gap = c.lower_bound ? c.truth - c.value : c.value - c.truth;
        c.pass = c.gap >= -slack;
        report.all_pass = report.all_pass && c.pass;
        report.checks.push_back(std::move(c));
    }
    return report;
}

}  // namespace mdiqkd
