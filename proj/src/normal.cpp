#include "explab/normal.hpp"

#include <cmath>
#include <limits>

#include "explab/errors.hpp"

namespace explab {

double norm_cdf(double x) { return 0.5 * std::erfc(-x * 0.7071067811865475244); }

double norm_cdf_inv(double p) {
    if (!(p >= 0.0 && p <= 1.0)) raise(errc::domain, "norm_cdf_inv: p outside [0,1]");
    if (p == 0.0) return -std::numeric_limits<double>::infinity();
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    // Bracketed bisection; the CDF is strictly increasing, 100 halvings of
    // the initial bracket put the root well below double noise.
    double lo = -40.0, hi = 40.0;
    for (int i = 0; i < 200 && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++i) {
        double mid = 0.5 * (lo + hi);
        (norm_cdf(mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace explab
