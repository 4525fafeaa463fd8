#ifndef EXPLAB_NORMAL_HPP
#define EXPLAB_NORMAL_HPP

namespace explab {

/// Standard normal CDF, complementary-error-function based.
double norm_cdf(double x);

/// Inverse of norm_cdf on (0,1); returns -+inf at the endpoints.
double norm_cdf_inv(double p);

}  // namespace explab

#endif
