#ifndef EXPLAB_DIVERGENCE_HPP
#define EXPLAB_DIVERGENCE_HPP

#include <cstdint>
#include <vector>

#include "explab/distribution.hpp"
#include "explab/ext_real.hpp"

namespace explab {

/// D(p||q) = sum_x p(x) ln(p(x)/q(x)) in nats.
///
/// 0 ln 0 := 0; +inf iff p puts mass where q does not. Always >= 0.
ExtReal kl_divergence(const Distribution& p, const Distribution& q);

/// Variance of ln(p(X)/q(X)) under X ~ p, in nats^2. Requires D(p||q) finite.
double divergence_variance(const Distribution& p, const Distribution& q);

/// ln of the probability that src emits any fixed sequence of type t.
/// Log-sum-exp over mixture components; -inf when no component supports t.
double sequence_log_prob(const MixedSource& src, const SequenceType& t);

/// Same, starting from per-component i.i.d. log-probabilities.
double mixture_log_sum(const std::vector<double>& log_weights,
                       const std::vector<double>& component_log_probs);

/// Default cap on (n+1)^(|X|-1) for type enumeration.
inline constexpr double kDefaultTypeCap = 5e6;

/// All compositions of n into alphabet_size parts, lexicographically.
std::vector<SequenceType> enumerate_types(std::size_t alphabet_size, std::int64_t n,
                                          double cap = kDefaultTypeCap);

/// ln( n! / prod_x counts(x)! ), the number of sequences sharing the type.
double type_class_log_size(const SequenceType& t);

}  // namespace explab

#endif
