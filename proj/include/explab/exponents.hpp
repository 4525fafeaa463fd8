#ifndef EXPLAB_EXPONENTS_HPP
#define EXPLAB_EXPONENTS_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "explab/distribution.hpp"
#include "explab/divergence.hpp"
#include "explab/ext_real.hpp"

namespace explab {

/// A pair of hypotheses over the same finite alphabet.
struct TestingProblem {
    MixedSource null_hyp;
    MixedSource alt_hyp;

    TestingProblem(MixedSource null_h, MixedSource alt_h)
        : null_hyp(std::move(null_h)), alt_hyp(std::move(alt_h)) {
        require_same_alphabet(null_hyp, alt_hyp);
    }
};

/// Per-null-component summary: weight, effective divergence against the
/// selected alternative component, the divergence variance there, and the
/// index of that alternative component.
struct ExponentProfile {
    struct Row {
        double weight;
        double divergence;  // d_i >= 0
        double variance;    // v_i >= 0
        std::size_t sigma_index;
    };
    std::vector<Row> rows;
};

/// Absolute tolerance for deciding d_i == R at the spectrum boundary.
inline constexpr double kBoundaryTol = 1e-10;

/// Index j minimizing D(p||alt_j) and the minimum, ties to the smallest j.
std::pair<std::size_t, double> sigma_selector(const Distribution& p, const MixedSource& alt);

ExponentProfile build_profile(const TestingProblem& problem);

/// Largest divergence threshold R whose strictly-below weight stays <= eps.
ExtReal first_order_exponent(const ExponentProfile& profile, double eps);

/// sup{ S | sum_{d_i < R} w_i + sum_{d_i = R} w_i Phi(S/sqrt(v_i)) <= eps }.
/// Components with v_i = 0 on the boundary contribute a unit step at S = 0.
ExtReal second_order_exponent(const ExponentProfile& profile, double eps, double r_big);

/// First-order exponent b and the second-order exponent at R = b.
struct CanonicalSolution {
    double b;
    ExtReal s;
};
CanonicalSolution canonical_solve(const ExponentProfile& profile, double eps);

/// min over all (null, alternative) pairs of the divergence.
double compound_zero_exponent(const std::vector<Distribution>& nulls,
                              const std::vector<Distribution>& alts);

/// Best type-II exponent when the type-I error must decay like e^{-nr}:
/// inf over { Pt : D(Pt||p) < r } of D(Pt||q), via the tilted family.
double hoeffding_exponent(const Distribution& p, const Distribution& q, double r);

/// min over pairs of hoeffding_exponent.
double compound_r_exponent(const std::vector<Distribution>& nulls,
                           const std::vector<Distribution>& alts, double r);

}  // namespace explab

#endif
