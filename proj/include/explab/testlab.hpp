#ifndef EXPLAB_TESTLAB_HPP
#define EXPLAB_TESTLAB_HPP

#include <cmath>
#include <cstdint>
#include <ostream>
#include <vector>

#include "explab/philox.hpp"
#include "explab/spectrum.hpp"

namespace explab {

/// Threshold t(n) of the likelihood-ratio acceptance region
/// { (1/n) log ratio > t(n) }.
struct ThresholdSchedule {
    enum class Kind { first_order, second_order };
    Kind kind;
    double r_big;
    double s;  // used by second_order only

    static ThresholdSchedule first_order(double r_big) {
        return {Kind::first_order, r_big, 0.0};
    }
    static ThresholdSchedule second_order(double r_big, double s) {
        return {Kind::second_order, r_big, s};
    }

    double threshold(std::int64_t n) const {
        return kind == Kind::first_order ? r_big
                                         : r_big + s / std::sqrt(static_cast<double>(n));
    }
};

struct TrialReport {
    std::int64_t n;
    std::int64_t trials;
    std::uint64_t seed;
    double mu_hat;
    double lambda_hat;
    double mu_ci95;      // Wilson 95% half-width
    double lambda_ci95;
    std::vector<double> per_component_mu;      // conditioned on the drawn null component
    std::vector<double> per_component_lambda;  // conditioned on the drawn alt component
};

/// Wilson score 95% interval half-width for k successes in n trials.
double wilson_halfwidth(std::int64_t k, std::int64_t n);

/// Draw the mixture component by weight, then n i.i.d. symbols.
/// Draw index 0 selects the component; indices 1..n are the symbols.
std::vector<std::size_t> sample_sequence(const MixedSource& src, std::int64_t n,
                                         const RngStream& stream);
std::size_t sample_component(const MixedSource& src, const RngStream& stream);

/// Monte Carlo estimate of both error probabilities under the threshold
/// test. Trial k uses streams f(seed, k): 2k for the null draw, 2k+1 for
/// the alternative draw, so results depend only on (seed, trials, n).
TrialReport run_trials(const TestingProblem& problem, const ThresholdSchedule& schedule,
                       std::int64_t n, std::int64_t trials, std::uint64_t seed);
TrialReport run_trials_serial(const TestingProblem& problem, const ThresholdSchedule& schedule,
                              std::int64_t n, std::int64_t trials, std::uint64_t seed);

/// Exact errors of the same threshold test, via type enumeration.
struct ExactErrors {
    double mu;
    double lambda;
};
ExactErrors exact_errors(const TestingProblem& problem, const ThresholdSchedule& schedule,
                         std::int64_t n, double cap = kDefaultTypeCap);

struct SweepRow {
    std::int64_t n;
    std::int64_t trials;  // 0 when the row is exact
    double mu;
    double lambda;
    double mu_ci95;
    double lambda_ci95;
    double rate1;  // -(1/n) ln lambda
    double rate2;  // -(1/sqrt n)(ln lambda + n R)
};

/// One row per n: exact when type enumeration fits under the cap (or always
/// Monte Carlo when force_mc is set); Monte Carlo requires trials >= 1.
std::vector<SweepRow> convergence_sweep(const TestingProblem& problem,
                                        const ThresholdSchedule& schedule,
                                        const std::vector<std::int64_t>& n_list,
                                        std::int64_t trials, std::uint64_t seed,
                                        bool force_mc = false, double cap = kDefaultTypeCap);

/// Union-of-intersections compound acceptance region: a type is accepted
/// iff some null index i beats every alternative j at threshold t(i,j).
class CompoundRegion {
public:
    CompoundRegion(std::vector<Distribution> nulls, std::vector<Distribution> alts,
                   std::vector<std::vector<double>> thresholds);

    bool operator()(const SequenceType& t) const;
    /// The per-pair region A^(i,j) = { (1/n) log(P_i/Q_j) > t(i,j) }.
    bool pair_region(std::size_t i, std::size_t j, const SequenceType& t) const;
    double pair_ratio(std::size_t i, std::size_t j, const SequenceType& t) const;

private:
    std::vector<Distribution> nulls_;
    std::vector<Distribution> alts_;
    std::vector<std::vector<double>> thresholds_;
};

void write_trial_report_csv(std::ostream& os, const TrialReport& report,
                            const ThresholdSchedule& schedule);
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

}  // namespace explab

#endif
