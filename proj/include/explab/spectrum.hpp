#ifndef EXPLAB_SPECTRUM_HPP
#define EXPLAB_SPECTRUM_HPP

#include <cstdint>
#include <functional>
#include <ostream>
#include <vector>

#include "explab/exponents.hpp"

namespace explab {

/// Per-type slice of a testing problem at block length n. Everything the
/// exact finite-n machinery needs: the normalized log-likelihood ratio and
/// the exact type masses under both hypotheses.
struct TypeEntry {
    SequenceType type;
    double log_mult;   // ln |T(type)|
    double log_null;   // per-sequence ln P_null
    double log_alt;    // per-sequence ln P_alt
    double z;          // (1/n)(log_null - log_alt); +-inf on one-sided support
    double null_mass;  // exp(log_mult + log_null)
    double alt_mass;
};

struct TypeTable {
    std::int64_t n;
    std::vector<TypeEntry> entries;  // lexicographic type order
};

/// OpenMP-parallel per-type evaluation; entries are filled independently and
/// ordered by type, so the result is identical to the serial reference.
TypeTable build_type_table(const TestingProblem& problem, std::int64_t n,
                           double cap = kDefaultTypeCap);
TypeTable build_type_table_serial(const TestingProblem& problem, std::int64_t n,
                                  double cap = kDefaultTypeCap);

/// Exact CDF of the normalized log-likelihood ratio under the null
/// hypothesis, at its jump points.
struct SpectrumTable {
    std::int64_t n;
    struct Point {
        double z;
        double mass_cdf;
    };
    std::vector<Point> points;

    /// Right-continuous evaluation: total mass of { ratio <= z }.
    double cdf(double z) const;
};

/// Merge tolerance collapsing numerically identical ratios.
inline constexpr double kZMergeTol = 1e-12;

SpectrumTable exact_spectrum(const TestingProblem& problem, std::int64_t n,
                             double cap = kDefaultTypeCap);
SpectrumTable spectrum_from_table(const TypeTable& table);

/// CDF at z = R, resp. z = R + S/sqrt(n).
double k_of_r(const TestingProblem& problem, std::int64_t n, double r_big,
              double cap = kDefaultTypeCap);
double k_of_rs(const TestingProblem& problem, std::int64_t n, double r_big, double s,
               double cap = kDefaultTypeCap);

/// Exact type-II mass of the region { ratio >= t } against the e^{-nt} bound.
struct Lemma1Check {
    double lambda_exact;
    double bound;
    bool ok;
};
Lemma1Check check_lemma1(const TestingProblem& problem, std::int64_t n, double t,
                         double cap = kDefaultTypeCap);

using TypeRegion = std::function<bool(const SequenceType&)>;

/// mu_n + e^{nt} lambda_n >= Pr{ ratio <= t } for an arbitrary type region.
struct Lemma2Check {
    double lhs;
    double rhs;
    bool ok;
};
Lemma2Check check_lemma2(const TestingProblem& problem, std::int64_t n, double t,
                         const TypeRegion& region, double cap = kDefaultTypeCap);

/// Which mixture components stay within e^{n^(1/4)} of the mixture on every
/// type, and how much weight they carry.
struct ExpurgationReport {
    std::int64_t n;
    std::vector<std::vector<bool>> per_type_member;  // [component][type]
    double star_weight;
    double bound;  // 1 - (n+1)^|X| e^{-n^(1/4)}
    bool ok;       // star_weight >= bound
};
ExpurgationReport expurgation_report(const MixedSource& null_mix, std::int64_t n,
                                     double cap = kDefaultTypeCap);

/// Upper/lower decomposition inequalities for one null component, exact.
struct DecompositionCheck {
    bool upper_ok;
    bool lower_ok;
};
DecompositionCheck check_decomposition(const MixedSource& null_mix, const MixedSource& alt,
                                       std::int64_t n, std::size_t component, double z,
                                       double gamma, double cap = kDefaultTypeCap);

void write_spectrum_csv(std::ostream& os, const SpectrumTable& table);

}  // namespace explab

#endif
