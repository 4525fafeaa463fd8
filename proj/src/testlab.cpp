#include "explab/testlab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace explab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Empirical type of one sampled sequence, plus the drawn component index.
struct Draw {
    std::size_t component;
    SequenceType type;
};

std::size_t sample_symbol(const Distribution& d, double u) {
    double acc = 0.0;
    for (std::size_t x = 0; x + 1 < d.alphabet_size(); ++x) {
        acc += d[x];
        if (u < acc) return x;
    }
    return d.alphabet_size() - 1;
}

Draw draw_type(const MixedSource& src, std::int64_t n, const RngStream& stream) {
    std::size_t comp = sample_component(src, stream);
    const Distribution& d = src[comp].dist;
    std::vector<std::int64_t> counts(d.alphabet_size(), 0);
    for (std::int64_t i = 0; i < n; ++i)
        ++counts[sample_symbol(d, stream.uniform(static_cast<std::uint64_t>(i) + 1))];
    return {comp, SequenceType(n, std::move(counts))};
}

struct Tallies {
    std::int64_t mu_reject = 0;
    std::int64_t lambda_accept = 0;
    std::vector<std::int64_t> null_drawn, null_reject;
    std::vector<std::int64_t> alt_drawn, alt_accept;

    explicit Tallies(const TestingProblem& p)
        : null_drawn(p.null_hyp.size(), 0),
          null_reject(p.null_hyp.size(), 0),
          alt_drawn(p.alt_hyp.size(), 0),
          alt_accept(p.alt_hyp.size(), 0) {}

    void merge(const Tallies& o) {
        mu_reject += o.mu_reject;
        lambda_accept += o.lambda_accept;
        for (std::size_t i = 0; i < null_drawn.size(); ++i) {
            null_drawn[i] += o.null_drawn[i];
            null_reject[i] += o.null_reject[i];
        }
        for (std::size_t j = 0; j < alt_drawn.size(); ++j) {
            alt_drawn[j] += o.alt_drawn[j];
            alt_accept[j] += o.alt_accept[j];
        }
    }
};

double ratio_of_type(const TestingProblem& problem, const SequenceType& t) {
    double log_null = sequence_log_prob(problem.null_hyp, t);
    double log_alt = sequence_log_prob(problem.alt_hyp, t);
    if (log_null == -kInf && log_alt == -kInf) return 0.0;
    if (log_null == -kInf) return -kInf;
    if (log_alt == -kInf) return kInf;
    return (log_null - log_alt) / static_cast<double>(t.n);
}

void one_trial(const TestingProblem& problem, const ThresholdSchedule& schedule, std::int64_t n,
               std::uint64_t seed, std::int64_t trial, Tallies& tally) {
    const double t = schedule.threshold(n);
    // Ties go to rejection: accept iff ratio strictly above the threshold.
    Draw null_draw = draw_type(problem.null_hyp, n,
                               RngStream(seed, 2 * static_cast<std::uint64_t>(trial)));
    bool null_accept = ratio_of_type(problem, null_draw.type) > t;
    ++tally.null_drawn[null_draw.component];
    if (!null_accept) {
        ++tally.mu_reject;
        ++tally.null_reject[null_draw.component];
    }

    Draw alt_draw = draw_type(problem.alt_hyp, n,
                              RngStream(seed, 2 * static_cast<std::uint64_t>(trial) + 1));
    bool alt_accept = ratio_of_type(problem, alt_draw.type) > t;
    ++tally.alt_drawn[alt_draw.component];
    if (alt_accept) {
        ++tally.lambda_accept;
        ++tally.alt_accept[alt_draw.component];
    }
}

TrialReport report_from_tallies(const TestingProblem& problem, std::int64_t n,
                                std::int64_t trials, std::uint64_t seed, const Tallies& tally) {
    TrialReport r;
    r.n = n;
    r.trials = trials;
    r.seed = seed;
    r.mu_hat = static_cast<double>(tally.mu_reject) / static_cast<double>(trials);
    r.lambda_hat = static_cast<double>(tally.lambda_accept) / static_cast<double>(trials);
    r.mu_ci95 = wilson_halfwidth(tally.mu_reject, trials);
    r.lambda_ci95 = wilson_halfwidth(tally.lambda_accept, trials);
    for (std::size_t i = 0; i < problem.null_hyp.size(); ++i)
        r.per_component_mu.push_back(tally.null_drawn[i] == 0
                                         ? 0.0
                                         : static_cast<double>(tally.null_reject[i]) /
                                               static_cast<double>(tally.null_drawn[i]));
    for (std::size_t j = 0; j < problem.alt_hyp.size(); ++j)
        r.per_component_lambda.push_back(tally.alt_drawn[j] == 0
                                             ? 0.0
                                             : static_cast<double>(tally.alt_accept[j]) /
                                                   static_cast<double>(tally.alt_drawn[j]));
    return r;
}

}  // namespace

double wilson_halfwidth(std::int64_t k, std::int64_t n) {
    const double z = 1.959963984540054;
    double nn = static_cast<double>(n);
    double p = static_cast<double>(k) / nn;
    double denom = 1.0 + z * z / nn;
    return z * std::sqrt(p * (1.0 - p) / nn + z * z / (4.0 * nn * nn)) / denom;
}

std::size_t sample_component(const MixedSource& src, const RngStream& stream) {
    double u = stream.uniform(0);
    double acc = 0.0;
    for (std::size_t i = 0; i < src.size(); ++i) {
        acc += src[i].weight;
        if (u < acc) return i;
    }
    return src.size() - 1;
}

std::vector<std::size_t> sample_sequence(const MixedSource& src, std::int64_t n,
                                         const RngStream& stream) {
    if (n < 1) raise(errc::domain, "sample_sequence: n must be >= 1");
    std::size_t comp = sample_component(src, stream);
    const Distribution& d = src[comp].dist;
    std::vector<std::size_t> out;
    out.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i)
        out.push_back(sample_symbol(d, stream.uniform(static_cast<std::uint64_t>(i) + 1)));
    return out;
}

TrialReport run_trials_serial(const TestingProblem& problem, const ThresholdSchedule& schedule,
                              std::int64_t n, std::int64_t trials, std::uint64_t seed) {
    if (trials < 1) raise(errc::domain, "run_trials: trials must be >= 1");
    Tallies tally(problem);
    for (std::int64_t k = 0; k < trials; ++k) one_trial(problem, schedule, n, seed, k, tally);
    return report_from_tallies(problem, n, trials, seed, tally);
}

TrialReport run_trials(const TestingProblem& problem, const ThresholdSchedule& schedule,
                       std::int64_t n, std::int64_t trials, std::uint64_t seed) {
    if (trials < 1) raise(errc::domain, "run_trials: trials must be >= 1");
    Tallies tally(problem);
#pragma omp parallel
    {
        Tallies local(problem);
#pragma omp for schedule(static)
        for (std::int64_t k = 0; k < trials; ++k)
            one_trial(problem, schedule, n, seed, k, local);
#pragma omp critical
        tally.merge(local);
    }
    return report_from_tallies(problem, n, trials, seed, tally);
}

ExactErrors exact_errors(const TestingProblem& problem, const ThresholdSchedule& schedule,
                         std::int64_t n, double cap) {
    auto table = build_type_table(problem, n, cap);
    const double t = schedule.threshold(n);
    double mu = 0.0, lambda = 0.0;
    for (const auto& e : table.entries) {
        if (!(e.z > t)) mu += e.null_mass;
        if (e.z > t) lambda += e.alt_mass;
    }
    return {mu, lambda};
}

std::vector<SweepRow> convergence_sweep(const TestingProblem& problem,
                                        const ThresholdSchedule& schedule,
                                        const std::vector<std::int64_t>& n_list,
                                        std::int64_t trials, std::uint64_t seed, bool force_mc,
                                        double cap) {
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] <= n_list[i - 1]) raise(errc::domain, "convergence_sweep: n_list not ascending");

    std::vector<SweepRow> rows;
    for (std::int64_t n : n_list) {
        double estimate = std::pow(static_cast<double>(n + 1),
                                   static_cast<double>(problem.null_hyp.alphabet_size() - 1));
        bool exact = !force_mc && estimate <= cap;
        SweepRow row{};
        row.n = n;
        if (exact) {
            auto e = exact_errors(problem, schedule, n, cap);
            row.trials = 0;
            row.mu = e.mu;
            row.lambda = e.lambda;
            row.mu_ci95 = 0.0;
            row.lambda_ci95 = 0.0;
        } else {
            if (trials < 1)
                raise(errc::domain,
                      "convergence_sweep: Monte Carlo evaluation requires trials >= 1");
            auto r = run_trials(problem, schedule, n, trials, seed);
            row.trials = trials;
            row.mu = r.mu_hat;
            row.lambda = r.lambda_hat;
            row.mu_ci95 = r.mu_ci95;
            row.lambda_ci95 = r.lambda_ci95;
        }
        double nd = static_cast<double>(n);
        double log_lambda = row.lambda > 0.0 ? std::log(row.lambda) : -kInf;
        row.rate1 = -log_lambda / nd;
        row.rate2 = -(log_lambda + nd * schedule.r_big) / std::sqrt(nd);
        rows.push_back(row);
    }
    return rows;
}

CompoundRegion::CompoundRegion(std::vector<Distribution> nulls, std::vector<Distribution> alts,
                               std::vector<std::vector<double>> thresholds)
    : nulls_(std::move(nulls)), alts_(std::move(alts)), thresholds_(std::move(thresholds)) {
    if (thresholds_.size() != nulls_.size())
        raise(errc::domain, "CompoundRegion: threshold matrix has wrong row count");
    for (const auto& row : thresholds_)
        if (row.size() != alts_.size())
            raise(errc::domain, "CompoundRegion: threshold matrix has wrong column count");
}

double CompoundRegion::pair_ratio(std::size_t i, std::size_t j, const SequenceType& t) const {
    double log_p = 0.0, log_q = 0.0;
    for (std::size_t x = 0; x < t.counts.size(); ++x) {
        if (t.counts[x] == 0) continue;
        log_p += static_cast<double>(t.counts[x]) * nulls_[i].log_prob(x);
        log_q += static_cast<double>(t.counts[x]) * alts_[j].log_prob(x);
    }
    if (log_p == -kInf && log_q == -kInf) return 0.0;
    if (log_p == -kInf) return -kInf;
    if (log_q == -kInf) return kInf;
    return (log_p - log_q) / static_cast<double>(t.n);
}

bool CompoundRegion::pair_region(std::size_t i, std::size_t j, const SequenceType& t) const {
    return pair_ratio(i, j, t) > thresholds_[i][j];
}

bool CompoundRegion::operator()(const SequenceType& t) const {
    for (std::size_t i = 0; i < nulls_.size(); ++i) {
        bool all = true;
        for (std::size_t j = 0; j < alts_.size() && all; ++j) all = pair_region(i, j, t);
        if (all) return true;
    }
    return false;
}

void write_trial_report_csv(std::ostream& os, const TrialReport& report,
                            const ThresholdSchedule& schedule) {
    char buf[256];
    os << "n,trials,mu_hat,mu_ci95,lambda_hat,lambda_ci95,rate1,rate2\n";
    double nd = static_cast<double>(report.n);
    double log_lambda = report.lambda_hat > 0.0 ? std::log(report.lambda_hat) : -kInf;
    std::snprintf(buf, sizeof buf, "%lld,%lld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  static_cast<long long>(report.n), static_cast<long long>(report.trials),
                  report.mu_hat, report.mu_ci95, report.lambda_hat, report.lambda_ci95,
                  -log_lambda / nd, -(log_lambda + nd * schedule.r_big) / std::sqrt(nd));
    os << buf;
    os << "component_kind,index,error_hat\n";
    for (std::size_t i = 0; i < report.per_component_mu.size(); ++i) {
        std::snprintf(buf, sizeof buf, "null,%zu,%.17g\n", i, report.per_component_mu[i]);
        os << buf;
    }
    for (std::size_t j = 0; j < report.per_component_lambda.size(); ++j) {
        std::snprintf(buf, sizeof buf, "alt,%zu,%.17g\n", j, report.per_component_lambda[j]);
        os << buf;
    }
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    char buf[256];
    os << "n,trials,mu_hat,mu_ci95,lambda_hat,lambda_ci95,rate1,rate2\n";
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%lld,%lld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      static_cast<long long>(r.n), static_cast<long long>(r.trials), r.mu,
                      r.mu_ci95, r.lambda, r.lambda_ci95, r.rate1, r.rate2);
        os << buf;
    }
}

}  // namespace explab
