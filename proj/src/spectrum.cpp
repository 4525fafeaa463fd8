#include "explab/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace explab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

TypeEntry make_entry(const TestingProblem& problem, SequenceType type) {
    TypeEntry e{std::move(type), 0, 0, 0, 0, 0, 0};
    e.log_mult = type_class_log_size(e.type);
    e.log_null = sequence_log_prob(problem.null_hyp, e.type);
    e.log_alt = sequence_log_prob(problem.alt_hyp, e.type);
    double n = static_cast<double>(e.type.n);
    if (e.log_null == -kInf && e.log_alt == -kInf)
        e.z = 0.0;  // zero mass under both hypotheses; the value is inert
    else if (e.log_null == -kInf)
        e.z = -kInf;
    else if (e.log_alt == -kInf)
        e.z = kInf;
    else
        e.z = (e.log_null - e.log_alt) / n;
    e.null_mass = e.log_null == -kInf ? 0.0 : std::exp(e.log_mult + e.log_null);
    e.alt_mass = e.log_alt == -kInf ? 0.0 : std::exp(e.log_mult + e.log_alt);
    return e;
}

}  // namespace

TypeTable build_type_table_serial(const TestingProblem& problem, std::int64_t n, double cap) {
    auto types = enumerate_types(problem.null_hyp.alphabet_size(), n, cap);
    TypeTable table{n, {}};
    table.entries.reserve(types.size());
    for (auto& t : types) table.entries.push_back(make_entry(problem, std::move(t)));
    return table;
}

TypeTable build_type_table(const TestingProblem& problem, std::int64_t n, double cap) {
    auto types = enumerate_types(problem.null_hyp.alphabet_size(), n, cap);
    TypeTable table{n, {}};
    table.entries.resize(types.size(), TypeEntry{SequenceType(1, {1, 0}), 0, 0, 0, 0, 0, 0});
    const std::int64_t count = static_cast<std::int64_t>(types.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < count; ++i)
        table.entries[i] = make_entry(problem, std::move(types[i]));
    return table;
}

SpectrumTable spectrum_from_table(const TypeTable& table) {
    std::vector<std::pair<double, double>> jumps;  // (z, mass)
    for (const auto& e : table.entries)
        if (e.null_mass > 0.0) jumps.emplace_back(e.z, e.null_mass);
    std::sort(jumps.begin(), jumps.end());

    SpectrumTable out{table.n, {}};
    double cum = 0.0;
    for (std::size_t i = 0; i < jumps.size();) {
        double z = jumps[i].first;
        double mass = 0.0;
        std::size_t j = i;
        while (j < jumps.size() && jumps[j].first - z <= kZMergeTol) mass += jumps[j++].second;
        cum += mass;
        out.points.push_back({z, cum});
        i = j;
    }
    return out;
}

SpectrumTable exact_spectrum(const TestingProblem& problem, std::int64_t n, double cap) {
    return spectrum_from_table(build_type_table(problem, n, cap));
}

double SpectrumTable::cdf(double z) const {
    double mass = 0.0;
    for (const auto& p : points) {
        if (p.z > z) break;
        mass = p.mass_cdf;
    }
    return mass;
}

double k_of_r(const TestingProblem& problem, std::int64_t n, double r_big, double cap) {
    return exact_spectrum(problem, n, cap).cdf(r_big);
}

double k_of_rs(const TestingProblem& problem, std::int64_t n, double r_big, double s, double cap) {
    return exact_spectrum(problem, n, cap).cdf(r_big + s / std::sqrt(static_cast<double>(n)));
}

Lemma1Check check_lemma1(const TestingProblem& problem, std::int64_t n, double t, double cap) {
    if (!(t > 0.0)) raise(errc::domain, "check_lemma1: t must be > 0");
    auto table = build_type_table(problem, n, cap);
    double lambda = 0.0;
    for (const auto& e : table.entries)
        if (e.z >= t) lambda += e.alt_mass;
    double bound = std::exp(-static_cast<double>(n) * t);
    return {lambda, bound, lambda <= bound + 1e-12};
}

Lemma2Check check_lemma2(const TestingProblem& problem, std::int64_t n, double t,
                         const TypeRegion& region, double cap) {
    if (!(t > 0.0)) raise(errc::domain, "check_lemma2: t must be > 0");
    auto table = build_type_table(problem, n, cap);
    double mu = 0.0, lambda = 0.0, rhs = 0.0;
    for (const auto& e : table.entries) {
        bool accepted = region(e.type);
        if (!accepted) mu += e.null_mass;
        if (accepted) lambda += e.alt_mass;
        if (e.z <= t) rhs += e.null_mass;
    }
    double lhs = mu + std::exp(static_cast<double>(n) * t) * lambda;
    return {lhs, rhs, lhs >= rhs - 1e-12};
}

ExpurgationReport expurgation_report(const MixedSource& null_mix, std::int64_t n, double cap) {
    auto types = enumerate_types(null_mix.alphabet_size(), n, cap);
    const double slack = std::pow(static_cast<double>(n), 0.25);

    ExpurgationReport report;
    report.n = n;
    report.per_type_member.assign(null_mix.size(), std::vector<bool>(types.size(), false));
    report.star_weight = 0.0;
    for (std::size_t i = 0; i < null_mix.size(); ++i) {
        MixedSource comp = MixedSource::singleton(null_mix[i].dist);
        bool in_all = true;
        for (std::size_t k = 0; k < types.size(); ++k) {
            double log_comp = sequence_log_prob(comp, types[k]);
            double log_mix = sequence_log_prob(null_mix, types[k]);
            bool member = log_comp <= slack + log_mix;
            report.per_type_member[i][k] = member;
            in_all = in_all && member;
        }
        if (in_all) report.star_weight += null_mix[i].weight;
    }
    double alpha = static_cast<double>(null_mix.alphabet_size());
    report.bound = 1.0 - std::pow(static_cast<double>(n) + 1.0, alpha) * std::exp(-slack);
    report.ok = report.star_weight >= report.bound - 1e-12;
    return report;
}

DecompositionCheck check_decomposition(const MixedSource& null_mix, const MixedSource& alt,
                                       std::int64_t n, std::size_t component, double z,
                                       double gamma, double cap) {
    if (component >= null_mix.size())
        raise(errc::domain, "check_decomposition: component index out of range");
    if (!(gamma > 0.0)) raise(errc::domain, "check_decomposition: gamma must be > 0");
    require_same_alphabet(null_mix, alt);

    auto report = expurgation_report(null_mix, n, cap);
    bool in_star = true;
    for (bool m : report.per_type_member[component]) in_star = in_star && m;
    if (!in_star)
        raise(errc::precondition_violation,
              "check_decomposition: component is outside the expurgated set for this n");

    auto types = enumerate_types(null_mix.alphabet_size(), n, cap);
    MixedSource comp = MixedSource::singleton(null_mix[component].dist);
    const double nd = static_cast<double>(n);
    const double upper_shift = std::pow(nd, -0.75);
    const double lower_shift = gamma / std::sqrt(nd);

    double p_mix_le = 0.0, p_comp_upper = 0.0, p_comp_lower = 0.0;
    for (const auto& t : types) {
        double log_comp = sequence_log_prob(comp, t);
        if (log_comp == -kInf) continue;  // zero mass under the component
        double mass = std::exp(type_class_log_size(t) + log_comp);
        double log_mix = sequence_log_prob(null_mix, t);
        double log_alt = sequence_log_prob(alt, t);
        double z_mix = log_alt == -kInf ? kInf : (log_mix - log_alt) / nd;
        double z_comp = log_alt == -kInf ? kInf : (log_comp - log_alt) / nd;
        if (z_mix <= z) p_mix_le += mass;
        if (z_comp <= z + upper_shift) p_comp_upper += mass;
        if (z_comp <= z - lower_shift) p_comp_lower += mass;
    }
    bool upper_ok = p_mix_le <= p_comp_upper + 1e-12;
    bool lower_ok = p_mix_le >= p_comp_lower - std::exp(-std::sqrt(nd) * gamma) - 1e-12;
    return {upper_ok, lower_ok};
}

void write_spectrum_csv(std::ostream& os, const SpectrumTable& table) {
    os << "z,mass_cdf\n";
    char buf[128];
    for (const auto& p : table.points) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p.z, p.mass_cdf);
        os << buf;
    }
}

}  // namespace explab
