#include "explab/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace explab {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

ExtReal kl_divergence(const Distribution& p, const Distribution& q) {
    require_same_alphabet(p, q);
    double sum = 0.0;
    for (std::size_t x = 0; x < p.alphabet_size(); ++x) {
        if (p[x] == 0.0) continue;
        if (q[x] == 0.0) return ExtReal::pos_inf();
        sum += p[x] * (p.log_prob(x) - q.log_prob(x));
    }
    return ExtReal::finite(std::max(sum, 0.0));
}

double divergence_variance(const Distribution& p, const Distribution& q) {
    ExtReal d = kl_divergence(p, q);
    if (!d.is_finite())
        raise(errc::unsupported_support, "divergence_variance: D(p||q) is infinite");
    double mean = d.value();
    double var = 0.0;
    for (std::size_t x = 0; x < p.alphabet_size(); ++x) {
        if (p[x] == 0.0) continue;
        double r = p.log_prob(x) - q.log_prob(x) - mean;
        var += p[x] * r * r;
    }
    return std::max(var, 0.0);
}

double mixture_log_sum(const std::vector<double>& log_weights,
                       const std::vector<double>& component_log_probs) {
    double m = kNegInf;
    for (std::size_t i = 0; i < log_weights.size(); ++i)
        m = std::max(m, log_weights[i] + component_log_probs[i]);
    if (m == kNegInf) return kNegInf;
    double s = 0.0;
    for (std::size_t i = 0; i < log_weights.size(); ++i)
        s += std::exp(log_weights[i] + component_log_probs[i] - m);
    return m + std::log(s);
}

double sequence_log_prob(const MixedSource& src, const SequenceType& t) {
    if (t.counts.size() != src.alphabet_size())
        raise(errc::alphabet_mismatch, "sequence_log_prob: type and source alphabet differ");
    std::vector<double> lw, lp;
    lw.reserve(src.size());
    lp.reserve(src.size());
    for (const auto& c : src.components()) {
        double s = 0.0;
        for (std::size_t x = 0; x < t.counts.size(); ++x) {
            if (t.counts[x] == 0) continue;
            s += static_cast<double>(t.counts[x]) * c.dist.log_prob(x);
        }
        lw.push_back(std::log(c.weight));
        lp.push_back(s);
    }
    return mixture_log_sum(lw, lp);
}

std::vector<SequenceType> enumerate_types(std::size_t alphabet_size, std::int64_t n, double cap) {
    if (n < 1 || alphabet_size < 2)
        raise(errc::domain, "enumerate_types: need n >= 1 and alphabet_size >= 2");
    double estimate = std::pow(static_cast<double>(n + 1), static_cast<double>(alphabet_size - 1));
    if (estimate > cap)
        raise(errc::enumeration_too_large,
              "enumerate_types: (n+1)^(|X|-1) = " + std::to_string(estimate) +
                  " exceeds cap " + std::to_string(cap));

    std::vector<SequenceType> out;
    const std::size_t k = alphabet_size;
    std::vector<std::int64_t> counts(k, 0);
    counts[k - 1] = n;
    // Lexicographic walk over compositions of n into k parts.
    for (;;) {
        out.emplace_back(n, counts);
        std::int64_t suffix = counts[k - 1];
        std::size_t i = k - 1;
        while (i > 0 && suffix == 0) suffix += counts[--i];
        if (i == 0) break;
        --i;
        ++counts[i];
        for (std::size_t j = i + 1; j < k; ++j) counts[j] = 0;
        counts[k - 1] = suffix - 1;
    }
    return out;
}

double type_class_log_size(const SequenceType& t) {
    double v = std::lgamma(static_cast<double>(t.n) + 1.0);
    for (auto c : t.counts) v -= std::lgamma(static_cast<double>(c) + 1.0);
    return v;
}

}  // namespace explab
