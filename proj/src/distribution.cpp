#include "explab/distribution.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace explab {

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.size() < 2) raise(errc::invalid_distribution, "Distribution: alphabet size must be >= 2");
    double sum = 0.0;
    for (double p : probs_) {
        if (!(p >= 0.0)) raise(errc::invalid_distribution, "Distribution: negative or NaN entry");
        sum += p;
    }
    if (std::abs(sum - 1.0) > kSimplexTol)
        raise(errc::invalid_distribution, "Distribution: entries sum to " + std::to_string(sum) +
                                              ", outside simplex tolerance");
    for (double& p : probs_) p /= sum;
    log_probs_.reserve(probs_.size());
    for (double p : probs_)
        log_probs_.push_back(p > 0.0 ? std::log(p) : -std::numeric_limits<double>::infinity());
}

MixedSource::MixedSource(std::vector<Component> components) : components_(std::move(components)) {
    if (components_.empty()) raise(errc::invalid_distribution, "MixedSource: empty component list");
    double sum = 0.0;
    for (const auto& c : components_) {
        if (!(c.weight > 0.0))
            raise(errc::invalid_distribution, "MixedSource: component weights must be strictly positive");
        if (c.dist.alphabet_size() != components_.front().dist.alphabet_size())
            raise(errc::alphabet_mismatch, "MixedSource: components on different alphabets");
        sum += c.weight;
    }
    if (std::abs(sum - 1.0) > kSimplexTol)
        raise(errc::invalid_distribution, "MixedSource: weights sum to " + std::to_string(sum) +
                                              ", outside tolerance");
    for (auto& c : components_) c.weight /= sum;
}

SequenceType::SequenceType(std::int64_t len, std::vector<std::int64_t> c)
    : n(len), counts(std::move(c)) {
    if (n < 1) raise(errc::domain, "SequenceType: n must be >= 1");
    std::int64_t total = 0;
    for (auto k : counts) {
        if (k < 0) raise(errc::domain, "SequenceType: negative count");
        total += k;
    }
    if (total != n) raise(errc::domain, "SequenceType: counts do not sum to n");
}

void require_same_alphabet(const Distribution& p, const Distribution& q) {
    if (p.alphabet_size() != q.alphabet_size())
        raise(errc::alphabet_mismatch, "distributions on different alphabets");
}

void require_same_alphabet(const MixedSource& a, const MixedSource& b) {
    if (a.alphabet_size() != b.alphabet_size())
        raise(errc::alphabet_mismatch, "sources on different alphabets");
}

}  // namespace explab
