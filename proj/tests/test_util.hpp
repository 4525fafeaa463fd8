// Shared helpers and independent oracles for the test suites. Everything in
// here recomputes expectations from first principles (full sequence-space
// enumeration, grid search), never through the library path under test.
#ifndef EXPLAB_TEST_UTIL_HPP
#define EXPLAB_TEST_UTIL_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "explab/distribution.hpp"
#include "explab/exponents.hpp"

namespace explab::testutil {

inline Distribution bernoulli(double p) { return Distribution({1.0 - p, p}); }

/// Random interior distribution on a k-letter alphabet.
inline Distribution random_distribution(std::mt19937& rng, std::size_t k,
                                        double min_mass = 0.02) {
    std::uniform_real_distribution<double> u(min_mass, 1.0);
    std::vector<double> w(k);
    double sum = 0.0;
    for (auto& x : w) sum += (x = u(rng));
    for (auto& x : w) x /= sum;
    return Distribution(w);
}

inline MixedSource random_mixture(std::mt19937& rng, std::size_t k, std::size_t components) {
    std::uniform_real_distribution<double> u(0.1, 1.0);
    std::vector<double> w(components);
    double sum = 0.0;
    for (auto& x : w) sum += (x = u(rng));
    std::vector<MixedSource::Component> parts;
    for (std::size_t i = 0; i < components; ++i)
        parts.push_back({w[i] / sum, random_distribution(rng, k)});
    return MixedSource(std::move(parts));
}

/// Probability of one explicit sequence under a mixed memoryless source,
/// by direct linear-domain summation (safe at the small n used in tests).
inline double sequence_prob_direct(const MixedSource& src, const std::vector<std::size_t>& seq) {
    double total = 0.0;
    for (const auto& c : src.components()) {
        double p = c.weight;
        for (auto x : seq) p *= c.dist[x];
        total += p;
    }
    return total;
}

/// Visit every sequence in X^n.
template <typename F>
void for_each_sequence(std::size_t alphabet, std::int64_t n, F&& visit) {
    std::vector<std::size_t> seq(static_cast<std::size_t>(n), 0);
    for (;;) {
        visit(seq);
        std::size_t i = seq.size();
        while (i > 0) {
            if (++seq[i - 1] < alphabet) break;
            seq[--i] = 0;
        }
        if (i == 0) break;
    }
}

/// Grid-search oracle for the Hoeffding exponent on binary or ternary
/// alphabets: exhaustive minimization of D(.||q) over { D(.||p) < r }.
inline double hoeffding_grid_oracle(const Distribution& p, const Distribution& q, double r,
                                    double step) {
    auto kl = [](const Distribution& a, const Distribution& b) {
        return kl_divergence(a, b).as_double();
    };
    double best = std::numeric_limits<double>::infinity();
    auto consider = [&](std::vector<double> probs) {
        Distribution cand(std::move(probs));
        if (kl(cand, p) < r) best = std::min(best, kl(cand, q));
    };
    if (p.alphabet_size() == 2) {
        for (double t = 0.0; t <= 1.0 + 1e-12; t += step)
            consider({std::min(t, 1.0), std::max(1.0 - t, 0.0)});
    } else {
        for (double a = 0.0; a <= 1.0 + 1e-12; a += step)
            for (double b = 0.0; a + b <= 1.0 + 1e-12; b += step)
                consider({std::min(a, 1.0), std::min(b, 1.0), std::max(1.0 - a - b, 0.0)});
    }
    return best;
}

}  // namespace explab::testutil

#endif
