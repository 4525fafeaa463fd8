#ifndef EXPLAB_DISTRIBUTION_HPP
#define EXPLAB_DISTRIBUTION_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "explab/errors.hpp"

namespace explab {

inline constexpr double kSimplexTol = 1e-12;

/// Finite alphabet. Labels are display-only; size drives all computation.
struct Alphabet {
    std::size_t size;
    std::vector<std::string> labels;

    explicit Alphabet(std::size_t k, std::vector<std::string> lab = {})
        : size(k), labels(std::move(lab)) {
        if (size < 2) raise(errc::domain, "Alphabet: size must be >= 2");
        if (!labels.empty() && labels.size() != size)
            raise(errc::domain, "Alphabet: label count does not match size");
    }
};

/// Probability vector on a finite alphabet.
///
/// Entries must be nonnegative and sum to 1 within 1e-12; inputs within
/// tolerance are renormalized, anything further off is rejected.
class Distribution {
public:
    explicit Distribution(std::vector<double> probs);

    std::size_t alphabet_size() const { return probs_.size(); }
    double operator[](std::size_t x) const { return probs_[x]; }
    const std::vector<double>& probs() const { return probs_; }

    /// ln p(x); -inf when p(x) = 0.
    double log_prob(std::size_t x) const { return log_probs_[x]; }
    const std::vector<double>& log_probs() const { return log_probs_; }

private:
    std::vector<double> probs_;
    std::vector<double> log_probs_;
};

/// Finite mixture of memoryless sources: the component is drawn once and
/// then emits the whole sequence i.i.d.
class MixedSource {
public:
    struct Component {
        double weight;
        Distribution dist;
    };

    explicit MixedSource(std::vector<Component> components);
    MixedSource(double w, Distribution d) : MixedSource({Component{w, std::move(d)}}) {}
    static MixedSource singleton(Distribution d) { return MixedSource(1.0, std::move(d)); }

    std::size_t size() const { return components_.size(); }
    const Component& operator[](std::size_t i) const { return components_[i]; }
    const std::vector<Component>& components() const { return components_; }
    std::size_t alphabet_size() const { return components_.front().dist.alphabet_size(); }

private:
    std::vector<Component> components_;
};

/// Empirical distribution of a length-n sequence, stored as symbol counts.
struct SequenceType {
    std::int64_t n;
    std::vector<std::int64_t> counts;

    SequenceType(std::int64_t len, std::vector<std::int64_t> c);
};

void require_same_alphabet(const Distribution& p, const Distribution& q);
void require_same_alphabet(const MixedSource& a, const MixedSource& b);

}  // namespace explab

#endif
