#include "explab/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "explab/normal.hpp"

namespace explab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool same_support(const Distribution& p, const Distribution& q) {
    for (std::size_t x = 0; x < p.alphabet_size(); ++x)
        if ((p[x] == 0.0) != (q[x] == 0.0)) return false;
    return true;
}

double kl_or_inf(const Distribution& p, const Distribution& q) {
    return kl_divergence(p, q).as_double();
}

// Member of the tilted family P_lambda ∝ p^lambda q^(1-lambda) on the
// common support. Requires the support sets to coincide.
Distribution tilted(const Distribution& p, const Distribution& q, double lambda) {
    std::vector<double> lw(p.alphabet_size(), -kInf);
    double m = -kInf;
    for (std::size_t x = 0; x < p.alphabet_size(); ++x) {
        if (p[x] == 0.0) continue;
        lw[x] = lambda * p.log_prob(x) + (1.0 - lambda) * q.log_prob(x);
        m = std::max(m, lw[x]);
    }
    double z = 0.0;
    for (double v : lw)
        if (v != -kInf) z += std::exp(v - m);
    double log_z = m + std::log(z);
    std::vector<double> probs(p.alphabet_size(), 0.0);
    for (std::size_t x = 0; x < p.alphabet_size(); ++x)
        if (lw[x] != -kInf) probs[x] = std::exp(lw[x] - log_z);
    return Distribution(probs);
}

// Exhaustive search over a simplex mesh, used when the tilted-family route
// does not apply (supports differ). Binary and ternary alphabets only.
double hoeffding_grid(const Distribution& p, const Distribution& q, double r) {
    const std::size_t k = p.alphabet_size();
    double best = kInf;
    auto consider = [&](const std::vector<double>& probs) {
        Distribution cand(probs);
        double dp = kl_or_inf(cand, p);
        if (dp < r) best = std::min(best, kl_or_inf(cand, q));
    };
    if (k == 2) {
        const double step = 1e-4;
        for (double t = 0.0; t <= 1.0 + 1e-12; t += step)
            consider({std::min(t, 1.0), std::max(1.0 - t, 0.0)});
    } else if (k == 3) {
        const double step = 2e-3;
        for (double a = 0.0; a <= 1.0 + 1e-12; a += step)
            for (double b = 0.0; a + b <= 1.0 + 1e-12; b += step) {
                double c = std::max(1.0 - a - b, 0.0);
                consider({std::min(a, 1.0), std::min(b, 1.0), c});
            }
    } else {
        raise(errc::unsupported_support,
              "hoeffding_exponent: supports differ and alphabet too large for grid fallback");
    }
    return best;
}

}  // namespace

std::pair<std::size_t, double> sigma_selector(const Distribution& p, const MixedSource& alt) {
    std::size_t best_index = 0;
    double best = kInf;
    for (std::size_t j = 0; j < alt.size(); ++j) {
        double d = kl_or_inf(p, alt[j].dist);
        if (d < best) {
            best = d;
            best_index = j;
        }
    }
    if (best == kInf)
        raise(errc::disjoint_support, "sigma_selector: every alternative has disjoint support");
    return {best_index, best};
}

ExponentProfile build_profile(const TestingProblem& problem) {
    ExponentProfile profile;
    profile.rows.reserve(problem.null_hyp.size());
    for (const auto& c : problem.null_hyp.components()) {
        auto [j, d] = sigma_selector(c.dist, problem.alt_hyp);
        double v = divergence_variance(c.dist, problem.alt_hyp[j].dist);
        profile.rows.push_back({c.weight, d, v, j});
    }
    return profile;
}

ExtReal first_order_exponent(const ExponentProfile& profile, double eps) {
    if (!(eps >= 0.0 && eps < 1.0)) raise(errc::domain, "first_order_exponent: eps outside [0,1)");
    if (profile.rows.empty()) raise(errc::domain, "first_order_exponent: empty profile");
    std::vector<double> ds;
    ds.reserve(profile.rows.size());
    for (const auto& r : profile.rows) ds.push_back(r.divergence);
    std::sort(ds.begin(), ds.end());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());

    double best = ds.front();  // strict-below weight of the smallest d is 0
    for (double u : ds) {
        double below = 0.0;
        for (const auto& r : profile.rows)
            if (r.divergence < u) below += r.weight;
        if (below <= eps) best = u;
    }
    return ExtReal::finite(best);
}

ExtReal second_order_exponent(const ExponentProfile& profile, double eps, double r_big) {
    if (!(eps >= 0.0 && eps < 1.0)) raise(errc::domain, "second_order_exponent: eps outside [0,1)");
    if (!(r_big >= 0.0)) raise(errc::domain, "second_order_exponent: R must be >= 0");

    double below = 0.0;
    std::vector<ExponentProfile::Row> boundary;
    for (const auto& r : profile.rows) {
        if (std::abs(r.divergence - r_big) <= kBoundaryTol)
            boundary.push_back(r);
        else if (r.divergence < r_big)
            below += r.weight;
    }
    if (boundary.empty()) return below <= eps ? ExtReal::pos_inf() : ExtReal::neg_inf();

    double target = eps - below;
    double boundary_weight = 0.0;
    for (const auto& r : boundary) boundary_weight += r.weight;
    if (target < 0.0) return ExtReal::neg_inf();
    if (target >= boundary_weight) return ExtReal::pos_inf();
    if (target == 0.0) {
        // Feasible only in the limit S -> -inf, except when every boundary
        // term is a step at 0 and all of (-inf,0) is feasible.
        for (const auto& r : boundary)
            if (r.variance > 0.0) return ExtReal::neg_inf();
        return ExtReal::finite(0.0);
    }

    // g(S) = sum over boundary of w_i Phi(S/sqrt(v_i)); a v_i = 0 term is a
    // unit step at S = 0. g is nondecreasing, so sup{S | g(S) <= target} is
    // found by bisection on the predicate.
    auto g = [&](double s) {
        double sum = 0.0;
        for (const auto& r : boundary)
            sum += r.weight * (r.variance > 0.0 ? norm_cdf(s / std::sqrt(r.variance))
                                                : (s >= 0.0 ? 1.0 : 0.0));
        return sum;
    };
    auto ok = [&](double s) { return g(s) <= target; };
    double lo = -1.0, hi = 1.0;
    while (!ok(lo)) lo *= 2.0;
    while (ok(hi)) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-10; ++i) {
        double mid = 0.5 * (lo + hi);
        (ok(mid) ? lo : hi) = mid;
    }
    return ExtReal::finite(0.5 * (lo + hi));
}

CanonicalSolution canonical_solve(const ExponentProfile& profile, double eps) {
    if (!(eps > 0.0 && eps < 1.0)) raise(errc::domain, "canonical_solve: eps outside (0,1)");
    double b = first_order_exponent(profile, eps).value();
    return {b, second_order_exponent(profile, eps, b)};
}

double compound_zero_exponent(const std::vector<Distribution>& nulls,
                              const std::vector<Distribution>& alts) {
    if (nulls.empty() || alts.empty())
        raise(errc::domain, "compound_zero_exponent: empty hypothesis list");
    double best = kInf;
    for (const auto& p : nulls)
        for (const auto& q : alts) best = std::min(best, kl_or_inf(p, q));
    if (best == kInf)
        raise(errc::disjoint_support, "compound_zero_exponent: all pairs have disjoint support");
    return best;
}

double hoeffding_exponent(const Distribution& p, const Distribution& q, double r) {
    require_same_alphabet(p, q);
    if (!(r > 0.0)) raise(errc::domain, "hoeffding_exponent: r must be > 0");
    if (!same_support(p, q)) return hoeffding_grid(p, q, r);

    double d_qp = kl_or_inf(q, p);
    if (r >= d_qp) return 0.0;  // q itself is feasible

    // D(P_lambda||p) decreases from D(q||p) at lambda=0 to 0 at lambda=1;
    // find the feasibility boundary and report the divergence to q there.
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
        double mid = 0.5 * (lo + hi);
        (kl_or_inf(tilted(p, q, mid), p) > r ? lo : hi) = mid;
    }
    return kl_or_inf(tilted(p, q, 0.5 * (lo + hi)), q);
}

double compound_r_exponent(const std::vector<Distribution>& nulls,
                           const std::vector<Distribution>& alts, double r) {
    if (nulls.empty() || alts.empty())
        raise(errc::domain, "compound_r_exponent: empty hypothesis list");
    double best = kInf;
    for (const auto& p : nulls)
        for (const auto& q : alts) best = std::min(best, hoeffding_exponent(p, q, r));
    if (best == kInf)
        raise(errc::disjoint_support, "compound_r_exponent: all pairs have disjoint support");
    return best;
}

}  // namespace explab
