#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "explab/exponents.hpp"
#include "explab/normal.hpp"
#include "test_util.hpp"

using namespace explab;
using namespace explab::testutil;

namespace {

ExponentProfile profile_of(std::vector<ExponentProfile::Row> rows) { return {std::move(rows)}; }

// Remark-2 style alternative: sup{ R | weight{d <= R} <= eps }, evaluated
// on the distinct d grid. Independent route used to cross-check the
// strict-inequality implementation.
double first_order_leq_form(const ExponentProfile& profile, double eps) {
    std::vector<double> ds;
    for (const auto& r : profile.rows) ds.push_back(r.divergence);
    std::sort(ds.begin(), ds.end());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
    for (double u : ds) {
        double inclusive = 0.0;
        for (const auto& r : profile.rows)
            if (r.divergence <= u) inclusive += r.weight;
        if (inclusive > eps) return u;
    }
    return ds.back();
}

}  // namespace

TEST_CASE("sigma_selector") {
    Distribution p({0.3, 0.7});
    auto alt1 = MixedSource::singleton(Distribution({0.5, 0.5}));
    auto [j0, v0] = sigma_selector(p, alt1);
    CHECK(j0 == 0);
    CHECK(v0 == doctest::Approx(0.082282878505051846).epsilon(1e-14));

    MixedSource alt2({{0.5, p}, {0.5, Distribution({0.5, 0.5})}});
    auto [j1, v1] = sigma_selector(p, alt2);
    CHECK(j1 == 0);
    CHECK(v1 == 0.0);

    // exhaustive 2-candidate comparison
    MixedSource alt3({{0.5, Distribution({0.5, 0.5})}, {0.5, Distribution({0.2, 0.8})}});
    double d0 = kl_divergence(p, alt3[0].dist).value();
    double d1 = kl_divergence(p, alt3[1].dist).value();
    auto [j2, v2] = sigma_selector(p, alt3);
    CHECK(j2 == (d1 < d0 ? 1u : 0u));
    CHECK(v2 == std::min(d0, d1));

    MixedSource disjoint({{1.0, Distribution({0.0, 1.0})}});
    CHECK_THROWS_AS(sigma_selector(Distribution({1.0, 0.0}), disjoint), error);
}

TEST_CASE("build_profile") {
    Distribution p({0.3, 0.7}), q({0.5, 0.5}), r({0.8, 0.2});
    TestingProblem single(MixedSource::singleton(p), MixedSource::singleton(q));
    auto prof = build_profile(single);
    REQUIRE(prof.rows.size() == 1);
    CHECK(prof.rows[0].weight == 1.0);
    CHECK(prof.rows[0].divergence == doctest::Approx(kl_divergence(p, q).value()));
    CHECK(prof.rows[0].variance == doctest::Approx(divergence_variance(p, q)));
    CHECK(prof.rows[0].sigma_index == 0);

    TestingProblem two(MixedSource({{0.6, p}, {0.4, r}}), MixedSource::singleton(q));
    auto prof2 = build_profile(two);
    REQUIRE(prof2.rows.size() == 2);
    CHECK(prof2.rows[0].divergence == doctest::Approx(kl_divergence(p, q).value()));
    CHECK(prof2.rows[1].divergence == doctest::Approx(kl_divergence(r, q).value()));

    // 2x2 per-entry divergence oracle
    MixedSource nulls({{0.6, p}, {0.4, r}});
    MixedSource alts({{0.5, q}, {0.5, Distribution({0.2, 0.8})}});
    auto prof3 = build_profile(TestingProblem(nulls, alts));
    for (std::size_t i = 0; i < 2; ++i) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_j = 0;
        for (std::size_t j = 0; j < 2; ++j) {
            double d = kl_divergence(nulls[i].dist, alts[j].dist).value();
            if (d < best) best = d, best_j = j;
        }
        CHECK(prof3.rows[i].divergence == doctest::Approx(best));
        CHECK(prof3.rows[i].sigma_index == best_j);
    }
}

TEST_CASE("first_order_exponent step behavior") {
    // Stein: singleton profile is flat in eps
    auto single = profile_of({{1.0, 0.3, 0.1, 0}});
    for (double eps : {0.0, 0.3, 0.9}) CHECK(first_order_exponent(single, eps).value() == 0.3);

    auto two = profile_of({{0.6, 0.2, 0.1, 0}, {0.4, 0.5, 0.1, 0}});
    CHECK(first_order_exponent(two, 0.5).value() == 0.2);
    CHECK(first_order_exponent(two, 0.7).value() == 0.5);
    CHECK(first_order_exponent(two, 0.6).value() == 0.5);  // weight{d < 0.5} = 0.6 <= 0.6

    CHECK_THROWS_AS(first_order_exponent(two, 1.0), error);
    CHECK_THROWS_AS(first_order_exponent(two, -0.1), error);
}

TEST_CASE("first_order_exponent: monotone, piecewise constant, dual form") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int it = 0; it < 100; ++it) {
        std::size_t m = 1 + it % 4;
        std::vector<double> w(m);
        double sum = 0.0;
        for (auto& x : w) sum += (x = 0.1 + u(rng));
        std::vector<ExponentProfile::Row> rows;
        for (std::size_t i = 0; i < m; ++i) rows.push_back({w[i] / sum, u(rng), 0.0, 0});
        auto prof = profile_of(rows);

        double prev = -1.0;
        for (double eps = 0.0; eps < 1.0; eps += 0.05) {
            double b = first_order_exponent(prof, eps).value();
            CHECK(b >= prev);
            prev = b;
            // value is always one of the d_i
            bool hit = false;
            for (const auto& r : rows) hit = hit || r.divergence == b;
            CHECK(hit);
            CHECK(b == first_order_leq_form(prof, eps));
        }
    }
}

TEST_CASE("second_order_exponent") {
    const double d = 0.3, v = 0.7;
    auto single = profile_of({{1.0, d, v, 0}});
    // Strassen: S = sqrt(V) PhiInv(eps) at R = D
    for (double eps : {0.05, 0.2, 0.5, 0.8, 0.95}) {
        double expected = std::sqrt(v) * norm_cdf_inv(eps);
        CHECK(second_order_exponent(single, eps, d).value() ==
              doctest::Approx(expected).epsilon(1e-9));
    }
    CHECK(second_order_exponent(single, 0.3, d - 0.01).is_pos_inf());
    CHECK(second_order_exponent(single, 0.3, d + 0.01).is_neg_inf());

    // symmetric two-component boundary: Phi(0) = 1/2 for both terms
    auto sym = profile_of({{0.5, d, 1.0, 0}, {0.5, d, 4.0, 0}});
    CHECK(second_order_exponent(sym, 0.5, d).value() == doctest::Approx(0.0).epsilon(1e-9));

    // degenerate variance on the boundary acts as a step at S = 0
    auto step = profile_of({{0.5, d, 0.0, 0}, {0.5, d, 1.0, 0}});
    // For eps = 0.25: step term is 0 for S < 0, so 0.5 Phi(S) = 0.25 at S = 0^-
    CHECK(step.rows[0].variance == 0.0);
    double s_quarter = second_order_exponent(step, 0.25, d).value();
    CHECK(s_quarter == doctest::Approx(0.0).epsilon(1e-9));
    // For eps = 0.75: S >= 0 side, 0.5 + 0.5 Phi(S) = 0.75 => S = 0
    CHECK(second_order_exponent(step, 0.75, d).value() == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("second_order_exponent monotone in eps") {
    auto prof = profile_of({{0.3, 0.2, 0.5, 0}, {0.4, 0.4, 1.5, 0}, {0.3, 0.4, 0.25, 0}});
    double prev = -1e18;
    for (double eps = 0.31; eps < 0.70; eps += 0.02) {
        auto s = second_order_exponent(prof, eps, 0.4);
        REQUIRE(s.is_finite());
        CHECK(s.value() >= prev - 1e-12);
        prev = s.value();
    }
    // eps below the strictly-below weight: -inf; no boundary and eps at or
    // above the strictly-below weight: +inf
    CHECK(second_order_exponent(prof, 0.1, 0.4).is_neg_inf());
    CHECK(second_order_exponent(prof, 0.2, 0.3).is_neg_inf());
    CHECK(second_order_exponent(prof, 0.5, 0.3).is_pos_inf());
}

TEST_CASE("canonical_solve") {
    Distribution p({0.3, 0.7}), q({0.5, 0.5});
    double d = kl_divergence(p, q).value(), v = divergence_variance(p, q);
    auto single = profile_of({{1.0, d, v, 0}});
    auto sol = canonical_solve(single, 0.2);
    CHECK(sol.b == d);
    CHECK(sol.s.value() == doctest::Approx(std::sqrt(v) * norm_cdf_inv(0.2)).epsilon(1e-9));

    auto two = profile_of({{0.6, 0.2, 0.5, 0}, {0.4, 0.5, 1.5, 0}});
    auto s1 = canonical_solve(two, 0.3);
    CHECK(s1.b == 0.2);
    CHECK(s1.s.value() == doctest::Approx(0.0).epsilon(1e-9));  // 0.6 Phi(0) = 0.3

    auto s2 = canonical_solve(two, 0.7);
    CHECK(s2.b == 0.5);
    // 0.6 + 0.4 Phi(s / sqrt(1.5)) = 0.7  =>  s = sqrt(1.5) PhiInv(0.25)
    CHECK(s2.s.value() == doctest::Approx(std::sqrt(1.5) * norm_cdf_inv(0.25)).epsilon(1e-9));
}

TEST_CASE("canonical equation residual") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int it = 0; it < 50; ++it) {
        std::size_t m = 1 + it % 3;
        std::vector<ExponentProfile::Row> rows;
        double sum = 0.0;
        std::vector<double> w(m);
        for (auto& x : w) sum += (x = 0.1 + u(rng));
        for (std::size_t i = 0; i < m; ++i)
            rows.push_back({w[i] / sum, 0.1 + 0.5 * u(rng), 0.1 + u(rng), 0});
        auto prof = profile_of(rows);
        double eps = 0.05 + 0.9 * u(rng);
        auto sol = canonical_solve(prof, eps);
        if (!sol.s.is_finite()) continue;
        double residual = 0.0;
        for (const auto& r : rows) {
            if (r.divergence < sol.b)
                residual += r.weight;
            else if (r.divergence == sol.b)
                residual += r.weight * norm_cdf(sol.s.value() / std::sqrt(r.variance));
        }
        CHECK(std::abs(residual - eps) <= 1e-9);
    }
}

TEST_CASE("compound_zero_exponent") {
    Distribution p({0.3, 0.7}), q({0.5, 0.5});
    CHECK(compound_zero_exponent({p}, {q}) == doctest::Approx(kl_divergence(p, q).value()));
    CHECK(compound_zero_exponent({p}, {p, q}) == 0.0);

    std::vector<Distribution> nulls = {bernoulli(0.3), bernoulli(0.6)};
    std::vector<Distribution> alts = {bernoulli(0.45), bernoulli(0.8)};
    double expected = std::numeric_limits<double>::infinity();
    for (const auto& a : nulls)
        for (const auto& b : alts)
            expected = std::min(expected, kl_divergence(a, b).value());
    CHECK(compound_zero_exponent(nulls, alts) == doctest::Approx(expected));

    CHECK_THROWS_AS(
        compound_zero_exponent({Distribution({1.0, 0.0})}, {Distribution({0.0, 1.0})}), error);
}

TEST_CASE("compound equals first-order at eps 0") {
    std::mt19937 rng(29);
    for (int it = 0; it < 20; ++it) {
        std::size_t kk = 1 + it % 3, ll = 1 + (it / 3) % 3;
        std::vector<Distribution> nulls, alts;
        for (std::size_t i = 0; i < kk; ++i) nulls.push_back(random_distribution(rng, 2));
        for (std::size_t j = 0; j < ll; ++j) alts.push_back(random_distribution(rng, 2));
        std::vector<MixedSource::Component> nc, ac;
        for (const auto& d : nulls) nc.push_back({1.0 / kk, d});
        for (const auto& d : alts) ac.push_back({1.0 / ll, d});
        TestingProblem mixed((MixedSource(nc)), (MixedSource(ac)));
        double via_profile = first_order_exponent(build_profile(mixed), 0.0).value();
        CHECK(compound_zero_exponent(nulls, alts) == via_profile);
    }
}

TEST_CASE("hoeffding_exponent") {
    Distribution p = bernoulli(0.2), q = bernoulli(0.6);
    CHECK(hoeffding_exponent(p, q, kl_divergence(q, p).value() + 0.01) == 0.0);
    CHECK(hoeffding_exponent(p, p, 0.5) == 0.0);
    CHECK_THROWS_AS(hoeffding_exponent(p, q, 0.0), error);
    CHECK_THROWS_AS(hoeffding_exponent(p, q, -1.0), error);

    double got = hoeffding_exponent(p, q, 0.05);
    double oracle = hoeffding_grid_oracle(p, q, 0.05, 1e-4);
    CHECK(std::abs(got - oracle) <= 1e-3);
}

TEST_CASE("hoeffding properties: nonincreasing in r, endpoints") {
    std::mt19937 rng(31);
    for (int it = 0; it < 10; ++it) {
        auto p = random_distribution(rng, 2 + it % 2);
        auto q = random_distribution(rng, 2 + it % 2);
        double d_qp = kl_divergence(q, p).value();
        double prev = std::numeric_limits<double>::infinity();
        for (double r = 0.01; r <= d_qp + 0.05; r += 0.01) {
            double b = hoeffding_exponent(p, q, r);
            CHECK(b <= prev + 1e-12);
            CHECK(b >= -1e-15);
            CHECK(b <= kl_divergence(p, q).value() + 1e-12);
            prev = b;
        }
        // continuous at r = D(q||p): value tends to 0
        CHECK(hoeffding_exponent(p, q, d_qp * (1 - 1e-9)) <= 1e-3);
        // r -> 0 limit: value tends to D(p||q)
        CHECK(hoeffding_exponent(p, q, 1e-8) ==
              doctest::Approx(kl_divergence(p, q).value()).epsilon(1e-3));
    }
}

TEST_CASE("compound_r_exponent") {
    Distribution p = bernoulli(0.2), q = bernoulli(0.6);
    CHECK(compound_r_exponent({p}, {q}, 0.05) == hoeffding_exponent(p, q, 0.05));

    std::vector<Distribution> nulls = {bernoulli(0.3), bernoulli(0.7)};
    std::vector<Distribution> alts = {bernoulli(0.4), bernoulli(0.55)};
    double big_r = 10.0;
    CHECK(compound_r_exponent(nulls, alts, big_r) == 0.0);

    double expected = std::numeric_limits<double>::infinity();
    for (const auto& a : nulls)
        for (const auto& b : alts) expected = std::min(expected, hoeffding_exponent(a, b, 0.05));
    CHECK(compound_r_exponent(nulls, alts, 0.05) == expected);
}
