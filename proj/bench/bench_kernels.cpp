// Wall-clock comparison of the OpenMP kernels against their serial reference
// implementations, plus an equality check so a speedup never hides a drift.
//
//   bench_kernels [n_types] [mc_n] [mc_trials]
//
// defaults: a 3-letter type table at n = 400 and 2e5 Monte Carlo trials.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>

#include "explab/spectrum.hpp"
#include "explab/testlab.hpp"

using namespace explab;

namespace {

template <typename F>
double time_best_of(int reps, F&& f) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        auto t0 = std::chrono::steady_clock::now();
        f();
        auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    std::int64_t table_n = argc > 1 ? std::atoll(argv[1]) : 400;
    std::int64_t mc_n = argc > 2 ? std::atoll(argv[2]) : 64;
    std::int64_t mc_trials = argc > 3 ? std::atoll(argv[3]) : 200000;

    MixedSource null_mix({{0.5, Distribution({0.2, 0.3, 0.5})},
                          {0.3, Distribution({0.6, 0.2, 0.2})},
                          {0.2, Distribution({0.1, 0.1, 0.8})}});
    MixedSource alt_mix({{0.6, Distribution({0.4, 0.4, 0.2})},
                         {0.4, Distribution({0.3, 0.5, 0.2})}});
    TestingProblem problem(null_mix, alt_mix);

    std::printf("type table: |X| = 3, n = %lld\n", static_cast<long long>(table_n));
    TypeTable par_table, ser_table;
    double t_par = time_best_of(3, [&] { par_table = build_type_table(problem, table_n); });
    double t_ser = time_best_of(3, [&] { ser_table = build_type_table_serial(problem, table_n); });
    bool same = par_table.entries.size() == ser_table.entries.size();
    for (std::size_t i = 0; same && i < par_table.entries.size(); ++i)
        same = par_table.entries[i].z == ser_table.entries[i].z &&
               par_table.entries[i].null_mass == ser_table.entries[i].null_mass &&
               par_table.entries[i].alt_mass == ser_table.entries[i].alt_mass;
    std::printf("  parallel %.4fs   serial %.4fs   speedup %.2fx   identical: %s\n", t_par,
                t_ser, t_ser / t_par, same ? "yes" : "NO");

    std::printf("monte carlo: n = %lld, trials = %lld\n", static_cast<long long>(mc_n),
                static_cast<long long>(mc_trials));
    auto schedule = ThresholdSchedule::first_order(0.02);
    TrialReport par_rep, ser_rep;
    double m_par =
        time_best_of(3, [&] { par_rep = run_trials(problem, schedule, mc_n, mc_trials, 7); });
    double m_ser = time_best_of(
        3, [&] { ser_rep = run_trials_serial(problem, schedule, mc_n, mc_trials, 7); });
    bool mc_same = par_rep.mu_hat == ser_rep.mu_hat && par_rep.lambda_hat == ser_rep.lambda_hat;
    std::printf("  parallel %.4fs   serial %.4fs   speedup %.2fx   identical: %s\n", m_par,
                m_ser, m_ser / m_par, mc_same ? "yes" : "NO");

    return same && mc_same ? 0 : 1;
}
