// explab: first/second-order error exponents for hypothesis testing between
// finite mixtures of memoryless sources, exact finite-n spectra, and a
// reproducible Monte Carlo harness.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "explab/config.hpp"
#include "explab/exponents.hpp"
#include "explab/philox.hpp"
#include "explab/spectrum.hpp"
#include "explab/testlab.hpp"

namespace {

using namespace explab;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitResource = 4;

double type_cap_from_env() {
    const char* env = std::getenv("EXPLAB_TYPE_CAP");
    if (!env) return kDefaultTypeCap;
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end == env || !(v > 0)) {
        std::cerr << "warning: ignoring malformed EXPLAB_TYPE_CAP\n";
        return kDefaultTypeCap;
    }
    return v;
}

struct Display {
    bool bits = false;
    double rate(double nats) const { return bits ? nats / std::log(2.0) : nats; }
    double rate2(double nats2) const {
        return bits ? nats2 / (std::log(2.0) * std::log(2.0)) : nats2;
    }
    const char* unit() const { return bits ? "bits" : "nats"; }
};

void print_profile(const ExponentProfile& profile, const Display& disp, bool csv) {
    if (csv) {
        std::printf("component,weight,d_i,v_i,sigma_index\n");
        for (std::size_t i = 0; i < profile.rows.size(); ++i) {
            const auto& r = profile.rows[i];
            std::printf("%zu,%.17g,%.17g,%.17g,%zu\n", i, r.weight, disp.rate(r.divergence),
                        disp.rate2(r.variance), r.sigma_index);
        }
        return;
    }
    std::printf("profile (%s):\n", disp.unit());
    std::printf("  %-4s %-12s %-16s %-16s %s\n", "i", "weight", "d_i", "v_i", "j(i)");
    for (std::size_t i = 0; i < profile.rows.size(); ++i) {
        const auto& r = profile.rows[i];
        std::printf("  %-4zu %-12.6g %-16.10g %-16.10g %zu\n", i, r.weight,
                    disp.rate(r.divergence), disp.rate2(r.variance), r.sigma_index);
    }
}

std::string ext_str(const ExtReal& x, const Display& disp) {
    if (x.is_pos_inf()) return "+inf";
    if (x.is_neg_inf()) return "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", disp.rate(x.value()));
    return buf;
}

int cmd_exponent(const std::string& config_path, const std::string& mode, double eps, double r_big,
                 double r_hoeff, bool have_eps, bool have_r_big, bool have_r, bool csv, bool bits) {
    auto cfg = ProblemConfig::load(config_path);
    Display disp{bits};
    auto need = [&](bool have, const char* flag) {
        if (!have) raise(errc::domain, std::string("exponent ") + mode + ": missing " + flag);
    };

    if (mode == "compound0") {
        double b = compound_zero_exponent(cfg.null_distributions(), cfg.alt_distributions());
        if (csv)
            std::printf("exponent,value\ncompound0,%.17g\n", disp.rate(b));
        else
            std::printf("B_0 (compound) = %.12g %s\n", disp.rate(b), disp.unit());
        return kExitOk;
    }
    if (mode == "hoeffding" || mode == "compound_r") {
        need(have_r, "--r");
        double b = compound_r_exponent(cfg.null_distributions(), cfg.alt_distributions(), r_hoeff);
        if (csv)
            std::printf("exponent,value\n%s,%.17g\n", mode.c_str(), disp.rate(b));
        else
            std::printf("B_e(r=%.6g) = %.12g %s\n", r_hoeff, disp.rate(b), disp.unit());
        return kExitOk;
    }

    auto problem = cfg.problem();
    auto profile = build_profile(problem);
    print_profile(profile, disp, csv);
    if (mode == "first") {
        need(have_eps, "--eps");
        ExtReal b = first_order_exponent(profile, eps);
        if (csv)
            std::printf("exponent,value\nfirst,%s\n", ext_str(b, disp).c_str());
        else
            std::printf("B_eps(eps=%.6g) = %s %s\n", eps, ext_str(b, disp).c_str(), disp.unit());
    } else if (mode == "second") {
        need(have_eps, "--eps");
        need(have_r_big, "--R");
        ExtReal s = second_order_exponent(profile, eps, r_big);
        if (csv)
            std::printf("exponent,value\nsecond,%s\n", ext_str(s, disp).c_str());
        else
            std::printf("S(eps=%.6g, R=%.10g) = %s %s\n", eps, disp.rate(r_big),
                        ext_str(s, disp).c_str(), disp.unit());
    } else if (mode == "canonical") {
        need(have_eps, "--eps");
        auto sol = canonical_solve(profile, eps);
        if (csv)
            std::printf("exponent,b,s\ncanonical,%.17g,%s\n", disp.rate(sol.b),
                        ext_str(sol.s, disp).c_str());
        else
            std::printf("canonical: b = %.12g %s, s = %s %s\n", disp.rate(sol.b), disp.unit(),
                        ext_str(sol.s, disp).c_str(), disp.unit());
    } else {
        raise(errc::domain, "exponent: unknown mode " + mode);
    }
    return kExitOk;
}

int cmd_spectrum(const std::string& config_path, std::int64_t n, double r_big, double s,
                 bool have_r_big, bool have_s, bool check_lemmas, const std::string& out_path,
                 bool bits, double cap, std::uint64_t seed) {
    auto cfg = ProblemConfig::load(config_path);
    auto problem = cfg.problem();
    Display disp{bits};

    SpectrumTable table;
    try {
        table = exact_spectrum(problem, n, cap);
    } catch (const error& e) {
        if (e.code() == errc::enumeration_too_large)
            std::cerr << "hint: the type space is too large for exact enumeration; "
                         "use `explab simulate --trials ...` instead\n";
        throw;
    }

    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) raise(errc::domain, "spectrum: cannot open output file " + out_path);
        os = &file;
    }
    write_spectrum_csv(*os, table);

    if (have_r_big) {
        std::printf("K(R=%.10g, n=%lld) = %.17g\n", disp.rate(r_big), static_cast<long long>(n),
                    table.cdf(r_big));
        if (have_s)
            std::printf("K(R=%.10g, S=%.10g, n=%lld) = %.17g\n", disp.rate(r_big), disp.rate(s),
                        static_cast<long long>(n),
                        table.cdf(r_big + s / std::sqrt(static_cast<double>(n))));
    }

    if (check_lemmas) {
        int pass = 0, fail = 0;
        for (double t : {0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0}) {
            auto c1 = check_lemma1(problem, n, t, cap);
            (c1.ok ? pass : fail)++;
        }
        auto types = enumerate_types(problem.null_hyp.alphabet_size(), n, cap);
        RngStream rng(seed, 0xC0FFEE);
        for (int k = 0; k < 100; ++k) {
            std::vector<bool> member(types.size());
            for (std::size_t i = 0; i < types.size(); ++i)
                member[i] = rng.uniform(static_cast<std::uint64_t>(k) * types.size() + i) < 0.5;
            auto region = [&](const SequenceType& t) {
                for (std::size_t i = 0; i < types.size(); ++i)
                    if (types[i].counts == t.counts) return static_cast<bool>(member[i]);
                return false;
            };
            auto c2 = check_lemma2(problem, n, 0.1, region, cap);
            (c2.ok ? pass : fail)++;
        }
        auto rep = expurgation_report(problem.null_hyp, n, cap);
        (rep.ok ? pass : fail)++;
        for (std::size_t i = 0; i < problem.null_hyp.size(); ++i) {
            bool in_star = true;
            for (bool m : rep.per_type_member[i]) in_star = in_star && m;
            if (!in_star) continue;
            for (double z : {-0.5, -0.1, 0.0, 0.1, 0.5}) {
                auto dc = check_decomposition(problem.null_hyp, problem.alt_hyp, n, i, z, 1.0, cap);
                (dc.upper_ok ? pass : fail)++;
                (dc.lower_ok ? pass : fail)++;
            }
        }
        std::printf("lemma checks: %d ok, %d failed\n", pass, fail);
        if (fail > 0) return kExitDomain;
    }
    return kExitOk;
}

int cmd_simulate(const std::string& config_path, double r_big, double s, bool have_s,
                 const std::vector<std::int64_t>& n_list, std::int64_t trials, std::uint64_t seed,
                 bool force_mc, const std::string& out_path, double cap) {
    auto cfg = ProblemConfig::load(config_path);
    auto problem = cfg.problem();
    auto schedule = have_s ? ThresholdSchedule::second_order(r_big, s)
                           : ThresholdSchedule::first_order(r_big);
    auto rows = convergence_sweep(problem, schedule, n_list, trials, seed, force_mc, cap);

    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) raise(errc::domain, "simulate: cannot open output file " + out_path);
        os = &file;
    }
    write_sweep_csv(*os, rows);
    return kExitOk;
}

int cmd_verify(const std::string& config_path, std::int64_t n_min, std::int64_t n_max,
               int regions, std::uint64_t seed, double cap) {
    auto cfg = ProblemConfig::load(config_path);
    auto problem = cfg.problem();

    int pass = 0, fail = 0;
    for (std::int64_t n = n_min; n <= n_max; ++n) {
        for (double t : {0.02, 0.05, 0.1, 0.2, 0.5}) {
            auto c1 = check_lemma1(problem, n, t, cap);
            (c1.ok ? pass : fail)++;
        }
        auto types = enumerate_types(problem.null_hyp.alphabet_size(), n, cap);
        RngStream rng(seed, static_cast<std::uint64_t>(n));
        for (int k = 0; k < regions; ++k) {
            std::vector<bool> member(types.size());
            for (std::size_t i = 0; i < types.size(); ++i)
                member[i] = rng.uniform(static_cast<std::uint64_t>(k) * types.size() + i) < 0.5;
            auto region = [&](const SequenceType& t) {
                for (std::size_t i = 0; i < types.size(); ++i)
                    if (types[i].counts == t.counts) return static_cast<bool>(member[i]);
                return false;
            };
            auto c2 = check_lemma2(problem, n, 0.1, region, cap);
            (c2.ok ? pass : fail)++;
        }
    }
    std::printf("lemma 1/2 batteries: %d ok, %d failed\n", pass, fail);

    int pass3 = 0, fail3 = 0;
    for (std::int64_t n : {4, 8, 16, 32, 64}) {
        auto rep = expurgation_report(problem.null_hyp, n, cap);
        (rep.ok ? pass3 : fail3)++;
    }
    std::printf("lemma 3 (expurgation) bounds: %d ok, %d failed\n", pass3, fail3);

    int pass45 = 0, fail45 = 0;
    for (std::int64_t n = n_min; n <= n_max; n += 4) {
        auto rep = expurgation_report(problem.null_hyp, n, cap);
        for (std::size_t i = 0; i < problem.null_hyp.size(); ++i) {
            bool in_star = true;
            for (bool m : rep.per_type_member[i]) in_star = in_star && m;
            if (!in_star) continue;
            for (double gamma : {0.5, 1.0, 2.0})
                for (int gz = 0; gz < 21; ++gz) {
                    double z = -1.0 + 0.1 * gz;
                    auto dc =
                        check_decomposition(problem.null_hyp, problem.alt_hyp, n, i, z, gamma, cap);
                    (dc.upper_ok ? pass45 : fail45)++;
                    (dc.lower_ok ? pass45 : fail45)++;
                }
        }
    }
    std::printf("lemma 4/5 (decomposition) checks: %d ok, %d failed\n", pass45, fail45);

    return (fail + fail3 + fail45) == 0 ? kExitOk : kExitDomain;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"error exponents for hypothesis testing between mixed memoryless sources"};
    app.require_subcommand(1);
    const double cap = type_cap_from_env();

    // exponent
    std::string e_config, e_mode;
    double e_eps = 0, e_r_big = 0, e_r = 0;
    bool e_csv = false, e_bits = false;
    auto* exponent = app.add_subcommand("exponent", "closed-form and solved exponent formulas");
    exponent->add_option("config", e_config, "problem config file")->required();
    exponent
        ->add_option("mode", e_mode, "first|second|canonical|compound0|hoeffding|compound_r")
        ->required();
    auto* e_eps_opt = exponent->add_option("--eps", e_eps, "type-I error budget in [0,1)");
    auto* e_R_opt = exponent->add_option("--R", e_r_big, "first-order rate R (nats)");
    auto* e_r_opt = exponent->add_option("--r", e_r, "type-I exponent r > 0 (nats)");
    exponent->add_flag("--csv", e_csv, "machine-readable output");
    exponent->add_flag("--bits", e_bits, "display rates in bits");

    // spectrum
    std::string s_config, s_out;
    std::int64_t s_n = 0;
    double s_r_big = 0, s_s = 0;
    bool s_check = false, s_bits = false;
    std::uint64_t s_seed = 1;
    auto* spectrum = app.add_subcommand("spectrum", "exact finite-n divergence spectrum");
    spectrum->add_option("config", s_config, "problem config file")->required();
    spectrum->add_option("--n", s_n, "block length")->required();
    auto* s_R_opt = spectrum->add_option("--R", s_r_big, "evaluate K(R) at this rate");
    auto* s_s_opt = spectrum->add_option("--s", s_s, "evaluate K(R,S) at this second-order rate");
    spectrum->add_flag("--check-lemmas", s_check, "run the lemma batteries at this n");
    spectrum->add_option("-o,--output", s_out, "write the CSV here instead of stdout");
    spectrum->add_option("--seed", s_seed, "seed for the random-region battery");
    spectrum->add_flag("--bits", s_bits, "display rates in bits");

    // simulate
    std::string m_config, m_out;
    double m_r_big = 0, m_s = 0;
    std::vector<std::int64_t> m_n_list;
    std::int64_t m_trials = 0;
    std::uint64_t m_seed = 1;
    bool m_force_mc = false;
    auto* simulate = app.add_subcommand("simulate", "threshold-test convergence sweep");
    simulate->add_option("config", m_config, "problem config file")->required();
    auto* m_R_opt = simulate->add_option("--R", m_r_big, "first-order rate R (nats)");
    auto* m_s_opt = simulate->add_option("--s", m_s, "second-order rate S (nats)");
    auto* m_n_opt = simulate->add_option("--n-list", m_n_list, "ascending block lengths");
    auto* m_t_opt = simulate->add_option("--trials", m_trials, "Monte Carlo trials per n");
    auto* m_seed_opt = simulate->add_option("--seed", m_seed, "RNG seed");
    simulate->add_flag("--force-mc", m_force_mc, "Monte Carlo even when exact evaluation fits");
    simulate->add_option("-o,--output", m_out, "write the CSV here instead of stdout");

    // verify
    std::string v_config;
    std::int64_t v_n_min = 4, v_n_max = 12;
    int v_regions = 100;
    std::uint64_t v_seed = 1;
    auto* verify = app.add_subcommand("verify", "exact lemma batteries");
    verify->add_option("config", v_config, "problem config file")->required();
    verify->add_option("--n-min", v_n_min, "smallest block length");
    verify->add_option("--n-max", v_n_max, "largest block length");
    verify->add_option("--regions", v_regions, "random regions per block length");
    verify->add_option("--seed", v_seed, "seed for the random-region battery");

    try {
        app.parse(argc, argv);
        if (exponent->parsed()) {
            auto cfg = ProblemConfig::load(e_config);
            if (!*e_eps_opt && cfg.defaults.eps) e_eps = *cfg.defaults.eps;
            if (!*e_R_opt && cfg.defaults.r_big) e_r_big = *cfg.defaults.r_big;
            if (!*e_r_opt && cfg.defaults.r_hoeffding) e_r = *cfg.defaults.r_hoeffding;
            bool have_eps = *e_eps_opt || cfg.defaults.eps.has_value();
            bool have_R = *e_R_opt || cfg.defaults.r_big.has_value();
            bool have_r = *e_r_opt || cfg.defaults.r_hoeffding.has_value();
            return cmd_exponent(e_config, e_mode, e_eps, e_r_big, e_r, have_eps, have_R, have_r,
                                e_csv, e_bits);
        }
        if (spectrum->parsed())
            return cmd_spectrum(s_config, s_n, s_r_big, s_s, static_cast<bool>(*s_R_opt),
                                static_cast<bool>(*s_s_opt), s_check, s_out, s_bits, cap, s_seed);
        if (simulate->parsed()) {
            auto cfg = ProblemConfig::load(m_config);
            if (!*m_R_opt && cfg.defaults.r_big) m_r_big = *cfg.defaults.r_big;
            else if (!*m_R_opt) raise(errc::domain, "simulate: missing --R");
            bool have_s = *m_s_opt || cfg.defaults.s.has_value();
            if (!*m_s_opt && cfg.defaults.s) m_s = *cfg.defaults.s;
            if (!*m_n_opt) m_n_list = cfg.defaults.n_list;
            if (m_n_list.empty()) raise(errc::domain, "simulate: missing --n-list");
            if (!*m_t_opt && cfg.defaults.trials) m_trials = *cfg.defaults.trials;
            if (!*m_seed_opt && cfg.defaults.seed) m_seed = *cfg.defaults.seed;
            return cmd_simulate(m_config, m_r_big, m_s, have_s, m_n_list, m_trials, m_seed,
                                m_force_mc, m_out, cap);
        }
        if (verify->parsed()) return cmd_verify(v_config, v_n_min, v_n_max, v_regions, v_seed, cap);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == errc::enumeration_too_large ? kExitResource : kExitDomain;
    }
}
