#ifndef EXPLAB_CONFIG_HPP
#define EXPLAB_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "explab/exponents.hpp"

namespace explab {

/// On-disk problem description. See docs/config_format.md for the grammar.
/// All mixture and simplex invariants are re-checked when the config is
/// turned into a TestingProblem.
struct ProblemConfig {
    struct Component {
        double weight;
        std::vector<double> probs;
    };
    struct Defaults {
        std::optional<double> eps;
        std::optional<double> r_big;
        std::optional<double> s;
        std::optional<double> r_hoeffding;
        std::vector<std::int64_t> n_list;
        std::optional<std::int64_t> trials;
        std::optional<std::uint64_t> seed;
    };

    std::vector<std::string> alphabet;
    std::vector<Component> null_comps;
    std::vector<Component> alt_comps;
    Defaults defaults;

    static ProblemConfig from_json(const nlohmann::json& j);
    static ProblemConfig load(const std::string& path);
    nlohmann::json to_json() const;

    TestingProblem problem() const;
    std::vector<Distribution> null_distributions() const;
    std::vector<Distribution> alt_distributions() const;
};

}  // namespace explab

#endif
