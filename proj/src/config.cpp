#include "explab/config.hpp"

#include <fstream>

namespace explab {

namespace {

using nlohmann::json;

std::vector<ProblemConfig::Component> parse_components(const json& j, const char* field) {
    std::vector<ProblemConfig::Component> out;
    for (const auto& c : j.at(field)) {
        ProblemConfig::Component comp;
        comp.weight = c.at("weight").get<double>();
        comp.probs = c.at("probs").get<std::vector<double>>();
        out.push_back(std::move(comp));
    }
    return out;
}

MixedSource to_source(const std::vector<ProblemConfig::Component>& comps) {
    std::vector<MixedSource::Component> parts;
    parts.reserve(comps.size());
    for (const auto& c : comps) parts.push_back({c.weight, Distribution(c.probs)});
    return MixedSource(std::move(parts));
}

}  // namespace

ProblemConfig ProblemConfig::from_json(const json& j) {
    ProblemConfig cfg;
    cfg.alphabet = j.at("alphabet").get<std::vector<std::string>>();
    cfg.null_comps = parse_components(j, "null");
    cfg.alt_comps = parse_components(j, "alt");
    if (j.contains("defaults")) {
        const auto& d = j.at("defaults");
        auto opt_double = [&](const char* key) -> std::optional<double> {
            if (d.contains(key)) return d.at(key).get<double>();
            return std::nullopt;
        };
        cfg.defaults.eps = opt_double("eps");
        cfg.defaults.r_big = opt_double("r_big");
        cfg.defaults.s = opt_double("s");
        cfg.defaults.r_hoeffding = opt_double("r_hoeffding");
        if (d.contains("n_list")) cfg.defaults.n_list = d.at("n_list").get<std::vector<std::int64_t>>();
        if (d.contains("trials")) cfg.defaults.trials = d.at("trials").get<std::int64_t>();
        if (d.contains("seed")) cfg.defaults.seed = d.at("seed").get<std::uint64_t>();
    }
    return cfg;
}

ProblemConfig ProblemConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw json::parse_error::create(101, 0, "cannot open config file: " + path, nullptr);
    json j = json::parse(in);  // throws nlohmann parse_error with line info
    return from_json(j);
}

json ProblemConfig::to_json() const {
    json j;
    j["alphabet"] = alphabet;
    auto dump_components = [](const std::vector<Component>& comps) {
        json arr = json::array();
        for (const auto& c : comps) arr.push_back({{"weight", c.weight}, {"probs", c.probs}});
        return arr;
    };
    j["null"] = dump_components(null_comps);
    j["alt"] = dump_components(alt_comps);
    json d = json::object();
    if (defaults.eps) d["eps"] = *defaults.eps;
    if (defaults.r_big) d["r_big"] = *defaults.r_big;
    if (defaults.s) d["s"] = *defaults.s;
    if (defaults.r_hoeffding) d["r_hoeffding"] = *defaults.r_hoeffding;
    if (!defaults.n_list.empty()) d["n_list"] = defaults.n_list;
    if (defaults.trials) d["trials"] = *defaults.trials;
    if (defaults.seed) d["seed"] = *defaults.seed;
    if (!d.empty()) j["defaults"] = d;
    return j;
}

TestingProblem ProblemConfig::problem() const {
    TestingProblem p(to_source(null_comps), to_source(alt_comps));
    if (!alphabet.empty() && alphabet.size() != p.null_hyp.alphabet_size())
        raise(errc::alphabet_mismatch, "config: alphabet labels do not match distribution size");
    return p;
}

std::vector<Distribution> ProblemConfig::null_distributions() const {
    std::vector<Distribution> out;
    for (const auto& c : null_comps) out.emplace_back(c.probs);
    return out;
}

std::vector<Distribution> ProblemConfig::alt_distributions() const {
    std::vector<Distribution> out;
    for (const auto& c : alt_comps) out.emplace_back(c.probs);
    return out;
}

}  // namespace explab
