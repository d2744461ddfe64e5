#include "nlgap/lab/config.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <numbers>

#include "../text.hpp"
#include "nlgap/error.hpp"

namespace nlgap::lab {

namespace {

std::size_t to_size(const std::string& key, const std::string& value) {
    std::size_t out = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw InvalidArgument(key + ": expected a nonnegative integer, got '" + value + "'");
    }
    return out;
}

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double out = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return out;
    } catch (const std::exception&) {
        throw InvalidArgument(key + ": expected a number, got '" + value + "'");
    }
}

std::vector<std::size_t> to_list(const std::string& key, const std::string& value) {
    std::vector<std::size_t> out;
    std::size_t start = 0;
    while (start <= value.size()) {
        const std::size_t comma = std::min(value.find(',', start), value.size());
        const std::string item(detail::LineReader::trim(std::string_view(value).substr(start, comma - start)));
        out.push_back(to_size(key, item));
        start = comma + 1;
    }
    return out;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&, const std::string&)>;

#define NLGAP_SIZE(field) [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.field = to_size(k, v); }
#define NLGAP_REAL(field) [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.field = to_double(k, v); }
#define NLGAP_TEXT(field) [](ExperimentConfig& c, const std::string&, const std::string& v) { c.field = v; }
#define NLGAP_LIST(field) [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.field = to_list(k, v); }

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table{
        {"name", NLGAP_TEXT(name)},
        {"n", NLGAP_LIST(n_values)},
        {"m", NLGAP_LIST(m_values)},
        {"d", NLGAP_LIST(d_values)},
        {"epsilon", NLGAP_REAL(epsilon)},
        {"alpha", NLGAP_REAL(alpha)},
        {"beta", NLGAP_REAL(beta)},
        {"delta",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             if (v == "fixed_d") {
                 c.delta_rule = DeltaRule::fixed_d;
             } else if (v == "growing_d") {
                 c.delta_rule = DeltaRule::growing_d;
             } else {
                 c.delta_rule = DeltaRule::fixed;
                 c.delta_value = to_double(k, v);
             }
         }},
        {"c", NLGAP_REAL(c)},
        {"lambda_constant", NLGAP_REAL(lambda_constant)},
        {"gamma_envelope", NLGAP_REAL(gamma_envelope)},
        {"stability_tolerance", NLGAP_REAL(stability_tolerance)},
        {"trials", NLGAP_SIZE(trials)},
        {"seed", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             std::uint64_t s = 0;
             auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), s);
             if (ec != std::errc() || ptr != v.data() + v.size()) {
                 throw InvalidArgument(k + ": expected an unsigned integer, got '" + v + "'");
             }
             c.seed = s;
         }},
        {"out", NLGAP_TEXT(out)},
        {"workers", NLGAP_SIZE(workers)},
        {"restarts", NLGAP_SIZE(restarts)},
        {"samples", NLGAP_SIZE(samples)},
        {"max_moves", NLGAP_SIZE(max_moves)},
        {"family", NLGAP_TEXT(family)},
        {"rho", NLGAP_REAL(rho)},
        {"k", NLGAP_SIZE(k)},
        {"map", NLGAP_TEXT(map_file)},
        {"host", NLGAP_TEXT(host)},
        {"si", NLGAP_SIZE(set_size_i)},
        {"sj", NLGAP_SIZE(set_size_j)},
        {"switches", NLGAP_SIZE(switches)},
        {"lambda_step", NLGAP_REAL(lambda_step)},
        {"tail_slack", NLGAP_REAL(tail_slack)},
        {"repetitions", NLGAP_SIZE(repetitions)},
        {"chain_maps", NLGAP_SIZE(chain_maps)},
    };
    return table;
}

#undef NLGAP_SIZE
#undef NLGAP_REAL
#undef NLGAP_TEXT
#undef NLGAP_LIST

}  // namespace

void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    const auto it = setters().find(key);
    if (it == setters().end()) throw InvalidArgument("unknown config key '" + key + "'");
    it->second(cfg, key, value);
}

std::vector<std::string> config_keys() {
    std::vector<std::string> keys;
    for (const auto& [k, _] : setters()) keys.push_back(k);
    return keys;
}

ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig cfg;
    detail::LineReader reader(text);
    while (auto line = reader.next_nonempty()) {
        std::string_view body = line->text.substr(0, line->text.find('#'));
        body = detail::LineReader::trim(body);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string_view::npos) throw ParseError(line->number, "expected key = value");
        const std::string key(detail::LineReader::trim(body.substr(0, eq)));
        const std::string value(detail::LineReader::trim(body.substr(eq + 1)));
        try {
            apply_setting(cfg, key, value);
        } catch (const InvalidArgument& e) {
            throw ParseError(line->number, e.what());
        }
    }
    return cfg;
}

void validate(const ExperimentConfig& cfg) {
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw InvalidArgument("alpha must lie in (0, 1)");
    if (!(cfg.beta > 0.0 && cfg.beta < 0.5)) throw InvalidArgument("beta must lie in (0, 1/2)");
    if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) throw InvalidArgument("epsilon must lie in (0, 1)");
    if (cfg.trials < 1) throw InvalidArgument("trials must be at least 1");
    if (cfg.n_values.empty() || cfg.d_values.empty()) throw InvalidArgument("n and d lists must be nonempty");
    if (cfg.delta_rule == DeltaRule::fixed && !(cfg.delta_value > 0.0)) {
        throw InvalidArgument("delta must be positive");
    }
}

double class_delta(const ExperimentConfig& cfg, std::size_t m, std::size_t d) {
    const auto mm = static_cast<double>(m);
    const auto dd = static_cast<double>(d);
    switch (cfg.delta_rule) {
        case DeltaRule::fixed:
            return cfg.delta_value;
        case DeltaRule::fixed_d:
            return std::pow(mm, 0.5 + 2.0 / (dd * dd) + cfg.epsilon);
        case DeltaRule::growing_d:
            return 2.0 * std::sqrt(2.0 * std::numbers::e) / dd *
                   std::pow(mm, 0.5 + 4.0 / (dd + 1.0) + cfg.epsilon);
    }
    return cfg.delta_value;
}

}  // namespace nlgap::lab
