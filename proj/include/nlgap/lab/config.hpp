#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace nlgap::lab {

/// How the class parameter delta_m of F(delta_m) is chosen.
enum class DeltaRule {
    fixed,      ///< explicit value
    fixed_d,    ///< m^{1/2 + 2/d^2 + eps}
    growing_d,  ///< (2 sqrt(2e) / d) m^{1/2 + 4/(d+1) + eps}
};

/// Every experiment parameter. Read from flat `key = value` text; the CLI
/// applies flag overrides on top. Unused keys are ignored by experiments that
/// do not need them.
struct ExperimentConfig {
    std::string name;
    std::vector<std::size_t> n_values{200};
    std::vector<std::size_t> m_values{10};
    std::vector<std::size_t> d_values{3};

    double epsilon = 0.1;
    double alpha = 0.5;
    double beta = 0.25;
    DeltaRule delta_rule = DeltaRule::fixed_d;
    double delta_value = 1.0;
    double c = 1.0;

    /// C in lambda_1 >= 1 - C / sqrt(d)
    double lambda_constant = 3.0;
    /// Envelope C_emp for gamma of balanced and typical maps.
    double gamma_envelope = 4.0;
    /// Allowed relative growth of max gamma from the smallest to the largest n.
    double stability_tolerance = 0.10;

    std::size_t trials = 10;
    std::uint64_t seed = 1;
    std::string out;
    std::size_t workers = 1;

    // adversarial search
    std::size_t restarts = 2;
    std::size_t samples = 100;
    std::size_t max_moves = 100'000;

    // fixed-function experiment
    std::string family = "balanced";  ///< balanced | two_block | near_constant | file
    double rho = 0.5;
    std::size_t k = 1;
    std::string map_file;

    /// Host graph H: random | petersen | complete | cycle | path to an edge list.
    std::string host = "random";

    // concentration experiment
    std::size_t set_size_i = 500;
    std::size_t set_size_j = 500;
    std::size_t switches = 100'000;
    double lambda_step = 5.0;
    double tail_slack = 1e-3;

    // fixed-H experiment
    std::size_t repetitions = 0;  ///< 0 = ceil(4 log2 m)
    std::size_t chain_maps = 100;
};

/// Parses `key = value` lines; '#' starts a comment. Throws ParseError.
ExperimentConfig parse_config(std::string_view text);

/// Sets one key; throws InvalidArgument for unknown keys or bad values.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Checks the shared invariants (0 < alpha < 1, 0 < beta < 1/2,
/// 0 < eps < 1, trials >= 1); throws InvalidArgument.
void validate(const ExperimentConfig& cfg);

/// delta_m for the configured rule.
double class_delta(const ExperimentConfig& cfg, std::size_t m, std::size_t d);

std::vector<std::string> config_keys();

}  // namespace nlgap::lab
