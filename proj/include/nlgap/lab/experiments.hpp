#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nlgap/gamma.hpp"
#include "nlgap/graph.hpp"
#include "nlgap/lab/config.hpp"
#include "nlgap/lab/records.hpp"
#include "nlgap/random.hpp"

namespace nlgap::lab {

// Each driver samples its graphs from per-trial streams seeded by
// derive_seed(cfg.seed, task index), runs trials on cfg.workers threads and
// orders records by task index, so output does not depend on the worker count.
// Deterministic inequalities become per-trial checks; statistical claims
// become summary checks or plain summary values.

/// Adversarial gamma search over F(delta_m) for G in G(n,d), H in G(m,d).
ExperimentResult run_typical_experiment(const ExperimentConfig& cfg);

/// As the typical experiment with the growing-degree class rule; d and m
/// lists are zipped when they have equal length. Rejects d > sqrt(m)/2.
ExperimentResult run_growing_d_experiment(const ExperimentConfig& cfg);

/// The deterministic map f_n of cfg.family for sizes n, m.
VertexMap family_map(const ExperimentConfig& cfg, std::size_t n, std::size_t m);

/// gamma(G, d_H, f_n) for a fixed family of maps.
ExperimentResult run_fixed_function_experiment(const ExperimentConfig& cfg);

/// Checks gamma(G, d_H, f) <= (expansion * contraction)^2 / lambda_1 through
/// a measured Bourgain embedding of a fixed host H.
ExperimentResult run_fixed_H_experiment(const ExperimentConfig& cfg, const Graph& host);
ExperimentResult run_fixed_H_experiment(const ExperimentConfig& cfg);

/// Switching-Lipschitz constant and tail bound for X = e_G(S_i, S_j) over
/// configuration-model draws.
ExperimentResult run_concentration_experiment(const ExperimentConfig& cfg);

/// Concentration of e_G(S_i, S_j) around d s_i s_j / n for pairs with
/// s_i s_j >= c n^{2 - eps}.
ExperimentResult run_errorbound_experiment(const ExperimentConfig& cfg);

/// log_{d-1} n - 2/d <= diam(G) <= spectral bound, plus lambda_1 envelope.
ExperimentResult run_diameter_experiment(const ExperimentConfig& cfg);

/// Dispatches on cfg.name; throws InvalidArgument for an unknown name.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

std::vector<std::string> experiment_names();

/// Host graph from a spec: random (connected G(m,d)), petersen, complete,
/// cycle, or a path to an edge-list file.
Graph make_host(const std::string& spec, std::size_t m, std::size_t d, Rng& rng);

/// Connected sample of G(n,d); throws Disconnected after 100 disconnected draws.
Graph sample_connected_regular(std::size_t n, std::size_t d, Rng& rng);

}  // namespace nlgap::lab
