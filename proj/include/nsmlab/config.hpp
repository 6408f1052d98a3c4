// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nsm {

inline constexpr const char* kVersion = "0.3.0";

struct GridConfig {
    int Nx = 32;
    int Ny = 64;
    double Lx = 6.283185307179586;
    bool operator==(const GridConfig&) const = default;
};

struct ParamsConfig {
    double eps = 0.1;
    double mu = 1.0;
    double mu0 = 1.0;
    bool normalized = false;
    double c_light = 1.0;
    bool printed_plus_2uh = false;
    bool operator==(const ParamsConfig&) const = default;
};

struct GevreyConfig {
    double delta0 = 1.0;
    double s = 10.0;
    /// "none", "constant_rate" or "gwp_decaying".
    std::string schedule = "constant_rate";
    double C = 1.0;
    double C_in = 1.0;
    double theta = 0.29845130209103032;
    bool operator==(const GevreyConfig&) const = default;
};

struct TimeConfig {
    double T = 0.01;
    double dt = 1e-3;
    int stride = 1;
    double cfl = 0.4;
    bool operator==(const TimeConfig&) const = default;
};

struct DataConfig {
    double amplitude = 1e-3;
    std::uint64_t seed = 1;
    double kappa = 1e-3;
    /// "sine" or "bump".
    std::string family = "sine";
    int kmax = 0;
    bool operator==(const DataConfig&) const = default;
};

struct IllposednessConfig {
    std::vector<int> k_list{-256, -1024, -4096};
    double C0 = 0.5;
    double s_growth = 0.25;
    double theta1 = 0.9 / (16.0 * 1.4142135623730951);
    double m0 = 1.0;
    double T0 = 0.3;
    double dt = 2.5e-4;
    double ny_factor = 1.0;
    int eigen_count = 3;
    bool operator==(const IllposednessConfig&) const = default;
};

struct ConvergenceSection {
    std::vector<double> eps_list{0.2, 0.1, 0.05, 0.025};
    bool operator==(const ConvergenceSection&) const = default;
};

struct SuiteConfig {
    long commutator_samples = 100000;
    long product_pairs = 1000;
    int recovery_samples = 50;
    bool operator==(const SuiteConfig&) const = default;
};

struct RunConfig {
    std::string mode = "eps";
    GridConfig grid;
    ParamsConfig params;
    GevreyConfig gevrey;
    TimeConfig time;
    DataConfig data;
    IllposednessConfig illposedness;
    ConvergenceSection convergence;
    SuiteConfig suite;
    /// Output directory; empty selects $NSMLAB_OUT or "nsmlab_out".
    std::string out;
    bool quiet = false;
    bool operator==(const RunConfig&) const = default;
};

const std::vector<std::string>& known_modes();

/// Throws Config errors naming the offending field path, e.g. "grid.Ny".
RunConfig parse_config_string(const std::string& json_text);
RunConfig parse_config(const std::string& path);
/// Full defaulted config as pretty JSON.
std::string emit_config(const RunConfig& cfg);
void validate_config(const RunConfig& cfg);

/// FNV-1a 64 over the emitted config (without out and quiet) and the version.
std::string config_hash(const RunConfig& cfg);

}  // namespace nsm
