#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "circpot/boundary_data.hpp"
#include "circpot/holed_domain.hpp"

namespace circpot::harness {

// config / CLI problems map to exit code 2, tolerance breaches to 3, solver
// failures to 4
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DatumSpec {
    std::vector<double> cos_coeffs;
    std::vector<double> sin_coeffs;
};

struct SolverConfig {
    int M = 40;
    int nodes_per_circle = 176;
    double residual_tol = 1e-8;
};

struct MetricsConfig {
    int collar_radial = 64;
    int collar_angular = 256;
    double interior_step_divisor = 8.0;   // interior grid step = d / divisor
    double poincare_step_divisor = 4.0;   // eigenvalue grid step = d / divisor
};

struct GeometryFamily {
    std::vector<int> n{1, 2, 4};
    std::vector<double> r0{1.0, 2.0};
    std::vector<double> d_over_r0{0.05, 0.1, 0.2};
    double hole_radius_over_d = 1.0;  // >= 1 so the r_k >= d hypothesis holds
};

struct RelationConfig {
    std::vector<DatumSpec> data;  // empty: 5 seeded degree-8 polynomials
    int num_points = 100;
    double r_min = 0.1;
    double r_max = 0.9;
    double fd_step = 1e-5;
    double tol = 1e-6;
    double rotation_tol = 1e-8;
    int samples = 256;
};

struct IdentityConfig {
    std::vector<double> R_values{0.5, 1.0, 2.0, 5.0};
    int num_x = 20;
    int boundary_nodes = 256;
    int pairs = 1000;
    double fd_h_rel = 4e-3;       // corrector Laplacian step, relative to R
    double collar_over_R = 0.75;  // reconstruction collar width
    int trace_fields = 50;
    std::vector<std::array<double, 2>> trace_annuli{
        {1.0, 2.0}, {0.5, 0.8}, {2.0, 3.0}, {0.3, 1.1}, {1.5, 1.7}};
    double tol_scale = 1.0;  // --tol override multiplies every threshold
};

struct SolveConfig {
    int n = 2;
    double r0 = 1.0;
    double d_over_r0 = 0.15;
    int num_probes = 16;
};

struct Config {
    std::uint64_t seed = 20240917;
    double alpha = 0.5;
    SolverConfig solver;
    MetricsConfig metrics;
    std::vector<GeometryFamily> families{GeometryFamily{}};
    DatumSpec outer_datum{{0.0, 1.0}, {0.0, 0.3}};
    DatumSpec hole_datum{{0.4, 0.7}, {0.0, 0.0, 0.2}};
    int datum_samples = 256;
    RelationConfig relation;
    IdentityConfig identities;
    SolveConfig solve;
};

Config load_config(const std::string& path);
Config parse_config_text(const std::string& text);

struct CheckLine {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool lower_bound = false;  // pass means value >= threshold
    bool pass = false;
};

struct Report {
    std::vector<CheckLine> lines;
    bool pass = true;
    std::string text() const;

    void add(std::string name, double value, double threshold);
    // checks that stay healthy when the measured value is LARGER (ratios etc.)
    void add_min(std::string name, double value, double threshold);
};

Report run_verify_relation(const Config& cfg);
Report run_identity_suite(const Config& cfg);

struct SweepRecord {
    int n = 0;
    double d = 0.0, r0 = 0.0, alpha = 0.0;
    double C_P = 0.0, B = 0.0;
    double g_sup = 0.0, g_hold = 0.0, gp_sup = 0.0, gp_hold = 0.0;
    double Du_sup = 0.0, Du_hold = 0.0, D2u_sup = 0.0, D2u_hold = 0.0;
    std::array<double, 4> bounds{};
    std::array<double, 4> ratios{};
    double residual = 0.0;
    std::string flags;
    double l1_ratio = 0.0;  // tracked for the empirical L1 constant, not a CSV column
};

struct SweepResult {
    std::vector<SweepRecord> records;
    std::string csv;
    std::array<double, 4> max_ratios{};
    double l1_max = 0.0;
    bool tolerance_ok = true;
    std::string summary_text() const;
};

SweepResult run_sweep(const Config& cfg);

// deterministic instance generator shared by the sweep and the solve command
struct Instance {
    holed::HoledDomain dom;
    NeumannData data;
};

Instance make_instance(const Config& cfg, int n, double r0, double d_over_r0,
                       double hole_radius_over_d);

struct SolveOutput {
    holed::HarmonicAnsatz ansatz;
    std::string probe_csv;
    std::string summary_text;
};

SolveOutput run_solve(const Config& cfg);

std::string format_number(double v);

}  // namespace circpot::harness
