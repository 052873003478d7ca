#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "circpot/harness.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    std::optional<long long> seed;
    std::optional<double> tol;
};

void attach(CLI::App* cmd, CommonOpts& o, const char* tol_help) {
    cmd->add_option("--config", o.config_path, "JSON configuration file")
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", o.out_path, "write the result here instead of stdout");
    cmd->add_option("--seed", o.seed, "override the config seed");
    cmd->add_option("--tol", o.tol, tol_help);
}

circpot::harness::Config load(const CommonOpts& o) {
    circpot::harness::Config cfg;
    if (!o.config_path.empty()) cfg = circpot::harness::load_config(o.config_path);
    if (o.seed) cfg.seed = static_cast<std::uint64_t>(*o.seed);
    return cfg;
}

// CSV and report payloads are written byte-for-byte; runs with equal config
// and seed must produce identical files
int emit(const std::string& out_path, const std::string& payload) {
    if (out_path.empty()) {
        std::cout << payload;
        return 0;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot write '" << out_path << "'\n";
        return 2;
    }
    out << payload;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"boundary-integral toolkit for circular geometries"};
    app.require_subcommand(1);

    CommonOpts rel_o, idt_o, swp_o, slv_o;
    CLI::App* rel = app.add_subcommand(
        "verify-relation", "check the explicit gradient formulas against finite differences");
    attach(rel, rel_o, "finite-difference residual tolerance");
    CLI::App* idt =
        app.add_subcommand("identities", "Green's function, kernel and trace identity checks");
    attach(idt, idt_o, "scale factor applied to every identity threshold");
    CLI::App* swp =
        app.add_subcommand("sweep", "regularity-scaling sweep over hole geometries, CSV output");
    attach(swp, swp_o, "boundary residual tolerance for the solver");
    CLI::App* slv = app.add_subcommand("solve", "solve one Neumann problem and print probe values");
    attach(slv, slv_o, "boundary residual tolerance for the solver");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (rel->parsed()) {
            circpot::harness::Config cfg = load(rel_o);
            if (rel_o.tol) cfg.relation.tol = *rel_o.tol;
            const circpot::harness::Report rep = circpot::harness::run_verify_relation(cfg);
            if (int rc = emit(rel_o.out_path, rep.text()); rc != 0) return rc;
            if (!rel_o.out_path.empty()) std::cerr << (rep.pass ? "pass\n" : "fail\n");
            return rep.pass ? 0 : 3;
        }
        if (idt->parsed()) {
            circpot::harness::Config cfg = load(idt_o);
            if (idt_o.tol) cfg.identities.tol_scale = *idt_o.tol;
            const circpot::harness::Report rep = circpot::harness::run_identity_suite(cfg);
            if (int rc = emit(idt_o.out_path, rep.text()); rc != 0) return rc;
            if (!idt_o.out_path.empty()) std::cerr << (rep.pass ? "pass\n" : "fail\n");
            return rep.pass ? 0 : 3;
        }
        if (swp->parsed()) {
            circpot::harness::Config cfg = load(swp_o);
            if (swp_o.tol) cfg.solver.residual_tol = *swp_o.tol;
            const circpot::harness::SweepResult res = circpot::harness::run_sweep(cfg);
            if (int rc = emit(swp_o.out_path, res.csv); rc != 0) return rc;
            std::cerr << res.summary_text();
            return res.tolerance_ok ? 0 : 3;
        }
        if (slv->parsed()) {
            circpot::harness::Config cfg = load(slv_o);
            if (slv_o.tol) cfg.solver.residual_tol = *slv_o.tol;
            const circpot::harness::SolveOutput res = circpot::harness::run_solve(cfg);
            if (int rc = emit(slv_o.out_path, res.probe_csv); rc != 0) return rc;
            std::cerr << res.summary_text;
            return res.ansatz.boundary_residual <= cfg.solver.residual_tol ? 0 : 3;
        }
    } catch (const circpot::harness::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "solver: " << e.what() << "\n";
        return 4;
    }
    return 2;
}
