#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "poincare/experiments.hpp"

namespace {

using namespace poincare;

int emit(const std::string& text, const std::string& outFile) {
    if (outFile.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream os(outFile);
    if (!os) {
        std::cerr << "cannot open " << outFile << "\n";
        return 3;
    }
    os << text;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rigorous interval enclosures of Poincare maps: case-study experiments"};
    app.require_subcommand(1);

    ExperimentConfig cfg;
    std::string outFile;
    app.add_option("--order", cfg.solver.order, "Taylor order of the validated solver")
        ->check(CLI::Range(5, 30));
    app.add_option("--tol", cfg.solver.tolerance, "local error target per step");
    app.add_option("--out", outFile, "write output to this file instead of stdout");
    app.add_option("--jobs", cfg.jobs, "run independent rows on this many workers")
        ->check(CLI::Range(1, 64));

    // vdp --section {orthogonal|cto} --deltas ...
    auto* vdp = app.add_subcommand("vdp", "van der Pol crossing-time tables");
    std::string vdpSection = "orthogonal";
    std::vector<double> deltas = {1e-9, 1e-8, 1e-7, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2};
    vdp->add_option("--section", vdpSection, "orthogonal|cto")
        ->check(CLI::IsMember({"orthogonal", "cto"}));
    vdp->add_option("--deltas", deltas, "half-diameters of the initial segment")
        ->delimiter(',');

    // fixed --system --strategy --sizes ...
    auto* fixed = app.add_subcommand("fixed", "fixed standard section, one coordinate strategy");
    std::string fixedSystem, fixedStrategy = "diag+flowdir";
    std::vector<double> sizes = {1e-8, 1e-7, 1e-6, 1e-5, 1e-4, 1e-3};
    fixed->add_option("--system", fixedSystem, "system name from the catalog")->required();
    fixed->add_option("--strategy", fixedStrategy, "cartesian|diag+normal|diag+flowdir")
        ->check(CLI::IsMember({"cartesian", "diag+normal", "diag+flowdir"}));
    fixed->add_option("--sizes", sizes, "set diameters s")->delimiter(',');

    // varying --system --section --sizes ...
    auto* varying = app.add_subcommand("varying", "section rebuilt per mode, diag+flowdir chart");
    std::string varSystem, varSection = "cto";
    std::vector<double> varSizes = {1e-8, 1e-7, 1e-6, 1e-5, 1e-4, 1e-3};
    varying->add_option("--system", varSystem, "system name from the catalog")->required();
    varying->add_option("--section", varSection, "orthogonal|cto|max-angle-cto")
        ->check(CLI::IsMember({"orthogonal", "cto", "max-angle-cto"}));
    varying->add_option("--sizes", varSizes, "set diameters s")->delimiter(',');

    // angles --system --samples N
    auto* angles = app.add_subcommand("angles", "cos of the flow/CTO-normal angle along the orbit");
    std::string angSystem;
    int samples = 1000;
    angles->add_option("--system", angSystem, "system name from the catalog")->required();
    angles->add_option("--samples", samples, "number of scan points")->check(CLI::Range(100, 100000));

    // verify --seed N
    auto* verify = app.add_subcommand("verify", "run the module invariant suites");
    unsigned seed = 42;
    verify->add_option("--seed", seed, "random seed for the sampled checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (*vdp) {
            auto rows = runVdpTables(sectionModeFromString(vdpSection), deltas, cfg);
            return emit(toCsv(rows), outFile);
        }
        if (*fixed) {
            auto rows =
                runFixedSection(fixedSystem, frameStrategyFromString(fixedStrategy), sizes, cfg);
            return emit(toCsv(rows), outFile);
        }
        if (*varying) {
            auto rows = runVaryingSection(varSystem, sectionModeFromString(varSection), varSizes, cfg);
            return emit(toCsv(rows), outFile);
        }
        if (*angles) {
            return emit(runAngles(angSystem, samples, cfg), outFile);
        }
        if (*verify) {
            PropertyReport report = runPropertySuite(seed, cfg);
            int rc = emit(report.toText(), outFile);
            if (rc != 0) return rc;
            return report.allPass() ? 0 : 1;
        }
    } catch (const poincare::Error& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    return 2;
}
