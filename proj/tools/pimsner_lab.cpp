// pimsner-lab: file-driven front end for reduction, canonical systems,
// classification and representation verification of finite-dimensional
// C*-dynamical systems.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pimsner/spec_io.hpp"

int main(int argc, char** argv) {
    CLI::App app{"computational lab for relative Cuntz-Pimsner algebras of "
                 "finite-dimensional C*-dynamical systems"};
    app.require_subcommand(1);

    std::string spec_path;
    std::string out_path;
    double tol = -1.0;
    int levels = -1;
    int amp = -1;
    long long seed = -1;

    std::vector<CLI::App*> commands;
    for (const char* name : {"reduce", "canonical", "classify", "verify", "oracle-check"}) {
        auto* cmd = app.add_subcommand(name);
        cmd->add_option("specfile", spec_path, "system specification file")->required();
        cmd->add_option("--tol", tol, "tolerance override");
        cmd->add_option("--levels", levels, "Fock truncation level");
        cmd->add_option("--amp", amp, "amplification width");
        cmd->add_option("--seed", seed, "random seed");
        cmd->add_option("--out", out_path, "write the machine-readable report here");
        commands.push_back(cmd);
    }

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    std::ifstream file(spec_path);
    if (!file) {
        std::cerr << "error: cannot open '" << spec_path << "'\n";
        return pimsner::kExitMalformedInput;
    }
    std::ostringstream text;
    text << file.rdbuf();

    pimsner::SystemSpec spec;
    try {
        spec = pimsner::parse_spec(text.str());
    } catch (const pimsner::input_error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return pimsner::kExitMalformedInput;
    }
    if (tol > 0)
        spec.tol = tol;
    if (levels >= 0)
        spec.levels = levels;
    if (amp >= 0)
        spec.amp = amp;
    if (seed >= 0)
        spec.seed = static_cast<std::uint64_t>(seed);

    const auto report = pimsner::run_command(command, spec);
    std::cout << report.human;
    if (out_path.empty()) {
        std::cout << report.machine;
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "error: cannot write '" << out_path << "'\n";
            return pimsner::kExitMalformedInput;
        }
        out << report.machine;
    }
    return report.exit_code;
}
