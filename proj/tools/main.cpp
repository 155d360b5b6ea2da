#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "cli/commands.hpp"

using namespace msgf;
using namespace msgf::cli;

namespace {

std::filesystem::path output_path(const std::string& path) {
    std::filesystem::path p(path);
    const char* dir = std::getenv("MSGF_OUTPUT_DIR");
    if (dir && *dir && p.is_relative()) p = std::filesystem::path(dir) / p;
    return p;
}

void emit(std::ostream& os, const Output& out, Format fmt) {
    if (fmt == Format::Csv) {
        write_csv(os, out.table);
    } else {
        write_json(os, out.document ? *out.document : table_json(out.table));
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Green functions of the Dirac equation in the magnetic-solenoid field"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, out_path, format_name, extension;
    int threads = 1;
    app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
    app.add_option("--out", out_path, "output file (default: stdout); relative paths honor MSGF_OUTPUT_DIR");
    app.add_option("--format", format_name, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--extension", extension, "self-adjoint extension angle: -pi/2 or +pi/2");

    auto* spectrum = app.add_subcommand("spectrum", "tabulate omega and the energies over a mode grid");
    auto* kernel = app.add_subcommand("kernel", "proper-time kernel on an s grid");
    bool uniform = false, scalar = false;
    auto* uni = kernel->add_flag("--uniform", uniform, "uniform-field kernel (no flux line)");
    kernel->add_flag("--scalar", scalar, "Klein-Gordon kernel")->excludes(uni);
    auto* propagate = app.add_subcommand("propagate", "causal, anticausal, commutation, retarded, advanced functions");
    auto* nonrel = app.add_subcommand("nonrel", "nonrelativistic propagator");
    auto* verify = app.add_subcommand("verify", "run the verification suite");
    std::vector<std::string> only;
    verify->add_option("--only", only, "check ids (repeatable or comma separated)")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        RunConfig run = config_path.empty() ? parse_config(nlohmann::json::object()) : load_config(config_path);
        if (!extension.empty()) {
            nlohmann::json v = extension;
            try {
                v = nlohmann::json::parse(extension);
            } catch (const nlohmann::json::exception&) {
            }
            run.ext = parse_extension(v, "--extension");
        }
        if (!only.empty()) {
            for (const auto& id : only) checks::find(id);
            run.only = only;
        }
        Format fmt = run.format.value_or(verify->parsed() ? Format::Json : Format::Csv);
        if (!format_name.empty()) fmt = format_name == "csv" ? Format::Csv : Format::Json;
        if (!out_path.empty()) run.out_path = out_path;

        Output out;
        if (spectrum->parsed()) out = cmd_spectrum(run);
        else if (kernel->parsed())
            out = cmd_kernel(run, scalar ? KernelMode::Scalar : uniform ? KernelMode::Uniform : KernelMode::Full, threads);
        else if (propagate->parsed()) out = cmd_propagate(run, threads);
        else if (nonrel->parsed()) out = cmd_nonrel(run, threads);
        else out = cmd_verify(run, threads);

        if (run.out_path.empty()) {
            emit(std::cout, out, fmt);
        } else {
            const auto path = output_path(run.out_path);
            std::ofstream os(path, std::ios::binary);
            if (!os) {
                std::cerr << "msgf: cannot write '" << path.string() << "'\n";
                return 1;
            }
            emit(os, out, fmt);
        }
        if (out.status == 3) std::cerr << "msgf: verification failed\n";
        return out.status;
    } catch (const Error& e) {
        std::cerr << "msgf: " << e.what() << '\n';
        return status_for(e);
    }
}
