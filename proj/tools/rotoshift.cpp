// rotoshift: quasi-energy spectra and rotational frequency shifts of rotating emitters.
//
//   rotoshift <command> --config <path> [--out <path>] [--format csv|json] [--M auto|<int>]
//
// Exit codes: 0 ok, 2 validation error, 3 out of regime, 1 anything else.

#include <iostream>
#include <optional>
#include <string>
#include <utility>

#include <CLI11.hpp>

#include "rotoshift/scenario.hpp"

namespace rs = rotoshift::scenario;

namespace {

int run(rs::Command cmd, const std::string& config_path, const std::string& out, const std::string& format,
        const std::string& m_override) {
    rs::ScenarioConfig cfg = rs::load_config(config_path, cmd);
    if (!format.empty()) cfg.format = format;
    if (!out.empty()) cfg.output_path = out;
    if (!m_override.empty()) {
        if (!cfg.transition) throw rs::ConfigError("--M requires a transition block");
        if (m_override == "auto") {
            cfg.transition->M_override.reset();
        } else {
            std::size_t pos = 0;
            int m = 0;
            try {
                m = std::stoi(m_override, &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos == 0 || pos != m_override.size()) throw rs::ConfigError("--M must be 'auto' or an integer");
            cfg.transition->M_override = m;
        }
    }

    const unsigned threads = cmd == rs::Command::sweep ? rs::resolve_threads() : 1u;
    const rotoshift::report::Table table = rs::run(cmd, cfg, threads);
    for (const auto& w : table.warnings) std::cerr << "warning: " << w << '\n';

    const std::string text = rs::render(table, cfg.format);
    if (cfg.output_path && *cfg.output_path != "-") {
        rotoshift::report::write_atomically(*cfg.output_path, text);
    } else {
        std::cout << text;
    }
    return rs::exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quasi-energy spectra and rotational frequency shifts of rotating emitters", "rotoshift"};
    app.require_subcommand(1);

    std::string config_path, out, format, m_override;
    const std::pair<const char*, const char*> commands[] = {
        {"spectrum", "quasi-energy levels: numeric against closed form"},
        {"drfs", "rotational frequency shift of one transition"},
        {"doppler", "linear Doppler-shifted emission frequency"},
        {"compare-stark", "force ratio and driven levels for both drive orientations"},
        {"sweep", "shift report over a grid in omega, radius or drive field"}};
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "scenario JSON file")->required();
        sub->add_option("--out", out, "output file (default: stdout)");
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--M", m_override, "photon angular momentum: auto or an integer");
    }

    if (argc > 1 && argv[1][0] != '-' && !rs::parse_command(argv[1])) {
        std::cerr << "error: unknown command '" << argv[1] << "'\n\n" << app.help();
        return rs::exit_validation;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return rs::exit_validation;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    try {
        return run(*rs::parse_command(name), config_path, out, format, m_override);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return rs::exit_code_for(e);
    }
}
