// Command-line driver: convergence studies, spinodal demo, single runs.
//
//   chdg convergence k=1 scheme=cs levels=4,8,16 out=results
//   chdg spinodal --config spinodal.cfg --seed 7
//   chdg single --n 16 --k 0
//
// Exit codes: 0 success, 2 configuration error, 3 solver failure, 1 other.

#include "chdg/condensation.hpp"
#include "chdg/config.hpp"
#include "chdg/drivers.hpp"
#include "chdg/trace_system.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace {

struct Subcommand {
    CLI::App* app = nullptr;
    std::string config_file;
    std::vector<std::string> settings;
    std::map<std::string, std::string> flags;
};

void add_options(Subcommand& sub)
{
    sub.app->add_option("--config", sub.config_file, "key=value config file")
        ->check(CLI::ExistingFile);
    for (const auto& key : chdg::config_keys()) {
        if (std::string(key.name) == "mode")
            continue;
        sub.app->add_option(std::string("--") + key.name, sub.flags[key.name], key.help);
    }
    sub.app->add_option("settings", sub.settings, "key=value overrides");
}

std::vector<std::string> collect_tokens(const Subcommand& sub, const std::string& mode)
{
    std::vector<std::string> tokens;
    if (!sub.config_file.empty()) {
        std::ifstream in(sub.config_file);
        std::stringstream text;
        text << in.rdbuf();
        tokens = chdg::config_tokens_from_text(text.str());
    }
    for (const auto& [key, value] : sub.flags)
        if (sub.app->count("--" + key) > 0)
            tokens.push_back(key + "=" + value);
    tokens.insert(tokens.end(), sub.settings.begin(), sub.settings.end());
    for (const auto& tok : tokens)
        if (tok.rfind("mode=", 0) == 0 && tok != "mode=" + mode)
            throw chdg::ConfigError("config: " + tok + " conflicts with subcommand '" + mode + "'");
    tokens.insert(tokens.begin(), "mode=" + mode);
    return tokens;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"HDG Cahn-Hilliard solver"};
    app.require_subcommand(1);
    std::map<std::string, Subcommand> subs;
    const std::pair<const char*, const char*> modes[] = {
        {"convergence", "manufactured-solution convergence study"},
        {"spinodal", "unforced spinodal decomposition from random data"},
        {"single", "one manufactured-solution run on one mesh"},
    };
    for (const auto& [name, help] : modes) {
        Subcommand& sub = subs[name];
        sub.app = app.add_subcommand(name, help);
        add_options(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        for (auto& [name, sub] : subs) {
            if (!sub.app->parsed())
                continue;
            const chdg::RunConfig cfg = chdg::parse_config(collect_tokens(sub, name));
            switch (cfg.mode) {
            case chdg::RunMode::Convergence: chdg::run_convergence_study(cfg, std::cout); break;
            case chdg::RunMode::Spinodal: chdg::run_spinodal(cfg, std::cout); break;
            case chdg::RunMode::Single: chdg::run_single(cfg, std::cout); break;
            }
            std::cout << "results in " << cfg.output_dir << "\n";
        }
    } catch (const chdg::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const chdg::StepFailure& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return 3;
    } catch (const chdg::TraceSolveError& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return 3;
    } catch (const chdg::SingularInteriorBlock& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
