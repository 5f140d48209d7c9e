#include <exception>
#include <iostream>
#include <string>

#include "bwskit/version.hpp"
#include "common.hpp"

int main(int argc, char** argv) {
    CLI::App app{"best-worst scaling annotation toolkit"};
    app.set_version_flag("--version", std::string(bwskit::kVersion));
    app.require_subcommand(1);

    bwscli::register_design_commands(app);
    bwscli::register_score_commands(app);
    bwscli::register_reliability_commands(app);
    bwscli::register_simulate_commands(app);
    bwscli::register_pipeline_command(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
