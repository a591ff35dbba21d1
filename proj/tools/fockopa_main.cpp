#include <CLI11.hpp>

#include <iostream>

#include "fockopa/cli_commands.hpp"

namespace {

void add_common(CLI::App* cmd, fockopa::ScenarioConfig& cfg, std::string& config_path, std::string& window) {
    cmd->add_option("--config", config_path, "JSON config file; flags override its values");
    cmd->add_option("--poly", cfg.poly_text, "inline polynomial, e.g. \"1 - x1*x2\"");
    cmd->add_option("--file", cfg.input_file, "input document (matrix polynomial or tuple)");
    cmd->add_option("--nmax", cfg.n_max, "largest approximant degree");
    cmd->add_option("--window", window, "slope fit window a:b");
    cmd->add_option("--n", cfg.sigma_n, "sigma construction parameter n");
    cmd->add_option("--inner-degree", cfg.sigma_n_override, "override for the inner pi degree N");
    cmd->add_option("--capacity", cfg.capacity, "word basis capacity");
    cmd->add_option("--tol", cfg.tolerance, "tolerance for verdicts");
    cmd->add_option("--threshold", cfg.threshold, "decay cutoff for the cyclicity verdict");
    cmd->add_option("--seed", cfg.seed, "RNG seed for sampling stages");
    cmd->add_option("--out", cfg.out_dir, "output directory");
}

fockopa::ScenarioConfig finalize(const fockopa::ScenarioConfig& flags, const std::string& config_path,
                                 const std::string& window, const CLI::App* cmd) {
    fockopa::ScenarioConfig cfg = flags;
    if (!config_path.empty()) {
        fockopa::ScenarioConfig base = fockopa::config_from_json_file(config_path);
        // flags override file values
        if (cmd->count("--poly") == 0) cfg.poly_text = base.poly_text;
        if (cmd->count("--file") == 0) cfg.input_file = base.input_file;
        if (cmd->count("--nmax") == 0) cfg.n_max = base.n_max;
        if (cmd->count("--window") == 0) cfg.window = base.window;
        if (cmd->count("--n") == 0) cfg.sigma_n = base.sigma_n;
        if (cmd->count("--inner-degree") == 0) cfg.sigma_n_override = base.sigma_n_override;
        if (cmd->count("--capacity") == 0) cfg.capacity = base.capacity;
        if (cmd->count("--tol") == 0) cfg.tolerance = base.tolerance;
        if (cmd->count("--threshold") == 0) cfg.threshold = base.threshold;
        if (cmd->count("--seed") == 0) cfg.seed = base.seed;
        if (cmd->count("--out") == 0) cfg.out_dir = base.out_dir;
    }
    if (!window.empty()) {
        auto colon = window.find(':');
        if (colon == std::string::npos) throw CLI::ValidationError("--window", "expected a:b");
        cfg.window = {std::stoi(window.substr(0, colon)), std::stoi(window.substr(colon + 1))};
    } else if (cmd->count("--nmax") > 0 && config_path.empty()) {
        // no explicit window anywhere: fit over the upper half
        cfg.window = {std::max(2, cfg.n_max / 2), cfg.n_max};
    }
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"optimal polynomial approximants for free polynomials"};
    app.require_subcommand(1);

    struct Sub {
        CLI::App* cmd;
        fockopa::ScenarioConfig cfg;
        std::string config_path, window;
        int (*run)(const fockopa::ScenarioConfig&, std::ostream&, std::ostream&);
    };
    std::vector<Sub> subs;
    subs.reserve(8);  // CLI11 keeps pointers into the elements
    auto make = [&](const char* name, const char* desc,
                    int (*fn)(const fockopa::ScenarioConfig&, std::ostream&, std::ostream&)) {
        subs.push_back({app.add_subcommand(name, desc), {}, "", "", fn});
        add_common(subs.back().cmd, subs.back().cfg, subs.back().config_path, subs.back().window);
    };
    make("opa", "decay table and cyclicity verdict", fockopa::cmd_opa);
    make("pipeline", "linearize, triangularize, sigma bounds, decay", fockopa::cmd_pipeline);
    make("specrad", "outer spectral radius report for a tuple", fockopa::cmd_specrad);
    make("linearize", "monic pencil and stable-associativity witness", fockopa::cmd_linearize);
    make("sigma-bounds", "sigma construction ledger", fockopa::cmd_sigma_bounds);

    CLI11_PARSE(app, argc, argv);

    for (auto& s : subs)
        if (s.cmd->parsed()) {
            try {
                fockopa::ScenarioConfig cfg = finalize(s.cfg, s.config_path, s.window, s.cmd);
                return s.run(cfg, std::cout, std::cerr);
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << "\n";
                return 2;
            }
        }
    return 2;
}
