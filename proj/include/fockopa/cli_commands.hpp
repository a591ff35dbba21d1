#ifndef FOCKOPA_CLI_COMMANDS_HPP
#define FOCKOPA_CLI_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

#include "fockopa/tuple.hpp"

namespace fockopa {

/// Shared command configuration; a JSON config file mirrors these fields and
/// command-line flags override file values.
struct ScenarioConfig {
    std::string poly_text;                     // inline polynomial (scalar grammar)
    std::string input_file;                    // matrix polynomial / tuple document
    int n_max = 10;
    std::pair<int, int> window{4, 10};
    int sigma_n = 2;
    std::optional<long long> sigma_n_override;
    std::size_t capacity = 5000;
    double tolerance = 1e-9;
    double threshold = 0.1;  // decay verdict cutoff for c_{n_max}
    std::uint64_t seed = 1;
    std::string out_dir = ".";
};

ScenarioConfig config_from_json_file(const std::string& path);

/// Decay-table experiment: writes decay.csv and decay.svg, prints the fitted
/// slope and, when the pencil verdict is available, the cyclicity summary.
/// Returns the process exit status.
int cmd_opa(const ScenarioConfig& cfg, std::ostream& out, std::ostream& err);

/// Full run: linearize, triangularize, build sigma, report the bound ledger
/// and the optimality cross-check, plus the decay table of the input.
int cmd_pipeline(const ScenarioConfig& cfg, std::ostream& out, std::ostream& err);

/// Spectral report for a tuple document: radius, irreducibility, nilpotency,
/// contraction similarity when applicable, and a seeded self-test.
int cmd_specrad(const ScenarioConfig& cfg, std::ostream& out, std::ostream& err);

/// Linearization only: writes the witness document and verifies it.
int cmd_linearize(const ScenarioConfig& cfg, std::ostream& out, std::ostream& err);

/// Sigma ledger for a polynomial without the decay experiment.
int cmd_sigma_bounds(const ScenarioConfig& cfg, std::ostream& out, std::ostream& err);

/// Tuple document: {"d": ..., "level": ..., "matrices": [[[re,im], ...]]}.
std::string tuple_to_json(const MatrixTuple& x);
MatrixTuple tuple_from_json(const std::string& text);

}  // namespace fockopa

#endif
