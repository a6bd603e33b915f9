#ifndef FIELDLAB_EXPERIMENTS_HPP
#define FIELDLAB_EXPERIMENTS_HPP

#include <string>
#include <vector>

#include "fieldlab/lattice.hpp"

namespace fieldlab {

/// Thrown for malformed configs (unknown experiment, bad schema); the CLI
/// maps it to exit code 2.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// One experiment invocation: an enumerated name, a flat JSON parameter
/// object (experiment-specific defaults fill the gaps), and a sampling seed.
struct ExperimentConfig {
    std::string experiment;
    std::string params_json = "{}";
    unsigned long long seed = 0;

    static ExperimentConfig from_json(const std::string& text);
    static ExperimentConfig from_file(const std::string& path);

    /// "key=value" with a JSON-literal value; "seed" and "experiment" hit the
    /// top level, anything else lands in params.
    void apply_override(const std::string& assignment);
};

const std::vector<std::string>& experiment_names();

struct RunReport {
    std::string experiment;
    bool all_pass = false;
    std::string json;                     // deterministic report document
    std::vector<std::string> artifacts;   // files written under out_dir
};

/// Runs the experiment and writes report.json plus experiment-specific CSVs
/// atomically under out_dir. Deterministic given the config; wall time is the
/// caller's concern and never enters the report.
RunReport run_experiment(const ExperimentConfig& config, const std::string& out_dir);

}  // namespace fieldlab

#endif
