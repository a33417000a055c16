#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "visco/environment.hpp"

namespace visco {

// Flat key=value experiment configuration. Unknown keys are rejected so typos
// in experiment scripts fail loudly.
struct ExperimentConfig {
    ParameterTable table = ParameterTable::reference();
    std::vector<double> eps_list = {1.0 / 200};
    std::vector<double> delta_list = {0.1};
    int periods = 2;
    int steps_per_period = 2000;
    int n_realizations = 50;
    std::uint64_t base_seed = 1;
    double secant_tol = 1e-10;
    int max_iter = 200;
    double observable_time = 0.25;  // where the stress variance is read off
    int stride = 1;
    int jobs = 1;
    std::string mode = "run";
    std::string output_dir = "out";

    void validate() const;

    std::string serialize() const;
    std::uint64_t hash() const;  // FNV-1a over the serialized form

    static ExperimentConfig parse(std::istream& in);
    static ExperimentConfig parse_file(const std::string& path);

    // figure2 / figure3 / figure4 reproduce the cyclic-loading protocols at a
    // reduced scale; the -full variants use the original scale.
    static ExperimentConfig preset(const std::string& name);
};

}  // namespace visco
