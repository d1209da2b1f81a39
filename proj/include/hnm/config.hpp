#pragma once

#include "hnm/amplitude.hpp"
#include "hnm/coupling.hpp"
#include "hnm/trace.hpp"

#include <optional>
#include <string>

namespace hnm {

struct BackendOptions {
    std::optional<double> contour_height;
    std::optional<double> omega_cutoff;
    std::size_t n_quad = LaplaceOptions{}.n_quad;
    int modes_K = 2000;
};

struct OutputOptions {
    std::string csv_path; // empty: standard output
    bool include_rates = false;
    bool include_defect = false;
};

/// One experiment. The coupling is kept unvalidated so that `validate` can report why it fails.
struct ExperimentConfig {
    CouplingSpec coupling;
    double eps0 = 0.0;
    double dt = 0.0;
    double t_max = 0.0;
    Backend backend = Backend::Series;
    BackendOptions backend_options;
    OutputOptions outputs;

    ModelParams model() const; // validates the coupling
    TimeGrid grid() const;     // BadParameter unless 0 < dt <= t_max
    LaplaceOptions laplace_options() const;
};

/// JSON text to config. Syntax errors, wrong types and missing keys throw ConfigParse.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string serialize_config(const ExperimentConfig& config);

std::string_view to_string(CouplingKind kind) noexcept;

} // namespace hnm
