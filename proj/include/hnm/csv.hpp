#pragma once

#include "hnm/channel.hpp"
#include "hnm/trace.hpp"

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace hnm {

struct OutputRow {
    double t = 0.0;
    double re_a = 0.0;
    double im_a = 0.0;
    double abs2_a = 0.0;
    std::optional<double> gamma_t;
    std::optional<double> eps_t;
};

std::vector<OutputRow> output_rows(const AmplitudeTrace& trace,
                                   const RateFunctions* rates = nullptr);

/// Header t,re_a,im_a,abs2_a, plus gamma,eps when the first row carries rates.
/// Values use %.17g. Rows must agree on whether rates are present.
void write_csv(std::span<const OutputRow> rows, std::ostream& out);

/// Throws IoError when the file cannot be written.
void write_csv(std::span<const OutputRow> rows, const std::string& path);

} // namespace hnm
