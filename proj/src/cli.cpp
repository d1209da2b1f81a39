#include "hnm/cli.hpp"

#include "hnm/amplitude.hpp"
#include "hnm/channel.hpp"
#include "hnm/csv.hpp"
#include "hnm/markovianity.hpp"
#include "hnm/modes.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>

namespace hnm {

using nlohmann::json;

namespace {

constexpr std::array kSubcommands{"amplitude", "rates", "crosscheck", "witness", "figures",
                                  "validate"};

struct Flags {
    std::string config;
    std::string backend;
    std::string out;
    std::optional<double> tol;
    std::string which;
    std::string backends = "series,volterra";
};

void report(std::ostream& err, std::string_view kind, const std::string& message)
{
    err << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

ExperimentConfig configured(const Flags& flags)
{
    if (flags.config.empty()) throw Error(ErrorKind::BadParameter, "--config is required");
    ExperimentConfig config = load_config(flags.config);
    if (!flags.backend.empty()) config.backend = backend_from_string(flags.backend);
    if (!flags.out.empty()) config.outputs.csv_path = flags.out;
    return config;
}

std::vector<Backend> parse_backends(const std::string& list)
{
    std::vector<Backend> backends;
    std::size_t start = 0;
    while (start <= list.size()) {
        const std::size_t comma = std::min(list.find(',', start), list.size());
        if (comma > start) backends.push_back(backend_from_string(list.substr(start, comma - start)));
        start = comma + 1;
    }
    if (backends.size() < 2)
        throw Error(ErrorKind::BadParameter, "--backends needs at least two names");
    return backends;
}

void check_volterra_grid(const ExperimentConfig& config)
{
    const double ratio = config.coupling.period_T / config.dt;
    if (config.coupling.kind != CouplingKind::Flat &&
        (std::round(ratio) < 1.0 || std::abs(ratio - std::round(ratio)) > 1e-9 * ratio))
        throw Error(ErrorKind::GridMismatch, "dt does not divide period_T");
}

json bound_state_json(const ModelParams& params, const AmplitudeTrace& trace)
{
    const double period = params.coupling.period();
    if (!(period > 0.0) || trace.grid().end() < 10.0 * period * (1.0 - 1e-9)) return nullptr;
    const BoundStateReport b = bound_state_check(params, trace);
    return {{"predicted", b.predicted},
            {"tail_min_abs2", b.tail_min_abs2},
            {"tail_max_abs2", b.tail_max_abs2},
            {"consistent", b.consistent}};
}

int cmd_amplitude(const Flags& flags, bool force_rates, std::ostream& out)
{
    const ExperimentConfig config = configured(flags);
    const AmplitudeTrace trace = compute_trace(config, config.backend);

    std::optional<RateFunctions> rates;
    if (force_rates || config.outputs.include_rates) rates = extract_rates(trace);
    const std::vector<OutputRow> rows = output_rows(trace, rates ? &*rates : nullptr);

    if (config.outputs.csv_path.empty()) {
        write_csv(rows, out);
        return kExitOk;
    }
    write_csv(rows, config.outputs.csv_path);
    json summary = {{"backend", to_string(config.backend)},
                    {"rows", rows.size()},
                    {"csv", config.outputs.csv_path}};
    if (config.outputs.include_defect) {
        const double tol = flags.tol.value_or(default_defect_tolerance(config.backend));
        summary["tolerance"] = tol;
        summary["horizon"] = hidden_horizon(trace, tol);
    }
    out << summary.dump() << '\n';
    return kExitOk;
}

int cmd_crosscheck(const Flags& flags, std::ostream& out)
{
    const ExperimentConfig config = configured(flags);
    const std::vector<Backend> backends = parse_backends(flags.backends);
    const double tol = flags.tol.value_or(1e-5);
    if (!(tol > 0.0)) throw Error(ErrorKind::BadParameter, "--tol must be positive");

    const AmplitudeTrace reference = compute_trace(config, backends.front());
    json diffs = json::object();
    double worst = 0.0;
    for (std::size_t b = 1; b < backends.size(); ++b) {
        const AmplitudeTrace other = compute_trace(config, backends[b]);
        double diff = 0.0;
        for (std::size_t k = 0; k < reference.size(); ++k)
            diff = std::max(diff, std::abs(reference[k] - other[k]));
        diffs[std::string(to_string(backends[b]))] = diff;
        worst = std::max(worst, diff);
    }
    out << json{{"reference", to_string(backends.front())},
                {"max_abs_diff", diffs},
                {"tol", tol},
                {"pass", worst <= tol}}
               .dump()
        << '\n';
    if (!(worst <= tol)) {
        std::ostringstream msg;
        msg << "max |da| = " << worst << " exceeds tol = " << tol;
        throw Error(ErrorKind::CrosscheckFailed, msg.str());
    }
    return kExitOk;
}

int cmd_witness(const Flags& flags, std::ostream& out)
{
    ExperimentConfig config = configured(flags);
    config.outputs.csv_path.clear();
    const ModelParams params = config.model();
    const AmplitudeTrace trace = compute_trace(config, config.backend);
    const double tol = flags.tol.value_or(default_defect_tolerance(config.backend));
    const DefectReport report = defect_report(trace, tol);

    const auto worst = std::max_element(
        report.pairs.begin(), report.pairs.end(),
        [](const DefectPair& x, const DefectPair& y) { return x.defect < y.defect; });
    json summary = {{"backend", to_string(config.backend)},
                    {"tolerance", report.tolerance_used},
                    {"horizon", report.horizon_estimate},
                    {"max_defect", {{"t", worst->t}, {"s", worst->s}, {"defect", worst->defect}}},
                    {"bound_state", bound_state_json(params, trace)}};
    out << summary.dump() << '\n';

    if (!flags.out.empty()) {
        json pairs = json::array();
        for (const DefectPair& p : report.pairs) pairs.push_back({p.t, p.s, p.defect});
        summary["pairs"] = std::move(pairs);
        std::ofstream file(flags.out, std::ios::binary | std::ios::trunc);
        if (!file) throw Error(ErrorKind::IoError, "cannot open '" + flags.out + "'");
        file << summary.dump(1) << '\n';
        if (!file) throw Error(ErrorKind::IoError, "write to '" + flags.out + "' failed");
    }
    return kExitOk;
}

int cmd_figures(const Flags& flags, std::ostream& out)
{
    if (flags.which.empty()) throw Error(ErrorKind::BadParameter, "--which is required");
    const std::filesystem::path dir = flags.out.empty() ? "." : flags.out;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::IoError, "cannot create '" + dir.string() + "'");

    json written = json::array();
    for (const FigureCase& fig : figure_cases(flags.which)) {
        const AmplitudeTrace trace = compute_trace(fig.config, fig.config.backend);
        const std::string path = (dir / fig.file_name).string();
        write_csv(output_rows(trace), path);
        written.push_back(path);
    }
    out << json{{"figure", flags.which}, {"files", written}}.dump() << '\n';
    return kExitOk;
}

int cmd_validate(const Flags& flags, std::ostream& out)
{
    const ExperimentConfig config = configured(flags);
    const ModelParams params = config.model();
    const TimeGrid grid = config.grid();
    if (config.backend == Backend::Volterra) check_volterra_grid(config);
    if (config.backend == Backend::Modes) build_discrete_modes(params, config.backend_options.modes_K);
    if (config.backend == Backend::Laplace && config.backend_options.n_quad < 2)
        throw Error(ErrorKind::BadQuadrature, "n_quad must be at least 2");
    out << json{{"valid", true},
                {"kind", to_string(config.coupling.kind)},
                {"backend", to_string(config.backend)},
                {"points", grid.size()}}
               .dump()
        << '\n';
    return kExitOk;
}

} // namespace

int exit_code(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::UnknownSubcommand: return kExitUsage;
    case ErrorKind::ConfigParse: return kExitConfig;
    case ErrorKind::IoError: return kExitIo;
    default: return is_numerical(kind) ? kExitNumerical : kExitValidation;
    }
}

AmplitudeTrace compute_trace(const ExperimentConfig& config, Backend backend)
{
    const ModelParams params = config.model();
    const TimeGrid grid = config.grid();
    switch (backend) {
    case Backend::Series: return amplitude_series(params, grid);
    case Backend::Volterra: return amplitude_volterra(params, grid);
    case Backend::Laplace: return amplitude_laplace(params, grid, config.laplace_options()).trace;
    case Backend::Modes:
        return amplitude_modes(build_discrete_modes(params, config.backend_options.modes_K), grid)
            .trace;
    }
    throw Error(ErrorKind::BadParameter, "unknown backend");
}

std::vector<FigureCase> figure_cases(const std::string& which)
{
    constexpr double pi = std::numbers::pi;
    std::vector<FigureCase> cases;
    ExperimentConfig base;
    base.dt = 1.0 / 500.0;
    base.backend = Backend::Series;
    if (which == "fig2") {
        base.t_max = 5.0;
        const std::array<std::pair<const char*, double>, 4> phases{
            {{"0", 0.0}, {"pi_3", pi / 3.0}, {"2pi_3", 2.0 * pi / 3.0}, {"pi", pi}}};
        for (double gT : {1.0, 4.0})
            for (const auto& [label, eT] : phases) {
                ExperimentConfig c = base;
                c.coupling = CouplingSpec::sinusoidal(gT, 1.0, 1.0);
                c.eps0 = eT;
                cases.push_back({"fig2_gT" + std::to_string(static_cast<int>(gT)) + "_eT" +
                                     label + ".csv",
                                 c});
            }
    } else if (which == "fig3") {
        ExperimentConfig c = base;
        c.t_max = 10.0;
        c.coupling = CouplingSpec::exp_comb(4.0, 1.0, 0.0);
        cases.push_back({"fig3_b0_gT4.csv", c});
    } else {
        throw Error(ErrorKind::BadParameter, "--which must be fig2 or fig3");
    }
    return cases;
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err)
{
    if (args.empty() ||
        std::find(kSubcommands.begin(), kSubcommands.end(), args.front()) == kSubcommands.end()) {
        report(err, to_string(ErrorKind::UnknownSubcommand),
               args.empty() ? "missing subcommand" : "unknown subcommand '" + args.front() + "'");
        return kExitUsage;
    }
    const std::string& sub = args.front();

    Flags flags;
    CLI::App app("hnm " + sub, "hnm " + sub);
    if (sub != "figures") app.add_option("--config", flags.config, "experiment config (JSON)");
    if (sub != "figures" && sub != "validate")
        app.add_option("--backend", flags.backend, "series|laplace|volterra|modes");
    if (sub != "validate") app.add_option("--out", flags.out, "output path");
    if (sub == "crosscheck" || sub == "witness" || sub == "amplitude")
        app.add_option("--tol", flags.tol, "tolerance");
    if (sub == "crosscheck") app.add_option("--backends", flags.backends, "comma-separated list");
    if (sub == "figures") app.add_option("--which", flags.which, "fig2|fig3");

    std::vector<std::string> rest(args.rbegin(), args.rend() - 1);
    try {
        app.parse(rest);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        report(err, to_string(ErrorKind::BadParameter), e.what());
        return kExitValidation;
    }

    try {
        if (sub == "amplitude") return cmd_amplitude(flags, false, out);
        if (sub == "rates") return cmd_amplitude(flags, true, out);
        if (sub == "crosscheck") return cmd_crosscheck(flags, out);
        if (sub == "witness") return cmd_witness(flags, out);
        if (sub == "figures") return cmd_figures(flags, out);
        return cmd_validate(flags, out);
    } catch (const Error& e) {
        report(err, to_string(e.kind()), e.what());
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        report(err, "Internal", e.what());
        return kExitNumerical;
    }
}

} // namespace hnm
