#include "hnm/config.hpp"

#include "hnm/error.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace hnm {

using nlohmann::json;

namespace {

CouplingKind kind_from_string(const std::string& name)
{
    if (name == "flat") return CouplingKind::Flat;
    if (name == "sinusoidal") return CouplingKind::Sinusoidal;
    if (name == "exp_comb") return CouplingKind::ExpComb;
    if (name == "custom") return CouplingKind::CustomFourier;
    throw Error(ErrorKind::ConfigParse, "unknown coupling kind '" + name + "'");
}

template <class T>
T get_or(const json& j, const char* key, T fallback)
{
    if (!j.contains(key) || j.at(key).is_null()) return fallback;
    return j.at(key).get<T>();
}

std::optional<double> get_optional(const json& j, const char* key)
{
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<double>();
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

} // namespace

std::string_view to_string(CouplingKind kind) noexcept
{
    switch (kind) {
    case CouplingKind::Flat: return "flat";
    case CouplingKind::Sinusoidal: return "sinusoidal";
    case CouplingKind::ExpComb: return "exp_comb";
    case CouplingKind::CustomFourier: return "custom";
    }
    return "flat";
}

ModelParams ExperimentConfig::model() const { return {validate_coupling(coupling), eps0}; }

TimeGrid ExperimentConfig::grid() const
{
    if (!(dt > 0.0) || !(t_max > 0.0) || dt > t_max)
        throw Error(ErrorKind::BadParameter, "grid needs 0 < dt <= t_max");
    return TimeGrid::covering(dt, t_max);
}

LaplaceOptions ExperimentConfig::laplace_options() const
{
    LaplaceOptions o;
    o.contour_height = backend_options.contour_height;
    o.omega_cutoff = backend_options.omega_cutoff;
    o.n_quad = backend_options.n_quad;
    return o;
}

ExperimentConfig parse_config(const std::string& text)
{
    try {
        const json root = json::parse(text);
        ExperimentConfig c;

        const json& model = root.at("model");
        const json& coupling = model.at("coupling");
        c.coupling.kind = kind_from_string(coupling.at("kind").get<std::string>());
        c.coupling.gamma0 = coupling.at("gamma0").get<double>();
        c.coupling.period_T = get_or(coupling, "period_T", 0.0);
        c.coupling.alpha = get_or(coupling, "alpha", 0.0);
        c.coupling.beta = get_or(coupling, "beta", 0.0);
        c.coupling.coeffs = get_or(coupling, "coeffs", std::vector<double>{});
        c.eps0 = get_or(model, "eps0", 0.0);

        const json& grid = root.at("grid");
        c.dt = grid.at("dt").get<double>();
        c.t_max = grid.at("t_max").get<double>();

        c.backend = backend_from_string(get_or(root, "backend", std::string("series")));

        if (root.contains("backend_options")) {
            const json& b = root.at("backend_options");
            c.backend_options.contour_height = get_optional(b, "contour_height");
            c.backend_options.omega_cutoff = get_optional(b, "omega_cutoff");
            c.backend_options.n_quad = get_or(b, "n_quad", c.backend_options.n_quad);
            c.backend_options.modes_K = get_or(b, "modes_K", c.backend_options.modes_K);
        }
        if (root.contains("outputs")) {
            const json& o = root.at("outputs");
            c.outputs.csv_path = get_or(o, "csv_path", std::string());
            c.outputs.include_rates = get_or(o, "include_rates", false);
            c.outputs.include_defect = get_or(o, "include_defect", false);
        }
        return c;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ConfigParse, e.what());
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::ConfigParse) throw;
        throw Error(ErrorKind::ConfigParse, e.what());
    }
}

ExperimentConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot read config '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string serialize_config(const ExperimentConfig& c)
{
    json coupling = {{"kind", to_string(c.coupling.kind)},
                     {"gamma0", c.coupling.gamma0},
                     {"period_T", c.coupling.period_T}};
    switch (c.coupling.kind) {
    case CouplingKind::Sinusoidal: coupling["alpha"] = c.coupling.alpha; break;
    case CouplingKind::ExpComb: coupling["beta"] = c.coupling.beta; break;
    case CouplingKind::CustomFourier: coupling["coeffs"] = c.coupling.coeffs; break;
    case CouplingKind::Flat: break;
    }
    json root = {
        {"model", {{"coupling", coupling}, {"eps0", c.eps0}}},
        {"grid", {{"dt", c.dt}, {"t_max", c.t_max}}},
        {"backend", to_string(c.backend)},
        {"backend_options",
         {{"contour_height", optional_json(c.backend_options.contour_height)},
          {"omega_cutoff", optional_json(c.backend_options.omega_cutoff)},
          {"n_quad", c.backend_options.n_quad},
          {"modes_K", c.backend_options.modes_K}}},
        {"outputs",
         {{"csv_path", c.outputs.csv_path},
          {"include_rates", c.outputs.include_rates},
          {"include_defect", c.outputs.include_defect}}},
    };
    return root.dump(2) + "\n";
}

} // namespace hnm
