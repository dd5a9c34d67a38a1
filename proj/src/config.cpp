// Copyright 2026 The qsense authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qsense/config.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <set>

#include <json.hpp>

#include "qsense/experiments.hpp"

namespace qsense::cli {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------------
// Units and schema helpers
// ---------------------------------------------------------------------

void check_keys(const json& obj, const std::string& section,
                std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) throw ConfigError("section '" + section + "' must be an object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, _] : obj.items())
        if (!ok.count(key))
            throw ConfigError("unknown key '" + key + "' in section '" + section + "'");
}

const json& require(const json& obj, const std::string& section, const char* key) {
    if (!obj.contains(key))
        throw ConfigError("missing key '" + std::string(key) + "' in section '" + section + "'");
    return obj.at(key);
}

struct UnitTable {
    const char* fallback;  // unit assumed for bare numbers
    std::initializer_list<std::pair<const char*, double>> factors;
};

// Internal units are rad/us and us.
const UnitTable kFrequency{"MHz",
                           {{"MHz", 2.0 * M_PI},
                            {"kHz", 2.0 * M_PI * 1e-3},
                            {"GHz", 2.0 * M_PI * 1e3},
                            {"rad/us", 1.0}}};
const UnitTable kTime{"ns", {{"ns", 1e-3}, {"us", 1.0}, {"\xc2\xb5s", 1.0}, {"ms", 1e3}}};
const UnitTable kAngle{"deg", {{"deg", M_PI / 180.0}, {"rad", 1.0}}};

double convert(double value, const std::string& unit, const UnitTable& table,
               const std::string& where) {
    for (const auto& [name, factor] : table.factors)
        if (unit == name) return value * factor;
    throw ConfigError("unsupported unit '" + unit + "' for '" + where + "'");
}

double parse_quantity(const json& v, const UnitTable& table, const std::string& where) {
    if (v.is_number()) return convert(v.get<double>(), table.fallback, table, where);
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        size_t pos = 0;
        double value;
        try {
            value = std::stod(s, &pos);
        } catch (const std::exception&) {
            throw ConfigError("cannot parse quantity '" + s + "' for '" + where + "'");
        }
        while (pos < s.size() && s[pos] == ' ') ++pos;
        const std::string unit = s.substr(pos);
        if (unit.empty())
            throw ConfigError("quantity '" + s + "' for '" + where + "' is missing a unit");
        return convert(value, unit, table, where);
    }
    throw ConfigError("'" + where + "' must be a number or a \"value unit\" string");
}

double parse_frequency(const json& o, const std::string& sec, const char* key) {
    return parse_quantity(require(o, sec, key), kFrequency, sec + "." + key);
}
double parse_time(const json& o, const std::string& sec, const char* key) {
    return parse_quantity(require(o, sec, key), kTime, sec + "." + key);
}
double parse_angle(const json& o, const std::string& sec, const char* key) {
    return parse_quantity(require(o, sec, key), kAngle, sec + "." + key);
}
double parse_number(const json& o, const std::string& sec, const char* key) {
    const json& v = require(o, sec, key);
    if (!v.is_number())
        throw ConfigError("'" + sec + "." + std::string(key) + "' must be a plain number");
    return v.get<double>();
}
int parse_int(const json& o, const std::string& sec, const char* key) {
    const json& v = require(o, sec, key);
    if (!v.is_number_integer())
        throw ConfigError("'" + sec + "." + std::string(key) + "' must be an integer");
    return v.get<int>();
}

json load_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open config '" + path + "'");
    json doc;
    try {
        doc = json::parse(f);
    } catch (const json::parse_error& e) {
        throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
    }
    return doc;
}

// ---------------------------------------------------------------------
// Section parsers
// ---------------------------------------------------------------------

RotationAngles parse_rotation(const json& v, const std::string& where) {
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "uniform") return RotationAngles::uniform_readout();
        if (s == "none") return RotationAngles{};
        throw ConfigError("'" + where + "' must be \"uniform\", \"none\" or an angle object");
    }
    check_keys(v, where, {"a", "b", "c"});
    RotationAngles r;
    r.a = parse_angle(v, where, "a");
    r.b = parse_angle(v, where, "b");
    r.c = parse_number(v, where, "c");
    return r;
}

NoiseSpec parse_noise(const json& v) {
    check_keys(v, "noise", {"kind", "sigma", "shots", "epsilon", "include_projection"});
    const std::string kind = require(v, "noise", "kind").get<std::string>();
    NoiseSpec spec;
    if (kind == "averaged") {
        spec = NoiseSpec::averaged(parse_number(v, "noise", "sigma"));
        if (v.contains("shots")) spec.n = parse_int(v, "noise", "shots");
        if (v.contains("include_projection"))
            spec.include_projection_term = require(v, "noise", "include_projection").get<bool>();
    } else if (kind == "projection") {
        spec = NoiseSpec::quantum_projection(parse_int(v, "noise", "shots"));
        if (v.contains("sigma")) spec.sigma = parse_number(v, "noise", "sigma");
    } else if (kind == "single-shot") {
        spec = NoiseSpec::single_shot(parse_int(v, "noise", "shots"),
                                      parse_number(v, "noise", "epsilon"));
    } else {
        throw ConfigError("noise.kind must be averaged, projection or single-shot");
    }
    if (spec.n < 1) throw ConfigError("noise.shots must be >= 1");
    return spec;
}

Scenario parse_scenario(const json& doc, const std::string& config_name) {
    Scenario s;

    const std::string model = require(doc, config_name, "model").get<std::string>();
    if (model == "nv-drive")
        s.model = Scenario::Model::NvDrive;
    else if (model == "ideal")
        s.model = Scenario::Model::IdealVectorField;
    else
        throw ConfigError("model must be \"nv-drive\" or \"ideal\"");

    const json& probe = require(doc, config_name, "probe");
    check_keys(probe, "probe", {"polarization"});
    s.probe.polarization_population = parse_number(probe, "probe", "polarization");

    const json& target = require(doc, config_name, "target");
    check_keys(target, "target", {"omega", "delta", "phi"});
    s.target.omega = parse_frequency(target, "target", "omega");
    s.target.delta = parse_frequency(target, "target", "delta");
    s.target.phi = parse_angle(target, "target", "phi");

    const json& seq = require(doc, config_name, "sequence");
    check_keys(seq, "sequence",
               {"n_loops", "dwell", "hyperfine", "control", "pi_pulse_phases", "rotation",
                "pulses"});
    s.sequence.n_loops = parse_int(seq, "sequence", "n_loops");
    s.sequence.dwell = parse_time(seq, "sequence", "dwell");
    s.sequence.hyperfine =
        seq.contains("hyperfine") ? parse_frequency(seq, "sequence", "hyperfine") : 0.0;

    if (!seq.contains("control") || (seq.at("control").is_string() &&
                                     seq.at("control").get<std::string>() == "derived")) {
        s.sequence.control = derive_control(s.target);
    } else {
        const json& c = seq.at("control");
        check_keys(c, "sequence.control", {"omega", "delta", "phi"});
        s.sequence.control.omega = parse_frequency(c, "sequence.control", "omega");
        s.sequence.control.delta = parse_frequency(c, "sequence.control", "delta");
        s.sequence.control.phi = parse_angle(c, "sequence.control", "phi");
    }

    if (!seq.contains("pi_pulse_phases") ||
        (seq.at("pi_pulse_phases").is_string() &&
         seq.at("pi_pulse_phases").get<std::string>() == "auto")) {
        s.sequence.pi_pulse_phases = {
            compensating_pulse_phase(s.target.delta, s.sequence.dwell), 0.0};
    } else {
        const json& ph = seq.at("pi_pulse_phases");
        if (!ph.is_array() || ph.size() != 2)
            throw ConfigError("sequence.pi_pulse_phases must be \"auto\" or [phi1, phi2]");
        s.sequence.pi_pulse_phases = {
            parse_quantity(ph.at(0), kAngle, "sequence.pi_pulse_phases[0]"),
            parse_quantity(ph.at(1), kAngle, "sequence.pi_pulse_phases[1]")};
    }

    s.sequence.rotation = seq.contains("rotation")
                              ? parse_rotation(seq.at("rotation"), "sequence.rotation")
                              : RotationAngles::uniform_readout();

    if (seq.contains("pulses")) {
        const json& p = seq.at("pulses");
        if (p.is_string() && p.get<std::string>() == "instantaneous") {
            s.sequence.pulses = PulseModel::instantaneous();
        } else {
            check_keys(p, "sequence.pulses", {"rabi"});
            s.sequence.pulses = PulseModel::finite(parse_frequency(p, "sequence.pulses", "rabi"));
        }
    }

    if (doc.contains("spam") && !doc.at("spam").is_null()) {
        const json& sp = doc.at("spam");
        check_keys(sp, "spam", {"zeta", "gamma", "eta"});
        SpamModel m;
        m.polarization = s.probe.polarization_population;
        m.zeta = parse_number(sp, "spam", "zeta");
        m.gamma = parse_number(sp, "spam", "gamma");
        m.eta = parse_number(sp, "spam", "eta");
        s.spam = m;
    }

    s.noise = parse_noise(require(doc, config_name, "noise"));
    s.validate();
    return s;
}

std::vector<int> parse_n_values(const json& doc, const std::string& section) {
    const json& nv = require(doc, section, "n_values");
    if (!nv.is_array() || nv.empty()) throw ConfigError("n_values must be a non-empty array");
    std::vector<int> out;
    for (const auto& v : nv) {
        if (!v.is_number_integer() || v.get<int>() < 1)
            throw ConfigError("n_values entries must be integers >= 1");
        out.push_back(v.get<int>());
    }
    return out;
}

// ---------------------------------------------------------------------
// Subcommand runners
// ---------------------------------------------------------------------

double uniform_from(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Table run_ideal_qfim(const json& doc, std::uint64_t seed) {
    check_keys(doc, "ideal-qfim", {"points", "field_min", "field_max", "time_min", "time_max"});
    const int points = parse_int(doc, "ideal-qfim", "points");
    if (points < 1) throw ConfigError("points must be >= 1");
    const double b_min = parse_frequency(doc, "ideal-qfim", "field_min");
    const double b_max = parse_frequency(doc, "ideal-qfim", "field_max");
    const double t_min = parse_time(doc, "ideal-qfim", "time_min");
    const double t_max = parse_time(doc, "ideal-qfim", "time_max");

    Table t;
    t.columns = {{"b", "rad/us"},        {"alpha", "rad"},      {"beta", "rad"},
                 {"t", "us"},            {"qfim_b", ""},        {"qfim_alpha", ""},
                 {"qfim_beta", ""},      {"cfim_b", ""},        {"cfim_alpha", ""},
                 {"cfim_beta", ""},      {"analytic_b", ""},    {"analytic_alpha", ""},
                 {"analytic_beta", ""}};

    std::mt19937_64 rng(seed);
    for (int k = 0; k < points; ++k) {
        const VectorField f{uniform_from(rng, b_min, b_max), uniform_from(rng, 0.3, M_PI - 0.3),
                            uniform_from(rng, -M_PI + 0.3, M_PI - 0.3)};
        const double time = uniform_from(rng, t_min, t_max);

        const StateFn state_fn = [&f, time](const std::array<double, 3>& th) {
            const VectorField vf{th[0], th[1], th[2]};
            const Operator u = kron(expm(ideal_hamiltonian(vf), cdouble(0, -time)), identity2());
            return apply_unitary(prepare_probe(ProbeSpec{1.0}), u);
        };
        const ProbsFn probs_fn = [time](const std::array<double, 3>& th) {
            const auto p = ideal_bell_probabilities(VectorField{th[0], th[1], th[2]}, time);
            return std::vector<double>(p.begin(), p.end());
        };
        const std::array<double, 3> theta{f.b, f.alpha, f.beta};
        const Mat3 q = qfim_numeric(state_fn, theta, kDefaultFdStep);
        const Mat3 c = cfim(probs_fn, theta, kDefaultFdStep).fim;

        const double s2 = std::pow(std::sin(f.b * time), 2);
        const double sa2 = std::pow(std::sin(f.alpha), 2);
        t.add_row({f.b, f.alpha, f.beta, time, q.at(0, 0), q.at(1, 1), q.at(2, 2), c.at(0, 0),
                   c.at(1, 1), c.at(2, 2), 4.0 * time * time, 4.0 * s2, 4.0 * s2 * sa2});
    }
    return t;
}

Table run_rotated_optimum(const json& doc, std::uint64_t seed) {
    check_keys(doc, "rotated-optimum", {"sigma0", "shots", "time", "starts"});
    const double sigma0 = parse_number(doc, "rotated-optimum", "sigma0");
    const int shots = parse_int(doc, "rotated-optimum", "shots");
    const double time = parse_time(doc, "rotated-optimum", "time");
    const int starts = parse_int(doc, "rotated-optimum", "starts");

    const RotationOptimum opt = optimize_rotation(sigma0, shots, time, starts, seed);
    const double uniform =
        zero_field_rotated_objective(RotationAngles::uniform_readout(), sigma0, shots, time);
    const double reference =
        1.5 * (std::sqrt(3.0) + 2.0) * sigma0 * sigma0 / (shots * time * time);

    Table t;
    t.columns = {{"a", "rad"},         {"b", "rad"},          {"c", ""},
                 {"value", "1/us^2"},  {"uniform", "1/us^2"}, {"reference_min", "1/us^2"}};
    t.add_row({opt.angles.a, opt.angles.b, opt.angles.c, opt.value, uniform, reference});
    return t;
}

Table run_nv_sweep(const json& doc, std::uint64_t /*seed*/) {
    check_keys(doc, "nv-sweep",
               {"model", "probe", "target", "sequence", "spam", "noise", "sweep"});
    const Scenario s = parse_scenario(doc, "nv-sweep");

    const json& sw = require(doc, "nv-sweep", "sweep");
    check_keys(sw, "sweep", {"axis", "start", "stop", "count"});
    const std::string axis_name = require(sw, "sweep", "axis").get<std::string>();
    TargetAxis axis;
    const UnitTable* units;
    std::string unit_label;
    if (axis_name == "omega") {
        axis = TargetAxis::Omega;
        units = &kFrequency;
        unit_label = "rad/us";
    } else if (axis_name == "delta") {
        axis = TargetAxis::Delta;
        units = &kFrequency;
        unit_label = "rad/us";
    } else if (axis_name == "phi") {
        axis = TargetAxis::Phi;
        units = &kAngle;
        unit_label = "rad";
    } else {
        throw ConfigError("sweep.axis must be omega, delta or phi");
    }
    const double start = parse_quantity(require(sw, "sweep", "start"), *units, "sweep.start");
    const double stop = parse_quantity(require(sw, "sweep", "stop"), *units, "sweep.stop");
    const int count = parse_int(sw, "sweep", "count");
    if (count < 1) throw ConfigError("sweep.count must be >= 1");

    std::vector<double> grid;
    grid.reserve(count);
    for (int i = 0; i < count; ++i)
        grid.push_back(count == 1 ? start : start + (stop - start) * i / (count - 1));

    Table t;
    t.columns = {{axis_name, unit_label}, {"p1", ""}, {"p2", ""}, {"p3", ""}};
    for (const auto& row : sweep_signal(s, axis, grid))
        t.add_row({row.value, row.signals[0], row.signals[1], row.signals[2]});
    return t;
}

Table run_scaling(const json& doc, std::uint64_t /*seed*/) {
    check_keys(doc, "scaling",
               {"model", "probe", "target", "sequence", "spam", "noise", "n_values"});
    const Scenario s = parse_scenario(doc, "scaling");
    const auto n_values = parse_n_values(doc, "scaling");

    const auto rows = sensitivity_vs_n(s, n_values);
    std::array<ScalingFit, 3> fits;
    for (int j = 0; j < 3; ++j) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& r : rows) pts.emplace_back(r.n_loops, r.dtheta[j]);
        fits[j] = fit_power_law(pts);
    }

    Table t;
    t.columns = {{"n", ""},
                 {"delta_omega", "rad/us"},
                 {"delta_delta", "rad/us"},
                 {"delta_phi", "rad"},
                 {"m_omega", ""},
                 {"m_delta", ""},
                 {"m_phi", ""}};
    for (const auto& r : rows)
        t.add_row({static_cast<double>(r.n_loops), r.dtheta[0], r.dtheta[1], r.dtheta[2],
                   fits[0].exponent, fits[1].exponent, fits[2].exponent});
    return t;
}

Table run_compare(const json& doc, std::uint64_t seed) {
    check_keys(doc, "compare", {"sigma0", "shots", "time"});
    const double sigma0 = parse_number(doc, "compare", "sigma0");
    const int shots = parse_int(doc, "compare", "shots");
    const double time = parse_time(doc, "compare", "time");

    const StrategyReport r = compare_strategies(sigma0, shots, time, seed);
    const double unit = sigma0 * sigma0 / (shots * time * time);

    Table t;
    t.columns = {{"sequential_single", "sigma0^2/(n T^2)"},
                 {"uniform_rotated", "sigma0^2/(n T^2)"},
                 {"optimal_rotated", "sigma0^2/(n T^2)"},
                 {"projection_simultaneous", "1/us^2"},
                 {"projection_sequential", "1/us^2"}};
    t.add_row({r.sequential_single / unit, r.uniform_rotated / unit, r.optimal_rotated / unit,
               r.projection_simultaneous, r.projection_sequential});
    return t;
}

Table run_maps(const json& doc, std::uint64_t /*seed*/) {
    check_keys(doc, "maps", {"noise", "rotation", "field", "time", "alpha", "beta"});
    const NoiseSpec noise = parse_noise(require(doc, "maps", "noise"));

    std::optional<RotationAngles> rotation;
    if (doc.contains("rotation")) {
        const json& r = doc.at("rotation");
        if (!(r.is_string() && r.get<std::string>() == "none"))
            rotation = parse_rotation(r, "rotation");
    }

    auto parse_grid = [&](const char* key, const UnitTable& units, bool from_zero) {
        const json& g = require(doc, "maps", key);
        check_keys(g, std::string("maps.") + key, {"min", "max", "count"});
        const double lo = parse_quantity(require(g, key, "min"), units, key);
        const double hi = parse_quantity(require(g, key, "max"), units, key);
        const int count = parse_int(g, key, "count");
        if (count < 1) throw ConfigError(std::string(key) + ".count must be >= 1");
        if (!from_zero && !(lo > 0.0))
            throw ConfigError(std::string(key) + ".min must be positive");
        std::vector<double> grid;
        for (int i = 0; i < count; ++i)
            grid.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
        return grid;
    };
    const auto b_grid = parse_grid("field", kFrequency, true);
    const auto t_grid = parse_grid("time", kTime, false);
    const double alpha = parse_angle(doc, "maps", "alpha");
    const double beta = parse_angle(doc, "maps", "beta");

    Table t;
    t.columns = {{"b", "rad/us"}, {"t", "us"}, {"fom", "1/us^2"}};
    for (const auto& mp : sensitivity_map(noise, rotation, b_grid, t_grid, alpha, beta))
        t.add_row({mp.b, mp.t, mp.fom});
    return t;
}

Table run_projection_vs_shot(const json& doc, std::uint64_t /*seed*/) {
    check_keys(doc, "projection-vs-shot",
               {"model", "probe", "target", "sequence", "spam", "noise", "n_values"});
    const Scenario s = parse_scenario(doc, "projection-vs-shot");
    const auto n_values = parse_n_values(doc, "projection-vs-shot");
    if (!(s.noise.sigma > 0.0))
        throw ConfigError("projection-vs-shot needs noise.sigma for the averaged branch");

    Table t;
    t.columns = {{"n", ""},
                 {"proj_delta_omega", "rad/us"},
                 {"proj_delta_delta", "rad/us"},
                 {"proj_delta_phi", "rad"},
                 {"shot_delta_omega", "rad/us"},
                 {"shot_delta_delta", "rad/us"},
                 {"shot_delta_phi", "rad"}};
    for (const auto& r : projection_vs_shot(s, n_values))
        t.add_row({static_cast<double>(r.n_loops), r.projection[0], r.projection[1],
                   r.projection[2], r.shot[0], r.shot[1], r.shot[2]});
    return t;
}

}  // namespace

Subcommand parse_subcommand(const std::string& name) {
    if (name == "ideal-qfim") return Subcommand::IdealQfim;
    if (name == "rotated-optimum") return Subcommand::RotatedOptimum;
    if (name == "nv-sweep") return Subcommand::NvSweep;
    if (name == "scaling") return Subcommand::Scaling;
    if (name == "compare") return Subcommand::Compare;
    if (name == "maps") return Subcommand::Maps;
    if (name == "projection-vs-shot") return Subcommand::ProjectionVsShot;
    throw ConfigError("unknown subcommand '" + name + "'");
}

Table run_scenario(Subcommand sub, const std::string& config_path, std::uint64_t seed) {
    const json doc = load_json(config_path);
    switch (sub) {
        case Subcommand::IdealQfim: return run_ideal_qfim(doc, seed);
        case Subcommand::RotatedOptimum: return run_rotated_optimum(doc, seed);
        case Subcommand::NvSweep: return run_nv_sweep(doc, seed);
        case Subcommand::Scaling: return run_scaling(doc, seed);
        case Subcommand::Compare: return run_compare(doc, seed);
        case Subcommand::Maps: return run_maps(doc, seed);
        case Subcommand::ProjectionVsShot: return run_projection_vs_shot(doc, seed);
    }
    throw Error("unreachable subcommand");
}

}  // namespace qsense::cli
