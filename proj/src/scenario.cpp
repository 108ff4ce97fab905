#include "msloc/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "msloc/angles.hpp"
#include "msloc/errors.hpp"

namespace msloc {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    const std::set<std::string> keys(allowed.begin(), allowed.end());
    for (const auto& [key, _] : obj.items()) {
        if (!keys.contains(key)) throw ParseError(where.empty() ? key : where + "." + key, "unknown key");
    }
}

const json& require_object(const json& j, const std::string& field) {
    if (!j.is_object()) throw ParseError(field, "expected an object");
    return j;
}

double read_number(const json& obj, const std::string& where, const char* key, std::optional<double> fallback = {}) {
    const std::string field = where + "." + key;
    if (!obj.contains(key)) {
        if (fallback) return *fallback;
        throw ParseError(field, "missing required field");
    }
    const auto& v = obj.at(key);
    if (!v.is_number()) throw ParseError(field, "expected a number");
    return v.get<double>();
}

void check_finite(double v, const std::string& field) {
    if (!std::isfinite(v)) throw ValidationError(field, "must be finite");
}

void check_non_negative(double v, const std::string& field) {
    if (!std::isfinite(v) || v < 0.0) throw ValidationError(field, "must be finite and >= 0");
}

// Byte offset to 1-based line number.
std::size_t line_of(const std::string& text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

}  // namespace

Scene ScenarioFile::scene() const {
    std::vector<PolarPoint> pts;
    pts.reserve(txs.size());
    for (const auto& tx : txs) pts.push_back({tx.range_m, deg_to_rad(tx.angle_deg)});
    return Scene(std::move(pts), bounds.max_range_m, bounds.max_speed_mps);
}

TargetState ScenarioFile::target_state() const {
    return {{target.range_m, deg_to_rad(target.angle_deg)}, {target.speed_mps, deg_to_rad(target.heading_deg)}};
}

TrialSpec ScenarioFile::trial_spec(const EstimatorOptions& estimator) const {
    return TrialSpec{scene(), target_state(), noise, trials, seed, estimator};
}

SweepSpec ScenarioFile::sweep_spec(const EstimatorOptions& estimator) const {
    if (!sweep) throw ValidationError("sweep", "scenario has no sweep block");
    SweepSpec spec{trial_spec(estimator), sweep->channel, sweep->values};
    spec.validate();
    return spec;
}

void ScenarioFile::validate() const {
    if (txs.empty()) throw ValidationError("txs", "at least one TX is required");
    for (std::size_t i = 0; i < txs.size(); ++i) {
        const std::string f = "txs[" + std::to_string(i) + "]";
        check_finite(txs[i].angle_deg, f + ".angle_deg");
        check_non_negative(txs[i].range_m, f + ".range_m");
        if (txs[i].range_m == 0.0) throw ValidationError(f + ".range_m", "TX must not sit on the receiver");
    }
    if (!std::isfinite(bounds.max_range_m) || bounds.max_range_m <= 0.0)
        throw ValidationError("bounds.max_range_m", "must be > 0");
    if (!std::isfinite(bounds.max_speed_mps) || bounds.max_speed_mps <= 0.0)
        throw ValidationError("bounds.max_speed_mps", "must be > 0");
    check_non_negative(target.range_m, "target.range_m");
    check_finite(target.angle_deg, "target.angle_deg");
    check_non_negative(target.speed_mps, "target.speed_mps");
    check_finite(target.heading_deg, "target.heading_deg");
    if (target.range_m > bounds.max_range_m) throw ValidationError("target.range_m", "exceeds bounds.max_range_m");
    if (target.speed_mps > bounds.max_speed_mps) throw ValidationError("target.speed_mps", "exceeds bounds.max_speed_mps");
    noise.validate();
    if (trials < 1) throw ValidationError("trials", "must be >= 1");
    if (sweep) SweepSpec{trial_spec(), sweep->channel, sweep->values}.validate();
}

ScenarioFile parse_scenario_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("", "line " + std::to_string(line_of(text, e.byte)) + ": " + e.what());
    }
    require_object(doc, "<root>");
    reject_unknown(doc, "", {"txs", "target", "noise", "bounds", "trials", "seed", "sweep"});

    ScenarioFile s;
    if (!doc.contains("txs")) throw ParseError("txs", "missing required field");
    if (!doc["txs"].is_array()) throw ParseError("txs", "expected an array");
    for (std::size_t i = 0; i < doc["txs"].size(); ++i) {
        const std::string f = "txs[" + std::to_string(i) + "]";
        const auto& t = require_object(doc["txs"][i], f);
        reject_unknown(t, f, {"range_m", "angle_deg"});
        s.txs.push_back({read_number(t, f, "range_m"), read_number(t, f, "angle_deg")});
    }

    if (!doc.contains("target")) throw ParseError("target", "missing required field");
    const auto& tg = require_object(doc["target"], "target");
    reject_unknown(tg, "target", {"range_m", "angle_deg", "speed_mps", "heading_deg"});
    s.target = {read_number(tg, "target", "range_m"), read_number(tg, "target", "angle_deg"),
                read_number(tg, "target", "speed_mps"), read_number(tg, "target", "heading_deg")};

    if (doc.contains("noise")) {
        const auto& n = require_object(doc["noise"], "noise");
        reject_unknown(n, "noise", {"sigma_br_m", "sigma_brr_mps", "sigma_doa_deg"});
        s.noise = {read_number(n, "noise", "sigma_br_m", 0.0), read_number(n, "noise", "sigma_brr_mps", 0.0),
                   read_number(n, "noise", "sigma_doa_deg", 0.0)};
    }

    if (doc.contains("bounds")) {
        const auto& b = require_object(doc["bounds"], "bounds");
        reject_unknown(b, "bounds", {"max_range_m", "max_speed_mps"});
        s.bounds = {read_number(b, "bounds", "max_range_m", 1000.0), read_number(b, "bounds", "max_speed_mps", 100.0)};
    }

    if (doc.contains("trials")) {
        const auto& t = doc["trials"];
        if (!t.is_number_integer()) throw ParseError("trials", "expected an integer");
        // Non-negative integers parse as unsigned.
        if (!t.is_number_unsigned()) throw ValidationError("trials", "must be >= 1");
        s.trials = t.get<std::size_t>();
    }
    if (doc.contains("seed")) {
        const auto& t = doc["seed"];
        if (!t.is_number_integer() || (!t.is_number_unsigned() && t.get<std::int64_t>() < 0))
            throw ParseError("seed", "expected a non-negative 64-bit integer");
        s.seed = t.get<std::uint64_t>();
    }

    if (doc.contains("sweep")) {
        const auto& sw = require_object(doc["sweep"], "sweep");
        reject_unknown(sw, "sweep", {"channel", "values"});
        ScenarioFile::Sweep sweep;
        if (!sw.contains("channel") || !sw["channel"].is_string())
            throw ParseError("sweep.channel", "expected \"br\", \"brr\" or \"doa\"");
        const auto ch = parse_sweep_channel(sw["channel"].get<std::string>());
        if (!ch) throw ValidationError("sweep.channel", "expected \"br\", \"brr\" or \"doa\"");
        sweep.channel = *ch;
        if (sw.contains("values")) {
            if (!sw["values"].is_array()) throw ParseError("sweep.values", "expected an array");
            for (std::size_t i = 0; i < sw["values"].size(); ++i) {
                const auto& v = sw["values"][i];
                if (!v.is_number()) throw ParseError("sweep.values[" + std::to_string(i) + "]", "expected a number");
                sweep.values.push_back(v.get<double>());
            }
        } else {
            sweep.values = log_spaced(0.1, 10.0, 7);
        }
        s.sweep = std::move(sweep);
    }

    s.validate();
    return s;
}

ScenarioFile parse_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("", "cannot open scenario file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str());
}

std::string write_scenario(const ScenarioFile& s) {
    json doc;
    doc["txs"] = json::array();
    for (const auto& tx : s.txs) doc["txs"].push_back({{"range_m", tx.range_m}, {"angle_deg", tx.angle_deg}});
    doc["target"] = {{"range_m", s.target.range_m},
                     {"angle_deg", s.target.angle_deg},
                     {"speed_mps", s.target.speed_mps},
                     {"heading_deg", s.target.heading_deg}};
    doc["noise"] = {{"sigma_br_m", s.noise.sigma_br_m},
                    {"sigma_brr_mps", s.noise.sigma_brr_mps},
                    {"sigma_doa_deg", s.noise.sigma_doa_deg}};
    doc["bounds"] = {{"max_range_m", s.bounds.max_range_m}, {"max_speed_mps", s.bounds.max_speed_mps}};
    doc["trials"] = s.trials;
    doc["seed"] = s.seed;
    if (s.sweep) doc["sweep"] = {{"channel", std::string(to_string(s.sweep->channel))}, {"values", s.sweep->values}};
    return doc.dump(2) + "\n";
}

}  // namespace msloc
