#include "cellrate/cli/scenario_file.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "cellrate/errors.hpp"
#include "cellrate/numerics/tabulated_pdf.hpp"

namespace cellrate::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

using Section = std::map<std::string, std::string>;

std::map<std::string, Section> parse_sections(const std::string& text) {
    std::map<std::string, Section> doc;
    std::istringstream in(text);
    std::string line, current;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw ScenarioError("line " + std::to_string(lineno) + ": malformed section header");
            current = trim(t.substr(1, t.size() - 2));
            if (doc.count(current))
                throw ScenarioError("duplicate section [" + current + "]");
            doc[current] = {};
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos || current.empty())
            throw ScenarioError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(t.substr(0, eq));
        const std::string val = trim(t.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ScenarioError("line " + std::to_string(lineno) + ": empty key or value");
        if (doc[current].count(key))
            throw ScenarioError("duplicate key '" + key + "' in [" + current + "]");
        doc[current][key] = val;
    }
    return doc;
}

double to_double(const std::string& sec, const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ScenarioError("[" + sec + "] " + key + ": not a number: '" + v + "'");
    }
}

int64_t to_int(const std::string& sec, const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const long long x = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ScenarioError("[" + sec + "] " + key + ": not an integer: '" + v + "'");
    }
}

uint64_t to_uint(const std::string& sec, const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const unsigned long long x = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ScenarioError("[" + sec + "] " + key + ": not a nonnegative integer: '" + v + "'");
    }
}

// Section reader that records every key it serves so leftovers can be
// reported as errors.
struct Reader {
    const std::string name;
    const Section& kv;
    std::set<std::string> used;

    bool has(const std::string& key) const { return kv.count(key) > 0; }
    std::string raw(const std::string& key) {
        const auto it = kv.find(key);
        if (it == kv.end()) throw ScenarioError("[" + name + "] missing key '" + key + "'");
        used.insert(key);
        return it->second;
    }
    double num(const std::string& key) { return to_double(name, key, raw(key)); }
    double num_or(const std::string& key, double dflt) {
        if (!has(key)) return dflt;
        return num(key);
    }
    void finish() const {
        for (const auto& [k, v] : kv)
            if (!used.count(k))
                throw ScenarioError("[" + name + "] unknown key '" + k + "'");
    }
};

}  // namespace

ScenarioFile parse_scenario_text(const std::string& text) {
    const auto doc = parse_sections(text);
    const std::set<std::string> known = {"cell", "pathloss", "interferers",
                                         "noise",  "fading",   "grid", "mc"};
    for (const auto& [sec, kv] : doc)
        if (!known.count(sec)) throw ScenarioError("unknown section [" + sec + "]");
    for (const char* sec : {"cell", "pathloss", "interferers", "noise", "fading"})
        if (!doc.count(sec)) throw ScenarioError(std::string("missing section [") + sec + "]");

    ScenarioFile out;
    static const Section kEmpty;

    Reader cell{"cell", doc.at("cell"), {}};
    const double radius = cell.num("radius_m");
    const int64_t users = to_int("cell", "num_users", cell.raw("num_users"));
    const double dmin = cell.num_or("min_distance_m", 1.0);
    cell.finish();

    Reader pl{"pathloss", doc.at("pathloss"), {}};
    channel::PathlossParams serving;
    serving.exponent = pl.num("exponent");
    serving.constant_db = pl.num("constant_db");
    serving.reference_m = pl.num("reference_m");
    serving.tx_power_w = pl.num("power_w");
    pl.finish();

    Reader noise{"noise", doc.at("noise"), {}};
    const double noise_w = noise.num("power_w");
    noise.finish();

    if (users < 1 || users > (int64_t{1} << 31))
        throw ScenarioError("[cell] num_users out of range");

    channel::CellScenario scen;
    try {
        scen = channel::CellScenario::symmetric(radius, static_cast<int>(users), serving,
                                                noise_w, dmin);
    } catch (const ScenarioError& e) {
        throw ScenarioError(std::string("scenario invariant: ") + e.what());
    }

    Reader intf{"interferers", doc.at("interferers"), {}};
    const int64_t count = to_int("interferers", "count", intf.raw("count"));
    if (count != channel::kNumInterferers)
        throw ScenarioError("[interferers] count must be exactly " +
                            std::to_string(channel::kNumInterferers));
    for (int j = 1; j <= channel::kNumInterferers; ++j) {
        const std::string prefix = std::to_string(j) + ".";
        channel::PathlossParams& p = scen.interferers[j - 1].pathloss;
        p.exponent = intf.num_or(prefix + "exponent", p.exponent);
        p.constant_db = intf.num_or(prefix + "constant_db", p.constant_db);
        p.reference_m = intf.num_or(prefix + "reference_m", p.reference_m);
        p.tx_power_w = intf.num_or(prefix + "power_w", p.tx_power_w);
    }
    intf.finish();

    Reader fad{"fading", doc.at("fading"), {}};
    out.fading_model = fad.raw("model");
    if (out.fading_model != "rayleigh")
        throw ScenarioError("[fading] model must be 'rayleigh'");
    out.fading_mean_power = fad.num_or("mean_power", 1.0);
    if (!(out.fading_mean_power > 0.0))
        throw ScenarioError("[fading] mean_power must be positive");
    fad.finish();

    Reader grid{"grid", doc.count("grid") ? doc.at("grid") : kEmpty, {}};
    out.rate_min = grid.num_or("rate_min", 0.0);
    out.rate_max = grid.num_or("rate_max", 10.0);
    const int64_t pts = doc.count("grid") && grid.has("points")
                            ? to_int("grid", "points", grid.raw("points"))
                            : 501;
    grid.finish();
    if (!(out.rate_min >= 0.0) || !(out.rate_max > out.rate_min))
        throw ScenarioError("[grid] requires 0 <= rate_min < rate_max");
    if (pts < 3 || pts > 2000000) throw ScenarioError("[grid] points out of range");
    out.rate_points = static_cast<int>(pts);

    Reader mc{"mc", doc.count("mc") ? doc.at("mc") : kEmpty, {}};
    if (doc.count("mc")) {
        if (mc.has("seed")) out.mc_seed = to_uint("mc", "seed", mc.raw("seed"));
        if (mc.has("drops")) {
            out.mc_drops = to_int("mc", "drops", mc.raw("drops"));
            if (out.mc_drops < 1) throw ScenarioError("[mc] drops must be >= 1");
        }
    }
    mc.finish();

    try {
        scen.validate();
    } catch (const ScenarioError& e) {
        throw ScenarioError(std::string("scenario invariant: ") + e.what());
    }
    out.scenario = scen;
    return out;
}

ScenarioFile parse_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open scenario file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario_text(ss.str());
}

std::unique_ptr<channel::FadingModel> ScenarioFile::make_fading() const {
    return std::make_unique<channel::RayleighPowerFading>(fading_mean_power);
}

std::vector<double> ScenarioFile::rate_grid() const {
    return numerics::linspace(rate_min, rate_max, rate_points);
}

}  // namespace cellrate::cli
