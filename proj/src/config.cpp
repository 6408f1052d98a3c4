// SPDX-License-Identifier: Apache-2.0
#include "nsmlab/config.hpp"
#include "nsmlab/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace nsm {

using json = nlohmann::json;

namespace {

class Reader {
public:
    Reader(const json& j, std::string path) : j_(j), path_(std::move(path))
    {
        if (!j_.is_object()) fail(ErrorCode::Config, where("") + ": expected an object");
    }

    template <class T>
    void get(const char* key, T& out)
    {
        seen_.insert(key);
        auto it = j_.find(key);
        if (it == j_.end()) return;
        try {
            check_kind<T>(*it, key);
            out = it->template get<T>();
        } catch (const json::exception&) {
            fail(ErrorCode::Config, where(key) + ": wrong type");
        }
    }

    template <class F>
    void section(const char* key, F&& f)
    {
        seen_.insert(key);
        auto it = j_.find(key);
        if (it == j_.end()) return;
        Reader sub(*it, where(key));
        f(sub);
        sub.finish();
    }

    void finish() const
    {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!seen_.count(it.key())) fail(ErrorCode::Config, where(it.key()) + ": unknown key");
    }

    std::string where(const std::string& key) const
    {
        if (path_.empty()) return key;
        return key.empty() ? path_ : path_ + "." + key;
    }

private:
    template <class T>
    void check_kind(const json& v, const char* key) const
    {
        bool ok = true;
        if constexpr (std::is_same_v<T, bool>) ok = v.is_boolean();
        else if constexpr (std::is_same_v<T, std::string>) ok = v.is_string();
        else if constexpr (std::is_integral_v<T> && std::is_unsigned_v<T>) ok = v.is_number_unsigned();
        else if constexpr (std::is_integral_v<T>) ok = v.is_number_integer();
        else if constexpr (std::is_floating_point_v<T>) ok = v.is_number();
        else if constexpr (std::is_same_v<T, std::vector<int>>) {
            ok = v.is_array() && std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_number_integer(); });
        } else if constexpr (std::is_same_v<T, std::vector<double>>) {
            ok = v.is_array() && std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_number(); });
        }
        if (!ok) fail(ErrorCode::Config, where(key) + ": wrong type");
    }

    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

void require(bool ok, const char* path, const char* what)
{
    if (!ok) fail(ErrorCode::Config, std::string(path) + ": " + what);
}

json to_json(const RunConfig& c, bool with_io)
{
    json j;
    j["mode"] = c.mode;
    j["grid"] = {{"Nx", c.grid.Nx}, {"Ny", c.grid.Ny}, {"Lx", c.grid.Lx}};
    j["params"] = {{"eps", c.params.eps},         {"mu", c.params.mu},
                   {"mu0", c.params.mu0},         {"normalized", c.params.normalized},
                   {"c_light", c.params.c_light}, {"printed_plus_2uh", c.params.printed_plus_2uh}};
    j["gevrey"] = {{"delta0", c.gevrey.delta0}, {"s", c.gevrey.s}, {"schedule", c.gevrey.schedule},
                   {"C", c.gevrey.C},           {"C_in", c.gevrey.C_in}, {"theta", c.gevrey.theta}};
    j["time"] = {{"T", c.time.T}, {"dt", c.time.dt}, {"stride", c.time.stride}, {"cfl", c.time.cfl}};
    j["data"] = {{"amplitude", c.data.amplitude}, {"seed", c.data.seed}, {"kappa", c.data.kappa},
                 {"family", c.data.family},       {"kmax", c.data.kmax}};
    const IllposednessConfig& il = c.illposedness;
    j["illposedness"] = {{"k_list", il.k_list}, {"C0", il.C0},     {"s_growth", il.s_growth},
                         {"theta1", il.theta1}, {"m0", il.m0},     {"T0", il.T0},
                         {"dt", il.dt},         {"ny_factor", il.ny_factor}, {"eigen_count", il.eigen_count}};
    j["convergence"] = {{"eps_list", c.convergence.eps_list}};
    j["suite"] = {{"commutator_samples", c.suite.commutator_samples},
                  {"product_pairs", c.suite.product_pairs},
                  {"recovery_samples", c.suite.recovery_samples}};
    if (with_io) {
        j["out"] = c.out;
        j["quiet"] = c.quiet;
    }
    return j;
}

}  // namespace

const std::vector<std::string>& known_modes()
{
    static const std::vector<std::string> m{"eps",         "hydrostatic", "linear", "illposedness-sweep",
                                            "oscillator",  "convergence", "decay",  "property-suite"};
    return m;
}

void validate_config(const RunConfig& c)
{
    const auto& modes = known_modes();
    require(std::find(modes.begin(), modes.end(), c.mode) != modes.end(), "mode", "unknown mode");
    require(c.grid.Nx >= 8 && c.grid.Nx % 2 == 0, "grid.Nx", "must be an even integer >= 8");
    require(c.grid.Ny >= 8, "grid.Ny", "must be an integer >= 8");
    require(c.grid.Lx > 0.0 && std::isfinite(c.grid.Lx), "grid.Lx", "must be positive");
    require(c.params.eps > 0.0, "params.eps", "must be positive");
    require(c.params.mu > 0.0, "params.mu", "must be positive");
    require(c.params.mu0 > 0.0, "params.mu0", "must be positive");
    require(c.params.c_light > 0.0, "params.c_light", "must be positive");
    require(c.gevrey.delta0 > 0.0, "gevrey.delta0", "must be positive");
    require(c.gevrey.s >= 0.0, "gevrey.s", "must be nonnegative");
    require(c.gevrey.schedule == "none" || c.gevrey.schedule == "constant_rate" ||
                c.gevrey.schedule == "gwp_decaying",
            "gevrey.schedule", "must be none, constant_rate or gwp_decaying");
    require(c.gevrey.C > 0.0, "gevrey.C", "must be positive");
    require(c.gevrey.C_in > 0.0, "gevrey.C_in", "must be positive");
    require(c.gevrey.theta > 0.0 && c.gevrey.theta < 0.31415926535897931, "gevrey.theta", "must lie in (0, pi/10)");
    require(c.time.T >= 0.0, "time.T", "must be nonnegative");
    require(c.time.dt > 0.0, "time.dt", "must be positive");
    require(c.time.stride >= 1, "time.stride", "must be at least 1");
    require(c.time.cfl > 0.0, "time.cfl", "must be positive");
    require(c.data.amplitude >= 0.0, "data.amplitude", "must be nonnegative");
    require(c.data.kappa > 0.0, "data.kappa", "must be positive");
    require(c.data.family == "sine" || c.data.family == "bump", "data.family", "must be sine or bump");
    require(c.data.kmax >= 0, "data.kmax", "must be nonnegative");
    const IllposednessConfig& il = c.illposedness;
    require(!il.k_list.empty(), "illposedness.k_list", "must not be empty");
    for (int k : il.k_list) require(k < 0, "illposedness.k_list", "entries must be negative");
    require(il.C0 > 0.0, "illposedness.C0", "must be positive");
    require(il.s_growth >= 0.0 && il.s_growth < 0.5, "illposedness.s_growth", "must lie in [0, 1/2)");
    require(il.theta1 > 0.0 && il.theta1 < 1.0 / (16.0 * std::sqrt(2.0)), "illposedness.theta1",
            "must lie in (0, 1/(16 sqrt 2))");
    require(il.m0 > 0.0, "illposedness.m0", "must be positive");
    require(il.T0 > 0.0, "illposedness.T0", "must be positive");
    require(il.dt > 0.0, "illposedness.dt", "must be positive");
    require(il.ny_factor >= 1.0, "illposedness.ny_factor", "must be at least 1");
    require(il.eigen_count >= 1, "illposedness.eigen_count", "must be at least 1");
    require(c.convergence.eps_list.size() >= 4, "convergence.eps_list", "needs at least 4 values");
    for (double e : c.convergence.eps_list) require(e > 0.0, "convergence.eps_list", "entries must be positive");
    require(c.suite.commutator_samples >= 1, "suite.commutator_samples", "must be positive");
    require(c.suite.product_pairs >= 2, "suite.product_pairs", "must be at least 2");
    require(c.suite.recovery_samples >= 1, "suite.recovery_samples", "must be positive");
}

RunConfig parse_config_string(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorCode::Config, std::string("config: invalid JSON: ") + e.what());
    }
    RunConfig c;
    Reader r(j, "");
    r.get("mode", c.mode);
    r.section("grid", [&](Reader& s) {
        s.get("Nx", c.grid.Nx);
        s.get("Ny", c.grid.Ny);
        s.get("Lx", c.grid.Lx);
    });
    r.section("params", [&](Reader& s) {
        s.get("eps", c.params.eps);
        s.get("mu", c.params.mu);
        s.get("mu0", c.params.mu0);
        s.get("normalized", c.params.normalized);
        s.get("c_light", c.params.c_light);
        s.get("printed_plus_2uh", c.params.printed_plus_2uh);
    });
    r.section("gevrey", [&](Reader& s) {
        s.get("delta0", c.gevrey.delta0);
        s.get("s", c.gevrey.s);
        s.get("schedule", c.gevrey.schedule);
        s.get("C", c.gevrey.C);
        s.get("C_in", c.gevrey.C_in);
        s.get("theta", c.gevrey.theta);
    });
    r.section("time", [&](Reader& s) {
        s.get("T", c.time.T);
        s.get("dt", c.time.dt);
        s.get("stride", c.time.stride);
        s.get("cfl", c.time.cfl);
    });
    r.section("data", [&](Reader& s) {
        s.get("amplitude", c.data.amplitude);
        s.get("seed", c.data.seed);
        s.get("kappa", c.data.kappa);
        s.get("family", c.data.family);
        s.get("kmax", c.data.kmax);
    });
    r.section("illposedness", [&](Reader& s) {
        IllposednessConfig& il = c.illposedness;
        s.get("k_list", il.k_list);
        s.get("C0", il.C0);
        s.get("s_growth", il.s_growth);
        s.get("theta1", il.theta1);
        s.get("m0", il.m0);
        s.get("T0", il.T0);
        s.get("dt", il.dt);
        s.get("ny_factor", il.ny_factor);
        s.get("eigen_count", il.eigen_count);
    });
    r.section("convergence", [&](Reader& s) { s.get("eps_list", c.convergence.eps_list); });
    r.section("suite", [&](Reader& s) {
        s.get("commutator_samples", c.suite.commutator_samples);
        s.get("product_pairs", c.suite.product_pairs);
        s.get("recovery_samples", c.suite.recovery_samples);
    });
    r.get("out", c.out);
    r.get("quiet", c.quiet);
    r.finish();
    validate_config(c);
    return c;
}

RunConfig parse_config(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::Io, "config: cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_string(ss.str());
}

std::string emit_config(const RunConfig& cfg) { return to_json(cfg, true).dump(2) + "\n"; }

std::string config_hash(const RunConfig& cfg)
{
    const std::string text = to_json(cfg, false).dump() + "|" + kVersion;
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace nsm
