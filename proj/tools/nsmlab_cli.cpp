// SPDX-License-Identifier: Apache-2.0
// Command-line front end over the C API.
#include "nsmlab/nsmlab.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <string>
#include <vector>

namespace {

int report(nsm_status s)
{
    std::fprintf(stderr, "nsmlab: %s: %s\n", nsm_status_name(s), nsm_last_error());
    return static_cast<int>(s);
}

/// "a.b.c=VALUE" -> {"a":{"b":{"c":VALUE}}}; VALUE is JSON, bare words are strings.
bool add_override(nlohmann::json& patch, const std::string& expr)
{
    const auto eq = expr.find('=');
    if (eq == std::string::npos || eq == 0) return false;
    const std::string path = expr.substr(0, eq), text = expr.substr(eq + 1);
    nlohmann::json value;
    try {
        value = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error&) {
        value = text;
    }
    nlohmann::json* node = &patch;
    std::size_t start = 0;
    for (;;) {
        const auto dot = path.find('.', start);
        const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (key.empty()) return false;
        if (dot == std::string::npos) {
            (*node)[key] = value;
            return true;
        }
        node = &(*node)[key];
        start = dot + 1;
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"nsmlab: anisotropic Navier-Stokes-Maxwell laboratory"};
    app.set_version_flag("--version", std::string(nsm_version()));
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::uint64_t seed = 0;
    bool quiet = false, print_config = false;
    std::vector<std::string> sets;
    app.add_option("--config", config_path, "JSON run configuration");
    app.add_option("--out", out_dir, "output directory (default $NSMLAB_OUT or ./nsmlab_out)");
    auto* seed_opt = app.add_option("--seed", seed, "data seed");
    app.add_flag("--quiet", quiet, "print nothing on success");
    app.add_option("--set", sets, "override a field, e.g. --set grid.Ny=128")->take_all();
    app.add_flag("--print-config", print_config, "print the resolved config and exit");

    const char* modes[] = {"eps",        "hydrostatic", "linear", "illposedness-sweep",
                           "oscillator", "convergence", "decay",  "property-suite"};
    for (const char* m : modes) app.add_subcommand(m, std::string("run mode ") + m)->fallthrough();

    CLI11_PARSE(app, argc, argv);
    const std::string mode = app.get_subcommands().front()->get_name();

    nsm_config* cfg = nullptr;
    nsm_status s = config_path.empty() ? nsm_config_new(&cfg) : nsm_config_from_file(config_path.c_str(), &cfg);
    if (s != NSM_OK) return report(s);
    struct Guard {
        nsm_config* c;
        ~Guard() { nsm_config_free(c); }
    } guard{cfg};

    nlohmann::json patch = nlohmann::json::object();
    for (const auto& e : sets) {
        if (!add_override(patch, e)) {
            std::fprintf(stderr, "nsmlab: bad --set expression '%s'\n", e.c_str());
            return static_cast<int>(NSM_ERR_CONFIG);
        }
    }
    if (!patch.empty() && (s = nsm_config_merge(cfg, patch.dump().c_str())) != NSM_OK) return report(s);
    if ((s = nsm_config_set_mode(cfg, mode.c_str())) != NSM_OK) return report(s);
    if (*seed_opt && (s = nsm_config_set_seed(cfg, seed)) != NSM_OK) return report(s);
    if (!out_dir.empty() && (s = nsm_config_set_out(cfg, out_dir.c_str())) != NSM_OK) return report(s);
    nsm_config_set_quiet(cfg, quiet ? 1 : 0);

    if (print_config) {
        std::fputs(nsm_config_json(cfg), stdout);
        return 0;
    }

    nsm_result* res = nullptr;
    s = nsm_execute(cfg, &res);
    if (!res) return report(s);
    if (!quiet) std::fputs(nsm_result_summary_json(res), stdout);
    if (s != NSM_OK)
        std::fprintf(stderr, "nsmlab: %s: %s (artifacts in %s)\n", nsm_result_status(res), nsm_result_reason(res),
                     nsm_result_out_dir(res));
    nsm_result_free(res);
    return static_cast<int>(s);
}
