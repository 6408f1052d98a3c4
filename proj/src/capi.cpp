// SPDX-License-Identifier: Apache-2.0
#include "nsmlab/nsmlab.h"

#include "nsmlab/error.hpp"
#include "nsmlab/run.hpp"

#include <json.hpp>

#include <memory>
#include <new>
#include <string>

struct nsm_config {
    nsm::RunConfig cfg;
    std::string json_buf;
    std::string hash_buf;
};

struct nsm_result {
    nsm::ExecResult r;
};

struct nsm_sim {
    nsm::RunConfig cfg;
    nsm::ImexIntegrator it;
};

namespace {

thread_local std::string g_last_error;

nsm_status set_error(nsm_status s, const std::string& msg)
{
    g_last_error = msg;
    return s;
}

template <class F>
nsm_status guarded(F&& f)
{
    try {
        g_last_error.clear();
        return f();
    } catch (const nsm::Error& e) {
        return set_error(static_cast<nsm_status>(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return set_error(NSM_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return set_error(NSM_ERR_INTERNAL, e.what());
    } catch (...) {
        return set_error(NSM_ERR_INTERNAL, "unknown error");
    }
}

nsm_status null_arg(const char* what) { return set_error(NSM_ERR_INVALID_ARGUMENT, std::string(what) + " is NULL"); }

void merge_patch(nlohmann::json& base, const nlohmann::json& patch)
{
    for (auto it = patch.begin(); it != patch.end(); ++it) {
        if (it->is_object() && base.contains(it.key()) && base[it.key()].is_object())
            merge_patch(base[it.key()], *it);
        else
            base[it.key()] = *it;
    }
}

}  // namespace

extern "C" {

const char* nsm_version(void) { return nsm::kVersion; }

const char* nsm_status_name(nsm_status s)
{
    if (s == NSM_OK) return "ok";
    return nsm::error_code_name(static_cast<nsm::ErrorCode>(s));
}

const char* nsm_last_error(void) { return g_last_error.c_str(); }

nsm_status nsm_config_new(nsm_config** out)
{
    if (!out) return null_arg("out");
    return guarded([&] {
        *out = new nsm_config{};
        return NSM_OK;
    });
}

nsm_status nsm_config_from_file(const char* path, nsm_config** out)
{
    if (!path) return null_arg("path");
    if (!out) return null_arg("out");
    *out = nullptr;
    return guarded([&] {
        auto c = std::make_unique<nsm_config>();
        c->cfg = nsm::parse_config(path);
        *out = c.release();
        return NSM_OK;
    });
}

nsm_status nsm_config_from_string(const char* json, nsm_config** out)
{
    if (!json) return null_arg("json");
    if (!out) return null_arg("out");
    *out = nullptr;
    return guarded([&] {
        auto c = std::make_unique<nsm_config>();
        c->cfg = nsm::parse_config_string(json);
        *out = c.release();
        return NSM_OK;
    });
}

void nsm_config_free(nsm_config* cfg) { delete cfg; }

nsm_status nsm_config_set_mode(nsm_config* cfg, const char* mode)
{
    if (!cfg) return null_arg("cfg");
    if (!mode) return null_arg("mode");
    return guarded([&] {
        nsm::RunConfig c = cfg->cfg;
        c.mode = mode;
        nsm::validate_config(c);
        cfg->cfg = c;
        return NSM_OK;
    });
}

nsm_status nsm_config_set_seed(nsm_config* cfg, uint64_t seed)
{
    if (!cfg) return null_arg("cfg");
    cfg->cfg.data.seed = seed;
    return NSM_OK;
}

nsm_status nsm_config_set_out(nsm_config* cfg, const char* dir)
{
    if (!cfg) return null_arg("cfg");
    if (!dir) return null_arg("dir");
    return guarded([&] {
        cfg->cfg.out = dir;
        return NSM_OK;
    });
}

nsm_status nsm_config_set_quiet(nsm_config* cfg, int quiet)
{
    if (!cfg) return null_arg("cfg");
    cfg->cfg.quiet = quiet != 0;
    return NSM_OK;
}

nsm_status nsm_config_merge(nsm_config* cfg, const char* json)
{
    if (!cfg) return null_arg("cfg");
    if (!json) return null_arg("json");
    return guarded([&] {
        nlohmann::json patch;
        try {
            patch = nlohmann::json::parse(json);
        } catch (const nlohmann::json::parse_error& e) {
            nsm::fail(nsm::ErrorCode::Config, std::string("config: invalid JSON: ") + e.what());
        }
        if (!patch.is_object()) nsm::fail(nsm::ErrorCode::Config, "config: overrides must be an object");
        nlohmann::json base = nlohmann::json::parse(nsm::emit_config(cfg->cfg));
        merge_patch(base, patch);
        cfg->cfg = nsm::parse_config_string(base.dump());
        return NSM_OK;
    });
}

const char* nsm_config_json(nsm_config* cfg)
{
    if (!cfg) return "";
    cfg->json_buf = nsm::emit_config(cfg->cfg);
    return cfg->json_buf.c_str();
}

const char* nsm_config_hash(nsm_config* cfg)
{
    if (!cfg) return "";
    cfg->hash_buf = nsm::config_hash(cfg->cfg);
    return cfg->hash_buf.c_str();
}

nsm_status nsm_execute(const nsm_config* cfg, nsm_result** out)
{
    if (!cfg) return null_arg("cfg");
    if (!out) return null_arg("out");
    *out = nullptr;
    return guarded([&] {
        auto r = std::make_unique<nsm_result>();
        r->r = nsm::execute(cfg->cfg);
        const int code = r->r.code;
        if (code != 0) set_error(static_cast<nsm_status>(code), r->r.reason);
        *out = r.release();
        return static_cast<nsm_status>(code);
    });
}

void nsm_result_free(nsm_result* r) { delete r; }
int nsm_result_passed(const nsm_result* r) { return r && r->r.code == 0; }
const char* nsm_result_summary_json(const nsm_result* r) { return r ? r->r.summary_json.c_str() : ""; }
const char* nsm_result_status(const nsm_result* r) { return r ? r->r.status.c_str() : ""; }
const char* nsm_result_reason(const nsm_result* r) { return r ? r->r.reason.c_str() : ""; }
const char* nsm_result_out_dir(const nsm_result* r) { return r ? r->r.out_dir.c_str() : ""; }

nsm_status nsm_dispersion_root(int k, double* re_c, double* im_c)
{
    if (!re_c || !im_c) return null_arg("output");
    return guarded([&] {
        const nsm::DispersionRoot d = nsm::dispersion_root(k);
        *re_c = d.c.real();
        *im_c = d.c.imag();
        return NSM_OK;
    });
}

nsm_status nsm_gevrey_multiplier(double xi, double radius, double s, double* log_value)
{
    if (!log_value) return null_arg("log_value");
    return guarded([&] {
        if (!(radius >= 0.0)) nsm::fail(nsm::ErrorCode::InvalidArgument, "radius must be nonnegative");
        *log_value = nsm::log_gevrey_symbol(xi, radius, s);
        return NSM_OK;
    });
}

nsm_status nsm_oscillator_ground(int k, int ny, double* re_l, double* im_l, double* residual)
{
    if (!re_l || !im_l || !residual) return null_arg("output");
    return guarded([&] {
        const auto sp = nsm::oscillator_spectrum(k, ny, 1);
        *re_l = sp.front().lambda.real();
        *im_l = sp.front().lambda.imag();
        *residual = sp.front().residual;
        return NSM_OK;
    });
}

nsm_status nsm_sim_create(const nsm_config* cfg, nsm_sim** out)
{
    if (!cfg) return null_arg("cfg");
    if (!out) return null_arg("out");
    *out = nullptr;
    return guarded([&] {
        const nsm::RunConfig& c = cfg->cfg;
        nsm::SolverOptions opt;
        if (c.mode == "eps") opt.mode = nsm::SolverMode::Full;
        else if (c.mode == "hydrostatic") opt.mode = nsm::SolverMode::Hydrostatic;
        else if (c.mode == "linear") opt.mode = nsm::SolverMode::Linear;
        else nsm::fail(nsm::ErrorCode::InvalidArgument, "sim: mode must be eps, hydrostatic or linear");
        opt.dt = c.time.dt;
        opt.cfl = c.time.cfl;
        const nsm::Grid g = nsm::make_grid(c.grid.Nx, c.grid.Ny, c.grid.Lx);
        nsm::NSMState s0 = nsm::init_data_gevrey(nsm::data_from_config(c), g, nsm::params_from_config(c));
        *out = new nsm_sim{c, nsm::ImexIntegrator(std::move(s0), opt)};
        return NSM_OK;
    });
}

void nsm_sim_free(nsm_sim* sim) { delete sim; }

nsm_status nsm_sim_advance(nsm_sim* sim, long steps)
{
    if (!sim) return null_arg("sim");
    if (steps < 0) return set_error(NSM_ERR_INVALID_ARGUMENT, "steps must be nonnegative");
    return guarded([&] {
        for (long n = 0; n < steps; ++n) sim->it.step();
        return NSM_OK;
    });
}

double nsm_sim_time(const nsm_sim* sim) { return sim ? sim->it.state().t : 0.0; }

nsm_status nsm_sim_norm(const nsm_sim* sim, int which, double* out)
{
    if (!sim) return null_arg("sim");
    if (!out) return null_arg("out");
    return guarded([&] {
        const nsm::NSMState& s = sim->it.state();
        const nsm::GevreyWeight w = nsm::GevreyWeight::fixed(0.5 * sim->cfg.gevrey.delta0, sim->cfg.gevrey.s);
        const nsm::SpectralField* f = which == 0 ? &s.u : which == 1 ? &s.h : which == 2 ? &s.v : nullptr;
        if (!f) nsm::fail(nsm::ErrorCode::InvalidArgument, "sim_norm: which must be 0, 1 or 2");
        *out = nsm::gevrey_norm(*f, w);
        return NSM_OK;
    });
}

}  // extern "C"
