// SPDX-License-Identifier: Apache-2.0
#include "nsmlab/error.hpp"
#include "nsmlab/run.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <sstream>

namespace nsm {

using json = nlohmann::json;

PhysicalParams params_from_config(const RunConfig& c)
{
    PhysicalParams p = make_params(c.params.eps, c.params.mu, c.params.mu0, c.params.normalized, c.params.c_light);
    p.printed_plus_2uh = c.params.printed_plus_2uh;
    return p;
}

GevreyWeight weight_from_config(const RunConfig& c)
{
    GevreyWeight w;
    w.delta0 = c.gevrey.delta0;
    w.s = c.gevrey.s;
    LambdaSchedule& sch = w.schedule;
    sch.kind = c.gevrey.schedule == "none"            ? ScheduleKind::None
               : c.gevrey.schedule == "gwp_decaying" ? ScheduleKind::GwpDecaying
                                                     : ScheduleKind::ConstantRate;
    sch.C = c.gevrey.C;
    sch.C_in = c.gevrey.C_in;
    sch.theta = c.gevrey.theta;
    sch.delta0 = c.gevrey.delta0;
    return w;
}

InitialDataSpec data_from_config(const RunConfig& c)
{
    InitialDataSpec d;
    d.amplitude = c.data.amplitude;
    d.delta0 = c.gevrey.delta0;
    d.s = c.gevrey.s;
    d.seed = c.data.seed;
    d.family = c.data.family == "bump" ? ProfileFamily::Bump : ProfileFamily::SineSeries;
    d.kappa = c.data.kappa;
    d.kmax = c.data.kmax;
    return d;
}

IllposedParams illposed_from_config(const RunConfig& c)
{
    IllposedParams p;
    const IllposednessConfig& il = c.illposedness;
    p.m0 = il.m0;
    p.theta1 = il.theta1;
    p.delta = il.theta1 / 4.0;
    p.C0 = il.C0;
    p.s_growth = il.s_growth;
    p.T0 = il.T0;
    p.dt = il.dt;
    p.ny_factor = il.ny_factor;
    p.kappa = c.data.kappa;
    return p;
}

namespace {

struct ModeOutput {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    json summary;
    bool pass = true;
    int fail_code = static_cast<int>(ErrorCode::StudyFailed);
    std::string reason;
};

std::string num(double x) { return fmt_num(x); }
std::string num(long x) { return std::to_string(x); }
std::string num(int x) { return std::to_string(x); }

json invariants_json(const InvariantReport& r)
{
    return {{"div_u", r.div_u},     {"div_e", r.div_e},   {"curl_ht", r.curl_ht}, {"flux_u", r.flux_u},
            {"top_v", r.top_v},     {"wall_u", r.wall_u}, {"wall_h", r.wall_h},   {"symmetry", r.symmetry}};
}

json fit_json(const RateFit& f) { return {{"slope", f.slope}, {"intercept", f.intercept}, {"r2", f.r2}}; }

void fail_with(ModeOutput& o, const std::string& why, ErrorCode code = ErrorCode::StudyFailed)
{
    if (o.pass) {
        o.fail_code = static_cast<int>(code);
        o.reason = why;
    } else {
        o.reason += "; " + why;
    }
    o.pass = false;
}

ModeOutput run_time_series(const RunConfig& c)
{
    ModeOutput o;
    const Grid g = make_grid(c.grid.Nx, c.grid.Ny, c.grid.Lx);
    const NSMState s0 = init_data_gevrey(data_from_config(c), g, params_from_config(c));
    RunSpec spec;
    spec.solver.mode = c.mode == "hydrostatic" ? SolverMode::Hydrostatic
                       : c.mode == "linear"    ? SolverMode::Linear
                                               : SolverMode::Full;
    spec.solver.dt = c.time.dt;
    spec.solver.cfl = c.time.cfl;
    spec.T = c.time.T;
    spec.stride = c.time.stride;
    spec.weight = weight_from_config(c);
    spec.variant = c.gevrey.schedule == "gwp_decaying" ? EnergyVariant::Gwp : EnergyVariant::Lwp;
    spec.theta = c.gevrey.theta;
    const RunResult r = run_simulation(s0, spec);

    o.header = {"hash", "t",   "norm_u", "norm_h", "decay_quantity", "heat", "wave",   "lambda",
                "E_u",  "D_u", "E_h",    "D_h",    "div_u",          "div_e", "curl_ht", "top_v"};
    for (const auto& rec : r.records) {
        const EnergyReport& e = rec.energy;
        o.rows.push_back({"", num(rec.t), num(rec.norm_u), num(rec.norm_h), num(rec.decay_quantity), num(rec.heat),
                          num(rec.wave), num(e.lambda), num(e.E_u), num(e.D_u), num(e.E_h), num(e.D_h),
                          num(rec.inv.div_u), num(rec.inv.div_e), num(rec.inv.curl_ht), num(rec.inv.top_v)});
    }
    o.summary = {{"steps", r.steps},
                 {"t_final", r.final_state.t},
                 {"run_status", r.status},
                 {"blowup", r.blowup},
                 {"horizon_exceeded", r.horizon_exceeded},
                 {"positivity", r.positivity},
                 {"worst_invariants", invariants_json(r.worst)},
                 {"max_heat_increase", r.max_heat_increase},
                 {"max_wave_increase", r.max_wave_increase}};
    if (r.blowup) fail_with(o, "Gevrey blow-up at t=" + num(r.final_state.t), ErrorCode::Blowup);
    if (!r.worst.ok(1e-9)) fail_with(o, "invariant defect above 1e-9");
    if (spec.solver.mode == SolverMode::Linear && (r.max_heat_increase > 1e-8 || r.max_wave_increase > 1e-8))
        fail_with(o, "linear energy increased by more than 1e-8 in a step");
    return o;
}

ModeOutput run_sweep(const RunConfig& c)
{
    ModeOutput o;
    const IllposedParams par = illposed_from_config(c);
    o.header = {"hash",     "k",           "Ny",       "Tk",           "re_c",      "im_c",
                "rate_h1",  "rate_l2",     "rel_error", "h2_sup",      "h2_scaled", "superposition",
                "h1_match", "lower_bound", "forcing_K"};
    json per = json::array();
    std::vector<double> K, rc;
    for (int k : c.illposedness.k_list) {
        const ModeProblem p = make_mode_problem(k, par);
        const GrowthCheck gc = theorem_growth_check(p);
        o.rows.push_back({"", num(k), num(gc.Ny), num(gc.Tk), num(gc.root.c.real()), num(gc.root.c.imag()),
                          num(gc.fit.rate), num(gc.fit_l2.rate), num(gc.rel_rate_error), num(gc.h2_sup),
                          num(gc.h2_scaled), num(gc.superposition), num(gc.h1_match),
                          gc.lower_bound_pass ? "1" : "0", num(gc.forcing_K)});
        per.push_back({{"k", k}, {"rel_error", gc.rel_rate_error}, {"rate", gc.fit.rate},
                       {"re_c", gc.root.c.real()}, {"h2_scaled", gc.h2_scaled},
                       {"lower_bound", gc.lower_bound_pass}});
        K.push_back(std::abs(double(k)));
        rc.push_back(gc.root.c.real());
        if (!(gc.rel_rate_error <= 0.03)) fail_with(o, "k=" + num(k) + ": growth rate off by " + num(gc.rel_rate_error));
        if (!gc.lower_bound_pass) fail_with(o, "k=" + num(k) + ": lower growth bound violated");
    }
    o.summary["per_k"] = per;
    o.summary["threshold_M"] = illposedness_threshold(4096);
    if (K.size() >= 2) o.summary["re_c_loglog"] = fit_json(fit_loglog(K, rc));
    return o;
}

ModeOutput run_oscillator(const RunConfig& c)
{
    ModeOutput o;
    o.header = {"hash", "k", "Ny", "n", "re_lambda", "im_lambda", "residual", "converged", "rel_harmonic",
                "rel_corrected", "rel_printed"};
    json per = json::array();
    for (int k : c.illposedness.k_list) {
        const int ny = std::max(c.grid.Ny, static_cast<int>(std::ceil(c.illposedness.ny_factor * required_ny(k))));
        const OscillatorIdentity id = oscillator_identity(k, ny);
        const auto spec = oscillator_spectrum(std::abs(k), ny, c.illposedness.eigen_count);
        for (std::size_t n = 0; n < spec.size(); ++n) {
            const bool g = n == 0;
            o.rows.push_back({"", num(k), num(ny), num(static_cast<long>(n)), num(spec[n].lambda.real()),
                              num(spec[n].lambda.imag()), num(spec[n].residual), spec[n].converged ? "1" : "0",
                              g ? num(id.rel_harmonic) : "", g ? num(id.rel_corrected) : "",
                              g ? num(id.rel_printed) : ""});
            if (!spec[n].converged) fail_with(o, "k=" + num(k) + ": eigenvalue " + num(long(n)) + " not converged");
        }
        per.push_back({{"k", k},
                       {"Ny", ny},
                       {"rel_harmonic", id.rel_harmonic},
                       {"rel_corrected", id.rel_corrected},
                       {"rel_printed", id.rel_printed},
                       {"residual", id.ground.residual}});
    }
    o.summary["per_k"] = per;
    return o;
}

ModeOutput run_convergence(const RunConfig& c)
{
    ModeOutput o;
    ConvergenceConfig cc;
    cc.grid = make_grid(c.grid.Nx, c.grid.Ny, c.grid.Lx);
    cc.eps_list = c.convergence.eps_list;
    cc.data = data_from_config(c);
    cc.mu = c.params.mu;
    cc.mu0 = c.params.mu0;
    cc.normalized = c.params.normalized;
    cc.s = c.gevrey.s;
    cc.delta0 = c.gevrey.delta0;
    cc.T = c.time.T;
    cc.dt = c.time.dt;
    cc.stride = c.time.stride;
    const ConvergenceResult r = convergence_study(cc);
    o.header = {"hash", "eps", "E"};
    for (std::size_t i = 0; i < r.eps.size(); ++i) o.rows.push_back({"", num(r.eps[i]), num(r.E[i])});
    o.summary = {{"fit", fit_json(r.fit)},
                 {"monotone", r.monotone},
                 {"worst_div_u", r.worst_div},
                 {"worst_curl_ht", r.worst_curl},
                 {"worst_div_e", r.worst_div_e}};
    if (!(std::abs(r.fit.slope - 4.0) <= 0.5)) fail_with(o, "slope " + num(r.fit.slope) + " outside 4 +/- 0.5");
    if (!r.monotone) fail_with(o, "E(eps) not monotone");
    if (!(std::max({r.worst_div, r.worst_curl, r.worst_div_e}) <= 1e-9)) fail_with(o, "invariant defect above 1e-9");
    return o;
}

ModeOutput run_decay(const RunConfig& c)
{
    ModeOutput o;
    DecayConfig dc;
    dc.grid = make_grid(c.grid.Nx, c.grid.Ny, c.grid.Lx);
    dc.data = data_from_config(c);
    dc.eps = c.params.eps;
    dc.s = c.gevrey.s;
    dc.delta0 = c.gevrey.delta0;
    dc.T = c.time.T;
    dc.dt = c.time.dt;
    dc.stride = c.time.stride;
    dc.theta = c.gevrey.theta;
    const DecayResult r = decay_study(dc);
    o.header = {"hash", "t", "q"};
    for (std::size_t i = 0; i < r.t.size(); ++i) o.rows.push_back({"", num(r.t[i]), num(r.q[i])});
    o.summary = {{"exponent", r.exponent},         {"target", r.target},
                 {"t_transient", r.t_transient},   {"fit", fit_json(r.fit)},
                 {"blowup", r.blowup},             {"positivity", r.positivity},
                 {"degenerate", r.degenerate},     {"worst_invariants", invariants_json(r.worst)}};
    if (r.blowup) fail_with(o, "blow-up during decay run", ErrorCode::Blowup);
    else if (r.degenerate) o.summary["note"] = "degenerate series, trivially decayed";
    else if (!(r.exponent >= r.target)) fail_with(o, "decay exponent " + num(r.exponent) + " below theta/2");
    if (!r.positivity) fail_with(o, "E_h positivity violated");
    return o;
}

ModeOutput run_suite(const RunConfig& c)
{
    ModeOutput o;
    PropertySuiteConfig pc;
    pc.commutator_samples = c.suite.commutator_samples;
    pc.product_pairs = c.suite.product_pairs;
    pc.recovery_samples = c.suite.recovery_samples;
    pc.seed = c.data.seed;
    const PropertySuiteReport r = run_property_suite(pc);
    o.header = {"hash", "quantity", "value"};
    auto add = [&](const std::string& q, double v) { o.rows.push_back({"", q, num(v)}); };
    static const char* reg[3] = {"near", "low_high", "comparable"};
    for (int i = 0; i < 3; ++i) {
        add(std::string("commutator_K_") + reg[i], r.commutator.max_ratio[i]);
        add(std::string("commutator_K_doubled_") + reg[i], r.commutator_doubled.max_ratio[i]);
        add(std::string("commutator_stability_") + reg[i], r.commutator_stability[i]);
    }
    add("submultiplicative_K", r.submultiplicative_max);
    add("product_K_2inf", r.product_K[0]);
    add("product_K_inf2", r.product_K[1]);
    add("recovery_K_low_coarse", r.recovery_coarse.K_low);
    add("recovery_K_low_fine", r.recovery_fine.K_low);
    add("recovery_K_grad_coarse", r.recovery_coarse.K_grad);
    add("recovery_K_grad_fine", r.recovery_fine.K_grad);
    add("recovery_round_trip", r.recovery_coarse.round_trip);
    add("recovery_order", r.recovery_order);
    o.summary = {{"commutator_ok", r.commutator_ok},
                 {"product_ok", r.product_ok},
                 {"recovery_ok", r.recovery_ok},
                 {"seconds", r.seconds},
                 {"commutator_K", r.commutator.max_ratio},
                 {"submultiplicative_K", r.submultiplicative_max},
                 {"product_K", r.product_K},
                 {"recovery_K_low", r.recovery_fine.K_low},
                 {"recovery_K_grad", r.recovery_fine.K_grad},
                 {"recovery_order", r.recovery_order}};
    if (!r.ok) fail_with(o, "property suite failed");
    return o;
}

json manifest(const RunConfig& c, const std::string& hash, double wall, const std::string& status)
{
    json m;
    m["version"] = kVersion;
    m["hash"] = hash;
    m["config"] = json::parse(emit_config(c));
    m["grid"] = {{"Nx", c.grid.Nx}, {"Ny", c.grid.Ny}, {"Lx", c.grid.Lx}, {"dy", 1.0 / (c.grid.Ny + 1)}};
    m["wall_time_s"] = wall;
    m["status"] = status;
    json dev = json::array();
    if (c.gevrey.s < 10.0) dev.push_back("gevrey.s=" + fmt_num(c.gevrey.s) + " below the default 10");
    m["deviations"] = dev;
    return m;
}

}  // namespace

ExecResult execute(const RunConfig& cfg)
{
    validate_config(cfg);
    const auto t0 = std::chrono::steady_clock::now();
    ExecResult res;
    res.out_dir = resolve_out_dir(cfg);
    res.hash = config_hash(cfg);
    std::error_code ec;
    std::filesystem::create_directories(res.out_dir, ec);
    if (ec || !std::filesystem::is_directory(res.out_dir))
        fail(ErrorCode::Io, "cannot create output directory " + res.out_dir);
    const std::string mpath = res.out_dir + "/manifest.json";
    write_file(mpath, manifest(cfg, res.hash, 0.0, "running").dump(2) + "\n");

    ModeOutput o;
    try {
        if (cfg.mode == "eps" || cfg.mode == "hydrostatic" || cfg.mode == "linear") o = run_time_series(cfg);
        else if (cfg.mode == "illposedness-sweep") o = run_sweep(cfg);
        else if (cfg.mode == "oscillator") o = run_oscillator(cfg);
        else if (cfg.mode == "convergence") o = run_convergence(cfg);
        else if (cfg.mode == "decay") o = run_decay(cfg);
        else o = run_suite(cfg);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::Io || e.code() == ErrorCode::Config) throw;
        o = ModeOutput{};
        o.header = {"hash"};
        fail_with(o, e.what(), e.code());
    }

    CsvTable csv(o.header);
    for (auto& r : o.rows) {
        r[0] = res.hash;
        csv.row(r);
    }
    res.csv_path = res.out_dir + "/" + cfg.mode + ".csv";
    write_file(res.csv_path, csv.str());

    res.status = o.pass ? "pass" : (o.fail_code == static_cast<int>(ErrorCode::Blowup) ? "blowup" : "fail");
    res.code = o.pass ? 0 : o.fail_code;
    res.reason = o.reason;
    json s = o.summary.is_null() ? json::object() : o.summary;
    s["mode"] = cfg.mode;
    s["hash"] = res.hash;
    s["status"] = res.status;
    s["reason"] = res.reason;
    s["csv_rows"] = csv.rows();
    res.summary_json = s.dump(2) + "\n";
    write_file(res.out_dir + "/summary.json", res.summary_json);

    res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_file(mpath, manifest(cfg, res.hash, res.wall_seconds, res.status).dump(2) + "\n");
    return res;
}

}  // namespace nsm
