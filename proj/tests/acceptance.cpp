// SPDX-License-Identifier: Apache-2.0
// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// only when a criterion fails that is not in the documented expected-red list.
#include "nsmlab/diagnostics.hpp"
#include "nsmlab/error.hpp"
#include "nsmlab/illposed.hpp"
#include "nsmlab/recovery.hpp"
#include "nsmlab/run.hpp"
#include "nsmlab/solver.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace nsm;
namespace fs = std::filesystem;

namespace {

// Known to fail at the stated tolerance; see README.
const std::set<std::string> kExpectedRed = {"1a", "1d", "3c"};

int g_unexpected = 0;
int g_expected = 0;
int g_pass = 0;

void report(const std::string& id, bool ok, const std::string& what, double value, const std::string& target)
{
    const bool expected = kExpectedRed.count(id) > 0;
    const char* tag = ok ? "PASS" : (expected ? "FAIL (expected)" : "FAIL");
    std::printf("%-16s %-4s %s: value=%.6g target %s\n", tag, id.c_str(), what.c_str(), value, target.c_str());
    std::fflush(stdout);
    if (ok) ++g_pass;
    else if (expected) ++g_expected;
    else ++g_unexpected;
}

class Timer {
public:
    Timer() : t0_(std::chrono::steady_clock::now()) {}
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    }

private:
    std::chrono::steady_clock::time_point t0_;
};

double sq(double x) { return x * x; }

double lift(double& worst, double v)
{
    worst = std::max(worst, v);
    return worst;
}

void lift(double& worst, const InvariantReport& r)
{
    lift(worst, std::max({r.div_u, r.div_e, r.curl_ht}));
    if (r.wall_u != 0.0 || r.wall_h != 0.0) worst = INFINITY;
}

// ---- dt-halving problems --------------------------------------------------

double dlam(double dy) { return sq(2.0 / dy * std::sin(kPi * dy / 2.0)); }

NSMState sine_state(int Ny, int q, bool in_u, double eps)
{
    const Grid g = make_grid(8, Ny, 2 * kPi);
    NSMState s = make_zero_state(g, make_params(eps, 1, 1, true));
    SpectralField& f = in_u ? s.u : s.h;
    for (int j = 0; j < g.M(); ++j) f(g.slot(q), j) = std::sin(kPi * g.y(j));
    return s;
}

NSMState run_steps(const NSMState& s0, SolverMode mode, double dt, long n)
{
    SolverOptions o;
    o.mode = mode;
    o.dt = dt;
    ImexIntegrator it(s0, o);
    for (long i = 0; i < n; ++i) it.step();
    return it.state();
}

/// Linear damped wave h_tt + h_t + lambda h = 0 at k = 1.
double order_linear_wave()
{
    const double eps = 0.5, T = 1.0;
    const NSMState s0 = sine_state(31, 1, false, eps);
    const double lam = dlam(s0.grid.dy()) + eps * eps;
    const cplx d = std::sqrt(cplx(1.0 - 4.0 * lam, 0));
    const cplx mp = 0.5 * (-1.0 + d), mm = 0.5 * (-1.0 - d);
    const double ex = ((-mm * std::exp(mp * T) + mp * std::exp(mm * T)) / (mp - mm)).real();
    auto err = [&](double dt) {
        const NSMState s = run_steps(s0, SolverMode::Linear, dt, std::lround(T / dt));
        double e = 0.0;
        for (int j = 1; j < s0.grid.M() - 1; ++j)
            e = std::max(e, std::abs(s.h(s0.grid.slot(1), j) - ex * std::sin(kPi * s0.grid.y(j))));
        return e;
    };
    return err(0.02) / err(0.01);
}

/// Hydrostatic k = 0 heat with damping.
double order_hydrostatic_heat()
{
    const NSMState s0 = sine_state(31, 0, true, 0.5);
    const double T = 0.1, lam = dlam(s0.grid.dy()) + s0.params.alpha;
    auto err = [&](double dt) {
        const NSMState s = run_steps(s0, SolverMode::Hydrostatic, dt, std::lround(T / dt));
        double e = 0.0;
        for (int j = 1; j < s0.grid.M() - 1; ++j)
            e = std::max(e, std::abs(s.u(0, j) - std::exp(-lam * T) * std::sin(kPi * s0.grid.y(j))));
        return e;
    };
    return err(0.002) / err(0.001);
}

double field_diff(const NSMState& a, const NSMState& b)
{
    double d = 0.0;
    for (auto [x, y] : {std::pair{&a.u, &b.u}, {&a.h, &b.h}})
        for (std::size_t i = 0; i < x->size(); ++i) d = std::max(d, std::abs(x->data()[i] - y->data()[i]));
    return d;
}

/// Full nonlinear system, three dt levels.
double order_self_convergence(SolverMode mode, double& worst_inv)
{
    InitialDataSpec d;
    d.amplitude = 5e-2;
    d.seed = 11;
    const NSMState s0 = init_data_gevrey(d, make_grid(16, 32, 2 * kPi), make_params(0.5, 1, 1, true));
    std::vector<NSMState> out;
    for (double dt : {0.004, 0.002, 0.001}) {
        SolverOptions o;
        o.mode = mode;
        o.dt = dt;
        ImexIntegrator it(s0, o);
        for (long i = 0; i < std::lround(0.1 / dt); ++i) {
            it.step();
            lift(worst_inv, check_invariants(it.state()));
        }
        out.push_back(it.state());
    }
    return field_diff(out[0], out[1]) / field_diff(out[1], out[2]);
}

/// Per-mode wave integrator of the instability problem.
double order_mode_wave()
{
    const int Ny = 49;
    const double dy = 1.0 / (Ny + 1), T = 1.0;
    Profile V(Ny + 2), h0(Ny + 2), zero(Ny + 2);
    for (int j = 0; j < Ny + 2; ++j) h0[j] = std::sin(kPi * j * dy);
    const double lam = dlam(dy);
    const cplx d = std::sqrt(cplx(1 - 4 * lam, 0));
    const cplx mp = 0.5 * (-1.0 + d), mm = 0.5 * (-1.0 - d);
    const cplx ex = (-mm * std::exp(mp * T) + mp * std::exp(mm * T)) / (mp - mm);
    auto err = [&](double dt) {
        const ModeTrajectory tr = integrate_mode_wave(0.0, V, h0, zero, {}, T, dt, true);
        double e = 0.0;
        for (int j = 1; j <= Ny; ++j) e = std::max(e, std::abs(tr.h.back()[j] - ex * h0[j]));
        return e;
    };
    return err(0.01) / err(0.005);
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

bool reruns_identical()
{
    RunConfig c = parse_config_string(R"({"mode": "eps", "grid": {"Nx": 16, "Ny": 32},
        "params": {"eps": 0.2, "normalized": true}, "gevrey": {"s": 6},
        "data": {"seed": 42}, "time": {"T": 0.01, "dt": 0.001}})");
    c.quiet = true;
    const fs::path base = fs::temp_directory_path() / "nsmlab_acceptance_rerun";
    fs::remove_all(base);
    std::string csv[2];
    for (int i = 0; i < 2; ++i) {
        c.out = (base / std::to_string(i)).string();
        const ExecResult r = execute(c);
        if (r.code != 0) return false;
        csv[i] = slurp(fs::path(c.out) / "eps.csv");
    }
    fs::remove_all(base);
    return !csv[0].empty() && csv[0] == csv[1];
}

}  // namespace

int main()
{
    try {
        double worst_inv = 0.0;
        const Timer total;
        const IllposedParams ip;
        const std::vector<int> ks = {-256, -1024, -4096};

        // 1, 2: instability growth and remainder.
        {
            const Timer t;
            std::vector<double> K, re, h2;
            const char* ids[] = {"1a", "1b", "1c"};
            for (std::size_t i = 0; i < ks.size(); ++i) {
                const GrowthCheck gc = theorem_growth_check(make_mode_problem(ks[i], ip));
                char what[96];
                std::snprintf(what, sizeof what, "growth rate vs Re c at k=%d (rate %.4f, Re c %.4f)", ks[i],
                              gc.fit.rate, gc.root.c.real());
                report(ids[i], gc.rel_rate_error <= 0.03, what, gc.rel_rate_error, "<= 0.03");
                K.push_back(std::abs(ks[i]));
                re.push_back(gc.root.c.real());
                h2.push_back(gc.h2_scaled);
            }
            const RateFit f = fit_loglog(K, re);
            report("1d", std::abs(f.slope - 0.5) <= 0.02, "log-log slope of Re c vs |k|", f.slope, "0.5 +- 0.02");
            const double s1 = t.seconds();
            report("1e", s1 <= 60.0, "runtime of criteria 1-2 [s]", s1, "<= 60");
            const double lo = *std::min_element(h2.begin(), h2.end());
            const double hi = *std::max_element(h2.begin(), h2.end());
            const bool fin = std::isfinite(hi) && lo > 0.0;
            report("2a", fin && hi / lo <= 3.0, "remainder e^{(delta/2)sqrt|k|} sup||h2|| variation across k",
                   fin ? hi / lo : INFINITY, "<= 3");
            report("2b", s1 <= 30.0, "runtime of remainder runs [s]", s1, "<= 30");
        }

        // 3: oscillator.
        {
            const Timer t;
            const int ny = required_ny(-4096);
            const OscillatorIdentity id = oscillator_identity(-4096, ny);
            report("3a", id.rel_harmonic <= 0.05, "ground eigenvalue vs e^{i pi/4} sqrt|k| at |k|=4096",
                   id.rel_harmonic, "<= 0.05");
            report("3b", id.ground.residual <= 1e-8, "eigen-residual", id.ground.residual, "<= 1e-8");
            report("3c", id.rel_corrected <= 1e-6, "identity lambda0 = -(c^2+c) + i|k|/4", id.rel_corrected,
                   "<= 1e-6");
            std::printf("     note: printed sign form c^2+c-ik/4 has relative error %.4g\n", id.rel_printed);
            report("3d", t.seconds() <= 20.0, "runtime of criterion 3 [s]", t.seconds(), "<= 20");
        }

        // 4: eps^4 convergence.
        {
            const Timer t;
            ConvergenceConfig c;
            c.grid = make_grid(32, 128, 2 * kPi);
            c.data.kmax = 2;
            c.data.amplitude = 1e-3;
            const ConvergenceResult r = convergence_study(c);
            lift(worst_inv, std::max({r.worst_div, r.worst_curl, r.worst_div_e}));
            std::printf("     E(eps):");
            for (std::size_t i = 0; i < r.E.size(); ++i) std::printf(" %.4g@%.4g", r.E[i], r.eps[i]);
            std::printf("\n");
            report("4a", std::abs(r.fit.slope - 4.0) <= 0.5 && r.monotone, "slope of E vs eps", r.fit.slope,
                   "4 +- 0.5, monotone");
            report("4b", t.seconds() <= 600.0, "runtime of criterion 4 [s]", t.seconds(), "<= 600");
        }

        // 5: decay.
        {
            const Timer t;
            DecayConfig c;
            c.grid = make_grid(16, 32, 2 * kPi);
            c.T = 40.0;
            const DecayResult r = decay_study(c);
            lift(worst_inv, r.worst);
            report("5a", !r.degenerate && r.exponent >= r.target, "fitted decay exponent of ||u||^2+||d_y h||^2",
                   r.exponent, ">= theta/2 = " + std::to_string(r.target));
            report("5b", !r.blowup && r.positivity, "no blow-up flag on [0, 40]", r.blowup ? 1.0 : 0.0, "== 0");
            report("5c", t.seconds() <= 300.0, "runtime of criterion 5 [s]", t.seconds(), "<= 300");
        }

        // 6: linear energy laws.
        {
            InitialDataSpec d;
            d.amplitude = 1e-3;
            const NSMState s0 = init_data_gevrey(d, make_grid(32, 64, 2 * kPi), make_params(0.5, 1, 1, true));
            RunSpec spec;
            spec.solver.dt = 1e-3;
            spec.T = 1.0;
            spec.stride = 100;
            spec.weight.delta0 = 1.0;
            spec.weight.s = 10.0;
            spec.weight.schedule.kind = ScheduleKind::ConstantRate;
            spec.weight.schedule.C = 0.01;
            spec.energies = false;
            const RunResult r = run_linear(s0, spec);
            lift(worst_inv, r.worst);
            report("6a", r.steps == 1000 && r.max_heat_increase <= 1e-8, "heat energy increase per step (relative)",
                   r.max_heat_increase, "<= 1e-8");
            report("6b", r.max_wave_increase <= 1e-8, "wave energy increase per step (relative)",
                   r.max_wave_increase, "<= 1e-8");
        }

        // 7: appendix property suites.
        {
            const PropertySuiteReport r = run_property_suite(PropertySuiteConfig{});
            report("7a", r.commutator_ok, "commutator ratios finite, doubling-stable (max stability defect)",
                   *std::max_element(r.commutator_stability.begin(), r.commutator_stability.end()), "<= 0.1");
            report("7b", r.product_ok, "product-law constants finite over 1000 pairs (K)",
                   std::max(r.product_K[0], r.product_K[1]), "finite, stable");
            report("7c", r.recovery_ok, "recovery manufactured order", r.recovery_order, "2.0 +- 0.3, stable ratios");
            report("7d", r.seconds <= 120.0, "runtime of criterion 7 [s]", r.seconds, "<= 120");
        }

        // 8: hygiene.
        {
            const double rw = order_linear_wave();
            report("8b", rw >= 3.5 && rw <= 4.5, "dt-halving: linear damped wave", rw, "[3.5, 4.5]");
            const double rh = order_hydrostatic_heat();
            report("8c", rh >= 3.5 && rh <= 4.5, "dt-halving: hydrostatic damped heat", rh, "[3.5, 4.5]");
            const double rf = order_self_convergence(SolverMode::Full, worst_inv);
            report("8d", rf >= 3.5 && rf <= 4.5, "dt-halving: full eps system (self-convergence)", rf, "[3.5, 4.5]");
            const double rp = order_self_convergence(SolverMode::Hydrostatic, worst_inv);
            report("8e", rp >= 3.5 && rp <= 4.5, "dt-halving: hydrostatic system (self-convergence)", rp,
                   "[3.5, 4.5]");
            const double rm = order_mode_wave();
            report("8f", rm >= 3.5 && rm <= 4.5, "dt-halving: instability mode integrator", rm, "[3.5, 4.5]");
            report("8g", reruns_identical(), "identical-seed reruns byte-identical", 1.0, "identical CSV");
            report("8a", worst_inv <= 1e-9, "worst relative invariant over all runs", worst_inv, "<= 1e-9");
        }

        // 9: time-derivative norm identity.
        {
            const Grid g = make_grid(16, 32, 2 * kPi);
            SpectralField phi0(g);
            for (int q = 0; q <= 4; ++q)
                for (int j = 0; j < g.M(); ++j) {
                    const double y = g.y(j);
                    phi0(g.slot(q), j) = cplx(std::sin(kPi * y), q ? 0.5 * std::sin(2 * kPi * y) : 0.0) / (1.0 + q);
                    if (q) phi0(g.slot(-q), j) = std::conj(phi0(g.slot(q), j));
                }
            auto hist = [&](double t, double dt) {
                std::vector<SpectralField> h;
                for (int i = -1; i <= 1; ++i) h.push_back(std::exp(-0.7 * (t + i * dt)) * phi0);
                return h;
            };
            GevreyWeight w;
            w.delta0 = 1.0;
            w.s = 3.0;
            w.schedule.kind = ScheduleKind::GwpDecaying;
            const double t = 0.01;
            const double a = check_dtnorm_identity(hist(t, 1e-3), w, t, 1e-3).residual;
            const double b = check_dtnorm_identity(hist(t, 5e-4), w, t, 5e-4).residual;
            report("9a", a / b >= 3.5 && a / b <= 4.5, "identity residual ratio under dt halving", a / b,
                   "[3.5, 4.5]");
        }

        std::printf("summary: %d pass, %d expected fail, %d unexpected fail, %.1f s\n", g_pass, g_expected,
                    g_unexpected, total.seconds());
        return g_unexpected == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "acceptance aborted: %s\n", e.what());
        return 2;
    }
}
