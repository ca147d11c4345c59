// ctmdp command-line front door: loads models, runs checks / solves /
// simulations / benchmarks and emits machine-readable reports.
//
// Exit codes: 0 success, 1 axiom or constraint violation (failed validation,
// empty constrained set, violated benchmark assumption), 2 structural/IO
// error. Reports are deterministic for a fixed config and seed; wall-clock
// timing goes to stderr only.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ctmdp/benchmarks.hpp"
#include "ctmdp/lp.hpp"
#include "ctmdp/lyapunov.hpp"
#include "ctmdp/model.hpp"
#include "ctmdp/occupation.hpp"
#include "ctmdp/report.hpp"
#include "ctmdp/simulate.hpp"
#include "ctmdp/structure.hpp"

namespace {

using namespace ctmdp;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitStructural = 2;

struct RunConfig {
    std::string command;
    std::string model_path;
    int example_id = 0; // 0 = unset
    std::uint64_t seed = 0;
    std::uint64_t n_trajectories = 10000;
    double eps = 1e-3;
    bool has_eps = false;
    double horizon = 0.0;
    bool has_horizon = false;
    std::string out_path;
    std::string format = "json";
    std::string policy_path;
    std::vector<double> constraints; // d_n overrides
    bool mc = false;
    double rho = 0.0;
    bool has_rho = false;
    double grid_radius = 50.0;
    int grid_points = 201;
    int action_grid = 21;
    double x0 = 0.0;
    std::vector<double> times{0.5, 1.0, 2.0};
    ExampleParams params;
};

FiniteCtmdp load_model(const RunConfig& cfg) {
    if (cfg.model_path.empty())
        throw std::invalid_argument(cfg.command + ": --model PATH is required");
    FiniteCtmdp model = load_finite_ctmdp(cfg.model_path);
    if (!cfg.constraints.empty()) {
        if (cfg.constraints.size() != model.bounds.size())
            throw std::invalid_argument("--constraints must supply one bound per cost");
        model.bounds = cfg.constraints;
    }
    return model;
}

Report envelope(const RunConfig& cfg) {
    Report r;
    r["command"] = cfg.command;
    Report in;
    if (!cfg.model_path.empty()) in["model"] = cfg.model_path;
    if (cfg.example_id) in["example"] = cfg.example_id;
    if (!cfg.policy_path.empty()) in["policy"] = cfg.policy_path;
    if (!cfg.constraints.empty()) in["constraints"] = cfg.constraints;
    in["seed"] = cfg.seed;
    r["inputs"] = in;
    return r;
}

void emit(const RunConfig& cfg, const Report& report, const CsvTable* csv = nullptr) {
    if (cfg.format == "csv") {
        if (!csv) throw std::invalid_argument(cfg.command + " has no CSV form; use --format json");
        write_text(cfg.out_path, to_csv(*csv));
    } else {
        write_text(cfg.out_path, render_report(report));
    }
}

// ---------------------------------------------------------------------------
// command handlers

int cmd_validate(const RunConfig& cfg) {
    const FiniteCtmdp model = load_model(cfg);
    const ValidationReport vr = validate_finite(model);

    Report r = envelope(cfg);
    r["results"]["passed"] = vr.passed;
    auto violations = Report::array();
    for (const auto& v : vr.violations)
        violations.push_back({{"check", v.check}, {"location", v.location}, {"magnitude", v.magnitude}});
    r["results"]["violations"] = violations;
    r["results"]["tolerances"] = {{"conservativity", kConservativityTol},
                                  {"distribution", kDistributionTol}};
    std::vector<double> exit_rates(model.num_states);
    for (int x = 0; x < model.num_states; ++x) exit_rates[x] = q_star(model, x);
    r["results"]["q_star"] = {{"value", exit_rates}, {"units", "1/time"}};
    emit(cfg, r);
    return vr.passed ? kExitOk : kExitViolation;
}

Report drift_to_json(const DriftReport& d) {
    Report r;
    r["feasible"] = d.feasible;
    r["rho"] = {{"value", d.rho_used}, {"units", "1/time"}};
    r["b_min"] = {{"value", d.b_min}, {"units", "w/time"}};
    r["worst_point"] = {{"x", d.worst_x}, {"a", d.worst_a}};
    if (!d.note.empty()) r["note"] = d.note;
    return r;
}

int cmd_drift_check(const RunConfig& cfg) {
    Report r = envelope(cfg);
    DriftReport drift;
    if (cfg.example_id) {
        const Benchmark bench = build_example(cfg.example_id, cfg.params);
        LyapunovPair pair = bench.lyapunov;
        if (cfg.has_rho) pair.rho = cfg.rho;
        BasisPoly w;
        if (cfg.example_id == 3) {
            w.c_one = 1.0;
            w.c_sq = 1.0;
        } else {
            w.c_one = 1.0;
            w.c_quartic = 1.0;
        }
        std::vector<std::pair<double, double>> grid;
        for (int i = 0; i < cfg.grid_points; ++i) {
            const double x = -cfg.grid_radius + 2.0 * cfg.grid_radius * i / (cfg.grid_points - 1);
            const double lo = bench.model.action_lo(x);
            const double hi = bench.model.action_hi(x);
            for (int j = 0; j < cfg.action_grid; ++j)
                grid.emplace_back(x, lo + (hi - lo) * j / (cfg.action_grid - 1));
        }
        drift = check_drift(pair, grid,
                            [&](double x, double a) { return gaussian_generator_moment(bench.model, x, a, w); });
        r["results"]["grid"] = {{"radius", cfg.grid_radius},
                                {"x_points", cfg.grid_points},
                                {"actions_per_x", cfg.action_grid}};
    } else {
        const FiniteCtmdp model = load_model(cfg);
        std::vector<double> w = model.lyapunov_w;
        if (w.empty()) w.assign(model.num_states, 1.0);
        const double rho = cfg.has_rho ? cfg.rho : model.lyapunov_rho;
        drift = check_drift(model, w, rho);
        r["results"]["w"] = w;
    }
    r["results"]["drift"] = drift_to_json(drift);
    emit(cfg, r);
    return drift.feasible ? kExitOk : kExitViolation;
}

int cmd_solve(const RunConfig& cfg) {
    const FiniteCtmdp model = load_model(cfg);
    const ConstrainedSolution sol = solve_constrained(model);

    Report r = envelope(cfg);
    r["results"]["value"] = {{"value", sol.value}, {"units", "reward"}};
    r["results"]["policy"] = report_of_policy(model, sol.policy);
    r["results"]["occupation"] = report_of_measure(model, sol.eta);
    auto costs = Report::array();
    for (int n = 1; n <= model.num_constraints(); ++n) {
        const double vn = value_of_measure(model, sol.eta, Criterion::Cost, n);
        costs.push_back({{"index", n},
                         {"value", vn},
                         {"bound", model.bounds[n - 1]},
                         {"binding", std::abs(vn - model.bounds[n - 1]) <= 1e-7}});
    }
    r["results"]["costs"] = costs;
    r["results"]["lp"] = {{"status", "optimal"},
                          {"objective", sol.lp.objective_value},
                          {"basis_size", sol.lp.basis.size()}};
    emit(cfg, r);
    return kExitOk;
}

int cmd_eval_policy(const RunConfig& cfg) {
    const FiniteCtmdp model = load_model(cfg);
    if (cfg.policy_path.empty())
        throw std::invalid_argument("eval-policy: --policy PATH is required");
    const StationaryPolicy phi = load_policy(cfg.policy_path, model);
    const OccupationMeasure eta = occupation_of_stationary(model, phi);

    Report r = envelope(cfg);
    r["results"]["value"] = {{"value", value_of_measure(model, eta, Criterion::Reward)},
                             {"units", "reward"}};
    auto costs = Report::array();
    for (int n = 1; n <= model.num_constraints(); ++n)
        costs.push_back({{"index", n},
                         {"value", value_of_measure(model, eta, Criterion::Cost, n)},
                         {"bound", model.bounds[n - 1]}});
    r["results"]["costs"] = costs;
    r["results"]["policy"] = report_of_policy(model, phi);
    r["results"]["occupation"] = report_of_measure(model, eta);
    emit(cfg, r);
    return kExitOk;
}

StationaryPolicy policy_for_simulation(const RunConfig& cfg, const FiniteCtmdp& model,
                                       Report& results) {
    if (!cfg.policy_path.empty()) {
        results["policy_source"] = "file";
        return load_policy(cfg.policy_path, model);
    }
    results["policy_source"] = "lp-optimal";
    return solve_constrained(model).policy;
}

double pick_horizon(const RunConfig& cfg, const FiniteCtmdp& model, Report& results) {
    if (cfg.has_horizon) return cfg.horizon;
    if (!cfg.has_eps || model.lyapunov_w.empty())
        throw std::invalid_argument("simulate: give --horizon, or --eps with a model lyapunov block");
    // truncation from the drift constants carried by the model file
    double max_abs = 0.0;
    for (int x = 0; x < model.num_states; ++x)
        for (int ai = 0; ai < model.num_actions(x); ++ai) {
            max_abs = std::max(max_abs, std::abs(model.reward[x][ai]) / model.lyapunov_w[x]);
            for (const auto& c : model.costs)
                max_abs = std::max(max_abs, std::abs(c[x][ai]) / model.lyapunov_w[x]);
        }
    const DriftReport drift = check_drift(model, model.lyapunov_w, model.lyapunov_rho);
    if (!drift.feasible || model.lyapunov_rho >= model.alpha)
        throw std::invalid_argument("simulate: drift constants unusable for --eps truncation");
    double w0 = 0.0;
    for (int x = 0; x < model.num_states; ++x) w0 += model.gamma[x] * model.lyapunov_w[x];
    const double T = truncation_horizon(max_abs, w0, drift.b_min, model.alpha,
                                        model.lyapunov_rho, cfg.eps);
    results["horizon_from"] = {{"eps", cfg.eps}, {"M", max_abs}, {"rho", model.lyapunov_rho},
                               {"b", drift.b_min}};
    return T;
}

int cmd_simulate(const RunConfig& cfg) {
    Report r = envelope(cfg);
    if (cfg.example_id) {
        const Benchmark bench = build_example(cfg.example_id, cfg.params);
        if (cfg.example_id == 1)
            throw std::invalid_argument("simulate --example: examples 2 and 3 have closed-form policies");
        const ClosedFormSolution closed =
            cfg.example_id == 2
                ? example2_closed_form(cfg.params.p, cfg.params.delta, cfg.params.alpha)
                : example3_closed_form(cfg.params.beta, cfg.params.p, cfg.params.delta,
                                       cfg.params.alpha);
        const double horizon = cfg.has_horizon ? cfg.horizon : 20.0 / bench.model.alpha;
        const ContinuousPolicy policy = stationary_1d([closed](double x) { return closed.policy(x); });
        const McEstimate est =
            discounted_value_mc(bench.model, policy, cfg.x0, cfg.n_trajectories, horizon, cfg.seed);
        r["results"]["estimate"] = {{"mean", est.mean},
                                    {"std_error", est.std_error},
                                    {"n", est.n},
                                    {"z", est.z},
                                    {"units", "reward"}};
        r["results"]["closed_form_value"] = closed.value(cfg.x0);
        r["results"]["x0"] = cfg.x0;
        r["results"]["horizon"] = {{"value", horizon}, {"units", "time"}};
        emit(cfg, r);
        return kExitOk;
    }

    const FiniteCtmdp model = load_model(cfg);
    const StationaryPolicy phi = policy_for_simulation(cfg, model, r["results"]);
    const double horizon = pick_horizon(cfg, model, r["results"]);
    r["results"]["horizon"] = {{"value", horizon}, {"units", "time"}};

    const McEstimate reward =
        discounted_value_mc(model, phi, model.gamma, Criterion::Reward, 0, cfg.n_trajectories,
                            horizon, cfg.seed);
    r["results"]["reward"] = {{"mean", reward.mean},
                              {"std_error", reward.std_error},
                              {"n", reward.n},
                              {"z", reward.z},
                              {"units", "reward"}};
    auto costs = Report::array();
    for (int n = 1; n <= model.num_constraints(); ++n) {
        const McEstimate est = discounted_value_mc(model, phi, model.gamma, Criterion::Cost, n,
                                                   cfg.n_trajectories, horizon, cfg.seed);
        costs.push_back({{"index", n},
                         {"mean", est.mean},
                         {"std_error", est.std_error},
                         {"bound", model.bounds[n - 1]}});
    }
    r["results"]["costs"] = costs;
    emit(cfg, r);
    return kExitOk;
}

int cmd_occupation(const RunConfig& cfg) {
    const FiniteCtmdp model = load_model(cfg);
    Report r = envelope(cfg);
    StationaryPolicy phi = policy_for_simulation(cfg, model, r["results"]);

    OccupationMeasure eta;
    if (cfg.mc) {
        eta = empirical_occupation(model, phi, model.gamma, cfg.n_trajectories, cfg.seed);
        r["results"]["estimator"] = {{"kind", "monte-carlo"}, {"n", cfg.n_trajectories}};
    } else {
        eta = occupation_of_stationary(model, phi);
        r["results"]["estimator"] = {{"kind", "exact-linear-solve"}};
    }
    r["results"]["occupation"] = report_of_measure(model, eta);

    CsvTable csv;
    csv.header = {"x", "action", "mass"};
    for (int x = 0; x < model.num_states; ++x)
        for (int ai = 0; ai < model.num_actions(x); ++ai)
            csv.rows.push_back({static_cast<double>(x), static_cast<double>(model.actions[x][ai]),
                                eta.mass[x][ai]});
    emit(cfg, r, &csv);
    return kExitOk;
}

int cmd_decompose(const RunConfig& cfg) {
    const FiniteCtmdp model = load_model(cfg);
    const ConstrainedSolution sol = solve_constrained(model);
    const MixtureDecomposition mix =
        decompose_mixture(sol.eta, model, model.num_constraints(), 1u << 20);

    Report r = envelope(cfg);
    r["results"]["value"] = {{"value", sol.value}, {"units", "reward"}};
    r["results"]["weights"] = mix.weights;
    r["results"]["policies"] = mix.policies;
    r["results"]["reconstruction_residual"] = {{"value", mix.residual}, {"tolerance", 1e-8}};
    r["results"]["mixture_policy"] = report_of_policy(model, mixture_policy(mix, model));
    emit(cfg, r);
    return kExitOk;
}

int cmd_bench(const RunConfig& cfg) {
    if (!cfg.example_id) throw std::invalid_argument("bench: --example {1|2|3} is required");
    const Benchmark bench = build_example(cfg.example_id, cfg.params);

    Report r = envelope(cfg);
    r["inputs"]["params"] = {{"beta0", cfg.params.beta0},
                             {"beta", cfg.params.beta},
                             {"p", cfg.params.p},
                             {"delta", cfg.params.delta},
                             {"alpha", cfg.params.alpha}};

    std::optional<ClosedFormSolution> closed;
    if (cfg.example_id == 2) {
        closed = example2_closed_form(cfg.params.p, cfg.params.delta, cfg.params.alpha);
        const auto& c = closed->coefficients;
        r["results"]["coefficients"] = {
            {"l0", c.l0}, {"l1_plus", c.l1_plus}, {"l1_minus", c.l1_minus}, {"l2", c.l2}};
        r["results"]["coefficient_identities"] = {
            {"alpha_l2_minus_p_minus_l2sq_over_4delta",
             cfg.params.alpha * c.l2 - cfg.params.p - c.l2 * c.l2 / (4.0 * cfg.params.delta)},
            {"alpha_l0_minus_l2sq_over_4delta",
             cfg.params.alpha * c.l0 - c.l2 * c.l2 / (4.0 * cfg.params.delta)},
            {"alpha_l1_minus_l2sq_over_2delta",
             cfg.params.alpha * c.l1_plus - c.l2 * c.l2 / (2.0 * cfg.params.delta)},
            {"tolerance", 1e-12}};
    } else if (cfg.example_id == 3) {
        closed = example3_closed_form(cfg.params.beta, cfg.params.p, cfg.params.delta,
                                      cfg.params.alpha);
        r["results"]["kappa"] = closed->kappa;
    }
    if (closed) {
        r["results"]["value_function"] = {
            {"c2", closed->c2}, {"c1_abs", closed->c1_abs}, {"c0", closed->c0}};
        r["results"]["policy"] = {{"slope", closed->policy_slope},
                                  {"intercept", closed->policy_intercept},
                                  {"units", "action"}};
    }

    // drift over the benchmark grid with the model's Lyapunov pair
    {
        BasisPoly w;
        if (cfg.example_id == 3) {
            w.c_one = 1.0;
            w.c_sq = 1.0;
        } else {
            w.c_one = 1.0;
            w.c_quartic = 1.0;
        }
        LyapunovPair pair = bench.lyapunov;
        if (cfg.has_rho) pair.rho = cfg.rho;
        std::vector<std::pair<double, double>> grid;
        for (int i = 0; i < cfg.grid_points; ++i) {
            const double x = -cfg.grid_radius + 2.0 * cfg.grid_radius * i / (cfg.grid_points - 1);
            const double lo = bench.model.action_lo(x);
            const double hi = bench.model.action_hi(x);
            for (int j = 0; j < cfg.action_grid; ++j)
                grid.emplace_back(x, lo + (hi - lo) * j / (cfg.action_grid - 1));
        }
        const DriftReport drift = check_drift(pair, grid, [&](double x, double a) {
            return gaussian_generator_moment(bench.model, x, a, w);
        });
        r["results"]["drift"] = drift_to_json(drift);
    }

    CsvTable csv;
    csv.header = {"x", "residual"};
    if (closed) {
        std::vector<double> xs;
        const double radius = std::min(cfg.grid_radius, 20.0);
        const int points = 81;
        for (int i = 0; i < points; ++i)
            xs.push_back(-radius + 2.0 * radius * i / (points - 1));
        const auto profile = bellman_residual(bench.model, *closed, xs, 400);
        auto rows = Report::array();
        for (const auto& pt : profile) {
            csv.rows.push_back({pt.x, pt.residual});
            rows.push_back({{"x", pt.x}, {"residual", pt.residual}, {"argmax_a", pt.maximizing_action}});
        }
        r["results"]["bellman_residual"] = {{"profile", rows},
                                            {"note", "exact folded-normal |y| moment; "
                                                     "asserted small only for large |x|"}};
    }

    if (cfg.mc && closed) {
        const double horizon = cfg.has_horizon ? cfg.horizon : 20.0 / bench.model.alpha;
        const ContinuousPolicy policy =
            stationary_1d([c = *closed](double x) { return c.policy(x); });
        const McEstimate est =
            discounted_value_mc(bench.model, policy, cfg.x0, cfg.n_trajectories, horizon, cfg.seed);
        r["results"]["mc_diagnostic"] = {{"x0", cfg.x0},
                                         {"estimate", est.mean},
                                         {"std_error", est.std_error},
                                         {"n", est.n},
                                         {"closed_form_value", closed->value(cfg.x0)},
                                         {"note", "documented diagnostic, not an assertion"}};
    }

    emit(cfg, r, &csv);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"constrained continuous-time MDP solver"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub, bool with_model) {
        if (with_model) {
            sub->add_option("--model", cfg.model_path, "model JSON file");
            sub->add_option("--example", cfg.example_id, "benchmark id (1|2|3)")
                ->check(CLI::Range(1, 3));
        }
        sub->add_option("--seed", cfg.seed, "master RNG seed (default 0, echoed in reports)");
        sub->add_option("--out", cfg.out_path, "output path (default stdout)");
        sub->add_option("--format", cfg.format, "json|csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--beta0", cfg.params.beta0, "benchmark beta0");
        sub->add_option("--beta", cfg.params.beta, "benchmark beta");
        sub->add_option("--p", cfg.params.p, "benchmark p");
        sub->add_option("--delta", cfg.params.delta, "benchmark delta");
        sub->add_option("--alpha", cfg.params.alpha, "benchmark alpha");
    };

    auto* validate = app.add_subcommand("validate", "check the transition-rate axioms");
    add_common(validate, true);

    auto* drift = app.add_subcommand("drift-check", "evaluate the drift inequality on a grid");
    add_common(drift, true);
    drift->add_option("--rho", cfg.rho, "drift rate override")->each([&](const std::string&) {
        cfg.has_rho = true;
    });
    drift->add_option("--grid-radius", cfg.grid_radius, "|x| radius for benchmark grids");
    drift->add_option("--grid-points", cfg.grid_points, "x points for benchmark grids");
    drift->add_option("--action-grid", cfg.action_grid, "actions per x");

    auto* solve = app.add_subcommand("solve", "solve the occupation LP and extract the policy");
    add_common(solve, true);
    solve->add_option("--constraints", cfg.constraints, "override cost bounds d_n")->delimiter(',');

    auto* eval = app.add_subcommand("eval-policy", "exact values of a stationary policy");
    add_common(eval, true);
    eval->add_option("--policy", cfg.policy_path, "policy JSON file");
    eval->add_option("--constraints", cfg.constraints, "override cost bounds d_n")->delimiter(',');

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo discounted values");
    add_common(simulate, true);
    simulate->add_option("--policy", cfg.policy_path, "policy JSON file (default: LP optimum)");
    simulate->add_option("--n", cfg.n_trajectories, "trajectory count");
    simulate->add_option("--horizon", cfg.horizon, "truncation horizon")
        ->each([&](const std::string&) { cfg.has_horizon = true; });
    simulate->add_option("--eps", cfg.eps, "truncation error target")
        ->each([&](const std::string&) { cfg.has_eps = true; });
    simulate->add_option("--x0", cfg.x0, "benchmark start state");
    simulate->add_option("--constraints", cfg.constraints, "override cost bounds d_n")->delimiter(',');

    auto* occupation = app.add_subcommand("occupation", "occupation measure of a policy");
    add_common(occupation, true);
    occupation->add_option("--policy", cfg.policy_path, "policy JSON file (default: LP optimum)");
    occupation->add_flag("--mc", cfg.mc, "Monte Carlo estimate instead of the exact solve");
    occupation->add_option("--n", cfg.n_trajectories, "trajectory count for --mc");
    occupation->add_option("--constraints", cfg.constraints, "override cost bounds d_n")->delimiter(',');

    auto* decompose = app.add_subcommand("decompose", "mixture of deterministic policies");
    add_common(decompose, true);
    decompose->add_option("--constraints", cfg.constraints, "override cost bounds d_n")->delimiter(',');

    auto* bench = app.add_subcommand("bench", "closed-form benchmark examples");
    add_common(bench, true);
    bench->add_flag("--mc", cfg.mc, "add a Monte Carlo value diagnostic");
    bench->add_option("--n", cfg.n_trajectories, "trajectory count for --mc");
    bench->add_option("--x0", cfg.x0, "start state for --mc");
    bench->add_option("--horizon", cfg.horizon, "MC truncation horizon")
        ->each([&](const std::string&) { cfg.has_horizon = true; });
    bench->add_option("--rho", cfg.rho, "drift rate override")->each([&](const std::string&) {
        cfg.has_rho = true;
    });
    bench->add_option("--grid-radius", cfg.grid_radius, "|x| radius for the drift grid");
    bench->add_option("--grid-points", cfg.grid_points, "x points for the drift grid");
    bench->add_option("--action-grid", cfg.action_grid, "actions per x");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitStructural;
    }

    const auto started = std::chrono::steady_clock::now();
    int code = kExitStructural;
    try {
        if (validate->parsed()) {
            cfg.command = "validate";
            code = cmd_validate(cfg);
        } else if (drift->parsed()) {
            cfg.command = "drift-check";
            code = cmd_drift_check(cfg);
        } else if (solve->parsed()) {
            cfg.command = "solve";
            code = cmd_solve(cfg);
        } else if (eval->parsed()) {
            cfg.command = "eval-policy";
            code = cmd_eval_policy(cfg);
        } else if (simulate->parsed()) {
            cfg.command = "simulate";
            code = cmd_simulate(cfg);
        } else if (occupation->parsed()) {
            cfg.command = "occupation";
            code = cmd_occupation(cfg);
        } else if (decompose->parsed()) {
            cfg.command = "decompose";
            code = cmd_decompose(cfg);
        } else if (bench->parsed()) {
            cfg.command = "bench";
            code = cmd_bench(cfg);
        }
    } catch (const InfeasibleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        code = kExitViolation;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        code = kExitViolation;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "io error: " << e.what() << "\n";
        code = kExitStructural;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        code = kExitStructural;
    }

    const auto elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);
    std::cerr << "[" << cfg.command << "] " << elapsed.count() << " ms\n";
    return code;
}
