#include "sgc/csv.hpp"
#include "sgc/errors.hpp"
#include "sgc/experiments.hpp"
#include "sgc/scenario.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace sgc;

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream stream(text);
    std::string cell;
    while (std::getline(stream, cell, ',')) {
        if (cell.empty()) continue;
        values.push_back(std::stod(cell));
    }
    if (values.empty()) {
        throw UsageError("expected a comma-separated list of numbers");
    }
    return values;
}

std::vector<double> parse_grid(const std::string& text) {
    // Either lo:step:hi or a comma-separated list.
    if (text.find(':') == std::string::npos) {
        return parse_list(text);
    }
    double lo = 0.0, step = 0.0, hi = 0.0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &lo, &step, &hi) != 3 ||
        step <= 0.0 || hi < lo) {
        throw UsageError("grid must be lo:step:hi with step > 0");
    }
    std::vector<double> values;
    for (int i = 0;; ++i) {
        const double value = lo + i * step;
        if (value > hi + step * 1e-9) break;
        values.push_back(std::min(value, hi));
    }
    return values;
}

struct StudyDefaults {
    const std::map<std::string, std::string>* study = nullptr;

    // Scenario [study] entries stand in for flags the user did not pass.
    template <typename App, typename T>
    void fill(const App* cmd, const std::string& flag, const std::string& key,
              T& value) const {
        if (study == nullptr) return;
        if (cmd->count(flag) > 0) return;
        const auto found = study->find(key);
        if (found == study->end()) return;
        std::stringstream stream(found->second);
        stream >> value;
        if (stream.fail()) {
            throw ConfigError("study key '" + key + "' has a bad value '" +
                              found->second + "'");
        }
    }
};

CanteenProfile named_profile(const std::string& name,
                             const CanteenProfile& defaults) {
    if (name == "baseline") return defaults;
    for (const auto& [label, profile] : typical_canteens(defaults)) {
        if (label == name || label == "type_" + name) return profile;
    }
    throw UsageError("unknown profile '" + name +
                     "' (use baseline or type_i..type_iv)");
}

int run_cli(int argc, char** argv) {
    CLI::App app{"Manpower and equipment cost of dietary data acquisition in "
                 "smart-canteen systems"};
    app.require_subcommand(1);

    std::string scenario_path;
    bool quiet = false;
    app.add_option("--scenario", scenario_path,
                   "Scenario file with canteen/model/study blocks");
    app.add_flag("--quiet", quiet, "Suppress the effective-configuration echo");

    std::string out_path;
    int meals = 0;
    std::uint64_t seed = 0;
    bool seeded = false;
    double target = 1.0;
    double contour_target = 0.9;
    int points = 60;
    std::string policy = "billing";
    std::string parameter = "t";
    std::string sens_param = "s_label";
    std::string values_text;
    std::string systems_text = "rfid,cv";
    std::string targets_text;
    std::string grid_text = "0.8:0.02:1.0";
    std::string profile_name = "baseline";
    double sp_accuracy = 0.84;
    std::string deviations_text = "-0.5,-0.25,0,0.25,0.5";
    std::string capacities_text = "190,275,360,445,530,615,700";
    double multiple = 3.0;
    double step = 0.01;

    auto* simulate = app.add_subcommand("simulate", "Run the meal-by-meal "
                                                    "camera-system simulation");
    simulate->add_option("--meals", meals, "Number of meals (default 100)");
    simulate->add_option("--seed", seed, "Seed for randomized sampling");
    simulate->add_flag("--seeded", seeded, "Draw sampling and rotation randomly");
    simulate->add_option("--out", out_path, "Trajectory CSV path");

    auto* optimize = app.add_subcommand(
        "optimize", "Minimum-effort allocation across the tag-based procedures");
    optimize->add_option("--target", target, "Target system accuracy");

    auto* curve = app.add_subcommand("curve",
                                     "Staff cost of the tag-based system per "
                                     "target accuracy");
    curve->add_option("--targets", targets_text, "Accuracy grid (list or lo:step:hi)");
    curve->add_option("--policy", policy, "billing or balanced (default billing)");
    curve->add_option("--out", out_path, "Curve CSV path");

    auto* contour = app.add_subcommand(
        "contour", "Iso-accuracy polyline over setting/labeling effort");
    contour->add_option("--target", contour_target, "Contour accuracy (default 0.9)");
    contour->add_option("--points", points, "Grid points (default 60)");
    contour->add_option("--out", out_path, "Contour CSV path");

    auto* sweep_cmd = app.add_subcommand("sweep", "Sweep a canteen feature or "
                                                  "model parameter");
    sweep_cmd->add_option("--parameter", parameter,
                          "t, n, f, r, s_<procedure>, alpha_<procedure> or beta");
    sweep_cmd->add_option("--values", values_text, "Comma-separated values");
    sweep_cmd->add_option("--systems", systems_text, "rfid, cv or rfid,cv");
    sweep_cmd->add_option("--targets", targets_text, "Tag-system accuracy targets");
    sweep_cmd->add_option("--out", out_path, "Sweep CSV path");

    auto* compare = app.add_subcommand(
        "compare", "Total cost of both systems and the manual reference");
    compare->add_option("--profile", profile_name,
                        "baseline or type_i..type_iv (default baseline)");
    compare->add_option("--grid", grid_text, "Accuracy grid (default 0.8:0.02:1.0)");
    compare->add_option("--out", out_path, "Comparison CSV path");

    auto* calibrate = app.add_subcommand(
        "calibrate", "Fit the transmission coefficient to a stable accuracy");
    calibrate->add_option("--sp-accuracy", sp_accuracy,
                          "Stable-period accuracy target (default 0.84)");
    calibrate->add_option("--meals", meals, "Simulation length (default 100)");

    auto* sensitivity = app.add_subcommand(
        "sensitivity", "Cost response to parameter deviations");
    sensitivity->add_option("--parameter", sens_param,
                            "s_label, alpha_label or beta");
    sensitivity->add_option("--deviations", deviations_text,
                            "Relative deviations (default -0.5..0.5)");
    sensitivity->add_option("--out", out_path, "Sensitivity CSV path");

    auto* standardize = app.add_subcommand(
        "standardize", "Savings from freezing the menu (no new or rotated dishes)");
    standardize->add_option("--out", out_path, "Composition CSV path");

    auto* balance = app.add_subcommand(
        "correction-balance", "Efficient improvement limit of checkout correction");
    balance->add_option("--capacities", capacities_text,
                        "Customer capacities (default 190..700)");
    balance->add_option("--multiple", multiple,
                        "Knee threshold as a multiple of the initial marginal");
    balance->add_option("--step", step, "Improvement grid step (default 0.01)");
    balance->add_option("--out", out_path, "Study CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& help) {
        return app.exit(help);
    } catch (const CLI::ParseError& error) {
        std::cerr << app.help() << '\n' << error.what() << '\n';
        return 2;
    }

    ScenarioConfig config =
        scenario_path.empty() ? default_scenario() : load_scenario(scenario_path);
    StudyDefaults defaults{config.study.empty() ? nullptr : &config.study};

    if (!quiet) {
        std::cout << effective_config_echo(config);
    }

    const auto write_and_note = [&](const std::string& fallback,
                                    const std::string& contents) {
        const std::string path = out_path.empty() ? fallback : out_path;
        write_file(path, contents);
        std::cout << "wrote " << path << '\n';
    };

    if (*simulate) {
        defaults.fill(simulate, "--meals", "meals", meals);
        defaults.fill(simulate, "--out", "out", out_path);
        if (meals <= 0) meals = config.n_meals;
        config.ensure_calibrated();
        SimOptions options = config.sim;
        if (seeded || simulate->count("--seed") > 0) {
            options.mode = RngMode::Seeded;
            options.seed = seed;
        }
        const auto trajectory =
            run_cv_simulation(config.profile, config.model, meals, options);
        write_and_note("trajectory_baseline_run.csv", trajectory_csv(trajectory));
        std::cout << period_summary_text(detect_periods(trajectory));
    } else if (*optimize) {
        defaults.fill(optimize, "--target", "target", target);
        const auto result = optimal_allocation(
            {rfid_procedures(config.profile, config.model), target});
        std::cout << "target accuracy:  " << format_number(target, 6) << '\n'
                  << "total EMH (h):    " << format_number(result.total_emh, 6)
                  << '\n';
        for (const auto& proc : result.procedures) {
            const double share =
                result.total_emh > 0.0 ? proc.total_emh / result.total_emh : 0.0;
            std::cout << "  " << to_string(proc.kind) << ": h/exec "
                      << format_number(proc.emh_per_execution, 6) << ", accuracy "
                      << format_number(proc.accuracy, 6) << ", total "
                      << format_number(proc.total_emh, 6) << " ("
                      << format_number(share * 100.0, 4) << "%)\n";
        }
    } else if (*curve) {
        defaults.fill(curve, "--targets", "targets", targets_text);
        defaults.fill(curve, "--policy", "policy", policy);
        defaults.fill(curve, "--out", "out", out_path);
        if (targets_text.empty()) targets_text = "0:0.1:1";
        RfidCostOptions options;
        if (policy == "balanced") {
            options.policy = CorrectionPolicy::BalancedCorrection;
        } else if (policy != "billing") {
            throw UsageError("policy must be billing or balanced");
        }
        const auto rows = cost_accuracy_curve(config.profile, config.model,
                                              parse_grid(targets_text), options);
        write_and_note("curve_baseline_" + policy + ".csv", curve_csv(rows));
        for (const auto& row : rows) {
            std::cout << "target " << format_number(row.target, 4) << ": total "
                      << format_number(row.emh_total, 6) << " h\n";
        }
    } else if (*contour) {
        defaults.fill(contour, "--target", "target", contour_target);
        defaults.fill(contour, "--out", "out", out_path);
        CanteenProfile profile = config.profile;
        profile.f_new = 0.0; // contour is defined on the no-new-dish slice
        const auto polyline =
            accuracy_contour(contour_target, points, profile, config.model);
        write_and_note("contour_baseline_t" + format_number(contour_target, 4) +
                           ".csv",
                       contour_csv(polyline));
        double best = polyline.front().h_sum();
        for (const auto& point : polyline) best = std::min(best, point.h_sum());
        std::cout << "points: " << polyline.size()
                  << ", minimal summed EMH: " << format_number(best, 6) << " h\n";
    } else if (*sweep_cmd) {
        defaults.fill(sweep_cmd, "--parameter", "parameter", parameter);
        defaults.fill(sweep_cmd, "--values", "values", values_text);
        defaults.fill(sweep_cmd, "--out", "out", out_path);
        SweepSpec spec;
        spec.n_meals = config.n_meals;
        if (parameter == "t" || parameter == "T") {
            spec.parameter.kind = SweepParameterKind::T;
            if (values_text.empty()) values_text = "10,15,20,25,30,35,40,45,50";
        } else if (parameter == "n" || parameter == "N") {
            spec.parameter.kind = SweepParameterKind::N;
            if (values_text.empty()) values_text = "40,50,60,70,80,90,100";
        } else if (parameter == "f" || parameter == "F") {
            spec.parameter.kind = SweepParameterKind::F;
            spec.scale = SweepScale::Log;
            if (values_text.empty()) values_text = "0.1,0.3,1,3,10";
        } else if (parameter == "r" || parameter == "R") {
            spec.parameter.kind = SweepParameterKind::R;
            if (values_text.empty()) values_text = "0,3,6,9,12,15";
        } else if (parameter == "beta") {
            spec.parameter.kind = SweepParameterKind::Beta;
        } else if (parameter.rfind("s_", 0) == 0 ||
                   parameter.rfind("alpha_", 0) == 0) {
            const bool is_s = parameter.rfind("s_", 0) == 0;
            const std::string name = parameter.substr(is_s ? 2 : 6);
            spec.parameter.kind = is_s ? SweepParameterKind::ProcedureS
                                       : SweepParameterKind::ProcedureAlpha;
            if (name == "inputting") {
                spec.parameter.procedure = ProcedureKind::Inputting;
            } else if (name == "setting") {
                spec.parameter.procedure = ProcedureKind::Setting;
            } else if (name == "labeling" || name == "label") {
                spec.parameter.procedure = ProcedureKind::Labeling;
            } else if (name == "correction") {
                spec.parameter.procedure = ProcedureKind::Correction;
            } else {
                throw UsageError("unknown procedure '" + name + "'");
            }
        } else {
            throw UsageError("unknown sweep parameter '" + parameter + "'");
        }
        if (values_text.empty()) {
            throw UsageError("--values is required for this parameter");
        }
        spec.values = parse_list(values_text);
        spec.systems.clear();
        for (const auto& name : {std::string("rfid"), std::string("cv")}) {
            if (systems_text.find(name) != std::string::npos) {
                spec.systems.push_back(name == "rfid" ? SystemKind::Rfid
                                                      : SystemKind::Cv);
            }
        }
        if (spec.systems.empty()) {
            throw UsageError("--systems must name rfid and/or cv");
        }
        if (!targets_text.empty()) {
            spec.accuracy_targets = parse_grid(targets_text);
        }
        if (config.beta_given == false &&
            std::find(spec.systems.begin(), spec.systems.end(), SystemKind::Cv) !=
                spec.systems.end()) {
            config.ensure_calibrated();
        }
        const auto table = sweep(spec, config.profile, config.model);
        write_and_note("sweep_baseline_" + spec.parameter.label() + ".csv",
                       sweep_csv(table));
        for (const auto& slope : marginal_fit(table)) {
            std::cout << to_string(slope.system);
            if (slope.system == SystemKind::Rfid) {
                std::cout << " target " << format_number(slope.target, 4);
            }
            std::cout << ": cost slope ";
            if (slope.cost_slope) {
                std::cout << format_number(*slope.cost_slope, 6) << " h/unit";
            } else {
                std::cout << "undefined";
            }
            if (slope.accuracy_slope) {
                std::cout << ", accuracy slope "
                          << format_number(*slope.accuracy_slope, 6) << " /unit";
            }
            std::cout << '\n';
        }
    } else if (*compare) {
        defaults.fill(compare, "--profile", "profile", profile_name);
        defaults.fill(compare, "--grid", "grid", grid_text);
        defaults.fill(compare, "--out", "out", out_path);
        config.ensure_calibrated();
        const auto profile = named_profile(profile_name, config.profile);
        const auto comparison = compare_systems(profile, config.model,
                                                parse_grid(grid_text),
                                                config.n_meals);
        write_and_note("compare_" + profile_name + "_grid.csv",
                       comparison_csv(comparison));
        if (comparison.crossover_targets.empty()) {
            std::cout << "no crossover on the grid\n";
        } else {
            std::cout << "crossover targets:";
            for (double t : comparison.crossover_targets) {
                std::cout << ' ' << format_number(t, 4);
            }
            std::cout << '\n';
        }
    } else if (*calibrate) {
        defaults.fill(calibrate, "--sp-accuracy", "sp_accuracy", sp_accuracy);
        if (meals <= 0) meals = config.n_meals;
        const double beta =
            calibrate_beta(config.profile, config.model, sp_accuracy, meals);
        ModelParams calibrated = config.model;
        calibrated.sna.beta = beta;
        const double achieved =
            CvCostModel(config.profile, calibrated, meals).sp_accuracy();
        std::cout << "beta:     " << format_number(beta, 9) << '\n'
                  << "residual: " << format_number(std::abs(achieved - sp_accuracy), 4)
                  << '\n';
    } else if (*sensitivity) {
        defaults.fill(sensitivity, "--parameter", "parameter", sens_param);
        defaults.fill(sensitivity, "--deviations", "deviations", deviations_text);
        defaults.fill(sensitivity, "--out", "out", out_path);
        SensitivityParam param;
        if (sens_param == "s_label" || sens_param == "s_labeling") {
            param = SensitivityParam::SLabel;
        } else if (sens_param == "alpha_label" || sens_param == "alpha_labeling") {
            param = SensitivityParam::AlphaLabel;
        } else if (sens_param == "beta") {
            param = SensitivityParam::Beta;
        } else {
            throw UsageError("sensitivity parameter must be s_label, alpha_label "
                             "or beta");
        }
        if (param == SensitivityParam::Beta) config.ensure_calibrated();
        const auto rows = sensitivity_study(param, parse_list(deviations_text),
                                            config.profile, config.model,
                                            config.n_meals);
        write_and_note("sensitivity_baseline_" + sens_param + ".csv",
                       sensitivity_csv(param, rows));
        for (const auto& row : rows) {
            std::cout << "deviation " << format_number(row.deviation, 4)
                      << ": cost at 1 " << format_number(row.cost_change_at_full * 100, 4)
                      << "%, at 0.8 " << format_number(row.cost_change_at_08 * 100, 4)
                      << "%";
            if (param == SensitivityParam::Beta) {
                std::cout << ", stable accuracy "
                          << format_number(row.sp_accuracy_change, 4);
            }
            std::cout << '\n';
        }
    } else if (*standardize) {
        defaults.fill(standardize, "--out", "out", out_path);
        config.ensure_calibrated();
        const auto savings =
            standardization_study(config.profile, config.model, config.n_meals);
        CanteenProfile standardized = config.profile;
        standardized.f_new = 0.0;
        standardized.r_rotation = 0.0;
        const auto entries = cost_composition({{"baseline", config.profile},
                                               {"standardized", standardized}},
                                              config.model, config.n_meals);
        write_and_note("standardize_baseline_run.csv", composition_csv(entries));
        std::cout << "RFID staff saving:  "
                  << format_number(savings.rfid_sorc * 100, 4) << "%\n"
                  << "RFID total saving:  "
                  << format_number(savings.rfid_total * 100, 4) << "%\n"
                  << "CV staff saving:    "
                  << format_number(savings.cv_sorc * 100, 4) << "%\n"
                  << "CV total saving:    "
                  << format_number(savings.cv_total * 100, 4) << "%\n";
    } else if (*balance) {
        defaults.fill(balance, "--capacities", "capacities", capacities_text);
        defaults.fill(balance, "--multiple", "multiple", multiple);
        defaults.fill(balance, "--step", "step", step);
        defaults.fill(balance, "--out", "out", out_path);
        config.ensure_calibrated();
        const auto study = correction_balance_study(parse_list(capacities_text),
                                                    config.profile, config.model,
                                                    multiple, step, config.n_meals);
        write_and_note("correction_balance_baseline_run.csv",
                       correction_balance_csv(study));
        for (const auto& row : study.rows) {
            std::cout << "capacity " << format_number(row.capacity, 6)
                      << ": improvement limit " << format_number(row.limit, 6)
                      << (row.knee_found ? "" : " (no knee on the grid)") << '\n';
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const sgc::InfeasibleError& error) {
        std::cerr << "infeasible: " << error.what() << '\n';
        return 3;
    } catch (const sgc::UsageError& error) {
        std::cerr << "usage error: " << error.what() << '\n';
        return 2;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << '\n';
        return 1;
    }
}
