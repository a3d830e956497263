#include "sgc/planner.hpp"

#include "sgc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace sgc {

void AllocationProblem::validate() const {
    if (procedures.empty()) {
        throw UsageError("allocation problem needs at least one procedure");
    }
    if (!(target_accuracy >= 0.0 && target_accuracy <= 1.0)) {
        throw UsageError("target accuracy must be within [0, 1]");
    }
    std::set<ProcedureKind> seen;
    for (const auto& proc : procedures) {
        proc.params.validate(to_string(proc.kind));
        if (!(proc.executions_per_meal >= 0.0)) {
            throw UsageError("executions_per_meal must be >= 0");
        }
        if (!seen.insert(proc.kind).second) {
            throw UsageError(std::string("procedure '") + to_string(proc.kind) +
                             "' appears more than once");
        }
    }
}

const ProcedureAllocation* AllocationResult::find(ProcedureKind kind) const {
    for (const auto& proc : procedures) {
        if (proc.kind == kind) return &proc;
    }
    return nullptr;
}

AllocationResult optimal_allocation(const AllocationProblem& problem) {
    problem.validate();
    const double target = problem.target_accuracy;
    const size_t count = problem.procedures.size();

    AllocationResult result;
    result.procedures.resize(count);
    for (size_t i = 0; i < count; ++i) {
        const auto& proc = problem.procedures[i];
        result.procedures[i].kind = proc.kind;
        result.procedures[i].executions = proc.executions_per_meal;
    }

    // Zero accuracy is free: no effort, no offsets.
    if (target == 0.0) {
        for (size_t i = 0; i < count; ++i) {
            result.procedures[i].emh_per_execution = 0.0;
            result.procedures[i].accuracy = 0.0;
            result.procedures[i].total_emh = 0.0;
        }
        result.total_emh = 0.0;
        result.achieved_accuracy = 0.0;
        return result;
    }

    // A positive target needs every procedure above zero accuracy, so
    // offsets and step procedures (alpha = 0) become fixed charges. Free
    // procedures (zero executions) are pinned at full accuracy for nothing.
    struct Entry {
        size_t index;
        double alpha;
        double log_threshold; // ln(n S / alpha), the cap water level
    };
    std::vector<Entry> active;
    double log_sum = 0.0;
    for (size_t i = 0; i < count; ++i) {
        const auto& proc = problem.procedures[i];
        auto& out = result.procedures[i];
        if (proc.executions_per_meal <= 0.0 || proc.params.alpha <= 0.0) {
            out.accuracy = 1.0;
            out.emh_per_execution = proc.params.full_cost();
            continue;
        }
        const double k = proc.executions_per_meal * proc.params.s_standard /
                         proc.params.alpha;
        active.push_back({i, proc.params.alpha, std::log(k)});
    }

    const double log_target = std::log(target);
    if (!active.empty() && log_target < 0.0) {
        // Sweep cap thresholds from the top; within a segment the water
        // level solves a linear equation in the uncapped exponents.
        std::sort(active.begin(), active.end(), [](const Entry& a, const Entry& b) {
            if (a.log_threshold != b.log_threshold) {
                return a.log_threshold > b.log_threshold;
            }
            return a.index < b.index;
        });
        double alpha_sum = 0.0;
        double weighted_thresholds = 0.0;
        double level = active.front().log_threshold;
        size_t uncapped = 0;
        for (size_t j = 0; j < active.size(); ++j) {
            alpha_sum += active[j].alpha;
            weighted_thresholds += active[j].alpha * active[j].log_threshold;
            const double candidate = (log_target + weighted_thresholds) / alpha_sum;
            const double lower = (j + 1 < active.size())
                                     ? active[j + 1].log_threshold
                                     : -std::numeric_limits<double>::infinity();
            if (candidate >= lower) {
                level = candidate;
                uncapped = j + 1;
                break;
            }
        }
        for (size_t j = 0; j < active.size(); ++j) {
            const double g = (j < uncapped)
                                 ? std::min(0.0, active[j].alpha *
                                                     (level - active[j].log_threshold))
                                 : 0.0;
            log_sum += g;
            const auto& proc = problem.procedures[active[j].index];
            auto& out = result.procedures[active[j].index];
            out.accuracy = std::exp(g);
            out.emh_per_execution = std::min(
                proc.params.full_cost(),
                proc.params.offset + proc.params.s_standard * std::exp(g / proc.params.alpha));
        }
    } else {
        for (const auto& entry : active) {
            const auto& proc = problem.procedures[entry.index];
            auto& out = result.procedures[entry.index];
            out.accuracy = 1.0;
            out.emh_per_execution = proc.params.full_cost();
        }
    }

    for (size_t i = 0; i < count; ++i) {
        auto& out = result.procedures[i];
        out.total_emh = out.executions * out.emh_per_execution;
        result.total_emh += out.total_emh;
    }
    result.achieved_accuracy = std::exp(log_sum);
    if (result.achieved_accuracy < target - 1e-9) {
        throw InfeasibleError("allocation missed the target accuracy");
    }
    return result;
}

std::vector<ProcedureSpec> rfid_procedures(const CanteenProfile& profile,
                                           const ModelParams& model) {
    return {
        {ProcedureKind::Inputting, model.inputting, profile.f_new},
        {ProcedureKind::Setting, model.setting, profile.f_new + profile.r_rotation},
        {ProcedureKind::Labeling, model.labeling, profile.dishes_per_meal()},
    };
}

std::vector<ContourPoint> accuracy_contour(double target, int grid_points,
                                           const CanteenProfile& profile,
                                           const ModelParams& model) {
    if (!(target > 0.0 && target <= 1.0)) {
        throw UsageError("contour target must be within (0, 1]");
    }
    if (profile.f_new != 0.0) {
        throw UsageError("accuracy contour requires f_new = 0");
    }
    if (grid_points < 1) {
        throw UsageError("contour needs at least one grid point");
    }
    const double setting_runs = profile.f_new + profile.r_rotation;
    const double labeling_runs = profile.dishes_per_meal();

    std::vector<ContourPoint> points;
    if (target == 1.0) {
        points.push_back({1.0, 1.0, setting_runs * model.setting.full_cost(),
                          labeling_runs * model.labeling.full_cost()});
        return points;
    }
    points.reserve(static_cast<size_t>(grid_points));
    const int segments = std::max(1, grid_points - 1);
    for (int i = 0; i < grid_points; ++i) {
        const double a_setting =
            target + (1.0 - target) * static_cast<double>(i) / segments;
        const double a_labeling = std::min(1.0, target / a_setting);
        points.push_back({a_setting, a_labeling,
                          setting_runs * emh_for_accuracy(model.setting, a_setting),
                          labeling_runs * emh_for_accuracy(model.labeling, a_labeling)});
    }
    return points;
}

namespace {

// Per-meal checkout correction charge when the procedures deliver a_base and
// the data must reach target. The engaged correction covers the billing fix
// of every error, so a_base = target degenerates to the plain billing term.
double checkout_correction_emh(double a_base, double target, double dishes,
                               const EmhAccuracyParams& correction) {
    if (a_base >= 1.0) return 0.0;
    const double rho = (target - a_base) / (1.0 - a_base);
    return (1.0 - a_base) * dishes * emh_for_accuracy(correction, rho);
}

} // namespace

CostBreakdown rfid_meal_cost(const CanteenProfile& profile, const ModelParams& model,
                             double target, RfidCostOptions options) {
    if (!(target >= 0.0 && target <= 1.0)) {
        throw UsageError("target accuracy must be within [0, 1]");
    }
    const double dishes = profile.dishes_per_meal();
    const auto procedures = rfid_procedures(profile, model);
    const auto objective = [&](double a_base) {
        return optimal_allocation({procedures, a_base}).total_emh +
               checkout_correction_emh(a_base, target, dishes, model.correction);
    };

    double a_base = target;
    if (options.policy == CorrectionPolicy::BalancedCorrection && target > 0.0) {
        if (!(options.max_improvement > 0.0)) {
            throw UsageError("max_improvement must be > 0");
        }
        const double lo = std::max(0.0, target - options.max_improvement);
        // Coarse scan, then golden-section refinement of the best bracket.
        const int scan = 64;
        double best = target;
        double best_value = objective(target);
        for (int i = 0; i <= scan; ++i) {
            const double a = lo + (target - lo) * static_cast<double>(i) / scan;
            const double value = objective(a);
            if (value < best_value) {
                best_value = value;
                best = a;
            }
        }
        const double width = (target - lo) / scan;
        double left = std::max(lo, best - width);
        double right = std::min(target, best + width);
        const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
        double x1 = right - ratio * (right - left);
        double x2 = left + ratio * (right - left);
        double f1 = objective(x1);
        double f2 = objective(x2);
        while (right - left > 1e-6) {
            if (f1 <= f2) {
                right = x2;
                x2 = x1;
                f2 = f1;
                x1 = right - ratio * (right - left);
                f1 = objective(x1);
            } else {
                left = x1;
                x1 = x2;
                f1 = f2;
                x2 = left + ratio * (right - left);
                f2 = objective(x2);
            }
        }
        const double refined = (left + right) / 2.0;
        a_base = objective(refined) < best_value ? refined : best;
    }

    const auto allocation = optimal_allocation({procedures, a_base});
    CostBreakdown breakdown;
    for (const auto& proc : allocation.procedures) {
        breakdown.add_sorc(to_string(proc.kind), proc.total_emh, profile.wage);
    }
    breakdown.add_sorc(
        "correction",
        checkout_correction_emh(a_base, target, dishes, model.correction),
        profile.wage);
    return breakdown;
}

std::vector<CurveRow> cost_accuracy_curve(const CanteenProfile& profile,
                                          const ModelParams& model,
                                          const std::vector<double>& accuracy_grid,
                                          RfidCostOptions options) {
    std::vector<CurveRow> rows;
    rows.reserve(accuracy_grid.size());
    for (double target : accuracy_grid) {
        const auto breakdown = rfid_meal_cost(profile, model, target, options);
        CurveRow row;
        row.target = target;
        row.emh_inputting = breakdown.find("inputting")->emh;
        row.emh_setting = breakdown.find("setting")->emh;
        row.emh_labeling = breakdown.find("labeling")->emh;
        row.emh_correction = breakdown.find("correction")->emh;
        row.emh_total = breakdown.sorc_emh();
        rows.push_back(row);
    }
    return rows;
}

} // namespace sgc
