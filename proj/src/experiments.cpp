#include "sgc/experiments.hpp"

#include "sgc/errors.hpp"

#include <algorithm>
#include <cmath>

namespace sgc {

std::string SweepParameter::label() const {
    switch (kind) {
    case SweepParameterKind::T: return "t_types";
    case SweepParameterKind::N: return "n_per_type";
    case SweepParameterKind::F: return "f_new";
    case SweepParameterKind::R: return "r_rotation";
    case SweepParameterKind::ProcedureS:
        return std::string("s_") + to_string(procedure);
    case SweepParameterKind::ProcedureAlpha:
        return std::string("alpha_") + to_string(procedure);
    case SweepParameterKind::Beta: return "beta";
    }
    return "value";
}

namespace {

void apply_parameter(const SweepParameter& parameter, double value,
                     CanteenProfile& profile, ModelParams& model) {
    switch (parameter.kind) {
    case SweepParameterKind::T: profile.t_types = value; break;
    case SweepParameterKind::N: profile.n_per_type = value; break;
    case SweepParameterKind::F: profile.f_new = value; break;
    case SweepParameterKind::R: profile.r_rotation = value; break;
    case SweepParameterKind::ProcedureS:
        model.procedure(parameter.procedure).s_standard = value;
        break;
    case SweepParameterKind::ProcedureAlpha:
        model.procedure(parameter.procedure).alpha = value;
        break;
    case SweepParameterKind::Beta: model.sna.beta = value; break;
    }
}

} // namespace

SweepTable sweep(const SweepSpec& spec, const CanteenProfile& base,
                 const ModelParams& model) {
    if (spec.values.empty()) {
        throw UsageError("sweep needs at least one value");
    }
    SweepTable table;
    table.parameter = spec.parameter;

    std::vector<double> values = spec.values;
    std::sort(values.begin(), values.end());

    for (double value : values) {
        CanteenProfile profile = base;
        ModelParams params = model;
        apply_parameter(spec.parameter, value, profile, params);
        for (SystemKind system : spec.systems) {
            if (system == SystemKind::Rfid) {
                for (double target : spec.accuracy_targets) {
                    const auto breakdown =
                        rfid_meal_cost(profile, params, target, {});
                    SweepRow row;
                    row.value = value;
                    row.system = system;
                    row.target = target;
                    row.achieved = target;
                    row.emh_correction = breakdown.find("correction")->emh;
                    row.emh_total = breakdown.sorc_emh();
                    row.emh_procedures = row.emh_total - row.emh_correction;
                    table.rows.push_back(row);
                }
            } else {
                CvCostModel cv(profile, params, spec.n_meals);
                const auto breakdown = cv.meal_cost(0.0);
                SweepRow row;
                row.value = value;
                row.system = system;
                row.target = cv.sp_accuracy();
                row.achieved = cv.sp_accuracy();
                row.emh_procedures = breakdown.find("sampling")->emh;
                row.emh_correction = breakdown.find("correction")->emh;
                row.emh_total = breakdown.sorc_emh();
                table.rows.push_back(row);
            }
        }
    }
    std::stable_sort(table.rows.begin(), table.rows.end(),
                     [](const SweepRow& a, const SweepRow& b) {
                         if (a.value != b.value) return a.value < b.value;
                         if (a.system != b.system) {
                             return a.system == SystemKind::Rfid;
                         }
                         return a.target < b.target;
                     });
    return table;
}

std::vector<MarginalSlope> marginal_fit(const SweepTable& table) {
    struct Group {
        SystemKind system;
        double target;
        std::vector<double> x;
        std::vector<double> cost;
        std::vector<double> accuracy;
    };
    std::vector<Group> groups;
    for (const auto& row : table.rows) {
        // Stable-period rows form one group per system regardless of the
        // achieved accuracy drifting with the swept value.
        const double key = row.system == SystemKind::Cv ? 0.0 : row.target;
        Group* group = nullptr;
        for (auto& g : groups) {
            if (g.system == row.system && g.target == key) {
                group = &g;
                break;
            }
        }
        if (group == nullptr) {
            groups.push_back({row.system, key, {}, {}, {}});
            group = &groups.back();
        }
        group->x.push_back(row.value);
        group->cost.push_back(row.emh_total);
        group->accuracy.push_back(row.achieved);
    }

    const auto least_squares = [](const std::vector<double>& x,
                                  const std::vector<double>& y) -> std::optional<double> {
        const size_t n = x.size();
        double mean_x = 0.0, mean_y = 0.0;
        for (size_t i = 0; i < n; ++i) {
            mean_x += x[i];
            mean_y += y[i];
        }
        mean_x /= n;
        mean_y /= n;
        double sxx = 0.0, sxy = 0.0;
        for (size_t i = 0; i < n; ++i) {
            sxx += (x[i] - mean_x) * (x[i] - mean_x);
            sxy += (x[i] - mean_x) * (y[i] - mean_y);
        }
        if (sxx == 0.0) return std::nullopt;
        return sxy / sxx;
    };

    std::vector<MarginalSlope> slopes;
    for (const auto& group : groups) {
        if (group.x.size() < 2) {
            throw UsageError("marginal fit needs at least two rows per group");
        }
        MarginalSlope slope;
        slope.system = group.system;
        slope.target = group.target;
        slope.cost_slope = least_squares(group.x, group.cost);
        if (group.system == SystemKind::Cv) {
            slope.accuracy_slope = least_squares(group.x, group.accuracy);
        }
        slopes.push_back(slope);
    }
    return slopes;
}

std::vector<std::pair<std::string, CanteenProfile>> typical_canteens(
    const CanteenProfile& defaults) {
    const auto make = [&](double t, double n, double f, double r, double customers) {
        CanteenProfile profile = defaults;
        profile.t_types = t;
        profile.n_per_type = n;
        profile.f_new = f;
        profile.r_rotation = r;
        profile.customers = customers;
        return profile;
    };
    return {
        {"type_i", make(20, 70, 0.3, 6, 450)},
        {"type_ii", make(20, 70, 3, 12, 450)},
        {"type_iii", make(50, 70, 0.75, 15, 1200)},
        {"type_iv", make(50, 70, 7.5, 30, 1200)},
    };
}

double manual_meal_emh(const CanteenProfile& profile, const ModelParams& model,
                       double accuracy) {
    if (!(accuracy >= 0.0 && accuracy <= 1.0)) {
        throw UsageError("accuracy must be within [0, 1]");
    }
    const EmhAccuracyParams manual{profile.manual_record_emh, model.manual_alpha,
                                   0.0};
    const double recording =
        accuracy == 0.0 ? 0.0
                        : profile.customers * emh_for_accuracy(manual, accuracy);
    return recording + billing_correction_cost(accuracy, profile.dishes_per_meal(),
                                               model.correction);
}

SystemComparison compare_systems(const CanteenProfile& profile,
                                 const ModelParams& model,
                                 const std::vector<double>& accuracy_grid,
                                 int n_meals) {
    SystemComparison comparison;
    CvCostModel cv(profile, model, n_meals);
    const double rfid_equipment =
        nsorc_per_meal(profile, SystemKind::Rfid).total_currency();
    const double cv_equipment =
        nsorc_per_meal(profile, SystemKind::Cv).total_currency();

    int previous_sign = 0;
    for (double target : accuracy_grid) {
        ComparisonRow row;
        row.target = target;
        row.rfid_total =
            rfid_meal_cost(profile, model, target,
                           {CorrectionPolicy::BalancedCorrection, 0.2})
                .sorc_currency() +
            rfid_equipment;
        row.cv_total = cv.meal_cost(target).sorc_currency() + cv_equipment;
        row.manual_total =
            emh_to_currency(manual_meal_emh(profile, model, target), profile.wage);
        row.cheaper =
            row.rfid_total <= row.cv_total ? SystemKind::Rfid : SystemKind::Cv;
        const double lo = std::min(row.rfid_total, row.cv_total);
        const double hi = std::max(row.rfid_total, row.cv_total);
        row.saving_fraction = hi > 0.0 ? 1.0 - lo / hi : 0.0;

        const int sign = row.rfid_total <= row.cv_total ? 1 : -1;
        if (previous_sign != 0 && sign != previous_sign) {
            comparison.crossover_targets.push_back(target);
        }
        previous_sign = sign;
        comparison.rows.push_back(row);
    }
    return comparison;
}

std::vector<CompositionEntry> cost_composition(
    const std::vector<std::pair<std::string, CanteenProfile>>& canteens,
    const ModelParams& model, int n_meals) {
    std::vector<CompositionEntry> entries;
    for (const auto& [name, profile] : canteens) {
        {
            CompositionEntry entry{name, SystemKind::Rfid,
                                   rfid_meal_cost(profile, model, 1.0, {})};
            for (const auto& item :
                 nsorc_per_meal(profile, SystemKind::Rfid).items) {
                entry.breakdown.items.push_back(item);
            }
            entries.push_back(std::move(entry));
        }
        {
            CompositionEntry entry{name, SystemKind::Cv,
                                   cv_meal_cost(profile, model, 0.0, n_meals)};
            for (const auto& item : nsorc_per_meal(profile, SystemKind::Cv).items) {
                entry.breakdown.items.push_back(item);
            }
            entries.push_back(std::move(entry));
        }
    }
    return entries;
}

StandardizationSavings standardization_study(const CanteenProfile& base,
                                             const ModelParams& model,
                                             int n_meals) {
    CanteenProfile standardized = base;
    standardized.f_new = 0.0;
    standardized.r_rotation = 0.0;

    const auto saving = [](double before, double after) {
        return before > 0.0 ? 1.0 - after / before : 0.0;
    };

    StandardizationSavings savings;
    const auto rfid_base = rfid_meal_cost(base, model, 1.0, {});
    const auto rfid_std = rfid_meal_cost(standardized, model, 1.0, {});
    const double rfid_equipment_base =
        nsorc_per_meal(base, SystemKind::Rfid).total_currency();
    const double rfid_equipment_std =
        nsorc_per_meal(standardized, SystemKind::Rfid).total_currency();
    savings.rfid_sorc = saving(rfid_base.sorc_emh(), rfid_std.sorc_emh());
    savings.rfid_total = saving(rfid_base.sorc_currency() + rfid_equipment_base,
                                rfid_std.sorc_currency() + rfid_equipment_std);

    const auto cv_base = cv_meal_cost(base, model, 0.0, n_meals);
    const auto cv_std = cv_meal_cost(standardized, model, 0.0, n_meals);
    const double cv_equipment_base =
        nsorc_per_meal(base, SystemKind::Cv).total_currency();
    const double cv_equipment_std =
        nsorc_per_meal(standardized, SystemKind::Cv).total_currency();
    savings.cv_sorc = saving(cv_base.sorc_emh(), cv_std.sorc_emh());
    savings.cv_total = saving(cv_base.sorc_currency() + cv_equipment_base,
                              cv_std.sorc_currency() + cv_equipment_std);
    return savings;
}

std::vector<SensitivityRow> sensitivity_study(SensitivityParam param,
                                              const std::vector<double>& deviations,
                                              const CanteenProfile& base,
                                              const ModelParams& model,
                                              int n_meals) {
    for (double d : deviations) {
        if (!(d > -1.0)) {
            throw UsageError("deviations must be > -1");
        }
    }
    const double cost_full = rfid_meal_cost(base, model, 1.0, {}).sorc_emh();
    const double cost_08 = rfid_meal_cost(base, model, 0.8, {}).sorc_emh();
    double sp_base = 0.0;
    if (param == SensitivityParam::Beta) {
        sp_base = CvCostModel(base, model, n_meals).sp_accuracy();
    }

    std::vector<SensitivityRow> rows;
    for (double deviation : deviations) {
        ModelParams scaled = model;
        SensitivityRow row;
        row.deviation = deviation;
        switch (param) {
        case SensitivityParam::SLabel:
            scaled.labeling.s_standard *= 1.0 + deviation;
            break;
        case SensitivityParam::AlphaLabel:
            scaled.labeling.alpha *= 1.0 + deviation;
            break;
        case SensitivityParam::Beta:
            scaled.sna.beta *= 1.0 + deviation;
            break;
        }
        row.cost_change_at_full =
            rfid_meal_cost(base, scaled, 1.0, {}).sorc_emh() / cost_full - 1.0;
        row.cost_change_at_08 =
            rfid_meal_cost(base, scaled, 0.8, {}).sorc_emh() / cost_08 - 1.0;
        if (param == SensitivityParam::Beta) {
            row.sp_accuracy_change =
                CvCostModel(base, scaled, n_meals).sp_accuracy() - sp_base;
        }
        rows.push_back(row);
    }
    return rows;
}

CorrectionBalanceStudy correction_balance_study(
    const std::vector<double>& capacities, const CanteenProfile& base,
    const ModelParams& model, double marginal_multiple, double improvement_step,
    int n_meals) {
    if (capacities.empty()) {
        throw UsageError("correction balance study needs capacities");
    }
    if (!(marginal_multiple > 1.0)) {
        throw UsageError("marginal_multiple must be > 1");
    }
    if (!(improvement_step > 0.0)) {
        throw UsageError("improvement_step must be > 0");
    }

    CvCostModel cv(base, model, n_meals);
    const double stable = cv.sp_accuracy();
    const double max_improvement = 1.0 - stable;
    const int steps =
        static_cast<int>(std::floor(max_improvement / improvement_step + 1e-9));
    if (steps < 2) {
        throw UsageError("improvement_step too coarse for the stable accuracy");
    }

    // Correction cost of one meal at a given accuracy improvement, scaled to
    // the capacity through the dish count.
    const auto cost_at = [&](double capacity, double improvement) {
        const double dishes =
            base.dishes_per_meal() * capacity / base.customers;
        if (improvement <= 0.0) return 0.0;
        const double rho = improvement / max_improvement;
        return (1.0 - stable) * dishes * emh_for_accuracy(model.correction, rho);
    };

    CorrectionBalanceStudy study;
    // The threshold is shared across capacities: the study's dotted line sits
    // at one marginal-cost level, anchored on the smallest capacity's
    // engagement marginal.
    const double smallest = *std::min_element(capacities.begin(), capacities.end());
    study.marginal_threshold = marginal_multiple *
                               cost_at(smallest, improvement_step) /
                               improvement_step;

    for (double capacity : capacities) {
        CorrectionBalanceRow row;
        row.capacity = capacity;
        row.limit = steps * improvement_step;
        for (int k = 2; k <= steps; ++k) {
            const double marginal = (cost_at(capacity, k * improvement_step) -
                                     cost_at(capacity, (k - 1) * improvement_step)) /
                                    improvement_step;
            if (marginal > study.marginal_threshold) {
                row.limit = (k - 1) * improvement_step;
                row.knee_found = true;
                break;
            }
        }
        study.rows.push_back(row);
    }
    std::sort(study.rows.begin(), study.rows.end(),
              [](const CorrectionBalanceRow& a, const CorrectionBalanceRow& b) {
                  return a.capacity < b.capacity;
              });
    return study;
}

} // namespace sgc
