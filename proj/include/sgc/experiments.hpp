#pragma once

#include "sgc/cost.hpp"
#include "sgc/planner.hpp"
#include "sgc/simulator.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sgc {

enum class SweepParameterKind { T, N, F, R, ProcedureS, ProcedureAlpha, Beta };

struct SweepParameter {
    SweepParameterKind kind = SweepParameterKind::T;
    ProcedureKind procedure = ProcedureKind::Labeling; // for ProcedureS/Alpha

    std::string label() const;
};

enum class SweepScale { Linear, Log };

struct SweepSpec {
    SweepParameter parameter;
    std::vector<double> values;
    std::vector<SystemKind> systems{SystemKind::Rfid, SystemKind::Cv};
    std::vector<double> accuracy_targets{0.6, 0.7, 0.8, 0.9, 1.0}; // RFID rows
    SweepScale scale = SweepScale::Linear;
    int n_meals = 100;
};

struct SweepRow {
    double value = 0.0;
    SystemKind system = SystemKind::Rfid;
    double target = 0.0;   // requested; stable-period rows carry the achieved value
    double achieved = 0.0;
    double emh_procedures = 0.0; // allocation (RFID) or sampling (CV)
    double emh_correction = 0.0;
    double emh_total = 0.0;
};

struct SweepTable {
    SweepParameter parameter;
    std::vector<SweepRow> rows; // sorted by value, then system, then target
};

SweepTable sweep(const SweepSpec& spec, const CanteenProfile& base,
                 const ModelParams& model);

struct MarginalSlope {
    SystemKind system = SystemKind::Rfid;
    double target = 0.0;
    std::optional<double> cost_slope;     // empty when degenerate
    std::optional<double> accuracy_slope; // camera rows only
};

// Least-squares slope of per-meal EMH against the swept value, per
// (system, target) group.
std::vector<MarginalSlope> marginal_fit(const SweepTable& table);

// The four canteen archetypes extracted from the deployment statistics.
std::vector<std::pair<std::string, CanteenProfile>> typical_canteens(
    const CanteenProfile& defaults = {});

struct ComparisonRow {
    double target = 0.0;
    double rfid_total = 0.0;   // currency, equipment included
    double cv_total = 0.0;
    double manual_total = 0.0;
    SystemKind cheaper = SystemKind::Rfid;
    double saving_fraction = 0.0; // of the dearer automated system
};

struct SystemComparison {
    std::vector<ComparisonRow> rows;
    std::vector<double> crossover_targets; // grid points where the cheaper side flips
};

SystemComparison compare_systems(const CanteenProfile& profile,
                                 const ModelParams& model,
                                 const std::vector<double>& accuracy_grid,
                                 int n_meals = 100);

// Manual-recording reference cost in EMH: one hand-recorded transaction per
// customer on the correction-pressure power law, plus the billing fix.
double manual_meal_emh(const CanteenProfile& profile, const ModelParams& model,
                       double accuracy);

struct CompositionEntry {
    std::string canteen;
    SystemKind system = SystemKind::Rfid;
    CostBreakdown breakdown; // staff and equipment items combined
};

// General cost composition at full target accuracy: the tag-based system is
// allocated to accuracy 1; the camera system is charged at its stable-period
// service level, which is how it operates without checkout data correction.
std::vector<CompositionEntry> cost_composition(
    const std::vector<std::pair<std::string, CanteenProfile>>& canteens,
    const ModelParams& model, int n_meals = 100);

struct StandardizationSavings {
    double rfid_sorc = 0.0;  // fraction of staff cost saved at accuracy 1
    double rfid_total = 0.0; // fraction of staff+equipment currency saved
    double cv_sorc = 0.0;    // at the respective stable-period accuracy
    double cv_total = 0.0;
};

// Savings from freezing the menu (no new dishes, no rotation).
StandardizationSavings standardization_study(const CanteenProfile& base,
                                             const ModelParams& model,
                                             int n_meals = 100);

enum class SensitivityParam { SLabel, AlphaLabel, Beta };

struct SensitivityRow {
    double deviation = 0.0;
    double cost_change_at_full = 0.0; // relative staff-cost change at accuracy 1
    double cost_change_at_08 = 0.0;   // and at accuracy 0.8
    double sp_accuracy_change = 0.0;  // transmission-coefficient rows only
};

std::vector<SensitivityRow> sensitivity_study(SensitivityParam param,
                                              const std::vector<double>& deviations,
                                              const CanteenProfile& base,
                                              const ModelParams& model,
                                              int n_meals = 100);

struct CorrectionBalanceRow {
    double capacity = 0.0; // customers per meal
    double limit = 0.0;    // efficient accuracy-improvement limit
    bool knee_found = false;
};

struct CorrectionBalanceStudy {
    std::vector<CorrectionBalanceRow> rows;
    double marginal_threshold = 0.0;
};

// Efficient-improvement limit of checkout correction per canteen capacity:
// the last improvement step before the finite-difference marginal cost
// exceeds a fixed multiple of the study's initial marginal cost (the
// smallest capacity anchors the threshold, mirroring the shared dotted line
// across the capacity curves).
CorrectionBalanceStudy correction_balance_study(
    const std::vector<double>& capacities, const CanteenProfile& base,
    const ModelParams& model, double marginal_multiple = 3.0,
    double improvement_step = 0.01, int n_meals = 100);

} // namespace sgc
