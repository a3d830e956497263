#pragma once

#include "sgc/accuracy.hpp"
#include "sgc/cost.hpp"

#include <vector>

namespace sgc {

struct AllocationProblem {
    std::vector<ProcedureSpec> procedures;
    double target_accuracy = 1.0;

    void validate() const;
};

struct ProcedureAllocation {
    ProcedureKind kind;
    double executions = 0.0;
    double emh_per_execution = 0.0; // never exceeds offset + S
    double accuracy = 0.0;
    double total_emh = 0.0;         // executions * emh_per_execution
};

struct AllocationResult {
    std::vector<ProcedureAllocation> procedures;
    double total_emh = 0.0;
    double achieved_accuracy = 0.0;

    const ProcedureAllocation* find(ProcedureKind kind) const;
};

// Minimum total per-meal EMH reaching the target system accuracy.
//
// In log-accuracy space the problem is convex with per-procedure caps at
// full accuracy; the stationarity condition equalizes the multiplier
// n_i S_i a_i^(1/alpha_i) / alpha_i across uncapped procedures. The water
// level is solved exactly by sweeping the cap thresholds in descending
// order, which also makes the result deterministic.
AllocationResult optimal_allocation(const AllocationProblem& problem);

// The three staff procedures of the tag-based pipeline with their per-meal
// execution counts: inputting runs once per new type, setting once per new
// or rotated type, labeling once per dish.
std::vector<ProcedureSpec> rfid_procedures(const CanteenProfile& profile,
                                           const ModelParams& model);

struct ContourPoint {
    double a_setting = 0.0;
    double a_labeling = 0.0;
    double h_setting_total = 0.0;
    double h_labeling_total = 0.0;

    double h_sum() const { return h_setting_total + h_labeling_total; }
};

// Iso-accuracy polyline over the per-meal setting/labeling EMH plane,
// parameterized by the setting accuracy on [target, 1]. Requires f_new = 0.
// target = 1 degenerates to the single full-cost corner.
std::vector<ContourPoint> accuracy_contour(double target, int grid_points,
                                           const CanteenProfile& profile,
                                           const ModelParams& model);

enum class CorrectionPolicy { BillingOnly, BalancedCorrection };

struct RfidCostOptions {
    CorrectionPolicy policy = CorrectionPolicy::BillingOnly;
    double max_improvement = 0.2; // search span below the target accuracy
};

// Per-meal staff-cost breakdown of the tag-based system at a target
// accuracy. BillingOnly allocates the target directly and pays the per-error
// price fix; BalancedCorrection may aim the procedures lower and buy the
// remainder at checkout, whichever is cheaper.
CostBreakdown rfid_meal_cost(const CanteenProfile& profile, const ModelParams& model,
                             double target, RfidCostOptions options = {});

struct CurveRow {
    double target = 0.0;
    double emh_inputting = 0.0;
    double emh_setting = 0.0;
    double emh_labeling = 0.0;
    double emh_correction = 0.0;
    double emh_total = 0.0;
};

std::vector<CurveRow> cost_accuracy_curve(const CanteenProfile& profile,
                                          const ModelParams& model,
                                          const std::vector<double>& accuracy_grid,
                                          RfidCostOptions options = {});

} // namespace sgc
