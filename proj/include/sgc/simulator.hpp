#pragma once

#include "sgc/accuracy.hpp"
#include "sgc/cost.hpp"

#include <cstdint>
#include <deque>
#include <map>
#include <random>
#include <vector>

namespace sgc {

enum class RngMode { Deterministic, Seeded };

struct SimOptions {
    RngMode mode = RngMode::Deterministic;
    std::uint64_t seed = 0;
};

struct MenuSlot {
    int type_id = 0;
    long since_meal = 0; // meal at which the type entered the menu
};

// Sample ledger of a running recognition deployment.
struct CvState {
    std::map<int, double> sample_counts; // per known dish type, never decreasing
    std::vector<MenuSlot> menu;
    std::deque<int> pool; // known types currently off the menu, oldest first
    double new_type_accumulator = 0.0; // fractional new-dish carry, in [0, 1)
    long meal_index = 0;
    int next_type_id = 0;
};

struct MealRecord {
    long meal = 0;
    double accuracy = 0.0;     // dish-count weighted mean over the menu
    double sampling_emh = 0.0;
    double billing_emh = 0.0;
    double total_emh = 0.0;
    int new_types = 0;
    int rotated_types = 0;
};

// Meal-by-meal simulation of the camera-based system. Deterministic mode
// replays bit-identically; Seeded mode draws sampling and rotation choices
// from the given seed.
class CvSimulator {
  public:
    CvSimulator(const CanteenProfile& profile, const ModelParams& model,
                SimOptions options = {});

    MealRecord step();
    const CvState& state() const { return state_; }

  private:
    int spawn_type();
    void rotate(int& swapped);

    CanteenProfile profile_;
    ModelParams model_;
    SimOptions options_;
    CvState state_;
    std::mt19937_64 rng_;
    int menu_size_ = 0;
    int rotation_count_ = 0;
};

std::vector<MealRecord> run_cv_simulation(const CanteenProfile& profile,
                                          const ModelParams& model, int n_meals,
                                          SimOptions options = {});

struct PeriodSummary {
    long rp_end_meal = 0;     // first meal whose 3-meal accuracy increment < 1e-5
    bool threshold_met = false;
    double rp_total_emh = 0.0;
    double sp_mean_accuracy = 0.0;
    double sp_mean_emh = 0.0;
    double sp_accuracy_stddev = 0.0;
    double sp_mean_sampling_emh = 0.0;
    double sp_mean_billing_emh = 0.0;
};

// Splits the ramping-up period from the stable period and summarizes the
// stable tail. Requires at least 4 meals. When the increment threshold is
// never crossed, rp_end_meal covers the whole trajectory and threshold_met
// stays false.
PeriodSummary detect_periods(const std::vector<MealRecord>& trajectory);

// Bisection on the transmission coefficient until the deterministic
// stable-period mean accuracy matches the target within 1e-3.
double calibrate_beta(const CanteenProfile& profile, const ModelParams& model,
                      double target_sp_accuracy, int n_meals = 100);

// Runs the deterministic simulation once and prices any accuracy target from
// the stable-period state.
class CvCostModel {
  public:
    CvCostModel(const CanteenProfile& profile, const ModelParams& model,
                int n_meals = 100);

    // Sampling plus checkout correction. Targets at or below the stable
    // accuracy are served as-is with the per-error billing fix; higher
    // targets engage data correction, which subsumes the billing fix.
    CostBreakdown meal_cost(double target) const;

    double sp_accuracy() const { return periods_.sp_mean_accuracy; }
    const PeriodSummary& periods() const { return periods_; }

  private:
    CanteenProfile profile_;
    ModelParams model_;
    PeriodSummary periods_;
};

CostBreakdown cv_meal_cost(const CanteenProfile& profile, const ModelParams& model,
                           double target, int n_meals = 100);

} // namespace sgc
