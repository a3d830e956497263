#include "sgc/simulator.hpp"

#include "sgc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace sgc {

CvSimulator::CvSimulator(const CanteenProfile& profile, const ModelParams& model,
                         SimOptions options)
    : profile_(profile), model_(model), options_(options), rng_(options.seed) {
    profile_.validate();
    model_.validate();
    menu_size_ = std::max(1, static_cast<int>(std::llround(profile_.t_types)));
    rotation_count_ = std::max(0, static_cast<int>(std::llround(profile_.r_rotation)));
}

int CvSimulator::spawn_type() {
    const int id = state_.next_type_id++;
    state_.sample_counts[id] = profile_.samples_per_new_type;
    return id;
}

void CvSimulator::rotate(int& swapped) {
    swapped = 0;
    const int swaps =
        std::min<int>(rotation_count_, static_cast<int>(state_.pool.size()));
    if (swaps <= 0) return;

    // Menu slots leave by tenure (oldest first, ties by id); pool types
    // return oldest-pooled first. Seeded mode randomizes both picks.
    std::vector<size_t> order(state_.menu.size());
    std::iota(order.begin(), order.end(), size_t{0});
    if (options_.mode == RngMode::Seeded) {
        std::shuffle(order.begin(), order.end(), rng_);
        order.resize(static_cast<size_t>(swaps));
    } else {
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            const auto& sa = state_.menu[a];
            const auto& sb = state_.menu[b];
            if (sa.since_meal != sb.since_meal) return sa.since_meal < sb.since_meal;
            return sa.type_id < sb.type_id;
        });
        order.resize(static_cast<size_t>(swaps));
        std::sort(order.begin(), order.end()); // keep slot positions stable
    }

    for (size_t slot : order) {
        int incoming;
        if (options_.mode == RngMode::Seeded && state_.pool.size() > 1) {
            std::uniform_int_distribution<size_t> pick(0, state_.pool.size() - 1);
            const size_t at = pick(rng_);
            incoming = state_.pool[at];
            state_.pool.erase(state_.pool.begin() + static_cast<long>(at));
        } else {
            incoming = state_.pool.front();
            state_.pool.pop_front();
        }
        state_.pool.push_back(state_.menu[slot].type_id);
        state_.menu[slot] = {incoming, state_.meal_index};
        ++swapped;
    }
}

MealRecord CvSimulator::step() {
    ++state_.meal_index;
    MealRecord record;
    record.meal = state_.meal_index;

    int spawned = 0;
    if (state_.meal_index == 1) {
        // Cold start: the opening menu is entirely new and fully sampled.
        state_.menu.clear();
        state_.menu.reserve(static_cast<size_t>(menu_size_));
        for (int i = 0; i < menu_size_; ++i) {
            state_.menu.push_back({spawn_type(), 1});
        }
        spawned = menu_size_;
    } else {
        state_.new_type_accumulator += profile_.f_new;
        while (state_.new_type_accumulator >= 1.0 - 1e-12) {
            state_.new_type_accumulator -= 1.0;
            // The newcomer displaces the longest-serving menu type.
            size_t oldest = 0;
            for (size_t i = 1; i < state_.menu.size(); ++i) {
                const auto& slot = state_.menu[i];
                const auto& best = state_.menu[oldest];
                if (slot.since_meal < best.since_meal ||
                    (slot.since_meal == best.since_meal &&
                     slot.type_id < best.type_id)) {
                    oldest = i;
                }
            }
            state_.pool.push_back(state_.menu[oldest].type_id);
            state_.menu[oldest] = {spawn_type(), state_.meal_index};
            ++spawned;
        }
    }
    record.new_types = spawned;
    record.sampling_emh =
        spawned * profile_.samples_per_new_type * profile_.sample_emh;

    rotate(record.rotated_types);

    // Checkout photos of every served dish feed the ledger; deterministic
    // mode accrues the expectation.
    for (const auto& slot : state_.menu) {
        double gained;
        if (options_.mode == RngMode::Seeded) {
            std::binomial_distribution<long> photos(
                std::max<long>(0, std::llround(profile_.n_per_type)),
                profile_.auto_sample_rate);
            gained = static_cast<double>(photos(rng_));
        } else {
            gained = profile_.n_per_type * profile_.auto_sample_rate;
        }
        state_.sample_counts[slot.type_id] += gained;
    }

    double weighted = 0.0;
    for (const auto& slot : state_.menu) {
        weighted += profile_.n_per_type *
                    sna_accuracy(model_.sna, state_.sample_counts[slot.type_id]);
    }
    record.accuracy = weighted / (state_.menu.size() * profile_.n_per_type);
    record.billing_emh = billing_correction_cost(
        record.accuracy, profile_.dishes_per_meal(), model_.correction);
    record.total_emh = record.sampling_emh + record.billing_emh;
    return record;
}

std::vector<MealRecord> run_cv_simulation(const CanteenProfile& profile,
                                          const ModelParams& model, int n_meals,
                                          SimOptions options) {
    if (n_meals < 1) {
        throw UsageError("simulation needs at least one meal");
    }
    CvSimulator simulator(profile, model, options);
    std::vector<MealRecord> trajectory;
    trajectory.reserve(static_cast<size_t>(n_meals));
    for (int i = 0; i < n_meals; ++i) {
        trajectory.push_back(simulator.step());
    }
    return trajectory;
}

PeriodSummary detect_periods(const std::vector<MealRecord>& trajectory) {
    if (trajectory.size() < 4) {
        throw UsageError("period detection needs a trajectory of at least 4 meals");
    }
    PeriodSummary summary;
    size_t rp_last = trajectory.size() - 1;
    for (size_t m = 3; m < trajectory.size(); ++m) {
        if (trajectory[m].accuracy - trajectory[m - 3].accuracy < 1e-5) {
            rp_last = m;
            summary.threshold_met = true;
            break;
        }
    }
    summary.rp_end_meal = trajectory[rp_last].meal;
    for (size_t m = 0; m <= rp_last; ++m) {
        summary.rp_total_emh += trajectory[m].total_emh;
    }

    const size_t sp_begin = rp_last + 1;
    const size_t sp_count = trajectory.size() - sp_begin;
    if (sp_count == 0) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        summary.sp_mean_accuracy = nan;
        summary.sp_mean_emh = nan;
        summary.sp_accuracy_stddev = nan;
        summary.sp_mean_sampling_emh = nan;
        summary.sp_mean_billing_emh = nan;
        return summary;
    }
    for (size_t m = sp_begin; m < trajectory.size(); ++m) {
        summary.sp_mean_accuracy += trajectory[m].accuracy;
        summary.sp_mean_emh += trajectory[m].total_emh;
        summary.sp_mean_sampling_emh += trajectory[m].sampling_emh;
        summary.sp_mean_billing_emh += trajectory[m].billing_emh;
    }
    summary.sp_mean_accuracy /= sp_count;
    summary.sp_mean_emh /= sp_count;
    summary.sp_mean_sampling_emh /= sp_count;
    summary.sp_mean_billing_emh /= sp_count;
    double variance = 0.0;
    for (size_t m = sp_begin; m < trajectory.size(); ++m) {
        const double d = trajectory[m].accuracy - summary.sp_mean_accuracy;
        variance += d * d;
    }
    summary.sp_accuracy_stddev = std::sqrt(variance / sp_count);
    return summary;
}

namespace {

double stable_accuracy_for(const CanteenProfile& profile, const ModelParams& model,
                           double beta, int n_meals) {
    ModelParams candidate = model;
    candidate.sna.beta = beta;
    const auto trajectory = run_cv_simulation(profile, candidate, n_meals);
    const auto periods = detect_periods(trajectory);
    if (periods.threshold_met && periods.rp_end_meal < trajectory.back().meal) {
        return periods.sp_mean_accuracy;
    }
    // Still ramping: the final meal underestimates the stable level, which
    // keeps the bisection response monotone.
    return trajectory.back().accuracy;
}

} // namespace

double calibrate_beta(const CanteenProfile& profile, const ModelParams& model,
                      double target_sp_accuracy, int n_meals) {
    if (!(target_sp_accuracy > 0.0 &&
          target_sp_accuracy < model.sna.upper_bound)) {
        throw InfeasibleError(
            "calibration target must lie strictly below the accuracy upper bound");
    }
    double lo = 1e-6;
    double hi = 10.0;
    const double at_lo = stable_accuracy_for(profile, model, lo, n_meals);
    const double at_hi = stable_accuracy_for(profile, model, hi, n_meals);
    if (!(at_lo < target_sp_accuracy && target_sp_accuracy < at_hi)) {
        throw InfeasibleError("stable accuracy does not bracket the target");
    }
    double beta = lo;
    for (int iteration = 0; iteration < 80; ++iteration) {
        beta = 0.5 * (lo + hi);
        const double achieved = stable_accuracy_for(profile, model, beta, n_meals);
        if (std::abs(achieved - target_sp_accuracy) < 1e-6) break;
        if (achieved < target_sp_accuracy) {
            lo = beta;
        } else {
            hi = beta;
        }
    }
    const double residual =
        std::abs(stable_accuracy_for(profile, model, beta, n_meals) -
                 target_sp_accuracy);
    if (residual > 1e-3) {
        throw InfeasibleError("calibration did not converge to the target");
    }
    return beta;
}

CvCostModel::CvCostModel(const CanteenProfile& profile, const ModelParams& model,
                         int n_meals)
    : profile_(profile), model_(model) {
    const auto trajectory = run_cv_simulation(profile_, model_, n_meals);
    periods_ = detect_periods(trajectory);
    if (!periods_.threshold_met || std::isnan(periods_.sp_mean_accuracy)) {
        throw InfeasibleError(
            "stable period not reached; extend the run or raise beta");
    }
}

CostBreakdown CvCostModel::meal_cost(double target) const {
    if (!(target >= 0.0 && target <= 1.0)) {
        throw UsageError("target accuracy must be within [0, 1]");
    }
    const double stable = periods_.sp_mean_accuracy;
    CostBreakdown breakdown;
    breakdown.add_sorc("sampling", periods_.sp_mean_sampling_emh, profile_.wage);
    if (target <= stable) {
        // Served at the stable accuracy; only the billing fix applies.
        breakdown.add_sorc("correction", periods_.sp_mean_billing_emh,
                           profile_.wage);
    } else {
        const double rho = (target - stable) / (1.0 - stable);
        breakdown.add_sorc("correction",
                           (1.0 - stable) * profile_.dishes_per_meal() *
                               emh_for_accuracy(model_.correction, rho),
                           profile_.wage);
    }
    return breakdown;
}

CostBreakdown cv_meal_cost(const CanteenProfile& profile, const ModelParams& model,
                           double target, int n_meals) {
    return CvCostModel(profile, model, n_meals).meal_cost(target);
}

} // namespace sgc
