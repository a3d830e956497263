#pragma once

#include "sgc/accuracy.hpp"

#include <string>
#include <vector>

namespace sgc {

enum class SystemKind { Rfid, Cv };

const char* to_string(SystemKind system);

// Canteen features plus the economic constants of a deployment.
// T/N/F/R and the customer count follow the baseline statistics; the
// remaining fields are configuration constants with documented defaults.
struct CanteenProfile {
    double t_types = 20.0;      // dish types per meal
    double n_per_type = 70.0;   // dishes of each type
    double f_new = 0.3;         // new dish types per meal
    double r_rotation = 6.0;    // rotated old types per meal
    double customers = 450.0;   // transactions per meal

    double wage = 95.0;              // currency per EMH hour
    double checkout_velocity = 300.0; // customers per checkout lane per meal
    double plate_price = 3.5;        // currency per tagged plate
    double plate_loss_rate = 0.0025; // plates lost per plate-use
    double samples_per_new_type = 5.0;
    double sample_emh = 0.33;        // EMH hours per training sample
    double manual_record_emh = 0.038; // EMH hours to hand-record one transaction
    double auto_sample_rate = 0.1;   // checkout photos kept per served dish

    void validate() const;
    double dishes_per_meal() const { return t_types * n_per_type; }
};

enum class CostGroup { Sorc, Nsorc };

struct CostItem {
    std::string label;
    CostGroup group = CostGroup::Sorc;
    double emh = 0.0;      // 0 for pure equipment items
    double currency = 0.0;
};

struct CostBreakdown {
    std::vector<CostItem> items;

    void add_sorc(std::string label, double emh, double wage);
    void add_nsorc(std::string label, double currency);

    double sorc_emh() const;
    double sorc_currency() const;
    double nsorc_currency() const;
    double total_currency() const;
    const CostItem* find(const std::string& label) const;
};

// How the per-meal count of an equipment item is derived.
enum class CountRule { PerType, PerLane, FixedOne, PlateLoss };

struct PriceItem {
    std::string label;
    SystemKind system = SystemKind::Rfid;
    double unit_value = 0.0; // currency per unit per meal, amortized
    CountRule rule = CountRule::FixedOne;
};

using PriceCatalog = std::vector<PriceItem>;

PriceCatalog default_price_catalog(double plate_price = 3.5);

// CSV with header: label,system,unit_value,count_rule
PriceCatalog load_price_catalog(const std::string& path);
void save_price_catalog(const PriceCatalog& catalog, const std::string& path);

// Checkout lanes needed for the canteen throughput, at least one.
int device_count(const CanteenProfile& profile);

// Equipment, software and plate-loss items for one meal. Independent of any
// accuracy target.
CostBreakdown nsorc_per_meal(const CanteenProfile& profile, SystemKind system,
                             const PriceCatalog& catalog);
CostBreakdown nsorc_per_meal(const CanteenProfile& profile, SystemKind system);

double emh_to_currency(double emh_hours, double wage);

// Mandatory per-error price fix at checkout: every erroneous dish record
// receives at least the fixed correction effort.
double billing_correction_cost(double system_accuracy, double dishes_per_meal,
                               const EmhAccuracyParams& correction);

// Optional checkout effort converting erroneous records into correct data.
// rho = (a_target - a_base) / (1 - a_base) is the fraction of errors fixed;
// each error is charged emh_for_accuracy(correction, rho), so the engaged
// correction already covers the billing fix of every error. Zero when no
// improvement is requested.
double data_correction(double a_base, double a_target, double dishes_per_meal,
                       const EmhAccuracyParams& correction);

} // namespace sgc
