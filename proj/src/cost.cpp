#include "sgc/cost.hpp"

#include "sgc/errors.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace sgc {

const char* to_string(SystemKind system) {
    return system == SystemKind::Rfid ? "RFID" : "CV";
}

void CanteenProfile::validate() const {
    if (!(t_types >= 1.0)) throw ConfigError("t_types must be >= 1");
    if (!(n_per_type >= 1.0)) throw ConfigError("n_per_type must be >= 1");
    if (!(f_new >= 0.0)) throw ConfigError("f_new must be >= 0");
    if (!(r_rotation >= 0.0)) throw ConfigError("r_rotation must be >= 0");
    if (!(customers >= 1.0)) throw ConfigError("customers must be >= 1");
    if (!(r_rotation <= t_types)) throw ConfigError("r_rotation must be <= t_types");
    if (!(f_new <= t_types)) throw ConfigError("f_new must be <= t_types");
    if (!(wage > 0.0)) throw ConfigError("wage must be > 0");
    if (!(checkout_velocity > 0.0)) throw ConfigError("checkout_velocity must be > 0");
    if (!(plate_price >= 0.0)) throw ConfigError("plate_price must be >= 0");
    if (!(plate_loss_rate >= 0.0 && plate_loss_rate <= 1.0)) {
        throw ConfigError("plate_loss_rate must be within [0, 1]");
    }
    if (!(samples_per_new_type >= 0.0)) {
        throw ConfigError("samples_per_new_type must be >= 0");
    }
    if (!(sample_emh >= 0.0)) throw ConfigError("sample_emh must be >= 0");
    if (!(manual_record_emh > 0.0)) throw ConfigError("manual_record_emh must be > 0");
    if (!(auto_sample_rate >= 0.0 && auto_sample_rate <= 1.0)) {
        throw ConfigError("auto_sample_rate must be within [0, 1]");
    }
}

void CostBreakdown::add_sorc(std::string label, double emh, double wage) {
    items.push_back({std::move(label), CostGroup::Sorc, emh, emh * wage});
}

void CostBreakdown::add_nsorc(std::string label, double currency) {
    items.push_back({std::move(label), CostGroup::Nsorc, 0.0, currency});
}

double CostBreakdown::sorc_emh() const {
    double sum = 0.0;
    for (const auto& item : items) {
        if (item.group == CostGroup::Sorc) sum += item.emh;
    }
    return sum;
}

double CostBreakdown::sorc_currency() const {
    double sum = 0.0;
    for (const auto& item : items) {
        if (item.group == CostGroup::Sorc) sum += item.currency;
    }
    return sum;
}

double CostBreakdown::nsorc_currency() const {
    double sum = 0.0;
    for (const auto& item : items) {
        if (item.group == CostGroup::Nsorc) sum += item.currency;
    }
    return sum;
}

double CostBreakdown::total_currency() const {
    double sum = 0.0;
    for (const auto& item : items) sum += item.currency;
    return sum;
}

const CostItem* CostBreakdown::find(const std::string& label) const {
    for (const auto& item : items) {
        if (item.label == label) return &item;
    }
    return nullptr;
}

PriceCatalog default_price_catalog(double plate_price) {
    return {
        {"rfid_writer", SystemKind::Rfid, 1.37e-1, CountRule::PerType},
        {"rfid_reader", SystemKind::Rfid, 5.48e-1, CountRule::PerLane},
        {"control_terminal", SystemKind::Rfid, 5.48e-1, CountRule::FixedOne},
        {"checkout_terminal", SystemKind::Rfid, 5.48e-1, CountRule::PerLane},
        {"peripheral_network", SystemKind::Rfid, 2.74e-1, CountRule::FixedOne},
        {"server", SystemKind::Rfid, 8.22e-1, CountRule::FixedOne},
        {"rfid_software", SystemKind::Rfid, 5.48, CountRule::FixedOne},
        {"rfid_plate", SystemKind::Rfid, plate_price, CountRule::PlateLoss},
        {"embedded_camera", SystemKind::Cv, 8.22e-2, CountRule::PerLane},
        {"checkout_terminal", SystemKind::Cv, 8.22e-1, CountRule::PerLane},
        {"training_server", SystemKind::Cv, 1.37, CountRule::FixedOne},
        {"cv_software", SystemKind::Cv, 10.96, CountRule::FixedOne},
    };
}

namespace {

CountRule parse_count_rule(const std::string& text) {
    if (text == "per_type") return CountRule::PerType;
    if (text == "per_lane") return CountRule::PerLane;
    if (text == "fixed") return CountRule::FixedOne;
    if (text == "plate_loss") return CountRule::PlateLoss;
    throw ConfigError("price catalog: unknown count_rule '" + text + "'");
}

const char* rule_name(CountRule rule) {
    switch (rule) {
    case CountRule::PerType: return "per_type";
    case CountRule::PerLane: return "per_lane";
    case CountRule::FixedOne: return "fixed";
    case CountRule::PlateLoss: return "plate_loss";
    }
    return "fixed";
}

SystemKind parse_system(const std::string& text) {
    if (text == "RFID" || text == "rfid") return SystemKind::Rfid;
    if (text == "CV" || text == "cv") return SystemKind::Cv;
    throw ConfigError("price catalog: unknown system '" + text + "'");
}

} // namespace

PriceCatalog load_price_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open price catalog '" + path + "'");
    }
    PriceCatalog catalog;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        if (line_no == 1 && line.rfind("label,", 0) == 0) continue;
        std::stringstream row(line);
        std::string label, system, value, rule;
        if (!std::getline(row, label, ',') || !std::getline(row, system, ',') ||
            !std::getline(row, value, ',') || !std::getline(row, rule)) {
            throw ConfigError("price catalog '" + path + "' line " +
                              std::to_string(line_no) + ": expected 4 columns");
        }
        PriceItem item;
        item.label = label;
        item.system = parse_system(system);
        try {
            item.unit_value = std::stod(value);
        } catch (const std::exception&) {
            throw ConfigError("price catalog '" + path + "' line " +
                              std::to_string(line_no) + ": bad unit_value '" +
                              value + "'");
        }
        item.rule = parse_count_rule(rule);
        catalog.push_back(std::move(item));
    }
    return catalog;
}

void save_price_catalog(const PriceCatalog& catalog, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot write price catalog '" + path + "'");
    }
    out << "label,system,unit_value,count_rule\n";
    for (const auto& item : catalog) {
        out << item.label << ',' << to_string(item.system) << ','
            << item.unit_value << ',' << rule_name(item.rule) << '\n';
    }
}

int device_count(const CanteenProfile& profile) {
    if (!(profile.checkout_velocity > 0.0)) {
        throw ConfigError("checkout_velocity must be > 0");
    }
    const double lanes = std::ceil(profile.customers / profile.checkout_velocity);
    return lanes < 1.0 ? 1 : static_cast<int>(lanes);
}

CostBreakdown nsorc_per_meal(const CanteenProfile& profile, SystemKind system,
                             const PriceCatalog& catalog) {
    CostBreakdown breakdown;
    const int lanes = device_count(profile);
    for (const auto& item : catalog) {
        if (item.system != system) continue;
        double count = 1.0;
        switch (item.rule) {
        case CountRule::PerType: count = profile.t_types; break;
        case CountRule::PerLane: count = lanes; break;
        case CountRule::FixedOne: count = 1.0; break;
        case CountRule::PlateLoss:
            count = profile.dishes_per_meal() * profile.plate_loss_rate;
            break;
        }
        breakdown.add_nsorc(item.label, count * item.unit_value);
    }
    return breakdown;
}

CostBreakdown nsorc_per_meal(const CanteenProfile& profile, SystemKind system) {
    return nsorc_per_meal(profile, system, default_price_catalog(profile.plate_price));
}

double emh_to_currency(double emh_hours, double wage) {
    if (!(emh_hours >= 0.0)) throw UsageError("emh_to_currency: hours must be >= 0");
    if (!(wage > 0.0)) throw UsageError("emh_to_currency: wage must be > 0");
    return emh_hours * wage;
}

double billing_correction_cost(double system_accuracy, double dishes_per_meal,
                               const EmhAccuracyParams& correction) {
    if (!(system_accuracy >= 0.0 && system_accuracy <= 1.0)) {
        throw UsageError("billing_correction_cost: accuracy must be within [0, 1]");
    }
    return (1.0 - system_accuracy) * dishes_per_meal * correction.offset;
}

double data_correction(double a_base, double a_target, double dishes_per_meal,
                       const EmhAccuracyParams& correction) {
    if (!(a_base >= 0.0 && a_base <= 1.0 && a_target <= 1.0)) {
        throw UsageError("data_correction: accuracies must be within [0, 1]");
    }
    if (a_target < a_base) {
        throw UsageError("data_correction: a_target must be >= a_base");
    }
    if (a_target == a_base || a_base >= 1.0) {
        return 0.0;
    }
    const double errors = (1.0 - a_base) * dishes_per_meal;
    const double rho = (a_target - a_base) / (1.0 - a_base);
    return errors * emh_for_accuracy(correction, rho);
}

} // namespace sgc
