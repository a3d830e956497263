#include "sgc/csv.hpp"

#include "sgc/errors.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace sgc {

std::string format_number(double value, int significant_digits) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.*g", significant_digits, value);
    return buffer;
}

namespace {

void append_row(std::string& out, const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) out += ',';
        out += cells[i];
    }
    out += '\n';
}

std::string num(double value) { return format_number(value); }

} // namespace

std::string trajectory_csv(const std::vector<MealRecord>& trajectory) {
    std::string out =
        "meal,accuracy,sampling_emh,billing_emh,total_emh,new_types,rotated_types\n";
    for (const auto& record : trajectory) {
        append_row(out, {std::to_string(record.meal), num(record.accuracy),
                         num(record.sampling_emh), num(record.billing_emh),
                         num(record.total_emh), std::to_string(record.new_types),
                         std::to_string(record.rotated_types)});
    }
    return out;
}

std::string curve_csv(const std::vector<CurveRow>& rows) {
    std::string out =
        "target_accuracy,emh_inputting,emh_setting,emh_labeling,emh_correction,"
        "emh_total\n";
    for (const auto& row : rows) {
        append_row(out, {num(row.target), num(row.emh_inputting),
                         num(row.emh_setting), num(row.emh_labeling),
                         num(row.emh_correction), num(row.emh_total)});
    }
    return out;
}

std::string contour_csv(const std::vector<ContourPoint>& points) {
    std::string out = "a_setting,a_labeling,h_setting_total,h_labeling_total,h_sum\n";
    for (const auto& point : points) {
        append_row(out, {num(point.a_setting), num(point.a_labeling),
                         num(point.h_setting_total), num(point.h_labeling_total),
                         num(point.h_sum())});
    }
    return out;
}

std::string sweep_csv(const SweepTable& table) {
    std::string out =
        "parameter,value,system,target_accuracy,achieved_accuracy,"
        "emh_procedures,emh_correction,emh_total\n";
    const std::string label = table.parameter.label();
    for (const auto& row : table.rows) {
        append_row(out, {label, num(row.value), to_string(row.system),
                         num(row.target), num(row.achieved),
                         num(row.emh_procedures), num(row.emh_correction),
                         num(row.emh_total)});
    }
    return out;
}

std::string comparison_csv(const SystemComparison& comparison) {
    std::string out =
        "target_accuracy,rfid_total,cv_total,manual_total,cheaper,"
        "saving_fraction\n";
    for (const auto& row : comparison.rows) {
        append_row(out, {num(row.target), num(row.rfid_total), num(row.cv_total),
                         num(row.manual_total), to_string(row.cheaper),
                         num(row.saving_fraction)});
    }
    return out;
}

std::string composition_csv(const std::vector<CompositionEntry>& entries) {
    std::string out = "canteen,system,item,group,emh,currency\n";
    for (const auto& entry : entries) {
        for (const auto& item : entry.breakdown.items) {
            append_row(out, {entry.canteen, to_string(entry.system), item.label,
                             item.group == CostGroup::Sorc ? "SORC" : "NSORC",
                             num(item.emh), num(item.currency)});
        }
    }
    return out;
}

std::string sensitivity_csv(SensitivityParam param,
                            const std::vector<SensitivityRow>& rows) {
    const char* name = param == SensitivityParam::SLabel ? "s_labeling"
                       : param == SensitivityParam::AlphaLabel ? "alpha_labeling"
                                                               : "beta";
    std::string out =
        "parameter,deviation,cost_change_at_accuracy_1,cost_change_at_accuracy_0.8,"
        "sp_accuracy_change\n";
    for (const auto& row : rows) {
        append_row(out, {name, num(row.deviation), num(row.cost_change_at_full),
                         num(row.cost_change_at_08), num(row.sp_accuracy_change)});
    }
    return out;
}

std::string correction_balance_csv(const CorrectionBalanceStudy& study) {
    std::string out = "capacity,improvement_limit,knee_found\n";
    for (const auto& row : study.rows) {
        append_row(out, {num(row.capacity), num(row.limit),
                         row.knee_found ? "yes" : "no"});
    }
    return out;
}

std::string period_summary_text(const PeriodSummary& summary) {
    std::ostringstream out;
    out << "rp_end_meal:        " << summary.rp_end_meal
        << (summary.threshold_met ? "" : " (threshold never met)") << '\n'
        << "rp_total_emh:       " << format_number(summary.rp_total_emh, 6) << '\n'
        << "sp_mean_accuracy:   " << format_number(summary.sp_mean_accuracy, 6)
        << '\n'
        << "sp_mean_emh:        " << format_number(summary.sp_mean_emh, 6) << '\n'
        << "sp_accuracy_stddev: " << format_number(summary.sp_accuracy_stddev, 6)
        << '\n';
    return out.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw UsageError("cannot write '" + path + "'");
    }
    out << contents;
}

} // namespace sgc
