#pragma once

#include "sgc/experiments.hpp"
#include "sgc/planner.hpp"
#include "sgc/simulator.hpp"

#include <string>
#include <vector>

namespace sgc {

// Full-precision numeric formatting shared by every CSV writer so that
// deterministic runs stay byte-stable.
std::string format_number(double value, int significant_digits = 12);

std::string trajectory_csv(const std::vector<MealRecord>& trajectory);
std::string curve_csv(const std::vector<CurveRow>& rows);
std::string contour_csv(const std::vector<ContourPoint>& points);
std::string sweep_csv(const SweepTable& table);
std::string comparison_csv(const SystemComparison& comparison);
std::string composition_csv(const std::vector<CompositionEntry>& entries);
std::string sensitivity_csv(SensitivityParam param,
                            const std::vector<SensitivityRow>& rows);
std::string correction_balance_csv(const CorrectionBalanceStudy& study);

std::string period_summary_text(const PeriodSummary& summary);

void write_file(const std::string& path, const std::string& contents);

} // namespace sgc
