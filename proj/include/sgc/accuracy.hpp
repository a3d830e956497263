#pragma once

#include <string>
#include <vector>

namespace sgc {

// Power-law accuracy model of one staff procedure: EMH hours invested per
// execution map to the accuracy of that execution.
struct EmhAccuracyParams {
    double s_standard = 0.0; // EMH hours beyond the offset for full accuracy
    double alpha = 0.0;      // marginal-growth exponent, in [0, 1]
    double offset = 0.0;     // fixed EMH hours charged before accuracy accrues

    void validate(const std::string& name = "procedure") const;
    double full_cost() const { return offset + s_standard; }
};

enum class SnaVariant { Literal, ZeroAnchored };

// Sigmoid learning model: accumulated training samples map to recognition
// accuracy, bounded above by upper_bound.
struct SnaParams {
    double upper_bound = 0.85;
    double beta = 0.2; // per-sample transmission coefficient; normally calibrated
    SnaVariant variant = SnaVariant::ZeroAnchored;

    void validate() const;
};

enum class ProcedureKind { Inputting, Setting, Labeling, Correction, Sampling };

const char* to_string(ProcedureKind kind);

struct ProcedureSpec {
    ProcedureKind kind = ProcedureKind::Labeling;
    EmhAccuracyParams params;
    double executions_per_meal = 0.0;
};

// Accuracy of one procedure execution given invested EMH hours h.
// Exactly 0 at or below the offset, exactly 1 at or beyond offset + S,
// monotone nondecreasing in between.
double emh_accuracy(const EmhAccuracyParams& params, double h);

// Inverse of emh_accuracy on [0, 1]: minimal EMH hours that reach accuracy a.
// alpha = 0 admits only a in {0, 1}; other targets raise std::domain_error.
double emh_for_accuracy(const EmhAccuracyParams& params, double a);

// Recognition accuracy for a dish type with n_samples accumulated samples.
double sna_accuracy(const SnaParams& params, double n_samples);

// System accuracy of serial procedures that must all succeed.
// Empty input is the empty product, 1.
double compose_serial(const std::vector<double>& procedure_accuracies);

// Parameter set for the staff procedures of both systems plus the CV
// learning model. Defaults carry the calibrated baseline values.
struct ModelParams {
    EmhAccuracyParams inputting{1.7e-1, 0.6, 0.0};
    EmhAccuracyParams setting{6.7e-2, 0.4, 0.0};
    EmhAccuracyParams labeling{1.39e-3, 0.1, 0.0};
    EmhAccuracyParams correction{1.1e-2, 0.15, 1.1e-3};
    SnaParams sna{};
    double manual_alpha = 0.15; // pressure exponent of the manual baseline

    void validate() const;
    const EmhAccuracyParams& procedure(ProcedureKind kind) const;
    EmhAccuracyParams& procedure(ProcedureKind kind);
};

} // namespace sgc
