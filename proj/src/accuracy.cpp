#include "sgc/accuracy.hpp"

#include "sgc/errors.hpp"

#include <algorithm>
#include <cmath>

namespace sgc {

void EmhAccuracyParams::validate(const std::string& name) const {
    if (!(s_standard > 0.0)) {
        throw ConfigError(name + ": s_standard must be > 0");
    }
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw ConfigError(name + ": alpha must be within [0, 1]");
    }
    if (!(offset >= 0.0)) {
        throw ConfigError(name + ": offset must be >= 0");
    }
}

void SnaParams::validate() const {
    if (!(upper_bound > 0.0 && upper_bound <= 1.0)) {
        throw ConfigError("sna: upper_bound must be within (0, 1]");
    }
    if (!(beta > 0.0)) {
        throw ConfigError("sna: beta must be > 0");
    }
}

const char* to_string(ProcedureKind kind) {
    switch (kind) {
    case ProcedureKind::Inputting: return "inputting";
    case ProcedureKind::Setting: return "setting";
    case ProcedureKind::Labeling: return "labeling";
    case ProcedureKind::Correction: return "correction";
    case ProcedureKind::Sampling: return "sampling";
    }
    return "unknown";
}

double emh_accuracy(const EmhAccuracyParams& params, double h) {
    params.validate();
    if (!(h >= 0.0)) {
        throw UsageError("emh_accuracy: h must be >= 0");
    }
    const double base = (h - params.offset) / params.s_standard;
    if (base <= 0.0) {
        return 0.0;
    }
    if (base >= 1.0) {
        return 1.0;
    }
    // alpha = 0 degenerates to a step: any effort past the offset succeeds.
    if (params.alpha == 0.0) {
        return 1.0;
    }
    return std::pow(base, params.alpha);
}

double emh_for_accuracy(const EmhAccuracyParams& params, double a) {
    params.validate();
    if (!(a >= 0.0 && a <= 1.0)) {
        throw UsageError("emh_for_accuracy: accuracy must be within [0, 1]");
    }
    if (a == 0.0) {
        return params.offset;
    }
    if (a == 1.0) {
        return params.full_cost();
    }
    if (params.alpha == 0.0) {
        throw std::domain_error(
            "emh_for_accuracy: inverse undefined for alpha = 0 with 0 < a < 1");
    }
    return params.offset + params.s_standard * std::pow(a, 1.0 / params.alpha);
}

double sna_accuracy(const SnaParams& params, double n_samples) {
    params.validate();
    if (!(n_samples >= 0.0)) {
        throw UsageError("sna_accuracy: n_samples must be >= 0");
    }
    const double sigmoid = 1.0 / (1.0 + std::exp(-params.beta * n_samples));
    if (params.variant == SnaVariant::Literal) {
        return params.upper_bound * sigmoid;
    }
    return params.upper_bound * (2.0 * sigmoid - 1.0);
}

double compose_serial(const std::vector<double>& procedure_accuracies) {
    double product = 1.0;
    for (double a : procedure_accuracies) {
        if (!(a >= 0.0 && a <= 1.0)) {
            throw UsageError("compose_serial: accuracies must be within [0, 1]");
        }
        product *= a;
    }
    return product;
}

void ModelParams::validate() const {
    inputting.validate("inputting");
    setting.validate("setting");
    labeling.validate("labeling");
    correction.validate("correction");
    sna.validate();
    if (!(manual_alpha > 0.0 && manual_alpha <= 1.0)) {
        throw ConfigError("manual_alpha must be within (0, 1]");
    }
}

const EmhAccuracyParams& ModelParams::procedure(ProcedureKind kind) const {
    switch (kind) {
    case ProcedureKind::Inputting: return inputting;
    case ProcedureKind::Setting: return setting;
    case ProcedureKind::Labeling: return labeling;
    case ProcedureKind::Correction: return correction;
    default: break;
    }
    throw UsageError("no power-law parameters for the sampling procedure");
}

EmhAccuracyParams& ModelParams::procedure(ProcedureKind kind) {
    return const_cast<EmhAccuracyParams&>(
        static_cast<const ModelParams*>(this)->procedure(kind));
}

} // namespace sgc
