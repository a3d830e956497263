#include "sgc/scenario.hpp"

#include "sgc/csv.hpp"
#include "sgc/errors.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace sgc {

namespace {

std::string trim(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = text.find_last_not_of(" \t\r");
    return text.substr(begin, end - begin + 1);
}

struct KeyContext {
    std::string key;
    std::string value;
    int line = 0;

    [[noreturn]] void fail(const std::string& reason) const {
        throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                          "' " + reason);
    }

    double number() const {
        try {
            size_t used = 0;
            const double parsed = std::stod(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
            return parsed;
        } catch (const std::exception&) {
            fail("expects a number, got '" + value + "'");
        }
    }
};

using Handler = std::function<void(ScenarioConfig&, const KeyContext&)>;
using SectionMap = std::map<std::string, std::map<std::string, Handler>>;

Handler number_key(std::function<void(ScenarioConfig&, double)> set) {
    return [set = std::move(set)](ScenarioConfig& config, const KeyContext& ctx) {
        set(config, ctx.number());
    };
}

SectionMap build_schema() {
    SectionMap schema;

    const auto profile_key = [](double CanteenProfile::* field) {
        return number_key(
            [field](ScenarioConfig& c, double v) { c.profile.*field = v; });
    };
    auto& canteen = schema["canteen"];
    canteen["t_types"] = profile_key(&CanteenProfile::t_types);
    canteen["n_per_type"] = profile_key(&CanteenProfile::n_per_type);
    canteen["f_new"] = profile_key(&CanteenProfile::f_new);
    canteen["r_rotation"] = profile_key(&CanteenProfile::r_rotation);
    canteen["customers"] = profile_key(&CanteenProfile::customers);
    canteen["wage"] = profile_key(&CanteenProfile::wage);
    canteen["checkout_velocity"] = profile_key(&CanteenProfile::checkout_velocity);
    canteen["plate_price"] = profile_key(&CanteenProfile::plate_price);
    canteen["plate_loss_rate"] = profile_key(&CanteenProfile::plate_loss_rate);
    canteen["samples_per_new_type"] =
        profile_key(&CanteenProfile::samples_per_new_type);
    canteen["sample_emh"] = profile_key(&CanteenProfile::sample_emh);
    canteen["manual_record_emh"] = profile_key(&CanteenProfile::manual_record_emh);
    canteen["auto_sample_rate"] = profile_key(&CanteenProfile::auto_sample_rate);

    const auto procedure_section = [&schema](const std::string& name,
                                             ProcedureKind kind) {
        auto& section = schema["procedure." + name];
        section["s_standard"] = number_key([kind](ScenarioConfig& c, double v) {
            c.model.procedure(kind).s_standard = v;
        });
        section["alpha"] = [kind](ScenarioConfig& c, const KeyContext& ctx) {
            const double v = ctx.number();
            if (!(v >= 0.0 && v <= 1.0)) {
                ctx.fail("must be within the range [0, 1]");
            }
            c.model.procedure(kind).alpha = v;
        };
        section["offset"] = number_key([kind](ScenarioConfig& c, double v) {
            c.model.procedure(kind).offset = v;
        });
    };
    procedure_section("inputting", ProcedureKind::Inputting);
    procedure_section("setting", ProcedureKind::Setting);
    procedure_section("labeling", ProcedureKind::Labeling);
    procedure_section("correction", ProcedureKind::Correction);

    auto& sna = schema["sna"];
    sna["upper_bound"] = number_key(
        [](ScenarioConfig& c, double v) { c.model.sna.upper_bound = v; });
    sna["beta"] = [](ScenarioConfig& c, const KeyContext& ctx) {
        if (ctx.value == "auto") {
            c.beta_given = false;
            return;
        }
        c.model.sna.beta = ctx.number();
        c.beta_given = true;
    };
    sna["variant"] = [](ScenarioConfig& c, const KeyContext& ctx) {
        if (ctx.value == "literal") {
            c.model.sna.variant = SnaVariant::Literal;
        } else if (ctx.value == "zero_anchored") {
            c.model.sna.variant = SnaVariant::ZeroAnchored;
        } else {
            ctx.fail("expects 'literal' or 'zero_anchored'");
        }
    };
    sna["calibration_target"] = number_key(
        [](ScenarioConfig& c, double v) { c.calibration_target = v; });
    sna["manual_alpha"] = number_key(
        [](ScenarioConfig& c, double v) { c.model.manual_alpha = v; });

    auto& simulation = schema["simulation"];
    simulation["meals"] = [](ScenarioConfig& c, const KeyContext& ctx) {
        const double v = ctx.number();
        if (v < 1.0) ctx.fail("must be >= 1");
        c.n_meals = static_cast<int>(v);
    };
    simulation["mode"] = [](ScenarioConfig& c, const KeyContext& ctx) {
        if (ctx.value == "deterministic") {
            c.sim.mode = RngMode::Deterministic;
        } else if (ctx.value == "seeded") {
            c.sim.mode = RngMode::Seeded;
        } else {
            ctx.fail("expects 'deterministic' or 'seeded'");
        }
    };
    simulation["seed"] = number_key([](ScenarioConfig& c, double v) {
        c.sim.seed = static_cast<std::uint64_t>(v);
    });

    auto& prices = schema["prices"];
    prices["catalog"] = [](ScenarioConfig& c, const KeyContext& ctx) {
        c.catalog = load_price_catalog(ctx.value);
    };

    return schema;
}

} // namespace

void ScenarioConfig::ensure_calibrated() {
    if (!beta_given) {
        model.sna.beta =
            calibrate_beta(profile, model, calibration_target, n_meals);
    }
}

ScenarioConfig default_scenario() {
    ScenarioConfig config;
    config.catalog = default_price_catalog(config.profile.plate_price);
    return config;
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open scenario '" + path + "'");
    }
    static const SectionMap schema = build_schema();

    ScenarioConfig config = default_scenario();
    std::string section;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line.erase(comment);
        const std::string text = trim(line);
        if (text.empty()) continue;
        if (text.front() == '[') {
            if (text.back() != ']') {
                throw ConfigError("line " + std::to_string(line_no) +
                                  ": unterminated section header");
            }
            section = trim(text.substr(1, text.size() - 2));
            if (section != "study" && schema.find(section) == schema.end()) {
                throw ConfigError("line " + std::to_string(line_no) +
                                  ": unknown section '" + section + "'");
            }
            continue;
        }
        const auto equals = text.find('=');
        if (equals == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) +
                              ": expected key = value");
        }
        KeyContext ctx{trim(text.substr(0, equals)), trim(text.substr(equals + 1)),
                       line_no};
        if (section.empty()) {
            throw ConfigError("line " + std::to_string(line_no) + ": key '" +
                              ctx.key + "' appears before any section");
        }
        if (section == "study") {
            config.study[ctx.key] = ctx.value;
            continue;
        }
        const auto& keys = schema.at(section);
        const auto handler = keys.find(ctx.key);
        if (handler == keys.end()) {
            throw ConfigError("line " + std::to_string(line_no) +
                              ": unknown key '" + ctx.key + "' in section [" +
                              section + "]");
        }
        handler->second(config, ctx);
    }

    config.profile.validate();
    config.model.validate();
    if (!(config.calibration_target > 0.0 &&
          config.calibration_target < config.model.sna.upper_bound)) {
        throw ConfigError("calibration_target must lie within (0, upper_bound)");
    }
    return config;
}

std::string effective_config_echo(const ScenarioConfig& config) {
    std::ostringstream out;
    const auto& p = config.profile;
    out << "[canteen] t_types=" << format_number(p.t_types, 6)
        << " n_per_type=" << format_number(p.n_per_type, 6)
        << " f_new=" << format_number(p.f_new, 6)
        << " r_rotation=" << format_number(p.r_rotation, 6)
        << " customers=" << format_number(p.customers, 6) << '\n'
        << "[economics] wage=" << format_number(p.wage, 6)
        << " checkout_velocity=" << format_number(p.checkout_velocity, 6)
        << " plate_price=" << format_number(p.plate_price, 6)
        << " plate_loss_rate=" << format_number(p.plate_loss_rate, 6) << '\n'
        << "[sampling] samples_per_new_type="
        << format_number(p.samples_per_new_type, 6)
        << " sample_emh=" << format_number(p.sample_emh, 6)
        << " auto_sample_rate=" << format_number(p.auto_sample_rate, 6)
        << " manual_record_emh=" << format_number(p.manual_record_emh, 6) << '\n';
    const auto procedure = [&](const char* name, const EmhAccuracyParams& params) {
        out << "[procedure." << name
            << "] s_standard=" << format_number(params.s_standard, 6)
            << " alpha=" << format_number(params.alpha, 6)
            << " offset=" << format_number(params.offset, 6) << '\n';
    };
    procedure("inputting", config.model.inputting);
    procedure("setting", config.model.setting);
    procedure("labeling", config.model.labeling);
    procedure("correction", config.model.correction);
    out << "[sna] upper_bound=" << format_number(config.model.sna.upper_bound, 6)
        << " beta=" << format_number(config.model.sna.beta, 9)
        << (config.beta_given ? " (pinned)" : " (calibrated)") << " variant="
        << (config.model.sna.variant == SnaVariant::Literal ? "literal"
                                                            : "zero_anchored")
        << '\n'
        << "[simulation] meals=" << config.n_meals << " mode="
        << (config.sim.mode == RngMode::Deterministic ? "deterministic" : "seeded")
        << " seed=" << config.sim.seed << '\n';
    return out.str();
}

PriceCatalog resolve_price_catalog(const ScenarioConfig& config) {
    if (const char* env = std::getenv("SGC_PRICE_CATALOG");
        env != nullptr && *env != '\0') {
        return load_price_catalog(env);
    }
    return config.catalog;
}

} // namespace sgc
