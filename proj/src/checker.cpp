#include "rwtc/checker.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "rwtc/errors.hpp"

namespace rwtc {

namespace {

Diagnostic property_violation(const FieldSpec& spec, const BaseValue& value,
                              const std::string& cause) {
    std::string msg = "value \"" + render_base_value(value) + "\" violates \"" +
                      spec.property_source() + "\"";
    if (!cause.empty()) msg += ": " + cause;
    return make_diagnostic(DiagnosticKind::PropertyViolation, spec.name, std::move(msg));
}

}  // namespace

std::variant<CertifiedField, Diagnostic> check_field(const FieldSpec& spec,
                                                     const std::string& raw, bool final_flag,
                                                     const Environment& env) {
    std::optional<BaseValue> value;
    try {
        value = lift_value(raw, spec);
    } catch (const LiftError& e) {
        return make_diagnostic(DiagnosticKind::LiftFailure, spec.name, e.what());
    }
    try {
        if (!eval_property(*spec.property, *value, env))
            return property_violation(spec, *value, "");
    } catch (const EvalError& e) {
        return property_violation(spec, *value, e.what());
    }
    return CertifiedField{spec.name, final_flag, std::move(*value),
                          Evidence{spec.property_source(), true, env.fingerprint()}};
}

CheckReport check_config(const ConfigSchema& schema, const RawConfig& raw, const Environment& env,
                         std::vector<Diagnostic> carried_warnings, std::string config_id) {
    const auto start = std::chrono::steady_clock::now();

    CheckReport report;
    report.config_id = std::move(config_id);
    report.diagnostics = std::move(carried_warnings);

    // Values that lifted, certified or not: cross constraints see every
    // lifted value, while certificates exist only for property passes.
    std::map<std::string, BaseValue> view;
    std::map<std::string, CertifiedField> certified_fields;
    const std::string env_print = env.fingerprint();

    for (const auto& [name, spec] : schema.fields()) {
        const RawEntry* entry = raw.find(name);
        const std::string* raw_value = nullptr;
        if (entry)
            raw_value = &entry->raw_value;
        else if (spec.default_raw)
            raw_value = &*spec.default_raw;
        if (!raw_value) {
            if (spec.required)
                report.diagnostics.push_back(make_diagnostic(
                    DiagnosticKind::MissingField, name,
                    "required field is absent and has no default"));
            continue;
        }
        bool final_flag = entry ? entry->final_flag : false;

        try {
            BaseValue value = lift_value(*raw_value, spec);
            view.emplace(name, value);
            try {
                if (eval_property(*spec.property, value, env)) {
                    certified_fields.emplace(
                        name, CertifiedField{name, final_flag, std::move(value),
                                             Evidence{spec.property_source(), true, env_print}});
                } else {
                    report.diagnostics.push_back(property_violation(spec, value, ""));
                }
            } catch (const EvalError& e) {
                report.diagnostics.push_back(property_violation(spec, value, e.what()));
            }
        } catch (const LiftError& e) {
            report.diagnostics.push_back(
                make_diagnostic(DiagnosticKind::LiftFailure, name, e.what()));
        }
    }

    std::vector<CrossEvidence> cross_evidence;
    for (const auto& c : schema.cross_constraints()) {
        try {
            EvalValue verdict = eval_expr(*c.expr, std::nullopt, view, env);
            if (std::get<bool>(verdict.v)) {
                cross_evidence.push_back(CrossEvidence{c.id, true});
            } else {
                report.diagnostics.push_back(make_diagnostic(
                    DiagnosticKind::CrossFieldViolation, c.id,
                    "constraint \"" + c.expr_source() + "\" violated" +
                        (c.description.empty() ? "" : " (" + c.description + ")")));
            }
        } catch (const EvalError& e) {
            const char* cause = e.kind == EvalError::Kind::UnresolvedFieldRef
                                    ? "unresolved: "
                                    : "evaluation failed: ";
            report.diagnostics.push_back(make_diagnostic(DiagnosticKind::CrossFieldViolation,
                                                         c.id, cause + std::string(e.what())));
        }
    }

    for (const auto& entry : raw.entries()) {
        if (!schema.find_field(entry.name))
            report.diagnostics.push_back(make_diagnostic(DiagnosticKind::UnknownField, entry.name,
                                                         "field is not described by the schema"));
    }

    bool any_hard = false;
    for (const auto& d : report.diagnostics) {
        ++report.counts[d.kind];
        if (diagnostic_is_hard(d.kind)) any_hard = true;
    }
    if (!any_hard)
        report.certified = CertifiedConfig{schema.name(), std::move(certified_fields),
                                           std::move(cross_evidence), env};

    report.check_duration_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

RawConfig certified_to_raw(const CertifiedConfig& certified, const ConfigSchema& schema) {
    RawConfig out;
    std::size_t ordinal = 0;
    for (const auto& [name, cf] : certified.fields) {
        const FieldSpec& spec = schema.field(name);
        out.add(RawEntry{name, render_raw_for_field(spec, cf.value), cf.final_flag,
                         SourceRef{"<certified>", ordinal++}});
    }
    return out;
}

namespace {

double round_ms(double seconds) { return std::round(seconds * 1000.0) / 1000.0; }

}  // namespace

std::string report_to_text(const CheckReport& report) {
    std::ostringstream out;
    out << (report.config_id.empty() ? "<config>" : report.config_id) << ": "
        << (report.passed() ? "PASS" : "FAIL") << '\n';
    for (const auto& d : report.diagnostics)
        out << "  [" << diagnostic_kind_name(d.kind) << "] " << d.subject << ": " << d.message
            << '\n';
    if (report.passed())
        out << "  certified " << report.certified->fields.size() << " fields, "
            << report.certified->cross_evidence.size() << " cross constraints\n";
    out << "  checked in " << round_ms(report.check_duration_s) << " s\n";
    return out.str();
}

std::string report_to_json(const CheckReport& report) {
    nlohmann::json j;
    j["config"] = report.config_id;
    j["pass"] = report.passed();
    j["duration_s"] = round_ms(report.check_duration_s);
    nlohmann::json counts = nlohmann::json::object();
    for (const auto& [kind, n] : report.counts) counts[diagnostic_kind_name(kind)] = n;
    j["counts"] = counts;
    j["diagnostics"] = nlohmann::json::array();
    for (const auto& d : report.diagnostics)
        j["diagnostics"].push_back({{"kind", diagnostic_kind_name(d.kind)},
                                    {"subject", d.subject},
                                    {"message", d.message}});
    if (report.passed()) {
        const CertifiedConfig& c = *report.certified;
        nlohmann::json fields = nlohmann::json::array();
        for (const auto& [name, cf] : c.fields)
            fields.push_back({{"name", name},
                              {"tipe", rtipe_name(cf.value.tipe())},
                              {"value", render_base_value(cf.value)},
                              {"final", cf.final_flag},
                              {"property", cf.evidence.property_source}});
        nlohmann::json cross = nlohmann::json::array();
        for (const auto& ce : c.cross_evidence) cross.push_back(ce.constraint_id);
        j["certified"] = {{"schema", c.schema_name},
                          {"env_fingerprint", c.environment.fingerprint()},
                          {"fields", fields},
                          {"cross", cross}};
    }
    return j.dump(2) + "\n";
}

}  // namespace rwtc
