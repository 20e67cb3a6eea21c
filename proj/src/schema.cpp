#include "rwtc/schema.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "rwtc/detail/text.hpp"
#include "rwtc/errors.hpp"

namespace rwtc {

using detail::is_decimal_int;
using detail::split;
using detail::split_list;
using detail::trim;

std::string FieldSpec::property_source() const {
    return property ? print_expr(*property) : std::string();
}

bool FieldSpec::operator==(const FieldSpec& o) const {
    bool same_property =
        property == o.property || (property && o.property && *property == *o.property);
    return same_property && name == o.name && subsystem == o.subsystem && tipe == o.tipe &&
           unit == o.unit && interp == o.interp && advice == o.advice &&
           default_raw == o.default_raw && grid_variants == o.grid_variants &&
           none_sentinels == o.none_sentinels && required == o.required;
}

std::string CrossConstraint::expr_source() const {
    return expr ? print_expr(*expr) : std::string();
}

bool CrossConstraint::operator==(const CrossConstraint& o) const {
    bool same_expr = expr == o.expr || (expr && o.expr && *expr == *o.expr);
    return same_expr && id == o.id && description == o.description;
}

// ------------------------------------------------------------------- lift

BaseValue lift_value(const std::string& raw, const FieldSpec& spec) {
    const char* expected = rtipe_name(spec.tipe);
    switch (spec.tipe) {
        case RTipe::Int:
            if (!is_decimal_int(raw)) throw LiftError(raw, expected, "not a decimal integer");
            return BaseValue::make_int(BigInt(raw));
        case RTipe::Pos: {
            if (!is_decimal_int(raw)) throw LiftError(raw, expected, "not a decimal integer");
            BigInt v(raw);
            if (v < 1) throw LiftError(raw, expected, "must be at least 1");
            return BaseValue::make_pos(std::move(v));
        }
        case RTipe::NonNeg: {
            if (!is_decimal_int(raw)) throw LiftError(raw, expected, "not a decimal integer");
            BigInt v(raw);
            if (v < 0) throw LiftError(raw, expected, "must not be negative");
            return BaseValue::make_nonneg(std::move(v));
        }
        case RTipe::Str: return BaseValue::make_str(raw);
        case RTipe::Bool:
            if (raw == "true") return BaseValue::make_bool(true);
            if (raw == "false") return BaseValue::make_bool(false);
            throw LiftError(raw, expected, "expected exactly true or false");
        case RTipe::Float:
            try {
                return BaseValue::make_float(raw);
            } catch (const ValueError& e) {
                throw LiftError(raw, expected, e.what());
            }
        case RTipe::JavaOpts: return BaseValue::make_jvm(parse_java_opts(raw));
        case RTipe::OptionPos: {
            for (const auto& s : spec.none_sentinels)
                if (raw == s) return BaseValue::opt_pos_none();
            if (is_decimal_int(raw)) {
                BigInt v(raw);
                if (v >= 1) return BaseValue::opt_pos_some(std::move(v));
            }
            throw LiftError(raw, expected, "neither a none sentinel nor a positive integer");
        }
    }
    throw LiftError(raw, expected, "unhandled tipe");
}

std::string render_raw_for_field(const FieldSpec& spec, const BaseValue& value) {
    if (spec.tipe == RTipe::OptionPos && !value.as_opt_pos()) return spec.none_sentinels.front();
    return render_base_value(value);
}

// ------------------------------------------------------------- ConfigSchema

namespace {

// Serialized cells are pipe-delimited lines, so stored strings must stay
// clear of the framing characters.
void check_cell(const std::string& owner, const char* what, const std::string& s,
                bool list_item = false) {
    if (s.find('|') != std::string::npos || s.find('\n') != std::string::npos ||
        s.find('\r') != std::string::npos)
        throw SchemaError(owner + ": " + what + " must not contain '|' or line breaks");
    if (list_item && s.find(',') != std::string::npos)
        throw SchemaError(owner + ": " + what + " must not contain ','");
    if (trim(s) != s) throw SchemaError(owner + ": " + what + " has leading/trailing blanks");
}

}  // namespace

ConfigSchema::ConfigSchema(std::string name, std::vector<FieldSpec> fields,
                           std::vector<CrossConstraint> cross_constraints)
    : name_(std::move(name)), cross_(std::move(cross_constraints)) {
    if (trim(name_).empty()) throw SchemaError("schema name must be nonempty");

    for (auto& f : fields) {
        if (f.name.empty()) throw SchemaError("field name must be nonempty");
        check_cell(f.name, "name", f.name, true);
        check_cell(f.name, "subsystem", f.subsystem);
        check_cell(f.name, "unit", f.unit);
        check_cell(f.name, "interp", f.interp);
        check_cell(f.name, "advice", f.advice);
        if (f.subsystem.empty()) throw SchemaError(f.name + ": subsystem must be nonempty");
        if (!f.property) throw SchemaError(f.name + ": missing property");
        check_cell(f.name, "property", print_expr(*f.property));

        if (f.tipe == RTipe::OptionPos) {
            if (f.none_sentinels.empty())
                throw SchemaError(f.name + ": optpos fields need at least one none sentinel");
        } else if (!f.none_sentinels.empty()) {
            throw SchemaError(f.name + ": none sentinels only apply to optpos fields");
        }
        for (std::size_t i = 0; i < f.none_sentinels.size(); ++i) {
            const auto& s = f.none_sentinels[i];
            check_cell(f.name, "sentinel", s, true);
            if (!is_decimal_int(s))
                throw SchemaError(f.name + ": sentinel \"" + s + "\" is not an integer");
            for (std::size_t j = i + 1; j < f.none_sentinels.size(); ++j)
                if (s == f.none_sentinels[j])
                    throw SchemaError(f.name + ": duplicate sentinel \"" + s + "\"");
        }
        if (f.default_raw) check_cell(f.name, "default", *f.default_raw);
        if (f.grid_variants) {
            if (f.grid_variants->empty())
                throw SchemaError(f.name + ": variants list must not be empty");
            for (const auto& v : *f.grid_variants) check_cell(f.name, "variant", v, true);
        }

        try {
            ExprType t = typecheck_expr(*f.property, expr_type_of_rtipe(f.tipe),
                                        /*schema_types=*/{}, environment_expr_types());
            if (t != ExprType::TBool)
                throw SchemaError(f.name + ": property must be boolean, got " +
                                  expr_type_name(t));
        } catch (const ExprTypeError& e) {
            throw SchemaError(f.name + ": property: " + e.what());
        }

        std::string key = f.name;
        if (!fields_.emplace(key, std::move(f)).second)
            throw SchemaError("duplicate field " + key);
    }

    for (const auto& [n, f] : fields_) {
        if (auto t = expr_type_of_rtipe(f.tipe)) field_types_.emplace(n, *t);
    }
    {
        std::set<std::string> subs;
        for (const auto& [n, f] : fields_) subs.insert(f.subsystem);
        subsystems_.assign(subs.begin(), subs.end());
    }

    std::set<std::string> ids;
    for (const auto& c : cross_) {
        if (c.id.empty()) throw SchemaError("cross-constraint id must be nonempty");
        check_cell(c.id, "id", c.id);
        check_cell(c.id, "description", c.description);
        if (!ids.insert(c.id).second) throw SchemaError("duplicate cross-constraint " + c.id);
        if (!c.expr) throw SchemaError(c.id + ": missing expression");
        check_cell(c.id, "expression", print_expr(*c.expr));
        try {
            ExprType t = typecheck_expr(*c.expr, /*self_type=*/std::nullopt, field_types_,
                                        environment_expr_types());
            if (t != ExprType::TBool)
                throw SchemaError(c.id + ": constraint must be boolean, got " +
                                  expr_type_name(t));
        } catch (const ExprTypeError& e) {
            throw SchemaError(c.id + ": " + e.what());
        }
    }

    // Defaults must themselves be well-typed values: lift and check each one
    // against the reference platform, so a freshly loaded schema can always
    // materialize a passing per-field baseline.
    for (const auto& [n, f] : fields_) {
        if (!f.default_raw) continue;
        try {
            BaseValue v = lift_value(*f.default_raw, f);
            if (!eval_property(*f.property, v, reference_environment()))
                throw SchemaError(n + ": default \"" + *f.default_raw
                                  + "\" violates the field property");
        } catch (const LiftError& e) {
            throw SchemaError(n + ": default does not lift: " + e.what());
        } catch (const EvalError& e) {
            throw SchemaError(n + ": default property evaluation failed: " + e.what());
        }
    }
}

const FieldSpec* ConfigSchema::find_field(const std::string& name) const {
    auto it = fields_.find(name);
    return it == fields_.end() ? nullptr : &it->second;
}

const FieldSpec& ConfigSchema::field(const std::string& name) const {
    const FieldSpec* f = find_field(name);
    if (!f) throw UnknownFieldError(name);
    return *f;
}

bool ConfigSchema::operator==(const ConfigSchema& o) const {
    return name_ == o.name_ && fields_ == o.fields_ && cross_ == o.cross_;
}

FieldExplanation explain_field(const ConfigSchema& schema, const std::string& name) {
    const FieldSpec& f = schema.field(name);
    FieldExplanation out;
    out.name = f.name;
    out.subsystem = f.subsystem;
    out.tipe = f.tipe;
    out.property_text = f.property_source();
    out.unit = f.unit;
    out.interp = f.interp;
    out.advice = f.advice;
    out.default_raw = f.default_raw;
    return out;
}

// ---------------------------------------------------------------- manifest

ConfigSchema parse_schema_manifest(const std::string& text, const std::string& name,
                                   const std::string& origin) {
    enum class Section { None, Fields, Cross };
    Section section = Section::None;
    std::vector<FieldSpec> fields;
    std::vector<CrossConstraint> cross;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto where = [&] { return origin + ":" + std::to_string(lineno) + ": "; };
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t == "[fields]") {
            section = Section::Fields;
            continue;
        }
        if (t == "[cross]") {
            section = Section::Cross;
            continue;
        }
        if (t[0] == '[') throw SchemaError(where() + "unknown section " + t);
        if (section == Section::None) throw SchemaError(where() + "row before any section");

        std::vector<std::string> cells = split(t, '|');
        for (auto& c : cells) c = trim(c);

        if (section == Section::Fields) {
            if (cells.size() != 11)
                throw SchemaError(where() + "field rows need 11 cells, got " +
                                  std::to_string(cells.size()));
            FieldSpec f;
            f.name = cells[0];
            f.subsystem = cells[1];
            auto tipe = rtipe_from_name(cells[2]);
            if (!tipe) throw SchemaError(where() + "unknown tipe tag \"" + cells[2] + "\"");
            f.tipe = *tipe;
            const std::string prop = cells[3].empty() ? "true" : cells[3];
            try {
                f.property = parse_expr(prop);
            } catch (const ExprParseError& e) {
                throw SchemaError(where() + f.name + ": " + e.what());
            }
            f.unit = cells[4];
            f.interp = cells[5];
            f.advice = cells[6];
            if (!cells[7].empty()) f.default_raw = cells[7];
            if (!cells[8].empty()) {
                auto variants = split_list(cells[8]);
                if (variants.empty())
                    throw SchemaError(where() + f.name + ": variants cell holds no items");
                f.grid_variants = std::move(variants);
            }
            f.none_sentinels = split_list(cells[9]);
            if (cells[10].empty() || cells[10] == "false")
                f.required = false;
            else if (cells[10] == "true")
                f.required = true;
            else
                throw SchemaError(where() + f.name + ": required must be true or false");
            fields.push_back(std::move(f));
        } else {
            if (cells.size() != 3)
                throw SchemaError(where() + "cross rows need 3 cells, got " +
                                  std::to_string(cells.size()));
            CrossConstraint c;
            c.id = cells[0];
            if (cells[1].empty()) throw SchemaError(where() + c.id + ": missing expression");
            try {
                c.expr = parse_expr(cells[1]);
            } catch (const ExprParseError& e) {
                throw SchemaError(where() + c.id + ": " + e.what());
            }
            c.description = cells[2];
            cross.push_back(std::move(c));
        }
    }
    return ConfigSchema(name, std::move(fields), std::move(cross));
}

ConfigSchema load_schema(const std::filesystem::path& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw IoError("cannot open schema manifest " + manifest_path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_schema_manifest(buf.str(), manifest_path.stem().string(),
                                 manifest_path.string());
}

std::string serialize_schema(const ConfigSchema& schema) {
    std::ostringstream out;
    out << "# name|subsystem|tipe|property|unit|interp|advice|default|variants|sentinels|required\n";
    out << "[fields]\n";
    auto join = [](const std::vector<std::string>& items) {
        std::string s;
        for (std::size_t i = 0; i < items.size(); ++i) {
            if (i) s += ",";
            s += items[i];
        }
        return s;
    };
    for (const auto& [name, f] : schema.fields()) {
        out << name << '|' << f.subsystem << '|' << rtipe_name(f.tipe) << '|'
            << f.property_source() << '|' << f.unit << '|' << f.interp << '|' << f.advice << '|'
            << (f.default_raw ? *f.default_raw : "") << '|'
            << (f.grid_variants ? join(*f.grid_variants) : "") << '|' << join(f.none_sentinels)
            << '|' << (f.required ? "true" : "false") << '\n';
    }
    out << "[cross]\n";
    for (const auto& c : schema.cross_constraints())
        out << c.id << '|' << c.expr_source() << '|' << c.description << '\n';
    return out.str();
}

}  // namespace rwtc
