#include "rwtc/values.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

namespace rwtc {

const char* rtipe_name(RTipe t) {
    switch (t) {
        case RTipe::Int: return "int";
        case RTipe::Pos: return "pos";
        case RTipe::NonNeg: return "nonneg";
        case RTipe::Str: return "str";
        case RTipe::Bool: return "bool";
        case RTipe::Float: return "float";
        case RTipe::JavaOpts: return "javaopts";
        case RTipe::OptionPos: return "optpos";
    }
    return "?";
}

std::optional<RTipe> rtipe_from_name(const std::string& name) {
    if (name == "int") return RTipe::Int;
    if (name == "pos") return RTipe::Pos;
    if (name == "nonneg") return RTipe::NonNeg;
    if (name == "str") return RTipe::Str;
    if (name == "bool") return RTipe::Bool;
    if (name == "float") return RTipe::Float;
    if (name == "javaopts") return RTipe::JavaOpts;
    if (name == "optpos") return RTipe::OptionPos;
    return std::nullopt;
}

JavaOptsRec JavaOptsRec::create(BigInt init_heap_mb, BigInt max_heap_mb,
                                std::vector<std::string> extra_flags) {
    if (init_heap_mb < 1 || max_heap_mb < 1)
        throw ValueError("JVM heap sizes must be at least 1 MB");
    if (init_heap_mb > max_heap_mb)
        throw ValueError("initial heap " + init_heap_mb.str() + "m exceeds maximum heap " +
                         max_heap_mb.str() + "m");
    for (const auto& flag : extra_flags) {
        if (flag.rfind("-Xms", 0) == 0 || flag.rfind("-Xmx", 0) == 0)
            throw ValueError("heap-size token \"" + flag + "\" is not allowed in extra flags");
    }
    JavaOptsRec rec;
    rec.init_heap_mb_ = std::move(init_heap_mb);
    rec.max_heap_mb_ = std::move(max_heap_mb);
    rec.extra_flags_ = std::move(extra_flags);
    return rec;
}

FloatValue FloatValue::parse(const std::string& text) {
    // Manual scan: strtod is too permissive (hex, inf, nan).
    std::size_t i = 0;
    const std::size_t n = text.size();
    auto digits = [&] {
        std::size_t start = i;
        while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        return i > start;
    };
    if (i < n && (text[i] == '+' || text[i] == '-')) ++i;
    bool int_part = digits();
    bool frac_part = false;
    if (i < n && text[i] == '.') {
        ++i;
        frac_part = digits();
    }
    if (!int_part && !frac_part)
        throw ValueError("\"" + text + "\" is not a decimal literal");
    if (i < n && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        if (i < n && (text[i] == '+' || text[i] == '-')) ++i;
        if (!digits()) throw ValueError("\"" + text + "\" has a malformed exponent");
    }
    if (i != n) throw ValueError("\"" + text + "\" is not a decimal literal");

    FloatValue f;
    f.text_ = text;
    f.value_ = std::strtod(text.c_str(), nullptr);
    return f;
}

bool FloatValue::operator==(const FloatValue& other) const {
    double d = value_ - other.value_;
    return d <= 1e-9 && d >= -1e-9;
}

BaseValue BaseValue::make_int(BigInt v) { return {RTipe::Int, std::move(v)}; }

BaseValue BaseValue::make_pos(BigInt v) {
    if (v < 1) throw ValueError(v.str() + " is not a positive integer");
    return {RTipe::Pos, std::move(v)};
}

BaseValue BaseValue::make_nonneg(BigInt v) {
    if (v < 0) throw ValueError(v.str() + " is negative");
    return {RTipe::NonNeg, std::move(v)};
}

BaseValue BaseValue::make_str(std::string s) { return {RTipe::Str, std::move(s)}; }

BaseValue BaseValue::make_bool(bool b) { return {RTipe::Bool, b}; }

BaseValue BaseValue::make_float(const std::string& decimal_text) {
    return {RTipe::Float, FloatValue::parse(decimal_text)};
}

BaseValue BaseValue::make_jvm(JavaOptsRec opts) { return {RTipe::JavaOpts, std::move(opts)}; }

BaseValue BaseValue::opt_pos_none() {
    return {RTipe::OptionPos, std::optional<BigInt>{}};
}

BaseValue BaseValue::opt_pos_some(BigInt v) {
    if (v < 1) throw ValueError(v.str() + " is not a positive integer");
    return {RTipe::OptionPos, std::optional<BigInt>{std::move(v)}};
}

const BigInt& BaseValue::as_int() const { return std::get<BigInt>(payload_); }
const std::string& BaseValue::as_str() const { return std::get<std::string>(payload_); }
bool BaseValue::as_bool() const { return std::get<bool>(payload_); }
const FloatValue& BaseValue::as_float() const { return std::get<FloatValue>(payload_); }
const JavaOptsRec& BaseValue::as_jvm() const { return std::get<JavaOptsRec>(payload_); }
const std::optional<BigInt>& BaseValue::as_opt_pos() const {
    return std::get<std::optional<BigInt>>(payload_);
}

bool BaseValue::operator==(const BaseValue& other) const {
    return tipe_ == other.tipe_ && payload_ == other.payload_;
}

namespace {

// Heap token body after "-Xms"/"-Xmx": positive decimal integer plus one
// unit letter from {k,K,m,M,g,G}. Returns megabytes.
BigInt parse_heap_size(const std::string& token, const std::string& raw) {
    const std::string body = token.substr(4);
    if (body.size() < 2)
        throw LiftError(raw, "javaopts", "malformed heap token \"" + token + "\"");
    const char unit = body.back();
    const std::string num = body.substr(0, body.size() - 1);
    for (char c : num) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw LiftError(raw, "javaopts", "malformed heap size in \"" + token + "\"");
    }
    BigInt n(num);
    if (n < 1)
        throw LiftError(raw, "javaopts", "heap size must be positive in \"" + token + "\"");
    switch (unit) {
        case 'k': case 'K': return (n + 1023) / 1024;
        case 'm': case 'M': return n;
        case 'g': case 'G': return n * 1024;
        default:
            throw LiftError(raw, "javaopts",
                            std::string("unknown heap unit '") + unit + "' in \"" + token + "\"");
    }
}

}  // namespace

JavaOptsRec parse_java_opts(const std::string& raw) {
    std::vector<std::string> tokens;
    std::istringstream in(raw);
    for (std::string tok; in >> tok;) tokens.push_back(tok);

    std::optional<BigInt> init_mb;
    std::optional<BigInt> max_mb;
    std::vector<std::string> extra;
    for (const auto& tok : tokens) {
        if (tok.rfind("-Xms", 0) == 0) {
            if (init_mb) throw LiftError(raw, "javaopts", "duplicate -Xms token");
            init_mb = parse_heap_size(tok, raw);
        } else if (tok.rfind("-Xmx", 0) == 0) {
            if (max_mb) throw LiftError(raw, "javaopts", "duplicate -Xmx token");
            max_mb = parse_heap_size(tok, raw);
        } else {
            extra.push_back(tok);
        }
    }
    if (!init_mb) throw LiftError(raw, "javaopts", "missing -Xms token");
    if (!max_mb) throw LiftError(raw, "javaopts", "missing -Xmx token");
    try {
        return JavaOptsRec::create(std::move(*init_mb), std::move(*max_mb), std::move(extra));
    } catch (const ValueError& e) {
        throw LiftError(raw, "javaopts", e.what());
    }
}

std::string render_base_value(const BaseValue& v) {
    switch (v.tipe()) {
        case RTipe::Int:
        case RTipe::Pos:
        case RTipe::NonNeg:
            return v.as_int().str();
        case RTipe::Str:
            return v.as_str();
        case RTipe::Bool:
            return v.as_bool() ? "true" : "false";
        case RTipe::Float:
            return v.as_float().text();
        case RTipe::JavaOpts: {
            const auto& jvm = v.as_jvm();
            std::string out =
                "-Xms" + jvm.init_heap_mb().str() + "m -Xmx" + jvm.max_heap_mb().str() + "m";
            for (const auto& flag : jvm.extra_flags()) {
                out += ' ';
                out += flag;
            }
            return out;
        }
        case RTipe::OptionPos: {
            const auto& opt = v.as_opt_pos();
            return opt ? opt->str() : "none";
        }
    }
    return {};
}

}  // namespace rwtc
