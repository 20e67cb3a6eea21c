#include "rwtc/search.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rwtc/detail/text.hpp"
#include "rwtc/errors.hpp"
#include "rwtc/site.hpp"

namespace rwtc {

namespace {

void push_unique(std::vector<std::string>& out, std::string v) {
    for (const auto& existing : out)
        if (existing == v) return;
    out.push_back(std::move(v));
}

// value * mult / 10 rounded half away from zero, as decimal text.
std::string scale_integer(const BigInt& value, int mult) {
    BigInt num = value * mult;
    BigInt q = (num + (num < 0 ? -5 : 5)) / 10;
    return q.str();
}

// value * mult / 10 in exact decimal arithmetic (no binary rounding), as
// canonical decimal text. `text` is a decimal literal that already lifted.
std::string scale_decimal(const std::string& text, int mult) {
    std::size_t i = 0;
    bool neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        neg = text[i] == '-';
        ++i;
    }
    std::string mantissa;
    long exp10 = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        mantissa.push_back(text[i++]);
    if (i < text.size() && text[i] == '.') {
        ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            mantissa.push_back(text[i++]);
            --exp10;
        }
    }
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            eneg = text[i] == '-';
            ++i;
        }
        long e = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
            e = e * 10 + (text[i++] - '0');
        exp10 += eneg ? -e : e;
    }
    exp10 -= 1;  // the / 10

    BigInt m(mantissa.empty() ? "0" : mantissa);
    m *= mult;
    if (m == 0) return "0";
    std::string s = m.str();
    if (exp10 >= 0) {
        s.append(static_cast<std::size_t>(exp10), '0');
    } else {
        std::size_t shift = static_cast<std::size_t>(-exp10);
        if (s.size() <= shift) s.insert(0, shift - s.size() + 1, '0');
        s.insert(s.size() - shift, ".");
        while (s.back() == '0') s.pop_back();
        if (s.back() == '.') s.pop_back();
    }
    return neg ? "-" + s : s;
}

std::vector<std::string> derive_variants(const FieldSpec& f) {
    auto need_default = [&]() -> const std::string& {
        if (!f.default_raw)
            throw SchemaError(f.name + ": cannot derive grid candidates without a default");
        return *f.default_raw;
    };
    std::vector<std::string> out;
    switch (f.tipe) {
        case RTipe::Bool: return {"true", "false"};
        case RTipe::OptionPos:
            for (const auto& s : f.none_sentinels) push_unique(out, s);
            for (const char* s : {"1", "2", "4"}) push_unique(out, s);
            return out;
        case RTipe::Int:
        case RTipe::Pos:
        case RTipe::NonNeg: {
            BigInt d(need_default());
            for (int mult : {8, 9, 10, 11, 12}) push_unique(out, scale_integer(d, mult));
            return out;
        }
        case RTipe::Float: {
            const std::string& d = need_default();
            for (int mult : {8, 9, 10, 11, 12}) push_unique(out, scale_decimal(d, mult));
            return out;
        }
        case RTipe::Str:
        case RTipe::JavaOpts: return {need_default()};
    }
    throw SchemaError(f.name + ": unhandled tipe in grid derivation");
}

}  // namespace

Grid build_grid(const ConfigSchema& schema,
                const std::map<std::string, std::vector<std::string>>& overrides,
                std::uint64_t seed, std::size_t sample_count) {
    if (sample_count < 1) throw ValueError("sample_count must be at least 1");
    for (const auto& [name, list] : overrides) {
        if (!schema.find_field(name)) throw SchemaError("override for unknown field " + name);
        if (list.empty()) throw SchemaError("override for " + name + " holds no candidates");
    }
    Grid grid;
    grid.seed = seed;
    grid.sample_count = sample_count;
    for (const auto& [name, spec] : schema.fields()) {
        auto it = overrides.find(name);
        std::vector<std::string> candidates = it != overrides.end() ? it->second
                                              : spec.grid_variants   ? *spec.grid_variants
                                                                     : derive_variants(spec);
        grid.fields.emplace_back(name, std::move(candidates));
    }
    return grid;
}

std::vector<RawConfig> sample_candidates(const Grid& grid) {
    std::vector<RawConfig> out;
    out.reserve(grid.sample_count);
    SplitMix64 rng(grid.seed);
    for (std::size_t k = 0; k < grid.sample_count; ++k) {
        RawConfig config;
        std::string origin = "<candidate-" + std::to_string(k) + ">";
        std::size_t ordinal = 0;
        for (const auto& [name, candidates] : grid.fields) {
            const std::string& pick = candidates[rng.next() % candidates.size()];
            config.add(RawEntry{name, pick, false, SourceRef{origin, ordinal++}});
        }
        out.push_back(std::move(config));
    }
    return out;
}

namespace {

std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 1469598103934665603ull) {
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

double log2_penalty(const RawConfig& config, const char* name, double sweet_spot,
                    double weight) {
    const RawEntry* e = config.find(name);
    if (!e || !detail::is_decimal_int(e->raw_value)) return 0.0;
    BigInt v(e->raw_value);
    if (v < 1) return 0.0;
    return weight * std::fabs(std::log2(v.convert_to<double>() / sweet_spot));
}

}  // namespace

double MockProfiler::measure(const RawConfig& config) const {
    double t = 30.0;
    t += log2_penalty(config, "io.file.buffer.size", 4096.0, 1.5);
    t += log2_penalty(config, "dfs.blocksize", 134217728.0, 2.0);
    t += log2_penalty(config, "mapreduce.map.memory.mb", 1024.0, 1.0);
    // Noise from a hash of (seed, canonical serialization): uniform in
    // [-0.5, 0.5), zero mean, reproducible.
    std::uint64_t h = fnv1a(serialize_config(config), fnv1a(std::to_string(seed_)));
    double noise = static_cast<double>(h >> 11) * 0x1.0p-53 - 0.5;
    return t + noise;
}

SearchStats run_search(const ConfigSchema& schema, const Environment& env, const Grid& grid,
                       const Profiler& profiler, unsigned runs_per_config) {
    if (runs_per_config < 1) throw ValueError("runs_per_config must be at least 1");

    SearchStats stats;
    stats.runs_per_config = runs_per_config;
    std::vector<RawConfig> candidates = sample_candidates(grid);
    stats.total = candidates.size();

    double profile_sum = 0.0;
    std::size_t profile_runs = 0;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        CheckReport report = check_config(schema, candidates[k], env, {},
                                          "candidate-" + std::to_string(k));
        stats.check_time_total_s += report.check_duration_s;
        if (!report.passed()) {
            ++stats.invalid;
            continue;
        }
        ++stats.valid;
        try {
            double sum = 0.0;
            for (unsigned r = 0; r < runs_per_config; ++r) {
                double t = profiler.measure(candidates[k]);
                if (!(t > 0.0)) throw ValueError("profiler returned a non-positive runtime");
                sum += t;
            }
            double mean = sum / runs_per_config;
            profile_sum += sum;
            profile_runs += runs_per_config;
            if (!stats.best_config || mean < stats.best_runtime_s) {
                stats.best_config = candidates[k];
                stats.best_runtime_s = mean;
            }
        } catch (const std::exception& e) {
            stats.notes.push_back("candidate " + std::to_string(k) +
                                  " skipped: " + e.what());
        }
    }

    stats.profile_time_s = profile_runs ? profile_sum / static_cast<double>(profile_runs) : 0.0;
    if (stats.total > 0 && stats.profile_time_s > 0.0) {
        auto [saved, fraction] = compute_savings(stats.total, stats.invalid,
                                                 stats.profile_time_s, runs_per_config,
                                                 stats.check_time_total_s);
        stats.saved_s = saved;
        stats.saved_fraction = fraction;
    } else {
        // Nothing was profiled, so checking bought nothing this run: the
        // cost stands alone and no meaningful fraction exists.
        stats.saved_s = -stats.check_time_total_s;
        stats.saved_fraction = 0.0;
    }
    return stats;
}

std::pair<double, double> compute_savings(std::size_t total, std::size_t invalid,
                                          double profile_time_s, unsigned runs,
                                          double check_time_total_s) {
    if (total == 0) throw std::domain_error("total must be positive");
    if (invalid > total) throw ValueError("invalid count exceeds total");
    if (!(profile_time_s > 0.0)) throw ValueError("profile time must be positive");
    if (runs < 1) throw ValueError("runs must be at least 1");
    if (check_time_total_s < 0.0) throw ValueError("check time must not be negative");

    double saved = static_cast<double>(invalid) * profile_time_s * runs - check_time_total_s;
    double fraction = saved / (static_cast<double>(total) * profile_time_s * runs);
    return {saved, fraction};
}

std::string search_summary_text(const SearchStats& stats, bool include_wall_clock) {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(6);
    out << "candidates_total: " << stats.total << '\n'
        << "candidates_invalid: " << stats.invalid << '\n'
        << "candidates_valid: " << stats.valid << '\n'
        << "runs_per_config: " << stats.runs_per_config << '\n'
        << "profile_time_mean_s: " << stats.profile_time_s << '\n';
    if (stats.best_config)
        out << "best_runtime_s: " << stats.best_runtime_s << '\n';
    else
        out << "best_runtime_s: none\n";
    if (include_wall_clock) {
        out << "check_time_total_s: " << stats.check_time_total_s << '\n'
            << "saved_s: " << stats.saved_s << '\n'
            << "saved_fraction: " << stats.saved_fraction << '\n';
    }
    for (const auto& note : stats.notes) out << "note: " << note << '\n';
    return out.str();
}

}  // namespace rwtc
