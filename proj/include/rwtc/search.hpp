#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rwtc/checker.hpp"
#include "rwtc/config.hpp"
#include "rwtc/environment.hpp"
#include "rwtc/schema.hpp"

namespace rwtc {

// Deterministic, platform-stable 64-bit generator (splitmix64). The standard
// <random> distributions are implementation-defined, so sampling goes
// through this to keep seeded runs byte-identical everywhere.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

// Per-field candidate raw values plus the sampling parameters. Built by
// build_grid, which guarantees: every field exists in the schema, every
// candidate list is nonempty, sample_count >= 1. Fields are kept in schema
// (lexicographic) order so the sample stream is reproducible.
struct Grid {
    std::vector<std::pair<std::string, std::vector<std::string>>> fields;
    std::uint64_t seed = 0;
    std::size_t sample_count = 0;
};

// Candidate lists per field: an override when given, else the field's
// declared variants, else derived from the default — integer tipes take
// {0.8, 0.9, 1.0, 1.1, 1.2} of the default rounded half away from zero,
// floats take the same multipliers in exact decimal arithmetic, bool is
// {true,false}, optpos is its sentinels plus {1,2,4}, str/javaopts fall back
// to {default}. Derivation without a default (where one is needed) and
// overrides naming unknown fields are SchemaErrors.
Grid build_grid(const ConfigSchema& schema,
                const std::map<std::string, std::vector<std::string>>& overrides,
                std::uint64_t seed, std::size_t sample_count);

// Draws grid.sample_count configurations, one independent uniform pick per
// field, from a splitmix64 stream seeded with grid.seed. Same grid, same
// stream.
std::vector<RawConfig> sample_candidates(const Grid& grid);

// Measures one candidate's runtime in seconds (> 0). May be called
// repeatedly and concurrently.
class Profiler {
public:
    virtual ~Profiler() = default;
    virtual double measure(const RawConfig& config) const = 0;
};

// Deterministic stand-in for a real benchmark run. Runtime is 30 s base,
// plus a smooth penalty for straying from the sweet spots
// io.file.buffer.size=4096, dfs.blocksize=134217728, and
// mapreduce.map.memory.mb=1024 (each |log2(value/sweet_spot)| times a small
// weight), plus zero-mean seeded noise in [-0.5, 0.5). Always positive;
// identical (seed, config) pairs give identical runtimes.
class MockProfiler : public Profiler {
public:
    explicit MockProfiler(std::uint64_t seed) : seed_(seed) {}

    double measure(const RawConfig& config) const override;

private:
    std::uint64_t seed_;
};

struct SearchStats {
    std::size_t total = 0;
    std::size_t invalid = 0;
    std::size_t valid = 0;
    unsigned runs_per_config = 3;
    // Mean runtime per profiling run (0 when nothing was profiled).
    double profile_time_s = 0.0;
    // Wall-clock sum of all check durations.
    double check_time_total_s = 0.0;
    std::optional<RawConfig> best_config;
    double best_runtime_s = 0.0;
    double saved_s = 0.0;
    double saved_fraction = 0.0;
    // Per-candidate incidents (profiler failures) that skipped a candidate.
    std::vector<std::string> notes;
};

// Filter-then-profile: every candidate is checked; failures are counted and
// never profiled; survivors are profiled runs_per_config times and scored by
// mean runtime, ties broken by earliest stream position. A profiler failure
// skips that candidate with a note. Savings follow compute_savings when
// anything was profiled; otherwise saved_s is the (negative) checking cost.
SearchStats run_search(const ConfigSchema& schema, const Environment& env, const Grid& grid,
                       const Profiler& profiler, unsigned runs_per_config = 3);

// saved_s = invalid * profile_time_s * runs - check_time_total_s;
// saved_fraction = saved_s / (total * profile_time_s * runs). Throws
// std::domain_error on total = 0, ValueError on other precondition
// violations (invalid > total, profile_time_s <= 0, runs < 1, negative
// check time).
std::pair<double, double> compute_savings(std::size_t total, std::size_t invalid,
                                          double profile_time_s, unsigned runs,
                                          double check_time_total_s);

// Text block of the stats fields. Wall-clock dependent lines (check time and
// savings) are included only when include_wall_clock is set, so files meant
// to be byte-identical across runs can omit them.
std::string search_summary_text(const SearchStats& stats, bool include_wall_clock);

}  // namespace rwtc
