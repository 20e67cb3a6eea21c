#include "rwtc/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "rwtc/checker.hpp"
#include "rwtc/environment.hpp"
#include "rwtc/errors.hpp"
#include "rwtc/schema.hpp"
#include "rwtc/search.hpp"
#include "rwtc/site.hpp"

namespace rwtc {

namespace {

ConfigSchema resolve_schema(const std::string& flag) {
    std::string choice = flag;
    if (choice.empty())
        if (const char* from_env = std::getenv("RWTC_SCHEMA")) choice = from_env;
    if (choice.empty() || choice == "bundled") return bundled_hadoop_schema();
    return load_schema(choice);
}

Environment resolve_environment(const std::string& flag) {
    if (flag.empty() || flag == "reference") return reference_environment();
    return load_environment_file(flag);
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path.string() + " for writing");
    f << content;
    f.flush();
    if (!f) throw IoError("failed while writing " + path.string());
}

std::uint64_t parse_profiler_spec(const std::string& spec) {
    if (spec == "mock") return 0;
    const std::string prefix = "mock:";
    if (spec.rfind(prefix, 0) != 0)
        throw ValueError("unknown profiler \"" + spec + "\" (expected mock:<seed>)");
    std::string digits = spec.substr(prefix.size());
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw ValueError("bad profiler seed in \"" + spec + "\"");
    return std::stoull(digits);
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Schema-driven type checker and search harness for configuration files"};
    app.name("rwtc");
    app.require_subcommand(1);

    std::string schema_arg;
    std::string env_arg = "reference";
    auto add_common = [&](CLI::App* cmd, bool with_env) {
        cmd->add_option("--schema", schema_arg,
                        "schema manifest path, or 'bundled' (default: $RWTC_SCHEMA, else bundled)");
        if (with_env)
            cmd->add_option("--env", env_arg, "environment descriptor path, or 'reference'");
    };

    std::vector<std::string> check_files;
    std::string check_format = "text";
    CLI::App* check = app.add_subcommand("check", "Type-check merged site files");
    add_common(check, true);
    check->add_option("files", check_files, "site XML files, merged left to right")
        ->required()
        ->expected(-1);
    check->add_option("--format", check_format, "report format")
        ->check(CLI::IsMember({"text", "machine"}));

    std::string explain_name;
    CLI::App* explain = app.add_subcommand("explain", "Describe one schema field");
    add_common(explain, false);
    explain->add_option("field", explain_name, "field name")->required();

    std::uint64_t gen_seed = 0;
    std::size_t gen_count = 0;
    std::string gen_out;
    bool gen_valid_only = false;
    bool gen_invalid_only = false;
    CLI::App* generate = app.add_subcommand("generate", "Sample candidate site files from the grid");
    add_common(generate, true);
    generate->add_option("--seed", gen_seed, "sampling seed");
    generate->add_option("--count", gen_count, "candidates to draw")->required();
    generate->add_option("--out", gen_out, "output directory")->required();
    CLI::Option* valid_only =
        generate->add_flag("--valid-only", gen_valid_only, "emit only candidates that pass");
    generate->add_flag("--invalid-only", gen_invalid_only, "emit only candidates that fail")
        ->excludes(valid_only);

    std::uint64_t search_seed = 0;
    std::size_t search_count = 0;
    unsigned search_runs = 3;
    std::string search_profiler = "mock:0";
    std::string search_out;
    CLI::App* search = app.add_subcommand("search", "Filter-then-profile sampled candidates");
    add_common(search, true);
    search->add_option("--seed", search_seed, "sampling seed");
    search->add_option("--count", search_count, "candidates to draw")->required();
    search->add_option("--runs", search_runs, "profiling runs per surviving candidate");
    search->add_option("--profiler", search_profiler, "profiler spec, mock:<seed>");
    search->add_option("--out", search_out, "directory for stats.txt and best.xml");

    std::size_t stats_total = 0;
    std::size_t stats_invalid = 0;
    double stats_profile = 0.0;
    unsigned stats_runs = 0;
    double stats_check = 0.0;
    CLI::App* stats = app.add_subcommand("stats", "Compute time savings from counts and timings");
    stats->add_option("--total", stats_total, "candidates drawn")->required();
    stats->add_option("--invalid", stats_invalid, "candidates rejected by checking")->required();
    stats->add_option("--profile-time", stats_profile, "mean seconds per profiling run")->required();
    stats->add_option("--runs", stats_runs, "profiling runs per candidate")->required();
    stats->add_option("--check-total", stats_check, "total seconds spent checking")->required();

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (*check) {
            ConfigSchema schema = resolve_schema(schema_arg);
            Environment environment = resolve_environment(env_arg);
            std::vector<SiteFile> files;
            files.reserve(check_files.size());
            for (const auto& path : check_files) files.push_back(parse_site_file(path));
            auto [raw, warnings] = merge_configs(files);
            std::string config_id = check_files.front();
            for (std::size_t i = 1; i < check_files.size(); ++i) config_id += "+" + check_files[i];
            CheckReport report =
                check_config(schema, raw, environment, std::move(warnings), config_id);
            out << (check_format == "machine" ? report_to_json(report) : report_to_text(report));
            return report.passed() ? 0 : 1;
        }
        if (*explain) {
            ConfigSchema schema = resolve_schema(schema_arg);
            FieldExplanation ex = explain_field(schema, explain_name);
            out << ex.name << '\n'
                << "  subsystem: " << ex.subsystem << '\n'
                << "  tipe: " << rtipe_name(ex.tipe) << '\n'
                << "  property: " << ex.property_text << '\n'
                << "  unit: " << ex.unit << '\n'
                << "  meaning: " << ex.interp << '\n'
                << "  advice: " << ex.advice << '\n'
                << "  default: " << (ex.default_raw ? *ex.default_raw : "(none)") << '\n';
            return 0;
        }
        if (*generate) {
            ConfigSchema schema = resolve_schema(schema_arg);
            Environment environment = resolve_environment(env_arg);
            Grid grid = build_grid(schema, {}, gen_seed, gen_count);
            if (grid.fields.empty()) {
                err << "error: the grid has no fields to sample\n";
                return 2;
            }
            std::filesystem::create_directories(gen_out);
            std::vector<RawConfig> candidates = sample_candidates(grid);
            std::size_t written = 0;
            for (std::size_t k = 0; k < candidates.size(); ++k) {
                if (gen_valid_only || gen_invalid_only) {
                    CheckReport report = check_config(schema, candidates[k], environment);
                    if (gen_valid_only && !report.passed()) continue;
                    if (gen_invalid_only && report.passed()) continue;
                }
                char name[24];
                std::snprintf(name, sizeof name, "cand-%05zu.xml", k);
                write_file(std::filesystem::path(gen_out) / name, serialize_config(candidates[k]));
                ++written;
            }
            out << "wrote " << written << " of " << candidates.size() << " candidates to "
                << gen_out << '\n';
            return 0;
        }
        if (*search) {
            ConfigSchema schema = resolve_schema(schema_arg);
            Environment environment = resolve_environment(env_arg);
            Grid grid = build_grid(schema, {}, search_seed, search_count);
            MockProfiler profiler(parse_profiler_spec(search_profiler));
            SearchStats result = run_search(schema, environment, grid, profiler, search_runs);
            out << search_summary_text(result, /*include_wall_clock=*/true);
            if (!search_out.empty()) {
                std::filesystem::create_directories(search_out);
                write_file(std::filesystem::path(search_out) / "stats.txt",
                           search_summary_text(result, /*include_wall_clock=*/false));
                if (result.best_config)
                    write_file(std::filesystem::path(search_out) / "best.xml",
                               serialize_config(*result.best_config));
            }
            return 0;
        }
        if (*stats) {
            auto [saved, fraction] =
                compute_savings(stats_total, stats_invalid, stats_profile, stats_runs, stats_check);
            std::ostringstream text;
            text.setf(std::ios::fixed);
            text.precision(6);
            text << "saved_s: " << saved << '\n' << "saved_fraction: " << fraction << '\n';
            out << text.str();
            return 0;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

}  // namespace rwtc
