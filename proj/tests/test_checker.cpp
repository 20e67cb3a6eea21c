#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <string>
#include <vector>

#include "rwtc/checker.hpp"
#include "rwtc/schema.hpp"
#include "rwtc/site.hpp"

using namespace rwtc;

namespace {

RawConfig raw(const std::vector<std::pair<std::string, std::string>>& pairs) {
    RawConfig c;
    std::size_t i = 0;
    for (const auto& [name, value] : pairs)
        c.add(RawEntry{name, value, false, SourceRef{"<test>", i++}});
    return c;
}

CheckReport check(const RawConfig& c) {
    return check_config(bundled_hadoop_schema(), c, reference_environment(), {}, "t");
}

std::vector<Diagnostic> hard_diags(const CheckReport& r) {
    std::vector<Diagnostic> out;
    for (const auto& d : r.diagnostics)
        if (diagnostic_is_hard(d.kind)) out.push_back(d);
    return out;
}

}  // namespace

TEST_CASE("buffer size must be a multiple of the page size") {
    CheckReport ok = check(raw({{"io.file.buffer.size", "65536"}}));
    CHECK(ok.passed());
    CheckReport bad = check(raw({{"io.file.buffer.size", "65537"}}));
    CHECK(!bad.passed());
    auto hard = hard_diags(bad);
    REQUIRE(hard.size() == 1);
    CHECK(hard[0].kind == DiagnosticKind::PropertyViolation);
    CHECK(hard[0].subject == "io.file.buffer.size");
    CHECK(hard[0].message.find("value mod env.hw_page_size == 0") != std::string::npos);
}

TEST_CASE("the task limit lifts through its sentinel") {
    CheckReport none = check(raw({{"mapreduce.jobtracker.maxtasks.perjob", "-1"}}));
    CHECK(none.passed());
    REQUIRE(none.certified.has_value());
    const BaseValue& v = none.certified->fields.at("mapreduce.jobtracker.maxtasks.perjob").value;
    CHECK(v == BaseValue::opt_pos_none());

    CheckReport zero = check(raw({{"mapreduce.jobtracker.maxtasks.perjob", "0"}}));
    CHECK(!zero.passed());
    auto hard = hard_diags(zero);
    REQUIRE(hard.size() == 1);
    CHECK(hard[0].kind == DiagnosticKind::LiftFailure);

    CheckReport three = check(raw({{"mapreduce.jobtracker.maxtasks.perjob", "3"}}));
    CHECK(three.passed());
    CHECK(three.certified->fields.at("mapreduce.jobtracker.maxtasks.perjob").value ==
          BaseValue::opt_pos_some(3));
}

TEST_CASE("split sizes must be strictly ordered") {
    CheckReport bad = check(raw({{"mapreduce.input.fileinputformat.split.minsize", "268435456"},
                                 {"mapreduce.input.fileinputformat.split.maxsize", "134217728"}}));
    CHECK(!bad.passed());
    auto hard = hard_diags(bad);
    REQUIRE(hard.size() == 1);
    CHECK(hard[0].kind == DiagnosticKind::CrossFieldViolation);
    CHECK(hard[0].subject == "maxsplit_gt_minsplit");

    // Equal sizes leave nothing to split on: strictly greater is required.
    CheckReport equal =
        check(raw({{"mapreduce.input.fileinputformat.split.minsize", "268435456"},
                   {"mapreduce.input.fileinputformat.split.maxsize", "268435456"}}));
    CHECK(!equal.passed());

    CheckReport good =
        check(raw({{"mapreduce.input.fileinputformat.split.minsize", "268435456"},
                   {"mapreduce.input.fileinputformat.split.maxsize", "536870912"}}));
    CHECK(good.passed());
}

TEST_CASE("uber mode conditions task resources on the application master") {
    // am cpu-vcores raised above the task defaults so only the memory
    // constraint is in play.
    std::vector<std::pair<std::string, std::string>> base = {
        {"mapreduce.map.memory.mb", "2048"},
        {"yarn.app.mapreduce.am.resource.mb", "1536"},
        {"yarn.app.mapreduce.am.resource.cpu-vcores", "2"}};

    auto enabled = base;
    enabled.emplace_back("mapreduce.job.ubertask.enable", "true");
    CheckReport bad = check(raw(enabled));
    CHECK(!bad.passed());
    auto hard = hard_diags(bad);
    REQUIRE(hard.size() == 1);
    CHECK(hard[0].kind == DiagnosticKind::CrossFieldViolation);
    CHECK(hard[0].subject == "uber_map_mem");

    auto disabled = base;
    disabled.emplace_back("mapreduce.job.ubertask.enable", "false");
    CHECK(check(raw(disabled)).passed());
}

TEST_CASE("JVM heap options must be coherent to lift") {
    CHECK(check(raw({{"mapreduce.map.java.opts", "-Xms1024m -Xmx4096m"}})).passed());
    CheckReport bad = check(raw({{"mapreduce.map.java.opts", "-Xms4096m -Xmx1024m"}}));
    CHECK(!bad.passed());
    auto hard = hard_diags(bad);
    REQUIRE(hard.size() == 1);
    CHECK(hard[0].kind == DiagnosticKind::LiftFailure);
    CHECK(hard[0].subject == "mapreduce.map.java.opts");
}

TEST_CASE("field checks produce evidence or a diagnostic") {
    const ConfigSchema& s = bundled_hadoop_schema();
    const Environment& env = reference_environment();
    auto good = check_field(s.field("io.file.buffer.size"), "8192", true, env);
    REQUIRE(std::holds_alternative<CertifiedField>(good));
    const CertifiedField& cf = std::get<CertifiedField>(good);
    CHECK(cf.field_id == "io.file.buffer.size");
    CHECK(cf.final_flag);
    CHECK(cf.value == BaseValue::make_pos(8192));
    CHECK(cf.evidence.property_source == "value mod env.hw_page_size == 0");
    CHECK(cf.evidence.evaluated_true);
    CHECK(cf.evidence.env_fingerprint == env.fingerprint());

    auto bad = check_field(s.field("io.file.buffer.size"), "100", false, env);
    REQUIRE(std::holds_alternative<Diagnostic>(bad));
    CHECK(std::get<Diagnostic>(bad).kind == DiagnosticKind::PropertyViolation);

    auto unliftable = check_field(s.field("io.file.buffer.size"), "lots", false, env);
    REQUIRE(std::holds_alternative<Diagnostic>(unliftable));
    CHECK(std::get<Diagnostic>(unliftable).kind == DiagnosticKind::LiftFailure);
}

TEST_CASE("absent fields fall back to defaults, which certify") {
    CheckReport r = check(raw({}));
    CHECK(r.passed());
    REQUIRE(r.certified.has_value());
    CHECK(r.certified->fields.size() == bundled_hadoop_schema().fields().size());
    CHECK(r.certified->fields.at("dfs.blocksize").value == BaseValue::make_pos(134217728));
    CHECK(r.certified->cross_evidence.size() == 5);
    CHECK(r.certified->schema_name == "hadoop");
    CHECK(r.certified->environment == reference_environment());
}

TEST_CASE("a required field with no entry and no default is missing") {
    ConfigSchema s = parse_schema_manifest(
        "[fields]\n"
        "need.me|s|int|||||||| true\n"
        "skip.me|s|int||||||||\n",
        "mini");
    // required cell is trimmed, so " true" still reads as required
    CheckReport r = check_config(s, RawConfig{}, reference_environment());
    CHECK(!r.passed());
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].kind == DiagnosticKind::MissingField);
    CHECK(r.diagnostics[0].subject == "need.me");
    // The optional field is skipped silently: not certified, not diagnosed.
    CHECK(r.counts.count(DiagnosticKind::MissingField) == 1);
}

TEST_CASE("cross constraints see lifted values even when a property failed") {
    // 40000 MB lifts fine but violates `value <= env.phys_mem_mb`; the uber
    // constraint must still judge the lifted 40000, not skip it.
    CheckReport r = check(raw({{"mapreduce.job.ubertask.enable", "true"},
                               {"mapreduce.map.memory.mb", "40000"},
                               {"yarn.app.mapreduce.am.resource.cpu-vcores", "2"}}));
    CHECK(!r.passed());
    CHECK(r.counts.at(DiagnosticKind::PropertyViolation) == 1);
    CHECK(r.counts.at(DiagnosticKind::CrossFieldViolation) == 1);
}

TEST_CASE("a cross constraint over an unliftable field reports unresolved") {
    CheckReport r = check(raw({{"mapreduce.input.fileinputformat.split.maxsize", "abc"}}));
    CHECK(!r.passed());
    CHECK(r.counts.at(DiagnosticKind::LiftFailure) == 1);
    REQUIRE(r.counts.count(DiagnosticKind::CrossFieldViolation) == 1);
    bool found = false;
    for (const auto& d : r.diagnostics)
        if (d.kind == DiagnosticKind::CrossFieldViolation) {
            CHECK(d.subject == "maxsplit_gt_minsplit");
            CHECK(d.message.find("unresolved") != std::string::npos);
            found = true;
        }
    CHECK(found);
}

TEST_CASE("diagnostics arrive in carried, field, cross, unknown order") {
    std::vector<Diagnostic> carried{
        make_diagnostic(DiagnosticKind::FinalOverride, "x", "kept earlier value")};
    RawConfig c = raw({{"zz.unknown.second", "1"},
                       {"mapreduce.map.memory.mb", "99999"},   // property violation
                       {"aa.unknown.first", "2"},
                       {"dfs.blocksize", "100"},               // property violation
                       {"mapreduce.input.fileinputformat.split.maxsize", "1"},  // cross fail
                       {"mapreduce.input.fileinputformat.split.minsize", "5000"}});
    CheckReport r = check_config(bundled_hadoop_schema(), c, reference_environment(),
                                 carried, "ordered");
    REQUIRE(r.diagnostics.size() == 6);
    CHECK(r.diagnostics[0].kind == DiagnosticKind::FinalOverride);
    // Field diagnostics follow schema (name) order: dfs.* before mapreduce.*.
    CHECK(r.diagnostics[1].subject == "dfs.blocksize");
    CHECK(r.diagnostics[2].subject == "mapreduce.map.memory.mb");
    CHECK(r.diagnostics[3].subject == "maxsplit_gt_minsplit");
    // Unknown fields close the list in raw-entry order.
    CHECK(r.diagnostics[4].subject == "zz.unknown.second");
    CHECK(r.diagnostics[4].kind == DiagnosticKind::UnknownField);
    CHECK(r.diagnostics[5].subject == "aa.unknown.first");
    CHECK(r.counts.at(DiagnosticKind::PropertyViolation) == 2);
}

TEST_CASE("warnings alone never fail a check") {
    std::vector<Diagnostic> carried{
        make_diagnostic(DiagnosticKind::FinalOverride, "x", "kept earlier value")};
    CheckReport r = check_config(bundled_hadoop_schema(), raw({{"not.in.schema", "v"}}),
                                 reference_environment(), carried, "warned");
    CHECK(r.passed());
    CHECK(r.certified.has_value());
    CHECK(r.diagnostics.size() == 2);
    CHECK(r.check_duration_s >= 0.0);
}

TEST_CASE("certified configurations re-render and re-check") {
    CheckReport r = check(raw({{"mapreduce.jobtracker.maxtasks.perjob", "-1"},
                               {"io.file.buffer.size", "131072"},
                               {"mapreduce.map.java.opts", "-Xms1g -Xmx2g"}}));
    REQUIRE(r.passed());
    RawConfig again = certified_to_raw(*r.certified, bundled_hadoop_schema());
    CHECK(again.find("mapreduce.jobtracker.maxtasks.perjob")->raw_value == "-1");
    CHECK(again.find("io.file.buffer.size")->raw_value == "131072");
    CheckReport r2 = check(again);
    CHECK(r2.passed());
    CHECK(r2.certified->fields.size() == r.certified->fields.size());
    for (const auto& [name, cf] : r.certified->fields)
        CHECK(r2.certified->fields.at(name).value == cf.value);
}

TEST_CASE("reports render to text and machine form") {
    CheckReport bad = check_config(bundled_hadoop_schema(),
                                   raw({{"io.file.buffer.size", "100"}}),
                                   reference_environment(), {}, "demo");
    std::string text = report_to_text(bad);
    CHECK(text.find("demo: FAIL") == 0);
    CHECK(text.find("[property-violation] io.file.buffer.size") != std::string::npos);

    std::string json = report_to_json(bad);
    CHECK(json.find("\"pass\": false") != std::string::npos);
    CHECK(json.find("\"property-violation\"") != std::string::npos);

    CheckReport good = check_config(bundled_hadoop_schema(), raw({}),
                                    reference_environment(), {}, "defaults");
    CHECK(report_to_text(good).find("defaults: PASS") == 0);
    std::string good_json = report_to_json(good);
    CHECK(good_json.find("\"certified\"") != std::string::npos);
    CHECK(good_json.find(reference_environment().fingerprint()) != std::string::npos);
}

TEST_CASE("a tiny schema agrees with brute force over its whole grid") {
    ConfigSchema s = parse_schema_manifest(
        "[fields]\n"
        "n.a|s|pos|value <= 4|||x|1|1,2,3,4,5||\n"
        "n.b|s|nonneg|||x||0|0,1,2||\n"
        "n.flag|s|bool|||||false|true,false||\n"
        "[cross]\n"
        "sum|field(n.flag) implies field(n.a) + field(n.b) < 5|bounded when flagged\n",
        "micro");
    const Environment& env = reference_environment();
    int checked = 0;
    for (int a = 1; a <= 5; ++a)
        for (int b = 0; b <= 2; ++b)
            for (int f = 0; f < 2; ++f) {
                RawConfig c = raw({{"n.a", std::to_string(a)},
                                   {"n.b", std::to_string(b)},
                                   {"n.flag", f ? "true" : "false"}});
                bool expect = a <= 4 && (!f || a + b < 5);
                CheckReport r = check_config(s, c, env);
                CHECK(r.passed() == expect);
                ++checked;
            }
    CHECK(checked == 30);
}
