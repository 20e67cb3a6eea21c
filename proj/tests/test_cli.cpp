#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rwtc/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code = 0;
    std::string out;
    std::string err;
};

RunResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = rwtc::run_cli(std::move(args), out, err);
    return RunResult{code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& leaf) {
    fs::path dir = fs::temp_directory_path() / "rwtc-cli-tests" / leaf;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_text(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    f << text;
    return path;
}

std::string read_text(const fs::path& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

std::string site_with(const std::string& name, const std::string& value) {
    return "<?xml version=\"1.0\"?>\n<configuration>\n  <property>\n    <name>" + name +
           "</name>\n    <value>" + value + "</value>\n  </property>\n</configuration>\n";
}

const char* kDeskManifest =
    "[fields]\n"
    "desk.size|desk|pos|value <= 100|||.|10|||\n";

}  // namespace

TEST_CASE("check passes a valid site file with exit 0") {
    fs::path dir = fresh_dir("check-pass");
    fs::path site = write_text(dir / "site.xml", site_with("io.file.buffer.size", "65536"));
    RunResult r = run({"check", site.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find(": PASS") != std::string::npos);
    CHECK(r.err.empty());
}

TEST_CASE("check fails a bad lift with exit 1 and names the failure") {
    fs::path dir = fresh_dir("check-fail");
    fs::path site =
        write_text(dir / "site.xml", site_with("mapreduce.jobtracker.maxtasks.perjob", "0"));
    RunResult r = run({"check", site.string()});
    CHECK(r.code == 1);
    CHECK(r.out.find(": FAIL") != std::string::npos);
    CHECK(r.out.find("[lift-failure] mapreduce.jobtracker.maxtasks.perjob") !=
          std::string::npos);
}

TEST_CASE("check merges files in order before judging") {
    fs::path dir = fresh_dir("check-merge");
    fs::path lo = write_text(dir / "lo.xml", site_with("io.file.buffer.size", "65537"));
    fs::path hi = write_text(dir / "hi.xml", site_with("io.file.buffer.size", "65536"));
    // The later file overrides the earlier bad value.
    CHECK(run({"check", lo.string(), hi.string()}).code == 0);
    CHECK(run({"check", hi.string(), lo.string()}).code == 1);
}

TEST_CASE("check renders a machine report on request") {
    fs::path dir = fresh_dir("check-json");
    fs::path site = write_text(dir / "site.xml", site_with("dfs.blocksize", "100"));
    RunResult r = run({"check", "--format", "machine", site.string()});
    CHECK(r.code == 1);
    nlohmann::json doc = nlohmann::json::parse(r.out);
    CHECK(doc["pass"] == false);
    CHECK(doc["config"] == site.string());
    bool saw = false;
    for (const auto& d : doc["diagnostics"])
        if (d["kind"] == "property-violation" && d["subject"] == "dfs.blocksize") saw = true;
    CHECK(saw);
}

TEST_CASE("usage and environment problems exit 2") {
    fs::path dir = fresh_dir("check-usage");
    fs::path site = write_text(dir / "site.xml", site_with("dfs.blocksize", "134217728"));
    CHECK(run({"check", (dir / "absent.xml").string()}).code == 2);
    CHECK(run({"check", "--env", (dir / "no.env").string(), site.string()}).code == 2);
    CHECK(run({"check"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"check", "--no-such-flag", site.string()}).code == 2);
    RunResult r = run({"check", (dir / "absent.xml").string()});
    CHECK(r.err.find("error") != std::string::npos);
}

TEST_CASE("a malformed site file is a usage-level failure, not a type failure") {
    fs::path dir = fresh_dir("check-malformed");
    fs::path site = write_text(dir / "broken.xml", "<configuration><property>");
    RunResult r = run({"check", site.string()});
    CHECK(r.code == 2);
}

TEST_CASE("help is available at both levels") {
    RunResult top = run({"--help"});
    CHECK(top.code == 0);
    CHECK(top.out.find("check") != std::string::npos);
    CHECK(top.out.find("generate") != std::string::npos);
    CHECK(top.out.find("search") != std::string::npos);
    RunResult sub = run({"check", "--help"});
    CHECK(sub.code == 0);
    CHECK(sub.out.find("--format") != std::string::npos);
}

TEST_CASE("explain prints the field card") {
    RunResult r = run({"explain", "io.file.buffer.size"});
    CHECK(r.code == 0);
    CHECK(r.out.find("io.file.buffer.size\n") == 0);
    CHECK(r.out.find("tipe: pos") != std::string::npos);
    CHECK(r.out.find("property: value mod env.hw_page_size == 0") != std::string::npos);
    CHECK(r.out.find("default: 4096") != std::string::npos);
    CHECK(run({"explain", "no.such.field"}).code == 2);
}

TEST_CASE("an explicit schema file takes precedence") {
    fs::path dir = fresh_dir("schema-flag");
    fs::path manifest = write_text(dir / "desk.schema", kDeskManifest);
    RunResult r = run({"explain", "--schema", manifest.string(), "desk.size"});
    CHECK(r.code == 0);
    CHECK(r.out.find("property: value <= 100") != std::string::npos);
    // The bundled schema knows nothing about desk.size.
    CHECK(run({"explain", "desk.size"}).code == 2);
    // A bundled field is unknown to the desk schema.
    CHECK(run({"explain", "--schema", manifest.string(), "io.file.buffer.size"}).code == 2);
}

TEST_CASE("the schema environment variable fills in when no flag is given") {
    fs::path dir = fresh_dir("schema-env");
    fs::path manifest = write_text(dir / "desk.schema", kDeskManifest);
    setenv("RWTC_SCHEMA", manifest.string().c_str(), 1);
    RunResult r = run({"explain", "desk.size"});
    unsetenv("RWTC_SCHEMA");
    CHECK(r.code == 0);
    CHECK(r.out.find("desk.size") == 0);
}

TEST_CASE("generate writes a deterministic candidate set") {
    fs::path a = fresh_dir("gen-a");
    fs::path b = fresh_dir("gen-b");
    RunResult ra = run({"generate", "--seed", "7", "--count", "10", "--out", a.string()});
    RunResult rb = run({"generate", "--seed", "7", "--count", "10", "--out", b.string()});
    CHECK(ra.code == 0);
    CHECK(rb.code == 0);
    CHECK(ra.out.find("wrote 10 of 10 candidates to " + a.string()) != std::string::npos);

    std::vector<fs::path> files_a;
    for (const auto& e : fs::directory_iterator(a)) files_a.push_back(e.path());
    std::sort(files_a.begin(), files_a.end());
    REQUIRE(files_a.size() == 10);
    CHECK(files_a.front().filename() == "cand-00000.xml");
    for (const auto& fa : files_a) {
        fs::path fb = b / fa.filename();
        REQUIRE(fs::exists(fb));
        CHECK(read_text(fa) == read_text(fb));
    }

    RunResult rc = run({"generate", "--seed", "8", "--count", "10", "--out", a.string()});
    CHECK(rc.code == 0);
    bool differs = false;
    for (const auto& fa : files_a)
        if (read_text(fa) != read_text(b / fa.filename())) differs = true;
    CHECK(differs);
}

TEST_CASE("generate can keep only one side of the check") {
    fs::path valid = fresh_dir("gen-valid");
    fs::path invalid = fresh_dir("gen-invalid");
    RunResult rv = run({"generate", "--seed", "3", "--count", "40", "--valid-only", "--out",
                        valid.string()});
    CHECK(rv.code == 0);
    std::size_t valid_count = 0;
    for (const auto& e : fs::directory_iterator(valid)) {
        CHECK(run({"check", e.path().string()}).code == 0);
        ++valid_count;
    }
    CHECK(valid_count > 0);
    CHECK(valid_count < 40);

    RunResult ri = run({"generate", "--seed", "3", "--count", "40", "--invalid-only", "--out",
                        invalid.string()});
    CHECK(ri.code == 0);
    std::size_t invalid_count = 0;
    for (const auto& e : fs::directory_iterator(invalid)) {
        CHECK(run({"check", e.path().string()}).code == 1);
        ++invalid_count;
    }
    CHECK(invalid_count > 0);
    CHECK(valid_count + invalid_count == 40);

    CHECK(run({"generate", "--seed", "1", "--count", "5", "--valid-only", "--invalid-only",
               "--out", valid.string()})
              .code == 2);
}

TEST_CASE("search reports on stdout and writes stable artifacts") {
    fs::path a = fresh_dir("search-a");
    fs::path b = fresh_dir("search-b");
    RunResult ra = run({"search", "--seed", "7", "--count", "30", "--out", a.string()});
    RunResult rb = run({"search", "--seed", "7", "--count", "30", "--out", b.string()});
    CHECK(ra.code == 0);
    CHECK(ra.out.find("candidates_total: 30") != std::string::npos);
    CHECK(ra.out.find("check_time_total_s:") != std::string::npos);

    // The written stats omit wall-clock lines, so reruns match byte for byte.
    std::string stats_a = read_text(a / "stats.txt");
    CHECK(stats_a == read_text(b / "stats.txt"));
    CHECK(stats_a.find("candidates_total: 30") != std::string::npos);
    CHECK(stats_a.find("check_time_total_s") == std::string::npos);

    std::string best = read_text(a / "best.xml");
    CHECK(best == read_text(b / "best.xml"));
    CHECK(best.find("<configuration>") != std::string::npos);
    fs::path best_path = a / "best.xml";
    CHECK(run({"check", best_path.string()}).code == 0);
}

TEST_CASE("search honors the profiler seed spec") {
    fs::path a = fresh_dir("search-seed-a");
    fs::path b = fresh_dir("search-seed-b");
    RunResult ra = run({"search", "--seed", "7", "--count", "30", "--profiler", "mock:5",
                        "--out", a.string()});
    RunResult rb = run({"search", "--seed", "7", "--count", "30", "--profiler", "mock:6",
                        "--out", b.string()});
    CHECK(ra.code == 0);
    CHECK(rb.code == 0);
    CHECK(read_text(a / "stats.txt") != read_text(b / "stats.txt"));
    CHECK(run({"search", "--seed", "7", "--count", "5", "--profiler", "bogus"}).code == 2);
}

TEST_CASE("stats reproduces the savings identity") {
    RunResult r = run({"stats", "--total", "5000", "--invalid", "1293", "--profile-time", "30",
                       "--runs", "3", "--check-total", "3150"});
    CHECK(r.code == 0);
    CHECK(r.out == "saved_s: 113220.000000\nsaved_fraction: 0.251600\n");
    CHECK(run({"stats", "--total", "0", "--invalid", "0", "--profile-time", "1", "--runs", "1",
               "--check-total", "0"})
              .code == 2);
    CHECK(run({"stats", "--total", "10", "--invalid", "20", "--profile-time", "1", "--runs",
               "1", "--check-total", "0"})
              .code == 2);
}
