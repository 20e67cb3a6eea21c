#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rwtc/environment.hpp"
#include "rwtc/errors.hpp"

using namespace rwtc;

TEST_CASE("the reference platform is fully populated") {
    const Environment& env = reference_environment();
    CHECK(env.phys_cpu_cores() == 14);
    CHECK(env.virt_cpu_cores() == 28);
    CHECK(env.phys_mem_mb() == 32768);
    CHECK(env.virt_mem_mb() == 32768);
    CHECK(env.hw_page_size() == 4096);
    CHECK(env.max_file_desc() == 3000);
    CHECK(env.max_threads() == 500);
    CHECK(env.comp_codecs().size() == 5);
    CHECK(env.comp_codecs().front() == "org.apache.hadoop.io.compress.DefaultCodec");
}

TEST_CASE("construction rejects degenerate platforms") {
    CHECK_THROWS_AS(Environment::create(0, 28, 32768, 32768, 4096, 3000, 500, {"c"}), ValueError);
    CHECK_THROWS_AS(Environment::create(14, 28, 32768, 32768, 0, 3000, 500, {"c"}), ValueError);
    CHECK_THROWS_AS(Environment::create(14, 28, 32768, 32768, 4096, 3000, 500, {}), ValueError);
    CHECK_THROWS_AS(Environment::create(14, 28, 32768, 32768, 4096, 3000, 500, {"c", "c"}),
                    ValueError);
}

TEST_CASE("numeric fields are reachable by name") {
    const Environment& env = reference_environment();
    REQUIRE(env.numeric_field("hw_page_size") != nullptr);
    CHECK(*env.numeric_field("hw_page_size") == 4096);
    CHECK(*env.numeric_field("max_threads") == 500);
    CHECK(env.numeric_field("comp_codecs") == nullptr);
    CHECK(env.numeric_field("page_size") == nullptr);
}

TEST_CASE("serialize and parse are inverse") {
    const Environment& env = reference_environment();
    Environment back = parse_environment_text(env.serialize());
    CHECK(back == env);
    CHECK(back.fingerprint() == env.fingerprint());
    CHECK(env.fingerprint().size() == 16);
}

TEST_CASE("fingerprints react to every field") {
    const Environment& a = reference_environment();
    Environment b = Environment::create(14, 28, 32768, 32768, 8192, 3000, 500, a.comp_codecs());
    CHECK(a.fingerprint() != b.fingerprint());
    Environment c = Environment::create(14, 28, 32768, 32768, 4096, 3000, 500,
                                        {"org.apache.hadoop.io.compress.DefaultCodec"});
    CHECK(a.fingerprint() != c.fingerprint());
}

TEST_CASE("descriptor text tolerates comments, blanks, and CR") {
    Environment env = parse_environment_text(
        "# platform probe\n"
        "phys_cpu_cores=4\r\n"
        "virt_cpu_cores=8\n"
        "\n"
        "phys_mem_mb=1024\n"
        "virt_mem_mb=2048\n"
        "hw_page_size=4096\n"
        "max_file_desc=100\n"
        "max_threads=50\n"
        "comp_codecs= a , b ,\n");
    CHECK(env.phys_cpu_cores() == 4);
    CHECK(env.comp_codecs() == std::vector<std::string>{"a", "b"});
}

TEST_CASE("descriptor text errors carry the origin and line") {
    auto parse_bad = [](const std::string& text) {
        try {
            parse_environment_text(text, "probe.env");
            return std::string{};
        } catch (const ParseError& e) {
            return std::string(e.what());
        }
    };
    std::string base =
        "phys_cpu_cores=4\nvirt_cpu_cores=8\nphys_mem_mb=1024\nvirt_mem_mb=2048\n"
        "hw_page_size=4096\nmax_file_desc=100\nmax_threads=50\ncomp_codecs=a\n";

    std::string msg = parse_bad(base + "phys_cpu_cores=5\n");
    CHECK(msg.find("probe.env:9") != std::string::npos);  // duplicate key
    msg = parse_bad(base + "page_size=7\n");
    CHECK(msg.find("probe.env:9") != std::string::npos);  // unknown key
    msg = parse_bad("phys_cpu_cores=4\n");
    CHECK(msg.find("probe.env") != std::string::npos);    // missing keys
    msg = parse_bad(base.substr(0, base.find("4\n")) + "-4\n" + base.substr(base.find("4\n") + 2));
    CHECK(!msg.empty());                                   // negative numeric
    CHECK_THROWS_AS(parse_environment_text("phys_cpu_cores\n"), ParseError);
    CHECK_THROWS_AS(load_environment_file("/nonexistent/env.txt"), IoError);
}
