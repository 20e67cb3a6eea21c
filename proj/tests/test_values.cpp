#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rwtc/values.hpp"

using namespace rwtc;

TEST_CASE("tipe names round-trip") {
    for (RTipe t : {RTipe::Int, RTipe::Pos, RTipe::NonNeg, RTipe::Str, RTipe::Bool, RTipe::Float,
                    RTipe::JavaOpts, RTipe::OptionPos}) {
        auto back = rtipe_from_name(rtipe_name(t));
        REQUIRE(back.has_value());
        CHECK(*back == t);
    }
    CHECK(!rtipe_from_name("integer").has_value());
    CHECK(!rtipe_from_name("").has_value());
    CHECK(!rtipe_from_name("Pos").has_value());
}

TEST_CASE("numeric refinements are enforced at construction") {
    CHECK(BaseValue::make_pos(1).as_int() == 1);
    CHECK_THROWS_AS(BaseValue::make_pos(0), ValueError);
    CHECK_THROWS_AS(BaseValue::make_pos(-3), ValueError);
    CHECK(BaseValue::make_nonneg(0).as_int() == 0);
    CHECK_THROWS_AS(BaseValue::make_nonneg(-1), ValueError);
    CHECK(BaseValue::opt_pos_some(1).as_opt_pos().value() == 1);
    CHECK_THROWS_AS(BaseValue::opt_pos_some(0), ValueError);
    CHECK(!BaseValue::opt_pos_none().as_opt_pos().has_value());
}

TEST_CASE("integers are arbitrary precision") {
    BigInt big = BigInt(1) << 100;
    BaseValue v = BaseValue::make_int(-big);
    CHECK(v.as_int() == -(BigInt(1) << 100));
    CHECK(render_base_value(v) == "-1267650600228229401496703205376");
}

TEST_CASE("float literals parse and keep their text") {
    CHECK(FloatValue::parse("0.05").value() == doctest::Approx(0.05));
    CHECK(FloatValue::parse("0.05").text() == "0.05");
    CHECK(FloatValue::parse("1e3").value() == doctest::Approx(1000.0));
    CHECK(FloatValue::parse("-.5").value() == doctest::Approx(-0.5));
    CHECK(FloatValue::parse("+2.").value() == doctest::Approx(2.0));
    CHECK_THROWS_AS(FloatValue::parse(""), ValueError);
    CHECK_THROWS_AS(FloatValue::parse("."), ValueError);
    CHECK_THROWS_AS(FloatValue::parse("1e"), ValueError);
    CHECK_THROWS_AS(FloatValue::parse("0x10"), ValueError);
    CHECK_THROWS_AS(FloatValue::parse("inf"), ValueError);
    CHECK_THROWS_AS(FloatValue::parse("nan"), ValueError);
    CHECK_THROWS_AS(FloatValue::parse("1.5f"), ValueError);
    CHECK_THROWS_AS(FloatValue::parse(" 1"), ValueError);
}

TEST_CASE("float equality uses a small tolerance, not the text") {
    CHECK(FloatValue::parse("0.05") == FloatValue::parse("0.050000"));
    CHECK(FloatValue::parse("0.05") == FloatValue::parse("5e-2"));
    CHECK(FloatValue::parse("1.0") != FloatValue::parse("1.001"));
}

TEST_CASE("JVM option records enforce heap ordering") {
    CHECK_THROWS_AS(JavaOptsRec::create(2048, 1024, {}), ValueError);
    CHECK_THROWS_AS(JavaOptsRec::create(0, 1024, {}), ValueError);
    CHECK_THROWS_AS(JavaOptsRec::create(512, 1024, {"-Xms256m"}), ValueError);
    JavaOptsRec rec = JavaOptsRec::create(512, 1024, {"-verbose:gc"});
    CHECK(rec.init_heap_mb() == 512);
    CHECK(rec.max_heap_mb() == 1024);
    CHECK(rec.extra_flags() == std::vector<std::string>{"-verbose:gc"});
}

TEST_CASE("JVM option strings lift with unit normalization") {
    JavaOptsRec rec = parse_java_opts("-Xms512m -Xmx1024m");
    CHECK(rec.init_heap_mb() == 512);
    CHECK(rec.max_heap_mb() == 1024);
    CHECK(rec.extra_flags().empty());

    rec = parse_java_opts("-Xms1g -Xmx2G");
    CHECK(rec.init_heap_mb() == 1024);
    CHECK(rec.max_heap_mb() == 2048);

    // k rounds up to whole megabytes.
    rec = parse_java_opts("-Xms1500k -Xmx2048K");
    CHECK(rec.init_heap_mb() == 2);
    CHECK(rec.max_heap_mb() == 2);

    rec = parse_java_opts("-verbose:gc -Xms256m -XX:+UseG1GC -Xmx512m");
    CHECK(rec.extra_flags() == std::vector<std::string>{"-verbose:gc", "-XX:+UseG1GC"});
}

TEST_CASE("JVM option strings that cannot mean anything are rejected") {
    CHECK_THROWS_AS(parse_java_opts("-Xms4096m -Xmx1024m"), LiftError);  // init > max
    CHECK_THROWS_AS(parse_java_opts("-Xmx1024m"), LiftError);            // missing -Xms
    CHECK_THROWS_AS(parse_java_opts("-Xms512m"), LiftError);             // missing -Xmx
    CHECK_THROWS_AS(parse_java_opts("-Xms512m -Xms256m -Xmx1g"), LiftError);
    CHECK_THROWS_AS(parse_java_opts("-Xms512q -Xmx1024m"), LiftError);   // unknown unit
    CHECK_THROWS_AS(parse_java_opts("-Xmsbigm -Xmx1024m"), LiftError);
    CHECK_THROWS_AS(parse_java_opts("-Xms0m -Xmx1024m"), LiftError);
    CHECK_THROWS_AS(parse_java_opts(""), LiftError);
    try {
        parse_java_opts("-Xms4096m -Xmx1024m");
        FAIL("expected a lift error");
    } catch (const LiftError& e) {
        CHECK(e.raw_value == "-Xms4096m -Xmx1024m");
        CHECK(e.expected_tipe == "javaopts");
    }
}

TEST_CASE("values render to canonical text") {
    CHECK(render_base_value(BaseValue::make_int(-7)) == "-7");
    CHECK(render_base_value(BaseValue::make_pos(42)) == "42");
    CHECK(render_base_value(BaseValue::make_str("a b")) == "a b");
    CHECK(render_base_value(BaseValue::make_bool(true)) == "true");
    CHECK(render_base_value(BaseValue::make_bool(false)) == "false");
    CHECK(render_base_value(BaseValue::make_float("0.05")) == "0.05");
    CHECK(render_base_value(BaseValue::opt_pos_none()) == "none");
    CHECK(render_base_value(BaseValue::opt_pos_some(3)) == "3");
    CHECK(render_base_value(BaseValue::make_jvm(parse_java_opts("-Xms1g -Xmx2g -ea"))) ==
          "-Xms1024m -Xmx2048m -ea");
}

TEST_CASE("value equality distinguishes tipes with equal payloads") {
    CHECK(BaseValue::make_int(1) == BaseValue::make_int(1));
    CHECK(BaseValue::make_int(1) != BaseValue::make_pos(1));
    CHECK(BaseValue::make_pos(1) != BaseValue::make_pos(2));
    CHECK(BaseValue::opt_pos_none() != BaseValue::opt_pos_some(1));
    CHECK(BaseValue::make_float("0.5") == BaseValue::make_float("0.50"));
}
