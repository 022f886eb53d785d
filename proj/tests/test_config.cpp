#include <doctest.h>

#include <cstdlib>

#include "inventro/config.hpp"

using namespace inventro;

TEST_CASE("parse_config: the Table-I setup") {
    RunConfig cfg = parse_config(
        "system = linear2d\n"
        "eta_s = 0.01 0.01\n"
        "eta_i = 0.5\n"
        "determinizer = maxfreq\n");
    CHECK(cfg.system == "linear2d");
    REQUIRE(cfg.eta_s.size() == 2);
    CHECK(cfg.eta_s[0] == 0.01);
    CHECK(cfg.eta_i == std::vector<double>{0.5});
    CHECK(cfg.determinizer == "maxfreq");
    CHECK(cfg.substeps == 10);
    CHECK(cfg.max_cells == 1000000000LL);
}

TEST_CASE("parse_config: empty file lists the required keys") {
    try {
        parse_config("");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        std::string msg = e.what();
        CHECK(msg.find("system") != std::string::npos);
        CHECK(msg.find("eta_s") != std::string::npos);
        CHECK(msg.find("eta_i") != std::string::npos);
    }
}

TEST_CASE("parse_config: enumerated determinizer values") {
    try {
        parse_config("system = linear2d\neta_s = 0.1\neta_i = 0.5\ndeterminizer = banana\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 4);
        CHECK(std::string(e.what()).find("banana") != std::string::npos);
    }
}

TEST_CASE("parse_config: unknown keys carry the line number") {
    try {
        parse_config("system = linear2d\nwibble = 3\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(std::string(e.what()).find("wibble") != std::string::npos);
    }
}

TEST_CASE("parse_config: malformed numbers and constraint violations") {
    CHECK_THROWS_AS(parse_config("system = linear2d\neta_s = fast\neta_i = 0.5\n"), ParseError);
    CHECK_THROWS_AS(parse_config("system = linear2d\neta_s = -0.1\neta_i = 0.5\n"), ParseError);
    CHECK_THROWS_AS(
        parse_config("system = pendulum\nb = 1\nrho = 5\neta_s = 1e-4\neta_i = 0.2\n"),
        ParseError);
    CHECK_THROWS_AS(parse_config("system = linear2d\neta_s = 0.1\neta_i = 0.5\nT_s = -1\n"),
                    ParseError);
}

TEST_CASE("parse_config: comments, blank lines and domain overrides") {
    RunConfig cfg = parse_config(
        "# full pipeline\n"
        "system = henon   # system under test\n"
        "\n"
        "eps = 0.3\n"
        "eta_s = 0.01\n"
        "eta_i = 0.1\n"
        "domain = -1 1 -2 2\n"
        "intersect_reversed = true\n"
        "threads = 2\n"
        "out_dir = /tmp/x\n");
    CHECK(cfg.system == "henon");
    CHECK(cfg.intersect_reversed);
    REQUIRE(cfg.domain.has_value());
    CHECK(cfg.domain->lower[1] == -2.0);
    CHECK(cfg.threads == 2);
    CHECK(cfg.out_dir == "/tmp/x");
}

TEST_CASE("effective_threads: INVENTRO_THREADS wins") {
    RunConfig cfg;
    cfg.threads = 2;
    setenv("INVENTRO_THREADS", "5", 1);
    CHECK(effective_threads(cfg) == 5);
    unsetenv("INVENTRO_THREADS");
    CHECK(effective_threads(cfg) == 2);
    cfg.threads = 0;
    CHECK(effective_threads(cfg) >= 1);
}
