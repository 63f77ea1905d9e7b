#include "bekk/error.hpp"
#include "bekk/io.hpp"

#include <doctest.h>

#include <filesystem>
#include <string>

using namespace bekk;

namespace {

std::string error_text(const std::string& json_text) {
    try {
        (void)parse_spec(json_text);
    } catch (const Error& e) {
        CHECK(e.code() != ErrorCode::Io);
        return e.what();
    }
    FAIL("expected a parse failure");
    return {};
}

}  // namespace

TEST_CASE("spec file parses, validates and round-trips") {
    const std::string text = R"({"d": 2, "l": 1, "A": [[[0.5, 0], [0, 0.6]]], "C": [[1, 0.3], [0.3, 1]], "A0": null})";
    const ModelSpec spec = parse_spec(text);
    CHECK(spec.d == 2);
    CHECK(spec.A[0](1, 1) == 0.6);
    CHECK_FALSE(spec.A0.has_value());

    const ModelSpec again = parse_spec(spec_to_json(spec).dump());
    CHECK(again == spec);
    CHECK(spec_digest(again) == spec_digest(spec));
    CHECK(spec_digest(spec).size() == 16);

    ModelSpec other = spec;
    other.A[0](0, 0) = 0.5000000001;
    CHECK(spec_digest(other) != spec_digest(spec));
}

TEST_CASE("spec round-trip preserves awkward doubles exactly") {
    ModelSpec spec = parse_spec(R"({"d": 1, "l": 1, "A": [[[0.1]]], "C": [[1]]})");
    spec.A[0](0, 0) = 0.8557432929874183;
    spec.C(0, 0) = 1.0 / 3.0;
    spec.A0 = Matrix(1, 1, 1e-17);
    CHECK(parse_spec(spec_to_json(spec).dump()) == spec);
}

TEST_CASE("spec parse errors report position or path") {
    CHECK(error_text(R"({"d": 2, "l": 1,, })").find("line 1") != std::string::npos);
    CHECK(error_text(R"({"d": 2, "l": 1, "A": [[[0.5, 0], [0, "x"]]], "C": [[1,0],[0,1]]})").find("/A/0/1/1") != std::string::npos);
    CHECK(error_text(R"({"d": 2, "l": 1, "A": [[[0.5, 0], [0]]], "C": [[1,0],[0,1]]})").find("/A/0/1") != std::string::npos);
    CHECK(error_text(R"({"l": 1, "A": [], "C": [[1]]})").find("/d") != std::string::npos);
    CHECK(error_text(R"({"d": 2, "l": 1, "A": [[[0.5, 0], [0, 0.5]]]})").find("/C") != std::string::npos);
}

TEST_CASE("spec validation errors pass through parsing") {
    try {
        (void)parse_spec(R"({"d": 2, "l": 1, "A": [[[0.5, 0], [0, 0.5]]], "C": [[1, 2], [2, 1]]})");
        FAIL("expected failure");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotPositiveDefinite);
    }
}

TEST_CASE("path CSV round-trips bit-exactly and rejects malformed input") {
    PathSample p = make_path(2, {1.0, -2.5, 1e-300, 3.141592653589793, -0.1, 7.0});
    const std::string csv = path_to_csv(p);
    CHECK(csv.rfind("t,x1,x2\n1,", 0) == 0);
    const PathSample back = path_from_csv(csv);
    CHECK(back.T == 3);
    CHECK(back.d == 2);
    CHECK(back.data == p.data);

    CHECK_THROWS_AS((void)path_from_csv("t,y1\n1,2\n"), Error);
    CHECK_THROWS_AS((void)path_from_csv("t,x1\n1,abc\n"), Error);
    CHECK_THROWS_AS((void)path_from_csv("t,x1,x2\n1,2\n"), Error);
    CHECK_THROWS_AS((void)path_from_csv("t,x1\n"), Error);
}

TEST_CASE("atomic write plus sidecar metadata load") {
    const auto dir = std::filesystem::temp_directory_path() / "bekk_io_test";
    std::filesystem::create_directories(dir);
    const auto csv = dir / "p.csv";
    PathSample p = make_path(1, {0.5, -0.25});
    p.seed = 42;
    p.burnin = 7;
    p.spec_digest = "abc";
    write_file_atomic(csv, path_to_csv(p));
    write_file_atomic(sidecar_path(csv), path_metadata(p).dump(2));
    CHECK_FALSE(std::filesystem::exists(dir / "p.csv.tmp"));

    const PathSample back = load_path(csv);
    CHECK(back.seed == 42);
    CHECK(back.burnin == 7);
    CHECK(back.spec_digest == "abc");
    CHECK(back.data == p.data);

    try {
        (void)load_path(dir / "missing.csv");
        FAIL("expected io failure");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Io);
    }
    std::filesystem::remove_all(dir);
}
