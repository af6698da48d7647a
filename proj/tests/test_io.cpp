#include "arrmc/errors.hpp"
#include "arrmc/io.hpp"
#include "corpus.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>

using namespace arrmc;

namespace {

Json reparse(const Json& j) {
    return Json::parse(j.dump());
}

std::filesystem::path corpus_file(const std::string& name) {
    const char* dir = std::getenv("ARRMC_CORPUS_DIR");
    REQUIRE(dir != nullptr);
    return std::filesystem::path(dir) / name;
}

} // namespace

TEST_CASE("arrangement round trip") {
    for (const auto& c : corpus::goodness_cases()) {
        CAPTURE(c.name);
        Json j = to_json(c.arrangement);
        CHECK(j.begin().key() == "schema");
        CHECK(arrangement_from_json(reparse(j)) == c.arrangement);
        CHECK(line_from_json(reparse(to_json(c.line))) == c.line);
    }
}

TEST_CASE("system round trip") {
    for (const auto& c : corpus::system_cases()) {
        CAPTURE(c.name);
        Json j = to_json(c.system);
        CHECK(system_from_json(reparse(j)) == c.system);
        CHECK(reparse(j).dump() == j.dump());
    }
}

TEST_CASE("tuple round trip") {
    for (const auto& c : corpus::numeric_tuples()) {
        CAPTURE(c.name);
        ParsedTuple p = tuple_from_json(reparse(to_json(c.tuple)));
        CHECK_FALSE(p.exact.has_value());
        REQUIRE(p.numeric.size() == c.tuple.size());
        for (size_t k = 0; k < c.tuple.size(); ++k)
            CHECK(p.numeric.matrices[k] == c.tuple.matrices[k]);
    }
    for (const auto& c : corpus::exact_tuples()) {
        CAPTURE(c.name);
        ParsedTuple p = tuple_from_json(reparse(to_json(c.tuple)));
        REQUIRE(p.exact.has_value());
        CHECK(p.exact->matrices == c.tuple.matrices);
    }
}

TEST_CASE("characters and rational lists") {
    CHECK(character_from_json(reparse(character_to_json(Scalar(-2, 3)))) == Scalar(-2, 3));
    CHECK(character_from_json(Json::parse(R"({"lambda": "1/5"})")) == Scalar(1, 5));
    CHECK(parse_rational_list("0,1") == std::vector<Scalar>{0, 1});
    CHECK(parse_rational_list(" 1/2 , -3") == std::vector<Scalar>{Scalar(1, 2), -3});
    CHECK_THROWS_AS(parse_rational_list("1,,2"), InputError);
    CHECK_THROWS_AS(parse_rational_list(""), InputError);
}

TEST_CASE("readers reject malformed input") {
    CHECK_THROWS_AS(line_from_json(Json::parse(R"({"direction": ["0", "1"], "extra": 1})")), InputError);
    CHECK_THROWS_AS(line_from_json(Json::parse(R"({"schema": 2, "direction": ["0", "1"]})")), InputError);
    CHECK_THROWS_AS(line_from_json(Json::parse(R"({"direction": [0.5, 1]})")), InputError);
    CHECK(line_from_json(Json::parse(R"({"direction": [0, 2]})")).direction() == std::vector<Scalar>{0, 1});
    CHECK_THROWS_AS(line_from_json(Json::parse(R"({"direction": ["0", "0"]})")), InputError);
    CHECK_THROWS_AS(arrangement_from_json(Json::parse(R"({"dim": 2, "hyperplanes": [{"label": "a",
        "coeffs": ["1"], "constant": "0"}]})")),
                    InputError);
    CHECK_THROWS_AS(tuple_from_json(Json::parse(R"({"rank": 2, "matrices": [[["1"]]]})")), DimensionMismatch);
    CHECK_THROWS_AS(tuple_from_json(Json::parse(R"({"rank": 1, "matrices": [[[true]]]})")), InputError);
    CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), InputError);
}

TEST_CASE("system files") {
    PfaffianSystem s = system_from_json(read_json_file(corpus_file("four_lines_system.json")));
    CHECK(s == corpus::four_lines(Scalar(1, 2), Scalar(1, 3), 0, 0));

    Json j = to_json(s);
    j["residues"].erase("H4");
    CHECK(system_from_json(j) == s);
    j["residues"]["H9"] = Json::array({Json::array({"1"})});
    CHECK_THROWS_AS(system_from_json(j), InputError);

    Json bad = read_json_file(corpus_file("non_integrable_system.json"));
    CHECK_THROWS_AS(system_from_json(bad), NonIntegrableInput);
    CHECK_NOTHROW(system_from_json(bad, PfaffianSystem::Check::Unchecked));
}

TEST_CASE("every corpus file parses") {
    CHECK(arrangement_from_json(read_json_file(corpus_file("four_lines.json"))).size() == 4);
    CHECK(arrangement_from_json(read_json_file(corpus_file("m05.json"))).size() == 5);
    CHECK(arrangement_from_json(read_json_file(corpus_file("braid3.json"))).dim() == 3);
    CHECK(line_from_json(read_json_file(corpus_file("line_y.json"))).direction() == std::vector<Scalar>{0, 1});
    CHECK(system_from_json(read_json_file(corpus_file("integer_eigenvalue_system.json"))).dim_e() >= 1);
    CHECK_FALSE(tuple_from_json(read_json_file(corpus_file("tuple_rank1.json"))).exact.has_value());
    CHECK(tuple_from_json(read_json_file(corpus_file("tuple_exact.json"))).exact.has_value());
}
