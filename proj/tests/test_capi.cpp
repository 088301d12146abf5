#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>
#include <string>

#include "cohfluct/cohfluct.h"
#include "json.hpp"

namespace {

const char* kConfig = R"({
  "p": [0.5, 0.25, 0.125, 0.125],
  "q": [0.25, 0.25, 0.25, 0.25],
  "u": 2, "n": 11,
  "out_dir": "capi_out"
})";

}  // namespace

TEST_CASE("create, run, inspect, destroy") {
    cohf_experiment* exp = nullptr;
    REQUIRE(cohf_experiment_create(kConfig, &exp) == COHF_OK);
    REQUIRE(exp != nullptr);
    CHECK(cohf_experiment_checks_passed(exp) == -1);
    CHECK(cohf_experiment_report(exp) == nullptr);
    CHECK(std::string(cohf_experiment_out_dir(exp)) == "capi_out");

    REQUIRE(cohf_experiment_run(exp) == COHF_OK);
    CHECK(cohf_experiment_checks_passed(exp) == 1);
    const char* report = cohf_experiment_report(exp);
    REQUIRE(report != nullptr);
    auto j = nlohmann::json::parse(report);
    CHECK(j["all_passed"] == true);
    CHECK(j["window"]["N"] == 9);

    const char* pw = cohf_experiment_artifact(exp, "p_w.csv");
    REQUIRE(pw != nullptr);
    CHECK(std::strncmp(pw, "f,w_nats,probability", 20) == 0);
    CHECK(cohf_experiment_artifact(exp, "no_such.csv") == nullptr);
    cohf_experiment_destroy(exp);
}

TEST_CASE("sweep and oracle through the C API") {
    nlohmann::json j = nlohmann::json::parse(kConfig);
    j["sweep"] = {{"n", {7, 15, 4}}};
    std::string text = j.dump();
    cohf_experiment* exp = nullptr;
    REQUIRE(cohf_experiment_create(text.c_str(), &exp) == COHF_OK);
    REQUIRE(cohf_experiment_sweep(exp) == COHF_OK);
    CHECK(cohf_experiment_artifact(exp, "sweep.csv") != nullptr);
    CHECK(cohf_experiment_checks_passed(exp) == 1);
    cohf_experiment_destroy(exp);

    const char* oracle_cfg = R"({"p": [0.5, 0.5], "q": [1.0, 0.0], "u": 2, "n": 6})";
    REQUIRE(cohf_experiment_create(oracle_cfg, &exp) == COHF_OK);
    REQUIRE(cohf_experiment_oracle(exp) == COHF_OK);
    CHECK(cohf_experiment_checks_passed(exp) == 1);
    cohf_experiment_destroy(exp);
}

TEST_CASE("configuration errors carry the field message") {
    cohf_experiment* exp = nullptr;
    CHECK(cohf_experiment_create(R"({"p": [0.5, 0.48], "q": [1.0], "u": 2})", &exp) ==
          COHF_ERR_CONFIG);
    CHECK(exp == nullptr);
    CHECK(std::string(cohf_last_error()).find("p: sum=0.98") != std::string::npos);
    CHECK(cohf_validate_config(kConfig) == COHF_OK);
    CHECK(cohf_validate_config("{") == COHF_ERR_CONFIG);
}

TEST_CASE("module errors surface with distinct statuses") {
    // non-dyadic ratios on the exact grid
    cohf_experiment* exp = nullptr;
    REQUIRE(cohf_experiment_create(R"({"p": [0.6, 0.4], "q": [0.5, 0.5], "u": 2})", &exp) ==
            COHF_OK);
    CHECK(cohf_experiment_run(exp) == COHF_ERR_GRID);
    CHECK(cohf_experiment_checks_passed(exp) == -1);
    cohf_experiment_destroy(exp);

    // oracle size cap
    REQUIRE(cohf_experiment_create(R"({"p": [0.5, 0.5], "q": [1.0, 0.0], "u": 2, "n": 9})",
                                   &exp) == COHF_OK);
    CHECK(cohf_experiment_oracle(exp) == COHF_ERR_SIZE_CAP);
    cohf_experiment_destroy(exp);

    // a requested check whose preconditions fail
    REQUIRE(cohf_experiment_create(
                R"({"p": [0.5, 0.5], "q": [1.0, 0.0], "u": 2, "n": 3, "checks": ["crooks"]})",
                &exp) == COHF_OK);
    CHECK(cohf_experiment_run(exp) == COHF_ERR_WINDOW);
    cohf_experiment_destroy(exp);
}

TEST_CASE("null-argument handling and status names") {
    CHECK(cohf_experiment_create(nullptr, nullptr) == COHF_ERR_ARGUMENT);
    CHECK(cohf_experiment_run(nullptr) == COHF_ERR_ARGUMENT);
    CHECK(cohf_experiment_checks_passed(nullptr) == -1);
    CHECK(cohf_experiment_report(nullptr) == nullptr);
    CHECK(std::string(cohf_status_name(COHF_OK)) == "COHF_OK");
    CHECK(std::string(cohf_status_name(COHF_ERR_GRID)) == "COHF_ERR_GRID");
    CHECK(std::string(cohf_version()).find('.') != std::string::npos);
    cohf_experiment_destroy(nullptr);  // must be a no-op
}
