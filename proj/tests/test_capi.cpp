// SPDX-FileCopyrightText: 2026 The bellkit authors
//
// SPDX-License-Identifier: Apache-2.0

// Exercises the shared library through its C header only.

#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>

#include <json.hpp>

#include "bellkit/bellkit.h"

using Json = nlohmann::json;

TEST_SUITE("capi") {

TEST_CASE("version and status names")
{
    CHECK(std::string(bk_version()) == "0.1.0");
    CHECK(std::string(bk_status_string(BK_OK)) == "Ok");
    CHECK(std::string(bk_status_string(BK_INVALID_PARAMETER)) == "InvalidParameter");
    CHECK(std::string(bk_status_string(BK_IO_ERROR)) == "IoError");
}

TEST_CASE("command list")
{
    std::vector<std::string> names;
    for (const char* p = bk_commands(); *p; p += std::strlen(p) + 1) names.emplace_back(p);
    CHECK(names.size() == 8);
    CHECK(std::find(names.begin(), names.end(), "witness-qqs") != names.end());
}

TEST_CASE("run, inspect and free a report")
{
    bk_report* r = nullptr;
    REQUIRE(bk_run("chsh-tilted", R"({"beta": 0})", &r) == BK_OK);
    REQUIRE(r != nullptr);
    const Json j = Json::parse(bk_report_json(r));
    CHECK(j["payload"]["quantum_value"]["value"].get<double>() == std::sqrt(8.0));
    CHECK(std::string(bk_report_value(r, "local_bound")) == "2.0");
    CHECK(bk_report_value(r, "missing") == nullptr);
    CHECK(std::string(bk_report_csv(r)).find("s,t,a,b,p") != std::string::npos);
    CHECK(std::string(bk_last_error()) == "{}");

    bk_report* back = nullptr;
    REQUIRE(bk_report_parse(bk_report_json(r), &back) == BK_OK);
    CHECK(std::string(bk_report_json(back)) == bk_report_json(r));
    bk_report_free(back);
    bk_report_free(r);
    bk_report_free(nullptr);
}

TEST_CASE("errors come back as codes with a JSON payload")
{
    bk_report* r = reinterpret_cast<bk_report*>(0x1);
    CHECK(bk_run("frobnicate", nullptr, &r) == BK_UNKNOWN_COMMAND);
    CHECK(r == nullptr);
    CHECK(Json::parse(bk_last_error())["code"] == "UnknownCommand");

    CHECK(bk_run("satwap", R"({"d": 1})", &r) == BK_INVALID_PARAMETER);
    const Json e = Json::parse(bk_last_error());
    CHECK(e["field"] == "d");
    CHECK(e["constraint"].get<std::string>().find("[2,") != std::string::npos);

    CHECK(bk_run("satwap", "{not json", &r) == BK_INVALID_PARAMETER);
    CHECK(bk_run(nullptr, nullptr, &r) == BK_NULL_ARGUMENT);
    CHECK(bk_run("satwap", nullptr, nullptr) == BK_NULL_ARGUMENT);
    CHECK(bk_report_parse("{}", &r) == BK_INVALID_PARAMETER);
}

TEST_CASE("write to file and IoError")
{
    bk_report* r = nullptr;
    REQUIRE(bk_run("embezzle", R"({"n": 1})", &r) == BK_OK);
    CHECK(bk_report_write(r, "/nonexistent-dir/x.json", BK_FORMAT_JSON) == BK_IO_ERROR);
    CHECK(Json::parse(bk_last_error())["code"] == "IoError");
    const char* path = "capi_test_out.csv";
    REQUIRE(bk_report_write(r, path, BK_FORMAT_CSV) == BK_OK);
    std::ifstream in(path);
    std::string line;
    std::size_t rows = 0;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#') ++rows;
    CHECK(rows == 145);  // header + 4*4*3*3
    std::remove(path);
    bk_report_free(r);
}

TEST_CASE("last error is per thread")
{
    bk_report* r = nullptr;
    CHECK(bk_run("frobnicate", nullptr, &r) == BK_UNKNOWN_COMMAND);
    std::string other;
    std::thread t([&] { other = bk_last_error(); });
    t.join();
    CHECK(other == "{}");
    CHECK(std::string(bk_last_error()) != "{}");
}

TEST_CASE("thread count setting")
{
    bk_set_threads(2);
    CHECK(bk_threads() == 2);
    bk_set_threads(1);
    CHECK(bk_threads() == 1);
}

}  // TEST_SUITE
