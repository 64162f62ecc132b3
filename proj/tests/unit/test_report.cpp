#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "lagcorr/correlation.hpp"
#include "lagcorr/report.hpp"
#include "test_support.hpp"

using namespace lagcorr;

TEST_SUITE("report") {
    TEST_CASE("three significant figures") {
        CHECK(report::three_significant(4.2951) == "4.3");
        CHECK(report::three_significant(-6.456) == "-6.46");
        CHECK(report::three_significant(0.0012345) == "0.00123");
    }

    TEST_CASE("text table puts leaders on rows and leaves unlisted cells blank") {
        const std::vector<std::string> ids{"RI", "SI", "BR"};
        LeaderFollowerEntry e;
        e.leader_id = "BR";
        e.follower_id = "SI";
        e.significance = -4.321;
        std::ostringstream out;
        report::write_table_text(out, ids, std::vector<LeaderFollowerEntry>{e});
        std::istringstream in(out.str());
        std::string header, ri, si, br;
        std::getline(in, header);
        std::getline(in, ri);
        std::getline(in, si);
        std::getline(in, br);
        CHECK(header.find("leader\\follower") == 0);
        CHECK(br.find("-4.32") != std::string::npos);
        CHECK(ri.find_first_not_of(' ', 2) == std::string::npos);
        CHECK(br.rfind("-4.32") < br.size() - 1);
    }

    TEST_CASE("correlation function CSV and JSON carry full precision") {
        const auto p = lagcorr::testing::white_noise(200, 2, 3);
        const auto f = correlation_function(p, 0, 1, 2);
        std::ostringstream csv, js;
        report::write_csv(csv, f);
        report::write_json(js, f);
        CHECK(csv.str().rfind("lag,raw,normalized,std_error,pair_count\n", 0) == 0);
        const auto doc = nlohmann::json::parse(js.str());
        CHECK(doc["lags"].size() == 5);
        CHECK(doc["lags"][1]["normalized"].get<double>() == f.lags[1].normalized_value);
        CHECK(doc["panel_hash"] == p.hash());
        CHECK(doc["window"]["start"].is_null());
    }
}
