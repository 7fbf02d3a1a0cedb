#include "bellvol/behavior.hpp"
#include "bellvol/io.hpp"

#include <gtest/gtest.h>

using namespace bellvol;

namespace {

std::string message_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const InputError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST(PointJson, RoundTrip) {
    const CorrelationPoint p(0.125, -0.5, 1, -1);
    const Json j = point_to_json(p);
    EXPECT_EQ(j.dump(), R"({"c00":0.125,"c01":-0.5,"c10":1.0,"c11":-1.0})");
    EXPECT_EQ(point_from_json(j), p);
    EXPECT_EQ(parse_point(j.dump()), p);
}

TEST(PointJson, InlineForm) {
    EXPECT_EQ(parse_point("0,0,0,0"), CorrelationPoint(0, 0, 0, 0));
    EXPECT_EQ(parse_point("0.5, -0.25,1,-1"), CorrelationPoint(0.5, -0.25, 1, -1));
}

TEST(PointJson, ErrorsNameTheField) {
    EXPECT_NE(message_of([] { parse_point(R"({"c00":0,"c01":0,"c10":0})"); }).find("\"c11\""), std::string::npos);
    EXPECT_NE(message_of([] { parse_point(R"({"c00":0,"c01":"x","c10":0,"c11":0})"); }).find("\"c01\""),
              std::string::npos);
    EXPECT_NE(message_of([] { parse_point(R"({"c00":2,"c01":0,"c10":0,"c11":0})"); }).find("\"c00\""),
              std::string::npos);
    EXPECT_NE(message_of([] { parse_point(R"({"c00":0,"c01":0,"c10":0,"c11":0,"c12":0})"); }).find("\"c12\""),
              std::string::npos);
    EXPECT_NE(message_of([] { parse_point("0,0,abc,0"); }).find("\"c10\""), std::string::npos);
    EXPECT_FALSE(message_of([] { parse_point("0,0,0"); }).empty());
    EXPECT_FALSE(message_of([] { parse_point("0,0,0,0,0"); }).empty());
    EXPECT_FALSE(message_of([] { parse_point("{not json"); }).empty());
}

TEST(BehaviorJson, RoundTrip) {
    for (const auto& t : {pr_box(), signaling_example(), table_from_behavior(Behavior{})}) {
        const Json j = table_to_json(t);
        EXPECT_EQ(table_from_json(j), t);
        EXPECT_EQ(table_from_json(Json::parse(j.dump())), t);
    }
    const Json j = table_to_json(pr_box());
    EXPECT_EQ(j["settings"][3]["p"].dump(), R"({"++":"0","+-":"1/2","-+":"1/2","--":"0"})");
}

TEST(BehaviorJson, AcceptsIntegersAndRejectsMalformed) {
    Json j = table_to_json(table_from_behavior(deterministic_behavior(1, 1, 1, 1)));
    j["settings"][0]["p"]["++"] = 1;
    EXPECT_NO_THROW(table_from_json(j));
    Json missing = j;
    missing["settings"][2]["p"].erase("-+");
    EXPECT_NE(message_of([&] { table_from_json(missing); }).find("-+"), std::string::npos);
    Json bad = j;
    bad["settings"][1]["p"]["--"] = 0.5;
    EXPECT_THROW(table_from_json(bad), InputError);
    Json dup = j;
    dup["settings"][1]["i"] = 0;
    dup["settings"][1]["j"] = 0;
    EXPECT_THROW(table_from_json(dup), InputError);
    EXPECT_THROW(table_from_json(Json::object()), InputError);
}

TEST(EstimateJson, RoundTrip) {
    VolumeEstimate e;
    e.value = 10.5;
    e.std_error = 0.01;
    e.sample_count = 1000;
    e.region = "C";
    e.seed = 7;
    const Json j = estimate_to_json(e);
    EXPECT_EQ(j.dump(), R"({"region":"C","method":"monte-carlo","value":10.5,"std_error":0.01,"n":1000,"seed":7})");
    const VolumeEstimate back = estimate_from_json(j);
    EXPECT_EQ(back.value, e.value);
    EXPECT_EQ(back.std_error, e.std_error);
    EXPECT_EQ(back.sample_count, e.sample_count);
    EXPECT_EQ(back.region, e.region);
    EXPECT_EQ(back.method, e.method);
    EXPECT_EQ(back.seed, e.seed);
    Json bad = j;
    bad["method"] = "guess";
    EXPECT_THROW(estimate_from_json(bad), InputError);
    bad.erase("method");
    EXPECT_THROW(estimate_from_json(bad), InputError);
}

TEST(ProfileJson, HasEveryCharacterization) {
    const Json j = profile_to_json(membership_profile(CorrelationPoint(0, 0, 0, 0)));
    for (const char* k : {"C", "Q", "Q_landau", "Q_sextic", "U", "T", "L"}) {
        ASSERT_TRUE(j.contains(k)) << k;
        EXPECT_TRUE(j[k]["inside"].get<bool>());
    }
}
