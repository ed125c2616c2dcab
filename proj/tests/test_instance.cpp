#include <doctest.h>

#include "bp2d/instance.hpp"
#include "oracle.hpp"

using namespace bp2d;

TEST_CASE("parse native instances") {
    Instance inst = parse_instance("3\n10 10\n6 6\n6 6\n6 6\n",
                                   FileFormat::Native);
    CHECK(inst.n() == 3);
    CHECK(inst.W == 10);
    CHECK(inst.H == 10);
    for (const Item& it : inst.items) {
        CHECK(it.w == 6);
        CHECK(it.h == 6);
    }
    CHECK(inst.m == 3);

    Instance one = parse_instance("1\n7 5\n7 5\n", FileFormat::Native);
    CHECK(one.n() == 1);
    CHECK(one.items[0].w == one.W);
    CHECK(one.items[0].h == one.H);
}

TEST_CASE("parse rejects bad input") {
    CHECK_THROWS_WITH_AS(
        parse_instance("2\n10 10\n11 3\n2 2\n", FileFormat::Native),
        "line 3: item 0 exceeds bin width", ParseError);
    CHECK_THROWS_AS(parse_instance("2\n10 10\n3 0\n2 2\n", FileFormat::Native),
                    ParseError);
    CHECK_THROWS_AS(parse_instance("2\n10 10\n3 3\n", FileFormat::Native),
                    ParseError);
    CHECK_THROWS_AS(parse_instance("", FileFormat::Native), ParseError);
}

TEST_CASE("twobp import variants") {
    // Optional class/id tokens between n and the bin line.
    Instance a = parse_instance("2\n1 7\n10 12\n4 5\n6 7\n", FileFormat::TwoBP);
    CHECK(a.W == 10);
    CHECK(a.H == 12);
    CHECK(a.items[1].w == 6);

    // Same file read with swapped dimension order.
    Instance b = parse_instance("2\n1 7\n10 12\n4 5\n6 7\n", FileFormat::TwoBP,
                                DimsOrder::HW);
    CHECK(b.W == 12);
    CHECK(b.H == 10);
    CHECK(b.items[0].w == 5);
    CHECK(b.items[0].h == 4);

    // Text headers are skipped as comments.
    Instance c = parse_instance(
        "bin packing instance\n2\n10 12\n4 5\n6 7\n", FileFormat::TwoBP);
    CHECK(c.W == 10);
    CHECK(c.n() == 2);
}

TEST_CASE("parse of serialize is identity") {
    for (uint64_t seed = 0; seed < 50; ++seed) {
        Instance inst = bp2d::testing::random_instance(seed, 1, 12, 10, 10);
        for (FileFormat fmt : {FileFormat::Native, FileFormat::TwoBP}) {
            for (DimsOrder ord : {DimsOrder::WH, DimsOrder::HW}) {
                Instance back =
                    parse_instance(serialize_instance(inst, fmt, ord), fmt, ord);
                REQUIRE(back.n() == inst.n());
                CHECK(back.W == inst.W);
                CHECK(back.H == inst.H);
                for (int j = 0; j < inst.n(); ++j) {
                    CHECK(back.items[j].w == inst.items[j].w);
                    CHECK(back.items[j].h == inst.items[j].h);
                }
            }
        }
    }
}

TEST_CASE("continuous bound is exact and permutation-invariant") {
    Instance inst = parse_instance("3\n10 10\n6 6\n6 6\n6 6\n",
                                   FileFormat::Native);
    CHECK(continuous_bound(inst) == Rational(108, 100));

    Instance one = parse_instance("1\n7 5\n7 5\n", FileFormat::Native);
    CHECK(continuous_bound(one) == Rational(1, 1));

    Instance tiling = parse_instance("2\n10 10\n10 5\n10 5\n",
                                     FileFormat::Native);
    CHECK(continuous_bound(tiling) == Rational(1, 1));

    for (uint64_t seed = 0; seed < 20; ++seed) {
        Instance a = bp2d::testing::random_instance(seed, 2, 10, 10, 10);
        Instance b = a;
        std::reverse(b.items.begin(), b.items.end());
        for (int j = 0; j < b.n(); ++j) b.items[j].id = j;
        CHECK(continuous_bound(a) == continuous_bound(b));
    }
}

TEST_CASE("verify_solution reports violations") {
    Instance inst = parse_instance("2\n10 10\n5 10\n5 10\n",
                                   FileFormat::Native);
    Solution ok;
    ok.bins.push_back({{0, 1}, {{0, 0, 0}, {1, 5, 0}}});
    CHECK(!verify_solution(inst, ok));

    Instance two = parse_instance("2\n10 10\n6 6\n6 6\n", FileFormat::Native);
    Solution overlap;
    overlap.bins.push_back({{0, 1}, {{0, 0, 0}, {1, 0, 0}}});
    auto report = verify_solution(two, overlap);
    REQUIRE(report.has_value());
    CHECK(*report == "overlap(0,1)");

    Instance three = parse_instance("3\n10 10\n2 2\n2 2\n2 2\n",
                                    FileFormat::Native);
    Solution missing;
    missing.bins.push_back({{0, 1}, {{0, 0, 0}, {1, 2, 0}}});
    auto rep2 = verify_solution(three, missing);
    REQUIRE(rep2.has_value());
    CHECK(*rep2 == "item 2 unassigned");

    Solution oob;
    oob.bins.push_back({{0, 1, 2}, {{0, 9, 0}, {1, 2, 0}, {2, 4, 0}}});
    CHECK(verify_solution(three, oob).has_value());
}

TEST_CASE("solution json export") {
    Solution sol;
    sol.status = SolveStatus::Optimal;
    sol.lower_bound = sol.upper_bound = 1;
    sol.bins.push_back({{0}, {{0, 0, 0}}});
    std::string js = solution_to_json(sol);
    CHECK(js.find("\"status\": \"Optimal\"") != std::string::npos);
    CHECK(js.find("\"L\": 1") != std::string::npos);
    CHECK(js.find("\"bins\"") != std::string::npos);
}
