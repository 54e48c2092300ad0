#include <doctest.h>

#include "cs/capture.hpp"
#include "cs/scheme.hpp"

using namespace cs;

TEST_CASE("captures on the mixed type") {
    scheme_view v(mixed_example_type());
    ord_set f{0, 1, 2, 3};
    CHECK(captures(v, f, {{1}, {2}, {3}}));
    CHECK_FALSE(captures(v, f, {{0}}));
    CHECK_FALSE(captures(v, f, {{1}, {3}}));
    CHECK(fully_captures(v, f, {{1}, {2}, {3}}));
    CHECK_FALSE(fully_captures(v, f, {{1}, {2}}));
    CHECK(fully_captures(v, {0, 1}, {{0}, {1}}));
}

TEST_CASE("captured tuples of ordinals") {
    scheme_view v(mixed_example_type());
    CHECK(ordinal_tuple_captured(v, {1, 2, 3}) == 2);
    // {0,1} is the rank-1 member split into its two pieces
    CHECK(ordinal_tuple_captured(v, {0, 1}) == 1);
    for (ordinal a = 0; a < 30; ++a) CHECK(ordinal_tuple_captured(v, {a}) == 0);
}

TEST_CASE("scanning a family") {
    scheme_view ts(mixed_example_type());
    capture_query q;
    q.family = {{1}, {2}, {3}};
    q.n = 3;
    q.window = 4;
    auto hits = scan_captured(ts, q);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].l == 2);
    CHECK(hits[0].f == ord_set{0, 1, 2, 3});
    CHECK(hits[0].indices == std::vector<std::size_t>{0, 1, 2});

    q.family = {{1}, {2}};
    CHECK(scan_captured(ts, q).empty());

    scheme_view t2(default_binary_type());
    q.family.clear();
    for (ordinal x = 0; x < 6; ++x) q.family.push_back({x});
    q.n = 2;
    q.window = 6;
    hits = scan_captured(t2, q);
    CHECK_FALSE(hits.empty());
    for (const auto& h : hits) {
        std::vector<ord_set> c;
        for (auto i : h.indices) c.push_back(q.family[i]);
        CHECK(captures(t2, h.f, c));
    }
}
