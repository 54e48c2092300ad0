#include <doctest.h>

#include "cs/error.hpp"
#include "cs/forcing.hpp"
#include "cs/ih2.hpp"
#include "cs/io.hpp"

using namespace cs;

namespace {

constexpr ordinal w = omega_times(1);

}  // namespace

TEST_CASE("red") {
    CHECK(red({0, w, w + 1}, w) == ord_set{0, 1, 2});
    CHECK(red({0, 3, 7}, w) == ord_set{0, 3, 7});
    CHECK(red({w, w + 1}, w) == ord_set{0, 1});
}

TEST_CASE("cut") {
    omega_ground g(default_binary_type());
    CHECK(cut(g, {0, 1, 2}, 1) == ord_set{0, w, w + 1});
    CHECK(cut(g, {0, 1, 2}, 0) == ord_set{w, w + 1, w + 2});
    CHECK_THROWS_AS(cut(g, {0, 1, 2}, 5), error);
    for (ordinal a : {0, 1, 2}) {
        auto p = cut(g, {0, 1, 2}, a);
        CHECK(is_condition(g, p));
        CHECK(red(p, w) == ord_set{0, 1, 2});
    }
}

TEST_CASE("conditions and order") {
    omega_ground g(default_binary_type());
    ord_set p{0, w, w + 1};
    CHECK(is_condition(g, p));
    CHECK(leq(g.type(), p, p));
    CHECK_FALSE(is_condition(g, {0, w + 1}));
    CHECK(is_condition(g, {w}));
}

TEST_CASE("IH1 witnesses in omega") {
    omega_ground g(default_binary_type());
    CHECK(g.ih1_witness({0, 1}, 1) == iota_set(0, 3));
    CHECK(g.ih1_witness({}, 0) == iota_set(0, 2));
}

TEST_CASE("generic build is replayable") {
    omega_ground g(default_binary_type());
    std::vector<demand> ds{{demand::kind::root, w + 3, 3, {}}, {demand::kind::contain, 5, 0, {}}};
    auto a = generic_build(g, ds);
    auto b = generic_build(g, ds);
    CHECK(a->condition() == b->condition());
    CHECK(is_condition(g, a->condition()));
    auto la = a->log(), lb = b->log();
    REQUIRE(la.size() == lb.size());
    for (std::size_t i = 0; i < la.size(); ++i) CHECK(record_to_json(la[i]) == record_to_json(lb[i]));
    for (const auto& d : ds) CHECK(demand_from_json(demand_to_json(d)).alpha == d.alpha);
    // the fragment restricted to omega is the ground scheme
    for (ordinal x = 0; x < 20; ++x)
        for (level k = 0; k <= 3; ++k) CHECK(a->closure(x, k) == g.closure(x, k));
}

TEST_CASE("IH2 helpers") {
    CHECK(limits_below(w).empty());
    CHECK(limits_below(omega_times(3) + 1) == std::vector<ordinal>{w, omega_times(2), omega_times(3)});
    omega_ground g(default_binary_type());
    auto f = generic_build(g, {{demand::kind::root, w + 3, 3, {}}});
    scan_bounds b;
    b.window = 10;
    good_sequence T{{{}, 1}};
    auto j = j_value(*f, 2, 3, w + 1, w, {}, T, b);
    CHECK(j.j == 0);
}

TEST_CASE("goodness") {
    CHECK(is_interval({3, 4, 5}));
    CHECK_FALSE(is_interval({3, 5}));
    CHECK(in_bl({}, 0, 4));
}

TEST_CASE("Trans keeps goodness") {
    omega_ground g(default_binary_type());
    const auto& ty = g.type();
    // S must be nonempty
    CHECK_THROWS_AS(trans(g, 2, 3, 0, 5, {}), error);
    std::uint64_t produced = 0, empty = 0;
    for (ordinal beta = 1; beta < 19; ++beta)
        for (level k2 = 3; k2 <= 4; ++k2)
            for (auto alpha : g.closure(beta, k2)) {
                if (alpha == beta) continue;
                auto t = g.closure_position(beta, 2);
                for (const auto& e : good_entries(ty, t, 2, t + 1, 1)) {
                    auto out = trans(g, 2, k2, alpha, beta, {e});
                    if (out.empty()) {
                        ++empty;
                        continue;
                    }
                    ++produced;
                    CHECK(is_good(ty, out, g.closure_position(alpha, k2), k2));
                }
            }
    CHECK(produced > 0);
    MESSAGE(produced << " nonempty, " << empty << " empty outputs");
}
