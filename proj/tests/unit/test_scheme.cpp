#include <doctest.h>

#include <algorithm>
#include <set>

#include "cs/error.hpp"
#include "cs/scheme.hpp"
#include "cs/type.hpp"

using namespace cs;

namespace {

// F(m_k) glued from n_k shifted copies of F(m_{k-1}) over the root r_k
std::set<ord_set> glued(const type_spec& t, level k) {
    if (k == 0) return {{0}};
    auto prev = glued(t, k - 1);
    std::uint64_t r = t.r(k), w = t.m(k - 1) - r;
    std::set<ord_set> out;
    for (std::uint64_t i = 0; i < t.n(k); ++i)
        for (const auto& s : prev) {
            ord_set img;
            for (auto x : s) img.push_back(x < r ? x : x + i * w);
            out.insert(img);
        }
    out.insert(iota_set(0, t.m(k)));
    return out;
}

std::set<ord_set> as_set(const level_table& tab) { return {tab.sets.begin(), tab.sets.end()}; }

}  // namespace

TEST_CASE("finite schemes of the mixed type") {
    scheme_view v(mixed_example_type());
    CHECK(as_set(v.finite_scheme(0)) == std::set<ord_set>{{0}});
    CHECK(as_set(v.finite_scheme(1)) == std::set<ord_set>{{0}, {1}, {0, 1}});
    CHECK(as_set(v.finite_scheme(2)) ==
          std::set<ord_set>{{0}, {1}, {2}, {3}, {0, 1}, {0, 2}, {0, 3}, {0, 1, 2, 3}});
}

TEST_CASE("finite schemes agree with the gluing recursion") {
    for (const char* name : {"T2", "Tstar", "Texp"}) {
        auto t = *builtin_type(name);
        scheme_view v(t);
        for (level k = 0; k <= 5 && t.m(k) <= 200; ++k) {
            INFO(name << " k=" << k);
            CHECK(as_set(v.finite_scheme(k)) == glued(t, k));
            auto direct = build_finite_scheme(t, k);
            CHECK(std::set<ord_set>(direct.begin(), direct.end()) == glued(t, k));
        }
    }
}

TEST_CASE("membership and decomposition") {
    scheme_view ts(mixed_example_type());
    CHECK(ts.is_member({0, 2}));
    CHECK_FALSE(ts.is_member({1, 2}));
    CHECK_FALSE(ts.is_member({0, 1, 2}));

    auto d = ts.decompose({0, 1, 2, 3});
    CHECK(d.pieces == std::vector<ord_set>{{0, 1}, {0, 2}, {0, 3}});
    CHECK(d.root == ord_set{0});
    d = ts.decompose({0, 1});
    CHECK(d.pieces == std::vector<ord_set>{{0}, {1}});
    CHECK(d.root.empty());

    scheme_view t2(default_binary_type());
    d = t2.decompose({0, 1, 2});
    CHECK(d.pieces == std::vector<ord_set>{{0, 1}, {0, 2}});
    CHECK(d.root == ord_set{0});

    CHECK(ts.rank_of({0, 1, 2, 3}) == 2);
    CHECK(ts.rank_of({5}) == 0);
    CHECK(t2.rank_of({0, 1, 2}) == 2);
    CHECK_THROWS_AS(ts.decompose({1, 2}), error);
}

TEST_CASE("transport") {
    scheme_view ts(mixed_example_type());
    CHECK(ts.transport({0, 1}, {0, 2}, {1}) == ord_set{2});
    CHECK(ts.transport({0, 1, 2, 3}, {0, 1, 2, 3}, {0, 2}) == ord_set{0, 2});
    CHECK(ts.transport({0, 1, 2, 3}, {4, 5, 6, 7}, {0, 2}) == ord_set{4, 6});
    try {
        ts.transport({0, 1}, {0, 1, 2, 3}, {0});
        FAIL("expected RankMismatch");
    } catch (const error& e) {
        CHECK(e.code() == errc::rank_mismatch);
    }
}

TEST_CASE("members of a rank inside a window") {
    scheme_view ts(mixed_example_type());
    CHECK(ts.elements_of_rank_within(1, 4) == std::vector<ord_set>{{0, 1}, {0, 2}, {0, 3}});
    CHECK(ts.elements_of_rank_within(2, 4) == std::vector<ord_set>{{0, 1, 2, 3}});
    CHECK(ts.elements_of_rank_within(3, 4).empty());
}

TEST_CASE("closures are the least members containing the point") {
    auto t = mixed_example_type();
    scheme_view v(t);
    auto fam = v.finite_scheme(4).sets;
    for (ordinal b = 0; b < t.m(4); ++b)
        for (level k = 0; k <= 4; ++k) {
            // brute force: the member of size m_k holding b, cut at b
            ord_set want;
            for (const auto& f : fam)
                if (f.size() == t.m(k) && contains(f, b)) {
                    want = below(f, b + 1);
                    break;
                }
            CHECK(v.closure(b, k) == want);
        }
    CHECK(v.closure(3, 1) == ord_set{0, 3});
    CHECK(v.closure(3, 0) == ord_set{3});
    CHECK(v.closure(3, 2) == ord_set{0, 1, 2, 3});
}

TEST_CASE("level JSON round trip") {
    scheme_view v(default_binary_type());
    const auto& tab = v.finite_scheme(4);
    auto back = level_from_json(level_to_json(tab, 10));
    CHECK(back.sets == tab.sets);
    CHECK(back.rank_begin == tab.rank_begin);
}
