#include <doctest.h>

#include "cs/constructions.hpp"
#include "cs/error.hpp"
#include "cs/metrics.hpp"
#include "cs/scheme.hpp"

using namespace cs;

TEST_CASE("Luzin-Jones levels") {
    scheme_view t2(default_binary_type());
    auto a = luzin_jones(t2, 2, 2);
    CHECK(a.at_level(2) == std::vector<coded_point>{{2, 1, 0}, {2, 1, 1}});
    CHECK(luzin_jones(t2, 0, 1).at_level(1) == std::vector<coded_point>{{1, 0, 0}});
    CHECK(luzin_jones_level(t2, 2, 2).elements == a.at_level(2));

    scheme_view ts(mixed_example_type());
    try {
        luzin_jones(ts, 1, 3);
        FAIL("expected NonBinaryType");
    } catch (const error& e) {
        CHECK(e.code() == errc::non_binary_type);
    }
}

TEST_CASE("truncated set algebra") {
    truncated_set a{2, {{1, 0}, {1, 1}, {2, 0}}};
    truncated_set b{2, {{1, 1}, {2, 3}}};
    CHECK(intersect(a, b).elements == std::vector<coded_point>{{1, 1}});
    CHECK(difference(a, b).elements == std::vector<coded_point>{{1, 0}, {2, 0}});
    CHECK(a.max_level() == 2);
    CHECK_FALSE(truncated_set{}.max_level());
}

TEST_CASE("Countryman line") {
    scheme_view ts(mixed_example_type());
    CHECK(countryman_less(ts, 1, 2));
    CHECK(countryman_less(ts, 2, 8));
    for (ordinal a = 0; a < 10; ++a) CHECK_FALSE(countryman_less(ts, a, a));
    CHECK(countryman_chain_index(ts, 0, 2) == chain_label{1, 2, 1});
    CHECK(countryman_chain_index(ts, 1, 2) == chain_label{2, 3, 2});

    scheme_view t2(default_binary_type());
    const ordinal n = 20;
    for (ordinal a = 0; a < n; ++a)
        for (ordinal b = 0; b < n; ++b) {
            if (a == b) continue;
            CHECK(countryman_less(t2, a, b) != countryman_less(t2, b, a));
            for (ordinal c = 0; c < n; ++c)
                if (countryman_less(t2, a, b) && countryman_less(t2, b, c)) CHECK(countryman_less(t2, a, c));
        }
}

TEST_CASE("Aronszajn nodes") {
    scheme_view ts(mixed_example_type());
    CHECK(aronszajn_node(ts, 3).values == std::vector<level>{1, 2, 2, 0});
    CHECK(aronszajn_node(ts, 0).values == std::vector<level>{0});
    CHECK(antichain_index(ts, aronszajn_node(ts, 0)).k == 0);
    for (ordinal b = 0; b < 15; ++b) {
        auto f = aronszajn_node(ts, b);
        for (ordinal x = 0; x <= b; ++x) CHECK(f.values[x] == rho(ts, x, b));
    }
}

TEST_CASE("Hausdorff gap") {
    scheme_view t2(default_binary_type());
    auto g = gap_sets(t2, 2, 3);
    CHECK(g.a == ord_set{3, 5, 6});
    CHECK(g.b == ord_set{2, 4, 7});
    CHECK(set_intersection(g.a, g.b).empty());
}

TEST_CASE("lattice base") {
    auto t2 = default_binary_type();
    const auto& base = lattice_level(t2, 0);
    CHECK(base.rows == 1);
    CHECK(base.cols == 1);
    CHECK(base.at(0, 0) == std::vector<coded_point>{{0, 0, 0}});
}

TEST_CASE("full Suslin tree shape") {
    auto t = *builtin_type("Tsuslin");
    const auto& tr = full_suslin_levels(t, 1);
    CHECK(tr.height == t.m(1));
    for (std::uint64_t l = 0; l < tr.height; ++l) CHECK(tr.width(l) == (1 + 1) << l);
    for (std::uint64_t x = 0; x < tr.size(); ++x)
        if (tr.height_of(x) + 1 < tr.height) CHECK(tr.children(x).size() == 2);
    CHECK(is_tree(tree_from_parents(tr, tr.height)));
}

TEST_CASE("Cantor pairing") {
    for (std::uint64_t a = 0; a < 40; ++a)
        for (std::uint64_t b = 0; b < 40; ++b) CHECK(cantor_unpair(cantor_pair(a, b)) == std::pair{a, b});
    CHECK(cantor_pair(0, 0) == 0);
    CHECK(cantor_pair(0, 1) == 2);
    CHECK(cantor_pair(1, 0) == 1);
}

TEST_CASE("oscillation partition") {
    const auto& part = build_osc_partition();
    for (std::uint64_t n = 0; n < 4; ++n)
        for (std::uint64_t k = 0; k < 4; ++k) {
            auto iv = part.allocation_for(n, k);
            CHECK(iv.hi == iv.lo.times_two_plus(k));
            if (iv.hi.fits_u64())
                for (auto x = iv.lo.to_u64(); x <= iv.hi.to_u64(); ++x) CHECK(part.cell_of(x) == n);
        }
    CHECK(big_nat::of(5).times_two_plus(3) == big_nat::of(13));
    CHECK(big_nat::of(std::uint64_t{1} << 63).times_two_plus(0).to_string() == "18446744073709551616");
}

TEST_CASE("h codes") {
    std::vector<std::vector<std::uint64_t>> dom{{0}, {1, 2}};
    std::vector<std::uint64_t> vals{3, 1, 4, 1};
    auto h = decode_h(encode_h(dom, vals));
    REQUIRE(h.valid);
    CHECK(h.domain == dom);
    CHECK(h.values == vals);
}

TEST_CASE("lexicographic comparison") {
    CHECK(lex_less({1, 2, 3}, {1, 3, 0}) == true);
    CHECK(lex_less({1, 3}, {1, 2}) == false);
    CHECK_FALSE(lex_less({4, 4}, {4, 4}));
}
