#include <doctest.h>

#include "cs/metrics.hpp"
#include "cs/scheme.hpp"

using namespace cs;

namespace {

// least k with a, b in a common member of rank k, read off F(m_K)
level rho_oracle(const std::vector<ord_set>& fam, const type_spec& t, ordinal a, ordinal b) {
    level best = 99;
    for (const auto& f : fam)
        if (contains(f, a) && contains(f, b)) {
            level k = 0;
            while (t.m(k) != f.size()) ++k;
            best = std::min(best, k);
        }
    return best;
}

}  // namespace

TEST_CASE("rho on the mixed type") {
    scheme_view v(mixed_example_type());
    CHECK(rho(v, 1, 2) == 2);
    CHECK(rho(v, 0, 2) == 1);
    CHECK(rho(v, 5, 5) == 0);
    CHECK(rho_diameter(v, {1, 2}) == 2);
    CHECK(rho_diameter(v, {7}) == 0);
    CHECK(rho_diameter(v, {0, 1, 2, 3}) == 2);
}

TEST_CASE("rho agrees with the least common member") {
    for (const char* name : {"T2", "Tstar"}) {
        auto t = *builtin_type(name);
        scheme_view v(t);
        const auto& fam = v.finite_scheme(5).sets;
        for (ordinal a = 0; a < t.m(5); ++a)
            for (ordinal b = 0; b < t.m(5); ++b) CHECK(rho(v, a, b) == rho_oracle(fam, t, a, b));
    }
}

TEST_CASE("Delta and Xi") {
    scheme_view v(mixed_example_type());
    CHECK(delta(v, 1, 2) == delta_value::at(2));
    CHECK(delta(v, 4, 4) == delta_value::omega());
    CHECK(delta(v, 2, 8) == delta_value::at(4));
    CHECK(delta_value::at(3).less_than(delta_value::omega()));
    CHECK_FALSE(delta_value::omega().less_than(delta_value::at(3)));

    CHECK(xi(v, 0, 2) == -1);
    CHECK(xi(v, 2, 2) == 1);
    CHECK(xi(v, 3, 2) == 2);
    for (ordinal a = 0; a < 20; ++a) CHECK(xi(v, a, 0) == 0);
}

TEST_CASE("f and its order") {
    scheme_view t2(default_binary_type());
    CHECK(f_value(t2, 1, 1) == 2);
    CHECK(f_value(t2, 0, 5) == 1);
    for (ordinal a = 0; a < 10; ++a) CHECK(f_value(t2, a, 0) == 1);

    scheme_view ts(mixed_example_type());
    auto c = f_mod_finite_compare(ts, 0, 2);
    CHECK(c.strict_from == 1);
    c = f_mod_finite_compare(ts, 1, 2);
    CHECK(c.everywhere_le);
    CHECK(c.strict_from == 2);
}

TEST_CASE("osc") {
    scheme_view t2(default_binary_type());
    auto o = osc(t2, 0, 1, 0);
    CHECK(o.count == 0);
    CHECK(o.witnesses.empty());
    for (ordinal a = 0; a < 10; ++a) CHECK(osc(t2, a, a, 0).count == 0);

    scheme_view ts(mixed_example_type());
    o = osc(ts, 2, 8, 0);
    CHECK(o.count == o.witnesses.size());
    for (auto w : o.witnesses) {
        CHECK(w >= 0);
        CHECK(w < 4);
    }
}
