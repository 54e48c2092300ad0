#include <doctest.h>

#include "cs/error.hpp"
#include "cs/io.hpp"
#include "cs/type.hpp"

using namespace cs;

namespace {

bool fails_clause(const validation_report& rep, char clause) {
    for (const auto& e : rep.entries)
        if (!e.pass && e.clause == clause) return true;
    return false;
}

}  // namespace

TEST_CASE("m follows the recurrence") {
    type_spec one("one", {{2, 0}}, schedule_rule{});
    CHECK(compute_m(one, 1) == std::vector<std::uint64_t>{1, 2});

    auto ts = mixed_example_type();
    CHECK(compute_m(ts, 6) == std::vector<std::uint64_t>{1, 2, 4, 8, 14, 27, 51});
    CHECK(validate_type(ts, 6).ok());

    auto t2 = default_binary_type();
    CHECK(compute_m(t2, 7) == std::vector<std::uint64_t>{1, 2, 3, 6, 10, 19, 35, 70});
    for (level k = 1; k <= 30; ++k) {
        CHECK(t2.n(k) == 2);
        CHECK(t2.m(k) == t2.r(k) + t2.n(k) * (t2.m(k - 1) - t2.r(k)));
    }
}

TEST_CASE("invalid prefixes are reported by clause") {
    type_spec bad("bad", {{2, 0}, {2, 5}}, schedule_rule{});
    auto rep = validate_type(bad, 2);
    CHECK_FALSE(rep.ok());
    CHECK(fails_clause(rep, 'd'));
    CHECK_THROWS_AS(bad.m(2), error);

    type_spec thin("thin", {{2, 0}, {2, 1}, {1, 0}}, schedule_rule{});
    CHECK(fails_clause(validate_type(thin, 3), 'b'));

    schedule_rule zero;
    zero.k = schedule_rule::kind::constant;
    zero.r = 0;
    type_spec flat("flat", {{2, 0}}, zero);
    CHECK(fails_clause(validate_type(flat, 10), 'c'));
}

TEST_CASE("round robin lanes revisit every r") {
    for (std::uint64_t v = 0; v < 6; ++v) {
        bool seen = false;
        for (std::uint64_t t = 0; t < 100 && !seen; ++t) seen = triangular_stream(t) == v;
        CHECK(seen);
    }
}

TEST_CASE("partitions") {
    auto t2 = default_binary_type();
    partition_spec single;
    CHECK(validate_partition(t2, single, 12).compatible);
    partition_spec mod;
    mod.k = partition_spec::kind::modulo;
    mod.modulus = 2;
    CHECK(validate_partition(t2, mod, 20).compatible);
    partition_spec zeros;
    zeros.k = partition_spec::kind::r_value;
    zeros.value = 0;
    CHECK_FALSE(validate_partition(t2, zeros, 20).compatible);
}

TEST_CASE("type JSON round trip") {
    for (const auto& name : builtin_type_names()) {
        auto t = *builtin_type(name);
        auto back = type_from_json(json::parse(type_to_json(t).dump()));
        CHECK(back == t);
    }
    CHECK_THROWS_AS(load_type("no-such-type"), error);
}
