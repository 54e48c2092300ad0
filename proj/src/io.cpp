#include "cs/io.hpp"

#include <fstream>
#include <sstream>

#include "cs/error.hpp"

namespace cs {

namespace {

template <class F>
auto guarded(const char* what, F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        fail(errc::invalid_argument, std::string(what) + ": " + e.what());
    }
}

}  // namespace

json type_to_json(const type_spec& t) {
    json j;
    j["name"] = t.name();
    j["prefix"] = json::array();
    for (auto [n, r] : t.prefix()) j["prefix"].push_back({n, r});
    const auto& s = t.schedule();
    json sj;
    if (s.k == schedule_rule::kind::round_robin) {
        sj["kind"] = "round_robin";
        sj["n"] = s.n;
        sj["lanes"] = s.lanes;
    } else {
        sj["kind"] = "constant";
        sj["n"] = s.n;
        sj["r"] = s.r;
    }
    j["schedule"] = sj;
    return j;
}

type_spec type_from_json(const json& j) {
    return guarded("type", [&] {
        std::string name = j.value("name", std::string("custom"));
        std::vector<std::pair<std::uint64_t, std::uint64_t>> prefix;
        for (const auto& p : j.at("prefix")) {
            if (!p.is_array() || p.size() != 2) fail(errc::invalid_type, "prefix entries are [n, r] pairs");
            prefix.emplace_back(p[0].get<std::uint64_t>(), p[1].get<std::uint64_t>());
        }
        schedule_rule rule;
        const auto& s = j.at("schedule");
        std::string kind = s.at("kind").get<std::string>();
        if (kind == "round_robin") {
            rule.k = schedule_rule::kind::round_robin;
            rule.n = s.at("n").get<std::uint64_t>();
            rule.lanes = s.at("lanes").get<std::vector<std::uint64_t>>();
        } else if (kind == "constant") {
            rule.k = schedule_rule::kind::constant;
            rule.n = s.at("n").get<std::uint64_t>();
            rule.r = s.at("r").get<std::uint64_t>();
            rule.lanes.clear();
        } else {
            fail(errc::invalid_type, "unknown schedule kind '" + kind + "'");
        }
        return type_spec(name, std::move(prefix), std::move(rule));
    });
}

type_spec load_type(const std::string& source) {
    if (auto t = builtin_type(source)) return *t;
    std::ifstream in(source);
    if (!in) fail(errc::invalid_argument, "type '" + source + "' is neither a builtin nor a readable file");
    std::stringstream ss;
    ss << in.rdbuf();
    json j = guarded("type file", [&] { return json::parse(ss.str()); });
    return type_from_json(j);
}

json ordinal_to_json(ordinal a) {
    if (block_of(a) == 0) return offset_of(a);
    return ordinal_to_string(a);
}

ordinal ordinal_from_json(const json& j) {
    if (j.is_number_unsigned() || j.is_number_integer()) {
        auto v = j.get<std::int64_t>();
        if (v < 0 || static_cast<std::uint64_t>(v) > offset_mask)
            fail(errc::invalid_argument, "ordinal out of range: " + j.dump());
        return static_cast<ordinal>(v);
    }
    if (j.is_string()) {
        auto a = parse_ordinal(j.get<std::string>());
        if (!a) fail(errc::invalid_argument, "bad ordinal '" + j.get<std::string>() + "'");
        return *a;
    }
    fail(errc::invalid_argument, "bad ordinal " + j.dump());
}

json set_to_json(const ord_set& s) {
    json a = json::array();
    for (auto x : s) a.push_back(ordinal_to_json(x));
    return a;
}

ord_set set_from_json(const json& j) {
    if (!j.is_array()) fail(errc::invalid_argument, "expected an array of ordinals, got " + j.dump());
    ord_set s;
    for (const auto& e : j) s.push_back(ordinal_from_json(e));
    return normalized(std::move(s));
}

ord_set parse_set_list(const std::string& text) {
    ord_set s;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        if (part.empty()) continue;
        auto a = parse_ordinal(part);
        if (!a) fail(errc::invalid_argument, "bad ordinal '" + part + "'");
        s.push_back(*a);
    }
    return normalized(std::move(s));
}

json good_sequence_to_json(const good_sequence& T) {
    json a = json::array();
    for (const auto& e : T) {
        json blocks = json::array();
        for (const auto& b : e.blocks) blocks.push_back(b);
        a.push_back({{"blocks", blocks}, {"z", e.z}});
    }
    return a;
}

good_sequence good_sequence_from_json(const json& j) {
    return guarded("good sequence", [&] {
        good_sequence T;
        for (const auto& e : j) {
            good_entry g;
            for (const auto& b : e.at("blocks")) g.blocks.push_back(normalized(b.get<ord_set>()));
            g.z = e.at("z").get<std::uint64_t>();
            T.push_back(std::move(g));
        }
        return T;
    });
}

json demand_to_json(const demand& d) {
    json j;
    j["op"] = demand_op_name(d.op);
    json args;
    switch (d.op) {
    case demand::kind::contain:
        args["alpha"] = ordinal_to_json(d.alpha);
        break;
    case demand::kind::root:
        args["beta"] = ordinal_to_json(d.alpha);
        args["k"] = d.k;
        break;
    case demand::kind::ih1:
        args["a"] = set_to_json(d.a);
        args["alpha"] = ordinal_to_json(d.alpha);
        break;
    }
    j["args"] = args;
    return j;
}

demand demand_from_json(const json& j) {
    return guarded("demand", [&] {
        demand d;
        std::string op = j.at("op").get<std::string>();
        const auto& args = j.at("args");
        if (op == "contain") {
            d.op = demand::kind::contain;
            d.alpha = ordinal_from_json(args.at("alpha"));
        } else if (op == "root") {
            d.op = demand::kind::root;
            d.alpha = ordinal_from_json(args.at("beta"));
            d.k = args.at("k").get<level>();
        } else if (op == "ih1") {
            d.op = demand::kind::ih1;
            d.a = set_from_json(args.at("a"));
            d.alpha = ordinal_from_json(args.at("alpha"));
        } else {
            fail(errc::invalid_argument, "unknown demand op '" + op + "'");
        }
        return d;
    });
}

json record_to_json(const demand_record& r) {
    json j = demand_to_json(r.request);
    json out;
    out["seq"] = r.seq;
    out["op"] = j["op"];
    out["args"] = j["args"];
    out["internal"] = r.internal;
    out["chosen_witness"] = set_to_json(r.witness);
    out["condition"] = set_to_json(r.condition);
    out["k"] = r.k;
    return out;
}

}  // namespace cs
