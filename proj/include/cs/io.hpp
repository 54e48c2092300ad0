#pragma once

#include <string>

#include <json.hpp>

#include "cs/forcing.hpp"
#include "cs/ih2.hpp"
#include "cs/ordinal.hpp"
#include "cs/type.hpp"

namespace cs {

using json = nlohmann::ordered_json;

// { "name":…, "prefix":[[n,r],…], "schedule":{"kind":"round_robin","n":2,"lanes":[…]} }
json type_to_json(const type_spec& t);
type_spec type_from_json(const json& j);
// a builtin name, or a path to a JSON type document
type_spec load_type(const std::string& source);

// naturals as numbers, anything past omega as "w2+3"
json ordinal_to_json(ordinal a);
ordinal ordinal_from_json(const json& j);
json set_to_json(const ord_set& s);
ord_set set_from_json(const json& j);
// "0,1,w+2" (a bare list, as on the command line)
ord_set parse_set_list(const std::string& text);

json good_sequence_to_json(const good_sequence& T);
good_sequence good_sequence_from_json(const json& j);

json demand_to_json(const demand& d);
demand demand_from_json(const json& j);
json record_to_json(const demand_record& r);

}  // namespace cs
