#pragma once

// JSON wire formats. Exact rationals travel as decimal strings so nothing
// is lost to double rounding. A LineFunction is a flat list of
// [coeff_num, coeff_den, power, rate_num, rate_den, side] tuples.

#include "rglab/domain.hpp"
#include "rglab/exppoly.hpp"
#include "rglab/rational.hpp"

#include <json.hpp>

#include <string>

namespace rglab {

using Json = nlohmann::ordered_json;

inline Json term_to_json(const ExpPolyTerm& t, Side side) {
    return Json::array({to_string(numerator(t.coeff)), to_string(denominator(t.coeff)), t.power,
                        to_string(numerator(t.rate)), to_string(denominator(t.rate)),
                        side_name(side)});
}

inline Json to_json(const LineFunction& f) {
    Json arr = Json::array();
    for (const auto& t : f.left.terms) arr.push_back(term_to_json(t, Side::left));
    for (const auto& t : f.right.terms) arr.push_back(term_to_json(t, Side::right));
    return arr;
}

inline LineFunction line_function_from_json(const Json& arr) {
    LineFunction f;
    for (const auto& tup : arr) {
        if (!tup.is_array() || tup.size() != 6)
            throw std::invalid_argument("line_function_from_json: expected 6-tuples");
        const Rational coeff = frac(BigInt(tup[0].get<std::string>()), BigInt(tup[1].get<std::string>()));
        const int power = tup[2].get<int>();
        const Rational rate = frac(BigInt(tup[3].get<std::string>()), BigInt(tup[4].get<std::string>()));
        const std::string side = tup[5].get<std::string>();
        if (side == "left")
            f.left.terms.push_back(ExpPolyTerm{coeff, power, rate});
        else if (side == "right")
            f.right.terms.push_back(ExpPolyTerm{coeff, power, rate});
        else
            throw std::invalid_argument("line_function_from_json: bad side tag");
    }
    normalize(f.left);
    normalize(f.right);
    return f;
}

inline Json to_json(const DomainReport& r) {
    Json j;
    j["max_order"] = r.max_order;
    if (r.first_violation) {
        j["violation"] = Json{{"order", r.first_violation->order},
                              {"condition", condition_name(r.first_violation->condition)}};
    } else {
        j["violation"] = nullptr;
    }
    return j;
}

inline Json to_json(const Rational& r) {
    return Json::array({to_string(numerator(r)), to_string(denominator(r))});
}

} // namespace rglab
