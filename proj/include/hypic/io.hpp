#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>

#include "hypic/arrangement.hpp"
#include "hypic/error.hpp"

namespace hypic {

using nlohmann::json;

inline json to_json(const WeightedArrangement& a) {
    json hs = json::array();
    for (const auto& h : a.hyperplanes) {
        json coeffs = json::array();
        for (const auto& c : h.coeffs) coeffs.push_back(format_rational(c));
        hs.push_back({{"coeffs", coeffs},
                      {"offset", format_rational(h.offset)},
                      {"weight", format_rational(h.weight)},
                      {"label", h.label}});
    }
    return {{"space", a.space == Space::Affine ? "affine" : "projective"},
            {"dimension", a.dimension},
            {"hyperplanes", hs}};
}

inline std::string emit_arrangement(const WeightedArrangement& a) { return to_json(a).dump(2) + "\n"; }

/// Reads the arrangement file format and enforces every arrangement invariant.
inline WeightedArrangement parse_arrangement(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::MalformedInput, e.what());
    }
    auto need = [](bool ok, const std::string& what) {
        if (!ok) throw Error(ErrorCode::MalformedInput, what);
    };
    need(doc.is_object(), "top level must be an object");
    need(doc.contains("space") && doc["space"].is_string(), "missing string field 'space'");
    need(doc.contains("dimension") && doc["dimension"].is_number_integer(), "missing integer field 'dimension'");
    need(doc.contains("hyperplanes") && doc["hyperplanes"].is_array(), "missing array field 'hyperplanes'");

    WeightedArrangement a;
    const auto space = doc["space"].get<std::string>();
    need(space == "affine" || space == "projective", "space must be 'affine' or 'projective'");
    a.space = space == "affine" ? Space::Affine : Space::Projective;
    const auto dim = doc["dimension"].get<long long>();
    need(dim > 0, "dimension must be positive");
    a.dimension = static_cast<std::size_t>(dim);

    auto rational_field = [&](const json& obj, const char* key, bool required) -> Rational {
        if (!obj.contains(key)) {
            need(!required, std::string("missing field '") + key + "'");
            return 0;
        }
        need(obj[key].is_string(), std::string("field '") + key + "' must be a rational string");
        return parse_rational(obj[key].get<std::string>());
    };

    std::size_t index = 0;
    for (const auto& item : doc["hyperplanes"]) {
        need(item.is_object(), "hyperplane entries must be objects");
        need(item.contains("coeffs") && item["coeffs"].is_array(), "hyperplane needs a 'coeffs' array");
        Hyperplane h;
        for (const auto& c : item["coeffs"]) {
            need(c.is_string(), "coefficients must be rational strings");
            h.coeffs.push_back(parse_rational(c.get<std::string>()));
        }
        h.offset = rational_field(item, "offset", false);
        h.weight = rational_field(item, "weight", true);
        if (item.contains("label")) {
            need(item["label"].is_string(), "label must be a string");
            h.label = item["label"].get<std::string>();
        } else {
            h.label = "H" + std::to_string(index + 1);
        }
        a.hyperplanes.push_back(std::move(h));
        ++index;
    }
    validate(a);
    return a;
}

}  // namespace hypic
