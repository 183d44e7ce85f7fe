#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "georeport/core/domain.hpp"
#include "georeport/core/utf8.hpp"

namespace georeport {

// Accepts the class names in English or Spanish, any case, with or without accents.
inline std::optional<RockType> parse_rock_type(std::string_view text) {
    std::string folded;
    std::size_t pos = 0;
    while (pos < text.size()) {
        char32_t c = utf8::to_lower(utf8::next(text, pos));
        switch (c) {
        case 0xE1: c = 'a'; break;
        case 0xE9: c = 'e'; break;
        case 0xED: c = 'i'; break;
        case 0xF3: c = 'o'; break;
        case 0xFA: c = 'u'; break;
        default: break;
        }
        utf8::append(folded, c);
    }
    if (auto e = enum_from_string<RockType>(folded)) return e;
    if (folded == "ignea" || folded == "igneo") return RockType::igneous;
    if (folded == "sedimentaria" || folded == "sedimentario") return RockType::sedimentary;
    if (folded == "metamorfica" || folded == "metamorfico") return RockType::metamorphic;
    return std::nullopt;
}

} // namespace georeport
