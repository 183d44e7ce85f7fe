#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace georeport {

// Specialize with `static constexpr std::array<std::pair<E, std::string_view>, N> names`.
template <class E> struct EnumNames;

template <class E> constexpr std::string_view to_string(E value) {
    for (const auto &[v, name] : EnumNames<E>::names)
        if (v == value) return name;
    return "?";
}

template <class E> constexpr std::optional<E> enum_from_string(std::string_view text) {
    for (const auto &[v, name] : EnumNames<E>::names)
        if (name == text) return v;
    return std::nullopt;
}

template <class E> std::string enum_choices() {
    std::string out;
    for (const auto &[v, name] : EnumNames<E>::names) {
        if (!out.empty()) out += "|";
        out += name;
    }
    return out;
}

} // namespace georeport
