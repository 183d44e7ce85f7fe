#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "georeport/core/utf8.hpp"

namespace georeport::eval {

using Tokens = std::vector<std::string>;

// Case-folded word tokens; every punctuation mark is its own token and
// diacritics are kept ("Roca ígnea." -> roca, ígnea, .).
inline Tokens tokenize(std::string_view text) {
    Tokens out;
    std::string word;
    auto flush = [&] {
        if (!word.empty()) out.push_back(std::move(word));
        word.clear();
    };
    std::size_t pos = 0;
    while (pos < text.size()) {
        char32_t c = utf8::next(text, pos);
        if (utf8::is_space(c)) {
            flush();
        } else if (utf8::is_punct(c)) {
            flush();
            std::string p;
            utf8::append(p, c);
            out.push_back(std::move(p));
        } else {
            utf8::append(word, utf8::to_lower(c));
        }
    }
    flush();
    return out;
}

} // namespace georeport::eval
