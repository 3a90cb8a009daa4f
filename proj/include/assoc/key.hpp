/*
 *   Copyright 2026 The aawrangle Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef ASSOC_KEY_HPP
#define ASSOC_KEY_HPP

#include <cmath>
#include <compare>
#include <string>
#include <variant>

#include "assoc/error.hpp"
#include "assoc/value.hpp"

namespace assoc {

/// A row or column key: a finite number or a text.
///
/// Keys are totally ordered: every number precedes every text, numbers
/// compare numerically and texts by code point (byte order of UTF-8).
class Key {
public:
    Key() : rep_(0.0) {}
    Key(double x) : rep_(check(x)) {}
    Key(int x) : rep_(static_cast<double>(x)) {}
    Key(std::string s) : rep_(std::move(s)) {}
    Key(const char* s) : rep_(std::string(s)) {}

    [[nodiscard]] bool is_number() const noexcept { return rep_.index() == 0; }
    [[nodiscard]] bool is_text() const noexcept { return rep_.index() == 1; }
    [[nodiscard]] double as_number() const { return std::get<double>(rep_); }
    [[nodiscard]] const std::string& as_text() const { return std::get<std::string>(rep_); }

    [[nodiscard]] std::string debug_string() const {
        return is_number() ? format_number(as_number()) : '"' + as_text() + '"';
    }

    friend bool operator==(const Key&, const Key&) = default;

    friend std::strong_ordering operator<=>(const Key& a, const Key& b) {
        if (a.rep_.index() != b.rep_.index()) return a.rep_.index() <=> b.rep_.index();
        if (a.is_number()) {
            const double x = a.as_number();
            const double y = b.as_number();
            return x < y ? std::strong_ordering::less
                         : (y < x ? std::strong_ordering::greater : std::strong_ordering::equal);
        }
        return a.as_text().compare(b.as_text()) <=> 0;
    }

private:
    static double check(double x) {
        if (!std::isfinite(x)) throw error(errc::invalid_value, "number keys must be finite");
        return x == 0.0 ? 0.0 : x; // fold -0 into +0
    }

    std::variant<double, std::string> rep_;
};

/// A key range [lo, hi], both ends inclusive.
struct KeyRange {
    Key lo;
    Key hi;

    [[nodiscard]] bool contains(const Key& k) const { return lo <= k && k <= hi; }
};

} // namespace assoc

#endif // ASSOC_KEY_HPP
