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

#ifndef ASSOC_VALUE_HPP
#define ASSOC_VALUE_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <initializer_list>
#include <string>
#include <system_error>
#include <utility>
#include <variant>
#include <vector>

#include "assoc/error.hpp"

namespace assoc {

/// Shortest decimal text that parses back to exactly `x`; infinities are
/// rendered as `inf` / `-inf`.
inline std::string format_number(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

/// A finite set of strings kept sorted by code point and duplicate-free.
class TextSet {
public:
    TextSet() = default;
    TextSet(std::initializer_list<std::string> elems) : elems_(elems) { normalize(); }
    explicit TextSet(std::vector<std::string> elems) : elems_(std::move(elems)) { normalize(); }

    [[nodiscard]] const std::vector<std::string>& elements() const noexcept { return elems_; }
    [[nodiscard]] std::size_t size() const noexcept { return elems_.size(); }
    [[nodiscard]] bool empty() const noexcept { return elems_.empty(); }
    [[nodiscard]] bool contains(const std::string& s) const {
        return std::binary_search(elems_.begin(), elems_.end(), s);
    }

    friend TextSet set_union(const TextSet& a, const TextSet& b) {
        TextSet out;
        out.elems_.reserve(a.size() + b.size());
        std::set_union(a.elems_.begin(), a.elems_.end(), b.elems_.begin(), b.elems_.end(),
                       std::back_inserter(out.elems_));
        return out;
    }

    friend TextSet set_intersection(const TextSet& a, const TextSet& b) {
        TextSet out;
        std::set_intersection(a.elems_.begin(), a.elems_.end(), b.elems_.begin(),
                              b.elems_.end(), std::back_inserter(out.elems_));
        return out;
    }

    friend bool operator==(const TextSet&, const TextSet&) = default;

private:
    void normalize() {
        std::sort(elems_.begin(), elems_.end());
        elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
    }

    std::vector<std::string> elems_;
};

/// Universe sentinel; only ever the multiplicative identity of the set semiring.
struct Top {
    friend bool operator==(Top, Top) noexcept { return true; }
};

/// A semiring element: a number (never NaN), a text, a text set, or Top.
class Value {
public:
    enum class Kind { number, text, text_set, top };

    Value() : rep_(0.0) {}

    static Value number(double x) {
        if (std::isnan(x)) throw error(errc::invalid_value, "NaN is not a legal value");
        return Value(Rep(x));
    }
    static Value text(std::string s) { return Value(Rep(std::move(s))); }
    static Value text_set(TextSet s) { return Value(Rep(std::move(s))); }
    static Value top() { return Value(Rep(Top{})); }

    [[nodiscard]] Kind kind() const noexcept { return static_cast<Kind>(rep_.index()); }
    [[nodiscard]] bool is_number() const noexcept { return kind() == Kind::number; }
    [[nodiscard]] bool is_text() const noexcept { return kind() == Kind::text; }
    [[nodiscard]] bool is_text_set() const noexcept { return kind() == Kind::text_set; }
    [[nodiscard]] bool is_top() const noexcept { return kind() == Kind::top; }

    [[nodiscard]] double as_number() const { return std::get<double>(rep_); }
    [[nodiscard]] const std::string& as_text() const { return std::get<std::string>(rep_); }
    [[nodiscard]] const TextSet& as_text_set() const { return std::get<TextSet>(rep_); }

    /// Exact equality; -0 and +0 compare equal as numbers.
    friend bool operator==(const Value& a, const Value& b) { return a.rep_ == b.rep_; }

    [[nodiscard]] std::string debug_string() const {
        switch (kind()) {
        case Kind::number: return format_number(as_number());
        case Kind::text: return '"' + as_text() + '"';
        case Kind::top: return "Top";
        case Kind::text_set: {
            std::string out = "{";
            for (const auto& e : as_text_set().elements()) {
                if (out.size() > 1) out += ',';
                out += '"' + e + '"';
            }
            return out + "}";
        }
        }
        return {};
    }

private:
    using Rep = std::variant<double, std::string, TextSet, Top>;
    explicit Value(Rep rep) : rep_(std::move(rep)) {}
    Rep rep_;
};

} // namespace assoc

#endif // ASSOC_VALUE_HPP
