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

#ifndef ASSOC_DOC_HPP
#define ASSOC_DOC_HPP

#include <cctype>
#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "assoc/error.hpp"

namespace assoc {

/// An XML element: tag, attributes in document order, child elements and
/// the concatenation of its direct character data.
struct Element {
    std::string tag;
    std::vector<std::pair<std::string, std::string>> attributes;
    std::vector<Element> children;
    std::string text;
};

/// A parsed hierarchical document node. JSON documents use the first six
/// alternatives; XML documents are a single `Element` tree.
struct DocNode {
    using Object = std::vector<std::pair<std::string, DocNode>>;
    using Array = std::vector<DocNode>;

    std::variant<std::nullptr_t, bool, double, std::string, Array, Object, Element> value;

    [[nodiscard]] bool is_null() const noexcept { return value.index() == 0; }
    [[nodiscard]] const Object* object() const { return std::get_if<Object>(&value); }
    [[nodiscard]] const Array* array() const { return std::get_if<Array>(&value); }
    [[nodiscard]] const Element* element() const { return std::get_if<Element>(&value); }
};

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

inline DocNode from_json(const nlohmann::ordered_json& j) {
    using nlohmann::ordered_json;
    switch (j.type()) {
    case ordered_json::value_t::null: return {nullptr};
    case ordered_json::value_t::boolean: return {j.get<bool>()};
    case ordered_json::value_t::number_integer: return {static_cast<double>(j.get<std::int64_t>())};
    case ordered_json::value_t::number_unsigned:
        return {static_cast<double>(j.get<std::uint64_t>())};
    case ordered_json::value_t::number_float: return {j.get<double>()};
    case ordered_json::value_t::string: return {j.get<std::string>()};
    case ordered_json::value_t::array: {
        DocNode::Array out;
        out.reserve(j.size());
        for (const auto& e : j) out.push_back(from_json(e));
        return {std::move(out)};
    }
    case ordered_json::value_t::object: {
        DocNode::Object out;
        out.reserve(j.size());
        for (const auto& [k, v] : j.items()) out.emplace_back(k, from_json(v));
        return {std::move(out)};
    }
    default: return {nullptr};
    }
}

} // namespace detail

/// Parses RFC 8259 JSON. Duplicate object keys resolve last-wins, keeping
/// the position of the first occurrence.
inline DocNode parse_json(std::string_view text) {
    try {
        return detail::from_json(nlohmann::ordered_json::parse(text));
    } catch (const nlohmann::json::parse_error& e) {
        const auto offset = e.byte > 0 ? e.byte - 1 : 0;
        const auto [line, col] = detail::line_column(text, offset);
        std::string msg = e.what();
        // Strip the library's "[json.exception.parse_error.N] parse error at ...: " prefix.
        if (auto p = msg.find(": "); p != std::string::npos) msg = msg.substr(p + 2);
        throw parse_error("JSON parse error: " + msg, line, col);
    }
}

namespace detail {

/// Recursive-descent parser for namespace-free XML 1.0. DTDs are skipped,
/// not interpreted; only the predefined and numeric entities are expanded.
class XmlParser {
public:
    explicit XmlParser(std::string_view text) : s_(text) {}

    Element parse_document() {
        if (s_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
        skip_misc(true);
        if (!peek_is("<")) fail("expected root element");
        Element root = parse_element();
        skip_misc(false);
        if (pos_ != s_.size()) fail("content after root element");
        return root;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        const auto [line, col] = line_column(s_, pos_);
        throw parse_error("XML parse error: " + what, line, col);
    }

    bool peek_is(std::string_view lit) const { return s_.substr(pos_, lit.size()) == lit; }

    void expect(std::string_view lit) {
        if (!peek_is(lit)) fail("expected '" + std::string(lit) + "'");
        pos_ += lit.size();
    }

    static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

    void skip_space() {
        while (pos_ < s_.size() && is_space(s_[pos_])) ++pos_;
    }

    void skip_until(std::string_view terminator, const char* what) {
        const auto end = s_.find(terminator, pos_);
        if (end == std::string_view::npos) fail(std::string("unterminated ") + what);
        pos_ = end + terminator.size();
    }

    void skip_doctype() {
        pos_ += 9; // "<!DOCTYPE"
        int depth = 0;
        while (pos_ < s_.size()) {
            const char c = s_[pos_++];
            if (c == '[') ++depth;
            else if (c == ']') --depth;
            else if (c == '>' && depth == 0) return;
        }
        fail("unterminated DOCTYPE");
    }

    // Comments, processing instructions and whitespace around the root.
    void skip_misc(bool prolog) {
        for (;;) {
            skip_space();
            if (peek_is("<!--")) {
                pos_ += 4;
                skip_until("-->", "comment");
            } else if (peek_is("<?")) {
                pos_ += 2;
                skip_until("?>", "processing instruction");
            } else if (prolog && peek_is("<!DOCTYPE")) {
                skip_doctype();
            } else {
                return;
            }
        }
    }

    static bool is_name_start(unsigned char c) {
        return std::isalpha(c) || c == '_' || c == ':' || c >= 0x80;
    }
    static bool is_name_char(unsigned char c) {
        return is_name_start(c) || std::isdigit(c) || c == '-' || c == '.';
    }

    std::string parse_name() {
        const auto start = pos_;
        if (pos_ >= s_.size() || !is_name_start(static_cast<unsigned char>(s_[pos_])))
            fail("expected name");
        while (pos_ < s_.size() && is_name_char(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        std::string name(s_.substr(start, pos_ - start));
        if (name.find(':') != std::string::npos) {
            pos_ = start;
            throw error(errc::namespaces_unsupported,
                        "namespaces unsupported: '" + name + "' at " + where());
        }
        return name;
    }

    std::string where() const {
        const auto [line, col] = line_column(s_, pos_);
        return "line " + std::to_string(line) + ", column " + std::to_string(col);
    }

    static void append_utf8(std::string& out, std::uint32_t cp) {
        if (cp < 0x80) {
            out += static_cast<char>(cp);
        } else if (cp < 0x800) {
            out += static_cast<char>(0xC0 | (cp >> 6));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        } else if (cp < 0x10000) {
            out += static_cast<char>(0xE0 | (cp >> 12));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        } else {
            out += static_cast<char>(0xF0 | (cp >> 18));
            out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        }
    }

    void parse_reference(std::string& out) {
        const auto start = pos_;
        ++pos_; // '&'
        const auto end = s_.find(';', pos_);
        if (end == std::string_view::npos || end - pos_ > 12) fail("malformed entity reference");
        const auto name = s_.substr(pos_, end - pos_);
        pos_ = end + 1;
        if (name == "lt") out += '<';
        else if (name == "gt") out += '>';
        else if (name == "amp") out += '&';
        else if (name == "quot") out += '"';
        else if (name == "apos") out += '\'';
        else if (name.size() > 1 && name[0] == '#') {
            const bool hex = name[1] == 'x';
            const auto digits = name.substr(hex ? 2 : 1);
            std::uint32_t cp = 0;
            auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), cp,
                                           hex ? 16 : 10);
            if (digits.empty() || ec != std::errc{} || p != digits.data() + digits.size() ||
                cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
                pos_ = start;
                fail("invalid character reference");
            }
            append_utf8(out, cp);
        } else {
            pos_ = start;
            fail("unknown entity '" + std::string(name) + "'");
        }
    }

    std::string parse_attribute_value() {
        if (pos_ >= s_.size() || (s_[pos_] != '"' && s_[pos_] != '\'')) fail("expected quote");
        const char quote = s_[pos_++];
        std::string out;
        while (pos_ < s_.size() && s_[pos_] != quote) {
            if (s_[pos_] == '<') fail("'<' in attribute value");
            if (s_[pos_] == '&') {
                parse_reference(out);
            } else {
                out += s_[pos_++];
            }
        }
        if (pos_ >= s_.size()) fail("unterminated attribute value");
        ++pos_;
        return out;
    }

    Element parse_element() {
        expect("<");
        Element e;
        e.tag = parse_name();
        for (;;) {
            const bool had_space = pos_ < s_.size() && is_space(s_[pos_]);
            skip_space();
            if (peek_is("/>")) {
                pos_ += 2;
                return e;
            }
            if (peek_is(">")) {
                ++pos_;
                break;
            }
            if (!had_space) fail("expected whitespace before attribute");
            const auto attr_pos = pos_;
            auto name = parse_name();
            if (name == "xmlns") {
                pos_ = attr_pos;
                throw error(errc::namespaces_unsupported,
                            "namespaces unsupported: xmlns declaration at " + where());
            }
            for (const auto& a : e.attributes) {
                if (a.first == name) {
                    pos_ = attr_pos;
                    fail("duplicate attribute '" + name + "'");
                }
            }
            skip_space();
            expect("=");
            skip_space();
            e.attributes.emplace_back(std::move(name), parse_attribute_value());
        }

        for (;;) {
            if (pos_ >= s_.size()) fail("unexpected end of input inside <" + e.tag + ">");
            if (peek_is("</")) {
                pos_ += 2;
                const auto close_pos = pos_;
                const auto name = parse_name();
                if (name != e.tag) {
                    pos_ = close_pos;
                    fail("mismatched closing tag </" + name + "> for <" + e.tag + ">");
                }
                skip_space();
                expect(">");
                return e;
            }
            if (peek_is("<!--")) {
                pos_ += 4;
                skip_until("-->", "comment");
            } else if (peek_is("<![CDATA[")) {
                pos_ += 9;
                const auto end = s_.find("]]>", pos_);
                if (end == std::string_view::npos) fail("unterminated CDATA section");
                e.text.append(s_.substr(pos_, end - pos_));
                pos_ = end + 3;
            } else if (peek_is("<?")) {
                pos_ += 2;
                skip_until("?>", "processing instruction");
            } else if (peek_is("<!")) {
                fail("unexpected markup declaration");
            } else if (s_[pos_] == '<') {
                e.children.push_back(parse_element());
            } else if (s_[pos_] == '&') {
                parse_reference(e.text);
            } else {
                e.text += s_[pos_++];
            }
        }
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parses well-formed XML 1.0 without namespaces into an `Element` tree.
inline DocNode parse_xml(std::string_view text) {
    return {detail::XmlParser(text).parse_document()};
}

} // namespace assoc

#endif // ASSOC_DOC_HPP
