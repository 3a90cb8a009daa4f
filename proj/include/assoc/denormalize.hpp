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

#ifndef ASSOC_DENORMALIZE_HPP
#define ASSOC_DENORMALIZE_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "assoc/array.hpp"
#include "assoc/doc.hpp"
#include "assoc/error.hpp"

namespace assoc {

enum class ArrayMode {
    positional,   // array elements get a 0-based index segment
    value_column, // every scalar leaf becomes column path/value with value 1
};

struct DenormConfig {
    std::string separator = "/";
    ArrayMode array_mode = ArrayMode::positional;
    /// Separator-joined path to the record list; empty selects the default
    /// (root array elements, else the whole document as one record). For
    /// XML the segments are child tags below the root element.
    std::string record_selector;
    /// Field whose value becomes the row key; empty means a 1-based counter.
    std::string row_id_field;
};

/// Backslash-escapes backslashes and separator occurrences inside one path segment.
inline std::string escape_segment(std::string_view segment, std::string_view separator) {
    std::string out;
    out.reserve(segment.size());
    for (std::size_t i = 0; i < segment.size();) {
        if (segment[i] == '\\') {
            out += "\\\\";
            ++i;
        } else if (!separator.empty() && segment.substr(i, separator.size()) == separator) {
            out += '\\';
            out += separator;
            i += separator.size();
        } else {
            out += segment[i++];
        }
    }
    return out;
}

/// Splits a separator-joined path, honouring backslash escapes.
inline std::vector<std::string> split_path(std::string_view path, std::string_view separator) {
    std::vector<std::string> out;
    if (path.empty()) return out;
    std::string cur;
    for (std::size_t i = 0; i < path.size();) {
        if (path[i] == '\\' && i + 1 < path.size()) {
            if (path.substr(i + 1, separator.size()) == separator) {
                cur += separator;
                i += 1 + separator.size();
            } else {
                cur += path[i + 1];
                i += 2;
            }
        } else if (path.substr(i, separator.size()) == separator) {
            out.push_back(std::move(cur));
            cur.clear();
            i += separator.size();
        } else {
            cur += path[i++];
        }
    }
    out.push_back(std::move(cur));
    return out;
}

namespace detail {

class Flattener {
public:
    Flattener(const DenormConfig& cfg, TripleStream& out) : cfg_(cfg), out_(out) {
        if (cfg.separator.empty()) throw error(errc::invalid_value, "separator must be non-empty");
    }

    void set_row(Key row) { row_ = std::move(row); }

    void json(const DocNode& node, std::vector<std::string>& path) {
        if (const auto* obj = node.object()) {
            for (const auto& [name, child] : *obj) {
                path.push_back(escape_segment(name, cfg_.separator));
                json(child, path);
                path.pop_back();
            }
        } else if (const auto* arr = node.array()) {
            for (std::size_t i = 0; i < arr->size(); ++i) {
                if (positional()) path.push_back(std::to_string(i));
                json((*arr)[i], path);
                if (positional()) path.pop_back();
            }
        } else if (const auto* s = std::get_if<std::string>(&node.value)) {
            leaf(path, Value::text(*s), *s);
        } else if (const auto* x = std::get_if<double>(&node.value)) {
            leaf(path, Value::number(*x), format_number(*x));
        } else if (const auto* b = std::get_if<bool>(&node.value)) {
            const char* r = *b ? "true" : "false";
            leaf(path, Value::text(r), r);
        }
        // null: nothing
    }

    /// `path` already names `e` (its tag plus any sibling index).
    void xml(const Element& e, std::vector<std::string>& path) {
        for (const auto& [name, text] : e.attributes) {
            path.push_back("@" + escape_segment(name, cfg_.separator));
            leaf(path, Value::text(text), text);
            path.pop_back();
        }
        if (auto text = trimmed(e.text); !text.empty())
            leaf(path, Value::text(std::string(text)), text);

        std::map<std::string_view, std::size_t> count, seen;
        for (const auto& c : e.children) ++count[c.tag];
        for (const auto& c : e.children) {
            path.push_back(escape_segment(c.tag, cfg_.separator));
            const bool indexed = positional() && count[c.tag] > 1;
            if (indexed) path.push_back(std::to_string(seen[c.tag]++));
            xml(c, path);
            if (indexed) path.pop_back();
            path.pop_back();
        }
    }

    static std::string_view trimmed(std::string_view s) {
        const auto ws = " \t\r\n";
        const auto b = s.find_first_not_of(ws);
        if (b == std::string_view::npos) return {};
        return s.substr(b, s.find_last_not_of(ws) - b + 1);
    }

private:
    [[nodiscard]] bool positional() const { return cfg_.array_mode == ArrayMode::positional; }

    std::string join(const std::vector<std::string>& path) const {
        std::string out;
        for (std::size_t i = 0; i < path.size(); ++i) {
            if (i) out += cfg_.separator;
            out += path[i];
        }
        return out;
    }

    void leaf(std::vector<std::string>& path, Value v, std::string_view rendered) {
        if (positional()) {
            out_.push_back({row_, Key(join(path)), std::move(v)});
        } else {
            path.push_back(escape_segment(rendered, cfg_.separator));
            out_.push_back({row_, Key(join(path)), Value::number(1)});
            path.pop_back();
        }
    }

    const DenormConfig& cfg_;
    TripleStream& out_;
    Key row_;
};

[[noreturn]] inline void no_records(const DenormConfig& cfg) {
    if (cfg.record_selector.empty()) throw error(errc::no_records, "no records found");
    throw error(errc::no_records,
                "no records found: selector '" + cfg.record_selector + "' matched nothing");
}

[[noreturn]] inline void missing_row_id(const DenormConfig& cfg, std::size_t ordinal) {
    throw error(errc::missing_row_id, "missing row id: record " + std::to_string(ordinal) +
                                          " has no usable '" + cfg.row_id_field + "' field");
}

inline Key json_row_id(const DocNode& record, const DenormConfig& cfg, std::size_t ordinal) {
    if (cfg.row_id_field.empty()) return Key(static_cast<double>(ordinal));
    if (const auto* obj = record.object()) {
        for (const auto& [name, child] : *obj) {
            if (name != cfg.row_id_field) continue;
            if (const auto* s = std::get_if<std::string>(&child.value)) return Key(*s);
            if (const auto* x = std::get_if<double>(&child.value); x && std::isfinite(*x))
                return Key(*x);
            if (const auto* b = std::get_if<bool>(&child.value)) return Key(*b ? "true" : "false");
        }
    }
    missing_row_id(cfg, ordinal);
}

inline Key xml_row_id(const Element& record, const DenormConfig& cfg, std::size_t ordinal) {
    if (cfg.row_id_field.empty()) return Key(static_cast<double>(ordinal));
    for (const auto& [name, text] : record.attributes)
        if (name == cfg.row_id_field) return Key(text);
    for (const auto& c : record.children) {
        if (c.tag != cfg.row_id_field) continue;
        if (auto t = Flattener::trimmed(c.text); !t.empty()) return Key(std::string(t));
    }
    missing_row_id(cfg, ordinal);
}

} // namespace detail

/// Flattens a JSON document into (record, path, leaf) triples, one row per
/// record, in depth-first traversal order.
inline TripleStream flatten_json(const DocNode& doc, const DenormConfig& cfg,
                                 std::size_t& record_count) {
    TripleStream out;
    detail::Flattener flat(cfg, out);

    std::vector<const DocNode*> records;
    const DocNode* node = &doc;
    for (const auto& seg : split_path(cfg.record_selector, cfg.separator)) {
        const DocNode* next = nullptr;
        if (const auto* obj = node->object()) {
            for (const auto& [name, child] : *obj)
                if (name == seg) next = &child;
        } else if (const auto* arr = node->array()) {
            std::size_t idx = 0;
            auto [p, ec] = std::from_chars(seg.data(), seg.data() + seg.size(), idx);
            if (ec == std::errc{} && p == seg.data() + seg.size() && idx < arr->size())
                next = &(*arr)[idx];
        }
        if (!next) detail::no_records(cfg);
        node = next;
    }
    if (const auto* arr = node->array()) {
        for (const auto& r : *arr) records.push_back(&r);
    } else {
        records.push_back(node);
    }
    if (records.empty()) detail::no_records(cfg);

    record_count = records.size();
    std::vector<std::string> path;
    for (std::size_t i = 0; i < records.size(); ++i) {
        flat.set_row(detail::json_row_id(*records[i], cfg, i + 1));
        flat.json(*records[i], path);
    }
    return out;
}

/// Flattens an XML document: each child element of the root (or of the
/// element named by the record selector) is one record. Attributes come
/// first, then trimmed text content, then child elements in order.
inline TripleStream flatten_xml(const DocNode& doc, const DenormConfig& cfg,
                                std::size_t& record_count) {
    const auto* root = doc.element();
    if (!root) throw error(errc::invalid_value, "flatten_xml requires an XML document");
    TripleStream out;
    detail::Flattener flat(cfg, out);

    const Element* node = root;
    for (const auto& seg : split_path(cfg.record_selector, cfg.separator)) {
        const auto it = std::find_if(node->children.begin(), node->children.end(),
                                     [&](const Element& c) { return c.tag == seg; });
        if (it == node->children.end()) detail::no_records(cfg);
        node = &*it;
    }
    if (node->children.empty()) detail::no_records(cfg);
    record_count = node->children.size();

    std::vector<std::string> path;
    for (std::size_t i = 0; i < node->children.size(); ++i) {
        const auto& record = node->children[i];
        flat.set_row(detail::xml_row_id(record, cfg, i + 1));
        path.push_back(escape_segment(record.tag, cfg.separator));
        flat.xml(record, path);
        path.pop_back();
    }
    return out;
}

inline TripleStream flatten_json(const DocNode& doc, const DenormConfig& cfg = {}) {
    std::size_t records = 0;
    return flatten_json(doc, cfg, records);
}

inline TripleStream flatten_xml(const DocNode& doc, const DenormConfig& cfg = {}) {
    std::size_t records = 0;
    return flatten_xml(doc, cfg, records);
}

} // namespace assoc

#endif // ASSOC_DENORMALIZE_HPP
