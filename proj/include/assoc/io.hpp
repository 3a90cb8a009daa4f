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

#ifndef ASSOC_IO_HPP
#define ASSOC_IO_HPP

#include <charconv>
#include <cmath>
#include <istream>
#include <iterator>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "assoc/array.hpp"
#include "assoc/error.hpp"
#include "assoc/semiring.hpp"

namespace assoc {

inline constexpr std::string_view triples_magic = "#aa-triples v1";
inline constexpr std::size_t dense_cell_limit = 1'000'000;

// ---------------------------------------------------------------------------
// Field escaping

enum class FieldContext { plain, set_element };

/// Escapes backslash, tab and newline; inside set elements also ',' and
/// '}'. A leading '#' or '{' is escaped so the field cannot be mistaken for
/// a header line or a set literal.
inline std::string escape_field(std::string_view s, FieldContext ctx = FieldContext::plain) {
    std::string out;
    out.reserve(s.size() + 2);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        switch (c) {
        case '\\': out += "\\\\"; break;
        case '\t': out += "\\t"; break;
        case '\n': out += "\\n"; break;
        case ',':
        case '}':
            if (ctx == FieldContext::set_element) out += '\\';
            out += c;
            break;
        case '#':
        case '{':
            if (i == 0) out += '\\';
            out += c;
            break;
        default: out += c;
        }
    }
    return out;
}

/// Inverse of `escape_field`: `\t` and `\n` decode to control characters,
/// any other escaped character stands for itself.
inline std::string unescape_field(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '\\' || i + 1 == s.size()) {
            out += s[i];
            continue;
        }
        const char n = s[++i];
        out += n == 't' ? '\t' : n == 'n' ? '\n' : n;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Numeric grammar: -?digits(.digits)?([eE][+-]?digits)? and, for values, inf / -inf.

namespace detail {

inline bool matches_decimal(std::string_view s) {
    std::size_t i = 0;
    const auto digits = [&] {
        const auto start = i;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
        return i > start;
    };
    if (i < s.size() && s[i] == '-') ++i;
    if (!digits()) return false;
    if (i < s.size() && s[i] == '.') {
        ++i;
        if (!digits()) return false;
    }
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
        if (!digits()) return false;
    }
    return i == s.size();
}

inline std::optional<double> parse_decimal(std::string_view s) {
    if (!matches_decimal(s)) return std::nullopt;
    double x = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc{} || p != s.data() + s.size() || !std::isfinite(x)) return std::nullopt;
    return x;
}

} // namespace detail

/// Number for a field that fully matches the value grammar (decimal, inf, -inf).
inline std::optional<double> parse_number(std::string_view s) {
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    return detail::parse_decimal(s);
}

/// True when a text key would be read back as a number key.
inline bool looks_numeric_key(std::string_view text) {
    return detail::parse_decimal(text).has_value();
}

// ---------------------------------------------------------------------------
// Rendering

/// Key field; with `force_text` off, numeric-lookalike text keys carry a
/// leading backslash so they cannot be read back as numbers.
inline std::string render_key(const Key& k, bool protect_numeric_text) {
    if (k.is_number()) return format_number(k.as_number());
    auto out = escape_field(k.as_text());
    if (protect_numeric_text && looks_numeric_key(k.as_text())) out.insert(out.begin(), '\\');
    return out;
}

inline std::string render_value(const Value& v) {
    switch (v.kind()) {
    case Value::Kind::number: return format_number(v.as_number());
    case Value::Kind::text: return escape_field(v.as_text());
    case Value::Kind::text_set: {
        const auto& elems = v.as_text_set().elements();
        if (elems.size() == 1 && elems.front().empty()) return "{,}";
        std::string out = "{";
        for (std::size_t i = 0; i < elems.size(); ++i) {
            if (i) out += ',';
            out += escape_field(elems[i], FieldContext::set_element);
        }
        return out + "}";
    }
    case Value::Kind::top: break;
    }
    throw error(errc::invalid_value, "Top cannot be serialized");
}

/// Parses a value field: `{...}` is a text set, a numeric field a number,
/// anything else text.
inline std::optional<Value> parse_value(std::string_view raw) {
    if (!raw.empty() && raw.front() == '{') {
        std::vector<std::string> elems;
        std::string cur;
        bool closed = false;
        for (std::size_t i = 1; i < raw.size(); ++i) {
            if (closed) return std::nullopt; // text after the closing brace
            const char c = raw[i];
            if (c == '\\' && i + 1 < raw.size()) {
                cur += c;
                cur += raw[++i];
            } else if (c == ',') {
                elems.push_back(unescape_field(cur));
                cur.clear();
            } else if (c == '}') {
                closed = true;
            } else {
                cur += c;
            }
        }
        if (!closed) return std::nullopt;
        // "{}" is the empty set; any other literal has at least one element.
        if (raw.size() > 2) elems.push_back(unescape_field(cur));
        return Value::text_set(TextSet(std::move(elems)));
    }
    if (auto x = parse_number(raw)) return Value::number(*x);
    return Value::text(unescape_field(raw));
}

inline Key parse_key(std::string_view raw, bool keys_text) {
    if (!keys_text)
        if (auto x = detail::parse_decimal(raw)) return Key(*x);
    return Key(unescape_field(raw));
}

// ---------------------------------------------------------------------------
// Triple files

/// Writes the `#aa-triples v1` format. `#keys text` is emitted when every key
/// is text and some key would otherwise read back as a number.
inline void write_triples(std::ostream& sink, std::string_view semiring_name,
                          const TripleStream& triples) {
    bool any_number = false, any_lookalike = false;
    const auto scan = [&](const Key& k) {
        if (k.is_number()) any_number = true;
        else if (looks_numeric_key(k.as_text())) any_lookalike = true;
    };
    for (const auto& t : triples) {
        scan(t.row);
        scan(t.col);
    }
    const bool keys_text = any_lookalike && !any_number;

    std::string buf;
    buf += triples_magic;
    buf += "\n#semiring ";
    buf += semiring_name;
    buf += '\n';
    if (keys_text) buf += "#keys text\n";
    for (const auto& t : triples) {
        buf += render_key(t.row, !keys_text);
        buf += '\t';
        buf += render_key(t.col, !keys_text);
        buf += '\t';
        buf += render_value(t.value);
        buf += '\n';
    }
    sink.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!sink) throw error(errc::io, "write failed");
}

inline void write_triples(std::ostream& sink, const AssociativeArray& a) {
    write_triples(sink, a.semiring().name, to_triples(a));
}

struct TripleFile {
    TripleStream triples;
    Semiring semiring;
    bool keys_text = false;
};

/// Reads a triple file. With `semiring_override` the header's semiring is
/// replaced and values are checked against the override instead.
inline TripleFile read_triples(std::istream& source,
                               const std::optional<Semiring>& semiring_override = std::nullopt) {
    const std::string text{std::istreambuf_iterator<char>(source), std::istreambuf_iterator<char>()};
    if (source.bad()) throw error(errc::io, "read failed");

    std::vector<std::string_view> lines;
    for (std::size_t b = 0; b < text.size();) {
        auto e = text.find('\n', b);
        if (e == std::string::npos) e = text.size();
        lines.emplace_back(text.data() + b, e - b);
        b = e + 1;
    }

    const auto bad_header = [](std::size_t n, const std::string& why) {
        return error(errc::bad_header, "bad header at line " + std::to_string(n) + ": " + why);
    };
    if (lines.empty() || lines[0] != triples_magic)
        throw bad_header(1, "expected '" + std::string(triples_magic) + "'");
    if (lines.size() < 2 || lines[1].substr(0, 10) != "#semiring ")
        throw bad_header(2, "expected '#semiring <name>'");

    TripleFile out;
    try {
        out.semiring = get_semiring(lines[1].substr(10));
    } catch (const error& e) {
        throw bad_header(2, e.what());
    }
    if (semiring_override) out.semiring = *semiring_override;

    std::size_t n = 2;
    if (n < lines.size() && lines[n] == "#keys text") {
        out.keys_text = true;
        ++n;
    }
    out.triples.reserve(lines.size() - n);
    for (; n < lines.size(); ++n) {
        const auto line = lines[n];
        const auto lineno = std::to_string(n + 1);
        if (!line.empty() && line.front() == '#')
            throw bad_header(n + 1, "unexpected header line '" + std::string(line) + "'");
        const auto t1 = line.find('\t');
        const auto t2 = t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
        if (t2 == std::string_view::npos || line.find('\t', t2 + 1) != std::string_view::npos)
            throw error(errc::malformed_line, "malformed line " + lineno + ": expected 3 fields");
        auto value = parse_value(line.substr(t2 + 1));
        if (!value) throw error(errc::malformed_line, "malformed line " + lineno + ": bad set literal");
        if (!out.semiring.normalize(*value))
            throw error(errc::domain, "value outside semiring domain at line " + lineno + ": " +
                                          value->debug_string() + " under " + out.semiring.name);
        out.triples.push_back({parse_key(line.substr(0, t1), out.keys_text),
                               parse_key(line.substr(t1 + 1, t2 - t1 - 1), out.keys_text),
                               *std::move(value)});
    }
    return out;
}

inline AssociativeArray read_array(std::istream& source,
                                   const std::optional<Semiring>& semiring_override = std::nullopt) {
    auto file = read_triples(source, semiring_override);
    return construct(file.triples, file.semiring);
}

// ---------------------------------------------------------------------------
// Dense TSV

/// Spreadsheet-style rendering: a header of column keys after an empty
/// corner cell, then one line per row. Zero cells are empty.
inline void write_dense(std::ostream& sink, const AssociativeArray& a) {
    const auto& rows = a.rows();
    const auto& cols = a.cols();
    if (!cols.empty() && rows.size() > dense_cell_limit / cols.size())
        throw error(errc::dense_too_large, "dense too large: " + std::to_string(rows.size()) +
                                               " x " + std::to_string(cols.size()) + " cells");
    std::string buf;
    for (const auto& c : cols) {
        buf += '\t';
        buf += render_key(c, true);
    }
    buf += '\n';
    std::vector<const Value*> cells(cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::fill(cells.begin(), cells.end(), nullptr);
        const auto r = a.row(i);
        for (std::size_t p = 0; p < r.cols.size(); ++p) cells[r.cols[p]] = &r.values[p];
        buf += render_key(rows[i], true);
        for (const auto* v : cells) {
            buf += '\t';
            if (v) buf += render_value(*v);
        }
        buf += '\n';
    }
    sink.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!sink) throw error(errc::io, "write failed");
}

} // namespace assoc

#endif // ASSOC_IO_HPP
