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

#ifndef ASSOC_PIVOT_HPP
#define ASSOC_PIVOT_HPP

#include <cmath>
#include <optional>
#include <string>

#include "assoc/array.hpp"
#include "assoc/error.hpp"
#include "assoc/io.hpp"
#include "assoc/semiring.hpp"

namespace assoc {

/// Cross-tabulation of a record table. Without `value_field` each record
/// contributes 1 under plus_times (count mode); otherwise the record's
/// value_field entry is aggregated with `aggregator`'s addition.
struct PivotSpec {
    Key row_field;
    Key col_field;
    std::optional<Key> value_field;
    Semiring aggregator = get_semiring("plus_times");
};

struct PivotResult {
    AssociativeArray table;
    std::size_t skipped = 0; // records lacking a usable row, col or value field
};

namespace detail {

/// Axis key for a field value: numbers become number keys, text and
/// singleton sets text keys (numeric-looking set elements are numbers that
/// were coerced into the set domain). Anything else has no single key.
inline std::optional<Key> pivot_key(const Value& v) {
    switch (v.kind()) {
    case Value::Kind::number:
        if (std::isfinite(v.as_number())) return Key(v.as_number());
        return std::nullopt;
    case Value::Kind::text: return Key(v.as_text());
    case Value::Kind::text_set: {
        const auto& s = v.as_text_set();
        if (s.size() != 1) return std::nullopt;
        if (auto x = detail::parse_decimal(s.elements().front())) return Key(*x);
        return Key(s.elements().front());
    }
    case Value::Kind::top: break;
    }
    return std::nullopt;
}

inline std::optional<Value> pivot_value(const Semiring& agg, const Value& v) {
    if (auto n = agg.normalize(v); n && !n->is_top()) return n;
    // A singleton set holding a number literal counts as that number.
    if (v.is_text_set() && v.as_text_set().size() == 1)
        if (auto x = parse_number(v.as_text_set().elements().front()))
            return agg.normalize(Value::number(*x));
    return std::nullopt;
}

} // namespace detail

/// Builds a pivot table: for every record (row of `table`) holding both
/// axis fields, emits (row_field value, col_field value, v) and constructs
/// the result under the aggregator.
inline PivotResult pivot(const AssociativeArray& table, const PivotSpec& spec) {
    if (spec.row_field == spec.col_field)
        throw error(errc::degenerate_pivot,
                    "degenerate pivot: row field and column field are both " +
                        spec.row_field.debug_string());
    const bool count_mode = !spec.value_field;
    const Semiring& agg = count_mode ? get_semiring("plus_times") : spec.aggregator;

    const auto rf = table.col_index(spec.row_field);
    const auto cf = table.col_index(spec.col_field);
    const auto vf = count_mode ? std::nullopt : table.col_index(*spec.value_field);

    TripleStream emitted;
    std::size_t skipped = 0;
    for (std::size_t i = 0; i < table.rows().size(); ++i) {
        const auto r = table.row(i);
        const auto field = [&](std::optional<std::size_t> col) -> const Value* {
            if (!col) return nullptr;
            const auto it = std::lower_bound(r.cols.begin(), r.cols.end(), *col);
            if (it == r.cols.end() || *it != *col) return nullptr;
            return &r.values[static_cast<std::size_t>(it - r.cols.begin())];
        };
        const Value* rv = field(rf);
        const Value* cv = field(cf);
        const Value* vv = count_mode ? nullptr : field(vf);
        std::optional<Key> rk = rv ? detail::pivot_key(*rv) : std::nullopt;
        std::optional<Key> ck = cv ? detail::pivot_key(*cv) : std::nullopt;
        if (!rk || !ck || (!count_mode && !vv)) {
            ++skipped;
            continue;
        }
        Value v = Value::number(1);
        if (!count_mode) {
            auto conv = detail::pivot_value(agg, *vv);
            if (!conv)
                throw error(errc::domain, "value outside semiring domain in record " +
                                              table.rows()[i].debug_string() + ": " +
                                              vv->debug_string() + " under " + agg.name);
            v = *std::move(conv);
        }
        emitted.push_back({*std::move(rk), *std::move(ck), std::move(v)});
    }
    return {construct(emitted, agg), skipped};
}

/// Feature co-occurrence counts of an indicator table: transpose(T) * T.
inline AssociativeArray co_occurrence(const AssociativeArray& table) {
    bool indicator = table.semiring().name == "plus_times";
    table.for_each([&](const Key&, const Key&, const Value& v) {
        indicator = indicator && v.is_number() && v.as_number() == 1.0;
    });
    if (!indicator)
        throw error(errc::not_indicator,
                    "not an indicator array: expected plus_times entries all equal to 1");
    return array_multiply(transpose(table), table);
}

} // namespace assoc

#endif // ASSOC_PIVOT_HPP
