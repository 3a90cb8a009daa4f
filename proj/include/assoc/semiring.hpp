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

#ifndef ASSOC_SEMIRING_HPP
#define ASSOC_SEMIRING_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "assoc/error.hpp"
#include "assoc/value.hpp"

namespace assoc {

using BinaryOp = std::function<Value(const Value&, const Value&)>;

/// A named (V, add, mul, zero, one) bundle.
///
/// `normalize` maps a value into the canonical in-domain form (for example
/// text to a singleton set under `union_intersection`) or returns nullopt
/// when the value lies outside the domain. `add` and `mul` are only ever
/// called on normalized values. `tolerance` is the relative tolerance used
/// when comparing results of float arithmetic; zero means exact.
struct Semiring {
    std::string name;
    std::function<std::optional<Value>(const Value&)> normalize;
    BinaryOp add;
    BinaryOp mul;
    Value zero;
    Value one;
    double tolerance = 0.0;

    friend bool operator==(const Semiring& a, const Semiring& b) { return a.name == b.name; }
};

inline constexpr std::array<std::string_view, 8> semiring_names = {
    "plus_times", "max_plus",  "min_plus", "max_times",
    "min_times",  "max_min",   "min_max",  "union_intersection"};

/// Absolute floor applied to relative float comparisons.
inline constexpr double abs_tolerance_floor = 1e-12;

/// Equality of two values: exact for text, sets, Top and infinities;
/// relative `rel_tol` with an absolute floor for finite numbers.
inline bool values_equal(const Value& a, const Value& b, double rel_tol) {
    if (a.is_number() && b.is_number()) {
        const double x = a.as_number();
        const double y = b.as_number();
        if (x == y) return true;
        if (!std::isfinite(x) || !std::isfinite(y)) return false;
        const double scale = std::max(std::fabs(x), std::fabs(y));
        return std::fabs(x - y) <= std::max(rel_tol * scale, abs_tolerance_floor);
    }
    return a == b;
}

namespace detail {

inline constexpr double inf = std::numeric_limits<double>::infinity();

using NumberPredicate = bool (*)(double);

inline std::function<std::optional<Value>(const Value&)> numeric_domain(NumberPredicate pred) {
    return [pred](const Value& v) -> std::optional<Value> {
        if (v.is_number() && pred(v.as_number())) return v;
        return std::nullopt;
    };
}

template <typename F>
BinaryOp numeric_op(F f) {
    return [f](const Value& a, const Value& b) {
        return Value::number(f(a.as_number(), b.as_number()));
    };
}

inline Semiring make_numeric(std::string name, NumberPredicate domain, BinaryOp add, BinaryOp mul,
                             double zero, double one, double tolerance = 0.0) {
    return Semiring{std::move(name),      numeric_domain(domain), std::move(add),
                    std::move(mul),       Value::number(zero),    Value::number(one),
                    tolerance};
}

inline std::optional<Value> normalize_set(const Value& v) {
    switch (v.kind()) {
    case Value::Kind::text_set:
    case Value::Kind::top: return v;
    case Value::Kind::text: return Value::text_set(TextSet{v.as_text()});
    case Value::Kind::number: return Value::text_set(TextSet{format_number(v.as_number())});
    }
    return std::nullopt;
}

inline Semiring make_union_intersection() {
    BinaryOp add = [](const Value& a, const Value& b) {
        if (a.is_top() || b.is_top()) return Value::top();
        return Value::text_set(set_union(a.as_text_set(), b.as_text_set()));
    };
    BinaryOp mul = [](const Value& a, const Value& b) {
        if (a.is_top()) return b;
        if (b.is_top()) return a;
        return Value::text_set(set_intersection(a.as_text_set(), b.as_text_set()));
    };
    return Semiring{"union_intersection", normalize_set, std::move(add), std::move(mul),
                    Value::text_set({}),  Value::top(),  0.0};
}

inline Semiring build(std::string_view name) {
    const auto max = [](double a, double b) { return std::max(a, b); };
    const auto min = [](double a, double b) { return std::min(a, b); };
    const auto any = [](double) { return true; };
    const auto finite = [](double x) { return std::isfinite(x); };
    const auto nonneg_finite = [](double x) { return x >= 0 && std::isfinite(x); };
    const auto nonneg = [](double x) { return x >= 0; };

    if (name == "plus_times")
        return make_numeric("plus_times", finite, numeric_op(std::plus<>{}),
                            numeric_op(std::multiplies<>{}), 0.0, 1.0, 1e-9);
    if (name == "max_plus")
        // -inf annihilates even against +inf.
        return make_numeric("max_plus", any, numeric_op(max), numeric_op([](double a, double b) {
                                return (a == -inf || b == -inf) ? -inf : a + b;
                            }),
                            -inf, 0.0);
    if (name == "min_plus")
        return make_numeric("min_plus", any, numeric_op(min), numeric_op([](double a, double b) {
                                return (a == inf || b == inf) ? inf : a + b;
                            }),
                            inf, 0.0);
    if (name == "max_times")
        return make_numeric("max_times", nonneg_finite, numeric_op(max),
                            numeric_op(std::multiplies<>{}), 0.0, 1.0);
    if (name == "min_times")
        // 0 * inf = inf: the annihilator wins.
        return make_numeric("min_times", nonneg, numeric_op(min), numeric_op([](double a, double b) {
                                return (a == inf || b == inf) ? inf : a * b;
                            }),
                            inf, 1.0);
    if (name == "max_min")
        return make_numeric("max_min", nonneg, numeric_op(max), numeric_op(min), 0.0, inf);
    if (name == "min_max")
        return make_numeric("min_max", nonneg, numeric_op(min), numeric_op(max), inf, 0.0);
    if (name == "union_intersection") return make_union_intersection();

    std::string valid;
    for (auto n : semiring_names) {
        if (!valid.empty()) valid += ", ";
        valid += n;
    }
    throw error(errc::unknown_semiring,
                "unknown semiring '" + std::string(name) + "' (valid: " + valid + ")");
}

} // namespace detail

/// Returns one of the eight built-in semirings by name.
inline const Semiring& get_semiring(std::string_view name) {
    static const std::array<Semiring, 8> builtins = [] {
        std::array<Semiring, 8> out;
        for (std::size_t i = 0; i < semiring_names.size(); ++i)
            out[i] = detail::build(semiring_names[i]);
        return out;
    }();
    for (const auto& sr : builtins)
        if (sr.name == name) return sr;
    detail::build(name); // throws with the list of valid names
    throw error(errc::unknown_semiring, "unknown semiring");
}

/// Maps `v` into the domain of `sr` or throws a domain error.
inline Value normalize(const Semiring& sr, const Value& v) {
    if (auto out = sr.normalize(v)) return *std::move(out);
    throw error(errc::domain,
                "value outside semiring domain: " + v.debug_string() + " under " + sr.name);
}

inline Value add(const Semiring& sr, const Value& a, const Value& b) {
    return sr.add(normalize(sr, a), normalize(sr, b));
}

inline Value mul(const Semiring& sr, const Value& a, const Value& b) {
    return sr.mul(normalize(sr, a), normalize(sr, b));
}

/// Exact comparison against the distinguished zero.
inline bool is_zero(const Semiring& sr, const Value& v) { return normalize(sr, v) == sr.zero; }

struct AxiomViolation {
    std::string law;
    std::vector<Value> witness; // first failing instance in enumeration order
    std::size_t count = 0;      // failing instances of this law
};

struct AxiomReport {
    std::vector<AxiomViolation> violations;
    std::size_t instances_checked = 0;

    [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
    [[nodiscard]] const AxiomViolation* find(std::string_view law) const {
        for (const auto& v : violations)
            if (v.law == law) return &v;
        return nullptr;
    }
};

/// Checks every semiring identity over all pairs and triples drawn from
/// `samples`, in lexicographic sample order.
inline AxiomReport check_axioms(const Semiring& sr, const std::vector<Value>& samples) {
    if (samples.empty()) throw error(errc::no_samples, "no samples");
    if (samples.size() < 3) throw error(errc::no_samples, "no samples: need at least 3");

    std::vector<Value> s;
    s.reserve(samples.size());
    for (const auto& v : samples) s.push_back(normalize(sr, v));

    AxiomReport report;
    const auto record = [&](const char* law, bool holds, std::vector<Value> witness) {
        ++report.instances_checked;
        if (holds) return;
        for (auto& v : report.violations) {
            if (v.law == law) {
                ++v.count;
                return;
            }
        }
        report.violations.push_back({law, std::move(witness), 1});
    };
    const auto eq = [&](const Value& x, const Value& y) { return values_equal(x, y, sr.tolerance); };
    const auto& add = sr.add;
    const auto& mul = sr.mul;

    for (const auto& a : s) {
        record("additive identity", eq(add(a, sr.zero), a) && eq(add(sr.zero, a), a), {a});
        record("multiplicative identity", eq(mul(a, sr.one), a) && eq(mul(sr.one, a), a), {a});
        record("annihilation", eq(mul(a, sr.zero), sr.zero) && eq(mul(sr.zero, a), sr.zero), {a});
    }
    for (const auto& a : s)
        for (const auto& b : s) record("additive commutativity", eq(add(a, b), add(b, a)), {a, b});
    for (const auto& a : s) {
        for (const auto& b : s) {
            for (const auto& c : s) {
                record("additive associativity", eq(add(add(a, b), c), add(a, add(b, c))),
                       {a, b, c});
                record("multiplicative associativity", eq(mul(mul(a, b), c), mul(a, mul(b, c))),
                       {a, b, c});
                record("left distributivity", eq(mul(a, add(b, c)), add(mul(a, b), mul(a, c))),
                       {a, b, c});
                record("right distributivity", eq(mul(add(b, c), a), add(mul(b, a), mul(c, a))),
                       {a, b, c});
            }
        }
    }
    return report;
}

} // namespace assoc

#endif // ASSOC_SEMIRING_HPP
