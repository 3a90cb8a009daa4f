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

#ifndef ASSOC_ARRAY_HPP
#define ASSOC_ARRAY_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <tuple>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "assoc/error.hpp"
#include "assoc/key.hpp"
#include "assoc/semiring.hpp"
#include "assoc/value.hpp"

namespace assoc {

struct Triple {
    Key row;
    Key col;
    Value value;

    friend bool operator==(const Triple&, const Triple&) = default;
};

/// Ordered (row, col, value) records; duplicate coordinates aggregate on construction.
using TripleStream = std::vector<Triple>;

/// Sorted duplicate-free key sequence.
using KeySet = std::vector<Key>;

class AssociativeArray;

namespace detail {
struct Coo {
    std::size_t row;
    std::size_t col;
    Value value;
};
AssociativeArray assemble(const Semiring& sr, const KeySet& rows, const KeySet& cols,
                          std::vector<Coo> entries);
} // namespace detail

/// Sparse mapping rows x cols -> V over a semiring, kept in minimal form:
/// no stored zeros, and the key sets are exactly the support. Stored as
/// compressed rows; immutable once built.
class AssociativeArray {
public:
    /// Read-only view of the stored entries of one row.
    struct RowView {
        std::span<const std::size_t> cols; // indices into cols()
        std::span<const Value> values;
    };

    explicit AssociativeArray(Semiring sr) : sr_(std::move(sr)), row_ptr_{0} {}

    [[nodiscard]] const Semiring& semiring() const noexcept { return sr_; }
    [[nodiscard]] const KeySet& rows() const noexcept { return rows_; }
    [[nodiscard]] const KeySet& cols() const noexcept { return cols_; }
    [[nodiscard]] std::size_t nnz() const noexcept { return values_.size(); }
    [[nodiscard]] bool empty() const noexcept { return values_.empty(); }

    [[nodiscard]] RowView row(std::size_t i) const {
        const auto b = row_ptr_[i];
        const auto n = row_ptr_[i + 1] - b;
        return {std::span(col_idx_).subspan(b, n), std::span(values_).subspan(b, n)};
    }

    [[nodiscard]] std::optional<std::size_t> row_index(const Key& k) const { return find(rows_, k); }
    [[nodiscard]] std::optional<std::size_t> col_index(const Key& k) const { return find(cols_, k); }

    /// Stored value, or the semiring zero when (r, c) is not stored.
    [[nodiscard]] Value lookup(const Key& r, const Key& c) const {
        if (const Value* v = find_entry(r, c)) return *v;
        return sr_.zero;
    }

    [[nodiscard]] const Value* find_entry(const Key& r, const Key& c) const {
        const auto i = row_index(r);
        const auto j = col_index(c);
        if (!i || !j) return nullptr;
        const auto rv = row(*i);
        const auto it = std::lower_bound(rv.cols.begin(), rv.cols.end(), *j);
        if (it == rv.cols.end() || *it != *j) return nullptr;
        return &rv.values[static_cast<std::size_t>(it - rv.cols.begin())];
    }

    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t i = 0; i < rows_.size(); ++i)
            for (auto p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p)
                f(rows_[i], cols_[col_idx_[p]], values_[p]);
    }

private:
    friend AssociativeArray detail::assemble(const Semiring&, const KeySet&, const KeySet&,
                                             std::vector<detail::Coo>);

    static std::optional<std::size_t> find(const KeySet& keys, const Key& k) {
        const auto it = std::lower_bound(keys.begin(), keys.end(), k);
        if (it == keys.end() || *it != k) return std::nullopt;
        return static_cast<std::size_t>(it - keys.begin());
    }

    Semiring sr_;
    KeySet rows_;
    KeySet cols_;
    std::vector<std::size_t> row_ptr_;
    std::vector<std::size_t> col_idx_;
    std::vector<Value> values_;
};

namespace detail {

/// Builds a minimal-form array from entries sorted by (row, col) with unique
/// coordinates. Zeros are dropped and unused keys compacted away.
inline AssociativeArray assemble(const Semiring& sr, const KeySet& rows, const KeySet& cols,
                                 std::vector<Coo> entries) {
    std::erase_if(entries, [&](const Coo& e) { return e.value == sr.zero; });

    constexpr auto unused = static_cast<std::size_t>(-1);
    std::vector<std::size_t> row_map(rows.size(), unused);
    std::vector<std::size_t> col_map(cols.size(), unused);
    for (const auto& e : entries) {
        row_map[e.row] = 0;
        col_map[e.col] = 0;
    }

    AssociativeArray out(sr);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (row_map[i] == unused) continue;
        row_map[i] = out.rows_.size();
        out.rows_.push_back(rows[i]);
    }
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (col_map[j] == unused) continue;
        col_map[j] = out.cols_.size();
        out.cols_.push_back(cols[j]);
    }

    out.row_ptr_.assign(out.rows_.size() + 1, 0);
    out.col_idx_.reserve(entries.size());
    out.values_.reserve(entries.size());
    for (auto& e : entries) {
        ++out.row_ptr_[row_map[e.row] + 1];
        out.col_idx_.push_back(col_map[e.col]);
        out.values_.push_back(std::move(e.value));
    }
    std::partial_sum(out.row_ptr_.begin(), out.row_ptr_.end(), out.row_ptr_.begin());
    return out;
}

/// Merged key set plus, for each input, the position of its keys in the merge.
struct KeyUnion {
    KeySet keys;
    std::vector<std::size_t> from_a;
    std::vector<std::size_t> from_b;
};

inline KeyUnion merge_keys(const KeySet& a, const KeySet& b) {
    KeyUnion u;
    u.keys.reserve(a.size() + b.size());
    u.from_a.reserve(a.size());
    u.from_b.reserve(b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i] < b[j])) {
            u.from_a.push_back(u.keys.size());
            u.keys.push_back(a[i++]);
        } else if (i == a.size() || b[j] < a[i]) {
            u.from_b.push_back(u.keys.size());
            u.keys.push_back(b[j++]);
        } else {
            u.from_a.push_back(u.keys.size());
            u.from_b.push_back(u.keys.size());
            u.keys.push_back(a[i++]);
            ++j;
        }
    }
    return u;
}

inline void require_same_semiring(const AssociativeArray& a, const AssociativeArray& b) {
    if (!(a.semiring() == b.semiring()))
        throw error(errc::semiring_mismatch,
                    "semiring mismatch: " + a.semiring().name + " vs " + b.semiring().name);
}

/// Row-by-row merge of two arrays on the union of their key sets. `combine`
/// receives a pointer to each side's value (null when absent) and returns
/// the value to emit, if any.
template <typename Combine>
AssociativeArray merge_elementwise(const AssociativeArray& a, const AssociativeArray& b,
                                   Combine combine) {
    require_same_semiring(a, b);
    const auto rows = merge_keys(a.rows(), b.rows());
    const auto cols = merge_keys(a.cols(), b.cols());

    std::vector<Coo> out;
    std::size_t ia = 0, ib = 0;
    const auto a_row_at = [&](std::size_t r) {
        return ia < a.rows().size() && rows.from_a[ia] == r;
    };
    const auto b_row_at = [&](std::size_t r) {
        return ib < b.rows().size() && rows.from_b[ib] == r;
    };
    for (std::size_t r = 0; r < rows.keys.size(); ++r) {
        AssociativeArray::RowView ra{}, rb{};
        if (a_row_at(r)) ra = a.row(ia++);
        if (b_row_at(r)) rb = b.row(ib++);
        std::size_t p = 0, q = 0;
        while (p < ra.cols.size() || q < rb.cols.size()) {
            const auto ca = p < ra.cols.size() ? cols.from_a[ra.cols[p]] : SIZE_MAX;
            const auto cb = q < rb.cols.size() ? cols.from_b[rb.cols[q]] : SIZE_MAX;
            const Value* va = nullptr;
            const Value* vb = nullptr;
            const auto c = std::min(ca, cb);
            if (ca == c) va = &ra.values[p++];
            if (cb == c) vb = &rb.values[q++];
            if (auto v = combine(va, vb)) out.push_back({r, c, *std::move(v)});
        }
    }
    return assemble(a.semiring(), rows.keys, cols.keys, std::move(out));
}

} // namespace detail

/// Builds an array from triples; duplicate coordinates are combined with
/// the semiring addition in stream order.
inline AssociativeArray construct(const TripleStream& triples, const Semiring& sr) {
    std::vector<Value> values;
    values.reserve(triples.size());
    for (std::size_t t = 0; t < triples.size(); ++t) {
        auto v = sr.normalize(triples[t].value);
        if (!v || v->is_top())
            throw error(errc::domain, "value outside semiring domain at triple " +
                                          std::to_string(t) + ": " +
                                          triples[t].value.debug_string() + " under " + sr.name);
        values.push_back(*std::move(v));
    }

    KeySet rows, cols;
    rows.reserve(triples.size());
    cols.reserve(triples.size());
    for (const auto& t : triples) {
        rows.push_back(t.row);
        cols.push_back(t.col);
    }
    const auto sort_unique = [](KeySet& ks) {
        std::sort(ks.begin(), ks.end());
        ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    };
    sort_unique(rows);
    sort_unique(cols);
    const auto index_of = [](const KeySet& ks, const Key& k) {
        return static_cast<std::size_t>(std::lower_bound(ks.begin(), ks.end(), k) - ks.begin());
    };

    struct Slot {
        std::size_t row, col, pos;
    };
    std::vector<Slot> slots;
    slots.reserve(triples.size());
    for (std::size_t t = 0; t < triples.size(); ++t)
        slots.push_back({index_of(rows, triples[t].row), index_of(cols, triples[t].col), t});
    // pos breaks ties, so duplicates stay in stream order.
    std::sort(slots.begin(), slots.end(), [](const Slot& x, const Slot& y) {
        return std::tie(x.row, x.col, x.pos) < std::tie(y.row, y.col, y.pos);
    });

    std::vector<detail::Coo> entries;
    entries.reserve(slots.size());
    for (const auto& s : slots) {
        if (!entries.empty() && entries.back().row == s.row && entries.back().col == s.col)
            entries.back().value = sr.add(entries.back().value, values[s.pos]);
        else
            entries.push_back({s.row, s.col, std::move(values[s.pos])});
    }
    return detail::assemble(sr, rows, cols, std::move(entries));
}

/// C(i,j) = A(i,j) + B(i,j); support is a subset of the union of supports.
inline AssociativeArray elementwise_add(const AssociativeArray& a, const AssociativeArray& b) {
    const auto& sr = a.semiring();
    return detail::merge_elementwise(a, b, [&](const Value* x, const Value* y) {
        if (x && y) return std::optional<Value>(sr.add(*x, *y));
        return std::optional<Value>(x ? *x : *y);
    });
}

/// C(i,j) = A(i,j) * B(i,j); only coordinates stored in both can survive.
inline AssociativeArray elementwise_mul(const AssociativeArray& a, const AssociativeArray& b) {
    const auto& sr = a.semiring();
    return detail::merge_elementwise(a, b, [&](const Value* x, const Value* y) {
        if (x && y) return std::optional<Value>(sr.mul(*x, *y));
        return std::optional<Value>();
    });
}

/// C(i,k) = sum_j A(i,j) * B(j,k), joining A's column keys with B's row
/// keys by equality. The sum for each (i,k) is folded in ascending j.
inline AssociativeArray array_multiply(const AssociativeArray& a, const AssociativeArray& b) {
    detail::require_same_semiring(a, b);
    const auto& sr = a.semiring();

    // For each column of A, the matching row of B if any.
    constexpr auto none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> join(a.cols().size(), none);
    for (std::size_t j = 0, k = 0; j < a.cols().size() && k < b.rows().size();) {
        if (a.cols()[j] < b.rows()[k]) {
            ++j;
        } else if (b.rows()[k] < a.cols()[j]) {
            ++k;
        } else {
            join[j++] = k++;
        }
    }

    std::vector<detail::Coo> out;
    std::vector<std::optional<Value>> acc(b.cols().size());
    std::vector<std::size_t> touched;
    for (std::size_t i = 0; i < a.rows().size(); ++i) {
        const auto ra = a.row(i);
        for (std::size_t p = 0; p < ra.cols.size(); ++p) {
            const auto jb = join[ra.cols[p]];
            if (jb == none) continue;
            const auto rb = b.row(jb);
            for (std::size_t q = 0; q < rb.cols.size(); ++q) {
                const auto k = rb.cols[q];
                Value prod = sr.mul(ra.values[p], rb.values[q]);
                if (acc[k]) {
                    acc[k] = sr.add(*acc[k], prod);
                } else {
                    acc[k] = std::move(prod);
                    touched.push_back(k);
                }
            }
        }
        std::sort(touched.begin(), touched.end());
        for (const auto k : touched) {
            out.push_back({i, k, *std::move(acc[k])});
            acc[k].reset();
        }
        touched.clear();
    }
    return detail::assemble(sr, a.rows(), b.cols(), std::move(out));
}

inline AssociativeArray transpose(const AssociativeArray& a) {
    // Bucket entries by column; rows are visited in order so each bucket stays sorted.
    std::vector<std::vector<detail::Coo>> buckets(a.cols().size());
    for (std::size_t i = 0; i < a.rows().size(); ++i) {
        const auto r = a.row(i);
        for (std::size_t p = 0; p < r.cols.size(); ++p)
            buckets[r.cols[p]].push_back({r.cols[p], i, r.values[p]});
    }
    std::vector<detail::Coo> out;
    out.reserve(a.nnz());
    for (auto& b : buckets)
        for (auto& e : b) out.push_back(std::move(e));
    return detail::assemble(a.semiring(), a.cols(), a.rows(), std::move(out));
}

/// Sub-array whose row and column keys fall in the given closed ranges; an
/// absent range selects everything.
inline AssociativeArray select(const AssociativeArray& a, const std::optional<KeyRange>& rows,
                               const std::optional<KeyRange>& cols) {
    for (const auto* r : {&rows, &cols})
        if (*r && (*r)->hi < (*r)->lo)
            throw error(errc::empty_range, "empty-range: lower bound " + (*r)->lo.debug_string() +
                                               " exceeds upper bound " + (*r)->hi.debug_string());

    std::vector<bool> col_ok(a.cols().size());
    for (std::size_t j = 0; j < col_ok.size(); ++j) col_ok[j] = !cols || cols->contains(a.cols()[j]);

    std::vector<detail::Coo> out;
    for (std::size_t i = 0; i < a.rows().size(); ++i) {
        if (rows && !rows->contains(a.rows()[i])) continue;
        const auto r = a.row(i);
        for (std::size_t p = 0; p < r.cols.size(); ++p)
            if (col_ok[r.cols[p]]) out.push_back({i, r.cols[p], r.values[p]});
    }
    return detail::assemble(a.semiring(), a.rows(), a.cols(), std::move(out));
}

/// All entries in row-major key order.
inline TripleStream to_triples(const AssociativeArray& a) {
    TripleStream out;
    out.reserve(a.nnz());
    a.for_each([&](const Key& r, const Key& c, const Value& v) { out.push_back({r, c, v}); });
    return out;
}

inline bool equal_within(const AssociativeArray& a, const AssociativeArray& b, double rel_tol) {
    if (!(a.semiring() == b.semiring()) || a.rows() != b.rows() || a.cols() != b.cols() ||
        a.nnz() != b.nnz())
        return false;
    for (std::size_t i = 0; i < a.rows().size(); ++i) {
        const auto ra = a.row(i);
        const auto rb = b.row(i);
        if (!std::equal(ra.cols.begin(), ra.cols.end(), rb.cols.begin(), rb.cols.end()))
            return false;
        for (std::size_t p = 0; p < ra.values.size(); ++p)
            if (!values_equal(ra.values[p], rb.values[p], rel_tol)) return false;
    }
    return true;
}

/// Walks the array and checks the minimal-form invariants: sorted unique
/// keys, no stored zeros or Top, in-domain values, every key used.
inline bool is_minimal(const AssociativeArray& a) {
    const auto strictly_sorted = [](const KeySet& ks) {
        return std::adjacent_find(ks.begin(), ks.end(), [](const Key& x, const Key& y) {
                   return !(x < y);
               }) == ks.end();
    };
    if (!strictly_sorted(a.rows()) || !strictly_sorted(a.cols())) return false;
    std::vector<bool> col_used(a.cols().size());
    const auto& sr = a.semiring();
    for (std::size_t i = 0; i < a.rows().size(); ++i) {
        const auto r = a.row(i);
        if (r.cols.empty()) return false;
        if (!std::is_sorted(r.cols.begin(), r.cols.end()) ||
            std::adjacent_find(r.cols.begin(), r.cols.end()) != r.cols.end())
            return false;
        for (std::size_t p = 0; p < r.cols.size(); ++p) {
            const auto& v = r.values[p];
            const auto n = sr.normalize(v);
            if (v == sr.zero || v.is_top() || !n || !(*n == v)) return false;
            col_used[r.cols[p]] = true;
        }
    }
    return std::all_of(col_used.begin(), col_used.end(), [](bool u) { return u; });
}

} // namespace assoc

#endif // ASSOC_ARRAY_HPP
