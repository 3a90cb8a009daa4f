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

#ifndef ASSOC_ERROR_HPP
#define ASSOC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace assoc {

/// Failure categories. The CLI maps usage-like codes to exit status 1 and
/// data-like codes to exit status 2 (see `is_usage_error`).
enum class errc {
    invalid_value,     // NaN number, non-finite key, Top stored in an array
    unknown_semiring,
    domain,            // value outside semiring domain
    no_samples,
    semiring_mismatch,
    empty_range,
    parse,             // JSON/XML syntax error
    namespaces_unsupported,
    no_records,
    missing_row_id,
    degenerate_pivot,
    not_indicator,
    bad_header,
    malformed_line,
    dense_too_large,
    io,
};

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    [[nodiscard]] errc code() const noexcept { return code_; }

private:
    errc code_;
};

/// Parse failure carrying the 1-based position of the offending character.
class parse_error : public error {
public:
    parse_error(const std::string& what, std::size_t line, std::size_t column)
        : error(errc::parse, what + " at line " + std::to_string(line) + ", column " +
                                 std::to_string(column)),
          line_(line), column_(column) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

inline bool is_usage_error(errc code) noexcept {
    return code == errc::unknown_semiring || code == errc::empty_range ||
           code == errc::degenerate_pivot;
}

} // namespace assoc

#endif // ASSOC_ERROR_HPP
