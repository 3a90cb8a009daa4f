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

// aawrangle: command-line pipeline over associative-array triple files.
//
// Exit status: 0 success, 1 usage or flag error, 2 data, parse or domain error.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "assoc/assoc.hpp"

namespace {

constexpr int exit_usage = 1;
constexpr int exit_data = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string output;
    std::string semiring;
    std::vector<std::string> inputs;

    // ingest
    std::string format;
    std::string separator = "/";
    std::string array_mode = "positional";
    std::string row_id_field;
    std::string records;

    // query
    std::string rows;
    std::string cols;
    bool keys_as_text = false;

    // pivot
    std::string row_field;
    std::string col_field;
    std::string value_field;
    std::string agg = "plus_times";
    bool dense = false;
};

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw assoc::error(assoc::errc::io, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::optional<assoc::Semiring> override_of(const Options& o) {
    if (o.semiring.empty()) return std::nullopt;
    return assoc::get_semiring(o.semiring);
}

assoc::AssociativeArray load(const std::string& path, const Options& o) {
    std::istringstream in(read_input(path));
    return assoc::read_array(in, override_of(o));
}

/// Runs `write` against the -o file or standard output.
template <typename F>
void emit(const Options& o, F&& write) {
    if (o.output.empty()) {
        write(std::cout);
        std::cout.flush();
        if (!std::cout) throw assoc::error(assoc::errc::io, "write to standard output failed");
        return;
    }
    std::ofstream out(o.output, std::ios::binary | std::ios::trunc);
    if (!out) throw assoc::error(assoc::errc::io, "cannot open '" + o.output + "' for writing");
    write(out);
}

/// "lo:hi", split at the first colon not escaped by a backslash.
assoc::KeyRange parse_range(const std::string& spec, bool keys_text, const char* flag) {
    for (std::size_t i = 0; i < spec.size(); ++i) {
        if (spec[i] == '\\') {
            ++i;
        } else if (spec[i] == ':') {
            return {assoc::parse_key(spec.substr(0, i), keys_text),
                    assoc::parse_key(spec.substr(i + 1), keys_text)};
        }
    }
    throw UsageError(std::string(flag) + " expects lo:hi, got '" + spec + "'");
}

assoc::Key field_key(const std::string& name, bool keys_text) {
    return assoc::parse_key(name, keys_text);
}

int cmd_ingest(const Options& o) {
    const auto& path = o.inputs.at(0);
    std::string format = o.format;
    if (format.empty()) {
        const auto dot = path.rfind('.');
        const auto ext = dot == std::string::npos ? "" : path.substr(dot + 1);
        if (ext == "json" || ext == "xml") format = ext;
        else throw UsageError("cannot infer format of '" + path + "'; pass --format json|xml");
    }
    const auto& sr = assoc::get_semiring(o.semiring.empty() ? "plus_times" : o.semiring);
    assoc::DenormConfig cfg;
    cfg.separator = o.separator;
    cfg.array_mode = o.array_mode == "value_column" ? assoc::ArrayMode::value_column
                                                    : assoc::ArrayMode::positional;
    cfg.record_selector = o.records;
    cfg.row_id_field = o.row_id_field;

    const auto text = read_input(path);
    std::size_t records = 0;
    const auto triples = format == "json"
                             ? assoc::flatten_json(assoc::parse_json(text), cfg, records)
                             : assoc::flatten_xml(assoc::parse_xml(text), cfg, records);

    // Values must survive the read-back the next pipeline stage performs.
    for (std::size_t i = 0; i < triples.size(); ++i) {
        const auto reread = assoc::parse_value(assoc::render_value(triples[i].value));
        if (!reread || !sr.normalize(*reread))
            throw assoc::error(assoc::errc::domain,
                               "value outside semiring domain at triple " + std::to_string(i) +
                                   ": " + triples[i].value.debug_string() + " under " + sr.name);
    }
    emit(o, [&](std::ostream& out) { assoc::write_triples(out, sr.name, triples); });
    std::cerr << "records: " << records << "\ntriples: " << triples.size() << "\n";
    return 0;
}

template <typename Op>
int cmd_binary(const Options& o, Op op) {
    const auto a = load(o.inputs.at(0), o);
    const auto b = load(o.inputs.at(1), o);
    const auto c = op(a, b);
    emit(o, [&](std::ostream& out) { assoc::write_triples(out, c); });
    return 0;
}

int cmd_transpose(const Options& o) {
    const auto t = assoc::transpose(load(o.inputs.at(0), o));
    emit(o, [&](std::ostream& out) { assoc::write_triples(out, t); });
    return 0;
}

int cmd_query(const Options& o, const std::optional<assoc::KeyRange>& rows,
              const std::optional<assoc::KeyRange>& cols) {
    const auto s = assoc::select(load(o.inputs.at(0), o), rows, cols);
    emit(o, [&](std::ostream& out) { assoc::write_triples(out, s); });
    return 0;
}

int cmd_pivot(const Options& o, const assoc::PivotSpec& spec) {
    const auto res = assoc::pivot(load(o.inputs.at(0), o), spec);
    emit(o, [&](std::ostream& out) {
        if (o.dense) assoc::write_dense(out, res.table);
        else assoc::write_triples(out, res.table);
    });
    std::cerr << "skipped: " << res.skipped << "\n";
    return 0;
}

int cmd_stats(const Options& o) {
    const auto a = load(o.inputs.at(0), o);
    emit(o, [&](std::ostream& out) {
        out << "rows: " << a.rows().size() << "\ncols: " << a.cols().size()
            << "\nentries: " << a.nnz() << "\nsemiring: " << a.semiring().name << "\n";
    });
    return 0;
}

std::vector<std::string> semiring_choices() {
    return {assoc::semiring_names.begin(), assoc::semiring_names.end()};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Associative-array data wrangling: ingest, combine, query and pivot triple files"};
    app.require_subcommand(1, 1);
    Options o;

    const auto common = [&](CLI::App* sub, std::size_t inputs) {
        sub->add_option("inputs", o.inputs, "Input files ('-' for standard input)")
            ->required()
            ->expected(static_cast<int>(inputs));
        sub->add_option("-o", o.output, "Output path (default: standard output)");
        sub->add_option("--semiring", o.semiring, "Semiring name (re-tags inputs)")
            ->check(CLI::IsMember(semiring_choices()));
    };

    auto* ingest = app.add_subcommand("ingest", "Flatten a JSON or XML document into triples");
    common(ingest, 1);
    ingest->add_option("--format", o.format, "Input format")->check(CLI::IsMember({"json", "xml"}));
    ingest->add_option("--separator", o.separator, "Column path separator");
    ingest->add_option("--array-mode", o.array_mode, "Array encoding")
        ->check(CLI::IsMember({"positional", "value_column"}));
    ingest->add_option("--row-id-field", o.row_id_field, "Field supplying the row key");
    ingest->add_option("--records", o.records, "Path to the record list");

    auto* add = app.add_subcommand("add", "Element-wise addition");
    common(add, 2);
    auto* emul = app.add_subcommand("emul", "Element-wise multiplication");
    common(emul, 2);
    auto* matmul = app.add_subcommand("matmul", "Array multiplication");
    common(matmul, 2);
    auto* transpose = app.add_subcommand("transpose", "Swap rows and columns");
    common(transpose, 1);

    auto* query = app.add_subcommand("query", "Select row and column key ranges");
    common(query, 1);
    query->add_option("--rows", o.rows, "Row key range lo:hi");
    query->add_option("--cols", o.cols, "Column key range lo:hi");
    query->add_flag("--keys-as-text", o.keys_as_text, "Parse range bounds as text keys");

    auto* pivot = app.add_subcommand("pivot", "Build a pivot table");
    common(pivot, 1);
    pivot->add_option("--row-field", o.row_field, "Field for pivot rows")->required();
    pivot->add_option("--col-field", o.col_field, "Field for pivot columns")->required();
    pivot->add_option("--value-field", o.value_field, "Field to aggregate (default: count)");
    pivot->add_option("--agg", o.agg, "Aggregating semiring")
        ->check(CLI::IsMember(semiring_choices()));
    pivot->add_flag("--dense", o.dense, "Write a dense TSV table");
    pivot->add_flag("--keys-as-text", o.keys_as_text, "Treat field names as text keys");

    auto* stats = app.add_subcommand("stats", "Print array dimensions");
    common(stats, 1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : exit_usage;
    }

    try {
        // Flag validation happens before any input is read.
        if (std::count(o.inputs.begin(), o.inputs.end(), "-") > 1)
            throw UsageError("standard input can be used for at most one input");
        std::optional<assoc::KeyRange> rows, cols;
        if (!o.rows.empty()) rows = parse_range(o.rows, o.keys_as_text, "--rows");
        if (!o.cols.empty()) cols = parse_range(o.cols, o.keys_as_text, "--cols");
        for (const auto& r : {rows, cols})
            if (r && r->hi < r->lo)
                throw assoc::error(assoc::errc::empty_range,
                                   "empty-range: " + r->lo.debug_string() + " > " +
                                       r->hi.debug_string());
        assoc::PivotSpec spec;
        if (*pivot) {
            spec.row_field = field_key(o.row_field, o.keys_as_text);
            spec.col_field = field_key(o.col_field, o.keys_as_text);
            if (spec.row_field == spec.col_field)
                throw assoc::error(assoc::errc::degenerate_pivot,
                                   "degenerate pivot: --row-field equals --col-field");
            if (!o.value_field.empty()) spec.value_field = field_key(o.value_field, o.keys_as_text);
            spec.aggregator = assoc::get_semiring(o.agg);
        }
        if (*ingest && o.separator.empty()) throw UsageError("--separator must be non-empty");

        if (*ingest) return cmd_ingest(o);
        if (*add) return cmd_binary(o, assoc::elementwise_add);
        if (*emul) return cmd_binary(o, assoc::elementwise_mul);
        if (*matmul) return cmd_binary(o, assoc::array_multiply);
        if (*transpose) return cmd_transpose(o);
        if (*query) return cmd_query(o, rows, cols);
        if (*pivot) return cmd_pivot(o, spec);
        if (*stats) return cmd_stats(o);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const assoc::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return assoc::is_usage_error(e.code()) ? exit_usage : exit_data;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_data;
    }
    return exit_usage;
}
