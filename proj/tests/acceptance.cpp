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

// Acceptance gate. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails. Every tolerance and time limit is pinned
// below; seeds are fixed so a run is reproducible.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "assoc/assoc.hpp"
#include "support/oracles.hpp"

namespace fs = std::filesystem;
using assoc::AssociativeArray;
using assoc::Key;
using assoc::KeyRange;
using assoc::Semiring;
using assoc::TripleStream;
using assoc::Value;

namespace {

// Relative tolerance for plus_times; every other semiring compares exactly.
constexpr double float_tol = 1e-9;

double law_tolerance(const Semiring& s) { return s.name == "plus_times" ? float_tol : 0.0; }

/// Thrown by the checks below; carries the first failure.
struct Failure {
    std::string what;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Failure{what};
}

std::string bytes_of(const AssociativeArray& a) {
    std::ostringstream s;
    assoc::write_triples(s, a);
    return s.str();
}

// ---------------------------------------------------------------------------

void axioms() {
    for (auto name : assoc::semiring_names) {
        const auto& s = assoc::get_semiring(name);
        const auto report = assoc::check_axioms(s, oracle::axiom_samples(std::string(name)));
        require(report.ok(), std::string(name) + ": " + std::to_string(report.violations.size()) +
                                 " violated law(s), first " +
                                 (report.ok() ? "" : report.violations.front().law));
        require(s.tolerance == law_tolerance(s), std::string(name) + ": unexpected tolerance");
    }
}

void algebraic_laws() {
    oracle::Rng rng(2001);
    for (auto name : assoc::semiring_names) {
        const auto& s = assoc::get_semiring(name);
        const double tol = law_tolerance(s);
        for (int round = 0; round < 100; ++round) {
            const auto keys = oracle::universe(std::size_t(oracle::uniform_int(rng, 1, 10)));
            const double density = std::uniform_real_distribution<double>(0.05, 0.5)(rng);
            const auto a = oracle::random_array(s, rng, keys, keys, density);
            const auto b = oracle::random_array(s, rng, keys, keys, density);
            const auto c = oracle::random_array(s, rng, keys, keys, density);
            using namespace assoc;
            const auto tag = std::string(name) + " round " + std::to_string(round) + ": ";
            require(equal_within(elementwise_add(a, b), elementwise_add(b, a), tol),
                    tag + "add commutativity");
            require(equal_within(elementwise_add(a, elementwise_add(b, c)),
                                 elementwise_add(elementwise_add(a, b), c), tol),
                    tag + "add associativity");
            require(equal_within(array_multiply(a, array_multiply(b, c)),
                                 array_multiply(array_multiply(a, b), c), tol),
                    tag + "matmul associativity");
            require(equal_within(array_multiply(a, elementwise_add(b, c)),
                                 elementwise_add(array_multiply(a, b), array_multiply(a, c)), tol),
                    tag + "left distributivity");
            require(equal_within(array_multiply(elementwise_add(a, b), c),
                                 elementwise_add(array_multiply(a, c), array_multiply(b, c)), tol),
                    tag + "right distributivity");
            require(equal_within(transpose(array_multiply(a, b)),
                                 array_multiply(transpose(b), transpose(a)), tol),
                    tag + "transpose law");
        }
    }
}

void dense_oracle() {
    oracle::Rng rng(3003);
    for (auto name : assoc::semiring_names) {
        const auto& s = assoc::get_semiring(name);
        const double tol = law_tolerance(s);
        for (int round = 0; round < 100; ++round) {
            const auto rows = oracle::universe(std::size_t(oracle::uniform_int(rng, 1, 10)));
            const auto cols = oracle::universe(std::size_t(oracle::uniform_int(rng, 1, 10)));
            const auto tag = std::string(name) + " round " + std::to_string(round) + ": ";

            // Streams with repeated coordinates exercise the aggregating fold.
            const auto stream = oracle::random_triples(
                s, rng, std::size_t(oracle::uniform_int(rng, 0, 60)), rows, cols);
            const auto built = assoc::construct(stream, s);
            auto m = oracle::mismatch(built, oracle::dense_construct(stream, s, rows, cols), tol);
            require(m.empty(), tag + "construct " + m);

            const auto a = oracle::random_array(s, rng, rows, cols, 0.5);
            const auto b = oracle::random_array(s, rng, rows, cols, 0.5);
            const auto da = oracle::densify(a, rows, cols);
            const auto db = oracle::densify(b, rows, cols);
            m = oracle::mismatch(assoc::elementwise_add(a, b), oracle::dense_add(da, db), tol);
            require(m.empty(), tag + "elementwise_add " + m);
            m = oracle::mismatch(assoc::elementwise_mul(a, b), oracle::dense_mul(da, db), tol);
            require(m.empty(), tag + "elementwise_mul " + m);

            const auto inner = oracle::universe(std::size_t(oracle::uniform_int(rng, 1, 10)));
            const auto l = oracle::random_array(s, rng, rows, inner, 0.5);
            const auto r = oracle::random_array(s, rng, inner, cols, 0.5);
            m = oracle::mismatch(assoc::array_multiply(l, r),
                                 oracle::dense_matmul(oracle::densify(l, rows, inner),
                                                      oracle::densify(r, inner, cols)),
                                 tol);
            require(m.empty(), tag + "array_multiply " + m);

            const auto pick = [&](const assoc::KeySet& ks) -> std::optional<KeyRange> {
                if (oracle::chance(rng, 0.2)) return std::nullopt;
                auto i = std::size_t(oracle::uniform_int(rng, 0, int(ks.size()) - 1));
                auto j = std::size_t(oracle::uniform_int(rng, 0, int(ks.size()) - 1));
                if (i > j) std::swap(i, j);
                return KeyRange{ks[i], ks[j]};
            };
            const auto rr = pick(rows);
            const auto cr = pick(cols);
            m = oracle::mismatch(assoc::select(a, rr, cr), oracle::dense_select(da, rr, cr), tol);
            require(m.empty(), tag + "select " + m);
        }
    }
}

void min_plus_paths() {
    oracle::Rng rng(4004);
    const auto& mp = assoc::get_semiring("min_plus");
    constexpr int n = 6;
    for (int g = 0; g < 20; ++g) {
        // Random weighted digraph; node i reaches itself at cost 0.
        std::vector<std::vector<double>> w(n, std::vector<double>(n, oracle::inf));
        TripleStream t;
        for (int i = 0; i < n; ++i) {
            w[i][i] = 0;
            t.push_back({Key(i), Key(i), Value::number(0)});
            for (int j = 0; j < n; ++j)
                if (i != j && oracle::chance(rng, 0.4)) {
                    w[i][j] = oracle::uniform_int(rng, 1, 20);
                    t.push_back({Key(i), Key(j), Value::number(w[i][j])});
                }
        }
        const auto adj = assoc::construct(t, mp);
        const auto sq = assoc::array_multiply(adj, adj);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double best = oracle::inf;
                for (int k = 0; k < n; ++k) best = std::min(best, w[i][k] + w[k][j]);
                require(sq.lookup(Key(i), Key(j)) == Value::number(best),
                        "graph " + std::to_string(g) + ": distance " + std::to_string(i) + "->" +
                            std::to_string(j));
            }
    }
}

// Scalar leaf values of a generated tree, gathered without any path logic.
void json_leaf_values(const oracle::GenJson& g, std::vector<Value>& out) {
    using K = oracle::GenJson::Kind;
    switch (g.kind) {
    case K::object:
        for (const auto& f : g.fields) json_leaf_values(f.second, out);
        break;
    case K::array:
        for (const auto& i : g.items) json_leaf_values(i, out);
        break;
    case K::text: out.push_back(Value::text(g.text)); break;
    case K::number: out.push_back(Value::number(g.number)); break;
    case K::boolean: out.push_back(Value::text(g.boolean ? "true" : "false")); break;
    case K::null: break;
    }
}

void xml_leaf_values(const oracle::GenXml& g, std::vector<Value>& out) {
    for (const auto& a : g.attrs) out.push_back(Value::text(a.second));
    if (!g.text.empty()) out.push_back(Value::text(g.text));
    for (const auto& c : g.children) xml_leaf_values(c, out);
}

/// Sorted multiset of values, keyed by their debug rendering.
std::vector<std::string> multiset(const std::vector<Value>& vs) {
    std::vector<std::string> out;
    for (const auto& v : vs) out.push_back(v.debug_string());
    std::sort(out.begin(), out.end());
    return out;
}

void check_lossless(const TripleStream& got, const std::vector<Value>& leaves, const std::string& tag) {
    std::vector<Value> values;
    std::set<std::pair<Key, Key>> coords;
    for (const auto& t : got) {
        values.push_back(t.value);
        coords.insert({t.row, t.col});
    }
    require(coords.size() == got.size(), tag + "positional coordinates collide");
    require(multiset(values) == multiset(leaves), tag + "leaf multiset differs");
}

void flattening() {
    oracle::Rng rng(5005);
    assoc::DenormConfig vc;
    vc.array_mode = assoc::ArrayMode::value_column;
    for (int doc = 0; doc < 50; ++doc) {
        const auto tag = "document " + std::to_string(doc) + ": ";

        // Root array of records plus up to four nested levels.
        std::vector<oracle::GenJson> records;
        const int nrec = oracle::uniform_int(rng, 1, 6);
        for (int i = 0; i < nrec; ++i) records.push_back(oracle::gen_json_record(rng, 4));
        std::string text = "[";
        for (std::size_t i = 0; i < records.size(); ++i)
            text += (i ? "," : "") + oracle::to_json_text(records[i]);
        text += "]";
        const auto jdoc = assoc::parse_json(text);
        const auto jpos = assoc::flatten_json(jdoc);
        require(jpos == oracle::expected_json(records, false), tag + "json positional");
        require(assoc::flatten_json(jdoc, vc) == oracle::expected_json(records, true),
                tag + "json value_column");
        std::vector<Value> leaves;
        for (const auto& r : records) json_leaf_values(r, leaves);
        check_lossless(jpos, leaves, tag + "json ");

        oracle::GenXml root = oracle::gen_xml(rng, 4, "root");
        root.attrs.clear();
        root.text.clear();
        if (root.children.empty()) root.children.push_back(oracle::gen_xml(rng, 3, "item"));
        const auto xdoc = assoc::parse_xml(oracle::to_xml_text(root));
        const auto xpos = assoc::flatten_xml(xdoc);
        require(xpos == oracle::expected_xml(root, false), tag + "xml positional");
        require(assoc::flatten_xml(xdoc, vc) == oracle::expected_xml(root, true),
                tag + "xml value_column");
        leaves.clear();
        for (const auto& c : root.children) xml_leaf_values(c, leaves);
        check_lossless(xpos, leaves, tag + "xml ");
    }
}

void pivots() {
    oracle::Rng rng(6006);
    const auto& ui = assoc::get_semiring("union_intersection");
    const auto recs = oracle::random_records(rng, 200, 0.0);
    const auto table = assoc::construct(oracle::record_triples(recs), ui);

    const struct {
        const char* agg;
        oracle::Fold fold;
        bool count;
    } cases[] = {{"plus_times", oracle::Fold::count, true},
                 {"plus_times", oracle::Fold::sum, false},
                 {"max_plus", oracle::Fold::max, false}};
    for (const auto& c : cases) {
        const auto& agg = assoc::get_semiring(c.agg);
        const assoc::PivotSpec spec{Key("city"), Key("kind"),
                                    c.count ? std::nullopt : std::optional<Key>(Key("amt")), agg};
        const auto res = assoc::pivot(table, spec);
        const auto want = oracle::group_by(recs, c.fold);
        TripleStream wt;
        for (const auto& [k, v] : want) wt.push_back({Key(k.first), Key(k.second), Value::number(v)});
        const auto expected = assoc::construct(wt, agg);
        require(assoc::equal_within(res.table, expected, law_tolerance(agg)),
                std::string(c.agg) + (c.count ? " count" : " value") + " pivot differs from group-by");
        require(res.skipped == 0, "complete table reported skips");
    }

    for (int round = 0; round < 10; ++round) {
        const auto ragged = oracle::random_records(rng, 200, 0.1);
        const auto t = assoc::construct(oracle::record_triples(ragged), ui);
        const auto res = assoc::pivot(t, {Key("city"), Key("kind"), std::nullopt,
                                          assoc::get_semiring("plus_times")});
        double total = 0;
        res.table.for_each([&](const Key&, const Key&, const Value& v) { total += v.as_number(); });
        require(total + double(res.skipped) == double(t.rows().size()),
                "conservation broken in round " + std::to_string(round));
        require(res.skipped > 0, "ragged table produced no skips");
    }
}

void co_occurrence() {
    oracle::Rng rng(7007);
    const auto& pt = assoc::get_semiring("plus_times");
    for (int round = 0; round < 20; ++round) {
        std::vector<std::set<std::string>> recs(100);
        TripleStream t;
        for (std::size_t r = 0; r < recs.size(); ++r)
            for (int f = 0; f < 10; ++f)
                if (oracle::chance(rng, 0.3)) {
                    recs[r].insert("f" + std::to_string(f));
                    t.push_back({Key(double(r + 1)), Key("f" + std::to_string(f)), Value::number(1)});
                }
        const auto co = assoc::co_occurrence(assoc::construct(t, pt));
        const auto want = oracle::pair_counts(recs);
        require(co.nnz() == want.size(), "entry count differs from pair counts");
        for (const auto& [k, v] : want)
            require(co.lookup(Key(k.first), Key(k.second)) == Value::number(v),
                    "count for (" + k.first + ", " + k.second + ")");
        require(assoc::equal_within(co, assoc::transpose(co), 0), "not symmetric");
    }
}

void io_round_trip() {
    oracle::Rng rng(8008);
    const assoc::KeySet hostile{"tab\tkey", "nl\nkey", "bs\\key", "#lead", "{brace", "plain", "-"};
    const assoc::KeySet lookalike{"1", "2.5", "-3", "1e3", "inf", "-inf", "007"};
    bool saw_pos_inf = false, saw_neg_inf = false, saw_keys_text = false, saw_protected = false;
    for (auto name : assoc::semiring_names) {
        const auto& s = assoc::get_semiring(name);
        for (int round = 0; round < 100; ++round) {
            const auto tag = std::string(name) + " round " + std::to_string(round) + ": ";
            // Even rounds: text-only keys, so numeric-lookalikes use the text
            // header. Odd rounds: mixed keys, where they need escaping.
            assoc::KeySet keys(hostile);
            keys.insert(keys.end(), lookalike.begin(), lookalike.end());
            if (round % 2) {
                const auto u = oracle::universe(6);
                keys.insert(keys.end(), u.begin(), u.end());
            }
            std::sort(keys.begin(), keys.end());
            const auto a = oracle::random_array(s, rng, keys, keys, 0.15);
            a.for_each([&](const Key&, const Key&, const Value& v) {
                if (v.is_number() && v.as_number() == oracle::inf) saw_pos_inf = true;
                if (v.is_number() && v.as_number() == -oracle::inf) saw_neg_inf = true;
            });

            const auto bytes = bytes_of(a);
            saw_keys_text |= bytes.find("\n#keys text\n") != std::string::npos;
            saw_protected |= bytes.find("\n\\1\t") != std::string::npos ||
                             bytes.find("\t\\1\t") != std::string::npos;
            std::istringstream in(bytes);
            const auto back = assoc::read_array(in);
            require(assoc::equal_within(back, a, 0), tag + "round trip differs");
            require(bytes_of(back) == bytes, tag + "rewrite changes bytes");

            // Same content from a shuffled stream serializes identically.
            auto t = assoc::to_triples(a);
            std::shuffle(t.begin(), t.end(), rng);
            require(bytes_of(assoc::construct(t, s)) == bytes, tag + "bytes depend on input order");
        }
    }
    require(saw_pos_inf && saw_neg_inf, "no infinite values were exercised");
    require(saw_keys_text, "text key header never emitted");
    require(saw_protected, "numeric-lookalike key escaping never exercised");
}

// ---------------------------------------------------------------------------
// CLI end to end

int run_cli(const fs::path& dir, const std::string& args) {
    const std::string cmd = "cd '" + dir.string() + "' && '" AAWRANGLE_BIN "' " + args;
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string catalog(std::size_t n, oracle::Rng& rng) {
    static const char* publishers[] = {"Small Business Administration", "Dept. of Energy",
                                       "NASA", "Census Bureau", "NOAA", "a/b office"};
    static const char* access[] = {"public", "restricted public", "non-public"};
    static const char* keywords[] = {"loans", "grants", "climate", "ai", "space", "jobs"};
    std::string out = "[\n";
    for (std::size_t i = 0; i < n; ++i) {
        out += i ? ",\n{" : "{";
        out += "\"title\": \"dataset " + std::to_string(i) + "\"";
        if (!oracle::chance(rng, 0.05))
            out += ", \"publisher\": {\"name\": " +
                   oracle::json_quote(publishers[oracle::uniform_int(rng, 0, 5)]) + "}";
        if (!oracle::chance(rng, 0.05))
            out += ", \"accessLevel\": \"" + std::string(access[oracle::uniform_int(rng, 0, 2)]) + "\"";
        out += ", \"keyword\": [";
        const int nk = oracle::uniform_int(rng, 0, 3);
        for (int k = 0; k < nk; ++k)
            out += std::string(k ? ", " : "") + "\"" + keywords[oracle::uniform_int(rng, 0, 5)] + "\"";
        out += "], \"modified\": " + std::to_string(oracle::uniform_int(rng, 2010, 2024));
        out += ", \"distribution\": [{\"format\": \"csv\", \"bytes\": " +
               std::to_string(oracle::uniform_int(rng, 1, 1 << 20)) + "}]";
        out += ", \"spatial\": null, \"open\": " + std::string(oracle::chance(rng, 0.5) ? "true" : "false");
        out += "}";
    }
    return out + "\n]\n";
}

double cli_seconds = 0;

void cli_end_to_end() {
    const fs::path dir = fs::temp_directory_path() / ("aawrangle_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    struct Cleanup {
        fs::path p;
        ~Cleanup() { fs::remove_all(p); }
    } cleanup{dir};

    oracle::Rng rng(9009);
    const auto text = catalog(10000, rng);
    std::ofstream(dir / "catalog.json", std::ios::binary) << text;

    const std::string rows = "1:7500";
    const std::string cols = "accessLevel:publisher/name";
    const auto t0 = std::chrono::steady_clock::now();
    const int rc1 = run_cli(dir, "ingest --semiring union_intersection catalog.json -o t.tsv 2> ingest.err");
    const int rc2 = run_cli(dir, "query --rows " + rows + " --cols " + cols + " t.tsv -o q.tsv");
    const int rc3 = run_cli(dir, "pivot q.tsv --row-field publisher/name --col-field accessLevel "
                                 "--dense -o p.tsv 2> pivot.err");
    cli_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    require(rc1 == 0 && rc2 == 0 && rc3 == 0, "pipeline exit codes " + std::to_string(rc1) + "," +
                                                   std::to_string(rc2) + "," + std::to_string(rc3));

    // The same pipeline in process.
    const auto& ui = assoc::get_semiring("union_intersection");
    std::size_t nrec = 0;
    const auto triples = assoc::flatten_json(assoc::parse_json(text), {}, nrec);
    require(nrec == 10000, "record count");
    std::ostringstream ingested;
    assoc::write_triples(ingested, ui.name, triples);
    const auto table = assoc::construct(triples, ui);
    const auto q = assoc::select(table, KeyRange{Key(1), Key(7500)},
                                 KeyRange{Key("accessLevel"), Key("publisher/name")});
    const auto res = assoc::pivot(q, {Key("publisher/name"), Key("accessLevel"), std::nullopt,
                                      assoc::get_semiring("plus_times")});
    std::ostringstream want;
    assoc::write_dense(want, res.table);

    require(slurp(dir / "t.tsv") == ingested.str(), "ingest output differs from library");
    require(slurp(dir / "q.tsv") == bytes_of(q), "query output differs from library");
    require(slurp(dir / "p.tsv") == want.str(), "dense pivot differs from library");
    require(slurp(dir / "pivot.err").find("skipped: " + std::to_string(res.skipped) + "\n") !=
                std::string::npos,
            "skip tally");
    require(res.skipped > 0 && res.table.nnz() > 0, "pivot is degenerate");

    // Exit-code contract.
    std::ofstream(dir / "bad.json") << "[{\"a\": 1,, }]";
    std::ofstream(dir / "bad.tsv") << "#aa-triples v1\n#semiring plus_times\nr\tc\n";
    require(run_cli(dir, "ingest bad.json > /dev/null 2>&1") == 2, "malformed JSON exit code");
    require(run_cli(dir, "stats bad.tsv > /dev/null 2>&1") == 2, "malformed triples exit code");
    require(run_cli(dir, "query --rows 9:1 t.tsv > /dev/null 2>&1") == 1, "inverted range exit code");
    require(run_cli(dir, "pivot t.tsv --row-field x > /dev/null 2>&1") == 1, "missing flag exit code");
    require(run_cli(dir, "ingest --format yaml catalog.json > /dev/null 2>&1") == 1,
            "bad flag value exit code");
}

void determinism() {
    oracle::Rng rng(10010);
    const auto& pt = assoc::get_semiring("plus_times");
    const auto keys = oracle::universe(100);
    const auto a = oracle::random_array(pt, rng, keys, keys, 0.1);
    const auto b = oracle::random_array(pt, rng, keys, keys, 0.1);
    require(a.nnz() >= 900 && b.nnz() >= 900, "instance too small");

    const auto bits = [](const AssociativeArray& c) {
        std::vector<std::uint64_t> out;
        for (const auto& t : assoc::to_triples(c)) out.push_back(std::bit_cast<std::uint64_t>(t.value.as_number()));
        return out;
    };
    const auto first = assoc::array_multiply(a, b);
    const auto first_bits = bits(first);
    const auto first_bytes = bytes_of(first);
    for (int run = 1; run < 5; ++run) {
        // Rebuild the operands from shuffled streams each run.
        auto ta = assoc::to_triples(a);
        auto tb = assoc::to_triples(b);
        std::shuffle(ta.begin(), ta.end(), rng);
        std::shuffle(tb.begin(), tb.end(), rng);
        const auto c = assoc::array_multiply(assoc::construct(ta, pt), assoc::construct(tb, pt));
        require(c.rows() == first.rows() && c.cols() == first.cols(), "key sets differ on run " + std::to_string(run));
        require(bits(c) == first_bits, "values differ bitwise on run " + std::to_string(run));
        require(bytes_of(c) == first_bytes, "serialized bytes differ on run " + std::to_string(run));
    }
}

struct Criterion {
    int id;
    const char* name;
    double limit_s; // 0 means no time limit
    std::function<void()> check;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "semiring axioms", 1, axioms},
        {2, "algebraic laws on random arrays", 30, algebraic_laws},
        {3, "dense oracle equivalence", 30, dense_oracle},
        {4, "min-plus two-hop distances", 1, min_plus_paths},
        {5, "flattening oracle and losslessness", 5, flattening},
        {6, "pivot oracle and record conservation", 5, pivots},
        {7, "co-occurrence oracle and symmetry", 5, co_occurrence},
        {8, "triple file round trip", 10, io_round_trip},
        {9, "command line end to end", 0, cli_end_to_end},
        {10, "matmul determinism", 0, determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        std::string why;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.check();
        } catch (const Failure& f) {
            why = f.what;
        } catch (const std::exception& e) {
            why = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        double limit = c.limit_s;
        if (c.id == 9) {
            // Only the three pipeline invocations are timed.
            secs = cli_seconds;
            limit = 10;
        }
        if (why.empty() && limit > 0 && secs >= limit) why = "time limit exceeded";
        char timing[64];
        if (limit > 0) std::snprintf(timing, sizeof timing, "%.3f s (limit %g s)", secs, limit);
        else std::snprintf(timing, sizeof timing, "%.3f s", secs);
        std::cout << (why.empty() ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.name << "  "
                  << timing;
        if (!why.empty()) std::cout << "  -- " << why;
        std::cout << '\n';
        failed += !why.empty();
    }
    std::cout << (criteria.size() - std::size_t(failed)) << "/" << criteria.size() << " criteria passed\n";
    return failed ? 1 : 0;
}
