// absq: count abelian squares of length 2n over a k-letter alphabet,
// evaluate the asymptotic estimate, and scan/enumerate/sample strings.
//
// Exit codes: 0 success, 1 usage or I/O error, 2 verification mismatch.

#include <absq/asymptotics.hpp>
#include <absq/counting.hpp>
#include <absq/words.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace {

using absq::BigCount;
using json = nlohmann::json;

std::string to_string(const BigCount& v) { return v.str(); }

// One table of named rows. Big integers travel as decimal strings so
// JSON round-trips losslessly.
struct OutputRecord {
    std::string command;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

void emit_json(const OutputRecord& rec, std::ostream& os) {
    json j;
    j["command"] = rec.command;
    j["parameters"] = json::object();
    for (const auto& [key, value] : rec.parameters) j["parameters"][key] = value;
    j["results"] = json::array();
    for (const auto& row : rec.rows) {
        json obj = json::object();
        for (std::size_t i = 0; i < rec.columns.size(); ++i) obj[rec.columns[i]] = row[i];
        j["results"].push_back(std::move(obj));
    }
    os << j.dump(2) << "\n";
}

void emit_csv(const OutputRecord& rec, std::ostream& os) {
    for (std::size_t i = 0; i < rec.columns.size(); ++i)
        os << (i ? "," : "") << rec.columns[i];
    os << "\n";
    for (const auto& row : rec.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
        os << "\n";
    }
}

void emit_plain(const OutputRecord& rec, std::ostream& os) {
    std::vector<std::size_t> width(rec.columns.size());
    for (std::size_t i = 0; i < rec.columns.size(); ++i) width[i] = rec.columns[i].size();
    for (const auto& row : rec.rows)
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    const auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            os << (i ? "  " : "");
            os << cells[i] << std::string(width[i] - cells[i].size(), ' ');
        }
        os << "\n";
    };
    line(rec.columns);
    for (const auto& row : rec.rows) line(row);
}

void emit(const OutputRecord& rec, const std::string& format, std::ostream& os = std::cout) {
    if (format == "json")
        emit_json(rec, os);
    else if (format == "csv")
        emit_csv(rec, os);
    else
        emit_plain(rec, os);
}

std::string letters_to_string(const absq::words::Word& w) {
    std::ostringstream oss;
    const bool compact = w.alphabet.size <= 9;
    bool first = true;
    for (int c : w.symbols) {
        if (!compact && !first) oss << ' ';
        oss << c;
        first = false;
    }
    return oss.str();
}

int cmd_count(int k, std::int64_t n, const std::string& method, bool verify,
              const std::string& format) {
    absq::counting::CountTable table;
    const BigCount value = absq::counting::count(
        k, n, table, absq::counting::method_from_string(method), verify);
    if (format == "plain") {
        std::cout << value.str() << "\n";
        return 0;
    }
    OutputRecord rec{"count",
                     {{"k", std::to_string(k)},
                      {"n", std::to_string(n)},
                      {"method", method},
                      {"verify", verify ? "true" : "false"}},
                     {"k", "n", "value"},
                     {{std::to_string(k), std::to_string(n), value.str()}}};
    emit(rec, format);
    return 0;
}

int cmd_table(int k_max, std::int64_t n_max, const std::string& format) {
    absq::counting::CountTable table;
    OutputRecord rec{"table",
                     {{"k_max", std::to_string(k_max)}, {"n_max", std::to_string(n_max)}},
                     {"k\\n"},
                     {}};
    for (std::int64_t n = 0; n <= n_max; ++n) rec.columns.push_back(std::to_string(n));
    for (int k = 2; k <= k_max; ++k) {
        std::vector<std::string> row{std::to_string(k)};
        for (std::int64_t n = 0; n <= n_max; ++n)
            row.push_back(absq::counting::count_recurrence(k, n, table).str());
        rec.rows.push_back(std::move(row));
    }
    emit(rec, format);
    return 0;
}

// Exact counting stays cheap up to a few thousand; beyond that asym and
// sample report the estimate only.
constexpr std::int64_t kExactFeasibleLimit = 2000;

int cmd_asym(int k, std::int64_t n, bool log_only, const std::string& format) {
    const auto est = absq::asym::log_asymptotic(k, n);
    OutputRecord rec{"asym",
                     {{"k", std::to_string(k)},
                      {"n", std::to_string(n)},
                      {"log", log_only ? "true" : "false"}},
                     {"k", "n", "log_estimate"},
                     {}};
    std::vector<std::string> row{std::to_string(k), std::to_string(n),
                                 std::to_string(est.log)};
    if (!log_only) {
        rec.columns.push_back("estimate");
        row.push_back(std::to_string(est.value()));
    }
    if (n <= kExactFeasibleLimit) {
        absq::counting::CountTable table;
        const BigCount exact = absq::counting::count_recurrence(k, n, table);
        const double ratio = std::exp(absq::log_big(exact) - est.log);
        rec.columns.push_back("exact");
        rec.columns.push_back("ratio");
        row.push_back(exact.str());
        row.push_back(std::to_string(ratio));
    }
    rec.rows.push_back(std::move(row));
    emit(rec, format);
    return 0;
}

int cmd_ratio(int k, const std::vector<std::int64_t>& ns, const std::string& format) {
    absq::counting::CountTable table;
    const auto rows = absq::asym::ratio_report(k, ns, table);
    OutputRecord rec{"ratio",
                     {{"k", std::to_string(k)}},
                     {"n", "exact", "log_estimate", "ratio"},
                     {}};
    for (const auto& r : rows)
        rec.rows.push_back({std::to_string(r.n), r.exact.str(), std::to_string(r.estimate.log),
                            std::to_string(r.ratio)});
    emit(rec, format);
    return 0;
}

int cmd_check(int k_max, std::int64_t n_max, const std::string& format) {
    absq::counting::CountTable table;
    OutputRecord rec{"check",
                     {{"k_max", std::to_string(k_max)}, {"n_max", std::to_string(n_max)}},
                     {"k", "n", "comparison", "value", "status"},
                     {}};
    bool all_ok = true;
    const auto report = [&](int k, std::int64_t n, const std::string& what,
                            const BigCount& reference, const BigCount& other) {
        const bool ok = (reference == other);
        all_ok &= ok;
        rec.rows.push_back({std::to_string(k), std::to_string(n), what, other.str(),
                            ok ? "ok" : "MISMATCH(expected " + reference.str() + ")"});
    };

    for (int k = 1; k <= k_max; ++k) {
        for (std::int64_t n = 0; n <= n_max; ++n) {
            const BigCount ref = absq::counting::count_recurrence(k, n, table);
            report(k, n, "multinomial", ref, absq::counting::count_multinomial(k, n));
            for (int k1 = 1; k1 < k; ++k1)
                report(k, n, "split(" + std::to_string(k1) + "," + std::to_string(k - k1) + ")",
                       ref, absq::counting::count_split(k1, k - k1, n, table));
            if (k == 2) report(k, n, "binary", ref, absq::counting::count_binary(n));
            if (absq::words::state_space_size(k, static_cast<int>(n)) <= (1 << 20))
                report(k, n, "brute_force", ref,
                       absq::words::brute_force_count(k, static_cast<int>(n)));
        }
    }
    emit(rec, format);
    if (!all_ok) {
        std::cerr << "check: at least one comparison failed\n";
        return 2;
    }
    return 0;
}

int cmd_scan(const std::string& path, std::size_t min_len, std::size_t max_len,
             const std::string& format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "scan: cannot read file: " << path << "\n";
        return 1;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    OutputRecord rec{"scan",
                     {{"file", path},
                      {"min_len", std::to_string(min_len)},
                      {"max_len", max_len ? std::to_string(max_len) : "unbounded"}},
                     {"start", "half_length"},
                     {}};
    std::map<std::size_t, std::size_t> histogram;
    if (!text.empty()) {
        const auto w = absq::words::word_from_text(text);
        const auto factors = absq::words::scan_factors(
            w, min_len, max_len ? std::optional<std::size_t>(max_len) : std::nullopt);
        for (const auto& f : factors) {
            rec.rows.push_back({std::to_string(f.start), std::to_string(f.half)});
            ++histogram[f.half];
        }
    }
    emit(rec, format);
    if (format == "plain") {
        std::cout << "\nhistogram (half_length count):\n";
        for (const auto& [half, cnt] : histogram) std::cout << half << " " << cnt << "\n";
    }
    return 0;
}

int cmd_enum(int k, int n, bool force, const std::string& format) {
    OutputRecord rec{"enum",
                     {{"k", std::to_string(k)}, {"n", std::to_string(n)}},
                     {"word"},
                     {}};
    absq::words::for_each_abelian_square(
        k, n, [&](const absq::words::Word& w) { rec.rows.push_back({letters_to_string(w)}); },
        force);
    if (format == "plain") {
        for (const auto& row : rec.rows) std::cout << row[0] << "\n";
        return 0;
    }
    emit(rec, format);
    return 0;
}

int cmd_sample(int k, int n, std::int64_t trials, std::uint64_t seed,
               const std::string& format) {
    const auto res = absq::words::sample_abelian_fraction(k, n, trials, seed);
    OutputRecord rec{"sample",
                     {{"k", std::to_string(k)},
                      {"n", std::to_string(n)},
                      {"trials", std::to_string(trials)},
                      {"seed", std::to_string(seed)}},
                     {"hits", "fraction", "std_error"},
                     {}};
    std::vector<std::string> row{std::to_string(res.hits), std::to_string(res.fraction),
                                 std::to_string(res.std_error)};
    if (n <= kExactFeasibleLimit) {
        absq::counting::CountTable table;
        const BigCount exact = absq::counting::count_recurrence(k, n, table);
        const double p = std::exp(absq::log_big(exact) - 2.0 * n * std::log(double(k)));
        rec.columns.push_back("exact_probability");
        row.push_back(std::to_string(p));
    }
    rec.rows.push_back(std::move(row));
    emit(rec, format);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"abelian square counting, asymptotics, and string utilities"};
    app.require_subcommand(1);

    std::string format = "plain";
    int k = 2;
    std::int64_t n = 0;
    int k_max = 6;
    std::int64_t n_max = 7;
    std::string method = "auto";
    bool verify = false;
    bool log_only = false;
    bool force = false;
    std::string file;
    std::size_t min_len = 1;
    std::size_t max_len = 0;  // 0 = unbounded
    std::int64_t trials = 100000;
    std::uint64_t seed = 1;
    std::vector<std::int64_t> ns;

    const auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"plain", "csv", "json"}));
    };

    auto* count = app.add_subcommand("count", "exact f_k(n)");
    count->add_option("--k", k, "alphabet size")->required();
    count->add_option("--n", n, "half-length")->required();
    count->add_option("--method", method, "formula to use")
        ->check(CLI::IsMember({"auto", "recurrence", "split", "multinomial", "binary"}));
    count->add_flag("--verify", verify, "cross-check with a second formula");
    add_format(count);

    auto* tab = app.add_subcommand("table", "grid of f_k(n), k = 2..k_max, n = 0..n_max");
    tab->add_option("--k-max", k_max, "largest alphabet size");
    tab->add_option("--n-max", n_max, "largest half-length");
    add_format(tab);

    auto* asym = app.add_subcommand("asym", "asymptotic estimate of f_k(n)");
    asym->add_option("--k", k, "alphabet size (>= 2)")->required();
    asym->add_option("--n", n, "half-length")->required();
    asym->add_flag("--log", log_only, "report the log only (never overflows)");
    add_format(asym);

    auto* ratio = app.add_subcommand("ratio", "exact / estimate convergence report");
    ratio->add_option("--k", k, "alphabet size (>= 2)")->required();
    ratio->add_option("--n", ns, "half-lengths (repeatable)")->required();
    add_format(ratio);

    auto* check = app.add_subcommand("check", "cross-formula and brute-force verification");
    check->add_option("--k-max", k_max, "largest alphabet size");
    check->add_option("--n-max", n_max, "largest half-length");
    add_format(check);

    auto* scan = app.add_subcommand("scan", "find abelian-square factors in a file");
    scan->add_option("--file", file, "input file")->required();
    scan->add_option("--min-len", min_len, "smallest half-length to report");
    scan->add_option("--max-len", max_len, "largest half-length (0 = unbounded)");
    add_format(scan);

    auto* enumerate = app.add_subcommand("enum", "list all abelian squares of length 2n");
    enumerate->add_option("--k", k, "alphabet size")->required();
    enumerate->add_option("--n", n, "half-length")->required();
    enumerate->add_flag("--force", force, "override the k^(2n) size guard");
    add_format(enumerate);

    auto* sample = app.add_subcommand("sample", "Monte Carlo abelian-square fraction");
    sample->add_option("--k", k, "alphabet size")->required();
    sample->add_option("--n", n, "half-length")->required();
    sample->add_option("--trials", trials, "number of random strings");
    sample->add_option("--seed", seed, "RNG seed (mt19937_64)");
    add_format(sample);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // usage errors are exit 1
    }

    try {
        if (count->parsed()) return cmd_count(k, n, method, verify, format);
        if (tab->parsed()) return cmd_table(k_max, n_max, format);
        if (asym->parsed()) return cmd_asym(k, n, log_only, format);
        if (ratio->parsed()) return cmd_ratio(k, ns, format);
        if (check->parsed()) return cmd_check(k_max, n_max, format);
        if (scan->parsed()) return cmd_scan(file, min_len, max_len, format);
        if (enumerate->parsed()) return cmd_enum(k, static_cast<int>(n), force, format);
        if (sample->parsed()) return cmd_sample(k, static_cast<int>(n), trials, seed, format);
    } catch (const absq::VerificationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const absq::SizeGuardError& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
