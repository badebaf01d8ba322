// dollo: decide Dollo-1 (persistent perfect) phylogeny existence for binary
// species/character matrices, certify the answer, and build the tree.
//
// Exit codes: 0 reducible / success, 1 not reducible / disagreement,
// 2 input or usage error, 3 search budget exceeded.
// Standard output carries only the documented payloads (JSON / CSV / DOT /
// table); everything diagnostic goes to standard error.

#include <dollo/json_io.hpp>
#include <dollo/oracle.hpp>
#include <dollo/recognize.hpp>
#include <dollo/tree.hpp>

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

constexpr int kExitReducible = 0;
constexpr int kExitNotReducible = 1;
constexpr int kExitInputError = 2;
constexpr int kExitBudget = 3;

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

dollo::BinaryMatrix load_matrix(const std::string& path) {
    return dollo::parse_matrix_csv(read_input(path));
}

struct Range {
    std::size_t lo = 0, hi = 0;
};

Range parse_range(const std::string& text) {
    auto sep = text.find("..");
    if (sep == std::string::npos)
        throw CLI::ValidationError("range must look like A..B, got '" + text + "'");
    Range r;
    try {
        r.lo = std::stoul(text.substr(0, sep));
        r.hi = std::stoul(text.substr(sep + 2));
    } catch (const std::exception&) {
        throw CLI::ValidationError("range bounds must be integers: '" + text + "'");
    }
    if (r.lo == 0 || r.hi < r.lo)
        throw CLI::ValidationError("range must satisfy 1 <= A <= B: '" + text + "'");
    return r;
}

std::vector<double> parse_densities(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw CLI::ValidationError("bad density '" + item + "'");
        }
        if (out.back() <= 0.0 || out.back() >= 1.0)
            throw CLI::ValidationError("densities must lie strictly in (0,1)");
    }
    if (out.empty()) throw CLI::ValidationError("empty density list");
    return out;
}

const char* verdict_name(dollo::OracleResult::Verdict v) {
    switch (v) {
        case dollo::OracleResult::Verdict::Reducible: return "reducible";
        case dollo::OracleResult::Verdict::NotReducible: return "not_reducible";
        default: return "budget_exceeded";
    }
}

// ---------------------------------------------------------------------------
// check / reduce / tree

int cmd_check(const std::string& input, const std::string& format,
              bool reduction_only) {
    dollo::BinaryMatrix mat = load_matrix(input);
    dollo::RecognitionOutcome outcome = dollo::find_reduction(mat);
    dollo::RedBlackGraph g = dollo::build_graph(mat);
    if (reduction_only) {
        if (!outcome.reducible) {
            std::cerr << "not reducible; run `check` for the refutation\n";
            return kExitNotReducible;
        }
        std::cout << dollo::reduction_to_json(g, outcome.reduction, outcome.events)
                         .dump(2)
                  << "\n";
        return kExitReducible;
    }
    if (format == "table")
        std::cout << dollo::explain(mat, outcome);
    else
        std::cout << dollo::outcome_to_json(g, outcome).dump(2) << "\n";
    return outcome.reducible ? kExitReducible : kExitNotReducible;
}

int cmd_tree(const std::string& input, const std::string& format) {
    dollo::BinaryMatrix mat = load_matrix(input);
    dollo::RecognitionOutcome outcome = dollo::find_reduction(mat);
    if (!outcome.reducible) {
        std::cerr << "not reducible: no Dollo-1 phylogeny exists for this input\n";
        return kExitNotReducible;
    }
    dollo::PhyloTree tree = dollo::build_tree(mat, outcome.reduction);
    if (format == "dot")
        std::cout << dollo::export_dot(tree);
    else
        std::cout << dollo::tree_to_json(tree).dump(2) << "\n";
    return kExitReducible;
}

// ---------------------------------------------------------------------------
// oracle: single-instance brute force, or recognizer/oracle agreement sweep

int oracle_single(const std::string& input, std::uint64_t budget) {
    dollo::BinaryMatrix mat = load_matrix(input);
    dollo::RedBlackGraph g = dollo::build_graph(mat);
    dollo::OracleResult res = dollo::brute_force_reduction(g, budget);
    dollo::ordered_json out;
    out["verdict"] = verdict_name(res.verdict);
    out["order"] = res.verdict == dollo::OracleResult::Verdict::Reducible
                       ? dollo::detail::labels_of(g.char_labels, res.order)
                       : dollo::ordered_json(nullptr);
    out["nodes"] = res.nodes;
    std::cout << out.dump(2) << "\n";
    switch (res.verdict) {
        case dollo::OracleResult::Verdict::Reducible: return kExitReducible;
        case dollo::OracleResult::Verdict::NotReducible: return kExitNotReducible;
        default: return kExitBudget;
    }
}

struct AgreementRow {
    std::size_t n = 0, m = 0;
    bool recognizer_reducible = false;
    dollo::OracleResult::Verdict oracle = dollo::OracleResult::Verdict::NotReducible;
};

AgreementRow judge(const dollo::BinaryMatrix& mat, std::uint64_t budget) {
    AgreementRow row;
    row.n = mat.n();
    row.m = mat.m();
    row.recognizer_reducible = dollo::find_reduction(mat).reducible;
    row.oracle = dollo::brute_force_reduction(dollo::build_graph(mat), budget).verdict;
    return row;
}

int oracle_sweep(const std::vector<dollo::BinaryMatrix>& instances,
                 std::uint64_t budget, std::size_t workers) {
    std::vector<AgreementRow> rows(instances.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < instances.size(); ++i)
            rows[i] = judge(instances[i], budget);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < instances.size(); i = next++)
                    rows[i] = judge(instances[i], budget);
            });
        for (std::thread& t : pool) t.join();
    }

    std::size_t agree = 0, disagree = 0, inconclusive = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const AgreementRow& r = rows[i];
        dollo::ordered_json rec;
        rec["id"] = i;
        rec["n"] = r.n;
        rec["m"] = r.m;
        rec["recognizer"] = r.recognizer_reducible ? "reducible" : "not_reducible";
        rec["oracle"] = verdict_name(r.oracle);
        if (r.oracle == dollo::OracleResult::Verdict::BudgetExceeded) {
            rec["agree"] = nullptr;  // inconclusive: the oracle gave up
            ++inconclusive;
        } else {
            bool ok = r.recognizer_reducible
                      == (r.oracle == dollo::OracleResult::Verdict::Reducible);
            rec["agree"] = ok;
            ok ? ++agree : ++disagree;
        }
        std::cout << rec.dump() << "\n";
    }
    dollo::ordered_json summary;
    summary["summary"] = true;
    summary["total"] = rows.size();
    summary["agree"] = agree;
    summary["disagree"] = disagree;
    summary["inconclusive"] = inconclusive;
    std::cout << summary.dump() << "\n";
    return disagree == 0 ? kExitReducible : kExitNotReducible;
}

std::vector<dollo::BinaryMatrix> exhaustive_instances(Range nr, Range mr) {
    if (nr.hi * mr.hi > 36)
        throw std::runtime_error(
            "exhaustive enumeration is guarded to n*m <= 36; got "
            + std::to_string(nr.hi) + "x" + std::to_string(mr.hi));
    std::vector<dollo::BinaryMatrix> out;
    for (std::size_t n = nr.lo; n <= nr.hi; ++n)
        for (std::size_t m = mr.lo; m <= mr.hi; ++m)
            dollo::enumerate_exhaustive(
                n, m, [&](const std::vector<std::uint32_t>& rows) {
                    out.push_back(dollo::matrix_from_masks(rows, m));
                });
    return out;
}

std::vector<dollo::BinaryMatrix> random_instances(Range nr, Range mr,
                                                  std::size_t count,
                                                  std::uint64_t seed,
                                                  const std::vector<double>& densities) {
    std::mt19937_64 rng(seed);
    std::vector<dollo::BinaryMatrix> out;
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(dollo::random_instance(rng, nr.lo, nr.hi, mr.lo, mr.hi,
                                             densities[i % densities.size()]));
    return out;
}

// ---------------------------------------------------------------------------
// gen: write instance families to disk

int cmd_gen(const std::string& mode, const std::string& out_dir, Range nr,
            Range mr, std::size_t count, std::uint64_t seed,
            const std::vector<double>& densities) {
    std::vector<dollo::BinaryMatrix> instances =
        mode == "exhaustive" ? exhaustive_instances(nr, mr)
                             : random_instances(nr, mr, count, seed, densities);
    std::filesystem::create_directories(out_dir);
    for (std::size_t i = 0; i < instances.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "%05zu.csv", i);
        std::ofstream out(std::filesystem::path(out_dir) / name,
                          std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write to " + out_dir);
        out << dollo::to_csv(instances[i]);
    }
    std::cerr << "wrote " << instances.size() << " instances to " << out_dir << "\n";
    return kExitReducible;
}

// ---------------------------------------------------------------------------
// bench: size ladder over a structured reducible family

// Interval-style instance with m characters and n = 2m species: one species
// per character, one per consecutive character pair, and one triple to keep
// the matrix maximal and connected.
dollo::BinaryMatrix interval_instance(std::size_t m) {
    if (m < 3) throw std::invalid_argument("bench ladder needs n >= 6");
    std::vector<std::string> rows;
    for (std::size_t i = 0; i < m; ++i) {
        std::string r(m, '0');
        r[i] = '1';
        rows.push_back(r);
    }
    for (std::size_t i = 0; i + 1 < m; ++i) {
        std::string r(m, '0');
        r[i] = r[i + 1] = '1';
        rows.push_back(r);
    }
    std::string extra(m, '0');
    extra[0] = extra[1] = extra[2] = '1';
    rows.push_back(extra);
    return dollo::make_matrix(rows);
}

int cmd_bench(const std::vector<std::size_t>& ladder) {
    std::cout << "n,m,seconds\n";
    for (std::size_t n : ladder) {
        std::size_t m = n / 2;
        dollo::BinaryMatrix mat = interval_instance(m);
        auto t0 = std::chrono::steady_clock::now();
        dollo::RecognitionOutcome outcome = dollo::find_reduction(mat);
        auto t1 = std::chrono::steady_clock::now();
        if (!outcome.reducible) {
            std::cerr << "bench instance n=" << n << " unexpectedly not reducible\n";
            return kExitNotReducible;
        }
        double secs = std::chrono::duration<double>(t1 - t0).count();
        char row[96];
        std::snprintf(row, sizeof row, "%zu,%zu,%.6f\n", mat.n(), mat.m(), secs);
        std::cout << row;
        std::cerr << "bench n=" << mat.n() << " m=" << mat.m() << ": " << secs
                  << " s\n";
    }
    return kExitReducible;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dollo-1 persistent phylogeny recognizer and tree builder"};
    app.require_subcommand(1);

    std::string input = "-";
    std::string format = "json";
    std::string mode;
    std::string out_dir;
    std::string n_range_text = "2..9", m_range_text = "2..7";
    std::string densities_text = "0.3,0.5,0.7";
    std::uint64_t seed = 1;
    std::uint64_t budget = 10'000'000;
    std::size_t workers = 1;
    std::size_t count = 10'000;
    std::vector<std::size_t> ladder{50, 100, 200, 400};

    CLI::App* check = app.add_subcommand(
        "check", "Decide reducibility; emit outcome JSON or a trace table");
    check->add_option("--input", input, "matrix CSV path, or - for stdin");
    check->add_option("--format", format, "json|table")
        ->check(CLI::IsMember({"json", "table"}));

    CLI::App* reduce = app.add_subcommand(
        "reduce", "Emit the certified reduction JSON for a reducible input");
    reduce->add_option("--input", input, "matrix CSV path, or - for stdin");
    reduce->add_option("--format", format, "json")
        ->check(CLI::IsMember({"json"}));

    CLI::App* tree = app.add_subcommand(
        "tree", "Build the Dollo-1 phylogeny; emit JSON or DOT");
    tree->add_option("--input", input, "matrix CSV path, or - for stdin");
    tree->add_option("--format", format, "json|dot")
        ->check(CLI::IsMember({"json", "dot"}));

    CLI::App* oracle = app.add_subcommand(
        "oracle", "Brute-force one instance, or sweep an instance family and "
                  "report recognizer/oracle agreement as JSON lines");
    oracle->add_option("--input", input, "single instance: matrix CSV path or -");
    oracle->add_option("--mode", mode, "sweep: exhaustive|random")
        ->check(CLI::IsMember({"exhaustive", "random"}));
    oracle->add_option("--budget", budget, "search-node budget per instance");
    oracle->add_option("--workers", workers, "worker threads for sweeps")
        ->check(CLI::Range(std::size_t{1}, std::size_t{256}));
    oracle->add_option("--n-range", n_range_text, "species range A..B");
    oracle->add_option("--m-range", m_range_text, "character range A..B");
    oracle->add_option("--count", count, "random sweep: number of instances");
    oracle->add_option("--seed", seed, "random sweep: RNG seed");
    oracle->add_option("--densities", densities_text,
                       "random sweep: comma-separated cell densities");

    CLI::App* gen = app.add_subcommand(
        "gen", "Write an instance family to a directory as CSV files");
    gen->add_option("--mode", mode, "exhaustive|random")
        ->required()
        ->check(CLI::IsMember({"exhaustive", "random"}));
    gen->add_option("--out", out_dir, "output directory")->required();
    gen->add_option("--n-range", n_range_text, "species range A..B");
    gen->add_option("--m-range", m_range_text, "character range A..B");
    gen->add_option("--count", count, "random mode: number of instances");
    gen->add_option("--seed", seed, "random mode: RNG seed");
    gen->add_option("--densities", densities_text,
                    "random mode: comma-separated cell densities");

    CLI::App* bench = app.add_subcommand(
        "bench", "Time the recognizer over a size ladder; emit CSV");
    bench->add_option("--seed", seed, "accepted for interface symmetry");
    bench->add_option("--workers", workers, "accepted for interface symmetry");
    bench->add_option("--ladder", ladder, "species counts to time");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << e.what() << "\n";
        return kExitInputError;
    }

    try {
        if (check->parsed()) return cmd_check(input, format, false);
        if (reduce->parsed()) return cmd_check(input, format, true);
        if (tree->parsed()) return cmd_tree(input, format);
        if (oracle->parsed()) {
            if (mode.empty()) return oracle_single(input, budget);
            Range nr = parse_range(n_range_text), mr = parse_range(m_range_text);
            std::vector<dollo::BinaryMatrix> instances =
                mode == "exhaustive"
                    ? exhaustive_instances(nr, mr)
                    : random_instances(nr, mr, count, seed,
                                       parse_densities(densities_text));
            return oracle_sweep(instances, budget, workers);
        }
        if (gen->parsed())
            return cmd_gen(mode, out_dir, parse_range(n_range_text),
                           parse_range(m_range_text), count, seed,
                           parse_densities(densities_text));
        if (bench->parsed()) return cmd_bench(ladder);
    } catch (const dollo::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const dollo::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
