#include "normbch/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "normbch/bounds.hpp"
#include "normbch/construct.hpp"
#include "normbch/reduce.hpp"
#include "normbch/verify.hpp"

namespace nbch {

namespace {

using Clock = std::chrono::steady_clock;

std::string hex64(std::uint64_t v) {
    std::ostringstream out;
    out << std::hex << v;
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << content;
}

std::uint64_t default_budget(std::uint64_t fallback) {
    if (const char* env = std::getenv(kBudgetEnv)) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string(kBudgetEnv) + " is not an integer");
        }
    }
    return fallback;
}

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) throw std::invalid_argument("range must look like lo..hi: " + text);
    return {std::stoll(text.substr(0, dots)), std::stoll(text.substr(dots + 2))};
}

std::vector<std::uint32_t> parse_list(const std::string& text) {
    std::vector<std::uint32_t> out;
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) out.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
    return out;
}

// Writes the primary output and its manifest.
void emit_output(const std::string& path, const std::string& content, RunManifest manifest, Clock::time_point start) {
    write_file(path, content);
    manifest.output_hashes[path] = hex64(fnv1a64(content));
    manifest.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    write_file(path + ".manifest.json", manifest.to_json());
}

void print_violations(const CodeParams& p, std::ostream& err) {
    err << "invalid parameters q=" << p.q << " m=" << p.m << " d=" << p.d << (p.relaxed ? " (relaxed)" : "") << ":\n";
    for (const auto& v : p.violations) err << "  " << v.code << ": " << v.message << "\n";
}

struct Options {
    // shared
    bool json = false;
    std::string out_path;
    std::uint64_t budget = 0;
    unsigned threads = 1;
    // code parameters
    std::uint32_t q = 0;
    unsigned m = 0;
    unsigned d = 0;
    bool relaxed = false;
    // gencode
    bool bch_only = false;
    std::string witness_path;
    // verify-distance
    std::string matrix_path;
    std::string counterexample_path;
    // check-lines
    bool experimental = false;
    // bounds
    std::int64_t bq = 0;
    std::int64_t bd = 0;
    std::vector<std::string> table;
    bool prior_only = false;
    // reduce
    std::string input_path;
    std::uint32_t q2 = 0;
    std::string subset;
    std::uint64_t trials = 0;
    std::uint64_t seed = 1;
};

int cmd_gencode(const Options& o, std::ostream& out, std::ostream& err) {
    const auto start = Clock::now();
    const CodeParams params = validate_params(o.q, o.m, o.d, o.relaxed);
    if (!params.valid()) {
        print_violations(params, err);
        return kExitUsage;
    }
    if (!o.bch_only && params.d == 3) {
        err << "d = 3 has no norm rows; use --bch-only\n";
        return kExitUsage;
    }
    const ParityCheckMatrix h = o.bch_only ? bch_matrix(params) : augmented_matrix(params);
    const std::string text = h.serialize();

    RunManifest manifest;
    manifest.subcommand = "gencode";
    manifest.parameters = {{"q", std::to_string(o.q)},
                           {"m", std::to_string(o.m)},
                           {"d", std::to_string(o.d)},
                           {"relaxed", o.relaxed ? "true" : "false"},
                           {"bch_only", o.bch_only ? "true" : "false"}};

    if (!o.witness_path.empty()) {
        const WeightWitness wit = construct_weight_word(params);
        const std::string wtext = wit.word.serialize();
        write_file(o.witness_path, wtext);
        manifest.output_hashes[o.witness_path] = hex64(fnv1a64(wtext));
    }
    if (o.out_path.empty()) {
        out << text;
        return kExitOk;
    }
    emit_output(o.out_path, text, manifest, start);
    const EmpiricalPoint pt = empirical_rho(h);
    if (o.json) {
        nlohmann::json j;
        j["path"] = o.out_path;
        j["rows"] = h.rows();
        j["cols"] = h.cols();
        j["rank"] = pt.r;
        j["dimension"] = h.cols() - pt.r;
        j["dimension_lower_bound"] = params.dimension_lower_bound();
        j["blocks"] = h.blocks_spec();
        out << j.dump(2) << "\n";
    } else {
        out << "path=" << o.out_path << "\nrows=" << h.rows() << "\ncols=" << h.cols() << "\nrank=" << pt.r
            << "\ndimension=" << h.cols() - pt.r << "\ndimension_lower_bound=" << params.dimension_lower_bound()
            << "\nblocks=" << h.blocks_spec() << "\n";
    }
    return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
    const auto start = Clock::now();
    const std::string text = read_file(o.matrix_path);
    const ParityCheckMatrix h = ParityCheckMatrix::parse(text);
    const DistanceCertificate cert = min_distance_at_least(h, o.d, o.budget, o.threads);
    out << (o.json ? cert.to_json() + "\n" : cert.to_text());

    RunManifest manifest;
    manifest.subcommand = "verify-distance";
    manifest.parameters = {{"matrix", o.matrix_path},
                           {"d", std::to_string(o.d)},
                           {"budget", std::to_string(o.budget)},
                           {"threads", std::to_string(o.threads)}};
    manifest.input_hashes[o.matrix_path] = hex64(fnv1a64(text));
    if (!o.counterexample_path.empty() && cert.counterexample) {
        const std::string ctext = cert.counterexample->serialize();
        write_file(o.counterexample_path, ctext);
        manifest.output_hashes[o.counterexample_path] = hex64(fnv1a64(ctext));
    }
    if (!o.out_path.empty())
        emit_output(o.out_path, o.json ? cert.to_json(false) + "\n" : cert.to_text(false), manifest, start);
    return cert.certified ? kExitOk : kExitCounterexample;
}

int cmd_lines(const Options& o, std::ostream& out, std::ostream& err) {
    const auto start = Clock::now();
    const CodeParams params = validate_params(o.q, o.m, o.d, o.relaxed);
    if (!params.buildable() || (!o.experimental && !params.valid())) {
        print_violations(params, err);
        return kExitUsage;
    }
    const LinesReport rep = verify_lines_theorem(params, o.budget, o.threads, o.experimental);
    out << (o.json ? rep.to_json() + "\n" : rep.to_text());
    if (o.experimental) out << (o.json ? "" : "experimental=yes (outside the theorem hypotheses; not asserted)\n");
    if (!o.out_path.empty()) {
        RunManifest manifest;
        manifest.subcommand = "check-lines";
        manifest.parameters = {{"q", std::to_string(o.q)},
                               {"m", std::to_string(o.m)},
                               {"d", std::to_string(o.d)},
                               {"relaxed", o.relaxed ? "true" : "false"},
                               {"experimental", o.experimental ? "true" : "false"},
                               {"budget", std::to_string(o.budget)},
                               {"threads", std::to_string(o.threads)}};
        emit_output(o.out_path, o.json ? rep.to_json(false) + "\n" : rep.to_text(false), manifest, start);
    }
    if (o.experimental) return kExitOk;
    return rep.violations.empty() && rep.words > 0 ? kExitOk : kExitCounterexample;
}

int cmd_bounds(const Options& o, std::ostream& out, std::ostream& err) {
    const auto start = Clock::now();
    std::string text;
    RunManifest manifest;
    manifest.subcommand = "bounds";
    manifest.parameters["prior_only"] = o.prior_only ? "true" : "false";
    if (!o.table.empty()) {
        if (o.table.size() != 2) {
            err << "--table needs qmin..qmax and dmin..dmax\n";
            return kExitUsage;
        }
        const auto [qmin, qmax] = parse_range(o.table[0]);
        const auto [dmin, dmax] = parse_range(o.table[1]);
        text = o.json ? bounds_table_json(qmin, qmax, dmin, dmax, !o.prior_only) + "\n"
                      : bounds_table(qmin, qmax, dmin, dmax, !o.prior_only);
        manifest.parameters["table"] = o.table[0] + " " + o.table[1];
    } else {
        if (o.bq == 0 || o.bd == 0) {
            err << "bounds needs --q and --d, or --table\n";
            return kExitUsage;
        }
        const BoundReport rep = best_known(o.bq, o.bd, !o.prior_only);
        text = o.json ? rep.to_json() + "\n" : rep.to_text();
        manifest.parameters["q"] = std::to_string(o.bq);
        manifest.parameters["d"] = std::to_string(o.bd);
    }
    out << text;
    if (!o.out_path.empty()) emit_output(o.out_path, text, manifest, start);
    return kExitOk;
}

int cmd_reduce(const Options& o, std::ostream& out) {
    const auto start = Clock::now();
    const std::string input = read_file(o.input_path);
    const ExplicitCode code = ExplicitCode::parse(input, o.q2);
    const ReduceMode mode = o.trials > 0 ? ReduceMode::sampled : ReduceMode::exhaustive;
    const ReductionResult res = reduce_alphabet(code, parse_list(o.subset), mode, o.trials, o.seed, o.budget, o.threads);

    if (o.json) {
        out << res.to_json() << "\n";
    } else {
        out << res.to_text();
        if (o.out_path.empty()) out << "---\n" << res.code.serialize();
    }
    if (!o.out_path.empty()) {
        RunManifest manifest;
        manifest.subcommand = "reduce";
        manifest.parameters = {{"input", o.input_path},
                               {"q2", std::to_string(o.q2)},
                               {"subset", o.subset},
                               {"trials", std::to_string(o.trials)},
                               {"seed", std::to_string(o.seed)},
                               {"budget", std::to_string(o.budget)},
                               {"threads", std::to_string(o.threads)}};
        manifest.input_hashes[o.input_path] = hex64(fnv1a64(input));
        emit_output(o.out_path, res.code.serialize(), manifest, start);
    }
    return kExitOk;
}

}  // namespace

std::string RunManifest::to_json() const {
    nlohmann::json j;
    j["subcommand"] = subcommand;
    j["tool_version"] = kToolVersion;
    j["parameters"] = parameters;
    j["inputs"] = input_hashes;
    j["outputs"] = output_hashes;
    j["seconds"] = seconds;
    return j.dump(2) + "\n";
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Norm-augmented extended BCH codes: construction, distance certification, bounds"};
    app.name("normbch");
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    std::uint64_t subset_budget = 0;
    std::uint64_t shift_budget = 0;
    try {
        subset_budget = default_budget(kDefaultSubsetBudget);
        shift_budget = default_budget(kDefaultShiftBudget);
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }

    auto* gencode = app.add_subcommand("gencode", "Build the parity-check matrix of the norm-augmented code");
    gencode->add_option("--q", o.q, "Alphabet size (prime)")->required();
    gencode->add_option("--m", o.m, "Extension degree")->required();
    gencode->add_option("--d", o.d, "Target distance")->required();
    gencode->add_option("--out", o.out_path, "Matrix file (stdout when omitted)");
    gencode->add_flag("--relaxed", o.relaxed, "Accept m whose nontrivial divisors all exceed (d-3)!");
    gencode->add_flag("--bch-only", o.bch_only, "Emit the extended BCH matrix without norm rows");
    gencode->add_option("--witness", o.witness_path, "Also write a weight-(d-1) word of the BCH code");
    gencode->add_flag("--json", o.json, "Machine-readable summary");

    auto* verify = app.add_subcommand("verify-distance", "Certify minimum distance >= d exhaustively");
    verify->add_option("--matrix", o.matrix_path, "Matrix file")->required();
    verify->add_option("--d", o.d, "Distance to certify")->required();
    verify->add_option("--budget", o.budget, "Maximum number of column subsets")->default_val(subset_budget);
    verify->add_option("--threads", o.threads, "Worker threads")->default_val(1);
    verify->add_option("--counterexample", o.counterexample_path, "Write the counterexample codeword here");
    verify->add_option("--out", o.out_path, "Certificate file");
    verify->add_flag("--json", o.json, "JSON output");

    auto* lines = app.add_subcommand("check-lines", "Check that minimum-weight BCH words lie on affine lines");
    lines->add_option("--q", o.q, "Alphabet size (prime)")->required();
    lines->add_option("--m", o.m, "Extension degree")->required();
    lines->add_option("--d", o.d, "Target distance of the augmented code")->required();
    lines->add_option("--budget", o.budget, "Maximum number of column subsets")->default_val(subset_budget);
    lines->add_option("--threads", o.threads, "Worker threads")->default_val(1);
    lines->add_flag("--relaxed", o.relaxed, "Accept m whose nontrivial divisors all exceed (d-3)!");
    lines->add_flag("--experimental", o.experimental, "Run outside the theorem hypotheses; report only");
    lines->add_option("--out", o.out_path, "Report file");
    lines->add_flag("--json", o.json, "JSON output");

    auto* bounds = app.add_subcommand("bounds", "Redundancy-coefficient bounds");
    bounds->add_option("--q", o.bq, "Alphabet size");
    bounds->add_option("--d", o.bd, "Distance");
    bounds->add_option("--table", o.table, "Ranges qmin..qmax dmin..dmax")->expected(2);
    bounds->add_flag("--prior-only", o.prior_only, "Leave out the norm-augmented BCH bound");
    bounds->add_option("--out", o.out_path, "Output file");
    bounds->add_flag("--json", o.json, "JSON output");

    auto* reduce = app.add_subcommand("reduce", "Shift a q2-ary code into a q1-symbol sub-alphabet");
    reduce->add_option("--input", o.input_path, "Codeword list file")->required();
    reduce->add_option("--q2", o.q2, "Alphabet size of the input code")->required();
    reduce->add_option("--subset", o.subset, "Comma-separated sub-alphabet symbols")->required();
    reduce->add_option("--trials", o.trials, "Random shifts to sample (0 = exhaustive)")->default_val(0);
    reduce->add_option("--seed", o.seed, "Seed for sampled mode")->default_val(1);
    reduce->add_option("--budget", o.budget, "Maximum number of shifts in exhaustive mode")->default_val(shift_budget);
    reduce->add_option("--threads", o.threads, "Worker threads")->default_val(1);
    reduce->add_option("--out", o.out_path, "Reduced codeword list file");
    reduce->add_flag("--json", o.json, "JSON output");

    std::vector<std::string> argv_store{"normbch"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gencode->parsed()) return cmd_gencode(o, out, err);
        if (verify->parsed()) return cmd_verify(o, out);
        if (lines->parsed()) return cmd_lines(o, out, err);
        if (bounds->parsed()) return cmd_bounds(o, out, err);
        if (reduce->parsed()) return cmd_reduce(o, out);
    } catch (const BudgetExceeded& e) {
        err << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace nbch
