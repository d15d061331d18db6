#ifndef BDMC_CLI_HPP
#define BDMC_CLI_HPP

// Command-line front end. Exit codes: 0 success, 1 usage or input error,
// 2 an inequality failed (bad input data or a bug).

#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "bdmc/bounds.hpp"
#include "bdmc/channel.hpp"
#include "bdmc/io.hpp"
#include "bdmc/oracle.hpp"
#include "bdmc/scalar_fn.hpp"

namespace bdmc::cli {

enum ExitCode : int { ok = 0, input_error = 1, violation = 2 };

struct AnalyzeArgs {
    std::string path;
    double tol = default_bound_tol;
    std::string format = "text";
    std::string out;
    bool strict = false;
};

struct MakeArgs {
    std::string kind;
    std::optional<double> eps;
    std::optional<double> z;
    std::optional<double> capacity;
    std::string out;
};

struct PhiTableArgs {
    double from = 0.0;
    double to = 1.0;
    std::size_t steps = 101;
    bool derivatives = false;
    std::string out;
};

struct RegionArgs {
    std::size_t samples = 1000;
    std::size_t outputs = 4;
    std::uint64_t seed = 0;
    std::size_t bec_grid = 0;
    std::string out;
};

struct CertifyArgs {
    std::size_t grid = 999;
    double v_max = default_v_max;
    double pad = default_lemma3_pad;
    std::string format = "text";
    std::string out;
};

namespace detail {

// Sends `text` to the file named by `path`, or to `out` when empty.
inline void emit(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path.empty()) {
        out << text;
    } else {
        write_text_file(path, text);
    }
}

inline std::string describe(const ChannelClass& c)
{
    std::ostringstream os;
    os << to_string(c.kind);
    if (c.parameter) {
        os << '(' << format_number(*c.parameter) << ')';
    }
    return os.str();
}

}  // namespace detail

inline int run_analyze(const AnalyzeArgs& args, std::ostream& out)
{
    const Channel ch = read_channel_file(args.path, args.strict);
    const BoundReport report = bound_report(ch, args.tol);
    const double i = report.capacity;
    const double z = report.bhattacharyya;
    // Hellinger^2 and Jensen-Shannon of the two conditional rows
    const double hl2 = bdmc::detail::clamp01(1.0 - z);
    const double js = i;

    std::ostringstream text;
    if (args.format == "json") {
        json doc = {{"I", i},
                    {"Z", z},
                    {"one_minus_I", 1.0 - i},
                    {"phi_Z", phi(z)},
                    {"hellinger_sq", hl2},
                    {"jensen_shannon", js},
                    {"class", to_json(report.channel_class)},
                    {"report", to_json(report)}};
        text << doc.dump(2) << '\n';
    } else {
        text << "I              " << format_number(i) << '\n'
             << "Z              " << format_number(z) << '\n'
             << "1-I            " << format_number(1.0 - i) << '\n'
             << "phi(Z)         " << format_number(phi(z)) << '\n'
             << "hellinger_sq   " << format_number(hl2) << '\n'
             << "jensen_shannon " << format_number(js) << '\n'
             << "class          " << detail::describe(report.channel_class) << '\n'
             << '\n';
        text << std::left << std::setw(15) << "bound" << std::setw(26) << "slack"
             << "status\n";
        for (const BoundEntry& e : report.entries) {
            text << std::left << std::setw(15) << e.name << std::setw(26) << format_number(e.slack)
                 << (e.satisfied ? "ok" : "VIOLATED") << (e.tight ? " tight" : "") << '\n';
        }
    }
    for (const std::string& d : ch.diagnostics()) {
        text << "note: " << d << '\n';
    }
    detail::emit(args.out, text.str(), out);
    return report.all_satisfied() ? ok : violation;
}

inline int run_make(const MakeArgs& args, std::ostream& out)
{
    const int given = int(args.eps.has_value()) + int(args.z.has_value()) + int(args.capacity.has_value());
    if (given != 1) {
        throw CLI::ValidationError("make", "give exactly one of --eps, --z, --capacity");
    }
    double eps = 0.0;
    if (args.kind == "bec") {
        // Z = eps, I = 1 - eps
        eps = args.eps ? *args.eps : args.z ? *args.z : 1.0 - UnitScalar(*args.capacity).value();
    } else {
        if (args.eps) {
            eps = *args.eps;
        } else if (args.z) {
            eps = bh_inv(*args.z);
        } else {
            eps = bsc_crossover_for_capacity(*args.capacity);
        }
    }
    const Channel ch = args.kind == "bec" ? bec(eps) : bsc(eps);
    detail::emit(args.out, to_json(ch).dump(2) + "\n", out);
    return ok;
}

inline int run_phi_table(const PhiTableArgs& args, std::ostream& out)
{
    detail::emit(args.out, phi_table_csv(args.from, args.to, args.steps, args.derivatives), out);
    return ok;
}

inline int run_region(const RegionArgs& args, [[maybe_unused]] std::ostream& out)
{
    // throws bound_violation, reported by run() as exit code 2
    const std::vector<RegionPoint> points = region_sample(args.samples, args.outputs, args.seed, args.bec_grid);
    write_text_file(args.out, region_csv(points));
    write_text_file(args.out + ".boundary.csv", region_boundary_csv(256));
    return ok;
}

inline int run_certify(const CertifyArgs& args, std::ostream& out)
{
    if (args.grid < 3) {
        throw CLI::ValidationError("certify", "--grid must be at least 3");
    }
    const CertificateReport lemma1 = certify_lemma1(args.grid, args.v_max);
    const CertificateReport lemma3 = certify_lemma3(args.grid, args.pad);

    std::ostringstream text;
    if (args.format == "json") {
        text << json{{"lemma1", to_json(lemma1)}, {"lemma3", to_json(lemma3)}}.dump(2) << '\n';
    } else {
        for (const CertificateReport* r : {&lemma1, &lemma3}) {
            text << r->lemma << ": " << (r->pass ? "pass" : "FAIL") << "  grid=" << r->grid
                 << "  mode=" << r->mode << "  min_slack=" << format_number(r->min_slack)
                 << " at " << format_number(r->argmin) << '\n';
            for (const CheckSummary& c : r->checks) {
                text << "  " << std::left << std::setw(28) << c.name << (c.pass ? "pass" : "FAIL")
                     << "  min=" << format_number(c.min_slack) << " at " << format_number(c.argmin) << '\n';
            }
        }
    }
    detail::emit(args.out, text.str(), out);
    return lemma1.pass && lemma3.pass ? ok : violation;
}

/// Parses argv and runs one command. Never throws.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Capacity and Bhattacharyya bounds for binary-input channels", "bdmc"};
    app.require_subcommand(1);

    const std::vector<std::string> text_json = {"text", "json"};

    AnalyzeArgs analyze;
    auto* analyze_cmd = app.add_subcommand("analyze", "compute I, Z and check the bounds for a channel file");
    analyze_cmd->add_option("path", analyze.path, "channel JSON file")->required();
    analyze_cmd->add_option("--tol", analyze.tol, "satisfaction/tightness tolerance")
        ->check(CLI::PositiveNumber);
    analyze_cmd->add_option("--format", analyze.format)->check(CLI::IsMember(text_json));
    analyze_cmd->add_option("--out", analyze.out, "output file (default stdout)");
    analyze_cmd->add_flag("--strict", analyze.strict, "reject degenerate outputs instead of pruning");

    MakeArgs make;
    auto* make_cmd = app.add_subcommand("make", "write a BEC or BSC channel file");
    make_cmd->add_option("kind", make.kind, "bec or bsc")->required()->check(CLI::IsMember({"bec", "bsc"}));
    make_cmd->add_option("--eps", make.eps, "erasure or crossover probability");
    make_cmd->add_option("--z", make.z, "target Bhattacharyya parameter");
    make_cmd->add_option("--capacity", make.capacity, "target symmetric capacity");
    make_cmd->add_option("--out", make.out, "output file (default stdout)");

    PhiTableArgs table;
    auto* table_cmd = app.add_subcommand("phi-table", "tabulate phi and its derivatives as CSV");
    table_cmd->add_option("--from", table.from);
    table_cmd->add_option("--to", table.to);
    table_cmd->add_option("--steps", table.steps)->check(CLI::Range(std::size_t{2}, std::size_t{100000000}));
    table_cmd->add_flag("--derivatives", table.derivatives, "add phi_d1 and phi_d2 columns");
    table_cmd->add_option("--out", table.out, "output file (default stdout)");

    RegionArgs region;
    auto* region_cmd = app.add_subcommand("region", "sample (Z, 1-I) over random channels as CSV");
    region_cmd->add_option("--samples", region.samples)->check(CLI::PositiveNumber);
    region_cmd->add_option("--outputs", region.outputs)->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
    region_cmd->add_option("--seed", region.seed);
    region_cmd->add_option("--bec-grid", region.bec_grid, "append this many BEC points");
    region_cmd->add_option("--out", region.out, "point CSV; boundary goes to <out>.boundary.csv")->required();

    CertifyArgs certify;
    auto* certify_cmd = app.add_subcommand("certify", "certify the phi derivative and comparison inequalities");
    certify_cmd->add_option("--grid", certify.grid);
    certify_cmd->add_option("--v-max", certify.v_max)->check(CLI::Range(0.0, 0.999999));
    certify_cmd->add_option("--pad", certify.pad)->check(CLI::NonNegativeNumber);
    certify_cmd->add_option("--format", certify.format)->check(CLI::IsMember(text_json));
    certify_cmd->add_option("--out", certify.out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
        if (analyze_cmd->parsed()) {
            return run_analyze(analyze, out);
        }
        if (make_cmd->parsed()) {
            return run_make(make, out);
        }
        if (table_cmd->parsed()) {
            return run_phi_table(table, out);
        }
        if (region_cmd->parsed()) {
            return run_region(region, out);
        }
        return run_certify(certify, out);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : input_error;
    } catch (const bound_violation& e) {
        err << "error: " << e.what() << '\n';
        return violation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return input_error;
    }
}

}  // namespace bdmc::cli

#endif  // BDMC_CLI_HPP
