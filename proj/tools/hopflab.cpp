// hopflab command-line tool.
//
// Exit codes: 0 success, 2 parse/validation error, 3 precision or
// certification failure, 4 internal assertion.

#include "hopflab/error.hpp"
#include "hopflab/reports.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace hopflab;

namespace {

int exit_code(ErrorCode code) {
    switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::ModulusNotGreaterThanOne:
    case ErrorCode::MixedModes:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::InvalidArgument:
    case ErrorCode::NotDescending:
    case ErrorCode::NotQuasiRegular:
    case ErrorCode::ZeroPoint:
        return 2;
    case ErrorCode::PrecisionExhausted:
    case ErrorCode::NotCertified:
    case ErrorCode::FactorizationFailed:
    case ErrorCode::Overflow:
    case ErrorCode::NonConvergence:
    case ErrorCode::StepTooLarge:
    case ErrorCode::EnumerationCapExceeded:
        return 3;
    case ErrorCode::NumericMismatch:
    case ErrorCode::InternalAssertion:
        return 4;
    }
    return 4;
}

std::string read_file(const std::string& path) {
    if (path == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::ParseError, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::pair<std::size_t, std::size_t> parse_pair(const std::string& text) {
    const auto comma = text.find(',');
    try {
        if (comma != std::string::npos) {
            std::size_t used_k = 0, used_l = 0;
            const std::string a = text.substr(0, comma), b = text.substr(comma + 1);
            const long k = std::stol(a, &used_k), l = std::stol(b, &used_l);
            if (used_k == a.size() && used_l == b.size() && k >= 0 && l >= 0)
                return {static_cast<std::size_t>(k), static_cast<std::size_t>(l)};
        }
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::ParseError, "expected k,l but got '" + text + "'");
}

std::set<std::string> parse_checks(const std::string& text) {
    std::set<std::string> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        if (!potential_check_names().contains(item))
            throw Error(ErrorCode::ParseError, "unknown check '" + item + "'");
        out.insert(item);
    }
    return out;
}

void print_summary(const json& report, std::ostream& os) {
    os << report.at("command").get<std::string>() << " (hopflab " << kToolVersion << ", seed "
       << report.at("seed") << ")\n";
    for (const auto& [key, value] : report.items()) {
        if (key == "spec" || key == "command" || key == "seed" || key == "tool_version")
            continue;
        if (value.is_primitive()) {
            os << "  " << key << ": " << value.dump() << "\n";
        } else if (value.is_object()) {
            for (const auto& [sub, v] : value.items())
                if (v.is_primitive())
                    os << "  " << key << "." << sub << ": " << v.dump() << "\n";
        }
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Computations on diagonal Hopf manifolds"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", kToolVersion);

    std::string spec_path;
    std::string out_path;
    std::uint64_t seed = kDefaultSeed;
    std::optional<double> tolerance;
    bool as_json = false;
    bool no_timestamp = false;
    app.add_option("--spec", spec_path, "Spec JSON file ('-' for stdin)");
    app.add_option("--out", out_path, "Write the JSON report to this file");
    app.add_option("--seed", seed, "Random seed")->capture_default_str();
    app.add_option("--tolerance", tolerance, "Float acceptance / heuristic relation tolerance")
        ->check(CLI::PositiveNumber);
    app.add_flag("--json", as_json, "Print the JSON report on stdout");
    app.add_flag("--no-timestamp", no_timestamp, "Omit the timestamp field");

    AnalyzeOptions analyze;
    std::vector<std::string> analyze_pairs;
    double analyze_lambda = 0;
    auto* cmd_analyze = app.add_subcommand("analyze", "Full pipeline report");
    cmd_analyze->add_option("--invariants", analyze_pairs, "Tensor type k,l (repeatable)");
    auto* analyze_lambda_opt = cmd_analyze->add_option("--lambda", analyze_lambda, "Potential exponent")
                                   ->check(CLI::PositiveNumber);
    cmd_analyze->add_option("--samples", analyze.samples, "Random samples for potential checks")
        ->capture_default_str();
    cmd_analyze->add_option("--max-k", analyze.max_k, "Largest plurigenus index")->capture_default_str();
    cmd_analyze->add_option("--verify-degree", analyze.verify_degree, "Enumeration degree for plurigenera")
        ->capture_default_str();

    std::size_t inv_k = 0, inv_l = 0;
    bool inv_list = false;
    auto* cmd_invariants = app.add_subcommand("invariants", "Count A-invariant tensor monomials");
    cmd_invariants->add_option("--k", inv_k, "Number of V factors")->required();
    cmd_invariants->add_option("--l", inv_l, "Number of V* factors")->required();
    cmd_invariants->add_flag("--list", inv_list, "List the sorted index tuples");

    PotentialOptions pot;
    double pot_lambda = 0;
    std::string pot_at, pot_checks;
    auto* cmd_potential = app.add_subcommand("potential", "Shell potential and Vaisman checks");
    auto* pot_lambda_opt =
        cmd_potential->add_option("--lambda", pot_lambda, "Potential exponent")->check(CLI::PositiveNumber);
    cmd_potential->add_option("--at", pot_at, "Point, e.g. 1,0 or 1+2i,0.5");
    cmd_potential->add_option("--check", pot_checks, "Comma list of shell,flow,phase,psh,kernel");
    cmd_potential->add_option("--samples", pot.samples, "Random samples per check")->capture_default_str();
    cmd_potential->add_flag("--psd-threshold", pot.psd_threshold, "Bisect for an empirical PSD threshold");

    std::string field_path, lee_at;
    auto* cmd_lee = app.add_subcommand("verify-lee", "Lee / anti-Lee invariance of a monomial tensor field");
    cmd_lee->add_option("--field", field_path, "Field JSON file")->required();
    cmd_lee->add_option("--at", lee_at, "Evaluation point for the flow checks");

    std::size_t kod_max_k = 10, kod_degree = 20;
    auto* cmd_kodaira = app.add_subcommand("kodaira", "Plurigenera, Kodaira dimension, quasi-regularity");
    cmd_kodaira->add_option("--max-k", kod_max_k, "Largest plurigenus index")->capture_default_str();
    cmd_kodaira->add_option("--verify-degree", kod_degree, "Enumeration degree")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (spec_path.empty())
            throw Error(ErrorCode::ParseError, "--spec is required");
        const ContractionSpec spec = spec_from_text(read_file(spec_path));
        CommonOptions common{seed, tolerance, !no_timestamp};

        json report;
        if (cmd_analyze->parsed()) {
            analyze.common = common;
            if (!analyze_pairs.empty()) {
                analyze.invariants.clear();
                for (const auto& p : analyze_pairs)
                    analyze.invariants.push_back(parse_pair(p));
            }
            if (analyze_lambda_opt->count() > 0)
                analyze.lambda = analyze_lambda;
            report = analyze_report(spec, analyze);
        } else if (cmd_invariants->parsed()) {
            report = invariants_report(spec, inv_k, inv_l, inv_list, common);
        } else if (cmd_potential->parsed()) {
            pot.common = common;
            if (pot_lambda_opt->count() > 0) {
                pot.lambda = pot_lambda;
            } else {
                const auto rho = lee_generator(spec);
                pot.lambda = 2.0 * *std::max_element(rho.begin(), rho.end());
            }
            if (!pot_at.empty())
                pot.at = parse_point(pot_at);
            if (!pot_checks.empty())
                pot.checks = parse_checks(pot_checks);
            report = potential_report(spec, pot);
        } else if (cmd_lee->parsed()) {
            json field_json;
            try {
                field_json = json::parse(read_file(field_path));
            } catch (const json::exception& ex) {
                throw Error(ErrorCode::ParseError, ex.what());
            }
            std::optional<Point> at;
            if (!lee_at.empty())
                at = parse_point(lee_at);
            report = verify_lee_report(spec, field_from_json(field_json), at, common);
        } else if (cmd_kodaira->parsed()) {
            report = kodaira_report(spec, kod_max_k, kod_degree, common);
        }

        const std::string text = report.dump(2) + "\n";
        if (!out_path.empty()) {
            std::ofstream out(out_path);
            if (!out)
                throw Error(ErrorCode::ParseError, "cannot write " + out_path);
            out << text;
        }
        if (as_json)
            std::cout << text;
        else
            print_summary(report, std::cout);
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error [internal]: " << e.what() << "\n";
        return 4;
    }
}
