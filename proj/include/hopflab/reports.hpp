#pragma once

// JSON reports produced by the command-line tool. Each builder is a pure
// function of its inputs (and the seed), so repeated runs give identical
// output apart from the optional timestamp.

#include "hopflab/json_io.hpp"
#include "hopflab/shell_potential.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace hopflab {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr std::uint64_t kDefaultSeed = 20240917;

/// Settings shared by every subcommand.
struct CommonOptions {
    std::uint64_t seed = kDefaultSeed;
    std::optional<double> tolerance; // overrides float acceptance and heuristic tolerances
    bool timestamp = true;
};

/// Heuristic options and float tolerance implied by `--tolerance`.
HeuristicOptions heuristic_options(const CommonOptions& common);
Tolerance float_tolerance(const CommonOptions& common);

struct AnalyzeOptions {
    CommonOptions common;
    std::vector<std::pair<std::size_t, std::size_t>> invariants{{1, 1}};
    std::optional<double> lambda; // default 2 max log|alpha_i|
    std::size_t samples = 8;
    std::size_t max_k = 10;
    std::size_t verify_degree = 12;
};

json analyze_report(const ContractionSpec& spec, const AnalyzeOptions& options);

json invariants_report(const ContractionSpec& spec, std::size_t k, std::size_t l, bool list,
                       const CommonOptions& common);

struct PotentialOptions {
    CommonOptions common;
    double lambda = 0;
    std::optional<Point> at;
    std::set<std::string> checks{"shell", "flow", "phase", "psh", "kernel"};
    std::size_t samples = 20;
    bool psd_threshold = false;
};

/// Known check names, for argument validation.
const std::set<std::string>& potential_check_names();

json potential_report(const ContractionSpec& spec, const PotentialOptions& options);

json verify_lee_report(const ContractionSpec& spec, const MonomialTensorField& field,
                       const std::optional<Point>& at, const CommonOptions& common);

json kodaira_report(const ContractionSpec& spec, std::size_t max_k, std::size_t verify_degree,
                    const CommonOptions& common);

/// Random point with |z| log-uniform in [r_lo, r_hi] and uniform direction.
Point random_point(std::size_t n, double r_lo, double r_hi, std::mt19937_64& rng);

/// Drops the timestamp field so reports can be compared.
json without_timestamp(json report);

} // namespace hopflab
