#include "hopflab/reports.hpp"

#include "hopflab/error.hpp"
#include "hopflab/kodaira.hpp"
#include "hopflab/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <numbers>

namespace hopflab {

namespace {

// Portable uniform draw in [0, 1); std distributions differ between
// standard libraries, and reports must not.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double standard_normal(std::mt19937_64& rng) {
    const double u = 1.0 - uniform01(rng);
    const double v = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

bool fault_injected(std::string_view name) {
    const char* env = std::getenv("HOPFLAB_INJECT_FAULT");
    return env != nullptr && name == env;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json header(const char* command, const ContractionSpec& spec, const CommonOptions& common) {
    json j;
    j["command"] = command;
    j["tool_version"] = kToolVersion;
    j["seed"] = common.seed;
    if (common.timestamp)
        j["timestamp"] = utc_timestamp();
    j["spec"] = spec_to_json(spec);
    return j;
}

json complex_to_json(std::complex<double> z) {
    return {{"re", z.real()}, {"im", z.imag()}};
}

json point_to_json(std::span<const std::complex<double>> z) {
    json out = json::array();
    for (auto c : z)
        out.push_back(complex_to_json(c));
    return out;
}

json vector_to_json(const Eigen::VectorXd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out.push_back(v(i));
    return out;
}

json check(double value, double tolerance, bool pass) {
    return {{"value", value}, {"tolerance", tolerance}, {"pass", pass}};
}

// value <= tolerance
json upper_check(double value, double tolerance) {
    return check(value, tolerance, value <= tolerance);
}

double default_lambda(const ContractionSpec& spec) {
    const auto rho = lee_generator(spec);
    return 2.0 * *std::max_element(rho.begin(), rho.end());
}

Point unit_point(std::size_t n, std::mt19937_64& rng) {
    Point z = random_point(n, 1.0, 1.0, rng);
    double norm = 0;
    for (auto c : z)
        norm += std::norm(c);
    for (auto& c : z)
        c /= std::sqrt(norm);
    return z;
}

struct SampleChecks {
    json checks = json::object();
    bool passed = true;
};

// Runs the requested potential checks over `samples` random points.
SampleChecks run_potential_checks(const ShellPotential& p, const std::set<std::string>& which,
                                  std::size_t samples, std::mt19937_64& rng) {
    const std::size_t n = p.spec().n();
    SampleChecks out;
    const auto record = [&](const char* name, json c) {
        out.passed = out.passed && c.at("pass").get<bool>();
        out.checks[name] = std::move(c);
    };

    if (which.contains("shell")) {
        double worst = 0;
        for (std::size_t i = 0; i < samples; ++i)
            worst = std::max(worst, std::abs(potential(unit_point(n, rng), p) - 1.0));
        record("shell", upper_check(worst, 1e-12));
    }
    if (which.contains("flow")) {
        double worst = 0;
        for (std::size_t i = 0; i < samples; ++i) {
            const Point z = random_point(n, 0.5, 4.0, rng);
            const double phi = potential(z, p);
            for (int step = -4; step <= 4; ++step) {
                const double s = 0.5 * step;
                const double lhs = potential(flow(z, p, s), p);
                worst = std::max(worst, std::abs(lhs - std::exp(p.lambda() * s) * phi) / (std::exp(p.lambda() * s) * phi));
            }
        }
        record("flow", upper_check(worst, 1e-10));
    }
    if (which.contains("phase")) {
        double worst = 0;
        for (std::size_t i = 0; i < samples; ++i) {
            Point z = random_point(n, 0.5, 4.0, rng);
            const double phi = potential(z, p);
            for (auto& c : z)
                c *= std::polar(1.0, 2.0 * std::numbers::pi * uniform01(rng));
            worst = std::max(worst, std::abs(potential(z, p) - phi) / phi);
        }
        record("phase", upper_check(worst, 1e-12));
    }

    const bool psh = which.contains("psh");
    const bool kernel = which.contains("kernel");
    if (psh || kernel) {
        std::vector<Point> points;
        for (std::size_t i = 0; i < samples; ++i)
            points.push_back(random_point(n, 0.5, 2.0, rng));
        std::vector<VaismanSample> vs(points.size());
        parallel_for(points.size(), [&](std::size_t i) { vs[i] = vaisman_sample(points[i], p); });

        if (psh) {
            double min_eig = std::numeric_limits<double>::infinity();
            for (const auto& s : vs)
                min_eig = std::min(min_eig, s.hessian_eigenvalues.minCoeff());
            record("psh_min_eigenvalue", check(min_eig, -1e-6, min_eig >= -1e-6));
        }
        if (kernel) {
            double lee = 0, anti = 0, omega_min = std::numeric_limits<double>::infinity(), theta = 0,
                   identity = 0;
            bool rank_ok = true;
            for (const auto& s : vs) {
                lee = std::max(lee, s.lee_kernel_residual);
                anti = std::max(anti, s.anti_lee_kernel_residual);
                omega_min = std::min(omega_min, s.omega0_eigenvalues.minCoeff());
                theta = std::max(theta, std::abs(s.theta_on_lee + p.lambda()) / p.lambda());
                identity = std::max(identity, s.identity_residual);
                rank_ok = rank_ok && s.omega0_rank == n - 1;
            }
            record("lee_kernel", upper_check(lee, 1e-6));
            record("anti_lee_kernel", upper_check(anti, 1e-6));
            record("omega0_min_eigenvalue", check(omega_min, -1e-6, omega_min >= -1e-6));
            record("theta_on_lee", upper_check(theta, 1e-6));
            record("omega0_identity", upper_check(identity, 1e-5));
            json rank = {{"expected", n - 1}, {"threshold", 1e-6}, {"pass", rank_ok}};
            out.passed = out.passed && rank_ok;
            out.checks["omega0_rank"] = rank;
        }
    }
    return out;
}

json lee_report_to_json(const MonomialTensorField& field, const LeeInvarianceReport& r) {
    json flows = json::array();
    for (const auto& c : r.flow_checks)
        flows.push_back({{"flow", c.flow}, {"time", c.time}, {"residual", c.residual}});
    return {{"field", field_to_json(field)},
            {"descends", r.descends},
            {"verdict", r.invariant ? "invariant" : "not invariant"},
            {"mu_lee", complex_to_json(r.mu_lee)},
            {"mu_anti_lee", complex_to_json(r.mu_anti_lee)},
            {"flow_checks", flows},
            {"flow_tolerance", r.flow_tolerance},
            {"certified", r.certified}};
}

// Fields z_i d/dz_i (the Euler field, term by term) plus one field per
// lattice basis vector m: z^{m+} (x) d/dz^{m-}.
std::vector<MonomialTensorField> lattice_fields(const RelationLattice& lattice) {
    std::vector<MonomialTensorField> out;
    for (std::size_t i = 0; i < lattice.n; ++i) {
        MonomialTensorField t;
        t.m.assign(lattice.n, 0);
        t.m[i] = 1;
        t.vector_slots = {i};
        out.push_back(std::move(t));
    }
    constexpr std::int64_t max_slots = 12;
    for (const auto& row : lattice.basis) {
        MonomialTensorField t;
        t.m.assign(lattice.n, 0);
        std::int64_t slots = 0;
        for (std::size_t i = 0; i < lattice.n; ++i) {
            if (row[i] > 0)
                t.m[i] = row[i];
            else
                slots -= row[i];
        }
        if (slots > max_slots)
            continue;
        for (std::size_t i = 0; i < lattice.n; ++i)
            for (std::int64_t c = 0; c < -row[i]; ++c)
                t.vector_slots.push_back(i);
        out.push_back(std::move(t));
    }
    return out;
}

json quasi_regular_to_json(const ContractionSpec& spec, std::size_t max_k) {
    if (!spec.is_exact())
        return {{"decided", false}, {"reason", "float spec"}};
    const QuasiRegularReport q = detect_quasi_regular(spec);
    json out = {{"decided", true}, {"is_quasi_regular", q.is_quasi_regular}};
    if (!q.is_quasi_regular)
        return out;
    out["weights"] = q.weights;
    out["base_modulus"] = rational_to_json(q.base_modulus);
    out["power"] = q.power;
    out["base_arg_over_pi"] = rational_to_json(q.base_arg_over_pi);
    const LeafSpaceSummary s = leaf_space_summary(q, spec, max_k);
    out["leaf_space"] = {{"space", s.leaf_space},
                         {"kodaira", s.kodaira_leaf_space.to_string()},
                         {"plurigenera", s.leaf_plurigenera},
                         {"kodaira_manifold", s.kodaira_manifold.to_string()},
                         {"consistent", s.consistent},
                         {"adjunction", s.adjunction}};
    return out;
}

json kodaira_section(const ContractionSpec& spec, std::size_t max_k, std::size_t verify_degree) {
    std::vector<std::uint64_t> counts;
    for (std::size_t k = 1; k <= max_k; ++k) {
        auto c = pluricanonical_dimension(spec, k, verify_degree);
        if (fault_injected("kodaira"))
            c.count += 1;
        counts.push_back(c.count);
    }
    const KodairaDimension kappa = kodaira_dimension(spec);
    const KodairaDimension from_counts = kodaira_from_counts(counts);
    check_invariant(max_k < 2 || kappa.value == from_counts.value,
                    "Kodaira dimension disagrees with the plurigenus sequence");
    return {{"kodaira", kappa.to_string()},
            {"certificate", kappa.certificate},
            {"counts", counts},
            {"verify_degree", verify_degree},
            {"quasi_regular", quasi_regular_to_json(spec, max_k)}};
}

} // namespace

HeuristicOptions heuristic_options(const CommonOptions& common) {
    HeuristicOptions h;
    if (common.tolerance)
        h.tolerance = *common.tolerance;
    return h;
}

Tolerance float_tolerance(const CommonOptions& common) {
    Tolerance t;
    if (common.tolerance) {
        t.accept = *common.tolerance;
        t.reject = std::max(t.reject, 1e3 * t.accept);
    }
    return t;
}

Point random_point(std::size_t n, double r_lo, double r_hi, std::mt19937_64& rng) {
    Point z(n);
    double norm = 0;
    for (auto& c : z) {
        c = {standard_normal(rng), standard_normal(rng)};
        norm += std::norm(c);
    }
    const double radius = r_lo * std::pow(r_hi / r_lo, uniform01(rng));
    for (auto& c : z)
        c *= radius / std::sqrt(norm);
    return z;
}

json without_timestamp(json report) {
    report.erase("timestamp");
    return report;
}

const std::set<std::string>& potential_check_names() {
    static const std::set<std::string> names{"shell", "flow", "phase", "psh", "kernel"};
    return names;
}

json analyze_report(const ContractionSpec& spec, const AnalyzeOptions& options) {
    json report = header("analyze", spec, options.common);
    bool certified = true;

    const TorusClosure c = closure(spec, heuristic_options(options.common));
    report["lattice"] = lattice_to_json(c.lattice);
    certified = certified && c.certified();

    bool contains_a1 = false;
    json closure_json;
    if (spec.is_exact()) {
        contains_a1 = verify_real_part(spec);
        if (fault_injected("real-part"))
            contains_a1 = !contains_a1;
        check_invariant(contains_a1, "closure does not contain the real part A_1");
        closure_json = closure_report(c, contains_a1);
        closure_json["lie_algebra_contains_log_A1"] = lie_algebra_contains_log_real_part(c, spec);
    } else {
        const Tolerance tol = float_tolerance(options.common);
        const Verdict v = contains_verdict(c, real_part_operator(spec), tol);
        if (v != Verdict::True)
            throw Error(ErrorCode::PrecisionExhausted, "membership of A_1 could not be confirmed in floating point");
        contains_a1 = true;
        closure_json = closure_report(c, contains_a1);
        closure_json["tolerance"] = tol.accept;
    }
    report["closure"] = closure_json;

    json invariants = json::array();
    for (const auto& [k, l] : options.invariants) {
        const InvariantCount count = count_invariants(c.lattice, k, l);
        const bool a1 = check_A1_fixes_invariants(spec, k, l);
        check_invariant(a1, "an A-invariant tensor is not fixed by A_1");
        invariants.push_back({{"k", k},
                              {"l", l},
                              {"ordered_count", count.ordered_count},
                              {"exponent_count", count.exponent_count},
                              {"fixed_by_A1", a1},
                              {"certified", count.certified}});
        certified = certified && count.certified;
    }
    report["invariants"] = invariants;

    std::mt19937_64 rng(options.common.seed);
    const double lambda = options.lambda.value_or(default_lambda(spec));
    const ShellPotential p(spec, lambda);
    const SampleChecks checks = run_potential_checks(p, potential_check_names(), options.samples, rng);
    report["potential"] = {{"lambda", lambda},
                           {"automorphy_factor", automorphy_factor(p)},
                           {"samples", options.samples},
                           {"checks", checks.checks},
                           {"passed", checks.passed}};
    certified = certified && checks.passed;

    json lee = json::array();
    for (const auto& field : lattice_fields(c.lattice)) {
        const auto r = verify_lee_invariance(field, spec);
        lee.push_back(lee_report_to_json(field, r));
        certified = certified && r.certified && r.invariant;
    }
    report["lee_invariance"] = lee;

    report["kodaira"] = kodaira_section(spec, options.max_k, options.verify_degree);
    certified = certified && spec.is_exact();

    report["certified"] = certified;
    return report;
}

json invariants_report(const ContractionSpec& spec, std::size_t k, std::size_t l, bool list,
                       const CommonOptions& common) {
    json report = header("invariants", spec, common);
    const TorusClosure c = closure(spec, heuristic_options(common));
    report["k"] = k;
    report["l"] = l;
    report["lattice"] = lattice_to_json(c.lattice);
    if (list) {
        const InvariantSet set = enumerate_invariants(c.lattice, k, l);
        report["ordered_count"] = set.ordered_count();
        report["exponent_count"] = set.exponent_count;
        json indices = json::array();
        for (const auto& idx : set.indices)
            indices.push_back(index_to_json(idx));
        report["indices"] = indices;
    } else {
        const InvariantCount count = count_invariants(c.lattice, k, l);
        report["ordered_count"] = count.ordered_count;
        report["exponent_count"] = count.exponent_count;
    }
    report["certified"] = c.certified();
    return report;
}

json potential_report(const ContractionSpec& spec, const PotentialOptions& options) {
    json report = header("potential", spec, options.common);
    const ShellPotential p(spec, options.lambda);
    report["lambda"] = options.lambda;
    report["automorphy_factor"] = automorphy_factor(p);

    if (options.at) {
        const Point& z = *options.at;
        if (z.size() != spec.n())
            throw Error(ErrorCode::DimensionMismatch, "--at has the wrong number of coordinates");
        const VaismanSample s = vaisman_sample(z, p);
        report["point"] = {{"z", point_to_json(z)},
                           {"time_to_shell", time_to_shell(z, p.log_moduli(), p.root_tolerance())},
                           {"phi", s.phi},
                           {"theta", s.theta},
                           {"hessian_eigenvalues", vector_to_json(s.hessian_eigenvalues)},
                           {"omega0_eigenvalues", vector_to_json(s.omega0_eigenvalues)},
                           {"lee_kernel_residual", s.lee_kernel_residual},
                           {"anti_lee_kernel_residual", s.anti_lee_kernel_residual},
                           {"theta_on_lee", s.theta_on_lee},
                           {"identity_residual", s.identity_residual},
                           {"omega0_rank", s.omega0_rank}};
    }

    std::mt19937_64 rng(options.common.seed);
    const SampleChecks checks = run_potential_checks(p, options.checks, options.samples, rng);
    report["samples"] = options.samples;
    report["checks"] = checks.checks;
    report["passed"] = checks.passed;

    if (options.psd_threshold) {
        std::vector<Point> points;
        for (std::size_t i = 0; i < options.samples; ++i)
            points.push_back(random_point(spec.n(), 0.5, 2.0, rng));
        const double lo = 0.05, hi = 64.0;
        report["psd_threshold"] = {{"value", empirical_psd_threshold(spec, points, lo, hi)},
                                   {"searched", {lo, hi}},
                                   {"psd_tolerance", 1e-6},
                                   {"empirical", true}};
    }
    return report;
}

json verify_lee_report(const ContractionSpec& spec, const MonomialTensorField& field,
                       const std::optional<Point>& at, const CommonOptions& common) {
    json report = header("verify-lee", spec, common);
    if (at && at->size() != spec.n())
        throw Error(ErrorCode::DimensionMismatch, "--at has the wrong number of coordinates");
    if (field.n() != spec.n())
        throw Error(ErrorCode::DimensionMismatch, "field dimension differs from spec");
    const auto point = at ? *at : default_probe_point(spec.n());
    LeeInvarianceReport r = verify_lee_invariance(field, spec, point);
    if (fault_injected("lee-flow"))
        throw Error(ErrorCode::NumericMismatch, "injected fault: lee-flow");
    report["point"] = point_to_json(point);
    report["result"] = lee_report_to_json(field, r);
    report["verdict"] = r.invariant ? "invariant" : "not invariant";
    report["mu"] = r.mu_lee.real();
    report["certified"] = r.certified;
    return report;
}

json kodaira_report(const ContractionSpec& spec, std::size_t max_k, std::size_t verify_degree,
                    const CommonOptions& common) {
    json report = header("kodaira", spec, common);
    const json section = kodaira_section(spec, max_k, verify_degree);
    for (const auto& [key, value] : section.items())
        report[key] = value;
    report["certified"] = spec.is_exact();
    return report;
}

} // namespace hopflab
