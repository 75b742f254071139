// divsym: command-line front end.
//
// Results go to stdout as JSON and are deterministic for fixed flags. The run
// manifest goes to stderr, or to --manifest FILE.
//
// Exit codes: 0 ok, 2 input error, 3 precondition violation, 4 cap exceeded,
// 5 verification failure, 1 anything else.

#include "divsym/divsym.hpp"
#include "divsym/json_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace divsym;
using io::json;

namespace {

constexpr int exit_input = 2;
constexpr int exit_precondition = 3;
constexpr int exit_cap = 4;
constexpr int exit_verification = 5;

struct Caps {
    std::size_t max_vertices = 10;
    std::size_t max_states = 100000;
    std::uint64_t max_trials = 10'000'000;
    std::uint64_t max_steps = 10'000'000;
    unsigned workers = 0;

    EngineOptions engine() const { return {max_vertices, workers}; }
    SolverOptions solver() const { return {max_states}; }

    json to_json() const
    {
        return {{"max_vertices", max_vertices}, {"max_states", max_states}, {"max_trials", max_trials},
                {"max_steps", max_steps},       {"workers", workers}};
    }
};

Point parse_point(const std::string& text, std::size_t m, const std::string& flag)
{
    Point pt;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            Rational q(item);
            if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
            q.canonicalize();
            pt.push_back(q);
        } catch (const std::invalid_argument&) {
            throw input_error(flag + ": \"" + item + "\" is not a rational number");
        }
    }
    if (pt.size() != m) {
        throw input_error(flag + " needs " + std::to_string(m) + " coordinates, got " + std::to_string(pt.size()));
    }
    return pt;
}

RobPolicy parse_policy(const std::string& name, std::uint64_t seed)
{
    if (name == "lowest") return RobPolicy::lowest();
    if (name == "highest") return RobPolicy::highest();
    return RobPolicy::seeded(seed);
}

std::string describe(std::span<const std::uint32_t> c)
{
    std::string s = "(";
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
    return s + ")";
}

// Collects pass/fail cases for a verify report.
class Report {
public:
    explicit Report(std::string check, json parameters) : check_(std::move(check)), parameters_(std::move(parameters)) {}

    void expect(bool ok, const std::string& what)
    {
        ++cases_;
        if (!ok) {
            ++failures_;
            if (examples_.size() < 10) examples_.push_back(what);
        }
    }

    void expect_equal(const Rational& got, const Rational& want, const std::string& what)
    {
        expect(got == want, what + ": got " + to_string(got) + ", expected " + to_string(want));
    }

    bool passed() const { return failures_ == 0; }

    json to_json() const
    {
        return {{"format", io::format_version}, {"check", check_},       {"parameters", parameters_},
                {"cases", cases_},             {"failures", failures_}, {"failure_examples", examples_},
                {"pass", passed()}};
    }

private:
    std::string check_;
    json parameters_;
    std::uint64_t cases_ = 0;
    std::uint64_t failures_ = 0;
    std::vector<std::string> examples_;
};

struct VerifyArgs {
    std::string kind;
    std::size_t n = 4;
    std::size_t d = 1;
    std::size_t m = 6;
    std::size_t instances = 25;
    std::uint64_t seed = 1;
};

Report run_verify(const VerifyArgs& a, const Caps& caps)
{
    const EngineOptions eo = caps.engine();
    if (a.kind == "lemma2") {
        Report r(a.kind, {{"n", a.n}});
        for (std::size_t n = 1; n <= a.n; ++n) {
            for (std::size_t i = 0; i <= n; ++i) {
                Monomial mono(n + 1);
                mono[i] = static_cast<std::uint32_t>(n);
                r.expect_equal(phi(Polynomial::from_monomial(mono), eo), lemma2_value(i, n),
                               "n=" + std::to_string(n) + " i=" + std::to_string(i));
            }
        }
        return r;
    }
    if (a.kind == "eq2") {
        Report r(a.kind, {{"n", a.n}});
        for (std::size_t n = 1; n <= a.n; ++n) {
            const auto s = verify_eq2(n, eo);
            r.expect_equal(s.lhs, s.rhs, "n=" + std::to_string(n));
        }
        return r;
    }
    if (a.kind == "postnikov") {
        Report r(a.kind, {{"n", a.n}});
        for (const auto& c : instances::all_compositions(static_cast<std::uint32_t>(a.n), a.n + 1)) {
            const auto s = postnikov_check(c, eo);
            r.expect_equal(s.lhs, s.rhs, "c=" + describe(c));
        }
        return r;
    }
    if (a.kind == "q-relations") {
        Report r(a.kind, {{"n", a.n}});
        for (const auto& c : instances::all_compositions(static_cast<std::uint32_t>(a.n), a.n + 1))
            for (std::size_t i = 0; i < c.size(); ++i)
                if (c[i] >= 2) r.expect_equal(q_relation_check(c, i, eo), 0, "c=" + describe(c) + " i=" + std::to_string(i));
        return r;
    }
    if (a.kind == "cycle") {
        Report r(a.kind, {{"n", a.n}, {"d", a.d}});
        const std::size_t m = a.n + a.d;
        require(a.d >= 1, "--d must be at least 1");
        require(m >= 3, "the cycle formula needs n + d >= 3");
        for (const auto& c : instances::all_compositions(static_cast<std::uint32_t>(a.n), m)) {
            const auto law = exact_absorption(CoinConfig(Counts(c.begin(), c.end())), RobPolicy::lowest(), caps.solver());
            Rational total = 0;
            for (const auto& p : subsets_of_size(m, a.d)) {
                const Rational f = prob_empty_set_formula(c, p, eo);
                std::string ps;
                for (std::size_t v : p) ps += (ps.empty() ? "" : ",") + std::to_string(v);
                r.expect_equal(f, law.empty_set(p), "c=" + describe(c) + " P={" + ps + "}");
                total += f;
            }
            r.expect_equal(total, 1, "c=" + describe(c) + " sum over P");
            const auto s = cycle_identity_check(c, a.d, eo);
            r.expect_equal(s.lhs, s.rhs, "c=" + describe(c) + " cycle identity");
        }
        return r;
    }
    if (a.kind == "lemma1") {
        Report r(a.kind, {{"m", a.m}, {"instances", a.instances}, {"seed", a.seed}});
        std::mt19937_64 rng(a.seed);
        for (std::size_t k = 0; k < a.instances; ++k) {
            const auto in = instances::random_lemma1_instance(a.m, rng);
            r.expect_equal(lemma1_vanishes(in.h, in.removed, in.component, in.g, in.cofactor, eo), 0,
                           "instance " + std::to_string(k));
        }
        return r;
    }
    if (a.kind == "eq1") {
        Report r(a.kind, {{"m", a.m}, {"instances", a.instances}, {"seed", a.seed}});
        std::mt19937_64 rng(a.seed);
        for (std::size_t k = 0; k < a.instances; ++k) {
            const auto in = instances::random_eq1_instance(a.m, rng);
            const auto s = check_eq1(in.fu, in.fw, in.gu, in.gw, eo);
            r.expect_equal(s.lhs, s.rhs, "instance " + std::to_string(k));
        }
        return r;
    }
    throw input_error("unknown check " + a.kind);
}

void emit_manifest(const io::RunManifest& m, const std::string& path)
{
    const std::string text = io::manifest_to_json(m).dump();
    if (path.empty()) {
        std::cerr << text << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw input_error("cannot write manifest to " + path);
    out << text << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact divided symmetrization, tree formulas and coin robbing on a cycle"};
    app.set_version_flag("--version", DIVSYM_VERSION);
    app.require_subcommand(1);

    Caps caps;
    std::string manifest_path;
    app.add_option("--workers", caps.workers, "Worker threads (0 = hardware concurrency)");
    app.add_option("--max-vertices", caps.max_vertices, "Largest graph accepted by the permutation engine")
        ->capture_default_str();
    app.add_option("--max-states", caps.max_states, "State cap for the exact sandpile solver")->capture_default_str();
    app.add_option("--max-trials", caps.max_trials, "Trial cap for simulation")->capture_default_str();
    app.add_option("--max-steps", caps.max_steps, "Step cap per simulated trajectory")->capture_default_str();
    app.add_option("--manifest", manifest_path, "Write the run manifest here instead of stderr");

    std::string graph_file, poly_file, point_text, verify_point_text;
    auto* ds = app.add_subcommand("ds", "Divided symmetrization of a polynomial over a graph");
    ds->add_option("graph", graph_file, "Graph JSON")->required()->check(CLI::ExistingFile);
    ds->add_option("poly", poly_file, "Polynomial JSON")->required()->check(CLI::ExistingFile);
    ds->add_option("--point", point_text, "Evaluation point, comma-separated rationals");
    ds->add_option("--verify-point", verify_point_text, "Second point; results must agree");

    std::string tree_file, weights_file, method = "fast";
    auto* tree = app.add_subcommand("tree", "Signed count of acceptable permutations for a tree monomial");
    tree->add_option("tree", tree_file, "Tree graph JSON")->required()->check(CLI::ExistingFile);
    tree->add_option("weights", weights_file, "Weights JSON")->required()->check(CLI::ExistingFile);
    tree->add_option("--method", method, "Counting method")
        ->check(CLI::IsMember({"brute", "fast", "both"}))
        ->capture_default_str();

    std::string config_file, mode, policy_name = "lowest";
    std::uint64_t seed = 0, trials = 10000;
    std::optional<std::size_t> vertex;
    auto* sandpile = app.add_subcommand("sandpile", "Coin robbing: exact law or simulation");
    sandpile->add_option("config", config_file, "Config JSON")->required()->check(CLI::ExistingFile);
    sandpile->add_option("mode", mode, "solve or simulate")->required()->check(CLI::IsMember({"solve", "simulate"}));
    sandpile->add_option("--seed", seed, "Simulation and random-policy seed")->capture_default_str();
    sandpile->add_option("--trials", trials, "Simulation trials")->capture_default_str();
    sandpile->add_option("--policy", policy_name, "Robbing order")
        ->check(CLI::IsMember({"lowest", "highest", "random"}))
        ->capture_default_str();
    sandpile->add_option("--vertex", vertex, "Report the probability that this vertex ends up empty");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Check an identity over a range of instances");
    verify->add_option("check", va.kind, "Identity to check")
        ->required()
        ->check(CLI::IsMember({"lemma2", "eq2", "postnikov", "q-relations", "cycle", "lemma1", "eq1"}));
    verify->add_option("--n", va.n, "Coin count / path length")->capture_default_str();
    verify->add_option("--d", va.d, "Number of empty vertices (cycle)")->capture_default_str();
    verify->add_option("--m", va.m, "Largest vertex count for random instances")->capture_default_str();
    verify->add_option("--instances", va.instances, "Random instance count")->capture_default_str();
    verify->add_option("--seed", va.seed, "Seed for random instances")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : exit_input;
    }

    const auto started = std::chrono::steady_clock::now();
    io::RunManifest manifest;
    manifest.version = DIVSYM_VERSION;
    manifest.caps = caps.to_json();
    int rc = 0;

    try {
        json result;
        if (ds->parsed()) {
            manifest.command = "ds";
            const json gj = io::read_json_file(graph_file), pj = io::read_json_file(poly_file);
            manifest.inputs = {{"graph", gj}, {"poly", pj}, {"point", point_text}, {"verify_point", verify_point_text}};
            const Graph g = io::graph_from_json(gj);
            const Polynomial f = io::polynomial_from_json(pj);
            const Point pt = point_text.empty() ? default_point(g.vertices()) : parse_point(point_text, g.vertices(), "--point");
            Rational value;
            if (!verify_point_text.empty()) {
                value = ds_constant_verified(f, g, pt, parse_point(verify_point_text, g.vertices(), "--verify-point"),
                                             caps.engine());
            } else {
                value = ds_constant(f, g, pt, caps.engine());
            }
            result = {{"format", io::format_version}, {"value", io::rational_to_json(value)}, {"display", to_string(value)}};
        } else if (tree->parsed()) {
            manifest.command = "tree";
            const json tj = io::read_json_file(tree_file), wj = io::read_json_file(weights_file);
            manifest.inputs = {{"tree", tj}, {"weights", wj}, {"method", method}};
            const Tree t = validate_tree(io::graph_from_json(tj));
            const WeightAssignment w = io::weights_from_json(wj);
            require(w.size() == t.vertices(), "weights must have one entry per tree vertex");
            TauResult r;
            if (method == "both") {
                r = tau(t, w, CountMethod::fast, caps.engine());
                const TauResult b = tau(t, w, CountMethod::brute, caps.engine());
                if (b.count != r.count) {
                    throw verification_failure("brute-force count " + b.count.get_str() + " differs from fast count " +
                                               r.count.get_str());
                }
            } else {
                r = tau(t, w, method == "brute" ? CountMethod::brute : CountMethod::fast, caps.engine());
            }
            result = {{"format", io::format_version}, {"method", method}, {"sign", r.sign},
                      {"count", r.count.get_str()},   {"tau", r.tau.get_str()}};
        } else if (sandpile->parsed()) {
            manifest.command = "sandpile " + mode;
            const json cj = io::read_json_file(config_file);
            manifest.inputs = {{"config", cj}, {"policy", policy_name}, {"trials", trials},
                               {"vertex", vertex ? json(*vertex) : json(nullptr)}};
            const CoinConfig c = io::config_from_json(cj);
            require(!vertex || *vertex < c.size(), "--vertex out of range");
            const RobPolicy policy = parse_policy(policy_name, seed);
            if (mode == "solve") {
                if (policy.kind() == RobPolicy::Kind::seeded) manifest.seed = seed;
                const AbsorptionResult law = exact_absorption(c, policy, caps.solver());
                result = {{"format", io::format_version}, {"policy", policy_name},
                          {"distribution", io::absorption_to_json(law)}};
                if (vertex) {
                    result["vertex"] = *vertex;
                    result["vertex_empty"] = io::rational_to_json(law.vertex_empty(*vertex));
                }
            } else {
                manifest.seed = seed;
                if (trials > caps.max_trials) {
                    throw cap_exceeded("requested " + std::to_string(trials) + " trials, cap is " +
                                       std::to_string(caps.max_trials));
                }
                SimulationOptions so;
                so.workers = caps.workers;
                so.max_steps_per_trial = caps.max_steps;
                const SimulationResult sim = simulate(c, seed, trials, policy, so);
                result = io::simulation_to_json(sim);
                result["policy"] = policy_name;
                result["seed"] = seed;
                if (vertex) {
                    const double f = static_cast<double>(sim.vertex_empty_hits(*vertex)) / static_cast<double>(trials);
                    result["vertex"] = *vertex;
                    result["vertex_empty_freq"] = f;
                    result["vertex_empty_stderr"] = sim.standard_error(f);
                }
            }
        } else if (verify->parsed()) {
            manifest.command = "verify " + va.kind;
            manifest.inputs = {{"n", va.n}, {"d", va.d}, {"m", va.m}, {"instances", va.instances}};
            if (va.kind == "lemma1" || va.kind == "eq1") manifest.seed = va.seed;
            const Report report = run_verify(va, caps);
            result = report.to_json();
            if (!report.passed()) rc = exit_verification;
        }
        std::cout << result.dump(2) << '\n';
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << '\n';
        rc = exit_input;
    } catch (const precondition_error& e) {
        std::cerr << "precondition violated: " << e.what() << '\n';
        rc = exit_precondition;
    } catch (const cap_exceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << '\n';
        rc = exit_cap;
    } catch (const verification_failure& e) {
        std::cerr << "verification failed: " << e.what() << '\n';
        rc = exit_verification;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        rc = 1;
    }

    manifest.duration_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    try {
        emit_manifest(manifest, manifest_path);
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << '\n';
        if (rc == 0) rc = exit_input;
    }
    return rc;
}
