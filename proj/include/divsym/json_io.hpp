#pragma once

/**
 * @file json_io.hpp
 * @brief JSON readers and writers for every artifact the CLI consumes or emits.
 *
 * Every document carries "format": 1. Readers accept documents without the
 * field and reject any other version. Exact rationals travel as a pair of
 * decimal strings [num, den]; readers also accept plain JSON integers.
 *
 * Requires nlohmann/json (<json.hpp>) on the include path.
 */

#include "divsym/error.hpp"
#include "divsym/graph.hpp"
#include "divsym/polynomial.hpp"
#include "divsym/rational.hpp"
#include "divsym/sandpile.hpp"
#include "divsym/tree.hpp"

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace divsym::io {

using json = nlohmann::json;

inline constexpr int format_version = 1;

namespace detail {

inline const json& field(const json& j, const char* key, const std::string& what)
{
    if (!j.is_object()) throw input_error(what + ": expected a JSON object");
    auto it = j.find(key);
    if (it == j.end()) throw input_error(what + ": missing field \"" + key + "\"");
    return *it;
}

inline void check_format(const json& j, const std::string& what)
{
    if (!j.is_object()) return;
    auto it = j.find("format");
    if (it == j.end()) return;
    if (!it->is_number_integer() || it->get<long long>() != format_version) {
        throw input_error(what + ": unsupported format version " + it->dump());
    }
}

inline std::uint64_t as_unsigned(const json& v, const std::string& what)
{
    if (!v.is_number_integer() || v.get<long long>() < 0) throw input_error(what + ": expected a nonnegative integer");
    return v.get<std::uint64_t>();
}

inline long as_long(const json& v, const std::string& what)
{
    if (!v.is_number_integer()) throw input_error(what + ": expected an integer");
    return v.get<long>();
}

inline Integer as_integer(const json& v, const std::string& what)
{
    if (v.is_number_integer()) return Integer(std::to_string(v.get<long long>()));
    if (!v.is_string()) throw input_error(what + ": expected an integer or decimal string");
    const std::string s = v.get<std::string>();
    const std::size_t digits_from = !s.empty() && (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (s.size() == digits_from || s.find_first_not_of("0123456789", digits_from) != std::string::npos) {
        throw input_error(what + ": \"" + s + "\" is not a decimal integer");
    }
    return Integer(s[0] == '+' ? s.substr(1) : s);
}

template <typename Fn>
auto rethrow_as_input(const std::string& what, Fn&& fn)
{
    try {
        return fn();
    } catch (const precondition_error& e) {
        throw input_error(what + ": " + e.what());
    }
}

} // namespace detail

inline json rational_to_json(const Rational& q)
{
    const auto [num, den] = to_string_pair(q);
    return json::array({num, den});
}

inline Rational rational_from_json(const json& j, const std::string& what = "rational")
{
    if (j.is_number_integer() || j.is_string()) return Rational(detail::as_integer(j, what));
    if (!j.is_array() || j.size() != 2) throw input_error(what + ": expected [numerator, denominator]");
    const Integer num = detail::as_integer(j[0], what), den = detail::as_integer(j[1], what);
    if (den == 0) throw input_error(what + ": zero denominator");
    return make_rational(num, den);
}

inline json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw input_error("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw input_error(path + ": " + e.what());
    }
}

inline json parse_json(const std::string& text, const std::string& what = "input")
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw input_error(what + ": " + e.what());
    }
}

// Polynomial: {"m": int, "terms": [{"coef": [num, den], "exp": [int, ...]}, ...]}

inline json polynomial_to_json(const Polynomial& p)
{
    json terms = json::array();
    for (const auto& [mono, coef] : p.terms())
        terms.push_back({{"coef", rational_to_json(coef)}, {"exp", mono.exponents()}});
    return {{"format", format_version}, {"m", p.variables()}, {"terms", terms}};
}

inline Polynomial polynomial_from_json(const json& j)
{
    const std::string what = "polynomial";
    detail::check_format(j, what);
    const std::size_t m = detail::as_unsigned(detail::field(j, "m", what), what + ".m");
    const json& terms = detail::field(j, "terms", what);
    if (!terms.is_array()) throw input_error(what + ".terms: expected an array");
    Polynomial p(m);
    for (const json& t : terms) {
        const Rational coef = rational_from_json(detail::field(t, "coef", what + " term"), what + " coefficient");
        const json& exp = detail::field(t, "exp", what + " term");
        if (!exp.is_array() || exp.size() != m) {
            throw input_error(what + ": exponent vector must have length " + std::to_string(m));
        }
        std::vector<std::uint32_t> e;
        for (const json& k : exp) {
            const auto v = detail::as_unsigned(k, what + " exponent");
            if (v > std::numeric_limits<std::uint32_t>::max()) throw input_error(what + ": exponent too large");
            e.push_back(static_cast<std::uint32_t>(v));
        }
        p.add_term(Monomial(std::move(e)), coef);
    }
    return p;
}

// Graph: {"m": int, "edges": [[i, j], ...]} with i < j.

inline json graph_to_json(const Graph& g)
{
    json edges = json::array();
    for (const Edge& e : g.edges()) edges.push_back({e.lo, e.hi});
    return {{"format", format_version}, {"m", g.vertices()}, {"edges", edges}};
}

inline Graph graph_from_json(const json& j)
{
    const std::string what = "graph";
    detail::check_format(j, what);
    const std::size_t m = detail::as_unsigned(detail::field(j, "m", what), what + ".m");
    const json& edges = detail::field(j, "edges", what);
    if (!edges.is_array()) throw input_error(what + ".edges: expected an array");
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (const json& e : edges) {
        if (!e.is_array() || e.size() != 2) throw input_error(what + ": each edge must be [i, j]");
        const std::size_t a = detail::as_unsigned(e[0], what + " edge"), b = detail::as_unsigned(e[1], what + " edge");
        if (a >= b) {
            throw input_error(what + ": edge [" + std::to_string(a) + ", " + std::to_string(b) + "] must satisfy i < j");
        }
        pairs.emplace_back(a, b);
    }
    return detail::rethrow_as_input(what, [&] { return Graph(m, pairs); });
}

// Weights: {"w": [int, ...]}

inline json weights_to_json(const WeightAssignment& w)
{
    return {{"format", format_version}, {"w", w.values()}};
}

inline WeightAssignment weights_from_json(const json& j)
{
    const std::string what = "weights";
    detail::check_format(j, what);
    const json& arr = detail::field(j, "w", what);
    if (!arr.is_array()) throw input_error(what + ".w: expected an array");
    std::vector<long> w;
    for (const json& v : arr) w.push_back(detail::as_long(v, what + " entry"));
    return detail::rethrow_as_input(what, [&] { return WeightAssignment(std::move(w)); });
}

// Coin configuration: {"counts": [int, ...]}

inline json config_to_json(const CoinConfig& c)
{
    return {{"format", format_version}, {"counts", c.counts()}};
}

inline Counts counts_from_json(const json& arr, const std::string& what)
{
    if (!arr.is_array()) throw input_error(what + ": expected an array");
    Counts counts;
    for (const json& v : arr) {
        const auto k = detail::as_unsigned(v, what + " entry");
        if (k > std::numeric_limits<std::uint32_t>::max()) throw input_error(what + ": count too large");
        counts.push_back(static_cast<std::uint32_t>(k));
    }
    return counts;
}

inline CoinConfig config_from_json(const json& j)
{
    const std::string what = "config";
    detail::check_format(j, what);
    Counts counts = counts_from_json(detail::field(j, "counts", what), what + ".counts");
    return detail::rethrow_as_input(what, [&] { return CoinConfig(std::move(counts)); });
}

// Absorption law: [{"final": [...], "prob": [num, den]}, ...]

inline json absorption_to_json(const AbsorptionResult& r)
{
    json out = json::array();
    for (const auto& [fin, p] : r.distribution) out.push_back({{"final", fin}, {"prob", rational_to_json(p)}});
    return out;
}

inline AbsorptionResult absorption_from_json(const json& j)
{
    if (!j.is_array()) throw input_error("absorption result: expected an array");
    AbsorptionResult r;
    for (const json& e : j) {
        Counts fin = counts_from_json(detail::field(e, "final", "absorption entry"), "final");
        r.distribution[std::move(fin)] = rational_from_json(detail::field(e, "prob", "absorption entry"), "prob");
    }
    return r;
}

inline json simulation_to_json(const SimulationResult& s)
{
    json results = json::array();
    for (const auto& [fin, hits] : s.hits) {
        const double f = s.frequency(fin);
        results.push_back({{"final", fin}, {"hits", hits}, {"freq", f}, {"stderr", s.standard_error(f)}});
    }
    return {{"format", format_version}, {"trials", s.trials}, {"results", results}};
}

/// Everything needed to rerun a CLI invocation.
struct RunManifest {
    std::string command;
    json inputs = json::object();
    std::optional<std::uint64_t> seed;
    json caps = json::object();
    std::string version;
    double duration_ms = 0.0;

    friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

inline json manifest_to_json(const RunManifest& m)
{
    json j = {{"format", format_version}, {"command", m.command}, {"inputs", m.inputs},
              {"caps", m.caps},           {"version", m.version}, {"duration_ms", m.duration_ms}};
    j["seed"] = m.seed ? json(*m.seed) : json(nullptr);
    return j;
}

inline RunManifest manifest_from_json(const json& j)
{
    const std::string what = "manifest";
    detail::check_format(j, what);
    RunManifest m;
    try {
        m.command = detail::field(j, "command", what).get<std::string>();
        m.inputs = detail::field(j, "inputs", what);
        m.caps = detail::field(j, "caps", what);
        m.version = detail::field(j, "version", what).get<std::string>();
        m.duration_ms = detail::field(j, "duration_ms", what).get<double>();
        const json& seed = detail::field(j, "seed", what);
        if (!seed.is_null()) m.seed = seed.get<std::uint64_t>();
    } catch (const json::type_error& e) {
        throw input_error(what + ": " + e.what());
    }
    return m;
}

} // namespace divsym::io
