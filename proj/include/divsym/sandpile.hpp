#pragma once

/**
 * @file sandpile.hpp
 * @brief Coin robbing on a cycle: exact absorption law and seeded simulation.
 *
 * n coins sit on the vertices of an m-cycle, n < m. While some vertex holds at
 * least two coins, a policy picks one such vertex and moves one of its coins to
 * the left (index - 1 mod m) or right (index + 1 mod m) neighbour with
 * probability 1/2 each. The process stops when every vertex holds at most one
 * coin.
 *
 * exact_absorption explores the reachable states breadth-first and solves the
 * harmonic system p(s) = p(left(s))/2 + p(right(s))/2 over exact rationals
 * by sparse Gaussian elimination.
 */

#include "divsym/error.hpp"
#include "divsym/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

namespace divsym {

using Counts = std::vector<std::uint32_t>;

enum class Direction { left, right };

class CoinConfig {
public:
    CoinConfig() = default;

    explicit CoinConfig(Counts counts) : counts_(std::move(counts))
    {
        require(counts_.size() >= 2, "a coin configuration needs at least two vertices");
        require(total() < counts_.size(), "need fewer coins than vertices (at least one empty vertex at the end)");
    }

    std::size_t size() const { return counts_.size(); }
    std::uint32_t operator[](std::size_t v) const { return counts_[v]; }
    const Counts& counts() const { return counts_; }

    std::uint64_t total() const
    {
        return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
    }

    friend bool operator==(const CoinConfig&, const CoinConfig&) = default;
    friend auto operator<=>(const CoinConfig&, const CoinConfig&) = default;

private:
    friend CoinConfig rob(const CoinConfig&, std::size_t, Direction);
    Counts counts_;
};

inline std::size_t neighbour(std::size_t v, Direction dir, std::size_t m)
{
    return dir == Direction::left ? (v + m - 1) % m : (v + 1) % m;
}

inline CoinConfig rob(const CoinConfig& c, std::size_t v, Direction dir)
{
    require(v < c.size(), "vertex out of range");
    require(c[v] >= 2, "vertex " + std::to_string(v) + " holds fewer than two coins");
    CoinConfig next = c;
    --next.counts_[v];
    ++next.counts_[neighbour(v, dir, c.size())];
    return next;
}

inline bool is_final(const CoinConfig& c)
{
    return std::all_of(c.counts().begin(), c.counts().end(), [](std::uint32_t k) { return k <= 1; });
}

inline std::uint64_t splitmix64_mix(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// SplitMix64; satisfies UniformRandomBitGenerator.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()()
    {
        state_ += 0x9E3779B97F4A7C15ULL;
        return splitmix64_mix(state_);
    }

private:
    std::uint64_t state_;
};

/// Chooses which vertex to rob. Every choice is a function of the state alone.
class RobPolicy {
public:
    enum class Kind { lowest_index, highest_index, seeded };

    static RobPolicy lowest() { return RobPolicy(Kind::lowest_index, 0); }
    static RobPolicy highest() { return RobPolicy(Kind::highest_index, 0); }
    /// Pseudo-random but reproducible: hashes (seed, state).
    static RobPolicy seeded(std::uint64_t seed) { return RobPolicy(Kind::seeded, seed); }

    Kind kind() const { return kind_; }
    std::uint64_t seed() const { return seed_; }

    std::string name() const
    {
        switch (kind_) {
        case Kind::lowest_index: return "lowest";
        case Kind::highest_index: return "highest";
        case Kind::seeded: return "random";
        }
        return "unknown";
    }

    std::size_t select(const CoinConfig& c) const
    {
        std::vector<std::size_t> robbable;
        for (std::size_t v = 0; v < c.size(); ++v)
            if (c[v] >= 2) robbable.push_back(v);
        require(!robbable.empty(), "no vertex holds two coins");
        switch (kind_) {
        case Kind::lowest_index: return robbable.front();
        case Kind::highest_index: return robbable.back();
        case Kind::seeded: {
            std::uint64_t h = splitmix64_mix(seed_ ^ 0x2545F4914F6CDD1DULL);
            for (std::uint32_t k : c.counts()) h = splitmix64_mix(h ^ k);
            return robbable[h % robbable.size()];
        }
        }
        return robbable.front();
    }

    friend bool operator==(const RobPolicy&, const RobPolicy&) = default;

private:
    RobPolicy(Kind kind, std::uint64_t seed) : kind_(kind), seed_(seed) {}
    Kind kind_;
    std::uint64_t seed_;
};

/// Exact law of the final configuration.
struct AbsorptionResult {
    std::map<Counts, Rational> distribution;

    Rational total() const
    {
        Rational s = 0;
        for (const auto& [final_counts, p] : distribution) s += p;
        return s;
    }

    /// Probability that vertex v ends up empty.
    Rational vertex_empty(std::size_t v) const
    {
        Rational s = 0;
        for (const auto& [final_counts, p] : distribution)
            if (final_counts.at(v) == 0) s += p;
        return s;
    }

    /// Probability that the set of empty vertices is exactly `empty` (sorted).
    Rational empty_set(const std::vector<std::size_t>& empty) const
    {
        Rational s = 0;
        for (const auto& [final_counts, p] : distribution) {
            std::vector<std::size_t> zeros;
            for (std::size_t v = 0; v < final_counts.size(); ++v)
                if (final_counts[v] == 0) zeros.push_back(v);
            if (zeros == empty) s += p;
        }
        return s;
    }

    friend bool operator==(const AbsorptionResult&, const AbsorptionResult&) = default;
};

struct SolverOptions {
    std::size_t max_states = 100000;
};

namespace detail {

struct CountsHash {
    std::size_t operator()(const Counts& c) const
    {
        std::uint64_t h = 0x51ED270B27ULL;
        for (std::uint32_t k : c) h = splitmix64_mix(h ^ k);
        return static_cast<std::size_t>(h);
    }
};

} // namespace detail

/**
 * Absorption laws for every state reachable from `start` under `policy`.
 *
 * Each non-final state has two successors (left and right move of the policy's
 * vertex), each with probability 1/2. Transient states are numbered in BFS
 * order and the system (I - Q) X = R is solved by sparse Gauss-Jordan
 * elimination without pivoting (I - Q is a nonsingular M-matrix).
 */
inline std::map<Counts, AbsorptionResult> absorption_all_states(const CoinConfig& start,
                                                                const RobPolicy& policy = RobPolicy::lowest(),
                                                                const SolverOptions& opts = {})
{
    std::vector<CoinConfig> states{start};
    std::unordered_map<Counts, std::size_t, detail::CountsHash> index{{start.counts(), 0}};
    std::vector<std::pair<std::size_t, std::size_t>> successors;  // per state, only if transient
    std::vector<bool> transient;

    for (std::size_t s = 0; s < states.size(); ++s) {
        const CoinConfig cur = states[s];
        if (is_final(cur)) {
            transient.push_back(false);
            successors.emplace_back(0, 0);
            continue;
        }
        transient.push_back(true);
        const std::size_t v = policy.select(cur);
        std::size_t next_ids[2];
        const Direction dirs[2] = {Direction::left, Direction::right};
        for (int d = 0; d < 2; ++d) {
            CoinConfig nxt = rob(cur, v, dirs[d]);
            auto [it, inserted] = index.try_emplace(nxt.counts(), states.size());
            if (inserted) {
                if (states.size() >= opts.max_states) {
                    throw cap_exceeded("reachable state count exceeds the cap of " + std::to_string(opts.max_states));
                }
                states.push_back(std::move(nxt));
            }
            next_ids[d] = it->second;
        }
        successors.emplace_back(next_ids[0], next_ids[1]);
    }

    // Number transient and final states separately.
    std::vector<std::size_t> local(states.size());
    std::vector<std::size_t> transient_ids, final_ids;
    for (std::size_t s = 0; s < states.size(); ++s) {
        if (transient[s]) {
            local[s] = transient_ids.size();
            transient_ids.push_back(s);
        } else {
            local[s] = final_ids.size();
            final_ids.push_back(s);
        }
    }
    const std::size_t t_count = transient_ids.size();
    const Rational half = make_rational(1, 2);

    // Columns [0, t_count) are unknowns, [t_count, t_count + #finals) right-hand sides.
    using Row = std::map<std::size_t, Rational>;
    std::vector<Row> rows(t_count);
    std::vector<std::set<std::size_t>> column_rows(t_count);
    auto add_entry = [&](std::size_t r, std::size_t c, const Rational& v) {
        Rational& cell = rows[r][c];
        cell += v;
        if (cell == 0) {
            rows[r].erase(c);
            if (c < t_count) column_rows[c].erase(r);
        } else if (c < t_count) {
            column_rows[c].insert(r);
        }
    };
    for (std::size_t r = 0; r < t_count; ++r) {
        const std::size_t s = transient_ids[r];
        add_entry(r, r, 1);
        for (std::size_t nxt : {successors[s].first, successors[s].second}) {
            if (transient[nxt]) add_entry(r, local[nxt], -half);
            else add_entry(r, t_count + local[nxt], half);
        }
    }

    for (std::size_t k = 0; k < t_count; ++k) {
        const auto pivot_it = rows[k].find(k);
        if (pivot_it == rows[k].end()) throw verification_failure("singular absorption system");
        const Rational inv = 1 / pivot_it->second;
        for (auto& [c, v] : rows[k]) v *= inv;

        std::vector<std::size_t> targets(column_rows[k].begin(), column_rows[k].end());
        const Row pivot_row = rows[k];
        for (std::size_t r : targets) {
            if (r == k) continue;
            const Rational factor = rows[r].at(k);
            for (const auto& [c, v] : pivot_row) add_entry(r, c, -factor * v);
        }
    }

    // After Gauss-Jordan each row reads X_r = rhs columns.
    std::map<Counts, AbsorptionResult> out;
    for (std::size_t r = 0; r < t_count; ++r) {
        AbsorptionResult res;
        for (const auto& [c, v] : rows[r]) {
            if (c == r) continue;
            if (c < t_count) throw verification_failure("elimination left a coupled unknown");
            res.distribution[states[final_ids[c - t_count]].counts()] = v;
        }
        out.emplace(states[transient_ids[r]].counts(), std::move(res));
    }
    for (std::size_t s : final_ids) {
        AbsorptionResult res;
        res.distribution[states[s].counts()] = 1;
        out.emplace(states[s].counts(), std::move(res));
    }
    return out;
}

inline AbsorptionResult exact_absorption(const CoinConfig& c, const RobPolicy& policy = RobPolicy::lowest(),
                                         const SolverOptions& opts = {})
{
    auto all = absorption_all_states(c, policy, opts);
    return std::move(all.at(c.counts()));
}

inline Rational prob_vertex_empty(const CoinConfig& c, std::size_t v, const RobPolicy& policy = RobPolicy::lowest(),
                                  const SolverOptions& opts = {})
{
    require(v < c.size(), "vertex out of range");
    return exact_absorption(c, policy, opts).vertex_empty(v);
}

/// Exact comparison of the absorption laws under two policies.
inline bool policy_invariance_check(const CoinConfig& c, const RobPolicy& a, const RobPolicy& b,
                                    const SolverOptions& opts = {})
{
    return exact_absorption(c, a, opts) == exact_absorption(c, b, opts);
}

struct SimulationOptions {
    unsigned workers = 0;
    std::uint64_t max_steps_per_trial = 10'000'000;
};

struct SimulationResult {
    std::uint64_t trials = 0;
    std::map<Counts, std::uint64_t> hits;

    double frequency(const Counts& final_counts) const
    {
        auto it = hits.find(final_counts);
        return it == hits.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(trials);
    }

    std::uint64_t vertex_empty_hits(std::size_t v) const
    {
        std::uint64_t k = 0;
        for (const auto& [final_counts, h] : hits)
            if (final_counts.at(v) == 0) k += h;
        return k;
    }

    /// Binomial standard error of a frequency estimated from `trials` runs.
    double standard_error(double freq) const
    {
        return std::sqrt(freq * (1.0 - freq) / static_cast<double>(trials));
    }
};

/// Generator for trial `trial` of a run seeded with `seed`.
inline SplitMix64 trial_stream(std::uint64_t seed, std::uint64_t trial)
{
    return SplitMix64(splitmix64_mix(seed) ^ splitmix64_mix(trial + 0x632BE59BD9B4E019ULL));
}

/// Runs one trajectory to termination; returns the final counts.
inline Counts run_trial(const CoinConfig& start, const RobPolicy& policy, SplitMix64& rng, std::uint64_t max_steps)
{
    CoinConfig cur = start;
    for (std::uint64_t step = 0; !is_final(cur); ++step) {
        if (step >= max_steps) {
            throw cap_exceeded("trajectory did not terminate within " + std::to_string(max_steps) + " steps");
        }
        const std::size_t v = policy.select(cur);
        cur = rob(cur, v, (rng() >> 63) ? Direction::right : Direction::left);
    }
    return cur.counts();
}

/**
 * Monte Carlo estimate of the final-configuration law. Trial i draws from
 * trial_stream(seed, i), so the tallies depend only on (config, seed, trials,
 * policy) and not on how trials are spread over workers.
 */
inline SimulationResult simulate(const CoinConfig& c, std::uint64_t seed, std::uint64_t trials,
                                 const RobPolicy& policy = RobPolicy::lowest(), const SimulationOptions& opts = {})
{
    require(trials >= 1, "need at least one trial");
    unsigned workers = opts.workers != 0 ? opts.workers : std::max(1u, std::thread::hardware_concurrency());
    if (trials < 1000) workers = 1;
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, trials));

    std::vector<std::map<Counts, std::uint64_t>> tallies(workers);
    std::vector<std::exception_ptr> errors(workers);
    auto work = [&](unsigned w) {
        try {
            const std::uint64_t first = trials * w / workers, last = trials * (w + 1) / workers;
            for (std::uint64_t i = first; i < last; ++i) {
                SplitMix64 rng = trial_stream(seed, i);
                ++tallies[w][run_trial(c, policy, rng, opts.max_steps_per_trial)];
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    SimulationResult result;
    result.trials = trials;
    for (const auto& tally : tallies)
        for (const auto& [final_counts, h] : tally) result.hits[final_counts] += h;
    return result;
}

} // namespace divsym
