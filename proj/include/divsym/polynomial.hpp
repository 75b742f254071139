#pragma once

/**
 * @file polynomial.hpp
 * @brief Sparse multivariate polynomials with exact rational coefficients.
 *
 * A polynomial lives in a fixed ambient ring Q[x_0, ..., x_{m-1}]. Terms are
 * kept in a std::map keyed by exponent vectors, so iteration order is
 * lexicographic on exponents and every printed form is reproducible.
 */

#include "divsym/error.hpp"
#include "divsym/rational.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace divsym {

class Monomial {
public:
    using exponent_type = std::uint32_t;

    Monomial() = default;
    explicit Monomial(std::size_t variables) : exps_(variables, 0) {}
    explicit Monomial(std::vector<exponent_type> exps) : exps_(std::move(exps)) {}
    Monomial(std::initializer_list<exponent_type> exps) : exps_(exps) {}

    std::size_t size() const { return exps_.size(); }
    exponent_type operator[](std::size_t i) const { return exps_[i]; }
    exponent_type& operator[](std::size_t i) { return exps_[i]; }

    std::size_t degree() const
    {
        return std::accumulate(exps_.begin(), exps_.end(), std::size_t{0});
    }

    const std::vector<exponent_type>& exponents() const { return exps_; }
    auto begin() const { return exps_.begin(); }
    auto end() const { return exps_.end(); }

    friend Monomial operator*(const Monomial& a, const Monomial& b)
    {
        require(a.size() == b.size(), "monomial variable counts differ");
        Monomial r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r.exps_[i] = a.exps_[i] + b.exps_[i];
        return r;
    }

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend auto operator<=>(const Monomial&, const Monomial&) = default;

private:
    std::vector<exponent_type> exps_;
};

using Point = std::vector<Rational>;

/// Bijection of {0, ..., m-1}; images[i] is the image of i.
class Permutation {
public:
    Permutation() = default;

    explicit Permutation(std::vector<std::size_t> images) : images_(std::move(images))
    {
        std::vector<bool> seen(images_.size(), false);
        for (std::size_t v : images_) {
            require(v < images_.size() && !seen[v], "permutation images must be a bijection");
            seen[v] = true;
        }
    }

    static Permutation identity(std::size_t m)
    {
        std::vector<std::size_t> images(m);
        std::iota(images.begin(), images.end(), std::size_t{0});
        return Permutation(std::move(images));
    }

    static Permutation transposition(std::size_t m, std::size_t a, std::size_t b)
    {
        require(a < m && b < m, "transposition index out of range");
        Permutation p = identity(m);
        std::swap(p.images_[a], p.images_[b]);
        return p;
    }

    std::size_t size() const { return images_.size(); }
    std::size_t operator()(std::size_t i) const { return images_[i]; }
    const std::vector<std::size_t>& images() const { return images_; }

    Permutation inverse() const
    {
        std::vector<std::size_t> inv(images_.size());
        for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = i;
        return Permutation(std::move(inv));
    }

    /// (outer ∘ inner)(i) = outer(inner(i)).
    friend Permutation compose(const Permutation& outer, const Permutation& inner)
    {
        require(outer.size() == inner.size(), "composing permutations of different sizes");
        std::vector<std::size_t> r(inner.size());
        for (std::size_t i = 0; i < inner.size(); ++i) r[i] = outer(inner(i));
        return Permutation(std::move(r));
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<std::size_t> images_;
};

class Polynomial {
public:
    using term_map = std::map<Monomial, Rational>;

    explicit Polynomial(std::size_t variables = 0) : m_(variables) {}

    static Polynomial constant(std::size_t variables, const Rational& c)
    {
        Polynomial p(variables);
        p.add_term(Monomial(variables), c);
        return p;
    }

    static Polynomial variable(std::size_t variables, std::size_t i)
    {
        require(i < variables, "variable index out of range");
        Monomial mono(variables);
        mono[i] = 1;
        return from_monomial(std::move(mono));
    }

    static Polynomial from_monomial(Monomial mono, const Rational& c = 1)
    {
        Polynomial p(mono.size());
        p.add_term(std::move(mono), c);
        return p;
    }

    std::size_t variables() const { return m_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const term_map& terms() const { return terms_; }

    /// Total degree; std::nullopt stands for the zero polynomial's -infinity.
    std::optional<std::size_t> degree() const
    {
        if (terms_.empty()) return std::nullopt;
        std::size_t d = 0;
        for (const auto& [mono, coef] : terms_) d = std::max(d, mono.degree());
        return d;
    }

    bool is_homogeneous() const
    {
        if (terms_.empty()) return true;
        const std::size_t d = terms_.begin()->first.degree();
        return std::all_of(terms_.begin(), terms_.end(),
                           [d](const auto& t) { return t.first.degree() == d; });
    }

    Rational coefficient(const Monomial& mono) const
    {
        auto it = terms_.find(mono);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Adds c·mono in place, dropping the term if it cancels.
    void add_term(Monomial mono, const Rational& c)
    {
        require(mono.size() == m_, "monomial length does not match variable count");
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(std::move(mono), c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Polynomial& operator+=(const Polynomial& o)
    {
        check_same_ring(o);
        for (const auto& [mono, coef] : o.terms_) add_term(mono, coef);
        return *this;
    }

    Polynomial& operator-=(const Polynomial& o)
    {
        check_same_ring(o);
        for (const auto& [mono, coef] : o.terms_) add_term(mono, -coef);
        return *this;
    }

    Polynomial& operator*=(const Rational& c)
    {
        if (c == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [mono, coef] : terms_) coef *= c;
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
    friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
    friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        a.check_same_ring(b);
        Polynomial r(a.m_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }

    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend bool operator==(const Polynomial& a, const Polynomial& b)
    {
        return a.m_ == b.m_ && a.terms_ == b.terms_;
    }

private:
    void check_same_ring(const Polynomial& o) const
    {
        require(m_ == o.m_, "polynomials over different variable counts");
    }

    std::size_t m_ = 0;
    term_map terms_;
};

inline Polynomial poly_add(const Polynomial& a, const Polynomial& b) { return a + b; }
inline Polynomial poly_mul(const Polynomial& a, const Polynomial& b) { return a * b; }
inline Polynomial poly_scale(const Polynomial& a, const Rational& c) { return a * c; }

inline Polynomial pow(const Polynomial& base, std::size_t k)
{
    Polynomial result = Polynomial::constant(base.variables(), 1);
    Polynomial b = base;
    while (k > 0) {
        if (k & 1) result *= b;
        k >>= 1;
        if (k > 0) b *= b;
    }
    return result;
}

/// Replaces x_i by x_{pi(i)} in every term.
inline Polynomial permute_variables(const Polynomial& p, const Permutation& pi)
{
    require(pi.size() == p.variables(), "permutation length does not match variable count");
    Polynomial r(p.variables());
    for (const auto& [mono, coef] : p.terms()) {
        Monomial moved(mono.size());
        for (std::size_t i = 0; i < mono.size(); ++i) moved[pi(i)] = mono[i];
        r.add_term(std::move(moved), coef);
    }
    return r;
}

/// Re-homes p into a ring with `variables` variables, sending x_i to x_{offset+i}.
inline Polynomial embed(const Polynomial& p, std::size_t variables, std::size_t offset)
{
    require(offset + p.variables() <= variables, "embedding does not fit the target ring");
    Polynomial r(variables);
    for (const auto& [mono, coef] : p.terms()) {
        Monomial moved(variables);
        for (std::size_t i = 0; i < mono.size(); ++i) moved[offset + i] = mono[i];
        r.add_term(std::move(moved), coef);
    }
    return r;
}

inline Rational evaluate(const Polynomial& p, std::span<const Rational> pt)
{
    require(pt.size() == p.variables(), "point length does not match variable count");
    Rational total = 0;
    Rational term;
    Rational power;
    for (const auto& [mono, coef] : p.terms()) {
        term = coef;
        for (std::size_t i = 0; i < mono.size(); ++i) {
            if (mono[i] == 0) continue;
            mpz_pow_ui(power.get_num_mpz_t(), pt[i].get_num_mpz_t(), mono[i]);
            mpz_pow_ui(power.get_den_mpz_t(), pt[i].get_den_mpz_t(), mono[i]);
            term *= power;
        }
        total += term;
    }
    return total;
}

/// Sum of x_i over the given indices.
inline Polynomial variable_sum(std::size_t variables, std::span<const std::size_t> indices)
{
    Polynomial r(variables);
    for (std::size_t i : indices) r += Polynomial::variable(variables, i);
    return r;
}

/// Expanded product of (x_0 + ... + x_i)^{c_i} over i.
inline Polynomial prefix_sum_monomial(std::span<const std::uint32_t> c)
{
    require(!c.empty(), "prefix-sum exponent sequence must be non-empty");
    const std::size_t m = c.size();
    Polynomial result = Polynomial::constant(m, 1);
    Polynomial prefix(m);
    for (std::size_t i = 0; i < m; ++i) {
        prefix += Polynomial::variable(m, i);
        if (c[i] > 0) result *= pow(prefix, c[i]);
    }
    return result;
}

inline std::string to_string(const Polynomial& p)
{
    if (p.is_zero()) return "0";
    std::string out;
    // Highest lexicographic term first reads more naturally (x0^2 before x1^2).
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [mono, coef] = *it;
        std::string c = to_string(coef);
        const bool negative = coef < 0;
        if (negative) c.erase(0, 1);
        if (out.empty()) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        std::string vars;
        for (std::size_t i = 0; i < mono.size(); ++i) {
            if (mono[i] == 0) continue;
            if (!vars.empty()) vars += "*";
            vars += "x" + std::to_string(i);
            if (mono[i] > 1) vars += "^" + std::to_string(mono[i]);
        }
        if (vars.empty()) out += c;
        else if (c == "1") out += vars;
        else out += c + "*" + vars;
    }
    return out;
}

} // namespace divsym
