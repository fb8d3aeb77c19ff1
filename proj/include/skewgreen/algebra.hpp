#pragma once

// Sparse polynomials in one and two variables and the polynomial skew
// products f(z, w) = (p(z), q(z, w)) built from them.

#include <algorithm>
#include <compare>
#include <complex>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "skewgreen/error.hpp"
#include "skewgreen/exact_complex.hpp"

namespace skewgreen {

inline constexpr std::size_t kDefaultTermBudget = 2'000'000;

struct ComposeOptions {
    std::size_t term_budget = kDefaultTermBudget;
};

namespace detail {

template <class T>
T ipow(T base, int e) {
    T result(1);
    while (e > 0) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e > 0) base *= base;
    }
    return result;
}

inline void check_budget(std::size_t terms, const ComposeOptions& opts) {
    if (terms > opts.term_budget) throw TermBudgetExceeded(terms, opts.term_budget);
}

}  // namespace detail

/// One-variable sparse polynomial. Stored coefficients are never zero.
template <class C>
class Poly1 {
public:
    using Coeff = C;
    using Traits = CoeffTraits<C>;
    static constexpr int kZeroDegree = -1;

    Poly1() = default;

    static Poly1 monomial(int e, C c = Traits::one()) {
        Poly1 p;
        p.add_term(e, std::move(c));
        return p;
    }
    static Poly1 constant(C c) { return monomial(0, std::move(c)); }

    void add_term(int e, const C& c) {
        if (Traits::is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (Traits::is_zero(it->second)) terms_.erase(it);
        }
    }

    const std::map<int, C>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    int degree() const noexcept { return terms_.empty() ? kZeroDegree : terms_.rbegin()->first; }
    int min_degree() const noexcept { return terms_.empty() ? kZeroDegree : terms_.begin()->first; }

    C coefficient(int e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? C(0) : it->second;
    }
    C leading() const { return terms_.empty() ? C(0) : terms_.rbegin()->second; }

    /// Horner evaluation over the sorted exponents, skipping gaps by powers.
    template <class Z>
    Z operator()(const Z& z) const {
        if (terms_.empty()) return Z(0);
        auto it = terms_.rbegin();
        Z acc = Z(it->second);
        int prev = it->first;
        for (++it; it != terms_.rend(); ++it) {
            acc = acc * detail::ipow(z, prev - it->first) + Z(it->second);
            prev = it->first;
        }
        return acc * detail::ipow(z, prev);
    }

    Complex eval(const Complex& z) const {
        if constexpr (Traits::exact) {
            return to_floating()(z);
        } else {
            return (*this)(z);
        }
    }

    Poly1<Complex> to_floating() const {
        Poly1<Complex> out;
        for (const auto& [e, c] : terms_) out.add_term(e, Traits::to_complex(c));
        return out;
    }

    Poly1& operator+=(const Poly1& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    friend Poly1 operator+(Poly1 a, const Poly1& b) { return a += b; }

    Poly1 scaled(const C& s) const {
        Poly1 out;
        for (const auto& [e, c] : terms_) out.add_term(e, c * s);
        return out;
    }

    Poly1 multiply(const Poly1& o, const ComposeOptions& opts = {}) const {
        Poly1 out;
        for (const auto& [e1, c1] : terms_)
            for (const auto& [e2, c2] : o.terms_) out.add_term(e1 + e2, c1 * c2);
        detail::check_budget(out.size(), opts);
        return out;
    }
    friend Poly1 operator*(const Poly1& a, const Poly1& b) { return a.multiply(b); }

    /// this(inner(z)).
    Poly1 compose(const Poly1& inner, const ComposeOptions& opts = {}) const {
        Poly1 acc;
        if (terms_.empty()) return acc;
        auto it = terms_.rbegin();
        acc = constant(it->second);
        int prev = it->first;
        for (++it; it != terms_.rend(); ++it) {
            for (int k = 0; k < prev - it->first; ++k) acc = acc.multiply(inner, opts);
            acc.add_term(0, it->second);
            prev = it->first;
        }
        for (int k = 0; k < prev; ++k) acc = acc.multiply(inner, opts);
        return acc;
    }

    friend bool operator==(const Poly1& a, const Poly1& b) { return a.terms_ == b.terms_; }

private:
    std::map<int, C> terms_;
};

/// Exponent pair of z^z w^w, ordered by w-degree first.
struct Mono {
    int z = 0;
    int w = 0;
    friend auto operator<=>(const Mono& a, const Mono& b) {
        if (auto c = a.w <=> b.w; c != 0) return c;
        return a.z <=> b.z;
    }
    friend bool operator==(const Mono&, const Mono&) = default;
};

/// Two-variable sparse polynomial in (z, w). Stored coefficients are never zero.
template <class C>
class Poly2 {
public:
    using Coeff = C;
    using Traits = CoeffTraits<C>;

    Poly2() = default;

    static Poly2 monomial(int zexp, int wexp, C c = Traits::one()) {
        Poly2 q;
        q.add_term({zexp, wexp}, std::move(c));
        return q;
    }

    /// Embeds a polynomial in z.
    static Poly2 from_z(const Poly1<C>& p) {
        Poly2 q;
        for (const auto& [e, c] : p.terms()) q.add_term({e, 0}, c);
        return q;
    }

    void add_term(Mono m, const C& c) {
        if (Traits::is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (Traits::is_zero(it->second)) terms_.erase(it);
        }
    }

    const std::map<Mono, C>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    int deg_w() const noexcept { return terms_.empty() ? -1 : terms_.rbegin()->first.w; }
    int deg_z() const noexcept {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, m.z);
        return d;
    }
    int total_degree() const noexcept {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, m.z + m.w);
        return d;
    }

    C coefficient(Mono m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? C(0) : it->second;
    }

    /// Coefficient polynomial of w^m.
    Poly1<C> w_coefficient(int m) const {
        Poly1<C> out;
        for (auto it = terms_.lower_bound({0, m}); it != terms_.end() && it->first.w == m; ++it)
            out.add_term(it->first.z, it->second);
        return out;
    }

    template <class Z>
    Z operator()(const Z& z, const Z& w) const {
        if (terms_.empty()) return Z(0);
        // Horner in w; each w-coefficient is a polynomial in z.
        Z acc(0);
        int prev_w = terms_.rbegin()->first.w;
        auto it = terms_.rbegin();
        while (it != terms_.rend()) {
            int m = it->first.w;
            acc = acc * detail::ipow(w, prev_w - m);
            Z coeff(0);
            Z zpow(1);
            int zprev = 0;
            // Terms of one w-degree arrive with descending z-exponent.
            std::vector<std::pair<int, const C*>> group;
            for (; it != terms_.rend() && it->first.w == m; ++it) group.emplace_back(it->first.z, &it->second);
            for (auto g = group.rbegin(); g != group.rend(); ++g) {
                zpow = zpow * detail::ipow(z, g->first - zprev);
                zprev = g->first;
                coeff = coeff + Z(*g->second) * zpow;
            }
            acc = acc + coeff;
            prev_w = m;
        }
        return acc * detail::ipow(w, prev_w);
    }

    Complex eval(const Complex& z, const Complex& w) const {
        if constexpr (Traits::exact) {
            return to_floating()(z, w);
        } else {
            return (*this)(z, w);
        }
    }

    Poly2<Complex> to_floating() const {
        Poly2<Complex> out;
        for (const auto& [m, c] : terms_) out.add_term(m, Traits::to_complex(c));
        return out;
    }

    Poly2& operator+=(const Poly2& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }

    Poly2 scaled(const C& s) const {
        Poly2 out;
        for (const auto& [m, c] : terms_) out.add_term(m, c * s);
        return out;
    }

    Poly2 multiply(const Poly2& o, const ComposeOptions& opts = {}) const {
        Poly2 out;
        for (const auto& [m1, c1] : terms_)
            for (const auto& [m2, c2] : o.terms_) out.add_term({m1.z + m2.z, m1.w + m2.w}, c1 * c2);
        detail::check_budget(out.size(), opts);
        return out;
    }
    friend Poly2 operator*(const Poly2& a, const Poly2& b) { return a.multiply(b); }

    friend bool operator==(const Poly2& a, const Poly2& b) { return a.terms_ == b.terms_; }

private:
    std::map<Mono, C> terms_;
};

/// f(z, w) = (p(z), q(z, w)) with deg p = delta >= 2 and deg_w q = d >= 2.
template <class C>
class SkewProduct {
public:
    using Coeff = C;

    SkewProduct(Poly1<C> p, Poly2<C> q) : p_(std::move(p)), q_(std::move(q)) {
        delta_ = p_.degree();
        d_ = q_.deg_w();
        if (delta_ < 2 || d_ < 2) throw DomainError("delta >= 2 and d >= 2 required");
        b_ = q_.w_coefficient(d_);
        gamma_ = b_.degree();
    }

    const Poly1<C>& p() const noexcept { return p_; }
    const Poly2<C>& q() const noexcept { return q_; }
    /// Coefficient polynomial of w^d.
    const Poly1<C>& b() const noexcept { return b_; }
    int delta() const noexcept { return delta_; }
    int d() const noexcept { return d_; }
    int gamma() const noexcept { return gamma_; }
    int lambda() const noexcept { return std::max(delta_, d_); }

    /// True when q = b(z) w^d.
    bool is_pure_w_power() const { return q_.size() == b_.size(); }

    SkewProduct<Complex> to_floating() const {
        return SkewProduct<Complex>(p_.to_floating(), q_.to_floating());
    }

    friend bool operator==(const SkewProduct& a, const SkewProduct& b) {
        return a.p_ == b.p_ && a.q_ == b.q_;
    }

private:
    Poly1<C> p_;
    Poly2<C> q_;
    Poly1<C> b_;
    int delta_ = 0;
    int d_ = 0;
    int gamma_ = 0;
};

using ExactSkewProduct = SkewProduct<ExactComplex>;
using FloatSkewProduct = SkewProduct<Complex>;

template <class C>
C eval_poly1(const Poly1<C>& p, const C& z) {
    return p(z);
}

template <class C>
C eval_poly2(const Poly2<C>& q, const C& z, const C& w) {
    return q(z, w);
}

template <class C>
std::pair<C, C> apply(const SkewProduct<C>& f, const C& z, const C& w) {
    return {f.p()(z), f.q()(z, w)};
}

/// Substitutes (z, w) -> (outer_z(z), inner_w(z, w)) into q.
template <class C>
Poly2<C> substitute(const Poly2<C>& q, const Poly1<C>& outer_z, const Poly2<C>& inner_w,
                    const ComposeOptions& opts = {}) {
    const Poly2<C> zsub = Poly2<C>::from_z(outer_z);
    std::vector<Poly2<C>> zpow{Poly2<C>::monomial(0, 0)};
    std::vector<Poly2<C>> wpow{Poly2<C>::monomial(0, 0)};
    auto zp = [&](int n) -> const Poly2<C>& {
        while (static_cast<int>(zpow.size()) <= n) zpow.push_back(zpow.back().multiply(zsub, opts));
        return zpow[n];
    };
    auto wp = [&](int m) -> const Poly2<C>& {
        while (static_cast<int>(wpow.size()) <= m) wpow.push_back(wpow.back().multiply(inner_w, opts));
        return wpow[m];
    };
    Poly2<C> out;
    for (const auto& [mono, c] : q.terms()) {
        out += zp(mono.z).multiply(wp(mono.w), opts).scaled(c);
        detail::check_budget(out.size(), opts);
    }
    return out;
}

/// f o g = (p_f o p_g, q_f(p_g(z), q_g(z, w))).
template <class C>
SkewProduct<C> compose_skew(const SkewProduct<C>& f, const SkewProduct<C>& g, const ComposeOptions& opts = {}) {
    Poly1<C> p = f.p().compose(g.p(), opts);
    Poly2<C> q = substitute(f.q(), g.p(), g.q(), opts);
    return SkewProduct<C>(std::move(p), std::move(q));
}

/// n-fold composition f^n, n >= 1.
template <class C>
SkewProduct<C> iterate_skew(const SkewProduct<C>& f, int n, const ComposeOptions& opts = {}) {
    SkewProduct<C> acc = f;
    for (int k = 1; k < n; ++k) acc = compose_skew(f, acc, opts);
    return acc;
}

/// Principal k-th root: argument in (-pi/k, pi/k].
inline Complex principal_root(const Complex& x, int k) {
    return std::polar(std::pow(std::abs(x), 1.0 / k), std::arg(x) / k);
}

struct Normalized {
    FloatSkewProduct map;
    Complex s{1.0, 0.0};
    Complex t{1.0, 0.0};
};

/// Conjugates f by sigma(z, w) = (s z, t w) so that p and b become monic.
/// Points of the original map correspond to (z / s, w / t) for the result.
template <class C>
Normalized normalize_monic(const SkewProduct<C>& f) {
    using Traits = CoeffTraits<C>;
    const Complex a = Traits::to_complex(f.p().leading());
    const Complex bg = Traits::to_complex(f.b().leading());
    if (a == Complex(1.0) && bg == Complex(1.0)) return {f.to_floating(), {1.0, 0.0}, {1.0, 0.0}};

    const Complex s = principal_root(1.0 / a, f.delta() - 1);
    const Complex t = principal_root(1.0 / (bg * std::pow(s, f.gamma())), f.d() - 1);

    Poly1<Complex> p;
    for (const auto& [e, c] : f.p().terms()) p.add_term(e, Traits::to_complex(c) * std::pow(s, e) / s);
    Poly2<Complex> q;
    for (const auto& [m, c] : f.q().terms())
        q.add_term(m, Traits::to_complex(c) * std::pow(s, m.z) * std::pow(t, m.w) / t);
    return {FloatSkewProduct(std::move(p), std::move(q)), s, t};
}

}  // namespace skewgreen
