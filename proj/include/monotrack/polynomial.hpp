#pragma once

#include "monotrack/linalg.hpp"

#include <complex>
#include <utility>
#include <vector>

namespace monotrack {

// Dense univariate polynomial over the rationals, ascending coefficients.
struct PolyQ {
    std::vector<Rat> c;

    PolyQ() = default;
    explicit PolyQ(std::vector<Rat> coeffs) : c(std::move(coeffs)) { trim(); }

    static PolyQ constant(const Rat& v) { return PolyQ({v}); }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    Rat leading() const { return c.empty() ? Rat(0) : c.back(); }

    Rat eval(const Rat& x) const {
        Rat acc(0);
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    PolyQ monic() const {
        if (is_zero()) return *this;
        PolyQ r = *this;
        Rat l = r.c.back();
        for (auto& v : r.c) v /= l;
        return r;
    }
};

inline PolyQ poly_mul(const PolyQ& a, const PolyQ& b) {
    if (a.is_zero() || b.is_zero()) return PolyQ();
    std::vector<Rat> r(a.c.size() + b.c.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j)
            r[i + j] += a.c[i] * b.c[j];
    return PolyQ(std::move(r));
}

// Exact division: q, r with a = q*b + r, deg r < deg b.
inline std::pair<PolyQ, PolyQ> poly_divmod(const PolyQ& a, const PolyQ& b) {
    if (b.is_zero()) throw std::invalid_argument("poly_divmod: division by zero");
    std::vector<Rat> rem = a.c;
    std::vector<Rat> quo(a.c.size() > b.c.size() ? a.c.size() - b.c.size() + 1 : 1, Rat(0));
    int db = b.degree();
    while (static_cast<int>(rem.size()) - 1 >= db && !(rem.size() == 1 && rem[0] == 0)) {
        int dr = static_cast<int>(rem.size()) - 1;
        Rat f = rem.back() / b.c.back();
        quo[static_cast<std::size_t>(dr - db)] = f;
        for (int i = 0; i <= db; ++i)
            rem[static_cast<std::size_t>(dr - db + i)] -= f * b.c[static_cast<std::size_t>(i)];
        while (!rem.empty() && rem.back() == 0) rem.pop_back();
        if (rem.empty()) break;
    }
    return {PolyQ(std::move(quo)), PolyQ(std::move(rem))};
}

inline PolyQ poly_gcd(PolyQ a, PolyQ b) {
    a = a.monic();
    b = b.monic();
    while (!b.is_zero()) {
        PolyQ r = poly_divmod(a, b).second;
        a = b;
        b = r.monic();
    }
    return a.monic();
}

inline PolyQ poly_from_roots(const std::vector<Rat>& roots) {
    PolyQ p = PolyQ::constant(Rat(1));
    for (const auto& r : roots) p = poly_mul(p, PolyQ({-r, Rat(1)}));
    return p;
}

// Exact Lagrange interpolation through (xs[i], ys[i]) with distinct xs.
inline PolyQ lagrange_interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
    PolyQ acc;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        PolyQ li = PolyQ::constant(Rat(1));
        Rat denom(1);
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (i == j) continue;
            li = poly_mul(li, PolyQ({-xs[j], Rat(1)}));
            denom *= xs[i] - xs[j];
        }
        Rat w = ys[i] / denom;
        for (std::size_t k = 0; k < li.c.size(); ++k) li.c[k] *= w;
        if (acc.c.size() < li.c.size()) acc.c.resize(li.c.size(), Rat(0));
        for (std::size_t k = 0; k < li.c.size(); ++k) acc.c[k] += li.c[k];
    }
    acc.trim();
    return acc;
}

// Numeric roots via the companion matrix of the monic polynomial.
inline std::vector<std::complex<double>> numeric_roots(const PolyQ& p) {
    int d = p.degree();
    if (d <= 0) return {};
    MatD Cmp = MatD::Zero(d, d);
    for (int i = 0; i < d; ++i)
        Cmp(i, d - 1) = -to_double(p.c[static_cast<std::size_t>(i)] / p.c.back());
    for (int i = 1; i < d; ++i) Cmp(i, i - 1) = 1.0;
    Eigen::EigenSolver<MatD> es(Cmp);
    std::vector<std::complex<double>> out;
    for (int i = 0; i < d; ++i) out.push_back(es.eigenvalues()(i));
    return out;
}

// Best small-denominator rational near x (continued fractions).
inline bool rational_reconstruct(double x, long long max_den, Rat& out) {
    if (!std::isfinite(x)) return false;
    double v = x;
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(v);
        if (fl > 9e17 || fl < -9e17) return false;
        long long a = static_cast<long long>(fl);
        long long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den || q2 < 0) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double frac = v - fl;
        if (frac < 1e-12) break;
        v = 1.0 / frac;
    }
    if (q1 == 0) return false;
    out = Rat(p1, q1);
    double err = std::abs(to_double(out) - x);
    return err < 1e-6 * (1.0 + std::abs(x));
}

// Rational roots with multiplicities (exact verification and deflation);
// also returns the residual factor with no small rational roots.
inline std::vector<std::pair<Rat, int>> rational_roots(const PolyQ& p, PolyQ& residual) {
    std::vector<std::pair<Rat, int>> out;
    residual = p.monic();
    if (p.degree() <= 0) return out;
    auto approx = numeric_roots(p);
    std::vector<Rat> seen;
    for (const auto& z : approx) {
        if (std::abs(z.imag()) > 1e-7 * (1.0 + std::abs(z.real()))) continue;
        Rat cand;
        if (!rational_reconstruct(z.real(), 1000000, cand)) continue;
        bool dup = false;
        for (const auto& s : seen)
            if (s == cand) { dup = true; break; }
        if (dup) continue;
        seen.push_back(cand);
        int mult = 0;
        while (!residual.is_zero() && residual.degree() >= 1 && residual.eval(cand) == 0) {
            residual = poly_divmod(residual, PolyQ({-cand, Rat(1)})).first;
            ++mult;
        }
        if (mult > 0) out.push_back({cand, mult});
    }
    residual = residual.monic();
    return out;
}

// All roots in the open left half-plane (exact Routh test). Degenerate
// tables mean roots on or right of the imaginary axis.
inline bool hurwitz_stable(const PolyQ& p_in) {
    PolyQ p = p_in.monic();
    int n = p.degree();
    if (n <= 0) return true;
    for (const auto& v : p.c)
        if (v <= 0) return false; // necessary condition for Hurwitz
    std::vector<Rat> r1, r2;
    for (int i = n; i >= 0; i -= 2) r1.push_back(p.c[static_cast<std::size_t>(i)]);
    for (int i = n - 1; i >= 0; i -= 2) r2.push_back(p.c[static_cast<std::size_t>(i)]);
    while (static_cast<int>(r2.size()) > 0) {
        if (r2[0] == 0) return false;
        std::vector<Rat> nxt;
        for (std::size_t i = 0; i + 1 < r1.size() || i + 1 < r2.size(); ++i) {
            Rat a = (i + 1 < r1.size()) ? r1[i + 1] : Rat(0);
            Rat b = (i + 1 < r2.size()) ? r2[i + 1] : Rat(0);
            nxt.push_back(a - r1[0] / r2[0] * b);
        }
        while (!nxt.empty() && nxt.back() == 0) nxt.pop_back();
        if (nxt.empty()) return r1.size() <= 1; // table ended
        if (nxt[0] <= 0) return false;
        r1 = r2;
        r2 = nxt;
    }
    return true;
}

// All roots in the open unit disc (exact Schur-Cohn/Jury recursion).
inline bool schur_stable(const PolyQ& p_in) {
    PolyQ p = p_in.monic();
    while (p.degree() >= 1) {
        Rat a0 = p.c.front(), an = p.c.back();
        if (abs(a0) >= abs(an)) return false;
        int d = p.degree();
        std::vector<Rat> nxt(static_cast<std::size_t>(d), Rat(0));
        for (int i = 0; i < d; ++i)
            nxt[static_cast<std::size_t>(i)] =
                an * p.c[static_cast<std::size_t>(i + 1)] - a0 * p.c[static_cast<std::size_t>(d - 1 - i)];
        p = PolyQ(std::move(nxt)).monic();
        if (p.is_zero()) return true;
    }
    return true;
}

} // namespace monotrack
