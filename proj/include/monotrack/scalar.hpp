#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace monotrack {

// Exact rational scalar (GMP-backed). A computation is either all-Rat or
// all-double; the two never mix inside one matrix.
using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using MatD = Mat<double>;
using VecD = Vec<double>;
using MatQ = Mat<Rat>;
using VecQ = Vec<Rat>;

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rat> {
    static constexpr bool is_exact = true;
    static double default_tol() { return 0.0; }
};

template <>
struct scalar_traits<double> {
    static constexpr bool is_exact = false;
    static double default_tol() { return 1e-9; }
};

inline double to_double(const Rat& x) { return x.template convert_to<double>(); }
inline double to_double(double x) { return x; }

template <class S>
MatD to_double_mat(const Mat<S>& M) {
    MatD R(M.rows(), M.cols());
    for (Eigen::Index i = 0; i < M.rows(); ++i)
        for (Eigen::Index j = 0; j < M.cols(); ++j)
            R(i, j) = to_double(M(i, j));
    return R;
}

template <class S>
VecD to_double_vec(const Vec<S>& v) {
    VecD r(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) r(i) = to_double(v(i));
    return r;
}

// Parses "p/q", "p", or a decimal such as "-1.25" (exact binary/decimal value).
inline Rat parse_rational(const std::string& s) {
    std::string t = s;
    auto dot = t.find('.');
    if (dot == std::string::npos) {
        try {
            return Rat(t);
        } catch (const std::exception&) {
            throw std::invalid_argument("cannot parse rational '" + s + "'");
        }
    }
    bool neg = false;
    std::string u = t;
    if (!u.empty() && (u[0] == '+' || u[0] == '-')) {
        neg = u[0] == '-';
        u = u.substr(1);
    }
    dot = u.find('.');
    std::string ip = u.substr(0, dot), fp = u.substr(dot + 1);
    if (ip.empty()) ip = "0";
    Int num(ip);
    Int den(1);
    for (char c : fp) {
        if (c < '0' || c > '9') throw std::invalid_argument("cannot parse rational '" + s + "'");
        num = num * 10 + (c - '0');
        den *= 10;
    }
    Rat r(num, den);
    return neg ? Rat(-r) : r;
}

inline std::string rational_str(const Rat& x) { return x.str(); }

} // namespace monotrack
