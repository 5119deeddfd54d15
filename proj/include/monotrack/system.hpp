#pragma once

#include "monotrack/linalg.hpp"

#include <stdexcept>
#include <string>

namespace monotrack {

enum class TimeDomain { Continuous, Discrete };

// C_g membership: open left half-plane / open unit disc.
inline bool in_cg(std::complex<double> z, TimeDomain dom) {
    return dom == TimeDomain::Continuous ? z.real() < 0.0 : std::abs(z) < 1.0;
}
inline bool in_cg(const Rat& z, TimeDomain dom) {
    return dom == TimeDomain::Continuous ? z < 0 : abs(z) < 1;
}
// Admissible visible-mode set Lambda_g: R^- / [0,1).
inline bool in_lambda_g(const Rat& l, TimeDomain dom) {
    return dom == TimeDomain::Continuous ? l < 0 : (l >= 0 && l < 1);
}

template <class S>
struct LtiSystem {
    Mat<S> A, B, C, D;
    TimeDomain domain = TimeDomain::Continuous;

    Eigen::Index n() const { return A.rows(); }
    Eigen::Index m() const { return B.cols(); }
    Eigen::Index p() const { return C.rows(); }
};

struct ValidationReport {
    bool dims_ok = false;
    bool bd_full_column_rank = false;
    bool cd_full_row_rank = false;
    bool ok() const { return dims_ok && bd_full_column_rank && cd_full_row_rank; }
};

template <class S>
ValidationReport validate(const LtiSystem<S>& sys) {
    ValidationReport r;
    r.dims_ok = sys.A.rows() == sys.A.cols() && sys.B.rows() == sys.A.rows() &&
                sys.C.cols() == sys.A.rows() && sys.D.rows() == sys.C.rows() &&
                sys.D.cols() == sys.B.cols();
    if (!r.dims_ok) return r;
    r.bd_full_column_rank = rank(Mat<S>(vcat<S>(sys.B, sys.D))) == sys.m();
    r.cd_full_row_rank = rank(Mat<S>(hcat<S>(sys.C, sys.D))) == sys.p();
    return r;
}

// Rosenbrock system matrix [[A - lambda I, B], [C, D]].
template <class S>
Mat<S> pencil(const LtiSystem<S>& sys, const S& lambda) {
    Mat<S> top = hcat<S>(Mat<S>(sys.A - lambda * Mat<S>::Identity(sys.n(), sys.n())), sys.B);
    Mat<S> bot = hcat<S>(sys.C, sys.D);
    return vcat<S>(top, bot);
}

// Sigma_j: deletes the j-th output row (1-based). Not re-validated; [B; D_(j)]
// may legitimately lose column rank.
template <class S>
LtiSystem<S> delete_output(const LtiSystem<S>& sys, int j) {
    if (j < 1 || j > sys.p()) throw std::out_of_range("delete_output: output index");
    LtiSystem<S> r;
    r.A = sys.A;
    r.B = sys.B;
    r.domain = sys.domain;
    r.C = Mat<S>(sys.p() - 1, sys.n());
    r.D = Mat<S>(sys.p() - 1, sys.m());
    Eigen::Index w = 0;
    for (Eigen::Index i = 0; i < sys.p(); ++i) {
        if (i == j - 1) continue;
        r.C.row(w) = sys.C.row(i);
        r.D.row(w) = sys.D.row(i);
        ++w;
    }
    return r;
}

template <class S>
struct SteadyState {
    Vec<S> x_ss, u_ss, reference;
};

// Solves the steady-state equations for a step reference r; minimum-norm
// representative when the solution set is an affine family.
template <class S>
SteadyState<S> steady_state(const LtiSystem<S>& sys, const Vec<S>& r) {
    if (r.size() != sys.p()) throw std::invalid_argument("steady_state: reference size");
    Mat<S> Acl = sys.A;
    if (sys.domain == TimeDomain::Discrete)
        Acl -= Mat<S>::Identity(sys.n(), sys.n());
    Mat<S> M = vcat<S>(hcat<S>(Acl, sys.B), hcat<S>(sys.C, sys.D));
    Vec<S> b = Vec<S>::Zero(sys.n() + sys.p());
    b.tail(sys.p()) = r;
    Vec<S> v;
    try {
        v = min_norm_solve(M, b);
    } catch (const std::runtime_error&) {
        throw std::runtime_error("reference not trackable");
    }
    SteadyState<S> out;
    out.x_ss = v.head(sys.n());
    out.u_ss = v.tail(sys.m());
    out.reference = r;
    return out;
}

} // namespace monotrack
