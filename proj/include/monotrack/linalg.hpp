#pragma once

#include "monotrack/scalar.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace monotrack {

template <class S>
Mat<S> hcat(const Mat<S>& a, const Mat<S>& b) {
    if (a.cols() == 0) return b;
    if (b.cols() == 0) return a;
    if (a.rows() != b.rows()) throw std::invalid_argument("hcat: row mismatch");
    Mat<S> r(a.rows(), a.cols() + b.cols());
    r << a, b;
    return r;
}

template <class S>
Mat<S> vcat(const Mat<S>& a, const Mat<S>& b) {
    if (a.rows() == 0) return b;
    if (b.rows() == 0) return a;
    if (a.cols() != b.cols()) throw std::invalid_argument("vcat: col mismatch");
    Mat<S> r(a.rows() + b.rows(), a.cols());
    r << a, b;
    return r;
}

namespace detail {

// Scales each row to integers (multiply by the lcm of denominators).
// Row scaling by nonzero constants preserves rank.
inline Mat<Int> integer_scaled_rows(const MatQ& M) {
    Mat<Int> Z(M.rows(), M.cols());
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        Int l = 1;
        for (Eigen::Index j = 0; j < M.cols(); ++j)
            l = lcm(l, denominator(M(i, j)));
        for (Eigen::Index j = 0; j < M.cols(); ++j)
            Z(i, j) = numerator(M(i, j) * l);
    }
    return Z;
}

// Fraction-free (Bareiss) elimination; returns the rank.
inline int bareiss_rank(Mat<Int> M) {
    const Eigen::Index rows = M.rows(), cols = M.cols();
    Int prev = 1;
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
        Eigen::Index piv = -1;
        for (Eigen::Index i = r; i < rows; ++i)
            if (M(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r) M.row(piv).swap(M.row(r));
        for (Eigen::Index i = r + 1; i < rows; ++i) {
            for (Eigen::Index j = c + 1; j < cols; ++j)
                M(i, j) = (M(r, c) * M(i, j) - M(i, c) * M(r, j)) / prev;
            M(i, c) = 0;
        }
        prev = M(r, c);
        ++r;
    }
    return static_cast<int>(r);
}

// In-place reduced row echelon form over the rationals.
// Returns pivot column indices.
inline std::vector<Eigen::Index> rref(MatQ& M) {
    std::vector<Eigen::Index> pivots;
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < M.cols() && r < M.rows(); ++c) {
        Eigen::Index piv = -1;
        for (Eigen::Index i = r; i < M.rows(); ++i)
            if (M(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r) M.row(piv).swap(M.row(r));
        Rat inv = M(r, c);
        for (Eigen::Index j = c; j < M.cols(); ++j) M(r, j) /= inv;
        for (Eigen::Index i = 0; i < M.rows(); ++i) {
            if (i == r || M(i, c) == 0) continue;
            Rat f = M(i, c);
            for (Eigen::Index j = c; j < M.cols(); ++j) M(i, j) -= f * M(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

// Scales a rational column to integers with content 1 and positive leading entry.
inline void canonicalize_column(MatQ& B, Eigen::Index col) {
    Int l = 1;
    for (Eigen::Index i = 0; i < B.rows(); ++i) l = lcm(l, denominator(B(i, col)));
    Int g = 0;
    for (Eigen::Index i = 0; i < B.rows(); ++i) g = gcd(g, numerator(B(i, col) * l));
    if (g == 0) return;
    Rat scale = Rat(l, g);
    for (Eigen::Index i = 0; i < B.rows(); ++i) {
        B(i, col) *= scale;
        if (B(i, col) != 0) {
            if (B(i, col) < 0)
                for (Eigen::Index k = i; k < B.rows(); ++k) B(k, col) = -B(k, col);
            break;
        }
    }
}

} // namespace detail

// ----------------------------------------------------------------- rank

inline int rank(const MatQ& M, double /*tol*/ = 0.0) {
    if (M.rows() == 0 || M.cols() == 0) return 0;
    return detail::bareiss_rank(detail::integer_scaled_rows(M));
}

inline int rank(const MatD& M, double tol = scalar_traits<double>::default_tol()) {
    if (M.rows() == 0 || M.cols() == 0) return 0;
    Eigen::JacobiSVD<MatD> svd(M);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    double cut = tol * static_cast<double>(std::max(M.rows(), M.cols())) * sv(0);
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cut) ++r;
    return r;
}

// ------------------------------------------------------- nullspace_basis

// Canonical rational kernel basis: the reduced column echelon form of the
// null space (unique per subspace), columns ordered by leading row and
// integer-scaled to content 1 with positive leading entry.
inline MatQ nullspace_basis(const MatQ& M, double /*tol*/ = 0.0) {
    const Eigen::Index n = M.cols();
    if (n == 0) return MatQ(0, 0);
    MatQ R = M;
    if (R.rows() == 0) R = MatQ::Zero(1, n);
    auto pivots = detail::rref(R);
    std::vector<Eigen::Index> free_cols;
    {
        std::size_t k = 0;
        for (Eigen::Index c = 0; c < n; ++c) {
            if (k < pivots.size() && pivots[k] == c) { ++k; continue; }
            free_cols.push_back(c);
        }
    }
    MatQ B = MatQ::Zero(n, static_cast<Eigen::Index>(free_cols.size()));
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        B(free_cols[k], static_cast<Eigen::Index>(k)) = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            B(pivots[r], static_cast<Eigen::Index>(k)) = -R(static_cast<Eigen::Index>(r), free_cols[k]);
    }
    if (B.cols() == 0) return B;
    // reduced column echelon form: RREF of the transposed basis
    MatQ T = B.transpose();
    detail::rref(T);
    MatQ C = T.transpose();
    // drop zero columns (none expected), canonical scaling
    MatQ out(n, C.cols());
    Eigen::Index w = 0;
    for (Eigen::Index j = 0; j < C.cols(); ++j) {
        bool nz = false;
        for (Eigen::Index i = 0; i < n; ++i)
            if (C(i, j) != 0) { nz = true; break; }
        if (!nz) continue;
        out.col(w++) = C.col(j);
    }
    out.conservativeResize(n, w);
    for (Eigen::Index j = 0; j < out.cols(); ++j) detail::canonicalize_column(out, j);
    return out;
}

inline MatD nullspace_basis(const MatD& M, double tol = scalar_traits<double>::default_tol()) {
    const Eigen::Index n = M.cols();
    if (n == 0) return MatD(0, 0);
    if (M.rows() == 0) return MatD::Identity(n, n);
    Eigen::JacobiSVD<MatD> svd(M, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double smax = sv.size() ? sv(0) : 0.0;
    double cut = tol * static_cast<double>(std::max(M.rows(), M.cols())) * smax;
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cut) ++r;
    return svd.matrixV().rightCols(n - r);
}

// ----------------------------------------------------------- Subspace

// Full-column-rank basis with its rank tolerance. The zero subspace carries
// a basis with zero columns.
template <class S>
struct Subspace {
    Eigen::Index ambient_dim = 0;
    Mat<S> basis;           // ambient_dim x k, full column rank
    double tol = scalar_traits<S>::default_tol();

    Eigen::Index dim() const { return basis.cols(); }

    static Subspace from_span(const Mat<S>& span_cols,
                              double tol = scalar_traits<S>::default_tol()) {
        Subspace s;
        s.ambient_dim = span_cols.rows();
        s.tol = tol;
        // extract an independent subset via the kernel-free part
        Mat<S> acc(span_cols.rows(), 0);
        for (Eigen::Index j = 0; j < span_cols.cols(); ++j) {
            Mat<S> cand = hcat<S>(acc, span_cols.col(j));
            if (rank(cand, tol) > rank(acc, tol)) acc = cand;
        }
        s.basis = acc;
        return s;
    }

    static Subspace from_basis(const Mat<S>& basis,
                               double tol = scalar_traits<S>::default_tol()) {
        if (rank(basis, tol) != basis.cols())
            throw std::invalid_argument("Subspace: basis is not full column rank");
        Subspace s;
        s.ambient_dim = basis.rows();
        s.basis = basis;
        s.tol = tol;
        return s;
    }
};

template <class S>
int sum_dim(const std::vector<Subspace<S>>& parts) {
    if (parts.empty()) return 0;
    Eigen::Index amb = parts[0].ambient_dim;
    Mat<S> acc(amb, 0);
    double tol = parts[0].tol;
    for (const auto& p : parts) {
        if (p.ambient_dim != amb)
            throw std::invalid_argument("sum_dim: ambient dimension mismatch");
        acc = hcat<S>(acc, p.basis);
    }
    return rank(acc, tol);
}

// ----------------------------------------------------------- exact solves

// Solves A X = B for square invertible A. Throws if singular (rational mode).
inline MatQ solve_exact(const MatQ& A, const MatQ& B) {
    if (A.rows() != A.cols() || A.rows() != B.rows())
        throw std::invalid_argument("solve_exact: shape mismatch");
    MatQ aug = hcat<Rat>(A, B);
    auto pivots = detail::rref(aug);
    if (static_cast<Eigen::Index>(pivots.size()) != A.cols())
        throw std::runtime_error("solve_exact: singular matrix");
    return aug.rightCols(B.cols());
}

inline MatD solve_exact(const MatD& A, const MatD& B) {
    Eigen::FullPivLU<MatD> lu(A);
    if (!lu.isInvertible()) throw std::runtime_error("solve_exact: singular matrix");
    return lu.solve(B);
}

// F such that F * V = W, with V square invertible.
template <class S>
Mat<S> right_solve(const Mat<S>& V, const Mat<S>& W) {
    Mat<S> Ft = solve_exact(Mat<S>(V.transpose()), Mat<S>(W.transpose()));
    return Ft.transpose();
}

// Any solution of M x = b, or empty if inconsistent.
inline bool solve_consistent(const MatQ& M, const VecQ& b, VecQ& x) {
    MatQ aug = hcat<Rat>(M, MatQ(b));
    MatQ red = aug;
    auto pivots = detail::rref(red);
    x = VecQ::Zero(M.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == M.cols()) return false; // pivot in the rhs column
        x(pivots[r]) = red(static_cast<Eigen::Index>(r), M.cols());
    }
    return true;
}

// Minimum-norm solution of a consistent system M v = b.
inline VecQ min_norm_solve(const MatQ& M, const VecQ& b) {
    VecQ x;
    if (!solve_consistent(M, b, x))
        throw std::runtime_error("min_norm_solve: inconsistent system");
    MatQ N = nullspace_basis(M);
    if (N.cols() == 0) return x;
    // subtract the kernel component: x - N (N^T N)^{-1} N^T x
    MatQ NtN = N.transpose() * N;
    VecQ c = solve_exact(NtN, MatQ(N.transpose() * x));
    return x - N * c;
}

inline VecD min_norm_solve(const MatD& M, const VecD& b) {
    Eigen::CompleteOrthogonalDecomposition<MatD> cod(M);
    VecD x = cod.solve(b);
    if ((M * x - b).norm() > 1e-7 * (1.0 + b.norm()))
        throw std::runtime_error("min_norm_solve: inconsistent system");
    return x;
}

// ------------------------------------------------------------- char poly

// Coefficients of det(xI - A), ascending order, monic. Faddeev-LeVerrier.
template <class S>
std::vector<S> charpoly(const Mat<S>& A) {
    const Eigen::Index n = A.rows();
    std::vector<S> c(static_cast<std::size_t>(n) + 1, S(0));
    c[static_cast<std::size_t>(n)] = S(1);
    Mat<S> M = Mat<S>::Zero(n, n);
    for (Eigen::Index k = 1; k <= n; ++k) {
        M = A * M + c[static_cast<std::size_t>(n - k + 1)] * Mat<S>::Identity(n, n);
        S tr(0);
        Mat<S> AM = A * M;
        for (Eigen::Index i = 0; i < n; ++i) tr += AM(i, i);
        c[static_cast<std::size_t>(n - k)] = -tr / S(static_cast<long>(k));
    }
    return c;
}

} // namespace monotrack
