#pragma once

#include "monotrack/polynomial.hpp"
#include "monotrack/prng.hpp"
#include "monotrack/system.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace monotrack {

struct InvariantZero {
    std::complex<double> value;
    std::optional<Rat> exact;       // set when the zero is exactly rational
    int geometric_multiplicity = 0;
    int algebraic_multiplicity = 0;
    bool minimum_phase = false;
};

// One pencil-kernel block: the (v, w) pairs of ker P(mode). For a complex
// conjugate pair (float mode), (V + i Vim, W + i Wim) spans ker P(sigma + i omega)
// and a selector h yields the matched real column pair [V h, Vim h].
template <class S>
struct KernelBlock {
    S re{}, im{};
    Mat<S> V, W;        // n x l, m x l
    Mat<S> Vim, Wim;    // imaginary parts; 0 columns for real blocks
    bool from_zero = false;  // true: minimum-phase zero direction, false: free mu

    bool is_pair() const { return Vim.cols() > 0; }
    Eigen::Index selector_len() const { return V.cols(); }
    // columns this block contributes to the assembled candidate
    Eigen::Index width() const { return is_pair() ? 2 : 1; }
};

template <class S>
struct StructuralReport {
    int normal_rank = 0;
    bool right_invertible = false;
    bool stabilizable = false;
    std::vector<std::complex<double>> uncontrollable_modes;
    std::vector<InvariantZero> zeros;
    bool assumption1 = false;
    bool assumption2 = false;
    int dim_r_star = 0;      // r
    int dim_v_star_g = 0;    // h
    Subspace<S> r_star;
    Subspace<S> v_star_g;
    std::vector<S> r_star_mu;                     // canonical mu pool used for r_star
    std::vector<KernelBlock<S>> v_star_g_blocks;  // mu blocks then zero blocks
};

namespace detail {

template <class S>
Mat<S> random_compression(Prng& rng, Eigen::Index rows, Eigen::Index cols) {
    Mat<S> R(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j)
            R(i, j) = S(static_cast<long>(rng.int_in(-9, 9)));
    return R;
}

// Kernel pairs of the Rosenbrock pencil at a real mode.
template <class S>
KernelBlock<S> kernel_block(const LtiSystem<S>& sys, const S& mode) {
    Mat<S> N = nullspace_basis(pencil(sys, mode));
    KernelBlock<S> b;
    b.re = mode;
    b.im = S(0);
    b.V = N.topRows(sys.n());
    b.W = N.bottomRows(sys.m());
    return b;
}

// complex rank via the real augmented form [[Re, -Im], [Im, Re]]
inline int complex_rank(const MatD& Re, const MatD& Im, double tol) {
    MatD aug(2 * Re.rows(), 2 * Re.cols());
    aug << Re, -Im, Im, Re;
    return rank(aug, tol) / 2;
}

// Kernel of P(sigma + i*omega) for float systems, returned as real/imag parts.
inline void complex_kernel(const LtiSystem<double>& sys, std::complex<double> z,
                           MatD& Vre, MatD& Vim, MatD& Wre, MatD& Wim, double tol) {
    LtiSystem<double> s0 = sys;
    MatD Pre = pencil(s0, z.real());
    MatD Pim = MatD::Zero(Pre.rows(), Pre.cols());
    for (Eigen::Index i = 0; i < sys.n(); ++i) Pim(i, i) = -z.imag();
    MatD aug(2 * Pre.rows(), 2 * Pre.cols());
    aug << Pre, -Pim, Pim, Pre;
    MatD N = nullspace_basis(aug, tol);
    // columns of N are [x_re; x_im] stacked; keep a maximal set independent over C
    const Eigen::Index nm = Pre.cols();
    MatD acc(2 * nm, 0);
    for (Eigen::Index j = 0; j < N.cols(); ++j) {
        // complex span closure: adding x also adds i*x = [-x_im; x_re]
        MatD x = N.col(j);
        MatD ix(2 * nm, 1);
        ix << -x.bottomRows(nm), x.topRows(nm);
        MatD cand = hcat<double>(acc, hcat<double>(x, ix));
        if (rank(cand, tol) > rank(acc, tol) + 1) acc = cand;
    }
    Eigen::Index l = acc.cols() / 2;
    Vre.resize(sys.n(), l); Vim.resize(sys.n(), l);
    Wre.resize(sys.m(), l); Wim.resize(sys.m(), l);
    for (Eigen::Index j = 0; j < l; ++j) {
        Vre.col(j) = acc.col(2 * j).topRows(sys.n());
        Wre.col(j) = acc.col(2 * j).middleRows(sys.n(), sys.m());
        Vim.col(j) = acc.col(2 * j).bottomRows(2 * nm - sys.n() - sys.m()).topRows(sys.n());
        Wim.col(j) = acc.col(2 * j).bottomRows(sys.m());
    }
}

} // namespace detail

// Deterministic pool of admissible invisible modes: distinct, stable, real,
// bounded away from the invariant zeros.
template <class S>
std::vector<S> mu_pool(const LtiSystem<S>& sys, const std::vector<InvariantZero>& zeros,
                       std::size_t count, std::uint64_t seed,
                       const std::vector<S>& avoid = {}) {
    Prng rng(seed ^ 0x6d75706f6f6cULL);
    std::vector<S> out;
    while (out.size() < count) {
        Rat q = sys.domain == TimeDomain::Continuous ? rng.rational_in(-8, 0, 12)
                                                     : rng.rational_in(0, 1, 17);
        S cand = S(q.convert_to<double>());
        if constexpr (scalar_traits<S>::is_exact) cand = S(q);
        bool ok = true;
        for (const auto& z : zeros)
            if (std::abs(z.value - std::complex<double>(to_double(cand), 0)) < 1e-6) ok = false;
        for (const auto& v : out)
            if (v == cand) ok = false;
        for (const auto& v : avoid)
            if (v == cand) ok = false;
        if (ok) out.push_back(cand);
    }
    return out;
}

// ------------------------------------------------------------ normal rank

template <class S>
int normal_rank(const LtiSystem<S>& sys, std::uint64_t seed = 0) {
    Prng rng(seed ^ 0x6e6f726d72616e6bULL);
    int best = 0;
    const int probes = 2 * (static_cast<int>(sys.n()) + 1);
    for (int k = 0; k < probes; ++k) {
        Rat q = rng.rational_in(-64, 64, 16);
        S lam;
        if constexpr (scalar_traits<S>::is_exact) lam = S(q);
        else lam = to_double(q);
        best = std::max(best, rank(Mat<S>(pencil(sys, lam))));
    }
    return best;
}

// -------------------------------------------------------- invariant zeros

// Zero values by determinant interpolation of two independently squared-down
// pencils (exact gcd), confirmed by rank deficiency of the original pencil.
namespace detail {

// Exact determinant by fraction-free elimination.
inline Rat bareiss_det(const MatQ& M) {
    if (M.rows() != M.cols()) throw std::invalid_argument("bareiss_det: not square");
    Rat scale(1);
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        Int l = 1;
        for (Eigen::Index j = 0; j < M.cols(); ++j) l = lcm(l, denominator(M(i, j)));
        scale *= Rat(l);
    }
    Mat<Int> Mz = integer_scaled_rows(M);
    Int prev = 1;
    int sign = 1;
    const Eigen::Index nn = Mz.rows();
    for (Eigen::Index c = 0; c < nn; ++c) {
        Eigen::Index piv = -1;
        for (Eigen::Index i = c; i < nn; ++i)
            if (Mz(i, c) != 0) { piv = i; break; }
        if (piv < 0) return Rat(0);
        if (piv != c) { Mz.row(piv).swap(Mz.row(c)); sign = -sign; }
        for (Eigen::Index i = c + 1; i < nn; ++i) {
            for (Eigen::Index j = c + 1; j < nn; ++j)
                Mz(i, j) = (Mz(c, c) * Mz(i, j) - Mz(i, c) * Mz(c, j)) / prev;
            Mz(i, c) = 0;
        }
        prev = Mz(c, c);
    }
    return Rat(Int(sign) * prev) / scale;
}

} // namespace detail

inline std::vector<InvariantZero> invariant_zeros(const LtiSystem<Rat>& sys,
                                                  int nrank, std::uint64_t seed = 0) {
    Prng rng(seed ^ 0x7a65726f73ULL);
    const Eigen::Index n = sys.n(), m = sys.m(), p = sys.p();
    // square the pencil down to nrank x nrank with random compressions on
    // both sides, interpolate its determinant exactly
    auto squared_det = [&](PolyQ& out) -> bool {
        MatQ L = detail::random_compression<Rat>(rng, nrank, n + p);
        MatQ R = detail::random_compression<Rat>(rng, n + m, nrank);
        std::vector<Rat> xs, ys;
        bool all_zero = true;
        for (Eigen::Index k = 0; k <= n; ++k) {
            Rat x(static_cast<long>(k) - static_cast<long>(n) / 2);
            Rat val = detail::bareiss_det(MatQ(L * pencil(sys, Rat(x)) * R));
            if (val != 0) all_zero = false;
            xs.push_back(x);
            ys.push_back(val);
        }
        if (all_zero) return false;
        out = lagrange_interpolate(xs, ys);
        return !out.is_zero();
    };

    PolyQ d1, d2;
    int attempts = 0;
    while (!squared_det(d1)) {
        if (++attempts > 10) throw std::runtime_error("invariant_zeros: degenerate compression");
    }
    while (!squared_det(d2)) {
        if (++attempts > 10) throw std::runtime_error("invariant_zeros: degenerate compression");
    }
    PolyQ zpoly = poly_gcd(d1, d2);

    std::vector<InvariantZero> out;
    PolyQ residual;
    auto rr = rational_roots(zpoly, residual);
    for (const auto& [val, mult] : rr) {
        int rk = rank(Mat<Rat>(pencil(sys, val)));
        if (rk >= nrank) continue; // not confirmed by rank drop
        InvariantZero z;
        z.exact = val;
        z.value = std::complex<double>(to_double(val), 0.0);
        z.geometric_multiplicity = nrank - rk;
        z.algebraic_multiplicity = mult;
        z.minimum_phase = in_cg(val, sys.domain);
        out.push_back(z);
    }
    // residual factor: irrational or complex zeros, classified numerically
    if (residual.degree() >= 1) {
        auto nroots = numeric_roots(residual);
        std::vector<bool> used(nroots.size(), false);
        for (std::size_t i = 0; i < nroots.size(); ++i) {
            if (used[i]) continue;
            std::complex<double> z = nroots[i];
            int mult = 1;
            for (std::size_t j = i + 1; j < nroots.size(); ++j) {
                if (!used[j] && std::abs(nroots[j] - z) < 1e-6 * (1.0 + std::abs(z))) {
                    used[j] = true;
                    ++mult;
                }
            }
            if (z.imag() < -1e-9) continue; // keep one of each conjugate pair's lower half out
            InvariantZero iz;
            iz.value = std::abs(z.imag()) < 1e-9 ? std::complex<double>(z.real(), 0.0) : z;
            iz.algebraic_multiplicity = mult;
            // numeric rank-drop confirmation
            LtiSystem<double> sd{to_double_mat(sys.A), to_double_mat(sys.B),
                                 to_double_mat(sys.C), to_double_mat(sys.D), sys.domain};
            MatD Pre = pencil(sd, z.real());
            MatD Pim = MatD::Zero(Pre.rows(), Pre.cols());
            for (Eigen::Index k = 0; k < sys.n(); ++k) Pim(k, k) = -z.imag();
            int rkC = detail::complex_rank(Pre, Pim, 1e-9);
            if (rkC >= nrank) continue;
            iz.geometric_multiplicity = nrank - rkC;
            iz.minimum_phase = in_cg(z, sys.domain);
            out.push_back(iz);
            if (std::abs(z.imag()) > 1e-9) {
                InvariantZero conj = iz;
                conj.value = std::conj(z);
                out.push_back(conj);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const InvariantZero& a, const InvariantZero& b) {
        if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });
    return out;
}

inline std::vector<InvariantZero> invariant_zeros(const LtiSystem<double>& sys,
                                                  int nrank, std::uint64_t seed = 0) {
    // squared-down pencils via QZ on (M0, M1) where L P(lambda) R = M0 - lambda M1
    Prng rng(seed ^ 0x7a65726f73ULL);
    const Eigen::Index n = sys.n(), m = sys.m(), p = sys.p();
    MatD block = vcat<double>(hcat<double>(sys.A, sys.B), hcat<double>(sys.C, sys.D));
    MatD E = MatD::Zero(n + p, n + m);
    E.topLeftCorner(n, n).setIdentity();
    auto run = [&]() {
        std::vector<std::complex<double>> vals;
        MatD L = detail::random_compression<double>(rng, nrank, n + p);
        MatD R = detail::random_compression<double>(rng, n + m, nrank);
        MatD M0 = L * block * R, M1 = L * E * R;
        Eigen::GeneralizedEigenSolver<MatD> ges(M0, M1, true);
        for (Eigen::Index i = 0; i < ges.alphas().size(); ++i) {
            if (std::abs(ges.betas()(i)) < 1e-10) continue;
            vals.push_back(ges.alphas()(i) / ges.betas()(i));
        }
        return vals;
    };
    auto v1 = run(), v2 = run();
    std::vector<InvariantZero> out;
    std::vector<bool> used2(v2.size(), false), grouped(v1.size(), false);
    for (std::size_t i = 0; i < v1.size(); ++i) {
        if (grouped[i]) continue;
        bool matched = false;
        for (std::size_t j = 0; j < v2.size(); ++j)
            if (!used2[j] && std::abs(v1[i] - v2[j]) < 1e-5 * (1.0 + std::abs(v1[i]))) {
                used2[j] = true;
                matched = true;
                break;
            }
        if (!matched) continue;
        std::complex<double> z = v1[i];
        int mult = 1;
        for (std::size_t k = i + 1; k < v1.size(); ++k)
            if (!grouped[k] && std::abs(v1[k] - z) < 1e-5 * (1.0 + std::abs(z))) {
                bool m2 = false;
                for (std::size_t j = 0; j < v2.size(); ++j)
                    if (!used2[j] && std::abs(v1[k] - v2[j]) < 1e-5 * (1.0 + std::abs(z))) {
                        used2[j] = true;
                        m2 = true;
                        break;
                    }
                if (m2) { grouped[k] = true; ++mult; }
            }
        MatD Pre = pencil(sys, z.real());
        MatD Pim = MatD::Zero(Pre.rows(), Pre.cols());
        for (Eigen::Index k = 0; k < n; ++k) Pim(k, k) = -z.imag();
        int rkC = detail::complex_rank(Pre, Pim, 1e-8);
        if (rkC >= nrank) continue;
        InvariantZero iz;
        iz.value = std::abs(z.imag()) < 1e-7 * (1 + std::abs(z.real()))
                       ? std::complex<double>(z.real(), 0.0) : z;
        iz.algebraic_multiplicity = mult;
        iz.geometric_multiplicity = nrank - rkC;
        iz.minimum_phase = in_cg(iz.value, sys.domain);
        Rat cand;
        if (iz.value.imag() == 0.0 && rational_reconstruct(iz.value.real(), 1000000, cand))
            iz.exact = cand;
        out.push_back(iz);
    }
    std::sort(out.begin(), out.end(), [](const InvariantZero& a, const InvariantZero& b) {
        if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });
    return out;
}

// -------------------------------------------------------- stabilizability

// Uncontrollable modes from the exact Krylov reachability decomposition;
// stability of the uncontrollable factor decided by Routh/Jury (no root
// extraction needed).
template <class S>
struct StabilizabilityResult {
    bool stabilizable = true;
    std::vector<std::complex<double>> uncontrollable_modes;
    PolyQ uncontrollable_poly;  // rational mode only
};

template <class S>
StabilizabilityResult<S> stabilizability(const LtiSystem<S>& sys) {
    StabilizabilityResult<S> res;
    const Eigen::Index n = sys.n();
    // reachable subspace <A | im B>
    Mat<S> K(n, 0);
    for (Eigen::Index j = 0; j < sys.B.cols(); ++j) {
        Mat<S> cand = hcat<S>(K, Mat<S>(sys.B.col(j)));
        if (rank(cand) > rank(K)) K = cand;
    }
    bool grew = true;
    while (grew && K.cols() < n) {
        grew = false;
        Mat<S> AK = sys.A * K;
        for (Eigen::Index j = 0; j < AK.cols(); ++j) {
            Mat<S> cand = hcat<S>(K, Mat<S>(AK.col(j)));
            if (rank(cand) > rank(K)) { K = cand; grew = true; }
        }
    }
    const Eigen::Index r0 = K.cols();
    if (r0 == n) return res; // fully reachable
    // complete to a basis, take the induced map on the quotient
    Mat<S> T = K;
    for (Eigen::Index i = 0; i < n && T.cols() < n; ++i) {
        Mat<S> cand = hcat<S>(T, Mat<S>(Mat<S>::Identity(n, n).col(i)));
        if (rank(cand) > rank(T)) T = cand;
    }
    Mat<S> At = solve_exact(T, Mat<S>(sys.A * T));
    Mat<S> unc = At.bottomRightCorner(n - r0, n - r0);
    auto cp = charpoly(unc);
    if constexpr (scalar_traits<S>::is_exact) {
        PolyQ pol{std::vector<Rat>(cp.begin(), cp.end())};
        res.uncontrollable_poly = pol;
        res.stabilizable = sys.domain == TimeDomain::Continuous ? hurwitz_stable(pol)
                                                                : schur_stable(pol);
        PolyQ residual;
        for (const auto& [v, mult] : rational_roots(pol, residual))
            for (int k = 0; k < mult; ++k)
                res.uncontrollable_modes.push_back({to_double(v), 0.0});
        for (const auto& z : numeric_roots(residual))
            res.uncontrollable_modes.push_back(z);
    } else {
        Eigen::EigenSolver<MatD> es(to_double_mat(unc));
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
            auto z = es.eigenvalues()(i);
            res.uncontrollable_modes.push_back(z);
            if (!in_cg(z, sys.domain)) res.stabilizable = false;
        }
    }
    return res;
}

// ----------------------------------------------------------------- R*

template <class S>
struct RStarResult {
    std::vector<KernelBlock<S>> blocks;
    std::vector<S> mu;     // modes of the blocks, one per block
    Subspace<S> space;     // state-part basis
    int dim = 0;
};

// Incremental stacking of ker P(mu_i) state parts until the image dimension
// stops growing. The stable dimension is r = dim R*; the result then carries
// exactly r blocks so each contributes one selector column downstream.
template <class S>
RStarResult<S> r_star(const LtiSystem<S>& sys, const std::vector<S>& mu_pool_values) {
    RStarResult<S> res;
    Mat<S> acc(sys.n(), 0);
    int dim = 0;
    std::size_t used = 0;
    for (; used < mu_pool_values.size(); ++used) {
        auto blk = detail::kernel_block(sys, mu_pool_values[used]);
        Mat<S> cand = hcat<S>(acc, blk.V);
        int d = rank(cand);
        if (d <= dim) break; // stabilized
        res.blocks.push_back(blk);
        res.mu.push_back(mu_pool_values[used]);
        acc = cand;
        dim = d;
    }
    if (used == mu_pool_values.size() && dim > 0 &&
        static_cast<int>(res.blocks.size()) < dim)
        throw std::runtime_error("r_star: mu pool exhausted before stabilization");
    // multi-column kernels can reach dim R* with fewer than r values; pad to
    // r blocks so diag{k_1..k_r} has one selector per basis direction
    while (static_cast<int>(res.blocks.size()) < dim) {
        if (used >= mu_pool_values.size())
            throw std::runtime_error("r_star: mu pool exhausted before stabilization");
        res.blocks.push_back(detail::kernel_block(sys, mu_pool_values[used]));
        res.mu.push_back(mu_pool_values[used]);
        ++used;
    }
    res.space = Subspace<S>::from_span(acc);
    res.dim = dim;
    return res;
}

// ----------------------------------------------------------------- V*_g

template <class S>
struct VStarGResult {
    std::vector<KernelBlock<S>> blocks;  // r mu-blocks, then zero blocks
    Subspace<S> space;                   // state-part span
    int h = 0;
};

// V^_g = [N(mu_1) ... N(mu_r), M(z_1) ... M(z_t)]; conjugate pairs enter as
// matched real/imaginary column pairs (float mode).
template <class S>
VStarGResult<S> v_star_g(const LtiSystem<S>& sys, const std::vector<InvariantZero>& zeros,
                         const std::vector<S>& mu_assign) {
    VStarGResult<S> res;
    for (const auto& mu : mu_assign) {
        auto blk = detail::kernel_block(sys, mu);
        res.blocks.push_back(blk);
    }
    // Assumption 2 gate
    for (const auto& z : zeros)
        if (z.minimum_phase && z.algebraic_multiplicity > 1)
            throw std::runtime_error("coincident minimum-phase zeros unsupported");
    for (const auto& z : zeros) {
        if (!z.minimum_phase) continue;
        if constexpr (scalar_traits<S>::is_exact) {
            if (!z.exact)
                throw std::runtime_error(
                    "exact mode requires rational minimum-phase zeros (use float mode)");
            auto blk = detail::kernel_block(sys, S(*z.exact));
            blk.from_zero = true;
            res.blocks.push_back(blk);
        } else {
            if (z.value.imag() < 0) continue; // pair handled at its upper member
            KernelBlock<double> blk;
            blk.re = z.value.real();
            blk.im = z.value.imag();
            blk.from_zero = true;
            if (z.value.imag() == 0.0) {
                auto b = detail::kernel_block(sys, z.value.real());
                blk.V = b.V;
                blk.W = b.W;
            } else {
                MatD Vre, Vim, Wre, Wim;
                detail::complex_kernel(sys, z.value, Vre, Vim, Wre, Wim, 1e-9);
                blk.V = Vre;
                blk.W = Wre;
                blk.Vim = Vim;
                blk.Wim = Wim;
            }
            res.blocks.push_back(blk);
        }
    }
    Mat<S> acc(sys.n(), 0);
    for (const auto& b : res.blocks) {
        acc = hcat<S>(acc, b.V);
        if (b.is_pair()) acc = hcat<S>(acc, b.Vim);
    }
    res.space = Subspace<S>::from_span(acc);
    res.h = static_cast<int>(res.space.dim());
    return res;
}

// ------------------------------------------------------------- R*_j(lambda)

template <class S>
struct RStarJAt {
    KernelBlock<S> block;   // kernel pairs of P_{Sigma_j}(lambda)
    Vec<S> beta;            // visibility coefficient per kernel column
    Subspace<S> space;      // state-part image
};

template <class S>
RStarJAt<S> r_star_j_at(const LtiSystem<S>& sys, int j, const S& lambda, int nrank) {
    if (rank(Mat<S>(pencil(sys, lambda))) < nrank)
        throw std::invalid_argument("r_star_j_at: lambda is an invariant zero");
    LtiSystem<S> sj = delete_output(sys, j);
    RStarJAt<S> res;
    res.block = detail::kernel_block(sj, lambda);
    res.block.re = lambda;
    res.beta = Vec<S>::Zero(res.block.V.cols());
    for (Eigen::Index c = 0; c < res.block.V.cols(); ++c) {
        S b = (sys.C.row(j - 1) * res.block.V.col(c) + sys.D.row(j - 1) * res.block.W.col(c))(0, 0);
        res.beta(c) = b;
    }
    res.space = Subspace<S>::from_span(res.block.V);
    return res;
}

// R*_j by incremental stacking over the mu pool.
template <class S>
Subspace<S> r_star_j_full(const LtiSystem<S>& sys, int j, const std::vector<S>& mu_pool_values,
                          int nrank) {
    Mat<S> acc(sys.n(), 0);
    int dim = 0;
    for (const auto& mu : mu_pool_values) {
        auto rj = r_star_j_at(sys, j, mu, nrank);
        Mat<S> cand = hcat<S>(acc, rj.block.V);
        int d = rank(cand);
        if (d > dim) {
            acc = cand;
            dim = d;
        } else {
            break;
        }
    }
    return Subspace<S>::from_span(acc);
}

// ----------------------------------------------------------------- analyze

template <class S>
StructuralReport<S> analyze(const LtiSystem<S>& sys, std::uint64_t seed = 0) {
    StructuralReport<S> rep;
    rep.normal_rank = normal_rank(sys, seed);
    rep.right_invertible = rep.normal_rank == sys.n() + sys.p();
    rep.zeros = invariant_zeros(sys, rep.normal_rank, seed);
    auto st = stabilizability(sys);
    rep.stabilizable = st.stabilizable;
    rep.uncontrollable_modes = st.uncontrollable_modes;

    bool zero_at_origin = false;
    S probe = sys.domain == TimeDomain::Continuous ? S(0) : S(1);
    if (rank(Mat<S>(pencil(sys, probe))) < rep.normal_rank) zero_at_origin = true;
    rep.assumption1 = rep.right_invertible && rep.stabilizable && !zero_at_origin;
    rep.assumption2 = true;
    for (const auto& z : rep.zeros)
        if (z.minimum_phase && z.algebraic_multiplicity > 1) rep.assumption2 = false;

    // R* over a seeded pool (extended on demand)
    auto pool = mu_pool(sys, rep.zeros, static_cast<std::size_t>(sys.n()) + 1, seed);
    auto rs = r_star(sys, pool);
    rep.r_star = rs.space;
    rep.dim_r_star = rs.dim;
    rep.r_star_mu = rs.mu;

    if (rep.assumption2) {
        try {
            auto vg = v_star_g(sys, rep.zeros, rs.mu);
            rep.v_star_g = vg.space;
            rep.dim_v_star_g = vg.h;
            rep.v_star_g_blocks = vg.blocks;
        } catch (const std::runtime_error&) {
            // exact mode with irrational minimum-phase zeros: leave V*_g empty
            rep.v_star_g = Subspace<S>();
            rep.v_star_g.ambient_dim = sys.n();
            rep.dim_v_star_g = -1;
        }
    }
    return rep;
}

} // namespace monotrack
