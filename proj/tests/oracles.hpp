#pragma once

// Independent test oracles. These deliberately avoid the library's pencil
// route: ranks by minor enumeration, R* by the classical invariant-subspace
// recursions, solvability by brute-force witness sampling.

#include "monotrack/geometry.hpp"
#include "monotrack/prng.hpp"
#include "monotrack/synthesis.hpp"

#include <vector>

namespace oracles {

using namespace monotrack;

// Rank as the largest k with a nonvanishing k x k minor.
inline int minor_rank(const MatQ& M) {
    const int rows = static_cast<int>(M.rows()), cols = static_cast<int>(M.cols());
    auto det_minor = [&](const std::vector<int>& ri, const std::vector<int>& ci) {
        MatQ S(ri.size(), ci.size());
        for (std::size_t i = 0; i < ri.size(); ++i)
            for (std::size_t j = 0; j < ci.size(); ++j) S(i, j) = M(ri[i], ci[j]);
        return detail::bareiss_det(S);
    };
    for (int k = std::min(rows, cols); k >= 1; --k) {
        std::vector<int> ri(k), ci(k);
        for (int i = 0; i < k; ++i) ri[i] = i;
        auto next = [&](std::vector<int>& idx, int limit) {
            int i = k - 1;
            while (i >= 0 && idx[i] == limit - k + i) --i;
            if (i < 0) return false;
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        };
        do {
            for (int i = 0; i < k; ++i) ci[i] = i;
            do {
                if (det_minor(ri, ci) != 0) return k;
            } while (next(ci, cols));
        } while (next(ri, rows));
    }
    return 0;
}

// dim R* by the classical route: V* from the fixed-point recursion, a friend
// of V*, then the reachability recursion on V* from V* âˆ© B ker D.
inline int r_star_dim_recursion(const LtiSystem<Rat>& sys) {
    const Eigen::Index n = sys.n(), m = sys.m();
    // V*: V_{k+1} = { x | exists u: Ax + Bu in V_k, Cx + Du = 0 }
    MatQ V = MatQ::Identity(n, n);
    for (;;) {
        MatQ block = vcat<Rat>(hcat<Rat>(sys.A, hcat<Rat>(sys.B, MatQ(-V))),
                               hcat<Rat>(sys.C, hcat<Rat>(sys.D, MatQ::Zero(sys.p(), V.cols()))));
        MatQ ker = nullspace_basis(block);
        MatQ Vn = Subspace<Rat>::from_span(MatQ(ker.topRows(n))).basis;
        if (Vn.cols() == V.cols()) { V = Vn; break; }
        V = Vn;
    }
    if (V.cols() == 0) return 0;
    // a friend: for each basis column solve [B -V; D 0][u; a] = [-Av; -Cv]
    MatQ U(m, V.cols());
    for (Eigen::Index j = 0; j < V.cols(); ++j) {
        MatQ lhs = vcat<Rat>(hcat<Rat>(sys.B, MatQ(-V)),
                             hcat<Rat>(sys.D, MatQ::Zero(sys.p(), V.cols())));
        VecQ rhs(sys.n() + sys.p());
        rhs << -sys.A * V.col(j), -sys.C * V.col(j);
        VecQ sol;
        if (!solve_consistent(lhs, rhs, sol))
            throw std::logic_error("V* recursion produced a non-output-nulling column");
        U.col(j) = sol.head(m);
    }
    MatQ F = U * solve_exact(MatQ(V.transpose() * V), MatQ(V.transpose()));
    MatQ Acl = sys.A + sys.B * F;
    // G = V* âˆ© B ker D
    MatQ KD = nullspace_basis(sys.D);
    MatQ BK = sys.B * KD;
    MatQ inter(n, 0);
    if (BK.cols() > 0) {
        MatQ ker = nullspace_basis(MatQ(hcat<Rat>(V, MatQ(-BK))));
        inter = V * ker.topRows(V.cols());
    }
    MatQ R = Subspace<Rat>::from_span(inter).basis;
    for (;;) {
        MatQ Rn = Subspace<Rat>::from_span(MatQ(hcat<Rat>(R, MatQ(Acl * R)))).basis;
        if (Rn.cols() == R.cols()) break;
        R = Rn;
    }
    return static_cast<int>(R.cols());
}

// Brute-force witness search for the fixed-modes solvability question:
// sample integer selector tuples and test rank n with all beta nonzero.
struct WitnessSearch {
    bool found = false;
    long samples_used = 0;
};

inline WitnessSearch rado_witness(const LtiSystem<Rat>& sys, const StructuralReport<Rat>& report,
                                  const std::vector<Rat>& lambdas, long budget,
                                  std::uint64_t seed) {
    const Eigen::Index n = sys.n();
    auto invisible = default_invisible(sys, report, lambdas, seed);
    auto vg = v_star_g(sys, report.zeros, invisible);
    std::vector<RStarJAt<Rat>> kernels;
    for (int j = 1; j <= sys.p(); ++j)
        kernels.push_back(
            r_star_j_at(sys, j, lambdas[static_cast<std::size_t>(j - 1)], report.normal_rank));

    Prng rng(seed ^ 0x7261646fULL);
    auto selector = [&](Eigen::Index len) {
        VecQ v = VecQ::Zero(len);
        bool nz = false;
        while (!nz)
            for (Eigen::Index i = 0; i < len; ++i) {
                v(i) = Rat(static_cast<long>(rng.int_in(-5, 5)));
                nz = nz || v(i) != 0;
            }
        return v;
    };
    WitnessSearch res;
    for (long s = 0; s < budget; ++s) {
        res.samples_used = s + 1;
        MatQ V(n, 0);
        for (const auto& blk : vg.blocks) V = hcat<Rat>(V, MatQ(blk.V * selector(blk.selector_len())));
        if (rank(V) != vg.h) continue;
        bool beta_ok = true;
        for (const auto& ker : kernels) {
            VecQ kj = selector(ker.block.selector_len());
            Rat beta(0);
            for (Eigen::Index c = 0; c < kj.size(); ++c) beta += ker.beta(c) * kj(c);
            if (beta == 0) { beta_ok = false; break; }
            V = hcat<Rat>(V, MatQ(ker.block.V * kj));
        }
        if (!beta_ok) continue;
        if (rank(V) == static_cast<int>(n)) {
            res.found = true;
            return res;
        }
    }
    return res;
}

// Random right-invertible stabilizable systems whose minimum-phase zeros are
// exactly rational and simple (rejection sampling).
struct GeneratedSystem {
    LtiSystem<Rat> sys;
    StructuralReport<Rat> report;
};

inline GeneratedSystem random_system(std::uint64_t seed, int max_n = 6, int max_m = 4,
                                     int max_p = 3) {
    for (std::uint64_t attempt = 0;; ++attempt) {
        Prng rng(Prng::subseed(seed, attempt));
        int n = static_cast<int>(rng.int_in(2, max_n));
        int m = static_cast<int>(rng.int_in(1, max_m));
        int p = static_cast<int>(rng.int_in(1, std::min(m, max_p)));
        LtiSystem<Rat> sys;
        sys.A = MatQ(n, n);
        sys.B = MatQ(n, m);
        sys.C = MatQ(p, n);
        sys.D = MatQ(p, m);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) sys.A(i, j) = Rat(static_cast<long>(rng.int_in(-3, 3)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j) sys.B(i, j) = Rat(static_cast<long>(rng.int_in(-3, 3)));
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < n; ++j) sys.C(i, j) = Rat(static_cast<long>(rng.int_in(-3, 3)));
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < m; ++j)
                sys.D(i, j) = rng.int_in(0, 2) == 0 ? Rat(static_cast<long>(rng.int_in(-3, 3)))
                                                    : Rat(0);
        auto v = validate(sys);
        if (!v.ok()) continue;
        StructuralReport<Rat> rep;
        try {
            rep = analyze(sys, Prng::subseed(seed, attempt) ^ 0xabcdULL);
        } catch (const std::exception&) {
            continue;
        }
        if (!rep.right_invertible || !rep.stabilizable || !rep.assumption1 || !rep.assumption2)
            continue;
        bool zeros_ok = true;
        for (const auto& z : rep.zeros) {
            if (z.minimum_phase && (!z.exact || z.algebraic_multiplicity > 1)) zeros_ok = false;
            double margin = sys.domain == TimeDomain::Continuous
                                ? std::abs(z.value.real())
                                : std::abs(std::abs(z.value) - 1.0);
            if (!z.exact && margin < 1e-6) zeros_ok = false;
        }
        if (!zeros_ok || rep.dim_v_star_g < 0) continue;
        return {sys, rep};
    }
}

} // namespace oracles
