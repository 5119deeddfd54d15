#pragma once

#include "monotrack/geometry.hpp"

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace monotrack {

template <class S>
struct ModeSelection {
    std::vector<S> visible;         // lambda_1..lambda_p, one per output
    std::vector<S> invisible_free;  // mu_1..mu_r for the R* part (may be empty: derived)
    std::optional<double> rate;     // rho
};

template <class S>
struct ParameterSet {
    std::vector<Vec<S>> K;  // one selector per R* block
    std::vector<Vec<S>> H;  // one selector per zero block
    std::vector<Vec<S>> k;  // one selector per output kernel
    std::vector<int> psi;   // explicit retained-column indices (empty: greedy)
    std::vector<int> force_visible;  // 1-based outputs whose columns must be retained
    std::uint64_t seed = 0;
};

struct SolvabilityReport {
    bool solvable = false;
    int h = 0, n = 0, p = 0;
    bool fixed_modes = true;  // false: structural (lambda-independent) variant
    struct Failure {
        std::vector<int> subset;  // 1-based output indices
        int achieved = 0, required = 0;
    };
    std::vector<Failure> failed_subsets;

    std::string describe() const {
        std::ostringstream os;
        if (solvable) return "solvable";
        for (const auto& f : failed_subsets) {
            os << "dim(V*g";
            for (int j : f.subset) os << " + R*_" << j;
            os << ") = " << f.achieved << " < " << f.required << "; ";
        }
        return os.str();
    }
};

class UnsolvableError : public std::runtime_error {
public:
    SolvabilityReport report;
    explicit UnsolvableError(SolvabilityReport r)
        : std::runtime_error("problem unsolvable: " + r.describe()), report(std::move(r)) {}
};

// per-column labels of the assembled candidate
template <class S>
struct ColumnLabel {
    S re{}, im{};
    int owner = 0;        // 0: V*_g column, j>0: visible column of output j
    int pair_partner = -1;  // matched conjugate-pair column, if any
    S beta{};             // visibility coefficient (owner > 0)
};

template <class S>
struct AssembledCandidate {
    Mat<S> V, W;  // n x (h+p), m x (h+p)
    std::vector<ColumnLabel<S>> labels;
    int h = 0;
};

struct EigenstructureReport {
    bool output_nulling = true;      // (C+DF) V_g = 0
    bool invariant_modes = true;     // (A+BF) v = mode v per V*_g column
    bool visible_structure = true;   // (A+BF)v_j = lambda_j v_j, (C+DF)v_j = beta_j e_j
    bool spectrum_match = true;      // char poly equals the retained labels
    double max_residual = 0.0;
    std::vector<std::string> failures;
    bool ok() const {
        return output_nulling && invariant_modes && visible_structure && spectrum_match;
    }
};

template <class S>
struct SynthesisResult {
    Mat<S> F;
    struct PerOutput {
        int output = 0;
        bool visible = false;
        S mode{};
        S beta{};
    };
    std::vector<PerOutput> per_output;
    std::vector<ColumnLabel<S>> retained_labels;
    Mat<S> basis_V, basis_W;  // the retained (v, w) columns
    std::vector<int> psi;     // retained candidate-column indices
    std::uint64_t seed = 0;
    EigenstructureReport verification;
};

namespace detail {

template <class S>
void require_modes_admissible(const LtiSystem<S>& sys,
                              const std::vector<InvariantZero>& zeros,
                              const ModeSelection<S>& modes) {
    if (static_cast<Eigen::Index>(modes.visible.size()) != sys.p())
        throw std::invalid_argument("mode selection: need one visible mode per output");
    for (const auto& l : modes.visible) {
        if constexpr (scalar_traits<S>::is_exact) {
            if (!in_lambda_g(l, sys.domain))
                throw std::invalid_argument("visible mode outside Lambda_g");
        } else {
            bool ok = sys.domain == TimeDomain::Continuous ? l < 0 : (l >= 0 && l < 1);
            if (!ok) throw std::invalid_argument("visible mode outside Lambda_g");
        }
        for (const auto& z : zeros)
            if (std::abs(z.value - std::complex<double>(to_double(l), 0.0)) < 1e-12)
                throw std::invalid_argument("visible mode coincides with an invariant zero");
        if (modes.rate) {
            if (to_double(l) > *modes.rate + 1e-15)
                throw std::invalid_argument("visible mode slower than the requested rate");
        }
    }
    for (std::size_t i = 0; i < modes.invisible_free.size(); ++i)
        for (std::size_t j = i + 1; j < modes.invisible_free.size(); ++j)
            if (modes.invisible_free[i] == modes.invisible_free[j])
                throw std::invalid_argument("invisible modes must be distinct");
}

} // namespace detail

// Free invisible modes when the caller does not choose them: distinct values
// drawn from the visible list first, then from the seeded pool.
template <class S>
std::vector<S> default_invisible(const LtiSystem<S>& sys, const StructuralReport<S>& report,
                                 const std::vector<S>& visible, std::uint64_t seed) {
    std::vector<S> out;
    auto want = static_cast<std::size_t>(report.dim_r_star);
    for (const auto& l : visible) {
        if (out.size() == want) break;
        bool dup = false;
        for (const auto& v : out) dup = dup || v == l;
        bool is_zero = false;
        for (const auto& z : report.zeros)
            if (std::abs(z.value - std::complex<double>(to_double(l), 0.0)) < 1e-9) is_zero = true;
        if (!dup && !is_zero) out.push_back(l);
    }
    if (out.size() < want) {
        auto extra = mu_pool(sys, report.zeros, want - out.size() + 4, seed, out);
        for (const auto& v : extra) {
            if (out.size() == want) break;
            out.push_back(v);
        }
    }
    return out;
}

// ------------------------------------------------- solvability conditions

// Subset dimension conditions over R*_j(lambda_j) (fixed modes) or the full
// R*_j (structural). Only subsets with card > h - (n-p) can fail.
template <class S>
SolvabilityReport check_subsets(const LtiSystem<S>& sys, const Subspace<S>& vg, int h,
                                const std::vector<Subspace<S>>& rj, bool fixed_modes) {
    const int n = static_cast<int>(sys.n()), p = static_cast<int>(sys.p());
    if (p > 20) throw std::invalid_argument("subset enumeration bound exceeded");
    SolvabilityReport rep;
    rep.h = h;
    rep.n = n;
    rep.p = p;
    rep.fixed_modes = fixed_modes;
    if (h < n - p) {
        rep.failed_subsets.push_back({{}, h, n - p});
        rep.solvable = false;
        return rep;
    }
    const int threshold = h - (n - p);
    for (std::uint32_t mask = 1; mask < (1u << p); ++mask) {
        int card = __builtin_popcount(mask);
        if (card <= threshold) continue;
        std::vector<Subspace<S>> parts{vg};
        std::vector<int> subset;
        for (int j = 0; j < p; ++j)
            if (mask & (1u << j)) {
                parts.push_back(rj[static_cast<std::size_t>(j)]);
                subset.push_back(j + 1);
            }
        int achieved = sum_dim(parts);
        int required = (n - p) + card;
        if (achieved < required)
            rep.failed_subsets.push_back({subset, achieved, required});
    }
    rep.solvable = rep.failed_subsets.empty();
    return rep;
}

template <class S>
SolvabilityReport check_fixed_modes(const LtiSystem<S>& sys, const StructuralReport<S>& report,
                                    const ModeSelection<S>& modes) {
    if (!report.assumption1 || !report.assumption2)
        throw std::invalid_argument("check_fixed_modes: assumptions 1-2 must hold");
    detail::require_modes_admissible(sys, report.zeros, modes);
    std::vector<Subspace<S>> rj;
    for (int j = 1; j <= sys.p(); ++j)
        rj.push_back(r_star_j_at(sys, j, modes.visible[static_cast<std::size_t>(j - 1)],
                                 report.normal_rank)
                         .space);
    return check_subsets(sys, report.v_star_g, report.dim_v_star_g, rj, true);
}

template <class S>
SolvabilityReport check_structural(const LtiSystem<S>& sys, const StructuralReport<S>& report,
                                   std::uint64_t seed = 0) {
    if (!report.assumption1 || !report.assumption2)
        throw std::invalid_argument("check_structural: assumptions 1-2 must hold");
    auto pool = mu_pool(sys, report.zeros, static_cast<std::size_t>(sys.n()) + 1,
                        seed ^ 0x52736a601dULL);
    std::vector<Subspace<S>> rj;
    for (int j = 1; j <= sys.p(); ++j)
        rj.push_back(r_star_j_full(sys, j, pool, report.normal_rank));
    auto rep = check_subsets(sys, report.v_star_g, report.dim_v_star_g, rj, false);
    return rep;
}

// ------------------------------------------------------------- assembly

// V = [ V^_g diag{K, H} | V_1 k_1 | ... | V_p k_p ] with companion W; visible
// selectors are resampled while beta_j = 0 (membership in R^_j requires
// beta != 0). Explicit selectors are never resampled.
template <class S>
AssembledCandidate<S> assemble_candidate(const LtiSystem<S>& sys,
                                         const StructuralReport<S>& report,
                                         const ModeSelection<S>& modes, ParameterSet<S>& params) {
    detail::require_modes_admissible(sys, report.zeros, modes);
    auto invisible = modes.invisible_free;
    if (static_cast<int>(invisible.size()) != report.dim_r_star)
        throw std::invalid_argument("assemble_candidate: need exactly dim R* invisible modes");
    for (const auto& mu : invisible) {
        bool stable;
        if constexpr (scalar_traits<S>::is_exact) stable = in_cg(mu, sys.domain);
        else stable = in_cg(std::complex<double>(mu, 0.0), sys.domain);
        if (!stable) throw std::invalid_argument("invisible mode not stable");
        for (const auto& z : report.zeros)
            if (std::abs(z.value - std::complex<double>(to_double(mu), 0.0)) < 1e-12)
                throw std::invalid_argument("invisible mode coincides with an invariant zero");
    }
    auto vg = v_star_g(sys, report.zeros, invisible);
    Prng rng(params.seed ^ 0x617373656d626cULL);

    auto random_selector = [&](Eigen::Index len) {
        Vec<S> v = Vec<S>::Zero(len);
        bool nonzero = false;
        while (!nonzero) {
            for (Eigen::Index i = 0; i < len; ++i) {
                v(i) = S(static_cast<long>(rng.int_in(-5, 5)));
                if (v(i) != S(0)) nonzero = true;
            }
        }
        return v;
    };
    auto check_selector = [](const Vec<S>& v, Eigen::Index len, const char* which) {
        if (v.size() != len) throw std::invalid_argument(std::string(which) + ": selector length");
        bool nz = false;
        for (Eigen::Index i = 0; i < v.size(); ++i) nz = nz || v(i) != S(0);
        if (!nz) throw std::invalid_argument(std::string(which) + ": zero selector");
    };

    // split the V*_g blocks into R* blocks (K) and zero blocks (H)
    std::vector<std::size_t> kidx, hidx;
    for (std::size_t b = 0; b < vg.blocks.size(); ++b)
        (vg.blocks[b].from_zero ? hidx : kidx).push_back(b);
    const bool explicit_K = !params.K.empty(), explicit_H = !params.H.empty();
    if (explicit_K && params.K.size() != kidx.size())
        throw std::invalid_argument("ParameterSet.K: expected one selector per R* block");
    if (explicit_H && params.H.size() != hidx.size())
        throw std::invalid_argument("ParameterSet.H: expected one selector per zero block");

    AssembledCandidate<S> out;
    out.h = vg.h;
    const int max_tries = 100;
    for (int attempt = 0;; ++attempt) {
        if (attempt >= max_tries)
            throw std::runtime_error("assemble_candidate: cannot realize rank-h V*_g basis");
        Mat<S> V(sys.n(), 0), W(sys.m(), 0);
        std::vector<ColumnLabel<S>> labels;
        if (!explicit_K)
            params.K.assign(kidx.size(), Vec<S>());
        if (!explicit_H)
            params.H.assign(hidx.size(), Vec<S>());
        for (std::size_t i = 0; i < kidx.size(); ++i) {
            const auto& blk = vg.blocks[kidx[i]];
            if (!explicit_K) params.K[i] = random_selector(blk.selector_len());
            check_selector(params.K[i], blk.selector_len(), "K");
            V = hcat<S>(V, Mat<S>(blk.V * params.K[i]));
            W = hcat<S>(W, Mat<S>(blk.W * params.K[i]));
            labels.push_back({blk.re, blk.im, 0, -1, S(0)});
        }
        for (std::size_t i = 0; i < hidx.size(); ++i) {
            const auto& blk = vg.blocks[hidx[i]];
            if (!explicit_H) params.H[i] = random_selector(blk.selector_len());
            check_selector(params.H[i], blk.selector_len(), "H");
            if (blk.is_pair()) {
                int base = static_cast<int>(labels.size());
                V = hcat<S>(V, Mat<S>(blk.V * params.H[i]));
                W = hcat<S>(W, Mat<S>(blk.W * params.H[i]));
                V = hcat<S>(V, Mat<S>(blk.Vim * params.H[i]));
                W = hcat<S>(W, Mat<S>(blk.Wim * params.H[i]));
                labels.push_back({blk.re, blk.im, 0, base + 1, S(0)});
                labels.push_back({blk.re, S(-1) * blk.im, 0, base, S(0)});
            } else {
                V = hcat<S>(V, Mat<S>(blk.V * params.H[i]));
                W = hcat<S>(W, Mat<S>(blk.W * params.H[i]));
                labels.push_back({blk.re, blk.im, 0, -1, S(0)});
            }
        }
        if (rank(V) == vg.h) {
            out.V = V;
            out.W = W;
            out.labels = labels;
            break;
        }
        if (explicit_K && explicit_H)
            throw std::runtime_error("assemble_candidate: explicit K/H give rank-deficient V*_g");
    }

    // visible columns
    const bool explicit_k = !params.k.empty();
    if (explicit_k && static_cast<Eigen::Index>(params.k.size()) != sys.p())
        throw std::invalid_argument("ParameterSet.k: expected one selector per output");
    if (!explicit_k) params.k.assign(static_cast<std::size_t>(sys.p()), Vec<S>());
    for (int j = 1; j <= sys.p(); ++j) {
        auto rj = r_star_j_at(sys, j, modes.visible[static_cast<std::size_t>(j - 1)],
                              report.normal_rank);
        const Eigen::Index len = rj.block.selector_len();
        auto& kj = params.k[static_cast<std::size_t>(j - 1)];
        S beta(0);
        Vec<S> v, w;
        for (int attempt = 0;; ++attempt) {
            if (attempt >= max_tries)
                throw std::runtime_error("cannot realize nonzero visibility coefficient");
            if (!explicit_k) kj = random_selector(len);
            check_selector(kj, len, "k");
            v = rj.block.V * kj;
            w = rj.block.W * kj;
            beta = S(0);
            for (Eigen::Index c = 0; c < len; ++c) beta += rj.beta(c) * kj(c);
            bool beta_ok;
            if constexpr (scalar_traits<S>::is_exact) beta_ok = beta != S(0);
            else beta_ok = std::abs(to_double(beta)) > 1e-9;
            if (beta_ok) break;
            if (explicit_k)
                throw std::runtime_error("cannot realize nonzero visibility coefficient");
        }
        out.V = hcat<S>(out.V, Mat<S>(v));
        out.W = hcat<S>(out.W, Mat<S>(w));
        out.labels.push_back({modes.visible[static_cast<std::size_t>(j - 1)], S(0), j, -1, beta});
    }
    return out;
}

// ------------------------------------------------------- column selection

// Greedy psi: retain V*_g columns first (as many invisible modes as possible),
// then visible columns in output order while the rank grows. Forced outputs
// are seated before the V*_g block.
template <class S>
std::vector<int> select_columns(const AssembledCandidate<S>& cand,
                                const std::vector<int>& force_visible = {}) {
    const Eigen::Index n = cand.V.rows();
    if (rank(cand.V) != n)
        throw std::invalid_argument("select_columns: candidate does not span the state space");
    std::vector<int> order;
    auto push_col = [&](int idx) {
        for (int o : order)
            if (o == idx) return;
        order.push_back(idx);
        int partner = cand.labels[static_cast<std::size_t>(idx)].pair_partner;
        if (partner >= 0) order.push_back(partner);
    };
    for (int j : force_visible)
        for (std::size_t c = 0; c < cand.labels.size(); ++c)
            if (cand.labels[c].owner == j) push_col(static_cast<int>(c));
    for (std::size_t c = 0; c < cand.labels.size(); ++c)
        if (cand.labels[c].owner == 0) push_col(static_cast<int>(c));
    for (std::size_t c = 0; c < cand.labels.size(); ++c)
        if (cand.labels[c].owner > 0) push_col(static_cast<int>(c));

    std::vector<int> psi;
    Mat<S> acc(n, 0);
    std::size_t oi = 0;
    while (oi < order.size() && static_cast<Eigen::Index>(psi.size()) < n) {
        int idx = order[oi];
        int partner = cand.labels[static_cast<std::size_t>(idx)].pair_partner;
        bool joint = partner >= 0 && oi + 1 < order.size() && order[oi + 1] == partner;
        Mat<S> cols = cand.V.col(idx);
        if (joint) cols = hcat<S>(cols, Mat<S>(cand.V.col(partner)));
        Mat<S> trial = hcat<S>(acc, cols);
        if (rank(trial) == static_cast<int>(acc.cols() + cols.cols())) {
            acc = trial;
            psi.push_back(idx);
            if (joint) psi.push_back(partner);
        } else {
            bool forced = false;
            for (int j : force_visible)
                forced = forced || cand.labels[static_cast<std::size_t>(idx)].owner == j;
            if (forced)
                throw std::runtime_error("select_columns: forced visible column is dependent");
        }
        oi += joint ? 2 : 1;
    }
    if (static_cast<Eigen::Index>(psi.size()) != n)
        throw std::runtime_error("select_columns: no invertible selection found");
    std::sort(psi.begin(), psi.end());
    return psi;
}

// --------------------------------------------------------- verification

template <class S>
EigenstructureReport verify_eigenstructure(const LtiSystem<S>& sys,
                                           const SynthesisResult<S>& result) {
    EigenstructureReport rep;
    const double tol = scalar_traits<S>::is_exact ? 0.0 : 1e-7;
    Mat<S> Acl = sys.A + sys.B * result.F;
    Mat<S> Ccl = sys.C + sys.D * result.F;
    auto note = [&](const std::string& msg, double r) {
        rep.failures.push_back(msg);
        rep.max_residual = std::max(rep.max_residual, r);
    };
    auto resid = [&](const Mat<S>& M) {
        double r = 0;
        for (Eigen::Index i = 0; i < M.rows(); ++i)
            for (Eigen::Index j = 0; j < M.cols(); ++j)
                r = std::max(r, std::abs(to_double(M(i, j))));
        return r;
    };
    for (std::size_t c = 0; c < result.retained_labels.size(); ++c) {
        const auto& lab = result.retained_labels[c];
        Vec<S> v = result.basis_V.col(static_cast<Eigen::Index>(c));
        if (lab.owner == 0) {
            double r = resid(Mat<S>(Ccl * v));
            if (r > tol) {
                rep.output_nulling = false;
                note("output-nulling failed on a V*_g column", r);
            }
            if (lab.pair_partner < 0) {
                double ri = resid(Mat<S>(Acl * v - lab.re * v));
                if (ri > tol) {
                    rep.invariant_modes = false;
                    note("V*_g column is not an eigenvector at its label", ri);
                }
            } else if (to_double(lab.im) > 0) {
                // rotation pair: A v1 = sigma v1 - omega v2; A v2 = omega v1 + sigma v2
                Vec<S> v2 = result.basis_V.col(lab.pair_partner);
                double r1 = resid(Mat<S>(Acl * v - (lab.re * v - lab.im * v2)));
                double r2 = resid(Mat<S>(Acl * v2 - (lab.im * v + lab.re * v2)));
                if (std::max(r1, r2) > tol) {
                    rep.invariant_modes = false;
                    note("conjugate pair violates the rotation-block relation",
                         std::max(r1, r2));
                }
            }
        } else {
            double r = resid(Mat<S>(Acl * v - lab.re * v));
            Vec<S> cv = Ccl * v;
            double rc = 0;
            for (Eigen::Index i = 0; i < cv.size(); ++i) {
                if (i == lab.owner - 1) continue;
                rc = std::max(rc, std::abs(to_double(cv(i))));
            }
            bool beta_ok;
            if constexpr (scalar_traits<S>::is_exact)
                beta_ok = cv(lab.owner - 1) == lab.beta && lab.beta != S(0);
            else
                beta_ok = std::abs(to_double(cv(lab.owner - 1) - lab.beta)) < 1e-6 &&
                          std::abs(to_double(lab.beta)) > 1e-9;
            if (r > tol || rc > tol || !beta_ok) {
                rep.visible_structure = false;
                note("visible column structure failed", std::max(r, rc));
            }
        }
    }
    // spectrum: char poly of A+BF against the product over retained labels
    auto cp = charpoly(Acl);
    PolyQ target = PolyQ::constant(Rat(1));
    if constexpr (scalar_traits<S>::is_exact) {
        for (const auto& lab : result.retained_labels)
            target = poly_mul(target, PolyQ({Rat(-lab.re), Rat(1)}));
        bool match = static_cast<int>(cp.size()) - 1 == target.degree();
        if (match)
            for (std::size_t i = 0; i < cp.size(); ++i)
                match = match && cp[i] == target.c[i];
        if (!match) {
            rep.spectrum_match = false;
            note("closed-loop spectrum differs from the retained labels", 1.0);
        }
    } else {
        std::vector<double> tc{1.0};
        for (const auto& lab : result.retained_labels) {
            if (to_double(lab.im) < 0) continue;  // pair counted once below
            std::vector<double> f;
            if (lab.pair_partner >= 0)
                f = {lab.re * lab.re + lab.im * lab.im, -2 * lab.re, 1.0};
            else
                f = {-lab.re, 1.0};
            std::vector<double> nx(tc.size() + f.size() - 1, 0.0);
            for (std::size_t i = 0; i < tc.size(); ++i)
                for (std::size_t j2 = 0; j2 < f.size(); ++j2) nx[i + j2] += tc[i] * f[j2];
            tc = nx;
        }
        double r = 0;
        if (tc.size() != cp.size()) r = 1.0;
        else
            for (std::size_t i = 0; i < cp.size(); ++i)
                r = std::max(r, std::abs(cp[i] - tc[i]));
        if (r > 1e-6) {
            rep.spectrum_match = false;
            note("closed-loop spectrum differs from the retained labels", r);
        }
    }
    return rep;
}

// ----------------------------------------------------------- synthesis

template <class S>
SynthesisResult<S> synthesize_feedback(const LtiSystem<S>& sys,
                                       const StructuralReport<S>& report,
                                       const ModeSelection<S>& modes, ParameterSet<S> params) {
    auto cand = assemble_candidate(sys, report, modes, params);
    std::vector<int> psi = params.psi;
    if (psi.empty()) psi = select_columns(cand, params.force_visible);
    if (static_cast<Eigen::Index>(psi.size()) != sys.n())
        throw std::invalid_argument("psi must retain exactly n columns");

    SynthesisResult<S> res;
    res.seed = params.seed;
    res.psi = psi;
    res.basis_V = Mat<S>(sys.n(), sys.n());
    res.basis_W = Mat<S>(sys.m(), sys.n());
    std::vector<int> remap(cand.labels.size(), -1);
    for (std::size_t i = 0; i < psi.size(); ++i) {
        res.basis_V.col(static_cast<Eigen::Index>(i)) = cand.V.col(psi[i]);
        res.basis_W.col(static_cast<Eigen::Index>(i)) = cand.W.col(psi[i]);
        res.retained_labels.push_back(cand.labels[static_cast<std::size_t>(psi[i])]);
        remap[static_cast<std::size_t>(psi[i])] = static_cast<int>(i);
    }
    for (auto& lab : res.retained_labels)
        if (lab.pair_partner >= 0) {
            int t = remap[static_cast<std::size_t>(lab.pair_partner)];
            if (t < 0) throw std::runtime_error("psi split a conjugate pair");
            lab.pair_partner = t;
        }
    if (rank(res.basis_V) != sys.n())
        throw std::runtime_error("retained columns are not invertible");
    res.F = right_solve(res.basis_V, res.basis_W);

    for (int j = 1; j <= sys.p(); ++j) {
        typename SynthesisResult<S>::PerOutput po;
        po.output = j;
        po.visible = false;
        for (const auto& lab : res.retained_labels)
            if (lab.owner == j) {
                po.visible = true;
                po.mode = lab.re;
                po.beta = lab.beta;
            }
        res.per_output.push_back(po);
    }
    res.verification = verify_eigenstructure(sys, res);
    if (!res.verification.ok()) {
        std::string msg = "eigenstructure verification failed:";
        for (const auto& f : res.verification.failures) msg += " " + f;
        throw std::runtime_error(msg);
    }
    return res;
}

// Full pipeline: structural analysis, solvability, seeded random parameters
// with bounded resampling, column selection, synthesis, verification.
template <class S>
SynthesisResult<S> synthesize_auto(const LtiSystem<S>& sys, const ModeSelection<S>& modes_in,
                                   std::uint64_t seed,
                                   const std::vector<int>& force_visible = {},
                                   const StructuralReport<S>* pre = nullptr) {
    StructuralReport<S> local;
    if (!pre) {
        local = analyze(sys, seed);
        pre = &local;
    }
    const auto& report = *pre;
    if (!report.assumption1)
        throw std::runtime_error("assumption 1 fails: system must be right invertible, "
                                 "stabilizable, and free of zeros at the step frequency");
    if (!report.assumption2)
        throw std::runtime_error("coincident minimum-phase zeros unsupported");
    ModeSelection<S> modes = modes_in;
    if (modes.invisible_free.empty() && report.dim_r_star > 0)
        modes.invisible_free = default_invisible(sys, report, modes.visible, seed);
    auto solv = check_fixed_modes(sys, report, modes);
    if (!solv.solvable) throw UnsolvableError(solv);

    std::string last_err = "synthesize_auto: retries exhausted";
    for (int attempt = 0; attempt < 25; ++attempt) {
        ParameterSet<S> params;
        params.seed = Prng::subseed(seed, static_cast<std::uint64_t>(attempt));
        params.force_visible = force_visible;
        try {
            return synthesize_feedback(sys, report, modes, params);
        } catch (const std::runtime_error& e) {
            last_err = e.what();
        }
    }
    throw std::runtime_error(last_err);
}

// ------------------------------------------------------------- sweep

template <class S>
struct SweepRow {
    std::vector<S> lambdas;
    enum class Status { Success, Skipped, Failed } status = Status::Failed;
    std::string message;
    Mat<S> F;  // set on success
};

// Attempts synthesize_auto on every grid assignment. Grid points are
// independent (each derives its own sub-seed), so the parallel path returns
// exactly the sequential result.
template <class S>
std::vector<SweepRow<S>> structural_sweep(const LtiSystem<S>& sys,
                                          const std::vector<std::vector<S>>& lambda_grid,
                                          std::uint64_t seed, bool parallel = false) {
    StructuralReport<S> report = analyze(sys, seed);
    auto structural = check_structural(sys, report, seed);
    if (!structural.solvable) throw UnsolvableError(structural);

    std::vector<SweepRow<S>> rows(lambda_grid.size());
    auto run_one = [&](std::size_t g) {
        SweepRow<S>& row = rows[g];
        row.lambdas = lambda_grid[g];
        for (const auto& l : row.lambdas)
            for (const auto& z : report.zeros)
                if (std::abs(z.value - std::complex<double>(to_double(l), 0.0)) < 1e-12) {
                    row.status = SweepRow<S>::Status::Skipped;
                    row.message = "lambda coincides with an invariant zero";
                    return;
                }
        try {
            ModeSelection<S> modes;
            modes.visible = row.lambdas;
            auto res = synthesize_auto(sys, modes, Prng::subseed(seed, g), {}, &report);
            row.status = SweepRow<S>::Status::Success;
            row.F = res.F;
        } catch (const std::exception& e) {
            row.status = SweepRow<S>::Status::Failed;
            row.message = e.what();
        }
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long long g = 0; g < static_cast<long long>(lambda_grid.size()); ++g)
            run_one(static_cast<std::size_t>(g));
    } else {
        for (std::size_t g = 0; g < lambda_grid.size(); ++g) run_one(g);
    }
    return rows;
}

} // namespace monotrack
