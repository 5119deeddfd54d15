#pragma once

#include "monotrack/prng.hpp"
#include "monotrack/synthesis.hpp"
#include "monotrack/system.hpp"

#include <cmath>
#include <optional>
#include <vector>

namespace monotrack {

// Pade-13 scaling and squaring.
inline MatD expm(const MatD& A) {
    static const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                               1187353796428800.0,  129060195264000.0,   10559470521600.0,
                               670442572800.0,      33522128640.0,       1323241920.0,
                               40840800.0,          960960.0,            16380.0,
                               182.0,               1.0};
    const Eigen::Index n = A.rows();
    double nrm = A.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    MatD As = A;
    if (nrm > 5.371920351148152) {
        squarings = std::max(0, static_cast<int>(std::ceil(std::log2(nrm / 5.371920351148152))));
        As = A / std::pow(2.0, squarings);
    }
    MatD I = MatD::Identity(n, n);
    MatD A2 = As * As, A4 = A2 * A2, A6 = A4 * A2;
    MatD U = As * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) +
                   b[7] * A6 + b[5] * A4 + b[3] * A2 + b[1] * I);
    MatD V = A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) +
             b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * I;
    MatD R = (V - U).fullPivLu().solve(V + U);
    for (int s = 0; s < squarings; ++s) R = R * R;
    return R;
}

struct ClosedLoop {
    MatD Acl, Ccl;
    TimeDomain domain = TimeDomain::Continuous;
    SteadyState<double> steady;
    // per-output visible mode, when known from synthesis (empty: estimated)
    std::vector<std::optional<double>> component_modes;
};

template <class S>
ClosedLoop closed_loop(const LtiSystem<S>& sys, const Mat<S>& F, const Vec<S>& r) {
    LtiSystem<double> sd{to_double_mat(sys.A), to_double_mat(sys.B), to_double_mat(sys.C),
                         to_double_mat(sys.D), sys.domain};
    MatD Fd = to_double_mat(F);
    ClosedLoop cl;
    cl.Acl = sd.A + sd.B * Fd;
    cl.Ccl = sd.C + sd.D * Fd;
    cl.domain = sys.domain;
    Eigen::EigenSolver<MatD> es(cl.Acl);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        if (!in_cg(es.eigenvalues()(i), sys.domain))
            throw std::runtime_error("feedback not stabilizing");
    SteadyState<S> ss = steady_state(sys, r);
    cl.steady.x_ss = to_double_vec(ss.x_ss);
    cl.steady.u_ss = to_double_vec(ss.u_ss);
    cl.steady.reference = to_double_vec(ss.reference);
    cl.component_modes.assign(static_cast<std::size_t>(sys.p()), std::nullopt);
    return cl;
}

struct SimulationTrace {
    TimeDomain domain = TimeDomain::Continuous;
    VecD times;                 // time grid (continuous) or step indices (discrete)
    std::vector<VecD> xi;       // error state per sample
    std::vector<VecD> eps;      // tracking error per sample
    std::vector<std::optional<double>> modes;  // per-component hints
    VecD gamma;                 // fitted amplitudes (set by check_monotone)
    VecD mode_fit_residual;
};

// slowest decay rate of the closed loop; drives the default horizon
inline double slowest_mode(const ClosedLoop& cl) {
    Eigen::EigenSolver<MatD> es(cl.Acl);
    if (cl.domain == TimeDomain::Continuous) {
        double worst = -std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
            worst = std::max(worst, es.eigenvalues()(i).real());
        return worst;  // negative
    }
    double worst = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        worst = std::max(worst, std::abs(es.eigenvalues()(i)));
    return worst;  // in [0, 1)
}

inline double default_horizon(const ClosedLoop& cl) {
    if (cl.domain == TimeDomain::Continuous) {
        double rho = slowest_mode(cl);
        return 8.0 / std::abs(rho);
    }
    double rho = slowest_mode(cl);
    if (rho < 1e-12) return static_cast<double>(cl.Acl.rows() + 2);
    return std::ceil(8.0 / std::abs(std::log(rho)));
}

// xi(t) = exp(Acl t) xi(0), by eigendecomposition when Acl is diagonalizable
// within tolerance, otherwise by scaling-and-squaring per sample; discrete
// systems iterate the map.
inline SimulationTrace simulate(const ClosedLoop& cl, const VecD& x0, double horizon = 0.0,
                                double dt = 0.0) {
    const Eigen::Index n = cl.Acl.rows();
    if (x0.size() != n) throw std::invalid_argument("simulate: x0 size");
    VecD xi0 = x0 - cl.steady.x_ss;
    SimulationTrace tr;
    tr.domain = cl.domain;
    tr.modes = cl.component_modes;
    if (cl.domain == TimeDomain::Discrete) {
        long steps = horizon > 0 ? static_cast<long>(horizon) : static_cast<long>(default_horizon(cl));
        steps = std::max<long>(steps, 1);
        tr.times.resize(steps + 1);
        VecD x = xi0;
        for (long k = 0; k <= steps; ++k) {
            tr.times(k) = static_cast<double>(k);
            tr.xi.push_back(x);
            tr.eps.push_back(cl.Ccl * x);
            x = cl.Acl * x;
        }
        return tr;
    }
    if (horizon <= 0) horizon = default_horizon(cl);
    if (dt <= 0) dt = horizon / 400.0;
    const long samples = static_cast<long>(std::floor(horizon / dt + 1e-9));
    tr.times.resize(samples + 1);

    Eigen::EigenSolver<MatD> es(cl.Acl);
    Eigen::MatrixXcd V = es.eigenvectors();
    Eigen::VectorXcd d = es.eigenvalues();
    bool modal = false;
    Eigen::VectorXcd c;
    Eigen::JacobiSVD<MatD> svd;
    {
        Eigen::FullPivLU<Eigen::MatrixXcd> lu(V);
        if (lu.isInvertible()) {
            c = lu.solve(xi0.cast<std::complex<double>>());
            // residual check: V diag(d) V^-1 must reproduce Acl
            MatD rec = (V * d.asDiagonal() * lu.inverse()).real();
            if ((rec - cl.Acl).cwiseAbs().maxCoeff() <=
                1e-9 * (1.0 + cl.Acl.cwiseAbs().maxCoeff()))
                modal = true;
        }
    }
    for (long k = 0; k <= samples; ++k) {
        double t = static_cast<double>(k) * dt;
        tr.times(k) = t;
        VecD x;
        if (modal) {
            Eigen::VectorXcd xc = Eigen::VectorXcd::Zero(n);
            for (Eigen::Index i = 0; i < n; ++i) xc += c(i) * std::exp(d(i) * t) * V.col(i);
            x = xc.real();
        } else {
            x = expm(MatD(cl.Acl * t)) * xi0;
        }
        tr.xi.push_back(x);
        tr.eps.push_back(cl.Ccl * x);
    }
    return tr;
}

struct ComponentVerdict {
    enum class Status { Pass, PassInstantaneous, Fail };
    Status status = Status::Fail;
    bool monotone = false;
    bool envelope_ok = true;   // meaningful when a mode bound was supplied
    double fit_residual = 0.0; // relative, against the single-mode fit
    double gamma = 0.0;
    double mode_used = 0.0;
    bool passed() const { return status != Status::Fail; }
};

inline double envelope(TimeDomain dom, double rho, double t) {
    if (dom == TimeDomain::Continuous) return std::exp(rho * t);
    if (t == 0.0) return 1.0;
    return std::pow(rho, t);
}

// Per-component verdict: weak sampled monotonicity toward zero plus the
// analytic single-mode fit (the authoritative criterion), plus the envelope
// bound when a rate is supplied.
inline std::vector<ComponentVerdict> check_monotone(SimulationTrace& tr,
                                                    std::optional<double> mode_bound = {}) {
    const std::size_t N = tr.eps.size();
    const Eigen::Index p = N ? tr.eps[0].size() : 0;
    std::vector<ComponentVerdict> out(static_cast<std::size_t>(p));
    tr.gamma = VecD::Zero(p);
    tr.mode_fit_residual = VecD::Zero(p);
    for (Eigen::Index kcomp = 0; kcomp < p; ++kcomp) {
        ComponentVerdict& v = out[static_cast<std::size_t>(kcomp)];
        double scale = 0.0;
        for (std::size_t i = 0; i < N; ++i)
            scale = std::max(scale, std::abs(tr.eps[i](kcomp)));
        if (scale == 0.0) {
            v.status = ComponentVerdict::Status::PassInstantaneous;
            v.monotone = true;
            continue;
        }
        const double slack = 1e-9 * scale;
        bool monotone = true;
        for (std::size_t i = 1; i < N; ++i) {
            double a = std::abs(tr.eps[i - 1](kcomp)), b = std::abs(tr.eps[i](kcomp));
            if (b > a + slack) monotone = false;
            double sa = tr.eps[i - 1](kcomp), sb = tr.eps[i](kcomp);
            if (sa * sb < 0 && std::min(std::abs(sa), std::abs(sb)) > slack) monotone = false;
        }
        v.monotone = monotone;
        // the mode for the fit: hint, or log-regression estimate
        double lam;
        if (tr.modes.size() > static_cast<std::size_t>(kcomp) &&
            tr.modes[static_cast<std::size_t>(kcomp)]) {
            lam = *tr.modes[static_cast<std::size_t>(kcomp)];
        } else {
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            long cnt = 0;
            for (std::size_t i = 0; i < N; ++i) {
                double e = std::abs(tr.eps[i](kcomp));
                if (e < 1e-6 * scale) continue;
                double t = tr.times(static_cast<Eigen::Index>(i));
                double y = std::log(e);
                sx += t; sy += y; sxx += t * t; sxy += t * y;
                ++cnt;
            }
            double slope = cnt > 1 ? (static_cast<double>(cnt) * sxy - sx * sy) /
                                         (static_cast<double>(cnt) * sxx - sx * sx)
                                   : -1.0;
            lam = tr.domain == TimeDomain::Continuous ? slope : std::exp(slope);
        }
        v.mode_used = lam;
        // least-squares amplitude against the envelope of lam
        double num = 0, den = 0;
        for (std::size_t i = 0; i < N; ++i) {
            double env = envelope(tr.domain, lam, tr.times(static_cast<Eigen::Index>(i)));
            num += tr.eps[i](kcomp) * env;
            den += env * env;
        }
        double gamma = den > 0 ? num / den : 0.0;
        double resid = 0;
        for (std::size_t i = 0; i < N; ++i) {
            double env = envelope(tr.domain, lam, tr.times(static_cast<Eigen::Index>(i)));
            resid = std::max(resid, std::abs(tr.eps[i](kcomp) - gamma * env));
        }
        v.gamma = gamma;
        v.fit_residual = resid / scale;
        tr.gamma(kcomp) = gamma;
        tr.mode_fit_residual(kcomp) = v.fit_residual;
        if (mode_bound) {
            double beta0 = std::abs(tr.eps[0](kcomp));
            double t0 = tr.times(0);
            for (std::size_t i = 0; i < N; ++i) {
                double bound = beta0 * envelope(tr.domain, *mode_bound,
                                                tr.times(static_cast<Eigen::Index>(i)) - t0);
                if (std::abs(tr.eps[i](kcomp)) > bound * (1.0 + 1e-6) + 1e-12 * scale)
                    v.envelope_ok = false;
            }
        }
        v.status = (monotone && v.envelope_ok) ? ComponentVerdict::Status::Pass
                                               : ComponentVerdict::Status::Fail;
    }
    return out;
}

struct BatchResult {
    long trials = 0;
    struct Component {
        long pass = 0, fail = 0, instantaneous = 0;
        double worst_fit_residual = 0.0;
        long envelope_violations = 0;
    };
    std::vector<Component> components;
    bool all_pass() const {
        for (const auto& c : components)
            if (c.fail > 0) return false;
        return true;
    }
};

// Random-start verification; trials are independent (per-trial sub-seed), so
// the parallel path reproduces the serial result exactly.
inline BatchResult batch_check(const ClosedLoop& cl, long trials, std::uint64_t seed,
                               std::optional<double> mode_bound = {}, bool parallel = false) {
    const Eigen::Index n = cl.Acl.rows(), p = cl.Ccl.rows();
    std::vector<std::vector<ComponentVerdict>> verdicts(static_cast<std::size_t>(trials));
    auto run_one = [&](long t) {
        Prng rng(Prng::subseed(seed, static_cast<std::uint64_t>(t)));
        VecD x0(n);
        for (Eigen::Index i = 0; i < n; ++i) x0(i) = 2.0 * rng.uniform() - 1.0;
        x0 += cl.steady.x_ss;
        SimulationTrace tr = simulate(cl, x0);
        verdicts[static_cast<std::size_t>(t)] = check_monotone(tr, mode_bound);
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long t = 0; t < trials; ++t) run_one(t);
    } else {
        for (long t = 0; t < trials; ++t) run_one(t);
    }
    BatchResult res;
    res.trials = trials;
    res.components.resize(static_cast<std::size_t>(p));
    for (const auto& vt : verdicts)
        for (std::size_t c = 0; c < vt.size(); ++c) {
            auto& agg = res.components[c];
            const auto& v = vt[c];
            if (v.status == ComponentVerdict::Status::Fail) ++agg.fail;
            else if (v.status == ComponentVerdict::Status::PassInstantaneous) ++agg.instantaneous;
            else ++agg.pass;
            agg.worst_fit_residual = std::max(agg.worst_fit_residual, v.fit_residual);
            if (!v.envelope_ok) ++agg.envelope_violations;
        }
    return res;
}

} // namespace monotrack
