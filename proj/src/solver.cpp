#include "ccf/solver.hpp"

#include "ccf/errors.hpp"
#include "ccf/tail_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace ccf {

namespace {

void validate_config(const SolveConfig& cfg) {
    if (cfg.n_subdiv < 2 || cfg.n_subdiv % 2 != 0)
        throw std::invalid_argument("mesh subdivision count must be even and at least 2");
    if (!(cfg.tol_eig > 0.0) || !(cfg.tol_root > 0.0))
        throw std::invalid_argument("tolerances must be positive");
    if (!cfg.alphabet.finite()) {
        if (!std::isfinite(cfg.radius) || !(cfg.radius > 2.0))
            throw std::invalid_argument("infinite alphabets need a finite truncation radius above 2");
    }
}

TailFamily tail_family_of(const Alphabet& a) {
    return a.kind == AlphabetKind::I2 ? TailFamily::I2 : TailFamily::I1;
}

struct Eval {
    double s = 0.0;
    double phi = 0.0; // log of the spectral radius
    double r = 0.0;
    SpectralResult sr;
    double alpha = 0.0;
};

// one corrected family (A for Lower, B for Upper) on a fixed mesh
struct SideCtx {
    const SolveConfig& cfg;
    const MeshDomain& mesh;
    Correction corr;
    int evals = 0;
    double last_slope = 1.0; // |d phi / ds| estimate from the final bracket

    double alpha_at(double s) const {
        if (cfg.alphabet.finite())
            return 0.0;
        const TailFamily tf = tail_family_of(cfg.alphabet);
        return corr == Correction::Lower ? eta_lower(tf, s, cfg.radius)
                                         : delta_upper(tf, s, cfg.radius);
    }

    OperatorSpec op_at(double s, double alpha) const {
        return {&mesh, cfg.alphabet, s, cfg.radius, alpha, corr, cfg.weights};
    }

    Eval eval(double s) {
        const double alpha = alpha_at(s);
        const SparseRowMatrix M = assemble(op_at(s, alpha));
        SpectralResult sr = power_method(M, cfg.tol_eig, cfg.power_max_iter);
        ++evals;
        return {s, std::log(sr.lambda), sr.lambda, std::move(sr), alpha};
    }

    double s_min() const { return cfg.alphabet.finite() ? 1e-3 : 1.0 + 1e-6; }
    double s_max() const { return 40.0; }
};

// expands [e1.s, e2.s] until phi changes sign; on return e1.phi > 0 > e2.phi
void find_bracket(SideCtx& C, Eval& e1, Eval& e2) {
    double s1 = std::min(C.cfg.s_init_lo, C.cfg.s_init_hi);
    double s2 = std::max(C.cfg.s_init_lo, C.cfg.s_init_hi);
    s1 = std::clamp(s1, C.s_min(), C.s_max());
    s2 = std::clamp(s2, C.s_min(), C.s_max());
    if (!(s2 > s1))
        s2 = std::min(s1 + 0.1, C.s_max());

    e1 = C.eval(s1);
    e2 = C.eval(s2);
    int tries = 0;
    while ((e1.phi > 0.0) == (e2.phi > 0.0)) {
        if (e1.phi == 0.0 || e2.phi == 0.0)
            return; // exact root, caller treats it as landed
        if (++tries > 40)
            throw NoBracketError("spectral radius never crossed 1 while expanding the s range");
        const double span = std::max(e2.s - e1.s, 1e-3);
        if (e1.phi > 0.0) { // radius above 1 at both ends, move up
            if (e2.s >= C.s_max() - 1e-12)
                throw NoBracketError("spectral radius stays above 1 up to the s range limit");
            const double ns = std::min(e2.s + 1.6 * span, C.s_max());
            e1 = std::move(e2);
            e2 = C.eval(ns);
        } else { // radius below 1 at both ends, move down
            if (e1.s <= C.s_min() + 1e-12)
                throw NoBracketError("spectral radius stays below 1 down to the s range limit");
            const double ns = std::max(e1.s - 1.6 * span, C.s_min());
            e2 = std::move(e1);
            e1 = C.eval(ns);
        }
    }
}

// lands phi in [-tol_root, 0] (upper side) or [0, tol_root] (lower side)
Eval land_side(SideCtx& C, bool upper_side) {
    const double tol = C.cfg.tol_root;
    auto in_zone = [&](double p) {
        return upper_side ? (p <= 0.0 && p >= -tol) : (p >= 0.0 && p <= tol);
    };

    Eval ea, eb;
    find_bracket(C, ea, eb);
    if (in_zone(ea.phi))
        return ea;
    if (in_zone(eb.phi))
        return eb;
    if (ea.phi < eb.phi)
        std::swap(ea, eb); // ea.phi > 0 > eb.phi, ea.s < eb.s

    Eval prev = ea, last = eb;
    const double target = upper_side ? -0.45 * tol : 0.45 * tol;

    while (C.evals < C.cfg.max_secant) {
        const double width = eb.s - ea.s;
        if (width <= 1e-13 * std::max(1.0, std::abs(eb.s)))
            throw NoConvergenceError("root bracket collapsed before reaching the landing zone; "
                                     "tol_root is below the eigenvalue noise");
        double mb = (ea.phi - eb.phi) / width;
        mb = std::clamp(mb, 0.02, 1e4);
        C.last_slope = mb;

        double s_next;
        if (std::abs(last.phi) > 0.45 * tol) {
            const double denom = last.phi - prev.phi;
            s_next = (denom != 0.0) ? last.s - last.phi * (last.s - prev.s) / denom
                                    : 0.5 * (ea.s + eb.s);
        } else {
            s_next = last.s + (last.phi - target) / mb;
        }
        if (!std::isfinite(s_next) || !(s_next > ea.s) || !(s_next < eb.s) ||
            s_next - ea.s < 1e-15 || eb.s - s_next < 1e-15)
            s_next = 0.5 * (ea.s + eb.s);

        prev = std::move(last);
        last = C.eval(s_next);
        if (in_zone(last.phi))
            return last;
        (last.phi > 0.0 ? ea : eb) = last;
    }
    throw NoConvergenceError("secant iteration budget exhausted before landing at s with "
                             "r in the certified zone");
}

Eval certify(SideCtx& C, Eval cand, bool upper_side) {
    const Dominance want = upper_side ? Dominance::UpperDominates : Dominance::LowerDominates;
    for (int attempt = 0;; ++attempt) {
        const SparseRowMatrix M = assemble(C.op_at(cand.s, cand.alpha));
        if (verify_certificate(M, cand.sr.vec, want, 0.0))
            return cand;
        if (attempt >= C.cfg.cert_retries)
            throw CertificateFailureError("componentwise certificate failed after nudging s");
        // move away from the root, which loosens the dominance inequality
        const double step = 0.5 * C.cfg.tol_root / C.last_slope;
        cand = C.eval(upper_side ? cand.s + step : cand.s - step);
    }
}

} // namespace

RadiusPair radius_bounds(const SolveConfig& cfg, double s) {
    validate_config(cfg);
    if (!(s > 0.0))
        throw std::invalid_argument("radius_bounds needs s > 0");
    if (!cfg.alphabet.finite() && !(s > 1.0))
        throw std::invalid_argument("infinite alphabets need s > 1 for the tail bounds");

    const MeshDomain mesh = build_mesh_domain(cfg.n_subdiv, Region::HalfDisk);
    RadiusPair rp;
    rp.dof = mesh.size();

    SideCtx lo{cfg, mesh, Correction::Lower};
    rp.alpha_a = lo.alpha_at(s);
    rp.eig_a = power_method(assemble(lo.op_at(s, rp.alpha_a)), cfg.tol_eig, cfg.power_max_iter);
    rp.r_a = rp.eig_a.lambda;

    SideCtx up{cfg, mesh, Correction::Upper};
    rp.alpha_b = up.alpha_at(s);
    rp.eig_b = power_method(assemble(up.op_at(s, rp.alpha_b)), cfg.tol_eig, cfg.power_max_iter);
    rp.r_b = rp.eig_b.lambda;
    return rp;
}

DimensionBracket bracket_dimension(const SolveConfig& cfg) {
    validate_config(cfg);
    const MeshDomain mesh = build_mesh_domain(cfg.n_subdiv, Region::HalfDisk);

    SideCtx lo{cfg, mesh, Correction::Lower};
    Eval el = certify(lo, land_side(lo, false), false);

    SideCtx up{cfg, mesh, Correction::Upper};
    Eval eu = certify(up, land_side(up, true), true);

    if (el.s > eu.s)
        throw std::logic_error("certified endpoints crossed; tolerances are inconsistent");

    DimensionBracket b;
    b.s_lower = el.s;
    b.s_upper = eu.s;
    b.r_at_lower = el.r;
    b.r_at_upper = eu.r;
    b.alpha_lower = el.alpha;
    b.alpha_upper = eu.alpha;
    b.cert_lower = std::move(el.sr.vec);
    b.cert_upper = std::move(eu.sr.vec);
    b.dof = mesh.size();
    b.evals_lower = lo.evals;
    b.evals_upper = up.evals;
    return b;
}

double solve_uncorrected(const SolveConfig& cfg, int degree) {
    validate_config(cfg);
    const MeshDomain mesh = build_mesh_domain(cfg.n_subdiv, Region::HalfDisk);

    int evals = 0;
    auto phi_at = [&](double s) {
        OperatorSpec op{&mesh, cfg.alphabet, s, cfg.radius, 0.0, Correction::None, cfg.weights};
        const SparseRowMatrix M = assemble_higher_order(op, degree);
        const GeneralEigenResult ge = dominant_eigen_general(M, 1e-12, 500000);
        ++evals;
        if (!(ge.lambda > 0.0))
            throw NoConvergenceError("dominant eigenvalue is not positive");
        return std::log(ge.lambda);
    };

    const double s_floor = 1e-3, s_ceil = 40.0;
    double s1 = std::clamp(std::min(cfg.s_init_lo, cfg.s_init_hi), s_floor, s_ceil);
    double s2 = std::clamp(std::max(cfg.s_init_lo, cfg.s_init_hi), s_floor, s_ceil);
    if (!(s2 > s1))
        s2 = std::min(s1 + 0.1, s_ceil);

    double p1 = phi_at(s1), p2 = phi_at(s2);
    int tries = 0;
    while ((p1 > 0.0) == (p2 > 0.0)) {
        if (p1 == 0.0)
            return s1;
        if (p2 == 0.0)
            return s2;
        if (++tries > 40)
            throw NoBracketError("spectral radius never crossed 1 while expanding the s range");
        const double span = std::max(s2 - s1, 1e-3);
        if (p1 > 0.0) {
            if (s2 >= s_ceil - 1e-12)
                throw NoBracketError("spectral radius stays above 1 up to the s range limit");
            s1 = s2;
            p1 = p2;
            s2 = std::min(s2 + 1.6 * span, s_ceil);
            p2 = phi_at(s2);
        } else {
            if (s1 <= s_floor + 1e-12)
                throw NoBracketError("spectral radius stays below 1 down to the s range limit");
            s2 = s1;
            p2 = p1;
            s1 = std::max(s1 - 1.6 * span, s_floor);
            p1 = phi_at(s1);
        }
    }
    if (p1 < p2) {
        std::swap(s1, s2);
        std::swap(p1, p2);
    } // p1 > 0 > p2, s1 < s2

    double best_s = std::abs(p1) < std::abs(p2) ? s1 : s2;
    double best_p = std::abs(p1) < std::abs(p2) ? p1 : p2;
    double ls = s2, lp = p2, ps = s1, pp = p1;
    while (evals < std::max(cfg.max_secant, 40)) {
        if (std::abs(best_p) <= 5e-12)
            return best_s;
        if (s2 - s1 <= 1e-12 * std::max(1.0, std::abs(s2)))
            return best_s; // eigenvalue noise floor, return closest visit
        const double denom = lp - pp;
        double s_next = (denom != 0.0) ? ls - lp * (ls - ps) / denom : 0.5 * (s1 + s2);
        if (!std::isfinite(s_next) || !(s_next > s1) || !(s_next < s2) || s_next - s1 < 1e-16 ||
            s2 - s_next < 1e-16)
            s_next = 0.5 * (s1 + s2);
        const double p = phi_at(s_next);
        ps = ls;
        pp = lp;
        ls = s_next;
        lp = p;
        if (std::abs(p) < std::abs(best_p)) {
            best_p = p;
            best_s = s_next;
        }
        if (p > 0.0) {
            s1 = s_next;
            p1 = p;
        } else {
            s2 = s_next;
            p2 = p;
        }
    }
    return best_s;
}

} // namespace ccf
