#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "core.hpp"
#include "linalg.hpp"
#include "rng.hpp"

namespace kovatlas {

// ---------------------------------------------------------------------------
// Poisson structure of the pencil so(4)-e(3)-so(3,1).
//
// Coordinate order is (J1,J2,J3,x1,x2,x3) throughout. The bracket is
//   {J_i,J_j} = eps_ijk J_k,  {J_i,x_j} = eps_ijk x_k,  {x_i,x_j} = kappa eps_ijk J_k.
// ---------------------------------------------------------------------------

/// Bivector P(p): P[i][j] = {c_i, c_j} evaluated at p. Antisymmetric by
/// construction (lower triangle mirrors the upper with a sign).
inline Mat poisson_bivector(const PhasePoint& p, const PencilParams& pp) {
    Mat P(6, 6);
    const double k = pp.kappa;
    const double J1 = p.J[0], J2 = p.J[1], J3 = p.J[2];
    const double x1 = p.x[0], x2 = p.x[1], x3 = p.x[2];
    auto set = [&P](int i, int j, double v) {
        P(i, j) = v;
        P(j, i) = -v;
    };
    set(0, 1, J3);
    set(0, 2, -J2);
    set(1, 2, J1);
    set(0, 4, x3);
    set(0, 5, -x2);
    set(1, 3, -x3);
    set(1, 5, x1);
    set(2, 3, x2);
    set(2, 4, -x1);
    set(3, 4, k * J3);
    set(3, 5, -k * J2);
    set(4, 5, k * J1);
    return P;
}

inline double casimir_f1(const PhasePoint& p, const PencilParams& pp) {
    return dot(p.x, p.x) + pp.kappa * dot(p.J, p.J);
}
inline double casimir_f2(const PhasePoint& p, const PencilParams&) {
    return dot(p.x, p.J);
}
inline std::pair<double, double> casimirs(const PhasePoint& p, const PencilParams& pp) {
    return {casimir_f1(p, pp), casimir_f2(p, pp)};
}

inline double hamiltonian(const PhasePoint& p, const PencilParams& pp) {
    return p.J[0] * p.J[0] + p.J[1] * p.J[1] + 2.0 * p.J[2] * p.J[2] + 2.0 * pp.c1 * p.x[0];
}

/// Kovalevskaya-type integral K = u^2 + v^2 with
/// u = J1^2 - J2^2 - 2 c1 x1 + kappa c1^2,  v = 2 J1 J2 - 2 c1 x2.
inline double integral_u(const PhasePoint& p, const PencilParams& pp) {
    return p.J[0] * p.J[0] - p.J[1] * p.J[1] - 2.0 * pp.c1 * p.x[0] + pp.kappa * pp.c1 * pp.c1;
}
inline double integral_v(const PhasePoint& p, const PencilParams& pp) {
    return 2.0 * p.J[0] * p.J[1] - 2.0 * pp.c1 * p.x[1];
}
inline double integral_k(const PhasePoint& p, const PencilParams& pp) {
    const double u = integral_u(p, pp), v = integral_v(p, pp);
    return u * u + v * v;
}

inline MomentumValue momentum_map(const PhasePoint& p, const PencilParams& pp) {
    return {hamiltonian(p, pp), integral_k(p, pp)};
}

// Closed-form gradients (hand-differentiated; a central-difference oracle
// checks them in the test suite).

inline Vec6 grad_f1(const PhasePoint& p, const PencilParams& pp) {
    const double k = pp.kappa;
    return {2 * k * p.J[0], 2 * k * p.J[1], 2 * k * p.J[2], 2 * p.x[0], 2 * p.x[1], 2 * p.x[2]};
}
inline Vec6 grad_f2(const PhasePoint& p, const PencilParams&) {
    return {p.x[0], p.x[1], p.x[2], p.J[0], p.J[1], p.J[2]};
}
inline Vec6 grad_h(const PhasePoint& p, const PencilParams& pp) {
    return {2 * p.J[0], 2 * p.J[1], 4 * p.J[2], 2 * pp.c1, 0, 0};
}
inline Vec6 grad_k(const PhasePoint& p, const PencilParams& pp) {
    const double u = integral_u(p, pp), v = integral_v(p, pp);
    const double c1 = pp.c1;
    return {4 * (u * p.J[0] + v * p.J[1]), 4 * (-u * p.J[1] + v * p.J[0]), 0,
            -4 * c1 * u, -4 * c1 * v, 0};
}

inline Mat hess_h(const PencilParams&) {
    Mat H(6, 6);
    H(0, 0) = 2;
    H(1, 1) = 2;
    H(2, 2) = 4;
    return H;
}

inline Mat hess_k(const PhasePoint& p, const PencilParams& pp) {
    const double u = integral_u(p, pp), v = integral_v(p, pp);
    const double c1 = pp.c1;
    const Vec6 gu = {2 * p.J[0], -2 * p.J[1], 0, -2 * c1, 0, 0};
    const Vec6 gv = {2 * p.J[1], 2 * p.J[0], 0, 0, -2 * c1, 0};
    Mat H(6, 6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) H(i, j) = 2 * (gu[i] * gu[j] + gv[i] * gv[j]);
    H(0, 0) += 4 * u;
    H(1, 1) -= 4 * u;
    H(0, 1) += 4 * v;
    H(1, 0) += 4 * v;
    return H;
}

/// P(p) * gradF for an arbitrary gradient supplied by the caller.
inline Vec6 ham_vector_field(const PhasePoint& p, const PencilParams& pp, const Vec6& gradF) {
    const Mat P = poisson_bivector(p, pp);
    Vec6 out{};
    for (int i = 0; i < 6; ++i) {
        double s = 0;
        for (int j = 0; j < 6; ++j) s += P(i, j) * gradF[j];
        out[i] = s;
    }
    return out;
}

/// X_H in closed form (matches P * grad H; asserted in tests).
inline Vec6 x_h(const PhasePoint& p, const PencilParams& pp) {
    const double c1 = pp.c1, k = pp.kappa;
    const double J1 = p.J[0], J2 = p.J[1], J3 = p.J[2];
    const double x1 = p.x[0], x2 = p.x[1], x3 = p.x[2];
    return {-2 * J2 * J3,
            2 * J1 * J3 - 2 * c1 * x3,
            2 * c1 * x2,
            2 * J2 * x3 - 4 * J3 * x2,
            4 * J3 * x1 - 2 * J1 * x3 - 2 * k * c1 * J3,
            2 * J1 * x2 - 2 * J2 * x1 + 2 * k * c1 * J2};
}

inline Vec6 x_k(const PhasePoint& p, const PencilParams& pp) {
    return ham_vector_field(p, pp, grad_k(p, pp));
}

namespace detail {
// Nonzero structure constants dP[i][j]/dp[m] as (i, j, m, coeff); kappa-scaled
// entries carry coeff = ±1 and are multiplied by kappa on use (m < 3 slots of
// the x-x block).
struct StructEntry {
    int i, j, m;
    double c;
    bool times_kappa;
};
inline const StructEntry kStruct[] = {
    {0, 1, 2, 1, false},  {1, 0, 2, -1, false}, {0, 2, 1, -1, false}, {2, 0, 1, 1, false},
    {1, 2, 0, 1, false},  {2, 1, 0, -1, false}, {0, 4, 5, 1, false},  {4, 0, 5, -1, false},
    {0, 5, 4, -1, false}, {5, 0, 4, 1, false},  {1, 3, 5, -1, false}, {3, 1, 5, 1, false},
    {1, 5, 3, 1, false},  {5, 1, 3, -1, false}, {2, 3, 4, 1, false},  {3, 2, 4, -1, false},
    {2, 4, 3, -1, false}, {4, 2, 3, 1, false},  {3, 4, 2, 1, true},   {4, 3, 2, -1, true},
    {3, 5, 1, -1, true},  {5, 3, 1, 1, true},   {4, 5, 0, 1, true},   {5, 4, 0, -1, true},
};
}  // namespace detail

/// Linearization A_F of X_F = P grad F at p, for F = alpha*H + beta*K:
/// A_F = dP(.)gradF + P HessF, assembled from closed forms.
inline Mat linearization(const PhasePoint& p, const PencilParams& pp, double alpha, double beta) {
    Vec6 g{};
    const Vec6 gh = grad_h(p, pp);
    const Vec6 gk = grad_k(p, pp);
    for (int i = 0; i < 6; ++i) g[i] = alpha * gh[i] + beta * gk[i];
    Mat A(6, 6);
    for (const auto& e : detail::kStruct) {
        const double c = e.times_kappa ? e.c * pp.kappa : e.c;
        A(e.i, e.m) += c * g[e.j];
    }
    Mat Hf = hess_k(p, pp);
    Hf *= beta;
    Mat Hh = hess_h(pp);
    Hh *= alpha;
    Hf += Hh;
    const Mat P = poisson_bivector(p, pp);
    A += P * Hf;
    return A;
}

enum class Symmetry { Sigma2, Sigma3, NegJ };

/// sigma2 flips (J2,x2); sigma3 flips (J3,x3); NegJ maps (J,x) -> (-J,x).
inline PhasePoint apply_symmetry(const PhasePoint& p, Symmetry s) {
    PhasePoint q = p;
    switch (s) {
        case Symmetry::Sigma2:
            q.J[1] = -q.J[1];
            q.x[1] = -q.x[1];
            break;
        case Symmetry::Sigma3:
            q.J[2] = -q.J[2];
            q.x[2] = -q.x[2];
            break;
        case Symmetry::NegJ:
            for (int i = 0; i < 3; ++i) q.J[i] = -q.J[i];
            break;
    }
    return q;
}

struct ScaledSystem {
    PhasePoint point;
    PencilParams params;
    OrbitParams orbit;  // image of the supplied orbit values
};

/// The pencil's scaling symmetry: J'=mu J, x'=lambda mu x, c1'=(mu/lambda)c1,
/// kappa'=lambda^2 kappa; H and K scale by mu^2 and mu^4.
inline ScaledSystem scale_point(const PhasePoint& p, const PencilParams& pp,
                                const OrbitParams& orb, double lambda, double mu) {
    if (lambda == 0.0 || mu == 0.0) throw ZeroParameter("scale_point: lambda, mu must be nonzero");
    ScaledSystem out;
    for (int i = 0; i < 3; ++i) {
        out.point.J[i] = mu * p.J[i];
        out.point.x[i] = lambda * mu * p.x[i];
    }
    out.params.c1 = (mu / lambda) * pp.c1;
    out.params.kappa = lambda * lambda * pp.kappa;
    out.orbit.a = mu * mu * lambda * lambda * orb.a;
    out.orbit.b = mu * mu * lambda * orb.b;
    return out;
}

/// True iff the orbit is non-singular and compact: kappa>0 and a > 2 sqrt(kappa)|b|.
inline bool orbit_is_compact(const OrbitParams& orb, const PencilParams& pp) {
    return pp.kappa > 0 && orb.a > 2.0 * std::sqrt(pp.kappa) * std::abs(orb.b);
}

/// Uniform orbit sampling on M_{a,b} ~ S^2 x S^2 (kappa > 0 only):
/// m = x + sqrt(kappa) J and n = x - sqrt(kappa) J live on spheres of radii
/// sqrt(a + 2 sqrt(kappa) b) and sqrt(a - 2 sqrt(kappa) b).
inline std::vector<PhasePoint> sample_orbit(const OrbitParams& orb, const PencilParams& pp,
                                            std::size_t n, std::uint64_t seed) {
    if (!(pp.kappa > 0))
        throw NonCompactOrbit("sample_orbit: kappa must be positive (compact orbits only)");
    const double sk = std::sqrt(pp.kappa);
    const double rp2 = orb.a + 2.0 * sk * orb.b;
    const double rm2 = orb.a - 2.0 * sk * orb.b;
    const double lim = std::min(rp2, rm2);
    if (lim == 0.0) throw SingularOrbit("sample_orbit: a = 2 sqrt(kappa)|b| is a singular orbit");
    if (lim < 0.0) throw EmptyOrbit("sample_orbit: a < 2 sqrt(kappa)|b|, no orbit");
    const double rp = std::sqrt(rp2), rm = std::sqrt(rm2);
    Rng rng(seed);
    std::vector<PhasePoint> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3 m = rng.sphere(rp);
        const Vec3 nv = rng.sphere(rm);
        PhasePoint p;
        for (int c = 0; c < 3; ++c) {
            p.x[c] = 0.5 * (m[c] + nv[c]);
            p.J[c] = (m[c] - nv[c]) / (2.0 * sk);
        }
        pts.push_back(p);
    }
    return pts;
}

enum class FlowField { H, K };

/// Fixed-step RK4 along X_H or X_K.
inline PhasePoint integrate_flow(const PhasePoint& p0, const PencilParams& pp, FlowField field,
                                 double dt, std::size_t steps, double coord_bound = 1e6) {
    auto rhs = [&](const PhasePoint& p) -> Vec6 {
        return field == FlowField::H ? x_h(p, pp) : x_k(p, pp);
    };
    Vec6 y = p0.as_vec6();
    auto add = [](const Vec6& a, const Vec6& b, double s) {
        Vec6 r;
        for (int i = 0; i < 6; ++i) r[i] = a[i] + s * b[i];
        return r;
    };
    for (std::size_t n = 0; n < steps; ++n) {
        const Vec6 k1 = rhs(PhasePoint::from_vec6(y));
        const Vec6 k2 = rhs(PhasePoint::from_vec6(add(y, k1, dt / 2)));
        const Vec6 k3 = rhs(PhasePoint::from_vec6(add(y, k2, dt / 2)));
        const Vec6 k4 = rhs(PhasePoint::from_vec6(add(y, k3, dt)));
        for (int i = 0; i < 6; ++i) y[i] += dt / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
        for (int i = 0; i < 6; ++i)
            if (!(std::abs(y[i]) < coord_bound)) throw StepDiverged("integrate_flow: coordinate bound exceeded");
    }
    return PhasePoint::from_vec6(y);
}

inline bool on_orbit(const PhasePoint& p, const OrbitParams& orb, const PencilParams& pp,
                     double tol = 1e-12) {
    const auto [f1, f2] = casimirs(p, pp);
    const double scale = std::max({1.0, std::abs(orb.a), std::abs(orb.b)});
    return std::abs(f1 - orb.a) <= tol * scale && std::abs(f2 - orb.b) <= tol * scale;
}

}  // namespace kovatlas
