#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace kovatlas {

using Vec3 = std::array<double, 3>;
using Vec6 = std::array<double, 6>;

inline double dot(const Vec3& u, const Vec3& v) {
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline double dot(const Vec6& u, const Vec6& v) {
    double s = 0;
    for (int i = 0; i < 6; ++i) s += u[i] * v[i];
    return s;
}
inline double inf_norm(const Vec6& v) {
    double m = 0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

/// Pencil constants (κ, c1). κ>0 is so(4), κ=0 is e(3), κ<0 is so(3,1).
struct PencilParams {
    double kappa = 1.0;
    double c1 = 1.0;
};

/// Casimir values (a, b) selecting the orbit M_{a,b}.
struct OrbitParams {
    double a = 0.0;
    double b = 0.0;
};

/// A point (J, x) of R^6. Coordinate order everywhere: (J1,J2,J3,x1,x2,x3).
struct PhasePoint {
    Vec3 J{0, 0, 0};
    Vec3 x{0, 0, 0};

    double coord(int i) const { return i < 3 ? J[i] : x[i - 3]; }
    double& coord(int i) { return i < 3 ? J[i] : x[i - 3]; }
    Vec6 as_vec6() const { return {J[0], J[1], J[2], x[0], x[1], x[2]}; }
    static PhasePoint from_vec6(const Vec6& v) {
        return {{v[0], v[1], v[2]}, {v[3], v[4], v[5]}};
    }
};

/// A value (h, k) of the momentum map (H, K).
struct MomentumValue {
    double h = 0.0;
    double k = 0.0;
};

struct ToleranceConfig {
    double eq_tol = 1e-10;
    double casimir_tol = 1e-12;
    double flow_tol = 1e-8;
};

struct SingularOrbit : std::domain_error {
    using std::domain_error::domain_error;
};
struct EmptyOrbit : std::domain_error {
    using std::domain_error::domain_error;
};
struct NonCompactOrbit : std::domain_error {
    using std::domain_error::domain_error;
};
struct ZeroParameter : std::domain_error {
    using std::domain_error::domain_error;
};
struct ComplexDiscriminant : std::domain_error {
    using std::domain_error::domain_error;
};
struct BoundaryCase : std::domain_error {
    using std::domain_error::domain_error;
};
struct FamilyMismatch : std::domain_error {
    using std::domain_error::domain_error;
};
struct NotCritical : std::domain_error {
    using std::domain_error::domain_error;
};
struct StepDiverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InsufficientSamples : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidParameters : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace kovatlas
