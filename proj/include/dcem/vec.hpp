// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <stdexcept>

namespace dcem {

// Speed of light in vacuum [m/s].
inline constexpr double kSpeedOfLight = 299792458.0;

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    constexpr Vec3() = default;
    constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Vec3 operator+(const Vec3 &o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3 &o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3 &operator+=(const Vec3 &o) {
        x += o.x, y += o.y, z += o.z;
        return *this;
    }
    Vec3 &operator-=(const Vec3 &o) {
        x -= o.x, y -= o.y, z -= o.z;
        return *this;
    }
    bool operator==(const Vec3 &o) const { return x == o.x && y == o.y && z == o.z; }
};

inline Vec3 operator*(double s, const Vec3 &v) { return v * s; }

inline double dot(const Vec3 &a, const Vec3 &b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3 &a, const Vec3 &b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm2(const Vec3 &v) { return dot(v, v); }
inline double norm(const Vec3 &v) { return std::sqrt(norm2(v)); }
inline double distance(const Vec3 &a, const Vec3 &b) { return norm(a - b); }

inline Vec3 normalized(const Vec3 &v) {
    double n = norm(v);
    if (n == 0.0)
        throw std::domain_error("cannot normalize zero vector");
    return v / n;
}

inline bool is_unit(const Vec3 &v, double tol = 1e-6) { return std::abs(norm(v) - 1.0) <= tol; }

// Row-major 3x3 matrix. Only what rigid-body motion needs.
struct Mat3 {
    double m[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

    static Mat3 identity() { return {}; }

    // Rotation about a unit axis by angle [rad] (Rodrigues).
    static Mat3 axis_angle(const Vec3 &axis, double angle) {
        Vec3 u = normalized(axis);
        double c = std::cos(angle), s = std::sin(angle), t = 1.0 - c;
        Mat3 r;
        r.m[0][0] = c + u.x * u.x * t;
        r.m[0][1] = u.x * u.y * t - u.z * s;
        r.m[0][2] = u.x * u.z * t + u.y * s;
        r.m[1][0] = u.y * u.x * t + u.z * s;
        r.m[1][1] = c + u.y * u.y * t;
        r.m[1][2] = u.y * u.z * t - u.x * s;
        r.m[2][0] = u.z * u.x * t - u.y * s;
        r.m[2][1] = u.z * u.y * t + u.x * s;
        r.m[2][2] = c + u.z * u.z * t;
        return r;
    }

    Vec3 operator*(const Vec3 &v) const {
        return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
                m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
                m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
    }

    double determinant() const {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    }
};

// Proper rigid motion: v' = R v + t. R must be orthonormal with det +1.
struct RigidTransform {
    Mat3 rotation;
    Vec3 translation;

    static RigidTransform identity() { return {}; }
    static RigidTransform translate(const Vec3 &t) { return {Mat3::identity(), t}; }

    Vec3 apply(const Vec3 &v) const { return rotation * v + translation; }
    Vec3 apply_direction(const Vec3 &v) const { return rotation * v; }

    bool is_rigid(double tol = 1e-9) const {
        const Mat3 &r = rotation;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double d = 0.0;
                for (int k = 0; k < 3; ++k)
                    d += r.m[k][i] * r.m[k][j];
                if (std::abs(d - (i == j ? 1.0 : 0.0)) > tol)
                    return false;
            }
        return std::abs(r.determinant() - 1.0) <= tol;
    }
};

// dB <-> linear field/power helpers used throughout the EM bookkeeping.
inline double db_to_amplitude(double db) { return std::pow(10.0, -db / 20.0); }
inline double amplitude_to_db(double a) { return -20.0 * std::log10(a); }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w * 1000.0); }

} // namespace dcem
