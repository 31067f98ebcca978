// Shared small utilities: error type, precondition checks, tiny linear algebra.
#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mcflab {

// Thrown on violated preconditions and invalid configuration.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Thrown when a computation fails at runtime (blow-up, degenerate state).
class RuntimeFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void ensure(bool cond, const std::string& msg) {
    if (!cond) throw InvalidArgument(msg);
}

inline void ensure_runtime(bool cond, const std::string& msg) {
    if (!cond) throw RuntimeFailure(msg);
}

// Builds messages from mixed pieces without pulling in a formatting library.
template <class... Parts>
std::string msg(const Parts&... parts) {
    std::ostringstream os;
    os.precision(17);
    (os << ... << parts);
    return os.str();
}

// Planar point / vector.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

// Symmetric 2x2 matrix.
struct Sym2 {
    double xx = 0.0;
    double yy = 0.0;
    double xy = 0.0;

    double trace() const { return xx + yy; }
    double det() const { return xx * yy - xy * xy; }
    // Eigenvalues, ascending.
    void eigenvalues(double& lo, double& hi) const {
        const double mean = 0.5 * (xx + yy);
        const double d = 0.5 * (xx - yy);
        const double rad = std::sqrt(std::max(0.0, d * d + xy * xy));
        lo = mean - rad;
        hi = mean + rad;
    }
};

// General (not necessarily symmetric) 2x2 matrix, row-major.
struct Mat2 {
    double a11 = 0.0, a12 = 0.0;
    double a21 = 0.0, a22 = 0.0;

    double trace() const { return a11 + a22; }
    double det() const { return a11 * a22 - a12 * a21; }
};

inline Mat2 mul(const Sym2& s, const Sym2& t) {
    return {s.xx * t.xx + s.xy * t.xy, s.xx * t.xy + s.xy * t.yy,
            s.xy * t.xx + s.yy * t.xy, s.xy * t.xy + s.yy * t.yy};
}

// Smallest generalized eigenvalue of m x = lambda g x for symmetric m and
// positive definite g. Real by symmetry; closed form for the 2x2 case.
double generalized_eigen_min(const Sym2& m, const Sym2& g);

// 53-bit uniform double in [0,1) from a 64-bit word; identical on every
// platform, unlike std::uniform_real_distribution.
inline double unit_double(std::uint64_t word) {
    return static_cast<double>(word >> 11) * 0x1.0p-53;
}

// FNV-1a over bytes; used for stable config hashes.
inline std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// Full-precision decimal formatting, reproducible run to run.
inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace mcflab
