#pragma once

// Exact integer 2x2 matrices for toral generators: multiplication with
// overflow guards, signed powers via the adjugate (valid when |det| = 1).

#include <array>
#include <cmath>
#include <cstdint>
#include <string>

#include "kent/errors.hpp"

namespace kent {

struct Mat2 {
    int64_t a = 1, b = 0, c = 0, d = 1; // row-major [[a,b],[c,d]]

    static Mat2 identity() { return {}; }

    int64_t det() const { return a * d - b * c; }
    int64_t trace() const { return a + d; }
    bool is_identity() const { return a == 1 && b == 0 && c == 0 && d == 1; }

    bool operator==(const Mat2&) const = default;

    std::string str() const {
        return "[[" + std::to_string(a) + "," + std::to_string(b) + "],[" +
               std::to_string(c) + "," + std::to_string(d) + "]]";
    }
};

inline int64_t checked_mul_add(int64_t x1, int64_t y1, int64_t x2, int64_t y2) {
    const __int128 v = static_cast<__int128>(x1) * y1 + static_cast<__int128>(x2) * y2;
    if (v > INT64_MAX / 4 || v < INT64_MIN / 4)
        throw resource_error("integer matrix entry overflow; lower n");
    return static_cast<int64_t>(v);
}

inline Mat2 operator*(const Mat2& m, const Mat2& n) {
    return {checked_mul_add(m.a, n.a, m.b, n.c), checked_mul_add(m.a, n.b, m.b, n.d),
            checked_mul_add(m.c, n.a, m.d, n.c), checked_mul_add(m.c, n.b, m.d, n.d)};
}

// Inverse through the adjugate; requires |det| = 1.
inline Mat2 inverse(const Mat2& m) {
    const int64_t dt = m.det();
    if (dt != 1 && dt != -1)
        throw domain_error("inverse: determinant must be +-1, matrix " + m.str());
    Mat2 adj{m.d, -m.b, -m.c, m.a};
    if (dt == -1) adj = {-adj.a, -adj.b, -adj.c, -adj.d};
    return adj;
}

inline Mat2 power(Mat2 base, int64_t e) {
    if (e < 0) {
        base = inverse(base);
        e = -e;
    }
    Mat2 acc = Mat2::identity();
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = (e > 1) ? base * base : base;
        e >>= 1;
    }
    return acc;
}

inline std::array<double, 2> apply_mod1(const Mat2& m, const std::array<double, 2>& x) {
    double u = static_cast<double>(m.a) * x[0] + static_cast<double>(m.b) * x[1];
    double v = static_cast<double>(m.c) * x[0] + static_cast<double>(m.d) * x[1];
    u -= std::floor(u);
    v -= std::floor(v);
    if (u >= 1.0) u = 0.0; // floor rounding at the seam
    if (v >= 1.0) v = 0.0;
    return {u, v};
}

} // namespace kent
