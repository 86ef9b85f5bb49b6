#include "kent/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace kent {

const char* to_string(IndexSetMode mode) {
    return mode == IndexSetMode::strict ? "strict" : "quadrant";
}

IndexSetMode index_set_mode_from_string(const std::string& s) {
    if (s == "strict") return IndexSetMode::strict;
    if (s == "quadrant") return IndexSetMode::quadrant;
    throw domain_error("unknown index-set mode '" + s + "' (expected strict or quadrant)");
}

KIndex k_bits(int k, int d) {
    if (d < 1) throw domain_error("k_bits: dimension must be >= 1, got " + std::to_string(d));
    if (d > 30) throw domain_error("k_bits: dimension too large: " + std::to_string(d));
    const int limit = 1 << d;
    if (k < 1 || k > limit)
        throw domain_error("k_bits: k=" + std::to_string(k) + " outside 1.." + std::to_string(limit));
    KIndex kx;
    kx.d = d;
    kx.k = k;
    kx.bits.resize(d);
    int rem = k - 1;
    for (int i = 0; i < d; ++i) {
        kx.bits[i] = rem & 1;
        rem >>= 1;
    }
    return kx;
}

KIndex k_complement(const KIndex& kx) {
    int kc = 0;
    for (int i = kx.d - 1; i >= 0; --i) kc = (kc << 1) | (1 - kx.bits[i]);
    return k_bits(kc + 1, kx.d);
}

static void check_dims(const KIndex& kx, const LatticeVector& x, const LatticeVector& y,
                       const char* who) {
    if (static_cast<int>(x.size()) != kx.d || static_cast<int>(y.size()) != kx.d)
        throw domain_error(std::string(who) + ": dimension mismatch");
}

bool k_greater(const KIndex& kx, const LatticeVector& x, const LatticeVector& y) {
    check_dims(kx, x, y, "k_greater");
    for (int i = 0; i < kx.d; ++i) {
        const int64_t sign = kx.bits[i] ? -1 : 1;
        if (sign * x[i] <= sign * y[i]) return false;
    }
    return true;
}

bool k_geq(const KIndex& kx, const LatticeVector& x, const LatticeVector& y) {
    check_dims(kx, x, y, "k_geq");
    return x == y || k_greater(kx, x, y);
}

int64_t sup_norm(const LatticeVector& m) {
    int64_t best = 0;
    for (int64_t c : m) best = std::max(best, std::abs(c));
    return best;
}

std::vector<LatticeVector> index_set(int64_t n, const KIndex& kx, IndexSetMode mode) {
    if (n < 1) throw domain_error("index_set: n must be >= 1, got " + std::to_string(n));
    const int d = kx.d;
    std::vector<LatticeVector> out;

    // Per-coordinate signed ranges, ascending so nested iteration is
    // lexicographic on the signed coordinates.
    std::vector<int64_t> lo(d), hi(d);
    for (int i = 0; i < d; ++i) {
        if (kx.bits[i] == 0) {
            lo[i] = (mode == IndexSetMode::strict) ? 1 : 0;
            hi[i] = n - 1;
        } else {
            lo[i] = -(n - 1);
            hi[i] = (mode == IndexSetMode::strict) ? -1 : 0;
        }
    }

    LatticeVector cur(d);
    auto emit = [&](auto&& self, int axis) -> void {
        if (axis == d) {
            out.push_back(cur);
            return;
        }
        for (int64_t v = lo[axis]; v <= hi[axis]; ++v) {
            cur[axis] = v;
            self(self, axis + 1);
        }
    };
    if (n > 1 || mode == IndexSetMode::quadrant) emit(emit, 0);

    if (mode == IndexSetMode::strict) {
        LatticeVector origin(d, 0);
        out.push_back(origin);
        std::sort(out.begin(), out.end());
    }
    return out;
}

LatticeVector star(const LatticeVector& m, const LatticeVector& r) {
    if (m.size() != r.size()) throw domain_error("star: dimension mismatch");
    LatticeVector out(m.size());
    for (size_t i = 0; i < m.size(); ++i) out[i] = m[i] * r[i];
    return out;
}

} // namespace kent
