#pragma once

// The k-type order on Z^d: binary direction indices, signed comparisons,
// index-set enumeration, coordinate-wise products and the sup norm.

#include <cstdint>
#include <vector>

#include "kent/errors.hpp"

namespace kent {

using LatticeVector = std::vector<int64_t>;

enum class IndexSetMode { strict, quadrant };

const char* to_string(IndexSetMode mode);
IndexSetMode index_set_mode_from_string(const std::string& s);

// Direction index k in {1, ..., 2^d} together with the binary digits of k-1.
// bits[0] is the least-significant digit.
struct KIndex {
    int d = 1;
    int k = 1;
    std::vector<int> bits;
};

// Decode k into its sign pattern. Throws domain_error when k is outside
// 1..2^d or d < 1.
KIndex k_bits(int k, int d);

// The index whose bits are the complement of kx's (the opposite quadrant).
KIndex k_complement(const KIndex& kx);

// Strict k-order: (-1)^{bits_i} x_i > (-1)^{bits_i} y_i in every coordinate.
bool k_greater(const KIndex& kx, const LatticeVector& x, const LatticeVector& y);

// k_greater or exact equality.
bool k_geq(const KIndex& kx, const LatticeVector& x, const LatticeVector& y);

int64_t sup_norm(const LatticeVector& m);

// The lattice points m with ||m|| < n on the k-side of the origin, in
// lexicographic order on signed coordinates.
//   strict:   {0} plus all m with every signed coordinate >= 1  (1 + (n-1)^d points)
//   quadrant: all m with every signed coordinate >= 0           (n^d points)
std::vector<LatticeVector> index_set(int64_t n, const KIndex& kx, IndexSetMode mode);

// Coordinate-wise product (m_1 r_1, ..., m_d r_d).
LatticeVector star(const LatticeVector& m, const LatticeVector& r);

} // namespace kent
