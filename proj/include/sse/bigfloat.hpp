#pragma once
// Variable-precision real and complex scalars plus a dense complex solver.
// Backed by MPFR through boost::multiprecision; precision is tracked in bits.
// There is no MPC wrapper available, so complex arithmetic lives here.
// std::complex over a user-defined type is not guaranteed to work, hence the
// small hand-rolled BigComplex.

#include <boost/multiprecision/mpfr.hpp>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sse {

namespace mp = boost::multiprecision;
using BigFloat = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;

// boost speaks decimal digits; round up so the mpfr mantissa has >= bits.
inline unsigned digits_for_bits(unsigned bits) {
  return static_cast<unsigned>(bits * 0.30103) + 4;
}

// Default precision of temporaries created afterwards in this thread.
// Assignment in boost adopts the source's precision, so every computation
// seeds its inputs at the working precision and then stays there.
inline void set_thread_precision(unsigned bits) {
  BigFloat::default_precision(digits_for_bits(bits));
}

inline BigFloat make_big(double v, unsigned bits) {
  return BigFloat(v, digits_for_bits(bits));
}

struct BigComplex {
  BigFloat re, im;
};

inline BigComplex bc_make(double re, double im, unsigned bits) {
  return {make_big(re, bits), make_big(im, bits)};
}

inline BigComplex operator+(const BigComplex& a, const BigComplex& b) {
  return {a.re + b.re, a.im + b.im};
}
inline BigComplex operator-(const BigComplex& a, const BigComplex& b) {
  return {a.re - b.re, a.im - b.im};
}
inline BigComplex operator-(const BigComplex& a) { return {-a.re, -a.im}; }
inline BigComplex operator*(const BigComplex& a, const BigComplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline BigComplex operator*(const BigFloat& a, const BigComplex& b) {
  return {a * b.re, a * b.im};
}
inline BigComplex operator/(const BigComplex& a, const BigComplex& b) {
  BigFloat d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
inline BigComplex operator/(const BigComplex& a, const BigFloat& d) {
  return {a.re / d, a.im / d};
}
inline BigComplex conj(const BigComplex& a) { return {a.re, -a.im}; }
// |re| + |im|: cheap pivot magnitude, equivalent to the modulus up to sqrt(2)
inline BigFloat norm1(const BigComplex& a) { return abs(a.re) + abs(a.im); }
inline BigFloat abs2(const BigComplex& a) { return a.re * a.re + a.im * a.im; }

// polar with log-magnitude: e^{logmag} (cos phase + i sin phase)
inline BigComplex bc_exp_polar(const BigFloat& logmag, const BigFloat& phase) {
  BigFloat m = exp(logmag);
  return {m * cos(phase), m * sin(phase)};
}

// In-place Gaussian elimination with partial pivoting for a dense n x n
// complex system; returns the max-norm scaled residual ||Az-b|| /
// (||A|| ||z|| + ||b||) evaluated against copies of the inputs.
double solve_dense(std::vector<BigComplex>& A, std::vector<BigComplex>& b,
                   int n, std::vector<BigComplex>& z);

}  // namespace sse
