#pragma once

#include <span>

namespace telegf::specfun {

// Modified Bessel functions of the first kind, integer order, real z >= 0.
//
// Small arguments use the (all-positive) power series; large arguments use
// the Hankel asymptotic expansion when it converges to machine precision and
// Miller's backward recurrence normalised by I_0 + 2 sum I_k = e^z otherwise.
// Relative accuracy is about 1e-13 for z in [0, 700].

/// I_n(z). Throws DomainError for z < 0 or non-finite z and
/// std::overflow_error once I_n(z) exceeds the double range; use
/// bessel_i_scaled() there.
double bessel_i(unsigned n, double z);

/// e^{-z} I_n(z), finite for every z >= 0.
double bessel_i_scaled(unsigned n, double z);

/// Fills out[k] = e^{-z} I_k(z) for k = 0 .. out.size()-1 in one recurrence.
void bessel_i_scaled_sequence(double z, std::span<double> out);

/// I_1(z)/z with the removable singularity filled in (value 1/2 at z = 0).
double bessel_i1_over_z(double z);

/// e^{-z} I_1(z)/z.
double bessel_i1_over_z_scaled(double z);

}  // namespace telegf::specfun
