#pragma once

namespace dce {

enum class BesselKind { J, JPrime };

/// J_n(x) and its first two derivatives for integer order n >= 0.
double bessel_j(int n, double x);
double bessel_j_prime(int n, double x);
double bessel_j_second(int n, double x);

/// m-th positive root (m >= 1) of J_n (kind J) or of J'_n (kind JPrime).
/// x = 0 is never counted. Roots are located by a sign-change scan and
/// polished with bracketed Newton to 1e-13 absolute.
double bessel_root(BesselKind kind, int n, int m);

}  // namespace dce
