// volumetrics.hpp — ball and inscribed-simplex measures with Stirling asymptotics
//
// Everything is evaluated as sums of log-gamma terms: the exact ball volume
// overflows double precision near M ~ 340 if the gamma function is formed
// directly, and high-M queries must underflow gracefully to 0 instead.

#pragma once

namespace ebr {

// pi^{M/2} r^M / Gamma(M/2 + 1)
double ball_volume(int m, double r);
double log_ball_volume(int m, double r);

// (1/(sqrt(2e) pi r)) (sqrt(2 pi e / M) r)^{M+1}; even M only — the odd
// case goes through double factorials and is not provided.
double ball_volume_asymptotic(int m, double r);
double log_ball_volume_asymptotic(int m, double r);

// (sqrt(M)/M!) ((M+1)/M)^{(M+1)/2} r^M, the M-simplex inscribed in a
// sphere of radius r.
double inscribed_simplex_volume(int m, double r);
double log_inscribed_simplex_volume(int m, double r);

// argmax over M of the unit-ball volume (scan M = 1..50); equals 5.
int unit_ball_argmax();

} // namespace ebr
