#pragma once

#include <functional>
#include <vector>

namespace qsl::cheb {

// Coefficients c[0..d] of sum_k c_k T_k(x). All routines are deterministic.

// Interpolate f at the d+1 Chebyshev-Lobatto nodes cos(pi j / d).
std::vector<double> interpolate(const std::function<double(double)>& f, int degree);

double eval(const std::vector<double>& c, double x);

// Values of the series at the Lobatto nodes cos(pi j / D), j = 0..D.
std::vector<double> synthesize(const std::vector<double>& c, int D);

// Lobatto nodes for degree d (d+1 points, descending from 1 to -1).
std::vector<double> lobatto_nodes(int degree);

// Product of two series (exact, via value space at the sum degree).
std::vector<double> multiply(const std::vector<double>& a, const std::vector<double>& b);

// Series for x^k (k small).
std::vector<double> monomial(int k);

// Zero out the coefficients excluded by the parity (+1 even, -1 odd).
void enforce_parity(std::vector<double>& c, int parity);

// Drop trailing coefficients below `tol` (keeps at least one).
void trim(std::vector<double>& c, double tol = 0.0);

}  // namespace qsl::cheb
