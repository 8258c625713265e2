#pragma once

// Scalar arithmetic at the root of unity q = exp(i*pi/kappa).

#include <complex>
#include <optional>

#include "equifuse/error.hpp"

namespace equifuse {

using Scalar = std::complex<double>;

struct Tolerance {
    double eps = 1e-9;

    explicit Tolerance(double e = 1e-9) : eps(e) {
        if (!(eps > 0.0))
            throw Error(ErrorKind::invalid_parameter, "tolerance must be positive");
    }
};

/// q = exp(i*pi/kappa), kappa >= 3.
Scalar root_of_unity(int kappa);

/// q^(num/den), evaluated as exp(i*pi*num/(den*kappa)).
///
/// Half-integer powers come up for twists; going through the rational
/// exponent avoids picking a square-root branch. The numerator is reduced
/// modulo 2*den*kappa in integer arithmetic before the exponential.
Scalar q_power(long long num, long long den, int kappa);
inline Scalar q_power(long long num, int kappa) { return q_power(num, 1, kappa); }

/// [n] = (q^n - q^-n)/(q - q^-1) = sin(n*pi/kappa)/sin(pi/kappa).
double quantum_integer(long long n, int kappa);

/// Ribbon twist theta_i = q^(i(i+2)/2), 0 <= i <= kappa-2.
Scalar theta(int i, int kappa);

/// theta_k / (theta_i theta_j): the square of the braiding on V_k inside V_i (x) V_j.
Scalar ribbon_squared(int i, int j, int k, int kappa);

/// S(a, b) = sum_{p=1}^{b} exp(pi*i*a*p^2/b) by direct summation.
Scalar gauss_sum(long long a, long long b);

/// S(a, b) obtained from S(b, a) through the reciprocity law
/// S(a,b) = sqrt(b/a) (1+i)/sqrt(2) conj(S(b,a)); needs a,b >= 1 and ab even.
Scalar gauss_sum_by_reciprocity(long long a, long long b);

/// Integer recovery: n when |c - n| < eps, otherwise nothing.
std::optional<long long> as_integer(Scalar c, Tolerance tol = Tolerance{});

/// As as_integer, but throws residual_error naming the context.
long long require_integer(Scalar c, Tolerance tol, const char *context);

} // namespace equifuse
