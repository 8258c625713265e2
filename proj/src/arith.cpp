#include "equifuse/arith.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace equifuse {

const char *to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::invalid_parameter: return "invalid-parameter";
    case ErrorKind::residual_error: return "residual-error";
    case ErrorKind::inconsistency: return "inconsistency-error";
    case ErrorKind::unsupported_case: return "unsupported-case";
    case ErrorKind::check_failure: return "check-failure";
    case ErrorKind::construction_failure: return "construction-failure";
    }
    return "error";
}

namespace {

void require_kappa(int kappa) {
    if (kappa < 3)
        throw Error(ErrorKind::invalid_parameter,
                    "kappa must be >= 3, got " + std::to_string(kappa));
}

// exp(i*pi*num/den) with num reduced into [0, 2*den).
Scalar unit_phase(long long num, long long den) {
    const long long period = 2 * den;
    num %= period;
    if (num < 0)
        num += period;
    return std::polar(1.0, std::numbers::pi * static_cast<double>(num) / static_cast<double>(den));
}

} // namespace

Scalar root_of_unity(int kappa) {
    require_kappa(kappa);
    return unit_phase(1, kappa);
}

Scalar q_power(long long num, long long den, int kappa) {
    require_kappa(kappa);
    if (den <= 0)
        throw Error(ErrorKind::invalid_parameter, "q_power: denominator must be positive");
    return unit_phase(num, den * kappa);
}

double quantum_integer(long long n, int kappa) {
    require_kappa(kappa);
    const double x = std::numbers::pi / kappa;
    // reduce n modulo 2*kappa so the sine argument stays small
    long long r = n % (2LL * kappa);
    return std::sin(static_cast<double>(r) * x) / std::sin(x);
}

Scalar theta(int i, int kappa) {
    require_kappa(kappa);
    if (i < 0 || i > kappa - 2)
        throw Error(ErrorKind::invalid_parameter,
                    "theta: index " + std::to_string(i) + " outside 0.." +
                        std::to_string(kappa - 2));
    return q_power(static_cast<long long>(i) * (i + 2), 2, kappa);
}

Scalar ribbon_squared(int i, int j, int k, int kappa) {
    require_kappa(kappa);
    const int delta = kappa - 2;
    for (int x : {i, j, k})
        if (x < 0 || x > delta)
            throw Error(ErrorKind::invalid_parameter, "ribbon_squared: index out of range");
    const long long e = static_cast<long long>(k) * (k + 2) - static_cast<long long>(i) * (i + 2) -
                        static_cast<long long>(j) * (j + 2);
    return q_power(e, 2, kappa);
}

Scalar gauss_sum(long long a, long long b) {
    if (b < 1)
        throw Error(ErrorKind::invalid_parameter, "gauss_sum: b must be >= 1");
    Scalar sum{0.0, 0.0};
    for (long long p = 1; p <= b; ++p) {
        // a*p^2 mod 2b, exact
        const long long p2 = (p * p) % (2 * b);
        long long e = (a % (2 * b)) * p2 % (2 * b);
        sum += unit_phase(e, b);
    }
    return sum;
}

Scalar gauss_sum_by_reciprocity(long long a, long long b) {
    if (a < 1 || b < 1)
        throw Error(ErrorKind::invalid_parameter, "gauss_sum_by_reciprocity: a, b must be >= 1");
    if ((a * b) % 2 != 0)
        throw Error(ErrorKind::invalid_parameter, "gauss_sum_by_reciprocity: ab must be even");
    const Scalar eighth = Scalar{1.0, 1.0} / std::sqrt(2.0);
    return std::sqrt(static_cast<double>(b) / static_cast<double>(a)) * eighth *
           std::conj(gauss_sum(b, a));
}

std::optional<long long> as_integer(Scalar c, Tolerance tol) {
    const double n = std::round(c.real());
    if (std::abs(c - Scalar{n, 0.0}) < tol.eps)
        return static_cast<long long>(n);
    return std::nullopt;
}

long long require_integer(Scalar c, Tolerance tol, const char *context) {
    if (auto n = as_integer(c, tol))
        return *n;
    std::ostringstream os;
    os.precision(12);
    os << context << ": value " << c << " is not within " << tol.eps << " of an integer";
    throw Error(ErrorKind::residual_error, os.str());
}

} // namespace equifuse
