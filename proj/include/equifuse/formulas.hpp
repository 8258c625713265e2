#pragma once

// Evaluators for the classical and extended Verlinde formulas and the
// verification suite that checks them against the ring-solver oracle.

#include <string>
#include <vector>

#include "equifuse/extended.hpp"

namespace equifuse {

struct CheckResult {
    std::string name;
    std::string params;
    double max_residual = 0.0;
    bool passed = false;
};

struct VerificationReport {
    double tolerance = 1e-9;
    std::vector<CheckResult> checks;

    /// Records a check; passed iff residual < tolerance.
    void add(std::string name, std::string params, double residual);
    void append(const VerificationReport &other);
    bool passed() const;
    /// Sorts by (name, params).
    void sort();
};

/// sum_p (s lambda_i, lambda_p)(s lambda_j, g-lambda_p)(s lambda_k*, g-lambda_p) / (s lambda_0, lambda_p)
/// with i in V_{e,e} and j, k in the same sector g. For g = e this is the ordinary
/// Verlinde sum over the V_{e,e} basis; for g = a, p runs over the even X_p, p < 2m.
Scalar ext_sum_e(const CLabel &i, const CLabel &j, const CLabel &k, const ExtModularData &ext);

/// sum_p (s lambda_i, a-lambda_p)(s lambda_j, a-lambda_p)(s lambda_k*, lambda_p) / (s lambda_0, lambda_p)
/// for i, j odd and k in the trivial sector.
Scalar ext_sum_a(const CLabel &i, const CLabel &j, const CLabel &k, const ExtModularData &ext);

/// Checked versions: the sum must round to the oracle coefficient L^k_ij with
/// residual < tol, otherwise check_failure. The returned value is that integer.
double ext_coeff_e(const CLabel &i, const CLabel &j, const CLabel &k, const ExtModularData &ext,
                   Tolerance tol = Tolerance{});
double ext_coeff_a(const CLabel &i, const CLabel &j, const CLabel &k, const ExtModularData &ext,
                   Tolerance tol = Tolerance{});

/// Matrices of the diagonalization identity for odd i, over star_e_basis() x ea_basis().
struct Z2DiagMatrices {
    Eigen::MatrixXd m;          // change of basis
    Eigen::MatrixXcd s_l;       // s L_i
    Eigen::MatrixXcd s;         // s restricted to V_{e,a}
    Eigen::VectorXcd d_diag;    // D_i in M-coordinates
};
Z2DiagMatrices z2diag_matrices(int i, const ExtModularData &ext);
/// max |M s L_i - D_i M s| entrywise.
CheckResult z2diag_check(int i, const ExtModularData &ext, Tolerance tol = Tolerance{});

/// Both sides of the two-sums identity for i even in I° = {0..2m}, j, k in I°;
/// index 2m on i or j means lambda+ + lambda-. The left side sums over the basis
/// matching j's sector, so a k from the other sector pairs to zero. For k = 2m the
/// left side is taken with lambda_k = lambda+ and with lambda_k = lambda-; each is
/// compared with the right side.
struct TwoSums {
    std::vector<Scalar> lhs;
    double rhs = 0.0;
    double residual() const;
};
TwoSums twosums(int i, int j, int k, const ExtModularData &ext);
CheckResult twosums_check(int i, int j, int k, const ExtModularData &ext, Tolerance tol = Tolerance{});

/// Odd fold, even fold and the centre column vanishing on V(D), delta = 4m.
VerificationReport fold_lemma_checks(const ModularDataD &d_data, Tolerance tol = Tolerance{});

/// The full suite for m in {2, 4, 6, ...}; failures are report entries.
VerificationReport verify_all(int m, Tolerance tol = Tolerance{});

} // namespace equifuse
