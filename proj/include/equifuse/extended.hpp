#pragma once

// Extended Verlinde algebra V(C) for C = rep A of type D_{2m+2}.
//
// Basis labels: lambda_x (twist e) for every simple x, and the twisted elements
// a-lambda_p (twist a) for the a-invariant classes of the trivial sector, i.e.
// the even plain X_p with p < 2m. X+ and X- are swapped by the action and carry
// no twisted element.

#include <compare>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "equifuse/ring.hpp"
#include "equifuse/verlinde_d.hpp"

namespace equifuse {

struct GradedLabel {
    CLabel cls;
    Z2 twist = Z2::e;

    static GradedLabel plain(CLabel x) { return GradedLabel{x, Z2::e}; }
    /// Throws invalid_parameter unless x is fixed by the Z2 action.
    static GradedLabel twisted(CLabel x);

    Z2 sector() const noexcept { return cls.sector(); }

    auto operator<=>(const GradedLabel &) const = default;
};

/// "l:2", "l:+", "al:2".
std::string to_string(const GradedLabel &x);
GradedLabel parse_graded_label(const std::string &text, int m);

/// Finite linear combination of basis labels. Coefficients with |c| < 1e-12
/// are dropped on insertion.
class ExtVector {
  public:
    using Terms = std::map<GradedLabel, Scalar>;

    ExtVector() = default;
    ExtVector(const GradedLabel &x, Scalar c = 1.0) { add(x, c); }

    void add(const GradedLabel &x, Scalar c);
    Scalar coeff(const GradedLabel &x) const;
    const Terms &terms() const noexcept { return terms_; }
    bool empty() const noexcept { return terms_.empty(); }

    ExtVector &operator+=(const ExtVector &o);
    ExtVector &operator-=(const ExtVector &o);
    ExtVector &operator*=(Scalar c);
    friend ExtVector operator+(ExtVector x, const ExtVector &y) { return x += y; }
    friend ExtVector operator-(ExtVector x, const ExtVector &y) { return x -= y; }
    friend ExtVector operator*(Scalar c, ExtVector x) { return x *= c; }

    /// max |coefficient difference|
    double distance(const ExtVector &o) const;

  private:
    static constexpr double prune = 1e-12;
    Terms terms_;
};

double excval(int m);
double exc_cross(int m);

/// Exceptional diagonal entry through the twist formula applied to X+ (x) X+,
/// before normalization: theta_{2m}^-2 sum_z L^z theta_z d(z).
Scalar exc_via_twists_unnormalized(const TypeDRing &ring, const ModularDataD &d_data);
/// Normalized by the C-side constant D_C.
Scalar exc_via_twists(const TypeDRing &ring, const ModularDataD &d_data);

/// Exceptional diagonal entry assembled from the Gauss sum S(kappa, 8), turned
/// into S(8, kappa) by reciprocity, with the prefactor evaluated from q-powers.
Scalar exc_via_gauss(int m);

class ExtModularData {
  public:
    const TypeDRing &ring() const noexcept { return ring_; }
    const ModularDataD &d_data() const noexcept { return d_; }
    int m() const noexcept { return ring_.m(); }

    /// lambda_0, lambda_2, .., lambda_{2m-2}, lambda+, lambda-.
    const std::vector<GradedLabel> &ee_basis() const noexcept { return ee_; }
    /// lambda_1, lambda_3, .., lambda_{2m-1}  (V_{e,a}).
    const std::vector<GradedLabel> &ea_basis() const noexcept { return ea_; }
    /// a-lambda_0, .., a-lambda_{2m-2}  (V_{a,e}).
    const std::vector<GradedLabel> &ae_basis() const noexcept { return ae_; }

    const Eigen::MatrixXcd &s_ee() const noexcept { return s_ee_; }
    /// rows ea_basis, columns ae_basis
    const Eigen::MatrixXcd &s_ea() const noexcept { return s_ea_; }
    double big_d_c() const noexcept { return big_d_c_; }

    /// (s x, y). Nonzero only between V_{g,h} and V_{h,g}; V_{a,a} is unsupported.
    Scalar s_pair(const GradedLabel &x, const GradedLabel &y) const;

    friend ExtModularData build_s_c(const TypeDRing &ring, const ModularDataD &d_data, Tolerance tol);

  private:
    ExtModularData(TypeDRing ring, ModularDataD d) : ring_(std::move(ring)), d_(std::move(d)) {}

    TypeDRing ring_;
    ModularDataD d_;
    std::vector<GradedLabel> ee_, ea_, ae_;
    Eigen::MatrixXcd s_ee_, s_ea_;
    double big_d_c_ = 0.0;
};

/// Assembles the graded s-blocks from the D-side s-matrix and the exceptional
/// values; throws construction_failure if s_ee is not symmetric unitary within tol.
ExtModularData build_s_c(const TypeDRing &ring, const ModularDataD &d_data, Tolerance tol = Tolerance{});
/// Convenience: ring and D-side data for m, then build_s_c.
ExtModularData build_extended(int m, Tolerance tol = Tolerance{});

/// Tensor product. Mismatched twists give zero; two twisted factors are unsupported.
ExtVector tensor(const ExtVector &x, const ExtVector &y, const ExtModularData &alg);

/// Convolution on V_{*,e} in the normalized generic basis.
ExtVector convolution(const ExtVector &x, const ExtVector &y, const ExtModularData &alg);

/// M lambda_i = (a-lambda_i - lambda_i)/2, M a-lambda_i = (a-lambda_i + lambda_i)/2 for
/// the a-invariant classes, identity on lambda+ and lambda-.
ExtVector change_of_basis_m(const ExtVector &x);
ExtVector change_of_basis_m_inverse(const ExtVector &x);

/// The twist operator; unsupported on V_{e,a}.
ExtVector t_tilde(const ExtVector &x, const ExtModularData &alg);

/// Orthonormal pairing of the chosen basis.
Scalar bilinear_form(const ExtVector &x, const ExtVector &y);

/// Basis of V_{*,e} ordered pairwise: lambda_0, a-lambda_0, lambda_2, a-lambda_2, .., lambda+, lambda-.
std::vector<GradedLabel> star_e_basis(int m);
/// Matrix of M in star_e_basis().
Eigen::MatrixXd change_of_basis_matrix(int m);

} // namespace equifuse
