#pragma once

// Verlinde algebra of the semisimple part of rep U_q(sl2) at q = exp(i*pi/kappa).
// Simple objects V_0 .. V_delta with delta = kappa - 2, all self-dual.

#include <vector>

#include <Eigen/Dense>

#include "equifuse/arith.hpp"

namespace equifuse {

struct Normalization {
    Scalar p_plus;
    Scalar p_minus;
    double big_d; // positive root of p+ p-
};

class ModularDataD {
  public:
    /// Builds the fusion tensor, s-matrix, twists and dimensions for kappa >= 3.
    explicit ModularDataD(int kappa);

    int kappa() const noexcept { return kappa_; }
    int delta() const noexcept { return kappa_ - 2; }
    int rank() const noexcept { return kappa_ - 1; }

    /// N^k_ij of the truncated Clebsch-Gordan rule.
    int n(int i, int j, int k) const;
    /// sqrt(2/kappa) sin((i+1)(j+1) pi / kappa).
    double s(int i, int j) const;
    Scalar twist(int i) const;
    double dim(int i) const;
    int dual(int i) const;

    const Eigen::MatrixXd &s_matrix() const noexcept { return s_; }
    Eigen::MatrixXcd t_matrix() const;
    const Normalization &normalization() const noexcept { return norm_; }

  private:
    void check_index(int i) const;
    std::size_t flat(int i, int j, int k) const {
        const auto r = static_cast<std::size_t>(rank());
        return (static_cast<std::size_t>(i) * r + static_cast<std::size_t>(j)) * r +
               static_cast<std::size_t>(k);
    }

    int kappa_;
    std::vector<int> n_;
    Eigen::MatrixXd s_;
    std::vector<Scalar> twists_;
    std::vector<double> dims_;
    Normalization norm_;
};

int fusion_coeff_n(int i, int j, int k, const ModularDataD &data);
double s_matrix_d(int i, int j, const ModularDataD &data);
double qdim(int i, const ModularDataD &data);
Normalization normalization(const ModularDataD &data);

/// Raw Verlinde sum  sum_p s_ip s_jp s_{k*}p / s_0p.
double verlinde_sum(int i, int j, int k, const ModularDataD &data);

/// The Verlinde sum, required to sit within tol of an integer (residual_error otherwise).
double verlinde_coeff(int i, int j, int k, const ModularDataD &data, Tolerance tol = Tolerance{});

/// s_ij recomputed from twists and dimensions:
/// theta_i^-1 theta_j^-1 sum_k N^k_{i*j} theta_k d_k / D.
Scalar s_from_twists(int i, int j, const ModularDataD &data);

} // namespace equifuse
