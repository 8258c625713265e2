#include "equifuse/verlinde_d.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

namespace equifuse {

namespace {

int truncated_cg(int i, int j, int k, int delta) {
    if (k < std::abs(i - j) || k > i + j)
        return 0;
    if (k > 2 * delta - (i + j))
        return 0;
    return (i + j + k) % 2 == 0 ? 1 : 0;
}

} // namespace

ModularDataD::ModularDataD(int kappa) : kappa_(kappa) {
    if (kappa < 3)
        throw Error(ErrorKind::invalid_parameter,
                    "kappa must be >= 3, got " + std::to_string(kappa));
    const int r = rank();
    const int d = delta();

    n_.assign(static_cast<std::size_t>(r) * r * r, 0);
    for (int i = 0; i <= d; ++i)
        for (int j = 0; j <= d; ++j)
            for (int k = 0; k <= d; ++k)
                n_[flat(i, j, k)] = truncated_cg(i, j, k, d);

    const double pre = std::sqrt(2.0 / kappa);
    s_.resize(r, r);
    for (int i = 0; i <= d; ++i)
        for (int j = 0; j <= d; ++j)
            s_(i, j) = pre * std::sin(static_cast<double>((i + 1) * (j + 1)) * std::numbers::pi / kappa);

    twists_.reserve(r);
    dims_.reserve(r);
    for (int i = 0; i <= d; ++i) {
        twists_.push_back(theta(i, kappa));
        dims_.push_back(quantum_integer(i + 1, kappa));
    }

    Scalar pp{0.0, 0.0}, pm{0.0, 0.0};
    for (int i = 0; i <= d; ++i) {
        pp += twists_[i] * dims_[i] * dims_[i];
        pm += std::conj(twists_[i]) * dims_[i] * dims_[i];
    }
    // p+ p- = |p+|^2 since the twists are unimodular
    norm_ = Normalization{pp, pm, std::sqrt(std::abs(pp * pm))};
}

void ModularDataD::check_index(int i) const {
    if (i < 0 || i > delta())
        throw Error(ErrorKind::invalid_parameter,
                    "index " + std::to_string(i) + " outside 0.." + std::to_string(delta()));
}

int ModularDataD::n(int i, int j, int k) const {
    check_index(i);
    check_index(j);
    check_index(k);
    return n_[flat(i, j, k)];
}

double ModularDataD::s(int i, int j) const {
    check_index(i);
    check_index(j);
    return s_(i, j);
}

Scalar ModularDataD::twist(int i) const {
    check_index(i);
    return twists_[static_cast<std::size_t>(i)];
}

double ModularDataD::dim(int i) const {
    check_index(i);
    return dims_[static_cast<std::size_t>(i)];
}

int ModularDataD::dual(int i) const {
    check_index(i);
    return i;
}

Eigen::MatrixXcd ModularDataD::t_matrix() const {
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(rank(), rank());
    for (int i = 0; i <= delta(); ++i)
        t(i, i) = twists_[static_cast<std::size_t>(i)];
    return t;
}

int fusion_coeff_n(int i, int j, int k, const ModularDataD &data) { return data.n(i, j, k); }

double s_matrix_d(int i, int j, const ModularDataD &data) { return data.s(i, j); }

double qdim(int i, const ModularDataD &data) { return data.dim(i); }

Normalization normalization(const ModularDataD &data) { return data.normalization(); }

double verlinde_sum(int i, int j, int k, const ModularDataD &data) {
    const int ks = data.dual(k);
    double acc = 0.0;
    for (int p = 0; p <= data.delta(); ++p)
        acc += data.s(i, p) * data.s(j, p) * data.s(ks, p) / data.s(0, p);
    return acc;
}

double verlinde_coeff(int i, int j, int k, const ModularDataD &data, Tolerance tol) {
    const double v = verlinde_sum(i, j, k, data);
    require_integer(Scalar{v, 0.0}, tol, "verlinde_coeff");
    return v;
}

Scalar s_from_twists(int i, int j, const ModularDataD &data) {
    const int is = data.dual(i);
    Scalar acc{0.0, 0.0};
    for (int k = 0; k <= data.delta(); ++k)
        if (data.n(is, j, k) != 0)
            acc += static_cast<double>(data.n(is, j, k)) * data.twist(k) * data.dim(k);
    return acc / (data.twist(i) * data.twist(j)) / data.normalization().big_d;
}

} // namespace equifuse
