#include "equifuse/extended.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace equifuse {

GradedLabel GradedLabel::twisted(CLabel x) {
    if (x.is_exceptional())
        throw Error(ErrorKind::invalid_parameter,
                    "no twisted element for " + to_string(x) + ": class is not a-invariant");
    return GradedLabel{x, Z2::a};
}

std::string to_string(const GradedLabel &x) {
    std::string cls = to_string(x.cls).substr(1);
    return (x.twist == Z2::a ? "al:" : "l:") + cls;
}

GradedLabel parse_graded_label(const std::string &text, int m) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw Error(ErrorKind::invalid_parameter, "graded label '" + text + "' lacks ':'");
    const std::string head = text.substr(0, colon);
    const CLabel cls = parse_clabel(text.substr(colon + 1), m);
    if (head == "l")
        return GradedLabel::plain(cls);
    if (head == "al")
        return GradedLabel::twisted(cls);
    throw Error(ErrorKind::invalid_parameter, "graded label '" + text + "' must start with l: or al:");
}

void ExtVector::add(const GradedLabel &x, Scalar c) {
    auto it = terms_.find(x);
    if (it == terms_.end()) {
        if (std::abs(c) >= prune)
            terms_.emplace(x, c);
        return;
    }
    it->second += c;
    if (std::abs(it->second) < prune)
        terms_.erase(it);
}

Scalar ExtVector::coeff(const GradedLabel &x) const {
    auto it = terms_.find(x);
    return it == terms_.end() ? Scalar{} : it->second;
}

ExtVector &ExtVector::operator+=(const ExtVector &o) {
    for (const auto &[x, c] : o.terms_)
        add(x, c);
    return *this;
}

ExtVector &ExtVector::operator-=(const ExtVector &o) {
    for (const auto &[x, c] : o.terms_)
        add(x, -c);
    return *this;
}

ExtVector &ExtVector::operator*=(Scalar c) {
    Terms out;
    for (const auto &[x, v] : terms_)
        if (std::abs(v * c) >= prune)
            out.emplace(x, v * c);
    terms_ = std::move(out);
    return *this;
}

double ExtVector::distance(const ExtVector &o) const {
    double worst = 0.0;
    for (const auto &[x, c] : terms_)
        worst = std::max(worst, std::abs(c - o.coeff(x)));
    for (const auto &[x, c] : o.terms_)
        worst = std::max(worst, std::abs(c - coeff(x)));
    return worst;
}

namespace {

void require_even_m(int m, const char *what) {
    if (m < 2 || m % 2 != 0)
        throw Error(ErrorKind::unsupported_case,
                    std::string(what) + ": needs even m >= 2, got " + std::to_string(m));
}

double sign_half_m(int m) { return (m / 2) % 2 == 0 ? 1.0 : -1.0; }

} // namespace

double excval(int m) {
    require_even_m(m, "excval");
    const double kappa = 4.0 * m + 2.0;
    return 0.5 * (std::sqrt(2.0 / kappa) + sign_half_m(m));
}

double exc_cross(int m) {
    require_even_m(m, "exc_cross");
    const double kappa = 4.0 * m + 2.0;
    return 0.5 * (std::sqrt(2.0 / kappa) - sign_half_m(m));
}

Scalar exc_via_twists_unnormalized(const TypeDRing &ring, const ModularDataD &d_data) {
    const int m = ring.m();
    require_even_m(m, "exc_via_twists");
    if (d_data.kappa() != ring.kappa())
        throw Error(ErrorKind::invalid_parameter, "exc_via_twists: kappa mismatch");
    // theta of a trivial-sector class: X_i = V_i + V_{delta-i} share theta_i for even i,
    // X+ and X- restrict to V_{2m}
    auto twist_of = [&](const CLabel &x) {
        return d_data.twist(x.is_plain() ? x.index : 2 * m);
    };
    const CLabel p = CLabel::plus();
    Scalar acc{};
    for (const auto &z : ring.labels())
        if (int mult = ring.coeff(p, p, z); mult != 0)
            acc += static_cast<double>(mult) * twist_of(z) * ring.dim(z);
    const Scalar t = twist_of(p);
    return acc / (t * t);
}

Scalar exc_via_twists(const TypeDRing &ring, const ModularDataD &d_data) {
    return exc_via_twists_unnormalized(ring, d_data) / (d_data.normalization().big_d / 2.0);
}

Scalar exc_via_gauss(int m) {
    require_even_m(m, "exc_via_gauss");
    const int kappa = 4 * m + 2;
    const Scalar q = root_of_unity(kappa);
    const Scalar theta_c = theta(2 * m, kappa);
    const Scalar prefactor = -0.5 / (theta_c * theta_c) / q / (q - 1.0 / q);
    // S(8, kappa) from the 8-term sum S(kappa, 8)
    const Scalar s8 = gauss_sum_by_reciprocity(8, kappa);
    const Scalar unnormalized = prefactor * (1.0 + 0.5 * s8);
    const double inv_big_d_c = 2.0 * std::sqrt(2.0 / kappa) * std::sin(std::numbers::pi / kappa);
    return unnormalized * inv_big_d_c;
}

ExtModularData build_s_c(const TypeDRing &ring, const ModularDataD &d_data, Tolerance tol) {
    const int m = ring.m();
    if (d_data.kappa() != ring.kappa())
        throw Error(ErrorKind::invalid_parameter, "build_s_c: ring and D-side data disagree on kappa");

    ExtModularData ext(ring, d_data);
    for (int p = 0; p < 2 * m; p += 2)
        ext.ee_.push_back(GradedLabel::plain(CLabel::plain(p)));
    ext.ee_.push_back(GradedLabel::plain(CLabel::plus()));
    ext.ee_.push_back(GradedLabel::plain(CLabel::minus()));
    for (int j = 1; j < 2 * m; j += 2)
        ext.ea_.push_back(GradedLabel::plain(CLabel::plain(j)));
    for (int p = 0; p < 2 * m; p += 2)
        ext.ae_.push_back(GradedLabel::twisted(CLabel::plain(p)));

    const auto ne = static_cast<Eigen::Index>(ext.ee_.size());
    const int c = 2 * m;
    ext.s_ee_.resize(ne, ne);
    for (Eigen::Index r = 0; r < ne; ++r) {
        for (Eigen::Index col = 0; col < ne; ++col) {
            const CLabel &x = ext.ee_[static_cast<std::size_t>(r)].cls;
            const CLabel &y = ext.ee_[static_cast<std::size_t>(col)].cls;
            double v;
            if (x.is_plain() && y.is_plain())
                v = 2.0 * d_data.s(x.index, y.index);
            else if (x.is_plain())
                v = d_data.s(x.index, c);
            else if (y.is_plain())
                v = d_data.s(c, y.index);
            else
                v = x == y ? excval(m) : exc_cross(m);
            ext.s_ee_(r, col) = v;
        }
    }

    const auto na = static_cast<Eigen::Index>(ext.ea_.size());
    ext.s_ea_.resize(na, na);
    for (Eigen::Index r = 0; r < na; ++r)
        for (Eigen::Index col = 0; col < na; ++col)
            ext.s_ea_(r, col) = 2.0 * d_data.s(ext.ea_[static_cast<std::size_t>(r)].cls.index,
                                               ext.ae_[static_cast<std::size_t>(col)].cls.index);

    ext.big_d_c_ = d_data.normalization().big_d / 2.0;

    const double asym = (ext.s_ee_ - ext.s_ee_.transpose()).cwiseAbs().maxCoeff();
    const double unit =
        (ext.s_ee_ * ext.s_ee_.adjoint() - Eigen::MatrixXcd::Identity(ne, ne)).cwiseAbs().maxCoeff();
    if (asym >= tol.eps || unit >= tol.eps) {
        std::ostringstream os;
        os << "assembled s_ee is not symmetric unitary: asymmetry " << asym << ", unitarity defect "
           << unit;
        throw Error(ErrorKind::construction_failure, os.str());
    }
    return ext;
}

ExtModularData build_extended(int m, Tolerance tol) {
    TypeDRing ring = build_ring(m);
    ModularDataD d(ring.kappa());
    return build_s_c(ring, d, tol);
}

Scalar ExtModularData::s_pair(const GradedLabel &x, const GradedLabel &y) const {
    auto ee_pos = [&](const CLabel &cls) -> Eigen::Index {
        if (cls.kind == CLabel::Kind::plus)
            return m();
        if (cls.kind == CLabel::Kind::minus)
            return m() + 1;
        return cls.index / 2;
    };
    auto in = [](const GradedLabel &l, Z2 g, Z2 h) { return l.twist == g && l.sector() == h; };

    if (in(x, Z2::a, Z2::a) || in(y, Z2::a, Z2::a))
        throw Error(ErrorKind::unsupported_case, "s-matrix block on V_{a,a} is not available");
    ring_.position(x.cls);
    ring_.position(y.cls);

    if (in(x, Z2::e, Z2::e) && in(y, Z2::e, Z2::e))
        return s_ee_(ee_pos(x.cls), ee_pos(y.cls));
    if (in(x, Z2::e, Z2::a) && in(y, Z2::a, Z2::e))
        return s_ea_(x.cls.index / 2, y.cls.index / 2);
    if (in(x, Z2::a, Z2::e) && in(y, Z2::e, Z2::a))
        return s_ea_(y.cls.index / 2, x.cls.index / 2);
    return Scalar{};
}

ExtVector tensor(const ExtVector &x, const ExtVector &y, const ExtModularData &alg) {
    const TypeDRing &ring = alg.ring();
    ExtVector out;
    for (const auto &[lx, cx] : x.terms()) {
        for (const auto &[ly, cy] : y.terms()) {
            if (lx.twist != ly.twist)
                continue;
            if (lx.twist == Z2::a)
                throw Error(ErrorKind::unsupported_case,
                            "tensor product of twisted elements " + to_string(lx) + ", " + to_string(ly));
            const auto row = ring.product(lx.cls, ly.cls);
            for (std::size_t z = 0; z < row.size(); ++z)
                if (row[z] != 0)
                    out.add(GradedLabel::plain(ring.labels()[z]), cx * cy * static_cast<double>(row[z]));
        }
    }
    return out;
}

namespace {

void require_star_e(const GradedLabel &l, const char *what) {
    if (l.sector() != Z2::e)
        throw Error(ErrorKind::unsupported_case,
                    std::string(what) + ": " + to_string(l) + " is outside V_{*,e}");
}

} // namespace

ExtVector convolution(const ExtVector &x, const ExtVector &y, const ExtModularData &alg) {
    ExtVector out;
    for (const auto &[lx, cx] : x.terms()) {
        require_star_e(lx, "convolution");
        for (const auto &[ly, cy] : y.terms()) {
            require_star_e(ly, "convolution");
            if (lx.cls != ly.cls)
                continue;
            const GradedLabel target{lx.cls, lx.twist * ly.twist};
            out.add(target, cx * cy / alg.ring().dim(lx.cls));
        }
    }
    return out;
}

ExtVector change_of_basis_m(const ExtVector &x) {
    ExtVector out;
    for (const auto &[l, c] : x.terms()) {
        require_star_e(l, "change_of_basis_m");
        if (l.cls.is_exceptional()) {
            out.add(l, c);
            continue;
        }
        const GradedLabel lam = GradedLabel::plain(l.cls);
        const GradedLabel alam = GradedLabel::twisted(l.cls);
        const double sign = l.twist == Z2::e ? -1.0 : 1.0;
        out.add(alam, 0.5 * c);
        out.add(lam, 0.5 * sign * c);
    }
    return out;
}

ExtVector change_of_basis_m_inverse(const ExtVector &x) {
    // each invariant block squares to 1/2
    ExtVector out;
    for (const auto &[l, c] : x.terms()) {
        require_star_e(l, "change_of_basis_m_inverse");
        if (l.cls.is_exceptional())
            out.add(l, c);
        else
            out += 2.0 * change_of_basis_m(ExtVector(l, c));
    }
    return out;
}

ExtVector t_tilde(const ExtVector &x, const ExtModularData &alg) {
    const int kappa = alg.ring().kappa();
    ExtVector out;
    for (const auto &[l, c] : x.terms()) {
        if (l.sector() != Z2::e)
            throw Error(ErrorKind::unsupported_case,
                        "t_tilde on " + to_string(l) + ": twist scalar on V_{e,a} is not fixed");
        const int i = l.cls.is_plain() ? l.cls.index : 2 * alg.m();
        out.add(l, c * theta(i, kappa));
    }
    return out;
}

Scalar bilinear_form(const ExtVector &x, const ExtVector &y) {
    Scalar acc{};
    for (const auto &[l, c] : x.terms())
        acc += c * y.coeff(l);
    return acc;
}

std::vector<GradedLabel> star_e_basis(int m) {
    std::vector<GradedLabel> basis;
    for (int p = 0; p < 2 * m; p += 2) {
        basis.push_back(GradedLabel::plain(CLabel::plain(p)));
        basis.push_back(GradedLabel::twisted(CLabel::plain(p)));
    }
    basis.push_back(GradedLabel::plain(CLabel::plus()));
    basis.push_back(GradedLabel::plain(CLabel::minus()));
    return basis;
}

Eigen::MatrixXd change_of_basis_matrix(int m) {
    const auto basis = star_e_basis(m);
    const auto n = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index col = 0; col < n; ++col) {
        const ExtVector image = change_of_basis_m(ExtVector(basis[static_cast<std::size_t>(col)]));
        for (Eigen::Index r = 0; r < n; ++r)
            mat(r, col) = image.coeff(basis[static_cast<std::size_t>(r)]).real();
    }
    return mat;
}

} // namespace equifuse
