#include "equifuse/formulas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace equifuse {

void VerificationReport::add(std::string name, std::string params, double residual) {
    const bool ok = std::isfinite(residual) && residual < tolerance;
    checks.push_back(CheckResult{std::move(name), std::move(params), residual, ok});
}

void VerificationReport::append(const VerificationReport &other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

bool VerificationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult &c) { return c.passed; });
}

void VerificationReport::sort() {
    std::stable_sort(checks.begin(), checks.end(), [](const CheckResult &a, const CheckResult &b) {
        return std::tie(a.name, a.params) < std::tie(b.name, b.params);
    });
}

namespace {

GradedLabel lam(const CLabel &x) { return GradedLabel::plain(x); }
const GradedLabel unit_label = GradedLabel::plain(CLabel::plain(0));

std::string mparam(int m) { return "m=" + std::to_string(m); }

void require_plain_parity(const CLabel &x, int parity, const char *what) {
    if (!x.is_plain() || x.index % 2 != parity)
        throw Error(ErrorKind::invalid_parameter,
                    std::string(what) + ": " + to_string(x) + " has the wrong sector");
}

double checked_against_oracle(Scalar value, const CLabel &i, const CLabel &j, const CLabel &k,
                              const ExtModularData &ext, Tolerance tol, const char *what) {
    const int oracle = ext.ring().coeff(i, j, k);
    const double residual = std::abs(value - Scalar{static_cast<double>(oracle), 0.0});
    if (residual >= tol.eps) {
        std::ostringstream os;
        os.precision(12);
        os << what << "(" << to_string(i) << "," << to_string(j) << "," << to_string(k)
           << ") = " << value << " but oracle gives " << oracle;
        throw Error(ErrorKind::check_failure, os.str());
    }
    return static_cast<double>(oracle);
}

} // namespace

Scalar ext_sum_e(const CLabel &i, const CLabel &j, const CLabel &k, const ExtModularData &ext) {
    if (i.sector() != Z2::e)
        throw Error(ErrorKind::invalid_parameter, "ext_sum_e: i must be in the trivial sector");
    if (j.sector() != k.sector())
        throw Error(ErrorKind::invalid_parameter, "ext_sum_e: j and k must share a sector");
    const CLabel ks = k; // all simples are self-dual when 8 | delta
    Scalar acc{};
    if (j.sector() == Z2::e) {
        for (const auto &p : ext.ee_basis())
            acc += ext.s_pair(lam(i), p) * ext.s_pair(lam(j), p) * ext.s_pair(lam(ks), p) /
                   ext.s_pair(unit_label, p);
    } else {
        for (const auto &p : ext.ae_basis()) {
            const GradedLabel lp = lam(p.cls);
            acc += ext.s_pair(lam(i), lp) * ext.s_pair(lam(j), p) * ext.s_pair(lam(ks), p) /
                   ext.s_pair(unit_label, lp);
        }
    }
    return acc;
}

Scalar ext_sum_a(const CLabel &i, const CLabel &j, const CLabel &k, const ExtModularData &ext) {
    require_plain_parity(i, 1, "ext_sum_a");
    require_plain_parity(j, 1, "ext_sum_a");
    if (k.sector() != Z2::e)
        throw Error(ErrorKind::invalid_parameter, "ext_sum_a: k must be in the trivial sector");
    Scalar acc{};
    for (const auto &p : ext.ae_basis()) {
        const GradedLabel lp = lam(p.cls);
        acc += ext.s_pair(lam(i), p) * ext.s_pair(lam(j), p) * ext.s_pair(lam(k), lp) /
               ext.s_pair(unit_label, lp);
    }
    return acc;
}

double ext_coeff_e(const CLabel &i, const CLabel &j, const CLabel &k, const ExtModularData &ext,
                   Tolerance tol) {
    return checked_against_oracle(ext_sum_e(i, j, k, ext), i, j, k, ext, tol, "ext_coeff_e");
}

double ext_coeff_a(const CLabel &i, const CLabel &j, const CLabel &k, const ExtModularData &ext,
                   Tolerance tol) {
    return checked_against_oracle(ext_sum_a(i, j, k, ext), i, j, k, ext, tol, "ext_coeff_a");
}

Z2DiagMatrices z2diag_matrices(int i, const ExtModularData &ext) {
    const CLabel li = CLabel::plain(i);
    require_plain_parity(li, 1, "z2diag");
    ext.ring().position(li);

    const int m = ext.m();
    const auto basis = star_e_basis(m);
    const auto nb = static_cast<Eigen::Index>(basis.size());
    const auto &domain = ext.ea_basis();
    const auto nd = static_cast<Eigen::Index>(domain.size());
    auto row_of = [&](const GradedLabel &l) {
        return static_cast<Eigen::Index>(std::find(basis.begin(), basis.end(), l) - basis.begin());
    };

    Z2DiagMatrices out;
    out.m = change_of_basis_matrix(m);
    out.s_l = Eigen::MatrixXcd::Zero(nb, nd);
    out.s = Eigen::MatrixXcd::Zero(nb, nd);
    for (Eigen::Index c = 0; c < nd; ++c) {
        const GradedLabel &lj = domain[static_cast<std::size_t>(c)];
        // s (lambda_i (x) lambda_j) lands in V_{e,e}
        const ExtVector prod = tensor(ExtVector(lam(li)), ExtVector(lj), ext);
        for (const auto &[r, coeff] : prod.terms())
            for (const auto &y : ext.ee_basis())
                out.s_l(row_of(y), c) += coeff * ext.s_pair(r, y);
        // s lambda_j lands in V_{a,e}
        for (const auto &y : ext.ae_basis())
            out.s(row_of(y), c) = ext.s_pair(lj, y);
    }

    // M-coordinates: the lambda_p row carries alpha_p, the a-lambda_p row beta_p
    out.d_diag = Eigen::VectorXcd::Zero(nb);
    for (const auto &y : ext.ae_basis()) {
        const Scalar ratio = ext.s_pair(lam(li), y) / ext.s_pair(unit_label, lam(y.cls));
        out.d_diag(row_of(lam(y.cls))) = -ratio;
        out.d_diag(row_of(y)) = ratio;
    }
    // lambda+ and lambda- have no twisted partner, so their eigenvalue is zero
    return out;
}

CheckResult z2diag_check(int i, const ExtModularData &ext, Tolerance tol) {
    const Z2DiagMatrices z = z2diag_matrices(i, ext);
    const Eigen::MatrixXcd mc = z.m.cast<Scalar>();
    const Eigen::MatrixXcd lhs = mc * z.s_l;
    const Eigen::MatrixXcd rhs = z.d_diag.asDiagonal() * (mc * z.s);
    const double residual = (lhs - rhs).cwiseAbs().maxCoeff();
    return CheckResult{"ext.z2diag", mparam(ext.m()) + ",i=" + std::to_string(i), residual,
                       residual < tol.eps};
}

double TwoSums::residual() const {
    double worst = 0.0;
    for (const Scalar &l : lhs)
        worst = std::max(worst, std::abs(l - Scalar{rhs, 0.0}));
    return worst;
}

TwoSums twosums(int i, int j, int k, const ExtModularData &ext) {
    const int m = ext.m();
    const int c = 2 * m;
    const int delta = 4 * m;
    for (int x : {i, j, k})
        if (x < 0 || x > c)
            throw Error(ErrorKind::invalid_parameter, "twosums: index outside 0..2m");
    if (i % 2 != 0)
        throw Error(ErrorKind::invalid_parameter, "twosums: i must be even");

    // I° element as its constituent labels
    auto parts = [&](int x) -> std::vector<GradedLabel> {
        if (x == c)
            return {lam(CLabel::plus()), lam(CLabel::minus())};
        return {lam(CLabel::plain(x))};
    };
    auto pair = [&](int x, const GradedLabel &y) {
        Scalar acc{};
        for (const auto &l : parts(x))
            acc += ext.s_pair(l, y);
        return acc;
    };

    TwoSums out;
    const std::vector<GradedLabel> k_choices = parts(k);
    for (const auto &kl : k_choices) {
        Scalar acc{};
        if (j % 2 != 0) {
            for (const auto &p : ext.ae_basis()) {
                const GradedLabel lp = lam(p.cls);
                acc += pair(i, lp) * pair(j, p) * ext.s_pair(kl, p) / ext.s_pair(unit_label, lp);
            }
        } else {
            for (const auto &p : ext.ee_basis())
                acc += pair(i, p) * pair(j, p) * ext.s_pair(kl, p) / ext.s_pair(unit_label, p);
        }
        out.lhs.push_back(acc);
    }

    const ModularDataD &d = ext.d_data();
    double rhs = 0.0;
    for (int p = 0; p <= delta; ++p) {
        const double fold = k == c ? d.s(d.dual(k), p) : d.s(d.dual(k), p) + d.s(d.dual(delta - k), p);
        rhs += d.s(i, p) * d.s(j, p) * fold / d.s(0, p);
    }
    out.rhs = rhs;
    return out;
}

CheckResult twosums_check(int i, int j, int k, const ExtModularData &ext, Tolerance tol) {
    const double r = twosums(i, j, k, ext).residual();
    std::ostringstream params;
    params << mparam(ext.m()) << ",i=" << i << ",j=" << j << ",k=" << k;
    return CheckResult{"ext.twosums", params.str(), r, r < tol.eps};
}

VerificationReport fold_lemma_checks(const ModularDataD &d_data, Tolerance tol) {
    if (d_data.delta() % 4 != 0)
        throw Error(ErrorKind::invalid_parameter, "fold lemmas need delta = 4m");
    const int delta = d_data.delta();
    const int c = delta / 2;
    double odd = 0.0, even = 0.0, centre = 0.0;
    for (int p = 0; p <= delta; ++p) {
        for (int k = 0; k <= delta; ++k) {
            const double a = d_data.s(d_data.dual(k), p);
            const double b = d_data.s(d_data.dual(delta - k), p);
            if (p % 2 != 0)
                odd = std::max(odd, std::abs(a + b));
            else
                even = std::max(even, std::abs(a - b));
        }
        if (p % 2 != 0)
            centre = std::max(centre, std::abs(d_data.s(c, p)));
    }
    VerificationReport r;
    r.tolerance = tol.eps;
    const std::string params = "kappa=" + std::to_string(d_data.kappa());
    r.add("d.fold_odd", params, odd);
    r.add("d.fold_even", params, even);
    r.add("d.fold_centre", params, centre);
    return r;
}

namespace {

double max_abs(const Eigen::MatrixXcd &x) { return x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff(); }

void d_side_checks(const ModularDataD &d, VerificationReport &r) {
    const std::string params = "kappa=" + std::to_string(d.kappa());
    const int n = d.rank();
    const Eigen::MatrixXcd s = d.s_matrix().cast<Scalar>();

    r.add("d.s_symmetric", params, max_abs(s - s.transpose()));
    r.add("d.s_unitary", params, max_abs(s * s.adjoint() - Eigen::MatrixXcd::Identity(n, n)));

    double verl = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                verl = std::max(verl, std::abs(verlinde_sum(i, j, k, d) - d.n(i, j, k)));
    r.add("d.verlinde", params, verl);

    const Normalization &nm = d.normalization();
    const Eigen::MatrixXcd st = s * d.t_matrix();
    r.add("d.modular_relation", params, max_abs(st * st * st - (nm.p_plus / nm.big_d) * (s * s)));

    double twist_route = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            twist_route = std::max(twist_route, std::abs(s_from_twists(i, j, d) - s(i, j)));
    r.add("d.s_from_twists", params, twist_route);

    double dims = 0.0;
    for (int i = 0; i < n; ++i)
        dims = std::max(dims, std::abs(d.s(0, i) / d.s(0, 0) - d.dim(i)));
    const double closed = std::sqrt(d.kappa() / 2.0) / std::sin(std::numbers::pi / d.kappa());
    r.add("d.dimensions", params, dims);
    r.add("d.big_d", params,
          std::max(std::abs(nm.big_d - closed), std::abs(std::sqrt(nm.p_plus * nm.p_minus) - nm.big_d)));

    double assoc = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    long long lhs = 0, rhs = 0;
                    for (int x = 0; x < n; ++x) {
                        lhs += d.n(i, j, x) * d.n(x, k, l);
                        rhs += d.n(j, k, x) * d.n(i, x, l);
                    }
                    assoc = std::max(assoc, static_cast<double>(std::llabs(lhs - rhs)));
                }
    r.add("d.n_associative", params, assoc);

    if (d.delta() % 4 == 0)
        r.append(fold_lemma_checks(d, Tolerance{r.tolerance}));
}

// The generating products, written out for comparison against the built ring.
std::vector<std::pair<std::pair<CLabel, CLabel>, std::vector<std::pair<CLabel, int>>>>
seed_table(int m) {
    using Row = std::vector<std::pair<CLabel, int>>;
    std::vector<std::pair<std::pair<CLabel, CLabel>, Row>> t;
    const CLabel xp = CLabel::plus(), xm = CLabel::minus();
    const auto X = CLabel::plain;
    for (int i = 0; i < 2 * m; ++i)
        t.push_back({{X(0), X(i)}, {{X(i), 1}}});
    for (const CLabel &e : {xp, xm})
        t.push_back({{X(0), e}, {{e, 1}}});
    for (int i = 1; i <= 2 * m - 2; ++i)
        t.push_back({{X(1), X(i)}, {{X(i - 1), 1}, {X(i + 1), 1}}});
    t.push_back({{X(1), X(2 * m - 1)}, {{X(2 * m - 2), 1}, {xp, 1}, {xm, 1}}});
    for (const CLabel &e : {xp, xm}) {
        t.push_back({{X(1), e}, {{X(2 * m - 1), 1}}});
        Row same, cross;
        for (int i = 0; i <= 2 * m - 4; i += 4)
            same.push_back({X(i), 1});
        same.push_back({e, 1});
        for (int i = 2; i <= 2 * m - 2; i += 4)
            cross.push_back({X(i), 1});
        t.push_back({{e, e}, same});
        t.push_back({{e, e == xp ? xm : xp}, cross});
    }
    return t;
}

void ring_checks(const TypeDRing &ring, const ModularDataD &d, VerificationReport &r) {
    const std::string params = mparam(ring.m());
    const std::size_t n = ring.size();
    const auto &labels = ring.labels();

    double seeds = 0.0;
    for (const auto &[xy, row] : seed_table(ring.m())) {
        std::vector<int> want(n, 0);
        for (const auto &[z, mult] : row)
            want[ring.position(z)] += mult;
        const auto got = ring.product(xy.first, xy.second);
        for (std::size_t z = 0; z < n; ++z)
            seeds = std::max(seeds, static_cast<double>(std::abs(got[z] - want[z])));
    }
    r.add("c.seed_table", params, seeds);

    const CoefrelatReport cr = coefrelat_check(ring, d);
    double coef = 0.0;
    for (const auto &e : cr.entries)
        coef = std::max(coef, static_cast<double>(std::llabs(e.l_value - e.n_value)));
    r.add("c.coefrelat", params, coef);

    double comm = 0.0, assoc = 0.0, dimhom = 0.0, z2 = 0.0, unit = 0.0, grading = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            double dsum = 0.0;
            for (std::size_t z = 0; z < n; ++z) {
                const int l = ring.coeff(x, y, z);
                comm = std::max(comm, static_cast<double>(std::abs(l - ring.coeff(y, x, z))));
                dsum += l * ring.dim(labels[z]);
                const int la = ring.coeff(ring.act(labels[x]), ring.act(labels[y]), ring.act(labels[z]));
                z2 = std::max(z2, static_cast<double>(std::abs(l - la)));
                if (l != 0 && labels[z].sector() != (labels[x].sector() * labels[y].sector()))
                    grading = std::max(grading, static_cast<double>(l));
                for (std::size_t w = 0; w < n; ++w) {
                    long long lhs = 0, rhs = 0;
                    for (std::size_t t = 0; t < n; ++t) {
                        lhs += static_cast<long long>(ring.coeff(x, y, t)) * ring.coeff(t, z, w);
                        rhs += static_cast<long long>(ring.coeff(y, z, t)) * ring.coeff(x, t, w);
                    }
                    assoc = std::max(assoc, static_cast<double>(std::llabs(lhs - rhs)));
                }
            }
            dimhom = std::max(dimhom, std::abs(ring.dim(labels[x]) * ring.dim(labels[y]) - dsum));
            unit = std::max(unit, static_cast<double>(std::abs(ring.coeff(0, x, y) - (x == y ? 1 : 0))));
            unit = std::max(unit, static_cast<double>(std::abs(ring.coeff(x, y, 0) - (x == y ? 1 : 0))));
        }
    }
    r.add("c.commutative", params, comm);
    r.add("c.associative", params, assoc);
    r.add("c.dimension_homomorphism", params, dimhom);
    r.add("c.z2_invariance", params, z2);
    r.add("c.unit_duality", params, unit);
    r.add("c.grading", params, grading);

    // dim_C X = dim_D X / dim_D A, dim_D A = 2
    double dimrel = 0.0;
    for (const auto &x : labels) {
        const double dd = x.is_plain() ? d.dim(x.index) + d.dim(ring.delta() - x.index) : d.dim(2 * ring.m());
        dimrel = std::max(dimrel, std::abs(ring.dim(x) - dd / 2.0));
    }
    r.add("c.dimension_relation", params, dimrel);
}

void extended_checks(const ExtModularData &ext, VerificationReport &r) {
    const int m = ext.m();
    const std::string params = mparam(m);
    const TypeDRing &ring = ext.ring();
    const ModularDataD &d = ext.d_data();
    const Eigen::MatrixXcd &see = ext.s_ee();
    const auto ne = see.rows();

    r.add("ext.s_ee_symmetric", params, max_abs(see - see.transpose()));
    r.add("ext.s_ee_unitary", params, max_abs(see * see.adjoint() - Eigen::MatrixXcd::Identity(ne, ne)));
    const Eigen::MatrixXcd &sea = ext.s_ea();
    r.add("ext.s_ea_unitary", params,
          max_abs(sea * sea.adjoint() - Eigen::MatrixXcd::Identity(sea.rows(), sea.rows())));

    r.add("ext.excsum", params, std::abs(excval(m) + exc_cross(m) - d.s(2 * m, 2 * m)));
    const double closed = excval(m);
    r.add("ext.exc_twist_route", params, std::abs(exc_via_twists(ring, d) - closed));
    r.add("ext.exc_gauss_route", params, std::abs(exc_via_gauss(m) - closed));

    // |G| D_C = D_{C/G}, and D_C from the trivial sector's own p+ p-
    Scalar pp{}, pm{};
    for (const auto &x : ext.ee_basis()) {
        const Scalar t = d.twist(x.cls.is_plain() ? x.cls.index : 2 * m);
        const double dim = ring.dim(x.cls);
        pp += t * dim * dim;
        pm += std::conj(t) * dim * dim;
    }
    r.add("ext.big_d_relation", params,
          std::max(std::abs(2.0 * ext.big_d_c() - d.normalization().big_d),
                   std::abs(std::sqrt(pp * pm) - ext.big_d_c())));

    // SL2(Z) relation on the trivial sector
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(ne, ne);
    for (Eigen::Index a = 0; a < ne; ++a) {
        const CLabel &x = ext.ee_basis()[static_cast<std::size_t>(a)].cls;
        t(a, a) = d.twist(x.is_plain() ? x.index : 2 * m);
    }
    const Eigen::MatrixXcd st = see * t;
    r.add("ext.modular_relation_ce", params, max_abs(st * st * st - (pp / ext.big_d_c()) * (see * see)));

    double verl = 0.0;
    for (const auto &x : ext.ee_basis())
        for (const auto &y : ext.ee_basis())
            for (const auto &z : ext.ee_basis())
                verl = std::max(verl, std::abs(ext_sum_e(x.cls, y.cls, z.cls, ext) -
                                               static_cast<double>(ring.coeff(x.cls, y.cls, z.cls))));
    r.add("ext.verlinde_ce", params, verl);

    double v11 = 0.0;
    for (const auto &i : ext.ee_basis())
        for (const auto &j : ext.ea_basis())
            for (const auto &k : ext.ea_basis())
                v11 = std::max(v11, std::abs(ext_sum_e(i.cls, j.cls, k.cls, ext) -
                                             static_cast<double>(ring.coeff(i.cls, j.cls, k.cls))));
    r.add("ext.v11mod", params, v11);

    double v1fu = 0.0;
    for (const auto &i : ext.ea_basis())
        for (const auto &j : ext.ea_basis())
            for (const auto &k : ext.ee_basis())
                v1fu = std::max(v1fu, std::abs(ext_sum_a(i.cls, j.cls, k.cls, ext) -
                                               static_cast<double>(ring.coeff(i.cls, j.cls, k.cls))));
    r.add("ext.v1fu", params, v1fu);

    for (const auto &i : ext.ea_basis()) {
        const CheckResult c = z2diag_check(i.cls.index, ext, Tolerance{r.tolerance});
        r.add(c.name, c.params, c.max_residual);
    }

    for (int i = 0; i <= 2 * m; i += 2)
        for (int j = 0; j <= 2 * m; ++j)
            for (int k = 0; k <= 2 * m; ++k) {
                const CheckResult c = twosums_check(i, j, k, ext, Tolerance{r.tolerance});
                r.add(c.name, c.params, c.max_residual);
            }

    double conv = 0.0;
    for (const auto &ap : ext.ae_basis()) {
        const GradedLabel lp = GradedLabel::plain(ap.cls);
        const double inv = 1.0 / ring.dim(ap.cls);
        const ExtVector alpha = 0.5 * (ExtVector(ap) - ExtVector(lp));
        const ExtVector beta = 0.5 * (ExtVector(ap) + ExtVector(lp));
        conv = std::max(conv, convolution(alpha, alpha, ext).distance(-inv * alpha));
        conv = std::max(conv, convolution(beta, beta, ext).distance(inv * beta));
        conv = std::max(conv, convolution(alpha, beta, ext).distance(ExtVector{}));
        conv = std::max(conv, convolution(beta, alpha, ext).distance(ExtVector{}));
        // alpha, beta are the images of lambda_p, a-lambda_p under M
        conv = std::max(conv, change_of_basis_m(ExtVector(lp)).distance(alpha));
        conv = std::max(conv, change_of_basis_m(ExtVector(ap)).distance(beta));
    }
    for (const CLabel &e : {CLabel::plus(), CLabel::minus()}) {
        const ExtVector v{GradedLabel::plain(e)};
        conv = std::max(conv, convolution(v, v, ext).distance((1.0 / ring.dim(e)) * v));
    }
    r.add("ext.convolution_diagonal", params, conv);
}

} // namespace

VerificationReport verify_all(int m, Tolerance tol) {
    VerificationReport report;
    report.tolerance = tol.eps;
    if (m < 2 || m % 2 != 0) {
        report.add("c.ring_build", mparam(m), std::numeric_limits<double>::infinity());
        return report;
    }

    const ModularDataD d(4 * m + 2);
    d_side_checks(d, report);

    TypeDRing ring;
    try {
        ring = build_ring(m);
        report.add("c.ring_build", mparam(m), 0.0);
    } catch (const Error &) {
        report.add("c.ring_build", mparam(m), std::numeric_limits<double>::infinity());
        report.sort();
        return report;
    }
    ring_checks(ring, d, report);

    try {
        const ExtModularData ext = build_s_c(ring, d, tol);
        report.add("ext.build_s_c", mparam(m), 0.0);
        extended_checks(ext, report);
    } catch (const Error &) {
        report.add("ext.build_s_c", mparam(m), std::numeric_limits<double>::infinity());
    }
    report.sort();
    return report;
}

} // namespace equifuse
