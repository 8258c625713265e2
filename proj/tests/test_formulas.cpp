#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <tuple>

#include "equifuse/formulas.hpp"

using namespace equifuse;

namespace {

const auto X = CLabel::plain;
const CLabel XP = CLabel::plus();
const CLabel XM = CLabel::minus();
GradedLabel L(const CLabel &x) { return GradedLabel::plain(x); }
GradedLabel AL(int i) { return GradedLabel::twisted(X(i)); }

ErrorKind kind_of(auto &&fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.kind();
    }
    FAIL("expected an equifuse::Error");
    return ErrorKind::check_failure;
}

// term p of the twisted-sector sum for i even, j and k odd
double term_e(const ExtModularData &ext, int i, int j, int k, int p) {
    const Scalar v = ext.s_pair(L(X(i)), L(X(p))) * ext.s_pair(L(X(j)), AL(p)) *
                     ext.s_pair(L(X(k)), AL(p)) / ext.s_pair(L(X(0)), L(X(p)));
    return v.real();
}

double term_a(const ExtModularData &ext, int i, int j, const CLabel &k, int p) {
    const Scalar v = ext.s_pair(L(X(i)), AL(p)) * ext.s_pair(L(X(j)), AL(p)) *
                     std::conj(ext.s_pair(L(k), L(X(p)))) /
                     ext.s_pair(L(X(0)), L(X(p)));
    return v.real();
}

} // namespace

TEST_CASE("twisted-sector coefficients for m = 2") {
    const ExtModularData ext = build_extended(2);
    CHECK(term_e(ext, 2, 3, 3, 0) == doctest::Approx(1.894427191).epsilon(1e-9));
    CHECK(term_e(ext, 2, 3, 3, 2) == doctest::Approx(0.105572809).epsilon(1e-9));
    CHECK(ext_coeff_e(X(2), X(3), X(3), ext) == 2.0);
    CHECK(term_e(ext, 2, 3, 1, 0) == doctest::Approx(1.170820393).epsilon(1e-9));
    CHECK(term_e(ext, 2, 3, 1, 2) == doctest::Approx(-0.170820393).epsilon(1e-9));
    CHECK(ext_coeff_e(X(2), X(3), X(1), ext) == 1.0);
    CHECK(std::abs(ext_sum_e(X(2), X(3), X(3), ext) - 2.0) < 1e-12);
    for (int j : {1, 3})
        for (int k : {1, 3})
            CHECK(ext_coeff_e(X(0), X(j), X(k), ext) == (j == k ? 1.0 : 0.0));
}

TEST_CASE("trivial-sector coefficients with odd i, j for m = 2") {
    const ExtModularData ext = build_extended(2);
    CHECK(term_a(ext, 1, 1, X(0), 0) == doctest::Approx(0.2763932).epsilon(1e-7));
    CHECK(term_a(ext, 1, 1, X(0), 2) == doctest::Approx(0.7236068).epsilon(1e-7));
    CHECK(ext_coeff_a(X(1), X(1), X(0), ext) == 1.0);
    for (const CLabel &k : {XP, XM}) {
        CHECK(term_a(ext, 1, 3, k, 0) == doctest::Approx(0.7236068).epsilon(1e-7));
        CHECK(term_a(ext, 1, 3, k, 2) == doctest::Approx(0.2763932).epsilon(1e-7));
        CHECK(ext_coeff_a(X(1), X(3), k, ext) == 1.0);
        CHECK(ext_coeff_a(X(1), X(1), k, ext) == 0.0);
        CHECK(std::abs(term_a(ext, 1, 1, k, 0) + term_a(ext, 1, 1, k, 2)) < 1e-12);
    }
    CHECK(ext_coeff_a(X(1), X(1), X(2), ext) == 1.0);
}

TEST_CASE("ordinary Verlinde sum on the trivial sector") {
    const ExtModularData ext = build_extended(2);
    const TypeDRing &ring = ext.ring();
    const std::vector<CLabel> ee{X(0), X(2), XP, XM};
    for (const auto &i : ee)
        for (const auto &j : ee)
            for (const auto &k : ee)
                CHECK(ext_coeff_e(i, j, k, ext) == ring.coeff(i, j, k));
    // X+ (x) X+ = X0 + X+,  X+ (x) X- = X2
    CHECK(ext_coeff_e(XP, XP, XP, ext) == 1.0);
    CHECK(ext_coeff_e(XP, XP, XM, ext) == 0.0);
    CHECK(ext_coeff_e(XP, XP, X(0), ext) == 1.0);
    CHECK(ext_coeff_e(XP, XM, X(2), ext) == 1.0);
}

TEST_CASE("every oracle coefficient is reproduced") {
    for (int m : {2, 4, 6}) {
        const ExtModularData ext = build_extended(m);
        const TypeDRing &ring = ext.ring();
        std::vector<CLabel> even, odd;
        for (const CLabel &x : ring.labels())
            (x.sector() == Z2::e ? even : odd).push_back(x);
        for (const auto &i : even)
            for (const auto &j : odd)
                for (const auto &k : odd)
                    CHECK(ext_coeff_e(i, j, k, ext) == ring.coeff(i, j, k));
        for (const auto &i : odd)
            for (const auto &j : odd)
                for (const auto &k : even)
                    CHECK(ext_coeff_a(i, j, k, ext) == ring.coeff(i, j, k));
    }
}

TEST_CASE("argument errors") {
    const ExtModularData ext = build_extended(2);
    CHECK(kind_of([&] { ext_sum_e(X(1), X(3), X(3), ext); }) == ErrorKind::invalid_parameter);
    CHECK(kind_of([&] { ext_sum_e(X(2), X(3), X(2), ext); }) == ErrorKind::invalid_parameter);
    CHECK(kind_of([&] { ext_sum_a(X(1), X(1), X(1), ext); }) == ErrorKind::invalid_parameter);
    CHECK(kind_of([&] { ext_sum_a(X(2), X(1), X(0), ext); }) == ErrorKind::invalid_parameter);
    CHECK(kind_of([&] { ext_coeff_e(X(2), X(3), X(3), ext, Tolerance{1e-30}); }) == ErrorKind::check_failure);
    CHECK(kind_of([&] { twosums(1, 1, 1, ext); }) == ErrorKind::invalid_parameter);
    CHECK(kind_of([&] { twosums(2, 5, 1, ext); }) == ErrorKind::invalid_parameter);
    CHECK(kind_of([&] { fold_lemma_checks(ModularDataD(12)); }) == ErrorKind::invalid_parameter);
}

TEST_CASE("diagonalization identity") {
    const ExtModularData ext = build_extended(2);
    for (int i : {1, 3}) {
        const CheckResult r = z2diag_check(i, ext);
        CHECK(r.passed);
        CHECK(r.max_residual < 1e-9);
        const Z2DiagMatrices z = z2diag_matrices(i, ext);
        const Eigen::MatrixXcd lhs = z.m.cast<Scalar>() * z.s_l;
        const Eigen::MatrixXcd rhs = z.d_diag.asDiagonal() * (z.m.cast<Scalar>() * z.s);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-9);
        // star_e ordering: alpha_p, beta_p pairs, then lambda+-
        for (int p = 0; p < 2; ++p) {
            const Scalar alpha = z.d_diag(2 * p), beta = z.d_diag(2 * p + 1);
            CHECK(std::abs(alpha + beta) < 1e-12);
            CHECK(std::abs(beta) > 1e-6);
            const Scalar c = ext.s_pair(L(X(i)), AL(2 * p)) / ext.s_pair(L(X(0)), L(X(2 * p)));
            CHECK(std::abs(beta - c) < 1e-12);
        }
        CHECK(std::abs(z.d_diag(4)) < 1e-15);
        CHECK(std::abs(z.d_diag(5)) < 1e-15);
    }
    for (int m : {4, 6}) {
        const ExtModularData e = build_extended(m);
        for (int i = 1; i < 2 * m; i += 2)
            CHECK(z2diag_check(i, e).passed);
    }
}

TEST_CASE("two-sums identity") {
    const ExtModularData ext = build_extended(2);
    const TwoSums a = twosums(2, 3, 3, ext);
    REQUIRE(a.lhs.size() == 1);
    CHECK(a.lhs[0].real() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(a.rhs == doctest::Approx(2.0).epsilon(1e-12));
    const TwoSums b = twosums(2, 3, 4, ext);
    REQUIRE(b.lhs.size() == 2);
    CHECK(b.residual() < 1e-9);
    CHECK(std::abs(b.lhs[0] - b.lhs[1]) < 1e-12);
    for (int m : {2, 4, 6}) {
        const ExtModularData e = build_extended(m);
        for (int i = 0; i <= 2 * m; i += 2)
            for (int j = 0; j <= 2 * m; ++j)
                for (int k = 0; k <= 2 * m; ++k)
                    CHECK(twosums_check(i, j, k, e).passed);
    }
}

TEST_CASE("fold lemmas") {
    const ModularDataD d(10);
    CHECK(std::abs(d.s(1, 1) + d.s(7, 1)) < 1e-15);
    CHECK(std::abs(d.s(3, 2) - d.s(5, 2)) < 1e-15);
    CHECK(std::abs(d.s(4, 1)) < 1e-15);
    for (int kappa : {10, 18, 26}) {
        const VerificationReport r = fold_lemma_checks(ModularDataD(kappa));
        CHECK(r.checks.size() == 3);
        CHECK(r.passed());
    }
}

TEST_CASE("verify_all") {
    for (int m : {2, 4, 6}) {
        const VerificationReport r = verify_all(m);
        CHECK(r.passed());
        CHECK(r.tolerance == 1e-9);
        for (std::size_t n = 1; n < r.checks.size(); ++n) {
            const auto &x = r.checks[n - 1], &y = r.checks[n];
            CHECK(std::tie(x.name, x.params) <= std::tie(y.name, y.params));
        }
    }
    const VerificationReport r1 = verify_all(2), r2 = verify_all(2);
    REQUIRE(r1.checks.size() == r2.checks.size());
    for (std::size_t n = 0; n < r1.checks.size(); ++n) {
        CHECK(r1.checks[n].name == r2.checks[n].name);
        CHECK(r1.checks[n].params == r2.checks[n].params);
        CHECK(r1.checks[n].max_residual == r2.checks[n].max_residual);
    }
    CHECK_FALSE(verify_all(3).passed());
    CHECK_FALSE(verify_all(2, Tolerance{1e-15}).passed());
}
