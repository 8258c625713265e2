#pragma once

// Fusion ring of C = rep A, A = V_0 + V_delta in rep U_q(sl2), delta = 4m with m even.
//
// Simple objects: X_0 .. X_{2m-1} and the exceptional pair X+, X-. X_i sits in the
// trivial sector iff i is even; X+ and X- are in the trivial sector. The nontrivial
// element of Z2 fixes every X_i and swaps X+ with X-.

#include <compare>
#include <string>
#include <vector>

#include "equifuse/arith.hpp"
#include "equifuse/verlinde_d.hpp"

namespace equifuse {

enum class Z2 { e, a };

inline Z2 operator*(Z2 x, Z2 y) { return x == y ? Z2::e : Z2::a; }

struct CLabel {
    enum class Kind { plain, plus, minus };

    Kind kind = Kind::plain;
    int index = 0; // only meaningful for plain labels

    static CLabel plain(int i) { return CLabel{Kind::plain, i}; }
    static CLabel plus() { return CLabel{Kind::plus, 0}; }
    static CLabel minus() { return CLabel{Kind::minus, 0}; }

    bool is_plain() const noexcept { return kind == Kind::plain; }
    bool is_exceptional() const noexcept { return kind != Kind::plain; }
    Z2 sector() const noexcept {
        return (kind == Kind::plain && index % 2 != 0) ? Z2::a : Z2::e;
    }

    auto operator<=>(const CLabel &) const = default;
};

/// "X3", "X+", "X-".
std::string to_string(const CLabel &x);
/// Accepts "X3", "3", "X+", "+", "X-", "-".
CLabel parse_clabel(const std::string &text, int m);

class TypeDRing {
  public:
    int m() const noexcept { return m_; }
    int delta() const noexcept { return 4 * m_; }
    int kappa() const noexcept { return 4 * m_ + 2; }
    std::size_t size() const noexcept { return labels_.size(); }

    /// X_0, .., X_{2m-1}, X+, X-.
    const std::vector<CLabel> &labels() const noexcept { return labels_; }
    std::size_t position(const CLabel &x) const;

    int coeff(const CLabel &x, const CLabel &y, const CLabel &z) const;
    int coeff(std::size_t x, std::size_t y, std::size_t z) const {
        return l_[(x * size() + y) * size() + z];
    }
    /// Row x (x) y as multiplicities over labels().
    std::vector<int> product(const CLabel &x, const CLabel &y) const;

    double dim(const CLabel &x) const;
    CLabel act(const CLabel &x) const;

    friend TypeDRing build_ring(int m);

  private:
    int m_ = 0;
    std::vector<CLabel> labels_;
    std::vector<int> l_;
    std::vector<double> dims_;
};

/// Seeds the generating products and derives the remaining ones through
/// X_i = X_1 (x) X_{i-1} - X_{i-2}. Throws unsupported_case for odd m or m < 2,
/// inconsistency when a derived multiplicity goes negative.
TypeDRing build_ring(int m);

int ring_coeff_L(const CLabel &x, const CLabel &y, const CLabel &z, const TypeDRing &ring);
double c_qdim(const CLabel &x, const TypeDRing &ring);
CLabel group_action(const CLabel &x, const TypeDRing &ring);

/// One triple (i, j, k) over I° = {0..2m}, index 2m standing for X+ + X-.
struct CoefrelatEntry {
    int i, j, k;
    long long l_value;   // coefficient of lambda_k in lambda_i (x) lambda_j
    long long n_value;   // N^k + N^{delta-k}, or N^{2m} when k = 2m
    bool passed;
};

struct CoefrelatReport {
    std::vector<CoefrelatEntry> entries;
    bool passed() const;
};

/// Compares the ring against the folded D-side coefficients on every triple of I°.
/// With throw_on_failure, the first mismatch raises check_failure naming the triple.
CoefrelatReport coefrelat_check(const TypeDRing &ring, const ModularDataD &d_data,
                                bool throw_on_failure = false);

} // namespace equifuse
