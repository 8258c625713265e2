#include "equifuse/ring.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace equifuse {

std::string to_string(const CLabel &x) {
    switch (x.kind) {
    case CLabel::Kind::plus: return "X+";
    case CLabel::Kind::minus: return "X-";
    case CLabel::Kind::plain: break;
    }
    return "X" + std::to_string(x.index);
}

CLabel parse_clabel(const std::string &text, int m) {
    std::string t = text;
    if (!t.empty() && (t[0] == 'X' || t[0] == 'x'))
        t.erase(0, 1);
    if (t == "+")
        return CLabel::plus();
    if (t == "-")
        return CLabel::minus();
    if (t.empty() || !std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); }))
        throw Error(ErrorKind::invalid_parameter, "cannot parse label '" + text + "'");
    const int i = std::stoi(t);
    if (i >= 2 * m)
        throw Error(ErrorKind::invalid_parameter,
                    "label '" + text + "' outside X0..X" + std::to_string(2 * m - 1));
    return CLabel::plain(i);
}

namespace {

using Row = std::vector<long long>;

// Multiplicity vectors over the label order X_0..X_{2m-1}, X+, X-.
struct Builder {
    int m;
    std::size_t n;
    std::size_t plus_pos, minus_pos;

    explicit Builder(int m_) : m(m_), n(2 * m_ + 2), plus_pos(2 * m_), minus_pos(2 * m_ + 1) {}

    Row unit(std::size_t pos) const {
        Row r(n, 0);
        r[pos] = 1;
        return r;
    }

    // X_1 (x) y, straight from the generating table.
    Row x1_times(std::size_t y) const {
        Row r(n, 0);
        const auto top = static_cast<std::size_t>(2 * m - 1);
        if (y == plus_pos || y == minus_pos) {
            r[top] = 1;
        } else if (y == 0) {
            r[1] = 1;
        } else if (y < top) {
            r[y - 1] = 1;
            r[y + 1] = 1;
        } else {
            r[top - 1] = 1;
            r[plus_pos] = 1;
            r[minus_pos] = 1;
        }
        return r;
    }

    // X+ (x) X+ = X_0 + X_4 + .. + X_{2m-4} + X+ ; X+ (x) X- = X_2 + X_6 + .. + X_{2m-2}.
    Row exceptional(std::size_t x, std::size_t y) const {
        Row r(n, 0);
        if (x == y) {
            for (int i = 0; i <= 2 * m - 4; i += 4)
                r[static_cast<std::size_t>(i)] = 1;
            r[x] = 1;
        } else {
            for (int i = 2; i <= 2 * m - 2; i += 4)
                r[static_cast<std::size_t>(i)] = 1;
        }
        return r;
    }
};

void fail_negative(int i, std::size_t y, std::size_t z) {
    std::ostringstream os;
    os << "negative multiplicity while deriving X" << i << " (x) label#" << y << " at label#" << z;
    throw Error(ErrorKind::inconsistency, os.str());
}

} // namespace

TypeDRing build_ring(int m) {
    if (m < 2 || m % 2 != 0)
        throw Error(ErrorKind::unsupported_case,
                    "only even m >= 2 (8 | delta) is supported, got m=" + std::to_string(m));

    const Builder b(m);
    const std::size_t n = b.n;
    const int top = 2 * m - 1;

    // rows[i][y] = X_i (x) y for plain i, filled by increasing i.
    std::vector<std::vector<Row>> rows(static_cast<std::size_t>(2 * m), std::vector<Row>(n));
    for (std::size_t y = 0; y < n; ++y) {
        rows[0][y] = b.unit(y);
        rows[1][y] = b.x1_times(y);
    }
    for (int i = 2; i <= top; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        for (std::size_t y = 0; y < n; ++y) {
            Row acc(n, 0);
            const Row &prev = rows[ui - 1][y];
            for (std::size_t z = 0; z < n; ++z) {
                if (prev[z] == 0)
                    continue;
                const Row x1z = b.x1_times(z);
                for (std::size_t w = 0; w < n; ++w)
                    acc[w] += prev[z] * x1z[w];
            }
            const Row &prev2 = rows[ui - 2][y];
            for (std::size_t w = 0; w < n; ++w) {
                acc[w] -= prev2[w];
                if (acc[w] < 0)
                    fail_negative(i, y, w);
            }
            rows[ui][y] = std::move(acc);
        }
    }

    TypeDRing ring;
    ring.m_ = m;
    for (int i = 0; i <= top; ++i)
        ring.labels_.push_back(CLabel::plain(i));
    ring.labels_.push_back(CLabel::plus());
    ring.labels_.push_back(CLabel::minus());

    ring.l_.assign(n * n * n, 0);
    auto put = [&](std::size_t x, std::size_t y, const Row &r) {
        for (std::size_t z = 0; z < n; ++z)
            ring.l_[(x * n + y) * n + z] = static_cast<int>(r[z]);
    };
    for (std::size_t x = 0; x <= static_cast<std::size_t>(top); ++x)
        for (std::size_t y = 0; y < n; ++y)
            put(x, y, rows[x][y]);
    for (std::size_t ex : {b.plus_pos, b.minus_pos}) {
        for (std::size_t y = 0; y <= static_cast<std::size_t>(top); ++y)
            put(ex, y, rows[y][ex]);
        for (std::size_t ey : {b.plus_pos, b.minus_pos})
            put(ex, ey, b.exceptional(ex, ey));
    }

    const int kappa = ring.kappa();
    for (const auto &x : ring.labels_)
        ring.dims_.push_back(x.is_plain() ? quantum_integer(x.index + 1, kappa)
                                          : quantum_integer(2 * m + 1, kappa) / 2.0);
    return ring;
}

std::size_t TypeDRing::position(const CLabel &x) const {
    switch (x.kind) {
    case CLabel::Kind::plus: return static_cast<std::size_t>(2 * m_);
    case CLabel::Kind::minus: return static_cast<std::size_t>(2 * m_ + 1);
    case CLabel::Kind::plain: break;
    }
    if (x.index < 0 || x.index >= 2 * m_)
        throw Error(ErrorKind::invalid_parameter, "label " + to_string(x) + " not in ring");
    return static_cast<std::size_t>(x.index);
}

int TypeDRing::coeff(const CLabel &x, const CLabel &y, const CLabel &z) const {
    return coeff(position(x), position(y), position(z));
}

std::vector<int> TypeDRing::product(const CLabel &x, const CLabel &y) const {
    const std::size_t px = position(x), py = position(y);
    std::vector<int> r(size());
    for (std::size_t z = 0; z < size(); ++z)
        r[z] = coeff(px, py, z);
    return r;
}

double TypeDRing::dim(const CLabel &x) const { return dims_[position(x)]; }

CLabel TypeDRing::act(const CLabel &x) const {
    position(x);
    switch (x.kind) {
    case CLabel::Kind::plus: return CLabel::minus();
    case CLabel::Kind::minus: return CLabel::plus();
    case CLabel::Kind::plain: break;
    }
    return x;
}

int ring_coeff_L(const CLabel &x, const CLabel &y, const CLabel &z, const TypeDRing &ring) {
    return ring.coeff(x, y, z);
}

double c_qdim(const CLabel &x, const TypeDRing &ring) { return ring.dim(x); }

CLabel group_action(const CLabel &x, const TypeDRing &ring) { return ring.act(x); }

bool CoefrelatReport::passed() const {
    return std::all_of(entries.begin(), entries.end(), [](const auto &e) { return e.passed; });
}

CoefrelatReport coefrelat_check(const TypeDRing &ring, const ModularDataD &d_data,
                                bool throw_on_failure) {
    const int m = ring.m();
    if (d_data.delta() != ring.delta())
        throw Error(ErrorKind::invalid_parameter, "coefrelat_check: delta mismatch");
    const int delta = ring.delta();
    const std::size_t n = ring.size();
    const std::size_t pp = ring.position(CLabel::plus()), pm = ring.position(CLabel::minus());

    // lambda_i over I°, as a combination of labels
    auto element = [&](int i) {
        std::vector<long long> v(n, 0);
        if (i == 2 * m) {
            v[pp] = 1;
            v[pm] = 1;
        } else {
            v[static_cast<std::size_t>(i)] = 1;
        }
        return v;
    };

    CoefrelatReport report;
    for (int i = 0; i <= 2 * m; ++i) {
        for (int j = 0; j <= 2 * m; ++j) {
            const auto vi = element(i), vj = element(j);
            std::vector<long long> prod(n, 0);
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t y = 0; y < n; ++y)
                    if (vi[x] != 0 && vj[y] != 0)
                        for (std::size_t z = 0; z < n; ++z)
                            prod[z] += vi[x] * vj[y] * ring.coeff(x, y, z);
            for (int k = 0; k <= 2 * m; ++k) {
                CoefrelatEntry e{i, j, k, 0, 0, true};
                if (k == 2 * m) {
                    // only a multiple of X+ + X- is expressible in I°
                    e.l_value = prod[pp] == prod[pm] ? prod[pp] : -1;
                    e.n_value = d_data.n(i, j, 2 * m);
                } else {
                    e.l_value = prod[static_cast<std::size_t>(k)];
                    e.n_value = d_data.n(i, j, k) + d_data.n(i, j, delta - k);
                }
                e.passed = e.l_value == e.n_value;
                if (!e.passed && throw_on_failure) {
                    std::ostringstream os;
                    os << "coefficient relation fails at (i,j,k)=(" << i << "," << j << "," << k
                       << "): L=" << e.l_value << " vs N=" << e.n_value;
                    throw Error(ErrorKind::check_failure, os.str());
                }
                report.entries.push_back(e);
            }
        }
    }
    return report;
}

} // namespace equifuse
