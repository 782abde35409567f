#include "pictau/exact.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>
#include "pictau/errors.hpp"

namespace pictau {

// ---------------------------------------------------------------------------
// Scalars
// ---------------------------------------------------------------------------

Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

Integer floor_div(const Integer& a, const Integer& b)
{
    Integer q = a / b;
    Integer r = a - q * b;
    if (r != 0 && ((r < 0) != (b < 0)))
        q -= 1;
    return q;
}

Integer floor(const Rational& q) { return floor_div(numerator(q), denominator(q)); }

Integer ceil(const Rational& q) { return -floor(-q); }

Rational frac(const Rational& q) { return q - Rational(floor(q)); }

Integer gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }

Integer lcm(const Integer& a, const Integer& b)
{
    if (a == 0 || b == 0)
        return 0;
    return boost::multiprecision::abs(a / gcd(a, b) * b);
}

namespace {

bool is_decimal_integer(const std::string& s)
{
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (start == s.size())
        return false;
    return std::all_of(s.begin() + start, s.end(), [](unsigned char c) { return std::isdigit(c); });
}

Integer parse_integer(std::string s)
{
    if (!s.empty() && s[0] == '+')
        s.erase(0, 1);
    return Integer(s);
}

}   // namespace

Rational parse_rational(const std::string& text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s.push_back(c);
    auto slash = s.find('/');
    if (slash == std::string::npos)
    {
        if (!is_decimal_integer(s))
            throw ParseError("not a rational number: '" + text + "'");
        return Rational(parse_integer(s));
    }
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (!is_decimal_integer(num) || !is_decimal_integer(den) || den[0] == '-' || den[0] == '+')
        throw ParseError("not a rational number: '" + text + "'");
    Integer d = parse_integer(den);
    if (d == 0)
        throw ParseError("zero denominator in '" + text + "'");
    return Rational(parse_integer(num), d);
}

std::string to_string(const Integer& z) { return z.str(); }

std::string to_string(const Rational& q)
{
    if (denominator(q) == 1)
        return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

QVector to_rational(const ZVector& v)
{
    QVector out;
    out.reserve(v.size());
    for (const Integer& x : v)
        out.emplace_back(x);
    return out;
}

Integer common_denominator(const QVector& v)
{
    Integer d = 1;
    for (const Rational& x : v)
        d = lcm(d, denominator(x));
    return d;
}

bool is_integral(const QVector& v)
{
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return denominator(x) == 1; });
}

ZVector to_integer(const QVector& v)
{
    ZVector out;
    out.reserve(v.size());
    for (const Rational& x : v)
    {
        if (denominator(x) != 1)
            throw InternalError("to_integer: non-integral entry " + to_string(x));
        out.push_back(numerator(x));
    }
    return out;
}

Rational dot(const QVector& a, const QVector& b)
{
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0)
            s += a[i] * b[i];
    return s;
}

// ---------------------------------------------------------------------------
// Matrices
// ---------------------------------------------------------------------------

QMatrix to_rational(const ZMatrix& m)
{
    QMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(i, j) = Rational(m(i, j));
    return out;
}

ZMatrix clear_row_denominators(const QMatrix& m)
{
    ZMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
    {
        Integer d = common_denominator(m.row(i));
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(i, j) = numerator(m(i, j) * d);
    }
    return out;
}

Integer determinant(const ZMatrix& m)
{
    if (m.rows() != m.cols())
        throw SemanticError("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0)
        return 1;
    ZMatrix a = m;
    Integer sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k)
    {
        if (a(k, k) == 0)
        {
            std::size_t swap = k + 1;
            while (swap < n && a(swap, k) == 0)
                ++swap;
            if (swap == n)
                return 0;
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a(k, j), a(swap, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

namespace {

/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> row_reduce(QMatrix& a)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c)
    {
        std::size_t p = r;
        while (p < a.rows() && a(p, c) == 0)
            ++p;
        if (p == a.rows())
            continue;
        if (p != r)
            for (std::size_t j = 0; j < a.cols(); ++j)
                std::swap(a(p, j), a(r, j));
        Rational inv = 1 / a(r, c);
        for (std::size_t j = c; j < a.cols(); ++j)
            a(r, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i)
        {
            if (i == r || a(i, c) == 0)
                continue;
            Rational f = a(i, c);
            for (std::size_t j = c; j < a.cols(); ++j)
                a(i, j) -= f * a(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

/// (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0.
std::tuple<Integer, Integer, Integer> extended_gcd(const Integer& a, const Integer& b)
{
    Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0)
    {
        Integer q = old_r / r;
        Integer tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0)
        return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

/// Unimodular 2x2 step sending (a, b) to (gcd, 0). When a already divides b
/// the pivot row is left alone, so cleared entries are never refilled.
std::tuple<Integer, Integer, Integer, Integer> pivot_step(const Integer& a, const Integer& b)
{
    if (b % a == 0)
        return {1, 0, -(b / a), 1};
    auto [g, s, t] = extended_gcd(a, b);
    return {s, t, -b / g, a / g};
}

template <typename M>
void row_combine(M& m, std::size_t i, std::size_t k, const Integer& s, const Integer& t,
                 const Integer& x, const Integer& y)
{
    // (row_i, row_k) <- (s row_i + t row_k, x row_i + y row_k)
    for (std::size_t j = 0; j < m.cols(); ++j)
    {
        Integer a = m(i, j), b = m(k, j);
        m(i, j) = s * a + t * b;
        m(k, j) = x * a + y * b;
    }
}

template <typename M>
void col_combine(M& m, std::size_t i, std::size_t k, const Integer& s, const Integer& t,
                 const Integer& x, const Integer& y)
{
    for (std::size_t r = 0; r < m.rows(); ++r)
    {
        Integer a = m(r, i), b = m(r, k);
        m(r, i) = s * a + t * b;
        m(r, k) = x * a + y * b;
    }
}

}   // namespace

std::size_t rank(const QMatrix& m)
{
    QMatrix a = m;
    return row_reduce(a).size();
}

// ---------------------------------------------------------------------------
// Normal forms
// ---------------------------------------------------------------------------

HermiteForm hnf(const ZMatrix& m)
{
    ZMatrix h = m;
    ZMatrix u = ZMatrix::identity(m.rows());
    std::size_t r = 0;
    for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c)
    {
        for (std::size_t i = r + 1; i < h.rows(); ++i)
        {
            if (h(i, c) == 0)
                continue;
            Integer a = h(r, c), b = h(i, c);
            auto [g, s, t] = extended_gcd(a, b);
            Integer x = -b / g, y = a / g;
            row_combine(h, r, i, s, t, x, y);
            row_combine(u, r, i, s, t, x, y);
        }
        if (h(r, c) == 0)
            continue;
        if (h(r, c) < 0)
        {
            for (std::size_t j = 0; j < h.cols(); ++j)
                h(r, j) = -h(r, j);
            for (std::size_t j = 0; j < u.cols(); ++j)
                u(r, j) = -u(r, j);
        }
        for (std::size_t i = 0; i < r; ++i)
        {
            Integer q = floor_div(h(i, c), h(r, c));
            if (q == 0)
                continue;
            for (std::size_t j = 0; j < h.cols(); ++j)
                h(i, j) -= q * h(r, j);
            for (std::size_t j = 0; j < u.cols(); ++j)
                u(i, j) -= q * u(r, j);
        }
        ++r;
    }
    return {std::move(h), std::move(u)};
}

SmithForm snf(const ZMatrix& m)
{
    ZMatrix d = m;
    ZMatrix u = ZMatrix::identity(m.rows());
    ZMatrix v = ZMatrix::identity(m.cols());
    const std::size_t rows = d.rows(), cols = d.cols();

    for (std::size_t t = 0; t < std::min(rows, cols); ++t)
    {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        std::size_t pi = rows, pj = cols;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (d(i, j) != 0 && (pi == rows || abs(d(i, j)) < abs(d(pi, pj))))
                {
                    pi = i;
                    pj = j;
                }
        if (pi == rows)
            break;
        if (pi != t)
        {
            row_combine(d, t, pi, 0, 1, 1, 0);
            row_combine(u, t, pi, 0, 1, 1, 0);
        }
        if (pj != t)
        {
            col_combine(d, t, pj, 0, 1, 1, 0);
            col_combine(v, t, pj, 0, 1, 1, 0);
        }

        for (;;)
        {
            bool changed = false;
            for (std::size_t i = t + 1; i < rows; ++i)
            {
                if (d(i, t) == 0)
                    continue;
                auto [s, w, x, y] = pivot_step(d(t, t), d(i, t));
                row_combine(d, t, i, s, w, x, y);
                row_combine(u, t, i, s, w, x, y);
                changed = true;
            }
            for (std::size_t j = t + 1; j < cols; ++j)
            {
                if (d(t, j) == 0)
                    continue;
                auto [s, w, x, y] = pivot_step(d(t, t), d(t, j));
                col_combine(d, t, j, s, w, x, y);
                col_combine(v, t, j, s, w, x, y);
                changed = true;
            }
            if (changed)
                continue;
            // Row and column clear; enforce divisibility of the trailing block.
            bool fixed = false;
            for (std::size_t i = t + 1; i < rows && !fixed; ++i)
                for (std::size_t j = t + 1; j < cols && !fixed; ++j)
                    if (d(i, j) % d(t, t) != 0)
                    {
                        row_combine(d, t, i, 1, 1, 0, 1);
                        row_combine(u, t, i, 1, 1, 0, 1);
                        fixed = true;
                    }
            if (!fixed)
                break;
        }
        if (d(t, t) < 0)
        {
            for (std::size_t j = 0; j < cols; ++j)
                d(t, j) = -d(t, j);
            for (std::size_t j = 0; j < u.cols(); ++j)
                u(t, j) = -u(t, j);
        }
    }
    return {std::move(d), std::move(u), std::move(v)};
}

ZVector invariant_factors(const ZMatrix& m)
{
    SmithForm s = snf(m);
    ZVector out;
    for (std::size_t i = 0; i < std::min(s.d.rows(), s.d.cols()); ++i)
        if (s.d(i, i) != 0)
            out.push_back(s.d(i, i));
    return out;
}

// ---------------------------------------------------------------------------
// Lattices
// ---------------------------------------------------------------------------

Lattice::Lattice(std::size_t ambient_dim, const std::vector<ZVector>& generators)
    : ambient_dim_(ambient_dim)
{
    for (const ZVector& g : generators)
        if (g.size() != ambient_dim)
            throw SemanticError("lattice generator has wrong dimension");
    ZMatrix h = hnf(ZMatrix::from_rows(generators, ambient_dim)).h;
    auto zero_row = [&](std::size_t i) {
        for (std::size_t j = 0; j < ambient_dim; ++j)
            if (h(i, j) != 0)
                return false;
        return true;
    };
    std::size_t r = 0;
    while (r < h.rows() && !zero_row(r))
        ++r;
    basis_ = ZMatrix(r, ambient_dim);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < ambient_dim; ++j)
            basis_(i, j) = h(i, j);
}

Lattice Lattice::full(std::size_t n)
{
    std::vector<ZVector> gens(n, ZVector(n));
    for (std::size_t i = 0; i < n; ++i)
        gens[i][i] = 1;
    return Lattice(n, gens);
}

Lattice Lattice::zero(std::size_t n) { return Lattice(n, {}); }

bool Lattice::is_full_standard() const { return basis_ == ZMatrix::identity(ambient_dim_); }

bool Lattice::contains(const ZVector& v) const
{
    if (v.size() != ambient_dim_)
        return false;
    ZVector rest = v;
    for (std::size_t i = 0; i < basis_.rows(); ++i)
    {
        std::size_t p = 0;
        while (basis_(i, p) == 0)
            ++p;
        if (rest[p] % basis_(i, p) != 0)
            return false;
        Integer q = rest[p] / basis_(i, p);
        if (q == 0)
            continue;
        for (std::size_t j = p; j < ambient_dim_; ++j)
            rest[j] -= q * basis_(i, j);
    }
    return std::all_of(rest.begin(), rest.end(), [](const Integer& x) { return x == 0; });
}

bool Lattice::spans(const QVector& v) const
{
    if (v.size() != ambient_dim_)
        return false;
    return solve_affine(to_rational(basis_).transpose(), v).has_value();
}

Lattice kernel_lattice(const QMatrix& m)
{
    const std::size_t n = m.cols();
    ZMatrix a = clear_row_denominators(m);
    HermiteForm f = hnf(a.transpose());   // u * a^T = h, u is n x n
    std::vector<ZVector> gens;
    for (std::size_t i = 0; i < n; ++i)
    {
        bool zero = true;
        for (std::size_t j = 0; j < f.h.cols(); ++j)
            if (f.h(i, j) != 0)
            {
                zero = false;
                break;
            }
        if (zero)
            gens.push_back(f.u.row(i));
    }
    return Lattice(n, gens);
}

Lattice lattice_intersect_subspace(const Lattice& l, const QMatrix& equations)
{
    if (equations.rows() > 0 && equations.cols() != l.ambient_dim())
        throw SemanticError("subspace equations have wrong dimension");
    if (l.rank() == 0 || equations.rows() == 0)
        return l;
    QMatrix b = to_rational(l.basis());              // rank x n
    QMatrix c = equations * b.transpose();           // k x rank
    Lattice coeffs = kernel_lattice(c);
    ZMatrix gens = coeffs.basis() * l.basis();        // kernel_rank x n
    std::vector<ZVector> rows;
    for (std::size_t i = 0; i < gens.rows(); ++i)
        rows.push_back(gens.row(i));
    return Lattice(l.ambient_dim(), rows);
}

std::optional<QVector> solve_affine(const QMatrix& a, const QVector& b)
{
    if (b.size() != a.rows())
        throw SemanticError("solve_affine: dimension mismatch");
    QMatrix aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i)
    {
        for (std::size_t j = 0; j < a.cols(); ++j)
            aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    std::vector<std::size_t> pivots = row_reduce(aug);
    if (!pivots.empty() && pivots.back() == a.cols())
        return std::nullopt;
    QVector x(a.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r)
        x[pivots[r]] = aug(r, a.cols());
    return x;
}

std::optional<QVector> solve_unique(const QMatrix& a, const QVector& b)
{
    if (b.size() != a.rows())
        throw SemanticError("solve_unique: dimension mismatch");
    QMatrix aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i)
    {
        for (std::size_t j = 0; j < a.cols(); ++j)
            aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    std::vector<std::size_t> pivots = row_reduce(aug);
    if (!pivots.empty() && pivots.back() == a.cols())
        return std::nullopt;
    if (pivots.size() != a.cols())
        return std::nullopt;
    QVector x(a.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r)
        x[pivots[r]] = aug(r, a.cols());
    return x;
}

std::optional<ZVector> solve_integer(const QMatrix& a, const QVector& b)
{
    if (b.size() != a.rows())
        throw SemanticError("solve_integer: dimension mismatch");
    const std::size_t rows = a.rows(), cols = a.cols();
    ZMatrix ai(rows, cols);
    ZVector bi(rows);
    for (std::size_t i = 0; i < rows; ++i)
    {
        QVector row = a.row(i);
        row.push_back(b[i]);
        Integer d = common_denominator(row);
        for (std::size_t j = 0; j < cols; ++j)
            ai(i, j) = numerator(a(i, j) * d);
        bi[i] = numerator(b[i] * d);
    }
    SmithForm s = snf(ai);
    ZVector c = s.u * bi;
    ZVector y(cols);
    for (std::size_t i = 0; i < rows; ++i)
    {
        Integer di = (i < cols) ? s.d(i, i) : Integer(0);
        if (di == 0)
        {
            if (c[i] != 0)
                return std::nullopt;
            continue;
        }
        if (c[i] % di != 0)
            return std::nullopt;
        y[i] = c[i] / di;
    }
    return s.v * y;
}

}   // namespace pictau
