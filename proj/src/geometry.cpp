#include "pictau/geometry.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include "pictau/errors.hpp"

namespace pictau {

namespace {

QVector cross(const QVector& u, const QVector& v)
{
    return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

bool is_zero(const QVector& v)
{
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

// Exponent triples (a, b, c) with a + b + c = d, in a fixed order.
std::vector<std::array<int, 3>> monomials(int d)
{
    std::vector<std::array<int, 3>> out;
    for (int a = d; a >= 0; --a)
        for (int b = d - a; b >= 0; --b)
            out.push_back({a, b, d - a - b});
    return out;
}

Rational falling(int n, int k)
{
    Rational r = 1;
    for (int i = 0; i < k; ++i)
        r *= n - i;
    return r;
}

Rational power(const Rational& x, int k)
{
    Rational r = 1;
    for (int i = 0; i < k; ++i)
        r *= x;
    return r;
}

}   // namespace

QVector normalize_projective(QVector p)
{
    auto lead = std::find_if(p.begin(), p.end(), [](const Rational& x) { return x != 0; });
    if (lead == p.end())
        throw SemanticError("the zero vector is not a projective point");
    const Rational s = *lead;
    for (Rational& x : p)
        x /= s;
    return p;
}

LineArrangement::LineArrangement(std::vector<QVector> lines)
{
    if (lines.empty())
        throw SemanticError("a line arrangement needs at least one line");
    for (QVector& l : lines)
    {
        if (l.size() != 3)
            throw SemanticError("a line needs three coefficients");
        if (is_zero(l))
            throw SemanticError("the zero form does not define a line");
        l = normalize_projective(std::move(l));
    }
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j)
            if (lines[i] == lines[j])
                throw SemanticError("lines " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
    lines_ = std::move(lines);
}

DivisorSetPtr LineArrangement::divisors() const
{
    return std::make_shared<const DivisorSet>(VarietyModel::p2(), std::vector<ZVector>(size(), ZVector{Integer(1)}));
}

std::vector<SingularPoint> singular_points(const LineArrangement& a)
{
    std::map<QVector, std::set<std::size_t>> hits;
    const auto& ls = a.lines();
    for (std::size_t i = 0; i < ls.size(); ++i)
        for (std::size_t j = i + 1; j < ls.size(); ++j)
        {
            std::set<std::size_t>& through = hits[normalize_projective(cross(ls[i], ls[j]))];
            through.insert(i);
            through.insert(j);
        }
    std::vector<SingularPoint> out;
    for (auto& [p, through] : hits)
        out.push_back({p, {through.begin(), through.end()}});
    return out;
}

BlowupSurface::BlowupSurface(std::vector<QVector> points)
{
    for (QVector& p : points)
    {
        if (p.size() != 3)
            throw SemanticError("a point of P² needs three coordinates");
        p = normalize_projective(std::move(p));
    }
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (points[i] == points[j])
                throw SemanticError("blow-up centres must be distinct (infinitely near points are not supported)");
    points_ = std::move(points);
}

Integer BlowupSurface::intersect(const ZVector& a, const ZVector& b) const
{
    if (a.size() != ns_rank() || b.size() != ns_rank())
        throw SemanticError("class has the wrong NS rank for this surface");
    Integer s = a[0] * b[0];
    for (std::size_t k = 1; k < a.size(); ++k)
        s -= a[k] * b[k];
    return s;
}

SurfaceResolution build_log_resolution(const LineArrangement& a)
{
    std::vector<SingularPoint> centers;
    for (SingularPoint& p : singular_points(a))
        if (p.multiplicity() >= 3)
            centers.push_back(std::move(p));
    const std::size_t n = a.size(), r = centers.size();

    std::vector<QVector> pts;
    for (const SingularPoint& p : centers)
        pts.push_back(p.point);
    BlowupSurface surface(pts);

    ZMatrix e(n, n + r);
    std::vector<ZVector> target(n + r, ZVector(r + 1));
    for (std::size_t i = 0; i < n; ++i)
    {
        e(i, i) = 1;
        target[i][0] = 1;
    }
    for (std::size_t k = 0; k < r; ++k)
    {
        target[n + k][k + 1] = 1;
        for (std::size_t i : centers[k].lines)
        {
            e(i, n + k) = 1;
            target[i][k + 1] = -1;
        }
    }
    ZMatrix pullback(r + 1, 1);
    pullback(0, 0) = 1;

    ResolutionData data{a.divisors(), std::make_shared<const DivisorSet>(surface.model(), std::move(target)),
                        std::move(e), std::move(pullback)};
    data.validate();
    return {std::move(surface), std::move(centers), std::move(data)};
}

Integer h0_blowup(const BlowupSurface& s, const ZVector& cls)
{
    if (cls.size() != s.ns_rank())
        throw SemanticError("class has the wrong NS rank for this surface");
    if (cls[0] < 0)
        return 0;
    const int d = cls[0].convert_to<int>();
    const auto mons = monomials(d);

    // One row per partial derivative ∂^β with |β| = order, evaluated at p_k.
    // A nonzero form of degree d has multiplicity at most d anywhere, so
    // multiplicity m > d is imposed as vanishing of all order-d derivatives.
    std::vector<QVector> rows;
    for (std::size_t k = 0; k < s.points().size(); ++k)
    {
        const Integer m = cls[k + 1] < 0 ? Integer(-cls[k + 1]) : Integer(0);
        if (m == 0)
            continue;
        const int order = m - 1 < d ? Integer(m - 1).convert_to<int>() : d;
        const QVector& p = s.points()[k];
        for (const auto& beta : monomials(order))
        {
            QVector row;
            for (const auto& mon : mons)
            {
                Rational v = 1;
                for (int c = 0; c < 3 && v != 0; ++c)
                {
                    if (mon[c] < beta[c])
                        v = 0;
                    else
                        v *= falling(mon[c], beta[c]) * power(p[c], mon[c] - beta[c]);
                }
                row.push_back(v);
            }
            rows.push_back(std::move(row));
        }
    }
    const Integer total = static_cast<long>(mons.size());
    if (rows.empty())
        return total;
    return total - static_cast<long>(rank(QMatrix::from_rows(rows, mons.size())));
}

Integer euler_char(const BlowupSurface& s, const ZVector& cls)
{
    ZVector l_minus_k = cls;
    const ZVector k = s.canonical();
    for (std::size_t i = 0; i < cls.size(); ++i)
        l_minus_k[i] -= k[i];
    return 1 + s.intersect(cls, l_minus_k) / 2;
}

Integer hq_blowup(const BlowupSurface& s, const ZVector& cls, int q)
{
    if (q < 0 || q > 2)
        return 0;
    if (q == 0)
        return h0_blowup(s, cls);
    ZVector dual = s.canonical();
    for (std::size_t i = 0; i < dual.size(); ++i)
        dual[i] -= cls[i];
    const Integer h2 = h0_blowup(s, dual);
    if (q == 2)
        return h2;
    const Integer h1 = h0_blowup(s, cls) + h2 - euler_char(s, cls);
    if (h1 < 0)
        throw InternalError("negative h¹: the fat-point model does not apply to this class");
    return h1;
}

CurveModel::CurveModel(std::vector<std::optional<Rational>> points)
{
    if (points.empty())
        throw SemanticError("a point configuration needs at least one point");
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (points[i] == points[j])
                throw SemanticError("points " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
    points_ = std::move(points);
}

DivisorSetPtr CurveModel::divisors() const
{
    return std::make_shared<const DivisorSet>(VarietyModel::p1(), std::vector<ZVector>(size(), ZVector{Integer(1)}));
}

Integer hq_curve(const Integer& degree, int q)
{
    if (q == 0)
        return degree + 1 > 0 ? Integer(degree + 1) : Integer(0);
    if (q == 1)
        return -1 - degree > 0 ? Integer(-1 - degree) : Integer(0);
    return 0;
}

}   // namespace pictau
