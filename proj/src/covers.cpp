#include "pictau/covers.hpp"

#include <deque>
#include <map>
#include "pictau/errors.hpp"

namespace pictau {

namespace {

// Orders realizations for lookup; the divisor set is shared within a subgroup.
struct RealizationLess
{
    bool operator()(const BoundaryRealization& a, const BoundaryRealization& b) const
    {
        if (a.alpha() != b.alpha())
            return a.alpha() < b.alpha();
        if (a.bundle() != b.bundle())
            return a.bundle() < b.bundle();
        return a.torsion() < b.torsion();
    }
};

ZVector inertia_orders(const CharacterSubgroup& g)
{
    ZVector m(g.divisors()->size(), Integer(1));
    for (const BoundaryRealization& x : g.elements())
        for (std::size_t i = 0; i < m.size(); ++i)
            m[i] = lcm(m[i], denominator(x.alpha()[i]));
    return m;
}

}   // namespace

CharacterSubgroup::CharacterSubgroup(DivisorSetPtr divisors, std::vector<BoundaryRealization> generators)
    : divisors_(std::move(divisors)), generators_(std::move(generators))
{
    for (const BoundaryRealization& x : generators_)
        if (!(*x.divisors() == *divisors_))
            throw SemanticError("generator lives over a different divisor set");

    // Breadth-first closure. Each element remembers the exponent vector it
    // was first reached by; revisiting yields a relation among generators.
    const std::size_t k = generators_.size();
    std::map<BoundaryRealization, std::size_t, RealizationLess> seen;
    std::vector<ZVector> coords;
    std::vector<ZVector> relations;
    elements_.push_back(BoundaryRealization::identity(divisors_));
    coords.emplace_back(k);
    seen.emplace(elements_.front(), 0);
    for (std::size_t head = 0; head < elements_.size(); ++head)
        for (std::size_t j = 0; j < k; ++j)
        {
            BoundaryRealization next = group_law(elements_[head], generators_[j]);
            ZVector c = coords[head];
            c[j] += 1;
            auto it = seen.find(next);
            if (it == seen.end())
            {
                seen.emplace(next, elements_.size());
                elements_.push_back(std::move(next));
                coords.push_back(std::move(c));
                continue;
            }
            for (std::size_t t = 0; t < k; ++t)
                c[t] -= coords[it->second][t];
            relations.push_back(std::move(c));
        }

    ZMatrix rel = relations.empty() ? ZMatrix(0, k) : ZMatrix::from_rows(relations, k);
    Integer product = 1;
    if (k > 0 && rel.rows() > 0)
        for (const Integer& f : pictau::invariant_factors(rel))
            if (f != 1)
            {
                invariant_factors_.push_back(f);
                product *= f;
            }
    if (product != Integer(static_cast<unsigned long>(elements_.size())))
        throw InternalError("subgroup order disagrees with its invariant factors");
}

std::size_t CharacterSubgroup::index_of(const BoundaryRealization& x) const
{
    for (std::size_t i = 0; i < elements_.size(); ++i)
        if (elements_[i] == x)
            return i;
    return elements_.size();
}

BuildingData building_data(const CharacterSubgroup& g)
{
    const std::vector<BoundaryRealization>& chars = g.elements();
    const std::size_t s = g.divisors()->size();
    BuildingData b;
    b.inertia = inertia_orders(g);
    for (const BoundaryRealization& x : chars)
    {
        ZVector iota(s);
        for (std::size_t i = 0; i < s; ++i)
            iota[i] = numerator(x.alpha()[i] * Rational(b.inertia[i]));
        b.indices.push_back(std::move(iota));
    }

    b.epsilon.assign(chars.size(), std::vector<ZVector>(chars.size(), ZVector(s)));
    for (std::size_t a = 0; a < chars.size(); ++a)
        for (std::size_t c = 0; c < chars.size(); ++c)
        {
            ZVector& eps = b.epsilon[a][c];
            for (std::size_t i = 0; i < s; ++i)
                eps[i] = b.indices[a][i] + b.indices[c][i] < b.inertia[i] ? 0 : 1;

            const BoundaryRealization prod = group_law(chars[a], chars[c]);
            const ZVector correction = g.divisors()->combination(eps);
            for (std::size_t k = 0; k < correction.size(); ++k)
                if (chars[a].bundle()[k] + chars[c].bundle()[k] != prod.bundle()[k] + correction[k])
                    throw InternalError("building data: linear relation fails for a character pair");
        }
    return b;
}

std::vector<ZVector> pushforward_decomposition(const CharacterSubgroup& g)
{
    std::vector<ZVector> out;
    for (const BoundaryRealization& x : g.elements())
    {
        ZVector c = x.bundle();
        for (Integer& v : c)
            v = -v;
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<ZVector> pushforward_decomposition(const CharacterSubgroup& g, const ResolutionData& r)
{
    std::vector<ZVector> out;
    for (const BoundaryRealization& x : g.elements())
    {
        const QVector e = r.e(x.alpha());
        ZVector fl(e.size());
        for (std::size_t j = 0; j < e.size(); ++j)
            fl[j] = floor(e[j]);
        ZVector c = r.pull_back(x.bundle());
        const ZVector shift = r.target->combination(fl);
        for (std::size_t k = 0; k < c.size(); ++k)
            c[k] = shift[k] - c[k];
        out.push_back(std::move(c));
    }
    return out;
}

Integer cover_hodge(const LogPair& pair, const CharacterSubgroup& g, int q)
{
    Integer total = 0;
    for (const BoundaryRealization& x : g.elements())
        total += pair.hq(x, pair.dimension() - q);
    return total;
}

Integer congruence_hodge(const LogPair& pair, int q, const Integer& n)
{
    Integer total = 0;
    for (const BoundaryRealization& x : torsion_points(pair.decomposition(), n))
        total += pair.hq(x, pair.dimension() - q);
    return total;
}

QuasiPolynomial congruence_hodge_qp(const LogPair& pair, const StrataTable& t, int q)
{
    const int dual = pair.dimension() - q;
    if (dual < 0 || dual > t.q_max)
        return QuasiPolynomial::zero();
    QuasiPolynomial f;
    for (int i = 1; i <= t.i_max(dual); ++i)
        f += stratum_torsion_qp(t, *pair.divisors(), dual, i);
    return f;
}

QuasiPolynomial congruence_hodge_qp(const LogPair& pair, int q)
{
    return congruence_hodge_qp(pair, compute_strata(pair), q);
}

Integer riemann_hurwitz_genus(const CurveModel& c, const CharacterSubgroup& g)
{
    if (g.divisors()->size() != c.size())
        throw SemanticError("subgroup and point configuration disagree on the number of points");
    const Integer order = static_cast<unsigned long>(g.order());
    Integer twice = -2 * order;
    for (const Integer& m : inertia_orders(g))
        twice += (order / m) * (m - 1);
    // 2g − 2 = twice
    if ((twice + 2) % 2 != 0)
        throw InternalError("Riemann–Hurwitz produced an odd Euler characteristic");
    return (twice + 2) / 2;
}

}   // namespace pictau
