#include "pictau/strata.hpp"

#include <algorithm>
#include "pictau/ehrhart.hpp"
#include "pictau/errors.hpp"

namespace pictau {

namespace {

QVector midpoint(const QVector& a, const QVector& b)
{
    QVector m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        m[i] = (a[i] + b[i]) / 2;
    return m;
}

ZVector floors(const QVector& v)
{
    ZVector f(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        f[i] = floor(v[i]);
    return f;
}

Integer pow_integer(const Integer& n, unsigned r)
{
    Integer p = 1;
    for (unsigned k = 0; k < r; ++k)
        p *= n;
    return p;
}

}   // namespace

LogPair::LogPair(const LineArrangement& a) : dimension_(2)
{
    SurfaceResolution res = build_log_resolution(a);
    surface_ = std::move(res.surface);
    resolution_ = std::move(res.data);
    decomposition_ = refine_by_resolution(decompose_boundaries(resolution_.source), resolution_);
}

LogPair::LogPair(const CurveModel& c) : dimension_(1)
{
    // Points on a curve already form a simple normal crossings divisor.
    resolution_ = ResolutionData::identity(c.divisors());
    decomposition_ = decompose_boundaries(resolution_.source);
}

ZVector LogPair::adjoint_class(const BoundaryRealization& x) const
{
    ZVector cls = resolution_.pull_back(x.bundle());
    const ZVector shift = resolution_.target->combination(floors(resolution_.e(x.alpha())));
    const ZVector& k = resolution_.target->variety().canonical_class;
    for (std::size_t i = 0; i < cls.size(); ++i)
        cls[i] += k[i] - shift[i];
    return cls;
}

Integer LogPair::hq_of_class(const ZVector& cls, int q) const
{
    {
        std::lock_guard<std::mutex> guard(cache_->lock);
        auto it = cache_->values.find({cls, q});
        if (it != cache_->values.end())
            return it->second;
    }
    const Integer h = surface_ ? hq_blowup(*surface_, cls, q) : hq_curve(cls.at(0), q);
    std::lock_guard<std::mutex> guard(cache_->lock);
    cache_->values.emplace(std::make_pair(cls, q), h);
    return h;
}

Integer LogPair::hq(const BoundaryRealization& x, int q) const { return hq_of_class(adjoint_class(x), q); }

std::vector<std::size_t> StrataTable::members(int q, int i) const
{
    std::vector<std::size_t> ids;
    auto it = entries.find({q, i});
    if (it != entries.end())
        for (const StratumRecord& r : it->second)
            ids.push_back(r.piece);
    return ids;
}

int StrataTable::i_max(int q) const
{
    int m = 0;
    for (const auto& [key, records] : entries)
        if (key.first == q && !records.empty())
            m = std::max(m, key.second);
    return m;
}

StrataTable compute_strata(const LogPair& pair, int q_max, RepresentativeChoice choice)
{
    if (pair.divisors()->variety().pic0_rank > 0)
        throw SymbolicOnlyError("symbolic-only regime: strata need Pic^0(X) = 0");
    StrataTable t;
    t.q_max = q_max < 0 ? pair.dimension() : q_max;
    t.pieces = pair.decomposition().pieces;

    for (const BoundaryPiece& piece : t.pieces)
    {
        BoundaryRealization x = piece.realization();
        if (choice == RepresentativeChoice::alternate)
        {
            // Halfway from the barycenter to a vertex stays in the relative interior.
            QVector alpha = midpoint(piece.interior_point, vertices(piece.polytope).front());
            x = BoundaryRealization(pair.divisors(), piece.base_class, alpha);
        }
        std::vector<Integer>& hs = t.hq_by_piece[piece.id];
        for (int q = 0; q <= t.q_max; ++q)
            hs.push_back(pair.hq(x, q));
    }

    for (int q = 0; q <= t.q_max; ++q)
        for (int i = 1;; ++i)
        {
            std::vector<StratumRecord> records;
            for (const BoundaryPiece& piece : t.pieces)
                if (t.hq_by_piece.at(piece.id)[static_cast<std::size_t>(q)] >= i)
                    records.push_back({piece.id, {}});
            if (records.empty())
                break;
            t.entries[{q, i}] = std::move(records);
        }
    return t;
}

bool floor_constancy_check(const HalfOpenPolytope& p, const ResolutionData& r)
{
    const std::vector<QVector> vs = vertices(p);
    if (vs.empty())
        return true;
    QVector center(vs.front().size());
    for (const QVector& v : vs)
        for (std::size_t i = 0; i < center.size(); ++i)
            center[i] += v[i] / Rational(static_cast<long>(vs.size()));
    const ZVector reference = floors(r.e(center));
    for (const QVector& v : vs)
        if (floors(r.e(midpoint(center, v))) != reference)
            return false;
    return true;
}

Integer count_stratum_torsion(const StrataTable& t, int q, int i, const Integer& n)
{
    auto it = t.entries.find({q, i});
    if (it == t.entries.end())
        return 0;
    Integer total = 0;
    for (const StratumRecord& rec : it->second)
    {
        const HalfOpenPolytope& p = t.pieces.at(rec.piece).polytope;
        total += count_lattice_points(p, Lattice::full(p.dim()), n) * pow_integer(n, rec.torus.rank);
    }
    return total;
}

QuasiPolynomial piece_torsion_qp(const BoundaryPiece& piece, const DivisorSet& d)
{
    // Points of (1/N)Z^S on the piece lie in β + (1/N)(Z^S ∩ ker l) for any
    // integral β with l(β) = p, so count a translate inside W = ker l.
    const QMatrix l = to_rational(d.class_matrix());
    const Lattice full = Lattice::full(d.size());
    if (auto beta = solve_integer(l, to_rational(piece.base_class)))
        return coset_count_qp(piece.polytope.translate_back(to_rational(*beta)), l, full, QVector(d.size()));
    return coset_count_qp(piece.polytope, QMatrix(0, d.size()), full, QVector(d.size()));
}

QuasiPolynomial stratum_torsion_qp(const StrataTable& t, const DivisorSet& d, int q, int i)
{
    QuasiPolynomial f;
    auto it = t.entries.find({q, i});
    if (it == t.entries.end())
        return f;
    for (const StratumRecord& rec : it->second)
        f += scale_by_torus_rank(piece_torsion_qp(t.pieces.at(rec.piece), d), rec.torus.rank);
    return f;
}

}   // namespace pictau
