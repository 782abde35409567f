#include "pictau/parabolic.hpp"

#include <algorithm>
#include <functional>
#include "pictau/errors.hpp"

namespace pictau {

namespace {

ZVector reduce_label(ZVector t, const ZVector& factors)
{
    if (t.empty())
        t.assign(factors.size(), Integer(0));
    if (t.size() != factors.size())
        throw SemanticError("torsion label has the wrong length");
    for (std::size_t i = 0; i < t.size(); ++i)
    {
        t[i] %= factors[i];
        if (t[i] < 0)
            t[i] += factors[i];
    }
    return t;
}

const DivisorSetPtr& same_divisors(const BoundaryRealization& x, const BoundaryRealization& y)
{
    if (x.divisors() != y.divisors() && !(*x.divisors() == *y.divisors()))
        throw SemanticError("realizations live over different divisor sets");
    return x.divisors();
}

QVector barycenter(const std::vector<QVector>& vs)
{
    QVector c(vs.front().size());
    for (const QVector& v : vs)
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] += v[i];
    for (Rational& x : c)
        x /= Rational(static_cast<long>(vs.size()));
    return c;
}

BoundaryPiece make_piece(const DivisorSetPtr& d, std::size_t id, std::size_t parent, HalfOpenPolytope p,
                         ZVector base)
{
    BoundaryPiece piece;
    piece.id = id;
    piece.parent = parent;
    piece.polytope = std::move(p);
    piece.base_class = std::move(base);
    piece.interior_point = barycenter(vertices(piece.polytope));
    if (!piece.polytope.contains(piece.interior_point))
        throw InternalError("barycenter of a nonempty piece left the piece");
    if (d->variety().pic0_rank == 0)
    {
        piece.representative.emplace(d, piece.base_class, piece.interior_point);
        piece.order = torsion_order(*piece.representative);
    }
    return piece;
}

}   // namespace

VarietyModel VarietyModel::p1()
{
    // The intersection form is unused on curves; degrees are read off classes directly.
    return {"P1", 1, ZMatrix(1, 1), ZVector{Integer(-2)}, {}, 0};
}

VarietyModel VarietyModel::p2() { return p2_blown_up(0); }

VarietyModel VarietyModel::p2_blown_up(std::size_t r)
{
    ZMatrix form(r + 1, r + 1);
    ZVector k(r + 1, Integer(1));
    form(0, 0) = 1;
    k[0] = -3;
    for (std::size_t i = 1; i <= r; ++i)
        form(i, i) = -1;
    return {r == 0 ? "P2" : "Bl" + std::to_string(r) + "P2", 2, form, k, {}, 0};
}

DivisorSet::DivisorSet(VarietyModel variety, std::vector<ZVector> classes)
    : variety_(std::move(variety)), classes_(std::move(classes))
{
    if (classes_.empty())
        throw SemanticError("a boundary needs at least one component");
    const std::size_t r = variety_.ns_rank();
    class_matrix_ = ZMatrix(r, classes_.size());
    for (std::size_t i = 0; i < classes_.size(); ++i)
    {
        if (classes_[i].size() != r)
            throw SemanticError("component class has the wrong NS rank");
        bool zero = true;
        for (std::size_t k = 0; k < r; ++k)
        {
            class_matrix_(k, i) = classes_[i][k];
            zero = zero && classes_[i][k] == 0;
        }
        if (zero)
            throw SemanticError("component class is zero");
    }
}

QVector DivisorSet::c1(const QVector& alpha) const { return to_rational(class_matrix_) * alpha; }

ZVector DivisorSet::combination(const ZVector& coeffs) const { return class_matrix_ * coeffs; }

BoundaryRealization::BoundaryRealization(DivisorSetPtr divisors, ZVector bundle, QVector alpha, ZVector torsion)
    : divisors_(std::move(divisors)), bundle_(std::move(bundle)), alpha_(std::move(alpha))
{
    const VarietyModel& v = divisors_->variety();
    torsion_ = reduce_label(std::move(torsion), v.pic_tau_torsion);
    if (bundle_.size() != v.ns_rank())
        throw SemanticError("bundle class has the wrong NS rank");
    if (alpha_.size() != divisors_->size())
        throw SemanticError("alpha has the wrong number of coordinates");
    for (const Rational& a : alpha_)
        if (a < 0 || a >= 1)
            throw SemanticError("alpha coordinate " + to_string(a) + " is outside [0,1)");
    if (divisors_->c1(alpha_) != to_rational(bundle_))
        throw SemanticError("c_1 of the bundle differs from alpha·D");
}

BoundaryRealization BoundaryRealization::identity(DivisorSetPtr divisors)
{
    const std::size_t r = divisors->variety().ns_rank(), s = divisors->size();
    return BoundaryRealization(std::move(divisors), ZVector(r), QVector(s));
}

bool BoundaryRealization::is_identity() const
{
    auto zero = [](const auto& v) { return std::all_of(v.begin(), v.end(), [](const auto& x) { return x == 0; }); };
    return zero(bundle_) && zero(alpha_) && zero(torsion_);
}

bool BoundaryRealization::operator==(const BoundaryRealization& other) const
{
    return bundle_ == other.bundle_ && alpha_ == other.alpha_ && torsion_ == other.torsion_
        && (divisors_ == other.divisors_ || *divisors_ == *other.divisors_);
}

BoundaryRealization group_law(const BoundaryRealization& x, const BoundaryRealization& y)
{
    const DivisorSetPtr& d = same_divisors(x, y);
    const std::size_t s = d->size();
    QVector alpha(s);
    ZVector carry(s);
    for (std::size_t i = 0; i < s; ++i)
    {
        Rational sum = x.alpha()[i] + y.alpha()[i];
        carry[i] = floor(sum);
        alpha[i] = sum - Rational(carry[i]);
    }
    ZVector bundle = x.bundle(), shift = d->combination(carry);
    for (std::size_t k = 0; k < bundle.size(); ++k)
        bundle[k] += y.bundle()[k] - shift[k];
    ZVector label = x.torsion();
    for (std::size_t k = 0; k < label.size(); ++k)
        label[k] += y.torsion()[k];
    return BoundaryRealization(d, std::move(bundle), std::move(alpha), std::move(label));
}

BoundaryRealization inverse(const BoundaryRealization& x)
{
    const DivisorSetPtr& d = x.divisors();
    ZVector nonzero(d->size());
    QVector beta(d->size());
    for (std::size_t i = 0; i < d->size(); ++i)
        if (x.alpha()[i] != 0)
        {
            nonzero[i] = 1;
            beta[i] = 1 - x.alpha()[i];
        }
    ZVector bundle = d->combination(nonzero);
    for (std::size_t k = 0; k < bundle.size(); ++k)
        bundle[k] -= x.bundle()[k];
    ZVector label = x.torsion();
    for (Integer& t : label)
        t = -t;
    return BoundaryRealization(d, std::move(bundle), std::move(beta), std::move(label));
}

BoundaryRealization power(const BoundaryRealization& x, unsigned long n)
{
    BoundaryRealization acc = BoundaryRealization::identity(x.divisors());
    for (unsigned long k = 0; k < n; ++k)
        acc = group_law(acc, x);
    return acc;
}

Integer torsion_order(const BoundaryRealization& x)
{
    // The order divides lcm(denominators of α) times the exponent of Pic^τ(X).
    Integer bound = common_denominator(x.alpha());
    for (const Integer& f : x.divisors()->variety().pic_tau_torsion)
        bound = lcm(bound, f);
    BoundaryRealization acc = x;
    for (Integer n = 1; n <= bound; ++n)
    {
        if (acc.is_identity())
            return n;
        acc = group_law(acc, x);
    }
    throw InternalError("realization is not torsion within the expected bound");
}

const BoundaryRealization& BoundaryPiece::realization() const
{
    if (!representative)
        throw SymbolicOnlyError("symbolic-only regime: Pic^0(X) has positive rank, representatives are not computable");
    return *representative;
}

const BoundaryPiece* BoundaryDecomposition::locate(const QVector& alpha) const
{
    for (const BoundaryPiece& p : pieces)
        if (p.polytope.contains(alpha))
            return &p;
    return nullptr;
}

BoundaryDecomposition decompose_boundaries(const DivisorSetPtr& d)
{
    const std::size_t s = d->size(), r = d->variety().ns_rank();
    const ZMatrix& c = d->class_matrix();

    // Graph of l over [0,1)^S in coordinates (α, y), projected onto y.
    std::vector<Constraint> graph;
    for (std::size_t i = 0; i < s; ++i)
    {
        QVector e(s + r);
        e[i] = 1;
        graph.push_back({e, Rational(1), Relation::lt});
        e[i] = -1;
        graph.push_back({e, Rational(0), Relation::le});
    }
    for (std::size_t k = 0; k < r; ++k)
    {
        QVector row(s + r);
        for (std::size_t i = 0; i < s; ++i)
            row[i] = Rational(c(k, i));
        row[s + k] = -1;
        graph.push_back({row, Rational(0), Relation::eq});
    }
    std::vector<std::size_t> ys(r);
    for (std::size_t k = 0; k < r; ++k)
        ys[k] = s + k;
    const HalfOpenPolytope image = project(HalfOpenPolytope(s + r, graph), ys);

    BoundaryDecomposition out{d, {}};
    const HalfOpenPolytope cube = HalfOpenPolytope::box(s, 0, 1, true);
    for (const ZVector& p : lattice_points(image, Lattice::full(r), 1))
    {
        std::vector<Constraint> fiber;
        for (std::size_t k = 0; k < r; ++k)
            fiber.push_back({to_rational(c.row(k)), Rational(p[k]), Relation::eq});
        HalfOpenPolytope piece = cube.with(fiber);
        if (piece.is_empty())
            continue;
        const std::size_t id = out.pieces.size();
        out.pieces.push_back(make_piece(d, id, id, piece.without_redundant_constraints(), p));
    }
    return out;
}

void ResolutionData::validate() const
{
    const std::size_t s = source->size(), t = target->size();
    if (e_matrix.rows() != s || e_matrix.cols() != t || t < s)
        throw SemanticError("resolution: e-matrix has the wrong shape");
    if (pullback.rows() != target->variety().ns_rank() || pullback.cols() != source->variety().ns_rank())
        throw SemanticError("resolution: pullback map has the wrong shape");
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < t; ++j)
        {
            if (e_matrix(i, j) < 0)
                throw SemanticError("resolution: negative multiplicity");
            if (j < s && e_matrix(i, j) != (i == j ? 1 : 0))
                throw SemanticError("resolution: strict transform columns must be unit vectors");
        }
    for (std::size_t i = 0; i < s; ++i)
        if (pull_back(source->classes()[i]) != target->combination(e_matrix.row(i)))
            throw SemanticError("resolution: pullback of a component disagrees with the e-matrix");
}

QVector ResolutionData::e(const QVector& alpha) const { return to_rational(e_matrix).transpose() * alpha; }

ResolutionData ResolutionData::identity(const DivisorSetPtr& d)
{
    const std::size_t s = d->size(), r = d->variety().ns_rank();
    return {d, d, ZMatrix::identity(s), ZMatrix::identity(r)};
}

BoundaryDecomposition refine_by_resolution(const BoundaryDecomposition& b, const ResolutionData& r)
{
    if (!(*b.divisors == *r.source))
        throw SemanticError("resolution is over a different divisor set");
    const std::size_t s = r.source->size(), t = r.target->size();
    const QMatrix et = to_rational(r.e_matrix).transpose();

    BoundaryDecomposition out{b.divisors, {}};
    for (const BoundaryPiece& piece : b.pieces)
    {
        // Strict transforms have e_j = α_i ∈ [0,1): only exceptional columns cut.
        std::vector<std::vector<Constraint>> options;
        const std::vector<QVector> vs = vertices(piece.polytope);
        for (std::size_t j = s; j < t; ++j)
        {
            const QVector row = et.row(j);
            Rational lo = dot(row, vs.front()), hi = lo;
            for (const QVector& v : vs)
            {
                lo = std::min(lo, dot(row, v));
                hi = std::max(hi, dot(row, v));
            }
            std::vector<Constraint> level;
            QVector neg = row;
            for (Rational& x : neg)
                x = -x;
            for (Integer k = floor(lo); k <= floor(hi); ++k)
            {
                level.push_back({neg, Rational(-k), Relation::le});
                level.push_back({row, Rational(k + 1), Relation::lt});
            }
            options.push_back(std::move(level));
        }

        std::vector<Constraint> chosen;
        std::function<void(std::size_t)> descend = [&](std::size_t j) {
            if (j == options.size())
            {
                HalfOpenPolytope cell = piece.polytope.with(chosen);
                if (cell.is_empty())
                    return;
                const std::size_t id = out.pieces.size();
                out.pieces.push_back(make_piece(b.divisors, id, piece.parent, cell.without_redundant_constraints(),
                                                piece.base_class));
                return;
            }
            for (std::size_t k = 0; k < options[j].size(); k += 2)
            {
                chosen.push_back(options[j][k]);
                chosen.push_back(options[j][k + 1]);
                descend(j + 1);
                chosen.resize(chosen.size() - 2);
            }
        };
        descend(0);
    }
    return out;
}

QVector monodromy_pullback(const QVector& alpha, const ResolutionData& r)
{
    QVector beta = r.e(alpha);
    for (Rational& b : beta)
        b = frac(b);
    return beta;
}

BoundaryRealization pullback_parabolic(const BoundaryRealization& x, const ResolutionData& r)
{
    if (!(*x.divisors() == *r.source))
        throw SemanticError("realization is not over the resolution's source");
    QVector e = r.e(x.alpha());
    ZVector floors(e.size());
    QVector beta(e.size());
    for (std::size_t j = 0; j < e.size(); ++j)
    {
        floors[j] = floor(e[j]);
        beta[j] = e[j] - Rational(floors[j]);
    }
    ZVector bundle = r.pull_back(x.bundle()), shift = r.target->combination(floors);
    for (std::size_t k = 0; k < bundle.size(); ++k)
        bundle[k] -= shift[k];
    // Pic^τ labels pull back to Z unchanged only when both groups agree; built-in models have none.
    return BoundaryRealization(r.target, std::move(bundle), std::move(beta));
}

ZVector deligne_extension_class(const BoundaryRealization& x, const ResolutionData& r)
{
    QVector e = r.e(x.alpha());
    ZVector floors(e.size());
    for (std::size_t j = 0; j < e.size(); ++j)
        floors[j] = floor(e[j]);
    ZVector cls = r.pull_back(x.bundle()), shift = r.target->combination(floors);
    for (std::size_t k = 0; k < cls.size(); ++k)
        cls[k] += shift[k];
    return cls;
}

std::vector<BoundaryRealization> torsion_points(const BoundaryDecomposition& b, const Integer& n)
{
    const VarietyModel& v = b.divisors->variety();
    if (v.pic0_rank > 0)
        throw SymbolicOnlyError("symbolic-only regime: torsion points of Pic^0(X) are not computable");
    if (n < 1)
        throw SemanticError("torsion order must be positive");

    // Labels t with n·t = 0 in Π Z/d_i: multiples of d_i / gcd(d_i, n).
    std::vector<ZVector> labels{ZVector{}};
    for (const Integer& d : v.pic_tau_torsion)
    {
        const Integer step = d / gcd(d, n);
        std::vector<ZVector> next;
        for (const ZVector& l : labels)
            for (Integer t = 0; t < d; t += step)
            {
                next.push_back(l);
                next.back().push_back(t);
            }
        labels = std::move(next);
    }

    std::vector<BoundaryRealization> out;
    const Lattice full = Lattice::full(b.divisors->size());
    for (const BoundaryPiece& piece : b.pieces)
        for (const ZVector& y : lattice_points(piece.polytope, full, n))
        {
            QVector alpha(y.size());
            for (std::size_t i = 0; i < y.size(); ++i)
                alpha[i] = Rational(y[i], n);
            for (const ZVector& l : labels)
                out.emplace_back(b.divisors, piece.base_class, alpha, l);
        }
    return out;
}

}   // namespace pictau
