#include "pictau/polytope.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include "pictau/errors.hpp"

namespace pictau {

namespace {

bool holds(const Rational& lhs, Relation rel, const Rational& rhs)
{
    switch (rel)
    {
        case Relation::le: return lhs <= rhs;
        case Relation::lt: return lhs < rhs;
        case Relation::eq: return lhs == rhs;
    }
    return false;
}

bool all_zero(const QVector& a)
{
    return std::all_of(a.begin(), a.end(), [](const Rational& x) { return x == 0; });
}

Constraint infeasible_marker(std::size_t dim) { return {QVector(dim), Rational(-1), Relation::le}; }

/// Scales to primitive integer coefficients (positive factor; equalities
/// additionally get a positive leading coefficient).
Constraint scaled(Constraint c)
{
    QVector all = c.a;
    all.push_back(c.b);
    Integer d = common_denominator(all);
    Integer g = 0;
    for (Rational& x : c.a)
    {
        x *= d;
        g = gcd(g, numerator(x));
    }
    c.b *= d;
    if (g > 1)
    {
        for (Rational& x : c.a)
            x /= Rational(g);
        c.b /= Rational(g);
    }
    if (c.rel == Relation::eq)
    {
        auto lead = std::find_if(c.a.begin(), c.a.end(), [](const Rational& x) { return x != 0; });
        if (lead != c.a.end() && *lead < 0)
        {
            for (Rational& x : c.a)
                x = -x;
            c.b = -c.b;
        }
    }
    return c;
}

QVector negated(const QVector& v)
{
    QVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = -v[i];
    return out;
}

/// Counts of positive / negative coefficients at `var` among inequalities,
/// or nullopt when an equality mentions var (substitution is free).
std::optional<std::size_t> elimination_cost(const std::vector<Constraint>& cs, std::size_t var)
{
    std::size_t pos = 0, neg = 0;
    for (const Constraint& c : cs)
    {
        if (c.a[var] == 0)
            continue;
        if (c.rel == Relation::eq)
            return std::nullopt;
        (c.a[var] > 0 ? pos : neg) += 1;
    }
    return pos * neg;
}

/// Eliminates every variable in `vars`, cheapest first.
std::vector<Constraint> eliminate_all(std::vector<Constraint> cs, std::vector<std::size_t> vars)
{
    cs = fm::normalize(std::move(cs));
    while (!vars.empty() && !fm::infeasible(cs))
    {
        std::size_t best = 0;
        std::optional<std::size_t> best_cost = elimination_cost(cs, vars[0]);
        for (std::size_t k = 1; k < vars.size() && best_cost; ++k)
        {
            auto cost = elimination_cost(cs, vars[k]);
            if (!cost || *cost < *best_cost)
            {
                best = k;
                best_cost = cost;
            }
        }
        cs = fm::eliminate(cs, vars[best]);
        vars.erase(vars.begin() + static_cast<std::ptrdiff_t>(best));
    }
    return cs;
}

std::vector<std::size_t> all_but(std::size_t dim, std::size_t keep)
{
    std::vector<std::size_t> vars;
    for (std::size_t i = 0; i < dim; ++i)
        if (i != keep)
            vars.push_back(i);
    return vars;
}

bool closure_is_bounded(std::size_t dim, const std::vector<Constraint>& constraints)
{
    std::vector<Constraint> closed = constraints;
    for (Constraint& c : closed)
        if (c.rel == Relation::lt)
            c.rel = Relation::le;
    for (std::size_t k = 0; k < dim; ++k)
    {
        std::vector<Constraint> cs = eliminate_all(closed, all_but(dim, k));
        if (fm::infeasible(cs))
            return true;
        bool upper = false, lower = false;
        for (const Constraint& c : cs)
        {
            if (c.a[k] == 0)
                continue;
            if (c.rel == Relation::eq)
                upper = lower = true;
            else
                (c.a[k] > 0 ? upper : lower) = true;
        }
        if (!upper || !lower)
            return false;
    }
    return true;
}

}   // namespace

bool Constraint::satisfied_by(const QVector& x) const { return holds(dot(a, x), rel, b); }

// ---------------------------------------------------------------------------
// Fourier–Motzkin
// ---------------------------------------------------------------------------

namespace fm {

bool infeasible(const std::vector<Constraint>& cs)
{
    return std::any_of(cs.begin(), cs.end(), [](const Constraint& c) { return all_zero(c.a); });
}

std::vector<Constraint> normalize(std::vector<Constraint> cs)
{
    const std::size_t dim = cs.empty() ? 0 : cs.front().a.size();
    std::vector<Constraint> out;
    std::map<QVector, std::size_t> ineq_index;   // primitive normal -> position in out
    std::map<QVector, Rational> eq_value;
    for (Constraint& raw : cs)
    {
        if (all_zero(raw.a))
        {
            if (!holds(0, raw.rel, raw.b))
                return {infeasible_marker(dim)};
            continue;
        }
        Constraint c = scaled(std::move(raw));
        if (c.rel == Relation::eq)
        {
            auto it = eq_value.find(c.a);
            if (it != eq_value.end())
            {
                if (it->second != c.b)
                    return {infeasible_marker(dim)};
                continue;
            }
            eq_value.emplace(c.a, c.b);
            out.push_back(std::move(c));
            continue;
        }
        auto it = ineq_index.find(c.a);
        if (it == ineq_index.end())
        {
            ineq_index.emplace(c.a, out.size());
            out.push_back(std::move(c));
            continue;
        }
        Constraint& kept = out[it->second];
        if (c.b < kept.b || (c.b == kept.b && c.rel == Relation::lt))
        {
            kept.b = c.b;
            kept.rel = c.rel;
        }
    }
    // Inequalities parallel to an equality collapse to constant checks.
    std::vector<Constraint> result;
    for (const Constraint& c : out)
    {
        if (c.rel != Relation::eq)
        {
            auto same = eq_value.find(c.a);
            if (same != eq_value.end())
            {
                if (!holds(same->second, c.rel, c.b))
                    return {infeasible_marker(dim)};
                continue;
            }
            QVector neg_a = negated(c.a);
            // scaled() gives equalities a positive leading coefficient, so the
            // opposite normal is the only other candidate.
            auto opposite = eq_value.find(neg_a);
            if (opposite != eq_value.end())
            {
                if (!holds(-opposite->second, c.rel, c.b))
                    return {infeasible_marker(dim)};
                continue;
            }
            // a·x <= b together with -a·x <= -b' : empty when b < b' (or touching with a strict side).
            auto anti = ineq_index.find(neg_a);
            if (anti != ineq_index.end())
            {
                const Constraint& other = out[anti->second];
                Rational lo = -other.b;
                bool strict = c.rel == Relation::lt || other.rel == Relation::lt;
                if (c.b < lo || (c.b == lo && strict))
                    return {infeasible_marker(dim)};
            }
        }
        result.push_back(c);
    }
    return result;
}

std::vector<Constraint> eliminate(const std::vector<Constraint>& cs, std::size_t var)
{
    auto pivot = std::find_if(cs.begin(), cs.end(),
                              [&](const Constraint& c) { return c.rel == Relation::eq && c.a[var] != 0; });
    std::vector<Constraint> out;
    if (pivot != cs.end())
    {
        const Constraint& e = *pivot;
        for (auto it = cs.begin(); it != cs.end(); ++it)
        {
            if (it == pivot)
                continue;
            Constraint c = *it;
            if (c.a[var] != 0)
            {
                Rational f = c.a[var] / e.a[var];
                for (std::size_t j = 0; j < c.a.size(); ++j)
                    c.a[j] -= f * e.a[j];
                c.b -= f * e.b;
                c.a[var] = 0;
            }
            out.push_back(std::move(c));
        }
        return normalize(std::move(out));
    }

    std::vector<const Constraint*> pos, neg;
    for (const Constraint& c : cs)
    {
        if (c.a[var] > 0)
            pos.push_back(&c);
        else if (c.a[var] < 0)
            neg.push_back(&c);
        else
            out.push_back(c);
    }
    for (const Constraint* p : pos)
        for (const Constraint* n : neg)
        {
            Rational cp = p->a[var], cn = -n->a[var];
            Constraint c;
            c.a.resize(p->a.size());
            for (std::size_t j = 0; j < c.a.size(); ++j)
                c.a[j] = cn * p->a[j] + cp * n->a[j];
            c.a[var] = 0;
            c.b = cn * p->b + cp * n->b;
            c.rel = (p->rel == Relation::lt || n->rel == Relation::lt) ? Relation::lt : Relation::le;
            out.push_back(std::move(c));
        }
    return normalize(std::move(out));
}

}   // namespace fm

// ---------------------------------------------------------------------------
// HalfOpenPolytope
// ---------------------------------------------------------------------------

HalfOpenPolytope::HalfOpenPolytope(std::size_t dim, std::vector<Constraint> constraints)
    : dim_(dim), constraints_(std::move(constraints))
{
    for (const Constraint& c : constraints_)
        if (c.a.size() != dim_)
            throw SemanticError("constraint has " + std::to_string(c.a.size()) + " coefficients, expected "
                                + std::to_string(dim_));
    if (!closure_is_bounded(dim_, constraints_))
        throw SemanticError("polytope closure is unbounded");
}

HalfOpenPolytope HalfOpenPolytope::trusted(std::size_t dim, std::vector<Constraint> constraints)
{
    HalfOpenPolytope p;
    p.dim_ = dim;
    p.constraints_ = std::move(constraints);
    return p;
}

HalfOpenPolytope HalfOpenPolytope::box(std::size_t dim, const Rational& lo, const Rational& hi, bool upper_strict)
{
    std::vector<Constraint> cs;
    for (std::size_t i = 0; i < dim; ++i)
    {
        QVector e(dim);
        e[i] = -1;
        cs.push_back({e, -lo, Relation::le});
        e[i] = 1;
        cs.push_back({e, hi, upper_strict ? Relation::lt : Relation::le});
    }
    return trusted(dim, std::move(cs));
}

bool HalfOpenPolytope::contains(const QVector& x) const
{
    if (x.size() != dim_)
        throw SemanticError("point dimension does not match polytope");
    return std::all_of(constraints_.begin(), constraints_.end(),
                       [&](const Constraint& c) { return c.satisfied_by(x); });
}

bool HalfOpenPolytope::is_empty() const
{
    std::vector<std::size_t> vars(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        vars[i] = i;
    return fm::infeasible(eliminate_all(constraints_, vars));
}

HalfOpenPolytope HalfOpenPolytope::closure() const
{
    std::vector<Constraint> cs = constraints_;
    for (Constraint& c : cs)
        if (c.rel == Relation::lt)
            c.rel = Relation::le;
    return trusted(dim_, std::move(cs));
}

HalfOpenPolytope HalfOpenPolytope::dilate(const Rational& factor) const
{
    std::vector<Constraint> cs = constraints_;
    for (Constraint& c : cs)
        c.b *= factor;
    return trusted(dim_, std::move(cs));
}

HalfOpenPolytope HalfOpenPolytope::translate_back(const QVector& t) const
{
    std::vector<Constraint> cs = constraints_;
    for (Constraint& c : cs)
        c.b -= dot(c.a, t);
    return trusted(dim_, std::move(cs));
}

HalfOpenPolytope HalfOpenPolytope::with(const std::vector<Constraint>& extra) const
{
    std::vector<Constraint> cs = constraints_;
    for (const Constraint& c : extra)
    {
        if (c.a.size() != dim_)
            throw SemanticError("extra constraint has wrong dimension");
        cs.push_back(c);
    }
    return trusted(dim_, std::move(cs));
}

HalfOpenPolytope HalfOpenPolytope::without_redundant_constraints() const
{
    if (is_empty())
        return trusted(dim_, {infeasible_marker(dim_)});
    std::vector<Constraint> kept = fm::normalize(constraints_);
    auto empty_with = [&](std::vector<Constraint> cs, const Constraint& extra) {
        cs.push_back(extra);
        return trusted(dim_, std::move(cs)).is_empty();
    };
    for (std::size_t i = 0; i < kept.size();)
    {
        std::vector<Constraint> others;
        for (std::size_t j = 0; j < kept.size(); ++j)
            if (j != i)
                others.push_back(kept[j]);
        const Constraint& c = kept[i];
        QVector neg_a = negated(c.a);
        bool redundant = false;
        switch (c.rel)
        {
            case Relation::le: redundant = empty_with(others, {neg_a, -c.b, Relation::lt}); break;
            case Relation::lt: redundant = empty_with(others, {neg_a, -c.b, Relation::le}); break;
            case Relation::eq:
                redundant = empty_with(others, {c.a, c.b, Relation::lt})
                            && empty_with(others, {neg_a, -c.b, Relation::lt});
                break;
        }
        if (redundant)
            kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
        else
            ++i;
    }
    return trusted(dim_, std::move(kept));
}

HalfOpenPolytope HalfOpenPolytope::in_lattice_coordinates(const ZMatrix& basis) const
{
    if (basis.cols() != dim_)
        throw SemanticError("lattice basis has wrong ambient dimension");
    const std::size_t k = basis.rows();
    std::vector<Constraint> cs;
    cs.reserve(constraints_.size());
    for (const Constraint& c : constraints_)
    {
        Constraint t;
        t.a.assign(k, Rational(0));
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t j = 0; j < dim_; ++j)
                if (basis(r, j) != 0 && c.a[j] != 0)
                    t.a[r] += Rational(basis(r, j)) * c.a[j];
        t.b = c.b;
        t.rel = c.rel;
        cs.push_back(std::move(t));
    }
    return trusted(k, std::move(cs));
}

// ---------------------------------------------------------------------------
// Vertices
// ---------------------------------------------------------------------------

std::vector<QVector> vertices(const HalfOpenPolytope& p)
{
    const std::size_t n = p.dim();
    const HalfOpenPolytope closed = p.closure();
    std::vector<Constraint> eqs, ineqs;
    for (const Constraint& c : closed.constraints())
        (c.rel == Relation::eq ? eqs : ineqs).push_back(c);

    QMatrix eq_matrix(eqs.size(), n);
    for (std::size_t i = 0; i < eqs.size(); ++i)
        for (std::size_t j = 0; j < n; ++j)
            eq_matrix(i, j) = eqs[i].a[j];
    const std::size_t eq_rank = rank(eq_matrix);
    if (eq_rank > n)
        return {};
    const std::size_t choose = n - eq_rank;
    if (choose > ineqs.size())
        return {};

    std::set<QVector> found;
    std::vector<std::size_t> pick(choose);
    for (std::size_t i = 0; i < choose; ++i)
        pick[i] = i;
    for (;;)
    {
        QMatrix a(eqs.size() + choose, n);
        QVector b(eqs.size() + choose);
        for (std::size_t i = 0; i < eqs.size(); ++i)
        {
            for (std::size_t j = 0; j < n; ++j)
                a(i, j) = eqs[i].a[j];
            b[i] = eqs[i].b;
        }
        for (std::size_t s = 0; s < choose; ++s)
        {
            const Constraint& c = ineqs[pick[s]];
            for (std::size_t j = 0; j < n; ++j)
                a(eqs.size() + s, j) = c.a[j];
            b[eqs.size() + s] = c.b;
        }
        if (auto x = solve_unique(a, b); x && closed.contains(*x))
            found.insert(*x);

        // next combination
        std::size_t i = choose;
        while (i > 0 && pick[i - 1] == ineqs.size() - choose + (i - 1))
            --i;
        if (i == 0)
            break;
        ++pick[i - 1];
        for (std::size_t j = i; j < choose; ++j)
            pick[j] = pick[j - 1] + 1;
    }
    return {found.begin(), found.end()};
}

int affine_dimension(const HalfOpenPolytope& p)
{
    std::vector<QVector> vs = vertices(p);
    if (vs.empty())
        return -1;
    QMatrix diffs(vs.size() - 1, p.dim());
    for (std::size_t i = 1; i < vs.size(); ++i)
        for (std::size_t j = 0; j < p.dim(); ++j)
            diffs(i - 1, j) = vs[i][j] - vs[0][j];
    return static_cast<int>(rank(diffs));
}

// ---------------------------------------------------------------------------
// Lattice points
// ---------------------------------------------------------------------------

namespace {

/**
 * Depth-first enumeration of integer points: level j holds the projection of
 * the polytope onto coordinates 0..j, so every prefix that survives level j
 * extends to a real point of the polytope.
 */
class PointEnumerator
{
    public:
        explicit PointEnumerator(const HalfOpenPolytope& p) : dim_(p.dim()), levels_(p.dim())
        {
            std::vector<Constraint> cur = fm::normalize(p.constraints());
            if (fm::infeasible(cur))
            {
                empty_ = true;
                return;
            }
            for (std::size_t j = dim_; j-- > 0;)
            {
                for (const Constraint& c : cur)
                    if (c.a[j] != 0)
                        levels_[j].push_back(c);
                cur = fm::eliminate(cur, j);
                if (fm::infeasible(cur))
                {
                    empty_ = true;
                    return;
                }
            }
        }

        /// The innermost coordinate is not expanded, only its range length added.
        Integer count() const
        {
            Integer total = 0;
            if (empty_)
                return total;
            QVector prefix(dim_);
            count_from(0, prefix, total);
            return total;
        }

        void visit(const std::function<void(const QVector&)>& f) const
        {
            if (empty_)
                return;
            QVector prefix(dim_);
            visit_from(0, prefix, f);
        }

    private:
        /// Integer range [lo, hi] for coordinate j given the fixed prefix.
        std::optional<std::pair<Integer, Integer>> range(std::size_t j, const QVector& prefix) const
        {
            std::optional<Integer> lo, hi;
            for (const Constraint& c : levels_[j])
            {
                Rational s = 0;
                for (std::size_t i = 0; i < j; ++i)
                    if (c.a[i] != 0)
                        s += c.a[i] * prefix[i];
                Rational t = (c.b - s) / c.a[j];
                Integer l, h;
                bool has_l = false, has_h = false;
                if (c.rel == Relation::eq)
                {
                    if (denominator(t) != 1)
                        return std::nullopt;
                    l = h = numerator(t);
                    has_l = has_h = true;
                }
                else if (c.a[j] > 0)
                {
                    h = (c.rel == Relation::le) ? floor(t) : ceil(t) - 1;
                    has_h = true;
                }
                else
                {
                    l = (c.rel == Relation::le) ? ceil(t) : floor(t) + 1;
                    has_l = true;
                }
                if (has_l && (!lo || l > *lo))
                    lo = l;
                if (has_h && (!hi || h < *hi))
                    hi = h;
            }
            if (!lo || !hi)
                throw InternalError("lattice point enumeration over an unbounded coordinate");
            if (*lo > *hi)
                return std::nullopt;
            return std::make_pair(*lo, *hi);
        }

        void count_from(std::size_t j, QVector& prefix, Integer& total) const
        {
            if (j == dim_)
            {
                total += 1;
                return;
            }
            auto r = range(j, prefix);
            if (!r)
                return;
            if (j + 1 == dim_)
            {
                total += r->second - r->first + 1;
                return;
            }
            for (Integer x = r->first; x <= r->second; ++x)
            {
                prefix[j] = Rational(x);
                count_from(j + 1, prefix, total);
            }
        }

        void visit_from(std::size_t j, QVector& prefix, const std::function<void(const QVector&)>& f) const
        {
            if (j == dim_)
            {
                f(prefix);
                return;
            }
            auto r = range(j, prefix);
            if (!r)
                return;
            for (Integer x = r->first; x <= r->second; ++x)
            {
                prefix[j] = Rational(x);
                visit_from(j + 1, prefix, f);
            }
        }

        std::size_t dim_;
        std::vector<std::vector<Constraint>> levels_;
        bool empty_ = false;
};

HalfOpenPolytope dilated_in(const HalfOpenPolytope& p, const Lattice& l, const Integer& dilation)
{
    if (l.ambient_dim() != p.dim())
        throw SemanticError("lattice and polytope live in different dimensions");
    if (dilation < 0)
        throw SemanticError("dilation must be nonnegative");
    HalfOpenPolytope d = p.dilate(Rational(dilation));
    return l.is_full_standard() ? d : d.in_lattice_coordinates(l.basis());
}

}   // namespace

std::vector<ZVector> lattice_points(const HalfOpenPolytope& p, const Lattice& l, const Integer& dilation)
{
    HalfOpenPolytope q = dilated_in(p, l, dilation);
    const bool standard = l.is_full_standard();
    std::vector<ZVector> points;
    PointEnumerator(q).visit([&](const QVector& c) {
        ZVector coords = to_integer(c);
        if (standard)
        {
            points.push_back(std::move(coords));
            return;
        }
        ZVector x(p.dim());
        for (std::size_t r = 0; r < coords.size(); ++r)
            for (std::size_t j = 0; j < p.dim(); ++j)
                x[j] += coords[r] * l.basis()(r, j);
        points.push_back(std::move(x));
    });
    std::sort(points.begin(), points.end());
    return points;
}

Integer count_lattice_points(const HalfOpenPolytope& p, const Lattice& l, const Integer& dilation)
{
    return PointEnumerator(dilated_in(p, l, dilation)).count();
}

// ---------------------------------------------------------------------------
// Projection
// ---------------------------------------------------------------------------

HalfOpenPolytope project(const HalfOpenPolytope& p, const std::vector<std::size_t>& coords)
{
    std::vector<bool> keep(p.dim(), false);
    for (std::size_t c : coords)
    {
        if (c >= p.dim() || keep[c])
            throw SemanticError("projection coordinates must be distinct and in range");
        keep[c] = true;
    }
    std::vector<std::size_t> drop;
    for (std::size_t i = 0; i < p.dim(); ++i)
        if (!keep[i])
            drop.push_back(i);
    std::vector<Constraint> cs = eliminate_all(p.constraints(), drop);
    std::vector<Constraint> out;
    for (const Constraint& c : cs)
    {
        Constraint r;
        r.rel = c.rel;
        r.b = c.b;
        for (std::size_t k : coords)
            r.a.push_back(c.a[k]);
        out.push_back(std::move(r));
    }
    return HalfOpenPolytope::trusted(coords.size(), std::move(out)).without_redundant_constraints();
}

}   // namespace pictau
