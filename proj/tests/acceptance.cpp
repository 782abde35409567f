// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <json.hpp>
#include "models.hpp"
#include "pictau/cli.hpp"
#include "pictau/covers.hpp"
#include "pictau/ehrhart.hpp"
#include "pictau/strata.hpp"
#include "support.hpp"

using namespace pictau;
using namespace testing;
using nlohmann::json;

namespace {

struct Failure : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

void expect(bool ok, const std::string& what)
{
    if (!ok)
        throw Failure(what);
}

template <typename T>
std::string str(const T& v)
{
    std::ostringstream s;
    s << v;
    return s.str();
}

json cli_json(const std::vector<std::string>& args, const std::string& input)
{
    std::istringstream in(input);
    std::ostringstream out, err;
    int code = cli::run(args, in, out, err);
    expect(code == 0, "cli exit " + str(code) + ": " + err.str());
    return json::parse(out.str());
}

const char* five_lines_input = R"({"variety": "P2", "divisor": {"lines":
    [[1, 0, 0], [0, 1, 0], [1, 1, 0], [1, -1, 0], [1, 2, 0]]}})";

/// Random realization over a divisor set whose components all have degree 1.
BoundaryRealization random_element(Rng& rng, const DivisorSetPtr& d, long max_den)
{
    const std::size_t s = d->size();
    const long den = rng.uniform(1, max_den);
    QVector alpha(s);
    Rational sum = 0;
    for (std::size_t i = 0; i + 1 < s; ++i)
    {
        alpha[i] = Rational(rng.uniform(0, den - 1), den);
        sum += alpha[i];
    }
    alpha[s - 1] = frac(-sum);
    sum += alpha[s - 1];
    return BoundaryRealization(d, ZVector{numerator(sum)}, alpha);
}

// 1 ------------------------------------------------------------------------

void five_lines_decomposition()
{
    json dec = cli_json({"decompose"}, five_lines_input);
    json strata = cli_json({"strata"}, five_lines_input);

    expect(dec["polytopes"].size() == 5, "expected 5 polytopes");
    for (std::size_t k = 0; k < 5; ++k)
        expect(dec["polytopes"][k]["base_class"] == json::array({k}), "base class of P_" + str(k));

    // Each piece is exactly {α ∈ [0,1)^5 : Σα = k}: sample the cube on a grid of denominator 12.
    BoundaryDecomposition b = decompose_boundaries(five_concurrent_lines().divisors());
    Rng rng(1);
    for (int t = 0; t < 2000; ++t)
    {
        QVector alpha(5);
        Rational sum = 0;
        for (Rational& a : alpha)
            sum += a = Rational(rng.uniform(0, 11), 12);
        if (t % 2 == 0)   // half the samples on some hyperplane Σα = k
        {
            alpha[4] = frac(-(sum - alpha[4]));
            sum = std::accumulate(alpha.begin(), alpha.end(), Rational(0));
        }
        for (std::size_t k = 0; k < 5; ++k)
            expect(b.pieces[k].polytope.contains(alpha) == (sum == Rational(static_cast<long>(k))),
                   "membership in P_" + str(k));
    }

    json expected = json::array({{{"q", 1}, {"i", 1}, {"polytopes", {2, 3, 4}}},
                                 {{"q", 1}, {"i", 2}, {"polytopes", {3, 4}}},
                                 {{"q", 1}, {"i", 3}, {"polytopes", {4}}},
                                 {{"q", 2}, {"i", 1}, {"polytopes", {0}}}});
    expect(strata["strata"] == expected, "strata list: " + strata["strata"].dump());
}

// 2 ------------------------------------------------------------------------

void five_lines_hodge()
{
    LogPair pair(five_concurrent_lines());
    QuasiPolynomial f = congruence_hodge_qp(pair, 1);
    for (long n = 1; n <= 10; ++n)
        expect(f.eval_integer(n) == congruence_hodge(pair, 1, n), "qp vs direct at N=" + str(n));
    expect(f.eval_integer(2) == 5, "h1(2) = 5");

    json cli = cli_json({"hodge", "--q", "1", "--N", "2"}, five_lines_input);
    expect(cli["value"] == 5, "cli h1(2)");

    // The pencil projects the arrangement to five points on the line; the
    // Z_2^4 cover branched there has genus 5.
    CurveModel curve = points_on_p1(5);
    LogPair cpair(curve);
    std::vector<BoundaryRealization> gens;
    for (std::size_t i = 0; i < 4; ++i)
    {
        QVector alpha(5);
        alpha[i] = alpha[4] = Rational(1, 2);
        gens.emplace_back(cpair.divisors(), ZVector{Integer(1)}, alpha);
    }
    CharacterSubgroup g(cpair.divisors(), gens);
    expect(g.order() == 16, "Z_2^4 order");
    expect(riemann_hurwitz_genus(curve, g) == 5, "Riemann-Hurwitz genus 5");
    expect(cover_hodge(cpair, g, 1) == 5, "curve cover h1");
}

// 3 ------------------------------------------------------------------------

int riemann_hurwitz_sweep()
{
    int cases = 0;
    for (std::size_t k = 3; k <= 6; ++k)
    {
        CurveModel curve = points_on_p1(k);
        LogPair pair(curve);
        for (long n = 2; n <= 8; ++n)
        {
            std::vector<long> a(k, 1);
            for (;;)
            {
                long sum = std::accumulate(a.begin(), a.end(), 0L);
                long g = n;
                for (long x : a)
                    g = std::gcd(g, x);
                if (sum % n == 0 && g == 1)
                {
                    QVector alpha;
                    for (long x : a)
                        alpha.emplace_back(x, n);
                    BoundaryRealization gen(pair.divisors(), ZVector{Integer(sum / n)}, alpha);
                    CharacterSubgroup sub(pair.divisors(), {gen});
                    expect(sub.order() == static_cast<std::size_t>(n), "cyclic order");
                    Integer genus = riemann_hurwitz_genus(curve, sub);
                    expect(cover_hodge(pair, sub, 1) == genus,
                           "N=" + str(n) + " k=" + str(k) + " genus " + str(genus));
                    ++cases;
                }
                std::size_t i = 0;
                while (i < k && a[i] == n - 1)
                    a[i++] = 1;
                if (i == k)
                    break;
                ++a[i];
            }
        }
    }
    return cases;
}

// 4 ------------------------------------------------------------------------

struct RandomPolytope
{
    std::vector<Constraint> cs;
    std::vector<Rational> lo, hi;
};

Relation random_rel(Rng& rng) { return rng.coin() ? Relation::lt : Relation::le; }

/// Box with bounds in (1/d)Z plus an optional 0/±1 cut; all vertices then lie in (1/d)Z^n.
RandomPolytope random_polytope(Rng& rng, std::size_t dim)
{
    RandomPolytope p;
    const long d = rng.uniform(1, 4);
    for (std::size_t i = 0; i < dim; ++i)
    {
        Rational a(rng.uniform(-d, d), d), b = a + Rational(rng.uniform(0, 2 * d), d);
        p.lo.push_back(a);
        p.hi.push_back(b);
        QVector e(dim), ne(dim);
        e[i] = 1;
        ne[i] = -1;
        p.cs.push_back({e, b, random_rel(rng)});
        p.cs.push_back({ne, -a, random_rel(rng)});
    }
    if (dim > 1 && rng.coin())
    {
        QVector c(dim);
        for (Rational& x : c)
            x = rng.uniform(-1, 1);
        p.cs.push_back({c, Rational(rng.uniform(-d, 2 * d), d), random_rel(rng)});
    }
    return p;
}

void ehrhart_oracle()
{
    Rng rng(4);
    for (int t = 0; t < 50; ++t)
    {
        const std::size_t dim = static_cast<std::size_t>(rng.uniform(1, 3));
        RandomPolytope r = random_polytope(rng, dim);
        HalfOpenPolytope p(dim, r.cs);
        for (const QVector& v : vertices(p))
            expect(common_denominator(v) <= 4, "vertex denominator bound");
        QuasiPolynomial f = ehrhart_qp(p, Lattice::full(dim));
        const long m = f.period().convert_to<long>();
        for (long n = 1; n <= 3 * m + 3; ++n)
        {
            const long expected = brute_force_count(r.cs, r.lo, r.hi, n);
            expect(f.eval_integer(n) == expected, "polytope " + str(t) + " N=" + str(n));
            expect(count_lattice_points(p, Lattice::full(dim), n) == expected, "lattice_points " + str(t));
        }
    }
}

// 5 ------------------------------------------------------------------------

void coset_oracle()
{
    Rng rng(5);
    for (int t = 0; t < 20; ++t)
    {
        const std::size_t dim = static_cast<std::size_t>(rng.uniform(1, 3));
        RandomPolytope r = random_polytope(rng, dim);
        HalfOpenPolytope box(dim, r.cs);

        std::vector<ZVector> gens;
        const std::size_t rank = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(dim)));
        for (std::size_t j = 0; j < rank; ++j)
        {
            ZVector g(dim);
            for (Integer& x : g)
                x = rng.uniform(-2, 2);
            gens.push_back(g);
        }
        Lattice lam(dim, gens);

        // w: a rational point of span(lam).
        QVector w(dim);
        const long den = rng.uniform(1, 4);
        for (std::size_t j = 0; j < lam.rank(); ++j)
        {
            Rational c(rng.uniform(-den, den), den);
            for (std::size_t i = 0; i < dim; ++i)
                w[i] += c * Rational(lam.basis()(j, i));
        }

        QMatrix sub(0, dim);
        if (rng.coin())
        {
            QVector eq(dim);
            for (Rational& x : eq)
                x = rng.uniform(-1, 1);
            sub = QMatrix::from_rows({eq}, dim);
        }

        QuasiPolynomial f = coset_count_qp(box, sub, lam, w);
        for (long n = 1; n <= 12; ++n)
        {
            // y ranges over lam with (N w + y)/N ∈ W ∩ box, i.e. y ∈ N(box − w).
            std::vector<long> lo, hi;
            for (std::size_t i = 0; i < dim; ++i)
            {
                lo.push_back(ceil((r.lo[i] - w[i]) * n).convert_to<long>());
                hi.push_back(floor((r.hi[i] - w[i]) * n).convert_to<long>());
            }
            long expected = 0;
            for_each_box_point(lo, hi, [&](const std::vector<long>& y) {
                ZVector zy;
                QVector x(dim);
                for (std::size_t i = 0; i < dim; ++i)
                {
                    zy.emplace_back(y[i]);
                    x[i] = (Rational(n) * w[i] + Rational(y[i])) / Rational(n);
                }
                if (!lam.contains(zy))
                    return;
                for (std::size_t e = 0; e < sub.rows(); ++e)
                {
                    Rational s = 0;
                    for (std::size_t i = 0; i < dim; ++i)
                        s += sub(e, i) * x[i];
                    if (s != 0)
                        return;
                }
                for (const Constraint& c : r.cs)
                    if (!oracle_holds(c, x, 1))
                        return;
                ++expected;
            });
            expect(f.eval_integer(n) == expected, "instance " + str(t) + " N=" + str(n) + ": " +
                                                      str(f.eval_integer(n)) + " vs " + str(expected));
        }
    }
}

// 6 ------------------------------------------------------------------------

void group_algebra()
{
    Rng rng(6);
    std::vector<SurfaceResolution> models = {build_log_resolution(five_concurrent_lines()),
                                             build_log_resolution(one_triple_point())};
    for (int t = 0; t < 1000; ++t)
    {
        const ResolutionData& r = models[t % 2].data;
        const DivisorSetPtr& d = r.source;
        BoundaryRealization a = random_element(rng, d, 12), b = random_element(rng, d, 12),
                            c = random_element(rng, d, 12);
        const BoundaryRealization id = BoundaryRealization::identity(d);
        const BoundaryRealization ab = group_law(a, b);

        expect(group_law(ab, c) == group_law(a, group_law(b, c)), "associativity");
        expect(ab == group_law(b, a), "commutativity");
        expect(group_law(a, id) == a, "identity");

        // Inverse: (−L + Σ_{α_i≠0} D_i, 1 − α) off the zero coordinates.
        ZVector support(d->size());
        for (std::size_t i = 0; i < d->size(); ++i)
            support[i] = a.alpha()[i] == 0 ? 0 : 1;
        const ZVector shift = d->combination(support);
        const BoundaryRealization inv = inverse(a);
        for (std::size_t k = 0; k < shift.size(); ++k)
            expect(inv.bundle()[k] == shift[k] - a.bundle()[k], "inverse bundle");
        for (std::size_t i = 0; i < d->size(); ++i)
            expect(inv.alpha()[i] == (a.alpha()[i] == 0 ? Rational(0) : 1 - a.alpha()[i]), "inverse alpha");
        expect(group_law(a, inv).is_identity(), "a · a⁻¹");

        // Fractional parts: product carries {α+α'} and L+L' − ⌊α+α'⌋·D.
        ZVector carry(d->size());
        for (std::size_t i = 0; i < d->size(); ++i)
        {
            const Rational s = a.alpha()[i] + b.alpha()[i];
            expect(ab.alpha()[i] == frac(s), "fractional part of product");
            carry[i] = floor(s);
        }
        const ZVector corr = d->combination(carry);
        for (std::size_t k = 0; k < corr.size(); ++k)
            expect(ab.bundle()[k] == a.bundle()[k] + b.bundle()[k] - corr[k], "carry of product");

        // Pullback to the resolution.
        const BoundaryRealization pa = pullback_parabolic(a, r), pb = pullback_parabolic(b, r);
        expect(pullback_parabolic(ab, r) == group_law(pa, pb), "pullback is a homomorphism");
        expect(pullback_parabolic(id, r).is_identity(), "pullback of identity");
        const QVector e = r.e(a.alpha());
        expect(pa.alpha() == monodromy_pullback(a.alpha(), r), "pullback monodromy");
        for (std::size_t j = 0; j < e.size(); ++j)
            expect(pa.alpha()[j] == frac(e[j]), "pullback fractional part");
        expect(torsion_order(pa) == torsion_order(a), "pullback keeps torsion order");
        expect((pa == pb) == (a == b), "pullback injective on torsion");
        expect(pa.is_identity() == a.is_identity(), "trivial kernel");

        // Deligne extension μ*L + ⌊e⌋E and pullback μ*L − ⌊e⌋E average to μ*L.
        const ZVector ext = deligne_extension_class(a, r), mu = r.pull_back(a.bundle());
        for (std::size_t k = 0; k < mu.size(); ++k)
            expect(ext[k] + pa.bundle()[k] == 2 * mu[k], "extension and pullback classes");
    }
}

// 7 ------------------------------------------------------------------------

void pardini_consistency()
{
    Rng rng(7);
    std::vector<DivisorSetPtr> sets = {five_concurrent_lines().divisors(), one_triple_point().divisors(),
                                       triangle().divisors(), points_on_p1(4).divisors(),
                                       points_on_p1(5).divisors()};
    for (int t = 0; t < 20; ++t)
    {
        const DivisorSetPtr& d = sets[t % sets.size()];
        std::vector<BoundaryRealization> gens;
        const long count = rng.uniform(1, 2);
        for (long j = 0; j < count; ++j)
            gens.push_back(random_element(rng, d, 6));
        CharacterSubgroup g(d, gens);
        BuildingData b = building_data(g);
        const auto& chars = g.elements();
        for (std::size_t x = 0; x < chars.size(); ++x)
            for (std::size_t y = 0; y < chars.size(); ++y)
            {
                const ZVector& eps = b.epsilon[x][y];
                expect(eps == b.epsilon[y][x], "epsilon symmetry");
                const BoundaryRealization prod = group_law(chars[x], chars[y]);
                const ZVector corr = d->combination(eps);
                for (std::size_t k = 0; k < corr.size(); ++k)
                    expect(chars[x].bundle()[k] + chars[y].bundle()[k] == prod.bundle()[k] + corr[k],
                           "linear relation");
                for (std::size_t i = 0; i < d->size(); ++i)
                {
                    expect(eps[i] == 0 || eps[i] == 1, "epsilon in {0,1}");
                    expect(b.indices[x][i] == numerator(chars[x].alpha()[i] * Rational(b.inertia[i])),
                           "index");
                }
            }
    }
}

// 8 ------------------------------------------------------------------------

void cohomology_oracle()
{
    BlowupSurface plane({});
    for (long d = 0; d <= 6; ++d)
        expect(h0_blowup(plane, ZVector{Integer(d)}) == (d + 1) * (d + 2) / 2, "h0(dH) d=" + str(d));

    Rng rng(8);
    std::vector<BlowupSurface> surfaces = {plane, build_log_resolution(five_concurrent_lines()).surface,
                                           build_log_resolution(one_triple_point()).surface,
                                           BlowupSurface({qv({"1", "0", "0"}), qv({"0", "1", "0"}),
                                                          qv({"0", "0", "1"})})};
    for (int t = 0; t < 100; ++t)
    {
        const BlowupSurface& s = surfaces[t % surfaces.size()];
        ZVector cls(s.ns_rank());
        cls[0] = rng.uniform(-6, 6);
        for (std::size_t k = 1; k < cls.size(); ++k)
            cls[k] = rng.uniform(-3, 3);
        ZVector dual = s.canonical();
        for (std::size_t k = 0; k < dual.size(); ++k)
            dual[k] -= cls[k];

        Integer alt = 0;
        for (int q = 0; q <= 2; ++q)
        {
            const Integer h = hq_blowup(s, cls, q);
            expect(h >= 0, "nonnegative h^q");
            expect(h == hq_blowup(s, dual, 2 - q), "Serre duality q=" + str(q));
            alt += q == 1 ? -h : h;
        }
        expect(alt == euler_char(s, cls), "Euler characteristic");
    }
    for (long d = -8; d <= 8; ++d)
        expect(hq_curve(d, 0) - hq_curve(d, 1) == d + 1, "curve Euler characteristic");
}

}   // namespace

int main()
{
    struct Criterion
    {
        int id;
        const char* name;
        double limit_seconds;   // 0 = untimed
        std::function<std::string()> body;
    };
    const std::vector<Criterion> criteria = {
        {1, "five concurrent lines: decomposition and strata", 5,
         [] { five_lines_decomposition(); return std::string(); }},
        {2, "five concurrent lines: h1(N) quasi-polynomial vs direct, N=1..10", 30,
         [] { five_lines_hodge(); return std::string(); }},
        {3, "cyclic curve covers vs Riemann-Hurwitz", 60,
         [] { return std::to_string(riemann_hurwitz_sweep()) + " cases"; }},
        {4, "Ehrhart quasi-polynomials vs brute force (50 polytopes)", 0,
         [] { ehrhart_oracle(); return std::string(); }},
        {5, "coset counts vs definitional brute force (20 instances)", 0,
         [] { coset_oracle(); return std::string(); }},
        {6, "parabolic group algebra (1000 random triples)", 0,
         [] { group_algebra(); return std::string(); }},
        {7, "building data consistency (20 subgroups)", 0,
         [] { pardini_consistency(); return std::string(); }},
        {8, "cohomology oracle", 0, [] { cohomology_oracle(); return std::string(); }},
    };

    int failed = 0;
    for (const Criterion& c : criteria)
    {
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = true;
        try
        {
            detail = c.body();
        }
        catch (const std::exception& e)
        {
            ok = false;
            detail = e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (ok && c.limit_seconds > 0 && secs >= c.limit_seconds)
        {
            ok = false;
            detail = "over the " + str(c.limit_seconds) + " s limit";
        }
        failed += ok ? 0 : 1;
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(2);
        line << (ok ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << " (" << secs << " s)";
        if (!detail.empty())
            line << ": " << detail;
        std::cout << line.str() << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
