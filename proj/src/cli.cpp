#include "pictau/cli.hpp"

#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <CLI11.hpp>
#include <json.hpp>
#include "pictau/covers.hpp"
#include "pictau/ehrhart.hpp"
#include "pictau/errors.hpp"
#include "pictau/geometry.hpp"
#include "pictau/strata.hpp"

namespace pictau::cli {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Input
// ---------------------------------------------------------------------------

Rational read_rational(const json& j, const std::string& what)
{
    if (j.is_number_integer())
        return Rational(j.get<long long>());
    if (j.is_string())
        return parse_rational(j.get<std::string>());
    throw ParseError(what + ": expected an integer or a \"p/q\" string");
}

Integer read_integer(const json& j, const std::string& what)
{
    Rational r = read_rational(j, what);
    if (denominator(r) != 1)
        throw ParseError(what + ": expected an integer");
    return numerator(r);
}

const json& field(const json& j, const char* key, const std::string& what)
{
    if (!j.is_object() || !j.contains(key))
        throw ParseError(what + ": missing \"" + key + "\"");
    return j.at(key);
}

const json& array_field(const json& j, const char* key, const std::string& what)
{
    const json& a = field(j, key, what);
    if (!a.is_array())
        throw ParseError(what + ": \"" + key + "\" must be an array");
    return a;
}

QVector read_vector(const json& j, const std::string& what)
{
    if (!j.is_array())
        throw ParseError(what + ": expected an array");
    QVector v;
    for (const json& x : j)
        v.push_back(read_rational(x, what));
    return v;
}

struct Problem
{
    std::optional<LineArrangement> lines;
    std::optional<CurveModel> curve;
    std::optional<LogPair> pair;
    std::vector<std::pair<Integer, QVector>> generators;   // (bundle degree, alpha)
};

Problem read_problem(const json& j)
{
    Problem p;
    const json& variety = field(j, "variety", "problem");
    std::string name = variety.is_string() ? variety.get<std::string>()
                     : variety.is_object() && variety.contains("name") && variety["name"].is_string()
                         ? variety["name"].get<std::string>()
                         : "";
    const json& divisor = field(j, "divisor", "problem");
    if (name == "P2")
    {
        std::vector<QVector> lines;
        for (const json& l : array_field(divisor, "lines", "divisor"))
        {
            QVector v = read_vector(l, "line");
            if (v.size() != 3)
                throw ParseError("line: expected three coefficients");
            lines.push_back(std::move(v));
        }
        p.lines.emplace(std::move(lines));
        p.pair.emplace(*p.lines);
    }
    else if (name == "P1")
    {
        std::vector<std::optional<Rational>> pts;
        for (const json& x : array_field(divisor, "points", "divisor"))
        {
            if (x.is_string() && x.get<std::string>() == "inf")
                pts.emplace_back(std::nullopt);
            else
                pts.emplace_back(read_rational(x, "point"));
        }
        p.curve.emplace(std::move(pts));
        p.pair.emplace(*p.curve);
    }
    else
        throw ParseError("variety must be \"P2\" or \"P1\"");

    if (j.contains("subgroup"))
    {
        if (!j["subgroup"].is_array())
            throw ParseError("subgroup must be an array");
        for (const json& g : j["subgroup"])
            p.generators.emplace_back(read_integer(field(g, "bundle_degree", "generator"), "bundle_degree"),
                                      read_vector(field(g, "alpha", "generator"), "alpha"));
    }
    return p;
}

struct PolytopeInput
{
    HalfOpenPolytope polytope;
    Lattice lattice;
};

PolytopeInput read_polytope(const json& j)
{
    const json& dim_j = field(j, "dim", "polytope");
    if (!dim_j.is_number_unsigned())
        throw ParseError("polytope: \"dim\" must be a nonnegative integer");
    const auto dim = dim_j.get<std::size_t>();
    std::vector<Constraint> cs;
    for (const json& c : array_field(j, "constraints", "polytope"))
    {
        Constraint k;
        k.a = read_vector(field(c, "a", "constraint"), "constraint");
        k.b = read_rational(field(c, "b", "constraint"), "constraint");
        const json& rel = field(c, "rel", "constraint");
        const std::string r = rel.is_string() ? rel.get<std::string>() : "";
        if (r == "le")
            k.rel = Relation::le;
        else if (r == "lt")
            k.rel = Relation::lt;
        else if (r == "eq")
            k.rel = Relation::eq;
        else
            throw ParseError("constraint: \"rel\" must be le, lt or eq");
        if (k.a.size() != dim)
            throw SemanticError("constraint has " + std::to_string(k.a.size()) + " coefficients, expected "
                                + std::to_string(dim));
        cs.push_back(std::move(k));
    }
    Lattice lattice = Lattice::full(dim);
    if (j.contains("lattice"))
    {
        std::vector<ZVector> gens;
        if (!j["lattice"].is_array())
            throw ParseError("polytope: \"lattice\" must be an array of generators");
        for (const json& g : j["lattice"])
        {
            ZVector v;
            for (const Rational& x : read_vector(g, "lattice generator"))
            {
                if (denominator(x) != 1)
                    throw ParseError("lattice generator: expected integers");
                v.push_back(numerator(x));
            }
            if (v.size() != dim)
                throw SemanticError("lattice generator has the wrong length");
            gens.push_back(std::move(v));
        }
        lattice = Lattice(dim, gens);
    }
    return {HalfOpenPolytope(dim, std::move(cs)), std::move(lattice)};
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

json to_json(const Integer& z)
{
    if (z >= std::numeric_limits<long long>::min() && z <= std::numeric_limits<long long>::max())
        return z.convert_to<long long>();
    return to_string(z);
}

json to_json(const Rational& q) { return to_string(q); }

template <typename T>
json to_json(const std::vector<T>& v)
{
    json a = json::array();
    for (const T& x : v)
        a.push_back(to_json(x));
    return a;
}

json to_json(const ZMatrix& m)
{
    json a = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        a.push_back(to_json(m.row(i)));
    return a;
}

json to_json(const Constraint& c)
{
    static const char* names[] = {"le", "lt", "eq"};
    return {{"a", to_json(c.a)}, {"b", to_json(c.b)}, {"rel", names[static_cast<int>(c.rel)]}};
}

json to_json(const QuasiPolynomial& f)
{
    json polys = json::array();
    for (const QVector& p : f.polys())
        polys.push_back(to_json(p));
    return {{"period", to_json(f.period())}, {"polynomials", polys}, {"torus_exponent", f.torus_exponent()}};
}

json to_json(const BoundaryRealization& x)
{
    return {{"alpha", to_json(x.alpha())}, {"bundle", to_json(x.bundle())}, {"torsion_label", to_json(x.torsion())}};
}

json describe_variety(const Problem& p)
{
    json j;
    if (p.lines)
    {
        j["variety"] = "P2";
        json lines = json::array();
        for (const QVector& l : p.lines->lines())
            lines.push_back(to_json(l));
        j["lines"] = lines;
    }
    else
    {
        j["variety"] = "P1";
        json pts = json::array();
        for (const auto& x : p.curve->points())
            pts.push_back(x ? to_json(*x) : json("inf"));
        j["points"] = pts;
    }
    return j;
}

json describe_piece(const BoundaryPiece& piece)
{
    json constraints = json::array();
    for (const Constraint& c : piece.polytope.constraints())
        constraints.push_back(to_json(c));
    json vs = json::array();
    for (const QVector& v : vertices(piece.polytope))
        vs.push_back(to_json(v));
    json rep = to_json(piece.realization());
    rep["torsion_order"] = to_json(piece.order);
    return {{"id", piece.id},
            {"parent", piece.parent},
            {"base_class", to_json(piece.base_class)},
            {"constraints", constraints},
            {"closure_vertices", vs},
            {"representative", rep}};
}

/// Plain-text rendering: one "path = value" line per scalar.
void render_table(const json& j, const std::string& path, std::ostream& out)
{
    auto scalar_array = [](const json& a) {
        for (const json& x : a)
            if (x.is_structured())
                return false;
        return true;
    };
    if (j.is_object())
    {
        for (const auto& [k, v] : j.items())
            render_table(v, path.empty() ? k : path + "." + k, out);
        return;
    }
    if (j.is_array() && !scalar_array(j))
    {
        for (std::size_t i = 0; i < j.size(); ++i)
            render_table(j[i], path + "[" + std::to_string(i) + "]", out);
        return;
    }
    std::string text;
    if (j.is_string())
        text = j.get<std::string>();
    else if (j.is_array())
    {
        text = "[";
        for (std::size_t i = 0; i < j.size(); ++i)
            text += (i ? ", " : "") + (j[i].is_string() ? j[i].get<std::string>() : j[i].dump());
        text += "]";
    }
    else
        text = j.dump();
    out << path << " = " << text << "\n";
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

struct Options
{
    std::string input = "-";
    bool table = false;
    bool verify = false;
    bool qp = false;
    int qmax = -1;
    int q = 1;
    std::optional<long long> n;
};

json cmd_decompose(const Problem& p)
{
    const LogPair& pair = *p.pair;
    json j = describe_variety(p);
    json pieces = json::array();
    for (const BoundaryPiece& piece : pair.decomposition().pieces)
        pieces.push_back(describe_piece(piece));
    json centers = json::array();
    if (pair.surface())
        for (const QVector& pt : pair.surface()->points())
            centers.push_back(to_json(pt));
    j["command"] = "decompose";
    j["polytopes"] = pieces;
    j["resolution"] = {{"blown_up_points", centers}, {"e_matrix", to_json(pair.resolution().e_matrix)}};
    return j;
}

json strata_json(const StrataTable& t)
{
    json strata = json::array();
    for (const auto& [key, records] : t.entries)
    {
        json ids = json::array();
        for (const StratumRecord& r : records)
            ids.push_back(r.piece);
        strata.push_back({{"q", key.first}, {"i", key.second}, {"polytopes", ids}});
    }
    json hq = json::array();
    for (const auto& [id, hs] : t.hq_by_piece)
        hq.push_back({{"id", id}, {"h", to_json(hs)}});
    return {{"q_max", t.q_max}, {"strata", strata}, {"hq_by_polytope", hq}};
}

json cmd_strata(const Problem& p, const Options& o)
{
    const StrataTable t = compute_strata(*p.pair, o.qmax);
    json j = describe_variety(p);
    j.update(strata_json(t));
    json pieces = json::array();
    for (const BoundaryPiece& piece : t.pieces)
        pieces.push_back({{"id", piece.id}, {"base_class", to_json(piece.base_class)},
                          {"representative_alpha", to_json(piece.interior_point)}});
    j["polytopes"] = pieces;
    j["command"] = "strata";
    return j;
}

json cmd_hodge(const Problem& p, const Options& o)
{
    const LogPair& pair = *p.pair;
    if (o.q < 0 || o.q > pair.dimension())
        throw SemanticError("--q must lie between 0 and the dimension of X");
    json j = describe_variety(p);
    j["command"] = "hodge";
    j["q"] = o.q;
    std::optional<QuasiPolynomial> f;
    if (o.qp || o.verify || !o.n)
        f = congruence_hodge_qp(pair, o.q);
    if (f)
        j["quasi_polynomial"] = to_json(*f);
    if (o.n)
    {
        if (*o.n < 1)
            throw SemanticError("--N must be positive");
        j["N"] = *o.n;
        j["value"] = to_json(congruence_hodge(pair, o.q, *o.n));
    }
    if (o.verify)
    {
        json checks = json::array();
        for (long n = 1; n <= 10; ++n)
        {
            const Integer direct = congruence_hodge(pair, o.q, n);
            if (f->eval_integer(n) != direct)
                throw InternalError("quasi-polynomial disagrees with direct summation at N = " + std::to_string(n));
            checks.push_back({{"N", n}, {"value", to_json(direct)}});
        }
        j["verified"] = checks;
    }
    return j;
}

json cmd_cover(const Problem& p)
{
    const LogPair& pair = *p.pair;
    std::vector<BoundaryRealization> gens;
    for (const auto& [deg, alpha] : p.generators)
        gens.emplace_back(pair.divisors(), ZVector{deg}, alpha);
    const CharacterSubgroup g(pair.divisors(), gens);
    const BuildingData b = building_data(g);

    json j = describe_variety(p);
    j["command"] = "cover";
    j["order"] = g.order();
    j["invariant_factors"] = to_json(g.invariant_factors());
    json chars = json::array();
    for (const BoundaryRealization& x : g.elements())
        chars.push_back(to_json(x));
    j["characters"] = chars;
    json eps = json::array();
    for (const auto& row : b.epsilon)
    {
        json r = json::array();
        for (const ZVector& e : row)
            r.push_back(to_json(e));
        eps.push_back(r);
    }
    j["building_data"] = {{"inertia", to_json(b.inertia)}, {"indices", to_json(b.indices)}, {"epsilon", eps}};
    j["pushforward"] = {{"on_x", to_json(pushforward_decomposition(g))},
                        {"on_resolution", to_json(pushforward_decomposition(g, pair.resolution()))}};
    json hodge = json::object();
    for (int q = 0; q <= pair.dimension(); ++q)
        hodge[std::to_string(q)] = to_json(cover_hodge(pair, g, q));
    j["hodge"] = hodge;
    if (p.curve)
    {
        const Integer genus = riemann_hurwitz_genus(*p.curve, g);
        const bool agree = genus == cover_hodge(pair, g, 1);
        j["riemann_hurwitz"] = {{"genus", to_json(genus)}, {"check", agree ? "OK" : "MISMATCH"}};
        if (!agree)
            throw InternalError("cover Hodge number disagrees with Riemann–Hurwitz");
    }
    return j;
}

json cmd_ehrhart(const PolytopeInput& in, const Options& o)
{
    json j;
    j["command"] = "ehrhart";
    j["dim"] = in.polytope.dim();
    if (o.n)
    {
        if (*o.n < 1)
            throw SemanticError("--N must be positive");
        j["N"] = *o.n;
        j["count"] = to_json(count_lattice_points(in.polytope, in.lattice, *o.n));
    }
    if (o.qp || !o.n)
        j["quasi_polynomial"] = to_json(ehrhart_qp(in.polytope, in.lattice));
    return j;
}

json cmd_count(const json& doc, const Options& o)
{
    if (!o.n || *o.n < 1)
        throw SemanticError("count needs a positive --N");
    json j;
    j["command"] = "count";
    j["N"] = *o.n;
    if (doc.is_object() && doc.contains("dim"))
    {
        const PolytopeInput in = read_polytope(doc);
        j["lattice_points"] = to_json(count_lattice_points(in.polytope, in.lattice, *o.n));
        return j;
    }
    const Problem p = read_problem(doc);
    j.update(describe_variety(p));
    j["torsion_points"] = torsion_points(p.pair->decomposition(), *o.n).size();
    return j;
}

json read_document(const std::string& path, std::istream& in)
{
    std::string text;
    if (path == "-")
        text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    else
    {
        std::ifstream f(path);
        if (!f)
            throw ParseError("cannot open " + path);
        text.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
    }
    try
    {
        return json::parse(text);
    }
    catch (const json::parse_error& e)
    {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

}   // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Parabolic Picard groups, multiplier-ideal strata and abelian covers"};
    app.require_subcommand(1);
    Options o;
    long long n_value = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("input", o.input, "JSON input file (default: stdin)");
        sub->add_flag("--json", "JSON report (default)");
        sub->add_flag("--table", o.table, "plain-text report");
    };
    CLI::App* decompose = app.add_subcommand("decompose", "polytope decomposition of the boundaries");
    CLI::App* strata = app.add_subcommand("strata", "the strata V^q_i");
    CLI::App* hodge = app.add_subcommand("hodge", "Hodge numbers h^q(N) of congruence covers");
    CLI::App* cover = app.add_subcommand("cover", "abelian cover attached to a subgroup");
    CLI::App* ehrhart = app.add_subcommand("ehrhart", "Ehrhart quasi-polynomial of a polytope");
    CLI::App* count = app.add_subcommand("count", "torsion points of a problem or lattice points of a polytope");
    for (CLI::App* sub : {decompose, strata, hodge, cover, ehrhart, count})
        add_common(sub);
    strata->add_option("--qmax", o.qmax, "largest q (default: dim X)");
    hodge->add_option("--q", o.q, "degree q (default 1)");
    CLI::Option* n_hodge = hodge->add_option("--N", n_value, "evaluate at N");
    hodge->add_flag("--qp", o.qp, "report the quasi-polynomial");
    hodge->add_flag("--verify", o.verify, "check the quasi-polynomial against direct summation for N <= 10");
    CLI::Option* n_ehrhart = ehrhart->add_option("--N", n_value, "count at dilation N");
    ehrhart->add_flag("--qp", o.qp, "report the quasi-polynomial");
    CLI::Option* n_count = count->add_option("--N", n_value, "torsion order or dilation")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try
    {
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp&)
    {
        out << app.help();
        return ok;
    }
    catch (const CLI::ParseError& e)
    {
        err << "usage error: " << e.what() << "\n";
        return parse_error;
    }
    if (n_hodge->count() || n_ehrhart->count() || n_count->count())
        o.n = n_value;

    try
    {
        const json doc = read_document(o.input, in);
        json report;
        if (decompose->parsed())
            report = cmd_decompose(read_problem(doc));
        else if (strata->parsed())
            report = cmd_strata(read_problem(doc), o);
        else if (hodge->parsed())
            report = cmd_hodge(read_problem(doc), o);
        else if (cover->parsed())
            report = cmd_cover(read_problem(doc));
        else if (ehrhart->parsed())
            report = cmd_ehrhart(read_polytope(doc), o);
        else
            report = cmd_count(doc, o);

        if (o.table)
            render_table(report, "", out);
        else
            out << report.dump(2) << "\n";
        return ok;
    }
    catch (const ParseError& e)
    {
        err << "parse error: " << e.what() << "\n";
        return parse_error;
    }
    catch (const json::exception& e)
    {
        err << "parse error: " << e.what() << "\n";
        return parse_error;
    }
    catch (const SemanticError& e)
    {
        err << "error: " << e.what() << "\n";
        return semantic_error;
    }
    catch (const std::exception& e)
    {
        err << "internal error: " << e.what() << "\n";
        return internal_error;
    }
}

}   // namespace pictau::cli
