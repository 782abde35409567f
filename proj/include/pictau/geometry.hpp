#pragma once

#include <cstddef>
#include <optional>
#include <vector>
#include "pictau/exact.hpp"
#include "pictau/parabolic.hpp"

namespace pictau {

/// Lines a·x + b·y + c·z = 0 in P², pairwise distinct.
class LineArrangement
{
    public:
        explicit LineArrangement(std::vector<QVector> lines);

        std::size_t size() const { return lines_.size(); }
        const std::vector<QVector>& lines() const { return lines_; }
        /// Boundary on P², every component of class H.
        DivisorSetPtr divisors() const;

    private:
        std::vector<QVector> lines_;
};

/// Homogeneous coordinates scaled so the first nonzero entry is 1.
QVector normalize_projective(QVector p);

struct SingularPoint
{
    QVector point;                    ///< normalized homogeneous coordinates
    std::vector<std::size_t> lines;   ///< indices of the lines through it

    std::size_t multiplicity() const { return lines.size(); }
};

/// Intersection points of at least two lines, sorted by coordinates.
std::vector<SingularPoint> singular_points(const LineArrangement& a);

/**
 * P² blown up at distinct points, with NS basis H, E_1..E_r, intersection
 * form diag(1, −1, …, −1) and K = −3H + Σ E_k. A class is written
 * (d, c_1, …, c_r) for dH + Σ c_k E_k.
 */
class BlowupSurface
{
    public:
        explicit BlowupSurface(std::vector<QVector> points);

        const std::vector<QVector>& points() const { return points_; }
        std::size_t ns_rank() const { return points_.size() + 1; }
        VarietyModel model() const { return VarietyModel::p2_blown_up(points_.size()); }
        ZVector canonical() const { return model().canonical_class; }
        Integer intersect(const ZVector& a, const ZVector& b) const;

    private:
        std::vector<QVector> points_;
};

struct SurfaceResolution
{
    BlowupSurface surface;
    std::vector<SingularPoint> centers;   ///< the blown-up points, in E order
    ResolutionData data;
};

/// Blows up every point where three or more lines meet.
SurfaceResolution build_log_resolution(const LineArrangement& a);

/// h⁰ of dH + Σ c_k E_k via fat-point conditions of multiplicity m_k = max(−c_k, 0).
Integer h0_blowup(const BlowupSurface& s, const ZVector& cls);
/// χ = 1 + L·(L − K)/2
Integer euler_char(const BlowupSurface& s, const ZVector& cls);
/// h^q for q ∈ {0,1,2}; h² by Serre duality, h¹ from χ.
Integer hq_blowup(const BlowupSurface& s, const ZVector& cls, int q);

/// Distinct points of P¹; nullopt stands for ∞.
class CurveModel
{
    public:
        explicit CurveModel(std::vector<std::optional<Rational>> points);

        std::size_t size() const { return points_.size(); }
        const std::vector<std::optional<Rational>>& points() const { return points_; }
        /// Boundary on P¹, every component of degree 1.
        DivisorSetPtr divisors() const;

    private:
        std::vector<std::optional<Rational>> points_;
};

/// h^q(P¹, O(degree)) for q ∈ {0,1}.
Integer hq_curve(const Integer& degree, int q);

}   // namespace pictau
