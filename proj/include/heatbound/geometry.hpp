#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "heatbound/common.hpp"

#include <json.hpp>

namespace heatbound {

enum class ShapeKind { interval, square, disc, annulus, l_shape, horseshoe };

std::string shape_name(ShapeKind kind);

// A C^2 parametric boundary piece, s in [0,1]. The catalog only needs straight
// lines and circular arcs, so positions, derivatives, curvature and nearest
// points are all closed-form.
class CurveSegment {
public:
    static CurveSegment line(Vec2 a, Vec2 b);
    // angle is swept linearly from angle0 to angle1 (either orientation);
    // a full circle uses |angle1 - angle0| = 2*pi.
    static CurveSegment arc(Vec2 center, double radius, double angle0, double angle1);

    Vec2 point(double s) const;
    Vec2 derivative(double s) const;
    Vec2 second_derivative(double s) const;
    double curvature(double) const { return curvature_; }
    double length() const { return length_; }
    bool is_arc() const { return kind_ == Kind::arc; }

    // Closed-form nearest point of the segment to z; s_out receives the
    // parameter of the minimizer.
    Vec2 nearest_point(const Vec2& z, double* s_out = nullptr) const;
    double distance(const Vec2& z) const { return heatbound::distance(nearest_point(z), z); }

private:
    enum class Kind { line, arc };
    Kind kind_ = Kind::line;
    Vec2 a_, b_;        // line endpoints
    Vec2 center_;       // arc data
    double radius_ = 0.0;
    double angle0_ = 0.0, angle1_ = 0.0;
    double length_ = 0.0;
    double curvature_ = 0.0;
};

struct BoundarySample {
    Vec2 point;
    Vec2 normal;    // unit, pointing into the region
    int segment = 0;
    double s = 0.0;
    double curvature = 0.0;
};

struct ReachWitness {
    Vec2 p;         // boundary point whose rolling ball fails
    double u = 0;   // signed offset along the normal (+/- r)
    Vec2 q;         // boundary point found strictly inside the ball
};

struct Reach {
    double r = 0.0;
    int certified_samples = 0;
    std::optional<ReachWitness> failure_witness;
};

// A planar (or 1D interval) region with parametric boundary, analytic inside
// test and exact distance-to-boundary.  Immutable after construction.
class Domain {
public:
    static Domain interval(double a, double b);
    static Domain square(double side);
    static Domain disc(double radius);
    static Domain annulus(double r_in, double r_out);
    static Domain l_shape(double arm, double thickness);
    static Domain horseshoe(double r_in, double r_out, double opening_angle);
    static Domain from_json(const nlohmann::json& spec);

    ShapeKind kind() const { return kind_; }
    int dimension() const { return dimension_; }
    const std::vector<CurveSegment>& boundary() const { return boundary_; }
    const std::vector<double>& params() const { return params_; }
    std::string describe() const;

    bool inside(const Vec2& p) const;                       // open region
    bool inside_closure(const Vec2& p, double tol) const;
    double distance_to_boundary(const Vec2& p) const;       // exact
    // nu_1: nearest boundary point (unique within the reach tube)
    Vec2 nearest_boundary_point(const Vec2& z, int* segment = nullptr, double* s = nullptr) const;

    std::array<Vec2, 2> bounding_box() const;
    double diameter() const;
    bool has_corners() const { return kind_ == ShapeKind::square || kind_ == ShapeKind::l_shape; }
    bool is_convex() const {
        return kind_ == ShapeKind::interval || kind_ == ShapeKind::square || kind_ == ShapeKind::disc;
    }
    // Vertex loop (CCW) for polygonal shapes; empty otherwise.
    const std::vector<Vec2>& polygon() const { return polygon_; }

private:
    Domain() = default;
    ShapeKind kind_ = ShapeKind::disc;
    int dimension_ = 2;
    std::vector<double> params_;
    std::vector<CurveSegment> boundary_;
    std::vector<Vec2> polygon_;
    // horseshoe cached data
    Vec2 cap_center_pos_, cap_center_neg_;
    double cap_radius_ = 0.0;
    double cut_angle_ = 0.0;

public:
    // horseshoe tip geometry (cap centres and the widened cut angle)
    Vec2 cap_center(int sign) const { return sign >= 0 ? cap_center_pos_ : cap_center_neg_; }
    double cap_radius() const { return cap_radius_; }
    double cut_angle() const { return cut_angle_; }
};

// Approximately arc-length-equidistributed boundary samples with inward
// normals.  For the 1D interval the two endpoints are returned.
std::vector<BoundarySample> boundary_samples(const Domain& domain, int count);

// Largest r (binary search to tol) such that both rolling balls
// B(p +/- r n(p); r) miss the boundary at every sampled p.  Ball emptiness is
// checked against exact segment distances.  Shapes with corners are rejected.
Reach estimate_reach(const Domain& domain, int samples, double tol);

// nu_2: identity inside the region, nearest boundary point within the tube.
Vec2 project_to_closure(const Domain& domain, const Reach& reach, const Vec2& z);

enum class NeighborhoodClass { omega_delta, boundary_delta, neither };

NeighborhoodClass classify_neighborhood(const Domain& domain, const Vec2& z, double delta);

}  // namespace heatbound
