#include "heatbound/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace heatbound {

namespace {
constexpr double kPi = 3.14159265358979323846;

double wrap_to_2pi(double a) {
    a = std::fmod(a, 2 * kPi);
    if (a < 0) a += 2 * kPi;
    return a;
}
}  // namespace

std::string shape_name(ShapeKind kind) {
    switch (kind) {
        case ShapeKind::interval: return "interval";
        case ShapeKind::square: return "square";
        case ShapeKind::disc: return "disc";
        case ShapeKind::annulus: return "annulus";
        case ShapeKind::l_shape: return "l_shape";
        case ShapeKind::horseshoe: return "horseshoe";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// CurveSegment

CurveSegment CurveSegment::line(Vec2 a, Vec2 b) {
    CurveSegment seg;
    seg.kind_ = Kind::line;
    seg.a_ = a;
    seg.b_ = b;
    seg.length_ = heatbound::distance(a, b);
    seg.curvature_ = 0.0;
    if (seg.length_ <= 0)
        throw GeometryError("degenerate boundary segment: zero length");
    return seg;
}

CurveSegment CurveSegment::arc(Vec2 center, double radius, double angle0, double angle1) {
    CurveSegment seg;
    seg.kind_ = Kind::arc;
    seg.center_ = center;
    seg.radius_ = radius;
    seg.angle0_ = angle0;
    seg.angle1_ = angle1;
    seg.length_ = radius * std::abs(angle1 - angle0);
    seg.curvature_ = 1.0 / radius;
    if (radius <= 0 || seg.length_ <= 0)
        throw GeometryError("degenerate boundary segment: zero length");
    return seg;
}

Vec2 CurveSegment::point(double s) const {
    if (kind_ == Kind::line) return a_ + (b_ - a_) * s;
    const double a = angle0_ + (angle1_ - angle0_) * s;
    return center_ + Vec2{radius_ * std::cos(a), radius_ * std::sin(a)};
}

Vec2 CurveSegment::derivative(double s) const {
    if (kind_ == Kind::line) return b_ - a_;
    const double a = angle0_ + (angle1_ - angle0_) * s;
    const double da = angle1_ - angle0_;
    return Vec2{-radius_ * std::sin(a), radius_ * std::cos(a)} * da;
}

Vec2 CurveSegment::second_derivative(double s) const {
    if (kind_ == Kind::line) return {0, 0};
    const double a = angle0_ + (angle1_ - angle0_) * s;
    const double da = angle1_ - angle0_;
    return Vec2{-radius_ * std::cos(a), -radius_ * std::sin(a)} * (da * da);
}

Vec2 CurveSegment::nearest_point(const Vec2& z, double* s_out) const {
    if (kind_ == Kind::line) {
        const Vec2 d = b_ - a_;
        double s = (z - a_).dot(d) / d.squared_norm();
        s = std::clamp(s, 0.0, 1.0);
        if (s_out) *s_out = s;
        return a_ + d * s;
    }
    const Vec2 w = z - center_;
    const double span = angle1_ - angle0_;
    if (w.norm() < 1e-300) {
        if (s_out) *s_out = 0.0;
        return point(0.0);
    }
    const double phi = std::atan2(w.y, w.x);
    if (std::abs(std::abs(span) - 2 * kPi) < 1e-12) {
        // full circle
        if (s_out) *s_out = wrap_to_2pi(span > 0 ? (phi - angle0_) : (angle0_ - phi)) / (2 * kPi);
        return center_ + w.normalized() * radius_;
    }
    const double lo = std::min(angle0_, angle1_);
    const double hi = std::max(angle0_, angle1_);
    // bring phi into [lo, lo + 2*pi) and test membership in [lo, hi]
    double cand = lo + wrap_to_2pi(phi - lo);
    if (cand <= hi) {
        if (s_out) *s_out = (cand - angle0_) / span;
        return center_ + Vec2{radius_ * std::cos(cand), radius_ * std::sin(cand)};
    }
    // interior point not on the arc: nearer endpoint wins
    const Vec2 p0 = point(0.0), p1 = point(1.0);
    if (heatbound::distance(z, p0) <= heatbound::distance(z, p1)) {
        if (s_out) *s_out = 0.0;
        return p0;
    }
    if (s_out) *s_out = 1.0;
    return p1;
}

// ---------------------------------------------------------------------------
// Domain catalog

Domain Domain::interval(double a, double b) {
    if (!(b > a)) throw GeometryError("interval needs a < b");
    Domain d;
    d.kind_ = ShapeKind::interval;
    d.dimension_ = 1;
    d.params_ = {a, b};
    return d;
}

Domain Domain::square(double side) {
    if (!(side > 0)) throw GeometryError("square needs side > 0");
    Domain d;
    d.kind_ = ShapeKind::square;
    d.params_ = {side};
    const double h = side / 2;
    d.polygon_ = {{-h, -h}, {h, -h}, {h, h}, {-h, h}};
    for (std::size_t i = 0; i < 4; ++i)
        d.boundary_.push_back(CurveSegment::line(d.polygon_[i], d.polygon_[(i + 1) % 4]));
    return d;
}

Domain Domain::disc(double radius) {
    if (!(radius > 0)) throw GeometryError("disc needs radius > 0");
    Domain d;
    d.kind_ = ShapeKind::disc;
    d.params_ = {radius};
    d.boundary_.push_back(CurveSegment::arc({0, 0}, radius, 0.0, 2 * kPi));
    return d;
}

Domain Domain::annulus(double r_in, double r_out) {
    if (!(0 < r_in && r_in < r_out)) throw GeometryError("annulus needs 0 < r_in < r_out");
    Domain d;
    d.kind_ = ShapeKind::annulus;
    d.params_ = {r_in, r_out};
    d.boundary_.push_back(CurveSegment::arc({0, 0}, r_out, 0.0, 2 * kPi));
    d.boundary_.push_back(CurveSegment::arc({0, 0}, r_in, 2 * kPi, 0.0));
    return d;
}

Domain Domain::l_shape(double arm, double thickness) {
    if (!(arm > 0 && thickness > 0)) throw GeometryError("l_shape needs positive parameters");
    Domain d;
    d.kind_ = ShapeKind::l_shape;
    d.params_ = {arm, thickness};
    const double a = arm, t = thickness;
    // Two overlapping slabs with a reflex corner at the origin.
    d.polygon_ = {{-a, 0}, {0, 0}, {0, -a}, {t, -a}, {t, t}, {-a, t}};
    for (std::size_t i = 0; i < d.polygon_.size(); ++i)
        d.boundary_.push_back(
            CurveSegment::line(d.polygon_[i], d.polygon_[(i + 1) % d.polygon_.size()]));
    return d;
}

Domain Domain::horseshoe(double r_in, double r_out, double opening_angle) {
    if (!(0 < r_in && r_in < r_out))
        throw GeometryError("horseshoe needs 0 < r_in < r_out");
    if (!(opening_angle > 0 && opening_angle < kPi))
        throw GeometryError("horseshoe needs opening angle in (0, pi)");
    Domain d;
    d.kind_ = ShapeKind::horseshoe;
    d.params_ = {r_in, r_out, opening_angle};
    const double r_mid = (r_in + r_out) / 2;
    const double rc = (r_out - r_in) / 2;
    // The cut ends are rounded by semicircular caps of radius rc bulging into
    // the opening; the caps sit tangent to both walls from inside, and the
    // cut angle is widened by the cap half-angle so the mouth between the
    // rounded tips has angular width opening_angle.
    const double cut = opening_angle / 2 + std::asin(rc / r_mid);
    if (!(cut < kPi)) throw GeometryError("horseshoe opening leaves no body");
    d.cut_angle_ = cut;
    d.cap_radius_ = rc;
    d.cap_center_pos_ = {r_mid * std::cos(cut), r_mid * std::sin(cut)};
    d.cap_center_neg_ = {r_mid * std::cos(cut), -r_mid * std::sin(cut)};

    d.boundary_.push_back(CurveSegment::arc({0, 0}, r_out, cut, 2 * kPi - cut));
    d.boundary_.push_back(CurveSegment::arc(d.cap_center_neg_, rc, -cut, -cut + kPi));
    d.boundary_.push_back(CurveSegment::arc({0, 0}, r_in, 2 * kPi - cut, cut));
    d.boundary_.push_back(CurveSegment::arc(d.cap_center_pos_, rc, cut, cut - kPi));
    return d;
}

Domain Domain::from_json(const nlohmann::json& spec) {
    if (!spec.is_object() || !spec.contains("shape"))
        throw SchemaError("domain spec needs a \"shape\" field");
    const std::string shape = spec.at("shape").get<std::string>();
    const auto& p = spec.contains("params") ? spec.at("params") : nlohmann::json::object();
    auto get = [&](const char* name) -> double {
        if (!p.contains(name))
            throw SchemaError(std::string("domain params missing \"") + name + "\" for shape " + shape);
        return p.at(name).get<double>();
    };
    if (shape == "interval") return interval(get("a"), get("b"));
    if (shape == "square") return square(get("side"));
    if (shape == "disc") return disc(get("radius"));
    if (shape == "annulus") return annulus(get("r_in"), get("r_out"));
    if (shape == "l_shape") return l_shape(get("arm"), get("thickness"));
    if (shape == "horseshoe") return horseshoe(get("r_in"), get("r_out"), get("opening_angle"));
    throw SchemaError("unknown shape \"" + shape + "\"");
}

std::string Domain::describe() const {
    std::string s = shape_name(kind_) + "(";
    for (std::size_t i = 0; i < params_.size(); ++i) {
        if (i) s += ",";
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%g", params_[i]);
        s += buf;
    }
    return s + ")";
}

bool Domain::inside(const Vec2& p) const {
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
        throw GeometryError("inside(): point must be finite");
    switch (kind_) {
        case ShapeKind::interval:
            return params_[0] < p.x && p.x < params_[1];
        case ShapeKind::square: {
            const double h = params_[0] / 2;
            return std::abs(p.x) < h && std::abs(p.y) < h;
        }
        case ShapeKind::disc:
            return p.squared_norm() < params_[0] * params_[0];
        case ShapeKind::annulus: {
            const double r2 = p.squared_norm();
            return params_[0] * params_[0] < r2 && r2 < params_[1] * params_[1];
        }
        case ShapeKind::l_shape: {
            const double a = params_[0], t = params_[1];
            const bool slab_x = (-a < p.x && p.x < t) && (0 < p.y && p.y < t);
            const bool slab_y = (0 < p.x && p.x < t) && (-a < p.y && p.y < t);
            return slab_x || slab_y;
        }
        case ShapeKind::horseshoe: {
            if (distance(p, cap_center_pos_) < cap_radius_) return true;
            if (distance(p, cap_center_neg_) < cap_radius_) return true;
            const double rho2 = p.squared_norm();
            if (!(params_[0] * params_[0] < rho2 && rho2 < params_[1] * params_[1])) return false;
            return std::abs(std::atan2(p.y, p.x)) > cut_angle_;
        }
    }
    return false;
}

bool Domain::inside_closure(const Vec2& p, double tol) const {
    if (inside(p)) return true;
    return distance_to_boundary(p) <= tol;
}

double Domain::distance_to_boundary(const Vec2& p) const {
    if (kind_ == ShapeKind::interval)
        return std::min(std::abs(p.x - params_[0]), std::abs(params_[1] - p.x));
    double best = std::numeric_limits<double>::infinity();
    for (const auto& seg : boundary_) best = std::min(best, seg.distance(p));
    return best;
}

Vec2 Domain::nearest_boundary_point(const Vec2& z, int* segment, double* s) const {
    if (kind_ == ShapeKind::interval) {
        const double da = std::abs(z.x - params_[0]);
        const double db = std::abs(params_[1] - z.x);
        if (segment) *segment = da <= db ? 0 : 1;
        if (s) *s = 0.0;
        return da <= db ? Vec2{params_[0], 0} : Vec2{params_[1], 0};
    }
    double best = std::numeric_limits<double>::infinity();
    Vec2 best_p;
    int best_seg = 0;
    double best_s = 0;
    for (std::size_t i = 0; i < boundary_.size(); ++i) {
        double si = 0;
        const Vec2 q = boundary_[i].nearest_point(z, &si);
        const double d = distance(q, z);
        if (d < best) {
            best = d;
            best_p = q;
            best_seg = static_cast<int>(i);
            best_s = si;
        }
    }
    if (segment) *segment = best_seg;
    if (s) *s = best_s;
    return best_p;
}

std::array<Vec2, 2> Domain::bounding_box() const {
    switch (kind_) {
        case ShapeKind::interval: return {Vec2{params_[0], 0}, Vec2{params_[1], 0}};
        case ShapeKind::square: {
            const double h = params_[0] / 2;
            return {Vec2{-h, -h}, Vec2{h, h}};
        }
        case ShapeKind::disc: {
            const double r = params_[0];
            return {Vec2{-r, -r}, Vec2{r, r}};
        }
        case ShapeKind::annulus:
        case ShapeKind::horseshoe: {
            const double r = params_[1];
            return {Vec2{-r, -r}, Vec2{r, r}};
        }
        case ShapeKind::l_shape: {
            const double a = params_[0], t = params_[1];
            return {Vec2{-a, -a}, Vec2{t, t}};
        }
    }
    return {Vec2{0, 0}, Vec2{0, 0}};
}

double Domain::diameter() const {
    const auto bb = bounding_box();
    if (dimension_ == 1) return bb[1].x - bb[0].x;
    if (kind_ == ShapeKind::disc || kind_ == ShapeKind::annulus || kind_ == ShapeKind::horseshoe)
        return 2 * params_[kind_ == ShapeKind::disc ? 0 : 1];
    return (bb[1] - bb[0]).norm();
}

// ---------------------------------------------------------------------------
// Boundary sampling

std::vector<BoundarySample> boundary_samples(const Domain& domain, int count) {
    std::vector<BoundarySample> out;
    if (domain.kind() == ShapeKind::interval) {
        const double a = domain.params()[0], b = domain.params()[1];
        out.push_back({{a, 0}, {1, 0}, 0, 0.0, 0.0});
        out.push_back({{b, 0}, {-1, 0}, 1, 0.0, 0.0});
        return out;
    }
    const auto& segs = domain.boundary();
    double total = 0;
    for (const auto& s : segs) total += s.length();
    const double probe = 1e-7 * domain.diameter();
    for (std::size_t i = 0; i < segs.size(); ++i) {
        const auto& seg = segs[i];
        const int n = std::max(1, static_cast<int>(std::lround(count * seg.length() / total)));
        for (int j = 0; j < n; ++j) {
            const double s = (j + 0.5) / n;
            BoundarySample sample;
            sample.point = seg.point(s);
            sample.segment = static_cast<int>(i);
            sample.s = s;
            sample.curvature = seg.curvature(s);
            const Vec2 d = seg.derivative(s);
            if (d.norm() <= 0)
                throw GeometryError("degenerate boundary segment: zero-length derivative");
            Vec2 n_hat = d.perp().normalized();
            if (!domain.inside(sample.point + n_hat * probe)) n_hat = -n_hat;
            if (!domain.inside(sample.point + n_hat * probe))
                throw GeometryError("boundary sample has no inward normal direction");
            sample.normal = n_hat;
            out.push_back(sample);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Reach estimation: rolling-ball emptiness against exact segment distances.

namespace {

// Smallest distance from q to the boundary, ignoring contributions closer
// than `exclude` to the tangency point p (the ball touches there by
// construction).  With exact segment distances the tangency contributes a
// distance of exactly r, so no exclusion window is actually needed; the ball
// test uses a strict margin instead.
bool ball_empty(const Domain& domain, const Vec2& center, double r, double margin) {
    for (const auto& seg : domain.boundary())
        if (seg.distance(center) < r - margin) return false;
    return true;
}

std::optional<ReachWitness> find_violation(const Domain& domain,
                                           const std::vector<BoundarySample>& samples, double r,
                                           double margin) {
    for (const auto& bs : samples) {
        for (const double sign : {+1.0, -1.0}) {
            const Vec2 center = bs.point + bs.normal * (sign * r);
            if (!ball_empty(domain, center, r, margin)) {
                ReachWitness w;
                w.p = bs.point;
                w.u = sign * r;
                w.q = domain.nearest_boundary_point(center);
                return w;
            }
        }
    }
    return std::nullopt;
}

}  // namespace

Reach estimate_reach(const Domain& domain, int samples, double tol) {
    if (samples < 64) throw GeometryError("estimate_reach needs at least 64 samples");
    if (domain.has_corners())
        throw GeometryError("no positive reach: boundary has corners");
    if (domain.kind() == ShapeKind::interval) {
        Reach reach;
        reach.r = (domain.params()[1] - domain.params()[0]) / 2;
        reach.certified_samples = 2;
        return reach;
    }
    if (tol <= 0) tol = 1e-3 * domain.diameter();
    const auto bs = boundary_samples(domain, samples);
    const double margin = 1e-9 * domain.diameter();

    double lo = 0.0;
    double hi = domain.diameter() / 2;
    if (!find_violation(domain, bs, hi, margin)) {
        lo = hi;  // rolling balls of half-diameter already fit (disc-like)
    } else {
        while (hi - lo > tol) {
            const double mid = (lo + hi) / 2;
            if (find_violation(domain, bs, mid, margin))
                hi = mid;
            else
                lo = mid;
        }
    }
    Reach reach;
    reach.r = lo;
    reach.certified_samples = static_cast<int>(bs.size());
    reach.failure_witness = find_violation(domain, bs, lo + tol, margin);
    if (reach.r <= 10 * tol) throw GeometryError("no positive reach");
    return reach;
}

Vec2 project_to_closure(const Domain& domain, const Reach& reach, const Vec2& z) {
    if (domain.inside(z)) return z;
    const double d = domain.distance_to_boundary(z);
    if (d >= reach.r)
        throw GeometryError("outside tubular neighborhood: projection not unique");
    if (domain.kind() == ShapeKind::interval) {
        return {std::clamp(z.x, domain.params()[0], domain.params()[1]), 0};
    }
    return domain.nearest_boundary_point(z);
}

NeighborhoodClass classify_neighborhood(const Domain& domain, const Vec2& z, double delta) {
    if (delta <= 0) throw GeometryError("delta must be positive");
    const double d_bd = domain.distance_to_boundary(z);
    if (d_bd < delta) return NeighborhoodClass::boundary_delta;
    if (domain.inside(z)) return NeighborhoodClass::omega_delta;
    return NeighborhoodClass::neither;
}

}  // namespace heatbound
