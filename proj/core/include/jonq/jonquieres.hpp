#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "jonq/algebra.hpp"
#include "jonq/cocycle.hpp"

namespace jonq {

/// f(x, y) = ((alpha x + y)/(x + 1), beta y) on P^1 x C, the affine chart of
///   (x : y : z) -> ((alpha x + y) z : beta y (x + z) : z (x + z)).
struct MapParams {
    Complex alpha{1.0, 0.0};
    Complex beta{1.0, 0.0};

    /// alpha = e^{2 pi i alpha_angle}, beta = e^{2 pi i freq}.
    static MapParams from_angles(double alpha_angle, double freq);
    static MapParams generic();

    /// Rotation number of beta in [0, 1).
    double freq() const { return angle_of(beta); }
};

/// Throws InvalidSpec unless |alpha| = |beta| = 1 to 1e-12 and beta is not
/// within 1e-9 of a root of unity of order <= 64.
void validate(const MapParams& p);

struct PointP1xC {
    ExtComplex x;
    Complex y{1.0, 0.0};
};

/// One step of f. x = -1 with y != alpha goes to infinity, infinity goes to
/// alpha. Throws IndeterminatePoint at exactly (-1, alpha).
PointP1xC apply_f(const MapParams& p, const PointP1xC& q);

/// sqrt(|dx|^2 + |dy|^2) with the chordal metric in x.
double point_distance(const PointP1xC& a, const PointP1xC& b);

struct IndeterminacyHit {
    std::size_t step = 0;   ///< index of the point that came close
    double distance = 0.0;  ///< point_distance to (-1, alpha)
};

struct OrbitRecord {
    std::vector<PointP1xC> points;  ///< q, f(q), ..., f^n(q) unless truncated
    std::vector<IndeterminacyHit> indeterminacy_hits;
    bool escaped = false;    ///< some x_k was infinity
    bool truncated = false;  ///< stopped at an exact indeterminacy point
};

OrbitRecord orbit(const MapParams& p, const PointP1xC& q, std::size_t n, double dist_tol = 1e-8);

/// sup over k <= n of the chordal distance between the x-coordinate of
/// f^k(q) and the Moebius action of A_k(y_0) = A(beta^{k-1} y_0) ... A(y_0)
/// on x_0, the products built from the JonquieresA generator with
/// renormalization.
double matrix_orbit_equivalence(const MapParams& p, const PointP1xC& q, std::size_t n);

/// g(x, y) = ((alpha x + y^2)/(x + 1), gamma y), gamma^2 = beta.
/// gamma = e^{pi i freq}, or its negative when other_root is set.
PointP1xC apply_g(const MapParams& p, const PointP1xC& q, bool other_root = false);

/// sup over k <= n of the distance between pi(g^k(q)) and f^k(pi(q)),
/// pi(x, y) = (x, y^2).
double semiconjugacy_check(const MapParams& p, const PointP1xC& q, std::size_t n, bool other_root = false);

/// G = s o f o f o s with s(x, y) = (1/x, 1/y), in closed form
///   G(x, y) = ((1 + y) x + (alpha + 1) y) / ((alpha + beta) x + alpha^2 y + beta),  y / beta^2.
/// For fixed y the x-part is the Moebius map of moebius(y).
class InvertedSquareMap {
public:
    explicit InvertedSquareMap(const MapParams& p) : p_(p) {}

    const MapParams& params() const { return p_; }
    Mat2 moebius(Complex y) const;
    PointP1xC operator()(const PointP1xC& q) const;

    /// Exact Jacobian of (G_x, G_y) in (x, y) at a finite point, row-major.
    Mat2 jacobian(Complex x, Complex y) const;

    /// s(f(f(s(q)))) evaluated through apply_f, for cross-checking.
    PointP1xC by_composition(const PointP1xC& q) const;

private:
    MapParams p_;
};

/// A fixed point of f (or, for the point at infinity, of f^2 through G).
struct FixedPoint {
    std::string name;
    ExtComplex x;
    ExtComplex y;
    double residual = 0.0;  ///< distance between the point and its image
};

/// (0, 0) and (alpha - 1, 0) for f, and (inf, inf), the origin of G.
std::vector<FixedPoint> fixed_points(const MapParams& p);

using OrbitCloud = std::vector<std::array<double, 4>>;

/// (re x, im x, re y, im y) of n points of an orbit; requires finite x.
OrbitCloud f_orbit_cloud(const MapParams& p, const PointP1xC& q, std::size_t n);
OrbitCloud g_orbit_cloud(const MapParams& p, const PointP1xC& q, std::size_t n);
/// Orbit of the rotation (x, y) -> (a x, b y).
OrbitCloud linear_orbit_cloud(Complex a, Complex b, const PointP1xC& q, std::size_t n);

struct ClosureClassification {
    int rank = 0;
    std::vector<double> slopes;       ///< log2 N(2^{-k-1}) / N(2^{-k}) for every sampled octave
    std::vector<std::size_t> counts;  ///< N(2^{-k}), k = 0, 1, ...
    std::size_t window_begin = 0;     ///< first slope index of the stable window
    std::size_t window_end = 0;       ///< one past the last
    double median_slope = 0.0;
    double confidence = 0.0;          ///< fraction of window slopes within 0.5 of rank
};

/// Box counting in the four coordinates, each rescaled to unit diameter.
/// Octaves are sampled while the point count is at least 10x the occupied box
/// count. The two coarsest octaves are discarded, then up to two of the finest
/// while more than two remain; rank is the median window slope rounded into
/// {1, 2}. Throws InsufficientPoints when fewer than two slopes survive.
ClosureClassification classify_orbit_closure(const OrbitCloud& cloud, int max_octave = 20);

}  // namespace jonq
