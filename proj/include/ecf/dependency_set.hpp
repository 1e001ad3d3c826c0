#pragma once

#include <vector>

#include "ecf/ecf_table.hpp"
#include "ecf/tm_process.hpp"
#include "ecf/types.hpp"

namespace ecf {

/// One linear constraint of the dependency set: sum of x_t over t in
/// `subset` is at most `bound` (= theta(subset)).
struct Halfspace {
  SubsetMask subset = 0;
  Scalar bound = 0.0;
};

/// The TM dependency set as an explicit polytope: the intersection of the
/// halfspaces {sum_{t in A} x_t <= theta(A)} with the nonnegative orthant,
/// together with its enumerated vertices (all within [0,1]^m).
struct DepSetPolytope {
  GroundSet ground;
  std::vector<Halfspace> halfspaces;
  std::vector<Vector> vertices;
};

/// The 2^m - 1 halfspaces (A, theta(A)); the input must be a valid ECF.
std::vector<Halfspace> halfspaces_from_ecf(const EcfTable& ecf, Scalar tol = kValidateTol);

/// All vertices of {x >= 0} intersected with the halfspaces, by exhaustive
/// intersection of every m-subset of bounding hyperplanes (coordinate
/// planes included), feasibility filtering and dedup within `tol` in the
/// max norm. Vertices are returned sorted lexicographically. Guarded to
/// m <= 6.
std::vector<Vector> enumerate_vertices(const std::vector<Halfspace>& halfspaces, int num_sites,
                                       Scalar tol = kGeometryTol);

/// Halfspaces plus enumerated vertices of a valid ECF's dependency set.
DepSetPolytope dep_set_polytope(const EcfTable& ecf, Scalar tol = kGeometryTol);

/// Support function h(x) = max over vertices of <x, v>; equals the TM
/// stable tail dependence function on x >= 0.
Scalar support_function(const DepSetPolytope& poly, const Vector& x);

/// Halfspace membership within tol (orthant constraints included).
bool contains(const DepSetPolytope& poly, const Vector& point, Scalar tol = kGeometryTol);

struct PlaneTouch {
  Vector point;           // vertex maximizing sum_{t in A} v_t
  Scalar attained = 0.0;  // the maximum
  bool attains = false;   // |attained - theta(A)| <= tol
};

/// Maximizer vertex of the A-coordinate sum; for a valid polytope it
/// attains theta(A), i.e. the plane {sum = theta(A)} touches the set.
PlaneTouch touches_plane(const DepSetPolytope& poly, SubsetMask subset, Scalar tol = kGeometryTol);

struct InclusionReport {
  bool pass = true;
  Scalar max_violation = 0.0;
  std::size_t worst_point = 0;
};

/// Checks that every point satisfies every halfspace (and the orthant)
/// within tol; used to confirm that another model's dependency set sits
/// inside the TM polytope with the same ECF.
InclusionReport inclusion_check(const std::vector<Vector>& points, const DepSetPolytope& poly,
                                Scalar tol = kGeometryTol);

/// Sharp lower bound on the c.d.f. of ANY simple max-stable vector with the
/// given ECF, attained by the TM process:
///   P(X <= x) >= exp(-sum_L tau_L max_{t in L} 1/x_t).
Scalar fdd_lower_bound_log(const EcfTable& ecf, const Vector& x);
Scalar fdd_lower_bound(const EcfTable& ecf, const Vector& x);
Scalar fdd_lower_bound_log(const TmProcess& process, const Vector& x);

/// Trivariate lower bound from bivariate coefficients alone, with
/// a = min of the pairwise eta sums (capped at 1 where indicated):
///   -log bound = (1 - max eta) / min(x)
///     + (a ^ 1) (1/(xr^xs) + 1/(xs^xt) + 1/(xr^xt))
///     - (eta_rs/(xr^xs) + eta_st/(xs^xt) + eta_rt/(xr^xt))
///     + a (1/xr + 1/xs + 1/xt)
///     - (eta_st/xr + eta_rt/xs + eta_rs/xt).
/// The eta triple must satisfy max(eta_rs, eta_st, eta_rt, sum - 1) <= a.
Scalar trivariate_bound_from_bivariate_log(Scalar eta_rs, Scalar eta_st, Scalar eta_rt,
                                           const Vector& x);
Scalar trivariate_bound_from_bivariate(Scalar eta_rs, Scalar eta_st, Scalar eta_rt,
                                       const Vector& x);

}  // namespace ecf
