#include "ecf/dependency_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ecf {

namespace {

constexpr int kMaxVertexSites = 6;
constexpr Scalar kRankTol = 1e-11;

// Exhaustive vertex enumeration state: choose num_sites planes out of the
// candidate list, keeping an incrementally eliminated (echelon) copy so
// that dependent choices are pruned early. A row dependent on the current
// pivots stays dependent under any extension of the choice.
struct VertexSearch {
  int m = 0;
  const std::vector<Halfspace>* halfspaces = nullptr;
  // Candidate planes: [normal | rhs] with 0/1 normals (coordinate planes
  // have rhs 0).
  std::vector<Vector> planes;
  // Echelon stack: reduced rows with their pivot columns.
  std::vector<Vector> pivot_rows;
  std::vector<int> pivot_cols;
  Scalar tol = kGeometryTol;
  std::vector<Vector> found;

  bool feasible(const Vector& point) const {
    for (int i = 0; i < m; ++i) {
      if (point[i] < -tol) return false;
    }
    for (const Halfspace& half : *halfspaces) {
      Scalar sum = 0.0;
      for (SubsetMask rest = half.subset; rest != 0; rest &= rest - 1) {
        sum += point[lowest_site(rest)];
      }
      if (sum > half.bound + tol) return false;
    }
    return true;
  }

  void solve_current() {
    // Back-substitution on the echelon stack (rows carry their rhs in the
    // last slot).
    Vector point = Vector::Zero(m);
    for (int r = static_cast<int>(pivot_rows.size()) - 1; r >= 0; --r) {
      const Vector& row = pivot_rows[static_cast<std::size_t>(r)];
      const int col = pivot_cols[static_cast<std::size_t>(r)];
      Scalar value = row[m];
      for (int c = 0; c < m; ++c) {
        if (c != col) value -= row[c] * point[c];
      }
      point[col] = value / row[col];
    }
    if (feasible(point)) found.push_back(std::move(point));
  }

  void search(std::size_t next, int remaining) {
    if (remaining == 0) {
      solve_current();
      return;
    }
    if (planes.size() - next < static_cast<std::size_t>(remaining)) return;
    for (std::size_t idx = next; idx < planes.size(); ++idx) {
      Vector row = planes[idx];
      for (std::size_t r = 0; r < pivot_rows.size(); ++r) {
        const Scalar factor = row[pivot_cols[r]] / pivot_rows[r][pivot_cols[r]];
        if (factor != 0.0) row -= factor * pivot_rows[r];
      }
      int col = -1;
      Scalar best = kRankTol;
      for (int c = 0; c < m; ++c) {
        if (std::abs(row[c]) > best) {
          best = std::abs(row[c]);
          col = c;
        }
      }
      if (col < 0) continue;  // dependent on the current choice
      pivot_rows.push_back(std::move(row));
      pivot_cols.push_back(col);
      search(idx + 1, remaining - 1);
      pivot_rows.pop_back();
      pivot_cols.pop_back();
    }
  }
};

}  // namespace

std::vector<Halfspace> halfspaces_from_ecf(const EcfTable& ecf, Scalar tol) {
  const EcfValidation check = validate_ecf(ecf, tol);
  if (!check.pass) {
    throw std::invalid_argument("halfspaces_from_ecf: input is not a valid ECF");
  }
  const SubsetMask full = ecf.ground.all_sites();
  std::vector<Halfspace> out;
  out.reserve(ecf.ground.subset_count() - 1);
  for (SubsetMask subset = 1; subset <= full; ++subset) {
    out.push_back({subset, ecf.theta(subset)});
  }
  return out;
}

std::vector<Vector> enumerate_vertices(const std::vector<Halfspace>& halfspaces, int num_sites,
                                       Scalar tol) {
  if (num_sites < 1 || num_sites > kMaxVertexSites) {
    throw std::invalid_argument("enumerate_vertices: supported for 1 <= m <= 6");
  }
  VertexSearch search;
  search.m = num_sites;
  search.halfspaces = &halfspaces;
  search.tol = tol;
  search.planes.reserve(halfspaces.size() + static_cast<std::size_t>(num_sites));
  for (const Halfspace& half : halfspaces) {
    Vector row = Vector::Zero(num_sites + 1);
    for (SubsetMask rest = half.subset; rest != 0; rest &= rest - 1) {
      row[lowest_site(rest)] = 1.0;
    }
    row[num_sites] = half.bound;
    search.planes.push_back(std::move(row));
  }
  for (int i = 0; i < num_sites; ++i) {
    Vector row = Vector::Zero(num_sites + 1);
    row[i] = 1.0;
    search.planes.push_back(std::move(row));
  }
  search.search(0, num_sites);

  // Dedup within tol in the max norm, then sort for deterministic output.
  std::vector<Vector> unique;
  for (const Vector& candidate : search.found) {
    bool seen = false;
    for (const Vector& kept : unique) {
      if ((candidate - kept).cwiseAbs().maxCoeff() <= tol) {
        seen = true;
        break;
      }
    }
    if (!seen) unique.push_back(candidate);
  }
  std::sort(unique.begin(), unique.end(), [](const Vector& a, const Vector& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
  });
  return unique;
}

DepSetPolytope dep_set_polytope(const EcfTable& ecf, Scalar tol) {
  DepSetPolytope poly{ecf.ground, halfspaces_from_ecf(ecf), {}};
  poly.vertices = enumerate_vertices(poly.halfspaces, ecf.ground.size(), tol);
  return poly;
}

Scalar support_function(const DepSetPolytope& poly, const Vector& x) {
  if (poly.vertices.empty()) throw std::invalid_argument("support_function: no vertices");
  if (x.size() != poly.ground.size()) {
    throw std::invalid_argument("support_function: point has wrong dimension");
  }
  Scalar best = x.dot(poly.vertices.front());
  for (std::size_t i = 1; i < poly.vertices.size(); ++i) {
    best = std::max(best, x.dot(poly.vertices[i]));
  }
  return best;
}

bool contains(const DepSetPolytope& poly, const Vector& point, Scalar tol) {
  if (point.size() != poly.ground.size()) return false;
  for (Eigen::Index i = 0; i < point.size(); ++i) {
    if (point[i] < -tol) return false;
  }
  for (const Halfspace& half : poly.halfspaces) {
    Scalar sum = 0.0;
    for (SubsetMask rest = half.subset; rest != 0; rest &= rest - 1) {
      sum += point[lowest_site(rest)];
    }
    if (sum > half.bound + tol) return false;
  }
  return true;
}

PlaneTouch touches_plane(const DepSetPolytope& poly, SubsetMask subset, Scalar tol) {
  if (subset == 0) throw std::invalid_argument("touches_plane: subset must be nonempty");
  if (poly.vertices.empty()) throw std::invalid_argument("touches_plane: no vertices");
  Scalar bound = 0.0;
  bool known = false;
  for (const Halfspace& half : poly.halfspaces) {
    if (half.subset == subset) {
      bound = half.bound;
      known = true;
      break;
    }
  }
  if (!known) throw std::invalid_argument("touches_plane: subset has no halfspace");
  PlaneTouch touch;
  touch.attained = -std::numeric_limits<Scalar>::infinity();
  for (const Vector& vertex : poly.vertices) {
    Scalar sum = 0.0;
    for (SubsetMask rest = subset; rest != 0; rest &= rest - 1) {
      sum += vertex[lowest_site(rest)];
    }
    if (sum > touch.attained) {
      touch.attained = sum;
      touch.point = vertex;
    }
  }
  touch.attains = std::abs(touch.attained - bound) <= tol;
  return touch;
}

InclusionReport inclusion_check(const std::vector<Vector>& points, const DepSetPolytope& poly,
                                Scalar tol) {
  InclusionReport report;
  for (std::size_t p = 0; p < points.size(); ++p) {
    const Vector& point = points[p];
    Scalar violation = 0.0;
    for (Eigen::Index i = 0; i < point.size(); ++i) {
      violation = std::max(violation, -point[i]);
    }
    for (const Halfspace& half : poly.halfspaces) {
      Scalar sum = 0.0;
      for (SubsetMask rest = half.subset; rest != 0; rest &= rest - 1) {
        sum += point[lowest_site(rest)];
      }
      violation = std::max(violation, sum - half.bound);
    }
    if (violation > report.max_violation) {
      report.max_violation = violation;
      report.worst_point = p;
    }
  }
  report.pass = report.max_violation <= tol;
  return report;
}

Scalar fdd_lower_bound_log(const TmProcess& process, const Vector& x) {
  return -neg_log_cdf(process, x);
}

Scalar fdd_lower_bound_log(const EcfTable& ecf, const Vector& x) {
  return fdd_lower_bound_log(tm_from_ecf(ecf), x);
}

Scalar fdd_lower_bound(const EcfTable& ecf, const Vector& x) {
  return std::exp(fdd_lower_bound_log(ecf, x));
}

Scalar trivariate_bound_from_bivariate_log(Scalar eta_rs, Scalar eta_st, Scalar eta_rt,
                                           const Vector& x) {
  for (Scalar eta : {eta_rs, eta_st, eta_rt}) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
      throw std::invalid_argument("trivariate_bound_from_bivariate: eta must be in [0, 1]");
    }
  }
  if (x.size() != 3) throw std::invalid_argument("trivariate_bound_from_bivariate: need 3 coordinates");
  for (int i = 0; i < 3; ++i) {
    if (std::isnan(x[i]) || x[i] <= 0.0) {
      throw std::domain_error("trivariate_bound_from_bivariate: coordinates must be positive");
    }
  }
  const Scalar a = std::min({eta_rs + eta_st, eta_rs + eta_rt, eta_st + eta_rt});
  const Scalar eta_max = std::max({eta_rs, eta_st, eta_rt});
  const Scalar lower = std::max(eta_max, eta_rs + eta_st + eta_rt - 1.0);
  if (lower > a + 1e-12) {
    throw std::invalid_argument("trivariate_bound_from_bivariate: infeasible eta triple");
  }
  const Scalar a_cap = std::min(a, Scalar{1});
  const Scalar xr = x[0], xs = x[1], xt = x[2];
  const Scalar neg_log =
      (1.0 - eta_max) / std::min({xr, xs, xt}) +
      a_cap * (1.0 / std::min(xr, xs) + 1.0 / std::min(xs, xt) + 1.0 / std::min(xr, xt)) -
      (eta_rs / std::min(xr, xs) + eta_st / std::min(xs, xt) + eta_rt / std::min(xr, xt)) +
      a * (1.0 / xr + 1.0 / xs + 1.0 / xt) -
      (eta_st / xr + eta_rt / xs + eta_rs / xt);
  return -neg_log;
}

Scalar trivariate_bound_from_bivariate(Scalar eta_rs, Scalar eta_st, Scalar eta_rt,
                                       const Vector& x) {
  return std::exp(trivariate_bound_from_bivariate_log(eta_rs, eta_st, eta_rt, x));
}

}  // namespace ecf
