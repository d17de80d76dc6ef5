#include "extcvx/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "extcvx/extreal.hpp"

namespace extcvx {

namespace {

constexpr double kRankTol = 1e-9;
constexpr double kInfD = std::numeric_limits<double>::infinity();

// Calls f on every k-subset of {0..n-1} (as an index vector).
void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& f) {
  if (k < 0 || k > n) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    f(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

template <int D>
Eigen::MatrixXd stack_unit(const std::vector<Vec<D>>& vs) {
  std::vector<Vec<D>> keep;
  for (const auto& v : vs)
    if (v.norm() > 1e-12) keep.push_back(v.normalized());
  Eigen::MatrixXd m(static_cast<Eigen::Index>(keep.size()), D);
  for (std::size_t i = 0; i < keep.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = keep[i].transpose();
  return m;
}

template <int D>
int rank_of(const std::vector<Vec<D>>& vs) {
  Eigen::MatrixXd m = stack_unit<D>(vs);
  if (m.rows() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > kRankTol) ++r;
  return r;
}

// Orthonormal basis of the orthogonal complement of span(vs).
template <int D>
std::vector<Vec<D>> null_basis(const std::vector<Vec<D>>& vs) {
  Eigen::MatrixXd m = stack_unit<D>(vs);
  std::vector<Vec<D>> out;
  if (m.rows() == 0) {
    for (int i = 0; i < D; ++i) out.push_back(Vec<D>::Unit(i));
    return out;
  }
  Eigen::MatrixXd padded = Eigen::MatrixXd::Zero(std::max<Eigen::Index>(m.rows(), D), D);
  padded.topRows(m.rows()) = m;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(padded, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  for (int i = 0; i < D; ++i)
    if (i >= s.size() || s(i) <= kRankTol) out.push_back(svd.matrixV().col(i));
  return out;
}

template <int D>
bool same_point(const Vec<D>& a, const Vec<D>& b) {
  return (a - b).norm() <= 1e-9 * (1.0 + std::max(a.norm(), b.norm()));
}

template <int D>
void push_unique_point(std::vector<Vec<D>>& pts, const Vec<D>& p) {
  for (const auto& q : pts)
    if (same_point<D>(p, q)) return;
  pts.push_back(p);
}

template <int D>
void push_unique_dir(std::vector<Vec<D>>& dirs, const Vec<D>& d) {
  Vec<D> u = d.normalized();
  for (const auto& q : dirs)
    if ((u - q).norm() <= 1e-9) return;
  dirs.push_back(u);
}

template <int D>
bool feasible(const std::vector<Halfspace<D>>& hs, const Vec<D>& z) {
  for (const auto& h : hs)
    if (h.n.dot(z) > h.c + kGeomTol * (1.0 + std::abs(h.c))) return false;
  return true;
}

template <int D>
bool recedes_all(const std::vector<Halfspace<D>>& hs, const Vec<D>& d) {
  for (const auto& h : hs)
    if (h.n.dot(d) > kGeomTol * d.norm()) return false;
  return true;
}

// H -> V. Returns false for an empty set.
template <int D>
bool compute_v(const std::vector<Halfspace<D>>& hs, std::vector<Vec<D>>& points, std::vector<Vec<D>>& rays) {
  points.clear();
  rays.clear();
  std::vector<Vec<D>> normals;
  for (const auto& h : hs) normals.push_back(h.n);
  const std::vector<Vec<D>> lin = null_basis<D>(normals);
  std::vector<Halfspace<D>> aug = hs;
  for (const auto& l : lin) {
    aug.push_back({l, 0.0});
    aug.push_back({-l, 0.0});
  }
  const int m = static_cast<int>(aug.size());
  for_each_subset(m, D, [&](const std::vector<int>& idx) {
    Eigen::Matrix<double, D, D> a;
    Vec<D> b;
    for (int i = 0; i < D; ++i) {
      a.row(i) = aug[idx[i]].n.transpose();
      b(i) = aug[idx[i]].c;
    }
    Eigen::FullPivLU<Eigen::Matrix<double, D, D>> lu(a);
    lu.setThreshold(kRankTol);
    if (lu.rank() < D) return;
    Vec<D> z = lu.solve(b);
    if (z.allFinite() && feasible(aug, z)) push_unique_point(points, z);
  });
  if (points.empty()) return false;
  for_each_subset(m, D - 1, [&](const std::vector<int>& idx) {
    std::vector<Vec<D>> rows;
    for (int i : idx) rows.push_back(aug[i].n);
    if (rank_of<D>(rows) != D - 1) return;
    auto nb = null_basis<D>(rows);
    if (nb.size() != 1) return;
    for (double sgn : {1.0, -1.0}) {
      Vec<D> d = sgn * nb[0];
      if (recedes_all(aug, d)) push_unique_dir(rays, d);
    }
  });
  for (const auto& l : lin) {
    push_unique_dir(rays, l);
    push_unique_dir(rays, Vec<D>(-l));
  }
  return true;
}

// V -> H for a non-empty generator set.
template <int D>
std::vector<Halfspace<D>> compute_h(const std::vector<Vec<D>>& points, const std::vector<Vec<D>>& rays_in) {
  std::vector<Vec<D>> rays;
  for (const auto& r : rays_in)
    if (r.norm() > 1e-12) push_unique_dir(rays, r);
  const Vec<D> p0 = points.front();
  std::vector<Vec<D>> dirs;
  for (const auto& p : points) dirs.push_back(p - p0);
  for (const auto& r : rays) dirs.push_back(r);
  const int k = rank_of<D>(dirs);
  const std::vector<Vec<D>> perp = null_basis<D>(dirs);
  std::vector<Halfspace<D>> out;
  for (const auto& u : perp) {
    out.push_back({u, u.dot(p0)});
    out.push_back({-u, -u.dot(p0)});
  }
  if (k == 0) return out;

  const int np = static_cast<int>(points.size());
  const int ng = np + static_cast<int>(rays.size());
  std::vector<Halfspace<D>> facets;
  for_each_subset(ng, k, [&](const std::vector<int>& idx) {
    if (idx[0] >= np) return;
    const Vec<D>& q = points[idx[0]];
    std::vector<Vec<D>> rows;
    for (std::size_t i = 1; i < idx.size(); ++i)
      rows.push_back(idx[i] < np ? Vec<D>(points[idx[i]] - q) : rays[idx[i] - np]);
    if (rank_of<D>(rows) != k - 1) return;
    for (const auto& u : perp) rows.push_back(u);
    auto nb = null_basis<D>(rows);
    if (nb.size() != 1) return;
    for (double sgn : {1.0, -1.0}) {
      Vec<D> n = sgn * nb[0];
      bool ok = true;
      for (const auto& r : rays)
        if (n.dot(r) > kGeomTol) ok = false;
      if (!ok) continue;
      double c = -kInfD;
      for (const auto& p : points) c = std::max(c, n.dot(p));
      std::vector<Vec<D>> tight;
      const Vec<D>* first = nullptr;
      for (const auto& p : points)
        if (c - n.dot(p) <= kGeomTol * (1.0 + std::abs(c))) {
          if (!first) first = &p;
          else tight.push_back(p - *first);
        }
      for (const auto& r : rays)
        if (std::abs(n.dot(r)) <= kGeomTol) tight.push_back(r);
      if (rank_of<D>(tight) != k - 1) continue;
      bool dup = false;
      for (const auto& f : facets)
        if ((f.n - n).norm() <= 1e-9 && std::abs(f.c - c) <= 1e-9 * (1.0 + std::abs(c))) dup = true;
      if (!dup) facets.push_back({n, c});
    }
  });
  out.insert(out.end(), facets.begin(), facets.end());
  return out;
}

template <int D>
void order_points(std::vector<Vec<D>>& pts) {
  for (auto& p : pts) p = (p.array() + 0.0).matrix();
  if constexpr (D == 2) {
    if (pts.size() < 2) return;
    Vec2 c = Vec2::Zero();
    for (const auto& p : pts) c += p;
    c /= static_cast<double>(pts.size());
    std::sort(pts.begin(), pts.end(), [&](const Vec2& a, const Vec2& b) {
      return std::atan2(a.y() - c.y(), a.x() - c.x()) < std::atan2(b.y() - c.y(), b.x() - c.x());
    });
    auto lowest = std::min_element(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
      return a.y() < b.y() || (a.y() == b.y() && a.x() < b.x());
    });
    std::rotate(pts.begin(), lowest, pts.end());
  } else {
    std::sort(pts.begin(), pts.end(), [](const Vec<D>& a, const Vec<D>& b) {
      return std::lexicographical_compare(a.data(), a.data() + D, b.data(), b.data() + D);
    });
  }
}

}  // namespace

template <int D>
Polyhedron<D> Polyhedron<D>::empty() {
  return Polyhedron();
}

template <int D>
Polyhedron<D> Polyhedron<D>::whole() {
  return from_h({});
}

template <int D>
Polyhedron<D> Polyhedron<D>::from_h(std::vector<Halfspace<D>> hs) {
  std::vector<Halfspace<D>> norm;
  for (auto& h : hs) {
    if (!h.n.allFinite() || std::isnan(h.c)) throw std::invalid_argument("halfspace with non-finite data");
    double len = h.n.norm();
    if (len <= 1e-12) {
      if (h.c < -kGeomTol) return empty();
      continue;
    }
    if (h.c == kInfD) continue;
    if (h.c == -kInfD) return empty();
    norm.push_back({h.n / len, h.c / len});
  }
  Polyhedron p;
  if (!compute_v<D>(norm, p.points_, p.rays_)) return empty();
  p.empty_ = false;
  p.h_ = compute_h<D>(p.points_, p.rays_);
  order_points<D>(p.points_);
  for (auto& r : p.rays_) r = (r.array() + 0.0).matrix();
  return p;
}

template <int D>
Polyhedron<D> Polyhedron<D>::from_v(std::vector<Vec<D>> points, std::vector<Vec<D>> rays) {
  if (points.empty()) return empty();
  for (const auto& p : points)
    if (!p.allFinite()) throw std::invalid_argument("generator point with non-finite data");
  for (const auto& r : rays)
    if (!r.allFinite()) throw std::invalid_argument("generator ray with non-finite data");
  Polyhedron p;
  p.empty_ = false;
  p.h_ = compute_h<D>(points, rays);
  if (!compute_v<D>(p.h_, p.points_, p.rays_)) {
    // numerically degenerate; keep the generators as given
    p.points_ = points;
    p.rays_.clear();
    for (const auto& r : rays)
      if (r.norm() > 1e-12) push_unique_dir(p.rays_, r);
  }
  order_points<D>(p.points_);
  for (auto& r : p.rays_) r = (r.array() + 0.0).matrix();
  return p;
}

template <int D>
bool Polyhedron<D>::contains(const Vec<D>& z, double tol) const {
  if (empty_) return false;
  for (const auto& h : h_)
    if (h.n.dot(z) > h.c + tol * (1.0 + std::abs(h.c))) return false;
  return true;
}

template <int D>
bool Polyhedron<D>::recedes(const Vec<D>& d, double tol) const {
  if (empty_) return true;
  for (const auto& h : h_)
    if (h.n.dot(d) > tol * std::max(1.0, d.norm())) return false;
  return true;
}

template <int D>
bool Polyhedron<D>::same_set(const Polyhedron& o, double tol) const {
  if (empty_ || o.empty_) return empty_ == o.empty_;
  for (const auto& p : points_)
    if (!o.contains(p, tol)) return false;
  for (const auto& r : rays_)
    if (!o.recedes(r, tol)) return false;
  for (const auto& p : o.points_)
    if (!contains(p, tol)) return false;
  for (const auto& r : o.rays_)
    if (!recedes(r, tol)) return false;
  return true;
}

template <int D>
double Polyhedron<D>::support(const Vec<D>& n) const {
  if (empty_) return -kInfD;
  for (const auto& r : rays_)
    if (n.dot(r) > 1e-12 * std::max(1.0, n.norm())) return kInfD;
  double best = -kInfD;
  for (const auto& p : points_) best = std::max(best, n.dot(p));
  return best;
}

template <int D>
Polyhedron<D> Polyhedron<D>::translate(const Vec<D>& t) const {
  Polyhedron p = *this;
  if (empty_) return p;
  for (auto& h : p.h_) h.c += h.n.dot(t);
  for (auto& q : p.points_) q += t;
  return p;
}

template <int D>
Polyhedron<D> Polyhedron<D>::scale(double t) const {
  if (!(t > 0.0)) throw std::invalid_argument("Polyhedron::scale: factor must be positive");
  Polyhedron p = *this;
  if (empty_) return p;
  for (auto& h : p.h_) h.c *= t;
  for (auto& q : p.points_) q *= t;
  return p;
}

template class Polyhedron<2>;
template class Polyhedron<3>;

template <int D>
Polyhedron<D> intersect(const Polyhedron<D>& a, const Polyhedron<D>& b) {
  if (a.is_empty() || b.is_empty()) return Polyhedron<D>::empty();
  std::vector<Halfspace<D>> hs = a.h();
  hs.insert(hs.end(), b.h().begin(), b.h().end());
  return Polyhedron<D>::from_h(std::move(hs));
}

template <int D>
Polyhedron<D> minkowski(const Polyhedron<D>& a, const Polyhedron<D>& b) {
  if (a.is_empty() || b.is_empty()) return Polyhedron<D>::empty();
  std::vector<Vec<D>> pts;
  for (const auto& p : a.points())
    for (const auto& q : b.points()) pts.push_back(p + q);
  std::vector<Vec<D>> rays = a.rays();
  rays.insert(rays.end(), b.rays().begin(), b.rays().end());
  return Polyhedron<D>::from_v(std::move(pts), std::move(rays));
}

template <int D>
Polyhedron<D> hull_union(const std::vector<Polyhedron<D>>& parts) {
  std::vector<Vec<D>> pts, rays;
  for (const auto& p : parts) {
    if (p.is_empty()) continue;
    pts.insert(pts.end(), p.points().begin(), p.points().end());
    rays.insert(rays.end(), p.rays().begin(), p.rays().end());
  }
  return Polyhedron<D>::from_v(std::move(pts), std::move(rays));
}

template <int D>
double vertex_hausdorff(const Polyhedron<D>& a, const Polyhedron<D>& b) {
  if (a.is_empty() || b.is_empty()) return a.is_empty() == b.is_empty() ? 0.0 : kInfD;
  auto one_side = [](const std::vector<Vec<D>>& x, const std::vector<Vec<D>>& y) {
    double worst = 0.0;
    for (const auto& p : x) {
      double best = kInfD;
      for (const auto& q : y) best = std::min(best, (p - q).norm());
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_side(a.points(), b.points()), one_side(b.points(), a.points()));
}

template Polyhedron<2> intersect(const Polyhedron<2>&, const Polyhedron<2>&);
template Polyhedron<3> intersect(const Polyhedron<3>&, const Polyhedron<3>&);
template Polyhedron<2> minkowski(const Polyhedron<2>&, const Polyhedron<2>&);
template Polyhedron<3> minkowski(const Polyhedron<3>&, const Polyhedron<3>&);
template Polyhedron<2> hull_union(const std::vector<Polyhedron<2>>&);
template Polyhedron<3> hull_union(const std::vector<Polyhedron<3>>&);
template double vertex_hausdorff(const Polyhedron<2>&, const Polyhedron<2>&);
template double vertex_hausdorff(const Polyhedron<3>&, const Polyhedron<3>&);

Cone2 Cone2::generated(const std::vector<Vec2>& gens) {
  return from_poly(ConvexPoly2::from_v({Vec2::Zero()}, gens));
}

Cone2 Cone2::from_poly(const ConvexPoly2& p) {
  if (p.is_empty() || !p.contains(Vec2::Zero())) throw std::invalid_argument("cone must contain the origin");
  for (const auto& h : p.h())
    if (std::abs(h.c) > kGeomTol) throw std::invalid_argument("cone: not a cone (non-zero offset)");
  Cone2 c;
  c.poly_ = p;
  return c;
}

Cone2 dual_cone(const Cone2& c) {
  std::vector<Halfspace<2>> hs;
  for (const auto& g : c.generators()) hs.push_back({g, 0.0});
  return Cone2::from_poly(ConvexPoly2::from_h(std::move(hs)));
}

Cone2 negate(const Cone2& c) {
  std::vector<Vec2> g;
  for (const auto& v : c.generators()) g.push_back(-v);
  return Cone2::generated(g);
}

std::string to_string(const ConvexPoly2& p) {
  if (p.is_empty()) return "empty";
  std::ostringstream os;
  os << "points{";
  for (const auto& q : p.points()) os << "(" << to_string(q.x()) << "," << to_string(q.y()) << ")";
  os << "} rays{";
  for (const auto& r : p.rays()) os << "(" << to_string(r.x()) << "," << to_string(r.y()) << ")";
  os << "}";
  return os.str();
}

}  // namespace extcvx
