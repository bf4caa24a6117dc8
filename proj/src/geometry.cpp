#include "rfim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rfim/kahan.hpp"

namespace rfim {

std::vector<Run> maximal_blocks(const SpinWindow& w) {
  validate(w);
  std::vector<Run> out;
  int start = w.lo;
  for (int i = w.lo + 1; i <= w.hi; ++i) {
    if (w.at(i) != w.at(i - 1)) {
      out.push_back({start, i - 1, w.at(i - 1)});
      start = i;
    }
  }
  out.push_back({start, w.hi, w.at(w.hi)});
  return out;
}

RunDecomposition runs(const SpinWindow& w, int v_lo, int v_hi) {
  if (v_lo > 0 || v_hi < 0) throw std::domain_error("V must contain the origin");
  if (v_lo < w.lo || v_hi > w.hi) throw std::domain_error("V must lie inside the window");
  RunDecomposition d;
  d.blocks = maximal_blocks(w);
  for (size_t p = 0; p < d.blocks.size(); ++p)
    if (d.blocks[p].start <= 0 && 0 <= d.blocks[p].end) d.origin_block = static_cast<int>(p);
  bool found = false;
  for (size_t p = 0; p < d.blocks.size(); ++p) {
    if (d.blocks[p].start >= v_lo && d.blocks[p].end <= v_hi) {
      long long j = d.index_of(static_cast<int>(p));
      if (!found) {
        d.b_v = j;
        found = true;
      }
      d.e_v = j;
    }
  }
  d.any_inside = found;
  if (!found) {
    d.b_v = 0;
    d.e_v = -1;
  }
  return d;
}

TriangleFamily triangles_from_spins(const SpinWindow& w) {
  validate(w);
  if (w.boundary != +1)
    throw std::invalid_argument("triangle construction requires a + boundary");
  std::vector<int> pts;
  for (int x = w.lo - 1; x <= w.hi; ++x)
    if (w.extended(x) != w.extended(x + 1)) pts.push_back(x);
  TriangleFamily f;
  f.lo = w.lo;
  f.hi = w.hi;
  // interface points sprout lines at +-45 degrees; the closest adjacent pair
  // collides first (ties: leftmost), forms a triangle, and drops out
  while (!pts.empty()) {
    size_t best = 0;
    int best_gap = std::numeric_limits<int>::max();
    for (size_t k = 0; k + 1 < pts.size(); ++k) {
      int gap = pts[k + 1] - pts[k];
      if (gap < best_gap) {
        best_gap = gap;
        best = k;
      }
    }
    f.triangles.push_back({pts[best], pts[best + 1]});
    pts.erase(pts.begin() + static_cast<long>(best),
              pts.begin() + static_cast<long>(best) + 2);
  }
  std::sort(f.triangles.begin(), f.triangles.end());
  return f;
}

namespace {

/** Throws unless supports are pairwise disjoint-or-nested (laminar). */
void check_laminar(const std::vector<Triangle>& ts) {
  std::vector<Triangle> s = ts;
  std::sort(s.begin(), s.end(), [](const Triangle& a, const Triangle& b) {
    if (a.supp_lo() != b.supp_lo()) return a.supp_lo() < b.supp_lo();
    return a.supp_hi() > b.supp_hi();
  });
  std::vector<int> stack_hi;
  for (const Triangle& t : s) {
    while (!stack_hi.empty() && stack_hi.back() < t.supp_lo()) stack_hi.pop_back();
    if (!stack_hi.empty() && t.supp_hi() > stack_hi.back())
      throw std::invalid_argument("triangle supports overlap without nesting");
    stack_hi.push_back(t.supp_hi());
  }
}

}  // namespace

SpinWindow spins_from_triangles(const TriangleFamily& f) {
  if (f.hi < f.lo) throw std::invalid_argument("family window must be nonempty");
  for (const Triangle& t : f.triangles) {
    if (t.left_x >= t.right_x) throw std::invalid_argument("triangle must have positive mass");
    if (t.supp_lo() < f.lo || t.supp_hi() > f.hi)
      throw std::invalid_argument("triangle support outside the family window");
  }
  check_laminar(f.triangles);
  int n = f.hi - f.lo + 1;
  std::vector<int> cover(static_cast<size_t>(n) + 1, 0);
  for (const Triangle& t : f.triangles) {
    cover[static_cast<size_t>(t.supp_lo() - f.lo)] += 1;
    cover[static_cast<size_t>(t.supp_hi() - f.lo + 1)] -= 1;
  }
  SpinWindow w = make_window(f.lo, f.hi, +1, +1);
  int depth = 0;
  for (int k = 0; k < n; ++k) {
    depth += cover[static_cast<size_t>(k)];
    w.spins[static_cast<size_t>(k)] = (depth % 2 != 0) ? -1 : +1;
  }
  return w;
}

long long triangle_distance(const Triangle& s, const Triangle& t) {
  int a1 = s.supp_lo(), b1 = s.supp_hi(), a2 = t.supp_lo(), b2 = t.supp_hi();
  if (b1 < a2) return a2 - b1;  // disjoint: minimal site distance
  if (b2 < a1) return a1 - b2;
  if (a1 <= a2 && b2 <= b1) return std::min(a2 - a1, b1 - b2);  // t nested in s: side distance
  if (a2 <= a1 && b1 <= b2) return std::min(a1 - a2, b2 - b1);
  return 0;  // partial overlap
}

bool compatible(const TriangleFamily& f) {
  const auto& ts = f.triangles;
  for (size_t i = 0; i < ts.size(); ++i) {
    for (size_t j = i + 1; j < ts.size(); ++j) {
      int a1 = ts[i].supp_lo(), b1 = ts[i].supp_hi();
      int a2 = ts[j].supp_lo(), b2 = ts[j].supp_hi();
      bool disjoint = b1 < a2 || b2 < a1;
      bool nested = (a1 <= a2 && b2 <= b1) || (a2 <= a1 && b1 <= b2);
      if (disjoint) {
        if (triangle_distance(ts[i], ts[j]) < std::min(ts[i].mass(), ts[j].mass()))
          return false;
      } else if (!nested) {
        return false;
      }
    }
  }
  return true;
}

bool family_valid(const TriangleFamily& f) {
  TriangleFamily canon = f;
  std::sort(canon.triangles.begin(), canon.triangles.end());
  try {
    return triangles_from_spins(spins_from_triangles(canon)) == canon;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

double erase_energy(const std::vector<Triangle>& sub, const TriangleFamily& fam,
                    const CouplingTable& t) {
  if (sub.empty()) return 0.0;
  std::vector<Triangle> rest = fam.triangles;
  for (const Triangle& s : sub) {
    auto it = std::find(rest.begin(), rest.end(), s);
    if (it == rest.end())
      throw std::invalid_argument("erased triangles must be members of the family");
    rest.erase(it);
  }
  int wlo = fam.triangles.front().supp_lo(), whi = fam.triangles.front().supp_hi();
  for (const Triangle& x : fam.triangles) {
    wlo = std::min(wlo, x.supp_lo());
    whi = std::max(whi, x.supp_hi());
  }
  // + boundary outside; exterior-exterior pairs cancel in the difference, and
  // the boundary term uses analytic tails, so this window is exact
  TriangleFamily whole{fam.triangles, wlo - 1, whi + 1};
  TriangleFamily reduced{rest, wlo - 1, whi + 1};
  SpinWindow a = spins_from_triangles(whole);
  SpinWindow b = spins_from_triangles(reduced);
  return (bulk_energy(a, t) + boundary_energy(a, t)) -
         (bulk_energy(b, t) + boundary_energy(b, t));
}

double zeta(double alpha) {
  static const double kTop = std::log(3.0) / std::log(2.0) - 1.0;
  if (!(alpha >= 0.0 && alpha < kTop))
    throw std::domain_error("alpha must lie in [0, log2(3) - 1)");
  return 3.0 - 2.0 * std::pow(2.0, alpha);
}

double peierls_phi(long long mass, double alpha) {
  if (mass < 1) throw std::domain_error("mass must be >= 1");
  if (alpha == 0.0) return std::log(double(mass)) + 4.0;
  return std::pow(double(mass), alpha);
}

PeierlsReport peierls_check(const TriangleFamily& f, const CouplingTable& t, double alpha,
                            int c_sep) {
  if (t.alpha() != alpha)
    throw std::invalid_argument("coupling table alpha must match the weight exponent");
  PeierlsReport r;
  if (f.triangles.empty()) {
    r.min_margin = std::numeric_limits<double>::infinity();
    return r;
  }
  double z = zeta(alpha);
  std::vector<Triangle> order = f.triangles;
  std::sort(order.begin(), order.end(), [](const Triangle& a, const Triangle& b) {
    if (a.mass() != b.mass()) return a.mass() < b.mass();
    return a < b;
  });
  std::vector<Triangle> prefix;
  Kahan phisum;
  for (const Triangle& x : order) {
    prefix.push_back(x);
    phisum.add(peierls_phi(x.mass(), alpha));
    r.sequential_margins.push_back(erase_energy(prefix, f, t) - z * phisum.value());
  }
  for (const Contour& g : decompose_contours(f, c_sep)) {
    Kahan ps;
    for (const Triangle& x : g.members) ps.add(peierls_phi(x.mass(), alpha));
    r.contour_margins.push_back(erase_energy(g.members, f, t) - 0.5 * z * ps.value());
  }
  r.min_margin = std::numeric_limits<double>::infinity();
  for (double m : r.sequential_margins) r.min_margin = std::min(r.min_margin, m);
  for (double m : r.contour_margins) r.min_margin = std::min(r.min_margin, m);
  r.pass = r.min_margin >= -1e-9;
  return r;
}

int Contour::cover_lo() const {
  int v = members.front().supp_lo();
  for (const Triangle& t : members) v = std::min(v, t.supp_lo());
  return v;
}

int Contour::cover_hi() const {
  int v = members.front().supp_hi();
  for (const Triangle& t : members) v = std::max(v, t.supp_hi());
  return v;
}

long long Contour::mass() const {
  long long m = 0;
  for (const Triangle& t : members) m += t.mass();
  return m;
}

namespace {

struct Cluster {
  std::vector<Triangle> mem;
  int lo, hi;
  long long mass;
};

long long cluster_distance(const Cluster& a, const Cluster& b) {
  long long d = std::numeric_limits<long long>::max();
  for (const Triangle& s : a.mem)
    for (const Triangle& t : b.mem) d = std::min(d, triangle_distance(s, t));
  return d;
}

long long cube(long long x) { return x * x * x; }

bool should_merge(const Cluster& a, const Cluster& b, long long c) {
  bool disjoint = a.hi < b.lo || b.hi < a.lo;
  if (disjoint)
    return cluster_distance(a, b) <= c * cube(std::min(a.mass, b.mass));
  bool a_inner = b.lo <= a.lo && a.hi <= b.hi;
  bool b_inner = a.lo <= b.lo && b.hi <= a.hi;
  if (a_inner || b_inner) {
    const Cluster& inner = a_inner ? a : b;
    const Cluster& outer = a_inner ? b : a;
    if (cluster_distance(a, b) <= c * cube(inner.mass)) return true;
    for (const Triangle& t : outer.mem) {
      bool contains = t.supp_lo() <= inner.lo && inner.hi <= t.supp_hi();
      bool apart = t.supp_hi() < inner.lo || inner.hi < t.supp_lo();
      if (!contains && !apart) return true;
    }
    return false;
  }
  return true;  // covers overlap without nesting
}

}  // namespace

std::vector<Contour> decompose_contours(const TriangleFamily& f, int c_sep) {
  if (c_sep < 1) throw std::invalid_argument("separation constant must be >= 1");
  std::vector<Cluster> cl;
  cl.reserve(f.triangles.size());
  for (const Triangle& t : f.triangles)
    cl.push_back({{t}, t.supp_lo(), t.supp_hi(), t.mass()});
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < cl.size() && !changed; ++i) {
      for (size_t j = i + 1; j < cl.size() && !changed; ++j) {
        if (should_merge(cl[i], cl[j], c_sep)) {
          cl[i].mem.insert(cl[i].mem.end(), cl[j].mem.begin(), cl[j].mem.end());
          cl[i].lo = std::min(cl[i].lo, cl[j].lo);
          cl[i].hi = std::max(cl[i].hi, cl[j].hi);
          cl[i].mass += cl[j].mass;
          cl.erase(cl.begin() + static_cast<long>(j));
          changed = true;
        }
      }
    }
  }
  std::vector<Contour> out;
  out.reserve(cl.size());
  for (Cluster& c : cl) {
    std::sort(c.mem.begin(), c.mem.end());
    out.push_back({std::move(c.mem)});
  }
  std::sort(out.begin(), out.end(), [](const Contour& a, const Contour& b) {
    return a.members.front() < b.members.front();
  });
  return out;
}

namespace {

std::vector<Triangle> sorted_members(const std::vector<Contour>& cs) {
  std::vector<Triangle> all;
  for (const Contour& c : cs) all.insert(all.end(), c.members.begin(), c.members.end());
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace

ContourReport verify_contours(const TriangleFamily& f, int c_sep) {
  ContourReport rep;
  auto cs = decompose_contours(f, c_sep);

  std::vector<Triangle> want = f.triangles;
  std::sort(want.begin(), want.end());
  if (sorted_members(cs) != want) {
    rep.partition_ok = false;
    rep.detail = "members not conserved";
  }

  for (size_t i = 0; i < cs.size() && rep.separation_ok; ++i) {
    for (size_t j = i + 1; j < cs.size() && rep.separation_ok; ++j) {
      Cluster a{cs[i].members, cs[i].cover_lo(), cs[i].cover_hi(), cs[i].mass()};
      Cluster b{cs[j].members, cs[j].cover_lo(), cs[j].cover_hi(), cs[j].mass()};
      if (should_merge(a, b, c_sep)) {
        rep.separation_ok = false;
        rep.detail = "output contours violate the separation requirement";
      }
    }
  }

  for (const Contour& c : cs) {
    TriangleFamily sub{c.members, f.lo, f.hi};
    auto again = decompose_contours(sub, c_sep);
    if (again.size() != 1 || !(again.front() == c)) {
      rep.idempotent_ok = false;
      rep.detail = "a contour does not decompose to itself";
      break;
    }
  }

  TriangleFamily rev = f;
  std::reverse(rev.triangles.begin(), rev.triangles.end());
  if (!(decompose_contours(rev, c_sep) == cs)) {
    rep.permutation_ok = false;
    rep.detail = "input order changed the decomposition";
  }

  if (!f.triangles.empty()) {
    int wlo = f.triangles.front().supp_lo(), whi = f.triangles.front().supp_hi();
    long long total = 0;
    for (const Triangle& t : f.triangles) {
      wlo = std::min(wlo, t.supp_lo());
      whi = std::max(whi, t.supp_hi());
      total += t.mass();
    }
    long long off = (whi - wlo + 1) + c_sep * cube(total) + total + 7;
    if (off < 100000000LL) {  // keep coordinates in int range
      TriangleFamily uni = f;
      uni.hi = f.hi + static_cast<int>(off);
      for (const Triangle& t : f.triangles)
        uni.triangles.push_back(
            {t.left_x + static_cast<int>(off), t.right_x + static_cast<int>(off)});
      std::sort(uni.triangles.begin(), uni.triangles.end());
      auto both = decompose_contours(uni, c_sep);
      std::vector<Contour> expect = cs;
      for (const Contour& c : cs) {
        Contour shifted;
        for (const Triangle& t : c.members)
          shifted.members.push_back(
              {t.left_x + static_cast<int>(off), t.right_x + static_cast<int>(off)});
        expect.push_back(shifted);
      }
      std::sort(expect.begin(), expect.end(), [](const Contour& a, const Contour& b) {
        return a.members.front() < b.members.front();
      });
      if (!(both == expect)) {
        rep.independence_ok = false;
        rep.detail = "far-translated union did not decompose blockwise";
      }
    }
  }
  return rep;
}

std::pair<double, double> separation_series(int c_sep) {
  if (c_sep < 1) throw std::invalid_argument("separation constant must be >= 1");
  // sum_{m>=1} 4m/(c m)^3 = (4/c^3) sum 1/m^2, truncated with the integral
  // bracket sum_{m>M} 1/m^2 in (1/(M+1), 1/M)
  const long long kTerms = 2000000;
  Kahan acc;
  for (long long m = kTerms; m >= 1; --m) acc.add(1.0 / (double(m) * double(m)));
  double base = 4.0 / double(cube(c_sep));
  double lo = base * (acc.value() + 1.0 / double(kTerms + 1));
  double hi = base * (acc.value() + 1.0 / double(kTerms));
  return {(lo + hi) / 2.0, (hi - lo) / 2.0};
}

int min_separation_constant() {
  for (int c = 1; c <= 64; ++c) {
    auto [mid, hw] = separation_series(c);
    if (mid + hw <= 0.5) return c;
  }
  throw std::logic_error("no admissible separation constant below 64");
}

double contour_weight(const Contour& g, double b, double alpha) {
  Kahan phis;
  for (const Triangle& t : g.members) phis.add(peierls_phi(t.mass(), alpha));
  return std::exp(-b * phis.value());
}

namespace {

struct EntropyScan {
  int m;
  double b, alpha;
  int c_sep;
  bool origin_in_cover;
  long long reach;
  EntropySum out;
  std::vector<Triangle> cur;

  void consider() {
    int max_hi = 0;
    for (const Triangle& t : cur) max_hi = std::max(max_hi, t.supp_hi());
    TriangleFamily fam{cur, -1, max_hi + 1};
    try {
      check_laminar(fam.triangles);
    } catch (const std::invalid_argument&) {
      return;
    }
    if (!compatible(fam)) return;
    if (decompose_contours(fam, c_sep).size() != 1) return;
    if (!family_valid(fam)) return;
    Kahan phis;
    for (const Triangle& t : cur) phis.add(peierls_phi(t.mass(), alpha));
    double weight = std::exp(-b * phis.value());
    long long translates;
    if (origin_in_cover) {
      translates = max_hi + 1;  // cover spans [0, max_hi]
    } else {
      std::vector<char> covered(static_cast<size_t>(max_hi) + 1, 0);
      for (const Triangle& t : cur)
        for (int i = t.supp_lo(); i <= t.supp_hi(); ++i) covered[static_cast<size_t>(i)] = 1;
      translates = std::count(covered.begin(), covered.end(), char(1));
    }
    out.sum += weight * double(translates);
    out.family_count += translates;
    out.shape_count += 1;
  }

  void recurse(int remaining, int max_hi) {
    if (remaining == 0) {
      consider();
      return;
    }
    bool first = cur.empty();
    for (int mass = 1; mass <= remaining; ++mass) {
      int lo_min = first ? 0 : cur.back().supp_lo();
      long long lo_max = first ? 0 : max_hi + reach;
      for (long long lo = lo_min; lo <= lo_max; ++lo) {
        int hi = static_cast<int>(lo) + mass - 1;
        if (!first) {  // canonical order: strictly increasing (lo, hi)
          const Triangle& prev = cur.back();
          if (lo < prev.supp_lo() || (lo == prev.supp_lo() && hi <= prev.supp_hi()))
            continue;
        }
        cur.push_back({static_cast<int>(lo) - 1, hi});
        recurse(remaining - mass, std::max(max_hi, hi));
        cur.pop_back();
      }
    }
  }
};

}  // namespace

EntropySum entropy_sum(int m, double b, double alpha, int c_sep, bool origin_in_cover) {
  if (m < 1 || m > 4)
    throw std::invalid_argument("total mass must lie in [1, 4] (enumeration guard)");
  if (c_sep < 1) throw std::invalid_argument("separation constant must be >= 1");
  if (!(alpha >= 0.0 && alpha < 1.0)) throw std::domain_error("alpha must lie in [0, 1)");
  EntropyScan scan;
  scan.m = m;
  scan.b = b;
  scan.alpha = alpha;
  scan.c_sep = c_sep;
  scan.origin_in_cover = origin_in_cover;
  scan.reach = (m == 1) ? 0 : c_sep * cube(m - 1);
  scan.out.bound = 2.0 * double(m) * std::exp(-b * peierls_phi(m, alpha));
  scan.recurse(m, 0);
  return scan.out;
}

}  // namespace rfim
