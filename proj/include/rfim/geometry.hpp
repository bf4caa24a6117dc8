#pragma once
#include <string>
#include <vector>

#include "rfim/core.hpp"

namespace rfim {

/** Maximal constant block of spins: sites [start, end], all equal to sign. */
struct Run {
  int start = 0;
  int end = 0;
  int sign = +1;
  int length() const { return end - start + 1; }
  bool operator==(const Run& o) const {
    return start == o.start && end == o.end && sign == o.sign;
  }
};

/** All maximal constant blocks of the window, left to right (they tile it). */
std::vector<Run> maximal_blocks(const SpinWindow& w);

/** Run decomposition of the whole window, indexed so that block number 1
 *  contains the origin; block at vector position p has contract index
 *  p - origin_block + 1 and sign (-1)^(j+1) * sign(block 1). b_v / e_v are the
 *  contract indices of the leftmost / rightmost blocks fully inside V
 *  (b_v > e_v when no block fits inside V). */
struct RunDecomposition {
  std::vector<Run> blocks;
  int origin_block = 0;  // position in `blocks` of the block containing site 0
  long long b_v = 0;
  long long e_v = -1;
  bool any_inside = false;

  long long index_of(int position) const { return position - origin_block + 1; }
  int position_of(long long index) const {
    return static_cast<int>(index) + origin_block - 1;
  }
  int origin_sign() const { return blocks[static_cast<size_t>(origin_block)].sign; }
};

/** Decompose the window into maximal runs; V = [v_lo, v_hi] must contain the
 *  origin and lie inside the window. */
RunDecomposition runs(const SpinWindow& w, int v_lo, int v_hi);

/** Triangle over the line: interface endpoints at half-integer positions
 *  left_x + 1/2 and right_x + 1/2; support sites [left_x + 1, right_x];
 *  mass = number of support sites. */
struct Triangle {
  int left_x = 0;
  int right_x = 0;
  int supp_lo() const { return left_x + 1; }
  int supp_hi() const { return right_x; }
  long long mass() const { return right_x - left_x; }
  bool operator==(const Triangle& o) const {
    return left_x == o.left_x && right_x == o.right_x;
  }
  bool operator<(const Triangle& o) const {
    return left_x != o.left_x ? left_x < o.left_x : right_x < o.right_x;
  }
};

/** Family of triangles over a window with + boundary. Canonical member order:
 *  sorted by (left_x, right_x). */
struct TriangleFamily {
  std::vector<Triangle> triangles;
  int lo = 0;
  int hi = -1;
  bool operator==(const TriangleFamily& o) const {
    return triangles == o.triangles && lo == o.lo && hi == o.hi;
  }
};

/** Build the triangle family of a spin configuration (+ boundary required):
 *  interfaces sprout lines at +-45 degrees; the closest adjacent pair of
 *  interface points collides first (ties: leftmost) and forms a triangle. */
TriangleFamily triangles_from_spins(const SpinWindow& w);

/** Paint the configuration of a family: a site is -1 iff covered by an odd
 *  number of supports. Supports must lie inside the window and be pairwise
 *  disjoint-or-nested. */
SpinWindow spins_from_triangles(const TriangleFamily& f);

/** Minimal site distance between two disjoint supports; for nested supports
 *  the distance to the enclosing triangle's slanted sides, min(c-a, b-d) for
 *  [c,d] inside [a,b]; 0 for partially overlapping supports. */
long long triangle_distance(const Triangle& s, const Triangle& t);

/** Pairwise compatibility: every disjoint-support pair at site distance
 *  >= min of the two masses; nested pairs are not constrained here;
 *  partially overlapping supports are incompatible. */
bool compatible(const TriangleFamily& f);

/** True when the family is reproduced by construction from its own painting. */
bool family_valid(const TriangleFamily& f);

/** Energy cost of erasing `sub` from `fam` (sub must be members of fam):
 *  the + boundary interaction energy of fam's configuration minus that of
 *  (fam minus sub), evaluated exactly via analytic tail sums. */
double erase_energy(const std::vector<Triangle>& sub, const TriangleFamily& fam,
                    const CouplingTable& t);

/** zeta(alpha) = 3 - 2^(alpha+1); positive exactly on [0, log2(3) - 1). */
double zeta(double alpha);

/** Weight exponent phi(m): m^alpha for alpha > 0, log(m) + 4 for alpha = 0. */
double peierls_phi(long long mass, double alpha);

struct PeierlsReport {
  std::vector<double> sequential_margins;  // ascending-mass prefixes
  std::vector<double> contour_margins;
  double min_margin = 0.0;  // +inf for an empty family
  bool pass = true;         // all margins nonnegative (tolerance 1e-9)
};

/** Erasure-cost lower bounds: sequential prefixes in ascending-mass order
 *  against zeta * sum phi, and whole contours against (zeta/2) * sum phi. */
PeierlsReport peierls_check(const TriangleFamily& f, const CouplingTable& t, double alpha,
                            int c_sep = 3);

/** Contour: a cluster of triangles; cover = smallest triangle containing all
 *  members; mass = sum of member masses. */
struct Contour {
  std::vector<Triangle> members;  // canonical order
  int cover_lo() const;           // support hull lower end
  int cover_hi() const;
  long long mass() const;
  bool operator==(const Contour& o) const { return members == o.members; }
};

/** Partition a family into contours: iteratively merge clusters that are too
 *  close (disjoint covers: site distance <= C * min(mass)^3; nested covers:
 *  side distance <= C * inner_mass^3, or some outer member neither contains
 *  nor avoids the inner cover; overlapping covers always merge) until stable.
 *  The merge relation is monotone, so the fixpoint is order-independent. */
std::vector<Contour> decompose_contours(const TriangleFamily& f, int c_sep = 3);

struct ContourReport {
  bool partition_ok = true;     // members conserved as a multiset
  bool separation_ok = true;    // all pairwise separation requirements hold
  bool idempotent_ok = true;    // each contour decomposes to itself
  bool permutation_ok = true;   // input order does not matter
  bool independence_ok = true;  // far-translated union decomposes blockwise
  std::string detail;
  bool ok() const {
    return partition_ok && separation_ok && idempotent_ok && permutation_ok &&
           independence_ok;
  }
};

/** Decompose the family and audit the contour-partition properties. */
ContourReport verify_contours(const TriangleFamily& f, int c_sep = 3);

/** Smallest integer C >= 1 with sum_{m>=1} 4m / (C m)^3 <= 1/2. */
int min_separation_constant();

/** The series above for integer C: midpoint value and rigorous half-width. */
std::pair<double, double> separation_series(int c_sep);

/** Product over members of exp(-b * phi(mass)). */
double contour_weight(const Contour& g, double b, double alpha);

struct EntropySum {
  double sum = 0.0;            // sum of weights over single contours at the origin
  double bound = 0.0;          // 2 m exp(-b phi(m))
  long long family_count = 0;  // number of contours counted (weight-independent)
  long long shape_count = 0;   // translation classes
};

/** Sum of contour weights over all single-contour families of total mass m
 *  anchored at the origin: origin_in_cover = true counts families whose cover
 *  contains the origin, false counts families whose member supports do.
 *  Guarded at m <= 4. */
EntropySum entropy_sum(int m, double b, double alpha, int c_sep = 3,
                       bool origin_in_cover = true);

}  // namespace rfim
