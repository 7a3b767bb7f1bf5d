#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ffcm/budget.hpp"
#include "ffcm/poly.hpp"

namespace ffcm {

// Residue ring F_q[t]/(g) decomposed into coprime prime-power factors; matrix
// classes are canonicalized per factor (PGL over a product ring is the
// product of the factor PGLs).
class GraphRing {
 public:
  struct Factor {
    Poly prime;
    int mult = 1;
    Poly modulus;  // prime^mult
  };

  explicit GraphRing(Poly g);

  const Poly& modulus() const { return g_; }
  const std::vector<Factor>& factors() const { return factors_; }
  const Fq& field() const { return g_.field(); }

  // square root of a unit constant nu mod every factor (Hensel lift from the
  // residue field); lexicographically smaller root per factor.
  std::vector<Poly> sqrt_of_unit(FqElem nu) const;

  std::uint64_t sl2_order() const;   // |SL_2(F_q[t]/(g))|
  std::uint64_t pgl2_order() const;  // |PGL_2| = |GL_2| / |units|

 private:
  Poly g_;
  std::vector<Factor> factors_;
};

// 2x2 matrix class modulo scalars, stored per CRT factor in canonical form
// (first unit entry in row-major order scaled to 1).
struct ProjMat {
  std::vector<std::array<Poly, 4>> comps;  // [factor]: a b / c d

  bool operator==(const ProjMat& o) const;
  std::string key() const;  // canonical byte key for hashing
};

struct CayleyGraph {
  Poly g;
  FqElem nu;
  int degree = 0;  // q + 1
  std::vector<ProjMat> generators;
  std::vector<ProjMat> vertices;
  std::vector<std::uint32_t> adjacency;  // vertices.size() * degree
  std::unordered_map<std::string, std::uint32_t> index;
  bool bipartite = false;
  std::vector<std::uint8_t> side;  // 2-coloring when bipartite
  std::uint64_t pgl2_order = 0, psl2_order = 0;

  std::optional<std::uint32_t> lookup(const ProjMat& m) const;
  std::uint32_t neighbor(std::uint32_t v, int j) const { return adjacency[v * degree + j]; }
};

// The ring, with helpers for building matrices.
ProjMat proj_identity(const GraphRing& ring);
// Entries given as polynomials mod g; reduced and canonicalized per factor.
ProjMat proj_from_entries(const GraphRing& ring, const Poly& a, const Poly& b, const Poly& c,
                          const Poly& d);
ProjMat proj_mul(const GraphRing& ring, const ProjMat& x, const ProjMat& y);
ProjMat proj_inverse(const GraphRing& ring, const ProjMat& x);

// The q+1 norm-t generators: x1 = 1, x2 = 0, nu x4^2 - x3^2 = 1 mapped through
//   (x1, x2, x3, x4) -> [ x1 - x2 i, x3 - x4 i ; (t-1)(x3 + x4 i), x1 + x2 i ]
// with i = sqrt(nu) in the ring.  Construction-time checks: q+1 distinct
// classes, closed under inverse, determinant t.
std::vector<ProjMat> morgenstern_generators(const GraphRing& ring, FqElem nu);

// Breadth-first closure from the identity (handles the PSL case by taking the
// component of the identity).
CayleyGraph build_graph(Fq f, const Poly& g, FqElem nu, const Budget& budget = {});

int graph_distance(const CayleyGraph& g, const ProjMat& from, const ProjMat& to);
std::vector<int> bfs_distances(const CayleyGraph& g, std::uint32_t from);
int diameter(const CayleyGraph& g);  // single-source from the identity (vertex-transitive)

// Full adjacency spectrum, ascending (dense; vertex count <= 4096).
std::vector<double> spectrum(const CayleyGraph& g);
// Largest eigenvalue strictly below the degree.
double second_eigenvalue(const CayleyGraph& g);
// max |lambda| over nontrivial eigenvalues (excludes +degree, and -degree for
// bipartite graphs); dense solve or deflated power iteration beyond the dense
// cap (residual certified <= 1e-8).
double max_nontrivial_eigenvalue(const CayleyGraph& g);

enum class GraphProfile { kBipartite, kNonBipartite };

// First (lex) monic irreducible g of the given degree, coprime to t(t-1), with
//   bipartite:     t a non-square and -1 a square mod g
//   non-bipartite: t and -1 both squares mod g
// and nu a square mod g (so that the generators exist).
std::optional<Poly> find_suitable_g(Fq f, int deg, GraphProfile profile, FqElem nu);

struct LowerBoundReport {
  Poly g;
  std::uint64_t n_vertices = 0;
  int dist_IW = -1;        // bipartite variant
  int dist_II_prime = -1;  // non-bipartite variant
  int dist_IW_prime = -1;
  int diameter = -1;
  double lower_bound_43 = 0;  // (4/3) log_q |X|
  double upper_bound_lps = 0;  // 2 log_q |X| + 6
  bool parity_even = false;
  bool component_matches_psl2 = true;  // flagged when the identity component
                                       // order differs from |PSL2| of the ring
  std::vector<std::string> notes;
};

LowerBoundReport lower_bound_experiment_bipartite(Fq f, const Poly& g, const Budget& budget = {});
// Builds X^{q,(t^2+1/4) r} and measures max(dist(I,I'), dist(I,W')).
LowerBoundReport lower_bound_experiment_nonbipartite(Fq f, const Poly& r,
                                                     const Budget& budget = {});

}  // namespace ffcm
