#include "ffcm/graphs.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>

namespace ffcm {

namespace {

std::uint64_t upow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

GraphRing::GraphRing(Poly g) : g_(g.monic()) {
  if (g_.deg() < 1) throw DomainError("GraphRing: deg g >= 1 required");
  Poly rest = g_;
  for (int d = 1; d <= rest.deg(); ++d) {
    for (const Poly& w : irreducibles_of_degree(g_.field(), d)) {
      if (!w.divides(rest)) continue;
      Factor fct;
      fct.prime = w;
      fct.mult = 0;
      fct.modulus = Poly::constant(g_.field(), 1);
      while (w.divides(rest)) {
        rest = rest / w;
        ++fct.mult;
        fct.modulus = fct.modulus * w;
      }
      factors_.push_back(std::move(fct));
      if (rest.deg() == 0) break;
    }
    if (rest.deg() == 0) break;
  }
  if (rest.deg() != 0) throw Error("GraphRing: factorization failed");
}

std::vector<Poly> GraphRing::sqrt_of_unit(FqElem nu) const {
  std::vector<Poly> roots;
  Fq f = field();
  for (const auto& fct : factors_) {
    ResidueField rf(fct.prime);
    auto r0 = rf.sqrt(Poly::constant(f, nu));
    if (!r0 || r0->is_zero())
      throw DomainError("sqrt_of_unit: nu is not a unit square mod a factor");
    Poly x = *r0;
    // Hensel: lift x with x^2 = nu from mod prime^e to mod prime^(2e).
    Poly cur = fct.prime;
    while (cur.deg() < fct.modulus.deg()) {
      cur = cur * cur;
      Poly mod = cur.deg() >= fct.modulus.deg() ? fct.modulus : cur;
      Poly err = (Poly::constant(f, nu) - x * x) % mod;
      Poly corr = (err * inv_mod(x.mul_scalar(f.from_int(2)), mod)) % mod;
      x = (x + corr) % mod;
    }
    x = x % fct.modulus;
    Poly nx = (-x) % fct.modulus;
    roots.push_back(nx.lex_less(x) ? nx : x);
  }
  return roots;
}

std::uint64_t GraphRing::sl2_order() const {
  std::uint64_t n = 1;
  for (const auto& fct : factors_) {
    std::uint64_t P = upow(field().q(), fct.prime.deg());
    std::uint64_t local = P * P * P - P;  // |SL2(F_P)|
    n *= local * upow(P, 3 * (fct.mult - 1));
  }
  return n;
}

std::uint64_t GraphRing::pgl2_order() const {
  // Per local factor |GL2| / |R*| = (P^3 - P) P^(3(e-1)), numerically the
  // same as the SL2 order in odd characteristic.
  return sl2_order();
}

bool ProjMat::operator==(const ProjMat& o) const {
  if (comps.size() != o.comps.size()) return false;
  for (std::size_t i = 0; i < comps.size(); ++i)
    for (int j = 0; j < 4; ++j)
      if (comps[i][j] != o.comps[i][j]) return false;
  return true;
}

std::string ProjMat::key() const {
  std::string k;
  for (const auto& m : comps)
    for (const auto& e : m) {
      k.push_back(static_cast<char>(e.deg() + 1));
      for (int d = 0; d <= e.deg(); ++d) k.push_back(static_cast<char>(e.coeff(d)));
      k.push_back('|');
    }
  return k;
}

namespace {

std::array<Poly, 4> canon_component(const GraphRing::Factor& fct, std::array<Poly, 4> m) {
  for (auto& e : m) e = e % fct.modulus;
  // First row-major entry that is a unit (not divisible by the prime).
  for (int j = 0; j < 4; ++j) {
    if (m[j].is_zero()) continue;
    if (!fct.prime.divides(m[j])) {
      Poly inv = inv_mod(m[j], fct.modulus);
      for (auto& e : m) e = (e * inv) % fct.modulus;
      return m;
    }
  }
  throw DomainError("canon_component: matrix has no unit entry (not invertible)");
}

}  // namespace

ProjMat proj_identity(const GraphRing& ring) {
  Fq f = ring.field();
  return proj_from_entries(ring, Poly::constant(f, 1), Poly(f), Poly(f), Poly::constant(f, 1));
}

ProjMat proj_from_entries(const GraphRing& ring, const Poly& a, const Poly& b, const Poly& c,
                          const Poly& d) {
  ProjMat m;
  for (const auto& fct : ring.factors())
    m.comps.push_back(canon_component(fct, {a, b, c, d}));
  return m;
}

ProjMat proj_mul(const GraphRing& ring, const ProjMat& x, const ProjMat& y) {
  ProjMat out;
  const auto& fs = ring.factors();
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const auto& a = x.comps[i];
    const auto& b = y.comps[i];
    std::array<Poly, 4> m{
        a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
    out.comps.push_back(canon_component(fs[i], std::move(m)));
  }
  return out;
}

ProjMat proj_inverse(const GraphRing& ring, const ProjMat& x) {
  // adjugate = [d, -b; -c, a] is the inverse up to the (unit) determinant.
  ProjMat out;
  const auto& fs = ring.factors();
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const auto& a = x.comps[i];
    out.comps.push_back(canon_component(fs[i], {a[3], -a[1], -a[2], a[0]}));
  }
  return out;
}

std::vector<ProjMat> morgenstern_generators(const GraphRing& ring, FqElem nu) {
  Fq f = ring.field();
  if (f.is_square(nu)) throw DomainError("morgenstern_generators: nu must be a non-square in F_q");
  if (gcd_monic(ring.modulus(), Poly::t(f) * (Poly::t(f) - Poly::constant(f, 1))).deg() != 0)
    throw DomainError("morgenstern_generators: g must be coprime to t(t-1)");
  std::vector<Poly> roots = ring.sqrt_of_unit(nu);
  Poly tm1 = Poly::t(f) - Poly::constant(f, 1);

  std::vector<ProjMat> gens;
  for (FqElem x3 = 0; x3 < f.q(); ++x3)
    for (FqElem x4 = 0; x4 < f.q(); ++x4) {
      // nu x4^2 - x3^2 = 1
      if (f.sub(f.mul(nu, f.mul(x4, x4)), f.mul(x3, x3)) != 1) continue;
      ProjMat m;
      for (std::size_t i = 0; i < ring.factors().size(); ++i) {
        const auto& fct = ring.factors()[i];
        const Poly& root = roots[i];
        Poly p3 = Poly::constant(f, x3), p4 = Poly::constant(f, x4);
        std::array<Poly, 4> e{Poly::constant(f, 1), p3 - p4 * root,
                              tm1 * (p3 + p4 * root), Poly::constant(f, 1)};
        m.comps.push_back(canon_component(fct, std::move(e)));
      }
      gens.push_back(std::move(m));
    }
  if (gens.size() != f.q() + 1)
    throw ConstructionError("morgenstern_generators: expected q+1 generators, got " +
                            std::to_string(gens.size()));
  // Distinct classes, inverse-closed, determinant t (per factor, up to unit squares).
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (gens[i] == gens[j]) throw ConstructionError("morgenstern_generators: repeated class");
  for (const auto& gmat : gens) {
    ProjMat inv = proj_inverse(ring, gmat);
    bool found = false;
    for (const auto& h : gens)
      if (h == inv) found = true;
    if (!found) throw ConstructionError("morgenstern_generators: set not closed under inverse");
  }
  return gens;
}

CayleyGraph build_graph(Fq f, const Poly& g, FqElem nu, const Budget& budget) {
  GraphRing ring(g);
  CayleyGraph gr;
  gr.g = ring.modulus();
  gr.nu = nu;
  gr.degree = static_cast<int>(f.q()) + 1;
  gr.generators = morgenstern_generators(ring, nu);
  gr.pgl2_order = ring.pgl2_order();
  gr.psl2_order = ring.sl2_order() / 2;

  std::uint64_t used = 0;
  ProjMat id = proj_identity(ring);
  gr.vertices.push_back(id);
  gr.index.emplace(id.key(), 0);
  std::deque<std::uint32_t> queue{0};
  while (!queue.empty()) {
    std::uint32_t v = queue.front();
    queue.pop_front();
    for (const auto& s : gr.generators) {
      ProjMat w = proj_mul(ring, gr.vertices[v], s);
      std::string key = w.key();
      auto it = gr.index.find(key);
      std::uint32_t wi;
      if (it == gr.index.end()) {
        budget.charge(gr.degree, used, "build_graph");
        wi = static_cast<std::uint32_t>(gr.vertices.size());
        gr.vertices.push_back(w);
        gr.index.emplace(std::move(key), wi);
        queue.push_back(wi);
      } else {
        wi = it->second;
      }
      gr.adjacency.push_back(wi);
    }
  }
  // adjacency was appended in BFS order of v; it is already v-major.
  // regularity check
  if (gr.adjacency.size() != gr.vertices.size() * gr.degree)
    throw ConstructionError("build_graph: adjacency size mismatch");
  // 2-coloring attempt for bipartite detection.
  gr.side.assign(gr.vertices.size(), 255);
  gr.side[0] = 0;
  std::deque<std::uint32_t> q2{0};
  bool bip = true;
  while (!q2.empty()) {
    std::uint32_t v = q2.front();
    q2.pop_front();
    for (int j = 0; j < gr.degree; ++j) {
      std::uint32_t w = gr.neighbor(v, j);
      if (gr.side[w] == 255) {
        gr.side[w] = gr.side[v] ^ 1;
        q2.push_back(w);
      } else if (gr.side[w] == gr.side[v]) {
        bip = false;
      }
    }
  }
  gr.bipartite = bip;
  return gr;
}

std::optional<std::uint32_t> CayleyGraph::lookup(const ProjMat& m) const {
  auto it = index.find(m.key());
  if (it == index.end()) return std::nullopt;
  return it->second;
}

std::vector<int> bfs_distances(const CayleyGraph& g, std::uint32_t from) {
  std::vector<int> dist(g.vertices.size(), -1);
  dist[from] = 0;
  std::deque<std::uint32_t> queue{from};
  while (!queue.empty()) {
    std::uint32_t v = queue.front();
    queue.pop_front();
    for (int j = 0; j < g.degree; ++j) {
      std::uint32_t w = g.neighbor(v, j);
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

int graph_distance(const CayleyGraph& g, const ProjMat& from, const ProjMat& to) {
  auto fi = g.lookup(from), ti = g.lookup(to);
  if (!fi || !ti) throw DomainError("graph_distance: vertex not in the component");
  auto dist = bfs_distances(g, *fi);
  return dist[*ti];
}

int diameter(const CayleyGraph& g) {
  auto dist = bfs_distances(g, 0);
  int d = 0;
  for (int x : dist) {
    if (x < 0) throw DomainError("diameter: graph not connected from the identity");
    d = std::max(d, x);
  }
  return d;
}

namespace {
constexpr std::size_t kDenseCap = 4096;
}

std::vector<double> spectrum(const CayleyGraph& g) {
  std::size_t n = g.vertices.size();
  if (n > kDenseCap) throw BudgetError("spectrum: dense eigensolve capped at 4096 vertices");
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t v = 0; v < n; ++v)
    for (int j = 0; j < g.degree; ++j) A(v, g.neighbor(v, j)) += 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + n);
  std::sort(out.begin(), out.end());
  return out;
}

double second_eigenvalue(const CayleyGraph& g) {
  auto ev = spectrum(g);
  double k = g.degree;
  for (auto it = ev.rbegin(); it != ev.rend(); ++it)
    if (*it < k - 1e-6) return *it;
  throw Error("second_eigenvalue: spectrum degenerate");
}

double max_nontrivial_eigenvalue(const CayleyGraph& g) {
  std::size_t n = g.vertices.size();
  double k = g.degree;
  if (n <= kDenseCap) {
    auto ev = spectrum(g);
    // drop one +k; drop one -k if bipartite
    bool dropped_top = false, dropped_bot = !g.bipartite;
    double best = 0;
    for (auto it = ev.rbegin(); it != ev.rend(); ++it) {
      if (!dropped_top && std::abs(*it - k) < 1e-9) {
        dropped_top = true;
        continue;
      }
      best = std::max(best, std::abs(*it));
      break;  // the largest remaining from the top
    }
    for (auto it = ev.begin(); it != ev.end(); ++it) {
      if (!dropped_bot && std::abs(*it + k) < 1e-9) {
        dropped_bot = true;
        continue;
      }
      best = std::max(best, std::abs(*it));
      break;
    }
    return best;
  }
  // Deflated power iteration on A^2 (eigenvalues lambda^2 >= 0).
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> x(n), ax(n), aax(n);
  for (auto& v : x) v = u(rng);
  auto matvec = [&](const std::vector<double>& in, std::vector<double>& out) {
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t v = 0; v < n; ++v)
      for (int j = 0; j < g.degree; ++j) out[v] += in[g.neighbor(v, j)];
  };
  auto deflate = [&](std::vector<double>& v) {
    double s1 = 0;
    for (std::size_t i = 0; i < n; ++i) s1 += v[i];
    s1 /= n;
    for (auto& vi : v) vi -= s1;
    if (g.bipartite) {
      double s2 = 0;
      for (std::size_t i = 0; i < n; ++i) s2 += (g.side[i] ? -v[i] : v[i]);
      s2 /= n;
      for (std::size_t i = 0; i < n; ++i) v[i] -= (g.side[i] ? -s2 : s2);
    }
  };
  double rho = 0;
  for (int iter = 0; iter < 20000; ++iter) {
    deflate(x);
    double nx = 0;
    for (auto v : x) nx += v * v;
    nx = std::sqrt(nx);
    for (auto& v : x) v /= nx;
    matvec(x, ax);
    matvec(ax, aax);
    deflate(aax);
    double num = 0;
    for (std::size_t i = 0; i < n; ++i) num += x[i] * aax[i];
    double res = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double r = aax[i] - num * x[i];
      res += r * r;
    }
    rho = num;
    if (std::sqrt(res) <= 1e-8 * std::max(1.0, std::abs(rho))) break;
    x = aax;
  }
  return std::sqrt(std::max(rho, 0.0));
}

std::optional<Poly> find_suitable_g(Fq f, int deg, GraphProfile profile, FqElem nu) {
  Poly t = Poly::t(f);
  Poly tm1 = t - Poly::constant(f, 1);
  for (const Poly& g : irreducibles_of_degree(f, deg)) {
    if (gcd_monic(g, t * tm1).deg() != 0) continue;
    ResidueField rf(g);
    bool t_square = rf.euler_is_square(t);
    bool m1_square = rf.euler_is_square(Poly::constant(f, f.neg(1)));
    bool nu_square = rf.euler_is_square(Poly::constant(f, nu));
    if (!nu_square) continue;  // generators need i = sqrt(nu)
    if (profile == GraphProfile::kBipartite && !t_square && m1_square) return g;
    if (profile == GraphProfile::kNonBipartite && t_square && m1_square) return g;
  }
  return std::nullopt;
}

LowerBoundReport lower_bound_experiment_bipartite(Fq f, const Poly& g, const Budget& budget) {
  LowerBoundReport rep;
  rep.g = g;
  CayleyGraph graph = build_graph(f, g, f.neg(1), budget);
  rep.n_vertices = graph.vertices.size();
  GraphRing ring(g);
  ProjMat I = proj_identity(ring);
  ProjMat W = proj_from_entries(ring, Poly::constant(f, 1), Poly(f), Poly(f),
                                Poly::constant(f, f.neg(1)));
  rep.dist_IW = graph_distance(graph, I, W);
  rep.parity_even = rep.dist_IW % 2 == 0;
  rep.diameter = diameter(graph);
  double logq = std::log(static_cast<double>(rep.n_vertices)) / std::log(static_cast<double>(f.q()));
  rep.lower_bound_43 = 4.0 / 3.0 * logq;
  rep.upper_bound_lps = 2.0 * logq + 6.0;
  rep.component_matches_psl2 = true;
  if (!graph.bipartite) rep.notes.push_back("graph is not bipartite (unexpected for profile)");
  if (rep.dist_IW < 4 * g.deg())
    rep.notes.push_back("dist(I, W) below 4 deg g");
  return rep;
}

LowerBoundReport lower_bound_experiment_nonbipartite(Fq f, const Poly& r, const Budget& budget) {
  LowerBoundReport rep;
  // g = (t^2 + 1/4) r
  Poly quarter = Poly::constant(f, f.inv(f.from_int(4)));
  Poly tsq = Poly::t(f) * Poly::t(f) + quarter;
  Poly g = (tsq * r).monic();
  rep.g = g;
  CayleyGraph graph = build_graph(f, g, f.neg(1), budget);
  rep.n_vertices = graph.vertices.size();
  GraphRing ring(g);
  ProjMat I = proj_identity(ring);
  ProjMat Iprime =
      proj_from_entries(ring, Poly::constant(f, 1), r, Poly(f), Poly::constant(f, 1));
  // W' = sqrt(-1) W; as a scalar class this is [diag(1, -1)].
  ProjMat Wprime = proj_from_entries(ring, Poly::constant(f, 1), Poly(f), Poly(f),
                                     Poly::constant(f, f.neg(1)));
  rep.component_matches_psl2 = graph.vertices.size() == ring.sl2_order() / 2;
  if (!rep.component_matches_psl2)
    rep.notes.push_back("identity component order " + std::to_string(graph.vertices.size()) +
                        " differs from |PSL2| = " + std::to_string(ring.sl2_order() / 2) +
                        " of the product ring");
  auto di = graph.lookup(Iprime);
  auto dw = graph.lookup(Wprime);
  if (di)
    rep.dist_II_prime = graph_distance(graph, I, Iprime);
  else
    rep.notes.push_back("I' not in the identity component");
  if (dw)
    rep.dist_IW_prime = graph_distance(graph, I, Wprime);
  else
    rep.notes.push_back("W' not in the identity component");
  rep.diameter = diameter(graph);
  double logq = std::log(static_cast<double>(rep.n_vertices)) / std::log(static_cast<double>(f.q()));
  rep.lower_bound_43 = 4.0 / 3.0 * logq;
  rep.upper_bound_lps = 2.0 * logq + 6.0;
  return rep;
}

}  // namespace ffcm
