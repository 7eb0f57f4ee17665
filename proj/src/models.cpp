#include "gkm/models.hpp"

#include <algorithm>
#include <map>

#include "gkm/error.hpp"

namespace gkm {

CharacteristicPair standard_pair(const std::vector<Factor> &factors) {
  CharacteristicPair p;
  p.factors = factors;
  int n = 0;
  for (const auto &f : factors)
    n += f.size;
  int off = 0;
  for (const auto &f : factors) {
    std::vector<QVector> lam;
    if (f.kind == FactorKind::Delta) {
      QVector sum(static_cast<std::size_t>(n));
      for (int i = 0; i < f.size; ++i)
        sum[off + i] = -1;
      lam.push_back(sum);
      for (int i = 0; i < f.size; ++i)
        lam.push_back(QVector::unit(n, off + i));
    } else {
      for (int j = 0; j < f.size; ++j)
        lam.push_back(QVector::unit(n, off + j));
    }
    p.lambda.push_back(std::move(lam));
    off += f.size;
  }
  return p;
}

GkmGraph product_model(const CharacteristicPair &pair) {
  ProductGraph p = build_product_graph(pair.factors);
  const int n = p.dimension();
  if (pair.lambda.size() != pair.factors.size())
    throw Error("DependentLabels", "one label list per factor required");
  for (std::size_t f = 0; f < pair.factors.size(); ++f) {
    const Factor &fac = pair.factors[f];
    std::size_t facets = fac.kind == FactorKind::Delta ? fac.size + 1 : fac.size;
    if (pair.lambda[f].size() != facets)
      throw Error("DependentLabels", "factor " + fac.str() + " needs " +
                                         std::to_string(facets) + " facet labels");
    for (const auto &l : pair.lambda[f])
      if (l.size() != static_cast<std::size_t>(n))
        throw Error("DependentLabels", "facet label of wrong length");
  }
  const GkmGraph &g = p.graph;
  // facet left by a directed edge at its source
  auto leaving = [&](EdgeId e) -> std::pair<int, int> {
    int f = p.edge_factor[e];
    if (pair.factors[f].kind == FactorKind::Delta)
      return {f, p.coords[g.target(e)][f]};
    return {f, p.edge_parallel[e]};
  };
  std::vector<QVector> weights(g.num_undirected());
  for (VertexId v = 0; v < static_cast<VertexId>(g.num_vertices()); ++v) {
    const auto &s = g.star(v);
    // columns: λ of the facet left by each star edge; the facets at v are
    // exactly these n facets
    std::vector<QVector> cols;
    for (EdgeId e : s) {
      auto [f, i] = leaving(e);
      cols.push_back(pair.lambda[f][i]);
    }
    QMatrix L = QMatrix::from_rows(cols); // row r = λ(F_r)
    if (rank(L) != static_cast<std::size_t>(n))
      throw Error("DependentLabels", "facet labels at vertex " + g.vertex_name(v) +
                                         " are linearly dependent");
    // dual basis: w_r . λ(F_c) = δ_rc, so w_r is column r of L^{-1}
    QMatrix aug(n, 2 * n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        aug(r, c) = L(r, c);
        aug(r, n + c) = r == c ? 1 : 0;
      }
    QMatrix red = rref(aug);
    for (std::size_t r = 0; r < s.size(); ++r) {
      QVector w(static_cast<std::size_t>(n));

      for (int c = 0; c < n; ++c)
        w[c] = red(c, n + r);
      EdgeId e = s[r];
      int u = g.edge(e).undirected;
      if (e % 2 == 0) {
        weights[u] = w;
      }
    }
  }
  // the same line must arise at both endpoints
  GkmGraph lab = g.with_weights(n, weights);
  for (VertexId v = 0; v < static_cast<VertexId>(g.num_vertices()); ++v)
    for (EdgeId e : g.star(v)) {
      if (e % 2 == 0)
        continue;
      std::vector<QVector> others;
      for (EdgeId h : g.star(v))
        if (h != e) {
          auto [f, i] = leaving(h);
          others.push_back(pair.lambda[f][i]);
        }
      for (const auto &l : others)
        if (!lab.weight(e).dot(l).is_zero())
          throw Error("DependentLabels", "edge " + g.edge_name(e) +
                                             " has inconsistent weight lines at its endpoints");
    }
  return infer_connection(lab.without_connection());
}

GkmGraph standard_product_model(const std::vector<Factor> &factors) {
  return product_model(standard_pair(factors));
}

GkmGraph simplex_model(int n) {
  if (n < 1)
    throw Error("InvalidFactor", "simplex dimension must be >= 1");
  return standard_product_model({{FactorKind::Delta, n}});
}

GkmGraph sigma_model(int m) {
  if (m < 2)
    throw Error("InvalidFactor", "Sigma^m needs m >= 2");
  return standard_product_model({{FactorKind::Sigma, m}});
}

GkmGraph weighted_projective_model(long alpha, long beta) {
  if (alpha == 0 || beta == 0)
    throw Error("InvalidFactor", "weights must be nonzero");
  CharacteristicPair p;
  p.factors = {{FactorKind::Delta, 2}};
  p.lambda = {{QVector{Rational(alpha), Rational(beta)}, QVector{1, 0}, QVector{0, 1}}};
  return product_model(p);
}

GkmGraph hirzebruch_model(long a) {
  CharacteristicPair p;
  p.factors = {{FactorKind::Delta, 1}, {FactorKind::Delta, 1}};
  p.lambda = {{QVector{-1, 0}, QVector{1, 0}}, {QVector{Rational(a), 1}, QVector{0, 1}}};
  return product_model(p);
}

HypercubeModel hypercube_involution_model(int n) {
  if (n < 3)
    throw Error("InvalidFactor", "hypercube example needs n >= 3");
  CharacteristicPair p;
  p.factors.assign(n, {FactorKind::Delta, 1});
  const std::size_t N = static_cast<std::size_t>(n);
  for (int i = 0; i < n; ++i) {
    // facet 1 holds coordinate 0 (epsilon = +1), facet 0 coordinate 1
    QVector plus(N), minus(N);
    if (i < n - 1) {
      plus[i] = 1;
      plus[N - 1] = 1;
      minus[i] = 1;
      minus[N - 1] = -1;
    } else {
      plus[N - 1] = 1;
      minus[N - 1] = -1;
    }
    p.lambda.push_back({minus, plus});
  }
  HypercubeModel m;
  m.total = product_model(p);
  const GkmGraph &g = m.total;

  auto flip = [&](const std::string &name) {
    std::string s = name;
    for (char &c : s)
      if (c == '0')
        c = '1';
      else if (c == '1')
        c = '0';
    return s;
  };
  m.involution.vertex.resize(g.num_vertices());
  m.involution.edge.resize(g.num_edges());
  for (VertexId v = 0; v < static_cast<VertexId>(g.num_vertices()); ++v)
    m.involution.vertex[v] = *g.find_vertex(flip(g.vertex_name(v)));
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); e += 2) {
    // u|w with u_f = 0 maps to the pair (flip u, flip w), recorded as flip w|flip u
    const std::string &name = g.edge_name(e);
    auto bar = name.find('|');
    std::string img = flip(name.substr(bar + 1)) + "|" + flip(name.substr(0, bar));
    EdgeId f = *g.find_edge(img);
    m.involution.edge[e] = g.reverse(f);
    m.involution.edge[e + 1] = f;
  }
  std::vector<QVector> proj;
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); e += 2) {
    const QVector &w = g.weight(e);
    proj.push_back(QVector(std::vector<Rational>(w.begin(), w.end() - 1)));
  }
  m.total_projected = g.with_weights(n - 1, std::move(proj));
  m.quotient = quotient_graph(m.total_projected,
                              {identity_automorphism(g), m.involution});
  return m;
}

HomogPoly BottRing::normal_form(const HomogPoly &p) const {
  HomogPoly cur = p;
  for (std::size_t j = generators; j-- > 0;) {
    const int top = fiber_dims[j] + 1;
    while (true) {
      const Exponent *hit = nullptr;
      Rational c;
      for (const auto &[e, v] : cur.terms())
        if (e[j] >= top) {
          hit = &e;
          c = v;
          break;
        }
      if (!hit)
        break;
      Exponent rest = *hit;
      rest[j] -= top;
      // x_j^top = x_j^top - f_j
      Exponent pure(generators, 0);
      pure[j] = top;
      HomogPoly repl = HomogPoly::monomial(pure) - relations[j];
      cur = cur - HomogPoly::monomial(*hit, c) + HomogPoly::monomial(rest, c) * repl;
    }
  }
  return cur;
}

std::vector<Exponent> BottRing::standard_monomials(std::size_t d) const {
  std::vector<Exponent> out;
  auto basis = MonomialBasis::get(generators, d);
  for (std::size_t i = 0; i < basis->size(); ++i) {
    const Exponent &e = (*basis)[i];
    bool ok = true;
    for (std::size_t j = 0; j < generators; ++j)
      ok = ok && e[j] <= fiber_dims[j];
    if (ok)
      out.push_back(e);
  }
  return out;
}

BottRing bott_tower_cohomology(const std::vector<BottStage> &stages) {
  if (stages.empty())
    throw Error("MalformedSpec", "no stages");
  BottRing R;
  R.generators = stages.size();
  const std::size_t r = stages.size();
  for (std::size_t j = 0; j < r; ++j) {
    const auto &st = stages[j];
    if (st.n < 1)
      throw Error("MalformedSpec", "stage " + std::to_string(j) + " has fiber dimension < 1");
    if (st.bundles.size() != static_cast<std::size_t>(st.n) + 1)
      throw Error("MalformedSpec", "stage " + std::to_string(j) + " needs n+1 line bundles");
    R.fiber_dims.push_back(st.n);
    Exponent one(r, 0);
    HomogPoly f = HomogPoly::constant(r, 1);
    for (const auto &b : st.bundles) {
      if (b.size() > j)
        throw Error("MalformedSpec", "stage " + std::to_string(j) +
                                         " bundle refers to a later generator");
      QVector lin(r);
      lin[j] = 1;
      for (std::size_t i = 0; i < b.size(); ++i)
        lin[i] = Rational(b[i]);
      f = f * HomogPoly::linear(lin);
    }
    R.relations.push_back(f);
  }
  std::vector<std::size_t> poly{1};
  for (int nj : R.fiber_dims) {
    std::vector<std::size_t> next(poly.size() + nj, 0);
    for (std::size_t a = 0; a < poly.size(); ++a)
      for (int b = 0; b <= nj; ++b)
        next[a + b] += poly[a];
    poly = std::move(next);
  }
  R.betti = poly;
  return R;
}

} // namespace gkm
