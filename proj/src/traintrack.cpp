#include "gbs/traintrack.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace gbs {

  ////////////////////////////////////////////////////////////////////////
  // TrainTrackMap
  ////////////////////////////////////////////////////////////////////////

  GroupWord TrainTrackMap::induced(GroupWord const& loop) const {
    GbsGraph const& g = graph();
    Reducer         r(g, domain.presentation->base());
    r.push_word(base_path);
    map.apply_into(g, r, loop);
    r.push_inverse(base_path);
    return r.take();
  }

  GroupWord TrainTrackMap::image(GroupWord const& path) const {
    return map.apply(graph(), graph(), path);
  }

  CyclicWord TrainTrackMap::image(CyclicWord const& c) const {
    return map.apply_cyclic(graph(), graph(), c);
  }

  TrainTrackMap TrainTrackMap::with_lengths(GbsGraph const& g) const {
    TrainTrackMap tt = *this;
    tt.domain        = domain.with_lengths(g);
    return tt;
  }

  std::vector<std::string> validate_map(TrainTrackMap const& tt) {
    GbsGraph const&          g   = tt.graph();
    std::vector<std::string> out = tt.map.violations(g, g);
    if (!out.empty()) {
      return out;
    }
    VertexId base = tt.domain.presentation->base();
    if (!is_well_formed(g, tt.base_path) || tt.base_path.start != base
        || tt.base_path.end(g) != tt.map.vertex_target[base]) {
      out.push_back("base path endpoints");
      return out;
    }
    for (auto const& v : tt.phi.violations()) {
      out.push_back("phi: " + v);
    }
    Presentation const& R = *tt.domain.reference;
    for (size_t i = 0; i < R.number_of_generators(); ++i) {
      GroupWord lhs = tt.induced(tt.domain.marking.image(i));
      GroupWord rhs = tt.domain.marking.apply(tt.phi.image(i));
      if (!(lhs == rhs)) {
        out.push_back("map disagrees with phi on " + R.generator_name(i));
      }
    }
    return out;
  }

  std::vector<GroupWord> vertex_conjugators(TrainTrackMap const& tt) {
    GbsGraph const&        g = tt.graph();
    Presentation const&    P = *tt.domain.presentation;
    std::vector<GroupWord> out;
    for (VertexId v = 0; v < static_cast<VertexId>(g.number_of_vertices());
         ++v) {
      Reducer r(g, P.base());
      r.push_word(tt.base_path);
      tt.map.apply_into(g, r, P.tree_path(v));
      out.push_back(r.take());
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Perron-Frobenius metric
  ////////////////////////////////////////////////////////////////////////

  Matrix transition_matrix(TrainTrackMap const& tt) {
    GbsGraph const& g = tt.graph();
    size_t          n = g.number_of_unoriented_edges();
    Matrix          a(n, std::vector<int64_t>(n, 0));
    for (size_t j = 0; j < n; ++j) {
      for (EdgeId e : tt.map.edge_image[2 * j].edges) {
        a[static_cast<size_t>(e) / 2][j]++;
      }
    }
    return a;
  }

  bool is_primitive(Matrix const& a) {
    size_t n = a.size();
    if (n == 0) {
      return false;
    }
    using B = std::vector<std::vector<bool>>;
    B base(n, std::vector<bool>(n));
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) {
        base[i][j] = a[i][j] > 0;
      }
    }
    B      p   = base;
    size_t cap = (n - 1) * (n - 1) + 1;
    for (size_t k = 1; k <= cap; ++k) {
      bool all = true;
      for (auto const& row : p) {
        all = all && std::all_of(row.begin(), row.end(), [](bool x) {
                return x;
              });
      }
      if (all) {
        return true;
      }
      B q(n, std::vector<bool>(n, false));
      for (size_t i = 0; i < n; ++i) {
        for (size_t l = 0; l < n; ++l) {
          if (p[i][l]) {
            for (size_t j = 0; j < n; ++j) {
              q[i][j] = q[i][j] || base[l][j];
            }
          }
        }
      }
      p = std::move(q);
    }
    return false;
  }

  namespace {
    using Vec = std::vector<double>;

    Vec left_apply(Matrix const& a, Vec const& v) {
      size_t n = a.size();
      Vec    w(n, 0.0);
      for (size_t j = 0; j < n; ++j) {
        for (size_t i = 0; i < n; ++i) {
          w[j] += static_cast<double>(a[i][j]) * v[i];
        }
      }
      return w;
    }

    void normalize_sum(Vec& v) {
      double s = std::accumulate(v.begin(), v.end(), 0.0);
      for (auto& x : v) {
        x /= s;
      }
    }

    double residual(Matrix const& a, Vec const& v, double lambda) {
      Vec    w = left_apply(a, v);
      double r = 0;
      for (size_t i = 0; i < v.size(); ++i) {
        r = std::max(r, std::abs(w[i] - lambda * v[i]));
      }
      return r;
    }

    // Faddeev-LeVerrier coefficients c_0 = 1, ..., c_n of det(xI - A).
    std::vector<long double> char_poly(Matrix const& a) {
      size_t                                 n = a.size();
      using M = std::vector<std::vector<long double>>;
      M                        A(n, std::vector<long double>(n));
      for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
          A[i][j] = static_cast<long double>(a[i][j]);
        }
      }
      std::vector<long double> c(n + 1, 0);
      c[0] = 1;
      M Mk(n, std::vector<long double>(n, 0));
      for (size_t k = 1; k <= n; ++k) {
        // Mk = A M_{k-1} + c_{k-1} I
        M next(n, std::vector<long double>(n, 0));
        for (size_t i = 0; i < n; ++i) {
          for (size_t j = 0; j < n; ++j) {
            long double s = 0;
            for (size_t l = 0; l < n; ++l) {
              s += A[i][l] * Mk[l][j];
            }
            next[i][j] = s + (i == j ? c[k - 1] : 0);
          }
        }
        Mk             = std::move(next);
        long double tr = 0;
        for (size_t i = 0; i < n; ++i) {
          for (size_t l = 0; l < n; ++l) {
            tr += A[i][l] * Mk[l][i];
          }
        }
        c[k] = -tr / static_cast<long double>(k);
      }
      return c;
    }

    long double horner(std::vector<long double> const& c, long double x) {
      long double y = 0;
      for (auto ci : c) {
        y = y * x + ci;
      }
      return y;
    }

    // Solves (A^T - mu I) x = b by Gaussian elimination with pivoting.
    Vec solve_shifted(Matrix const& a, double mu, Vec b) {
      size_t                         n = a.size();
      std::vector<std::vector<double>> m(n, std::vector<double>(n));
      for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
          m[i][j] = static_cast<double>(a[j][i]) - (i == j ? mu : 0.0);
        }
      }
      for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        for (size_t r = col + 1; r < n; ++r) {
          if (std::abs(m[r][col]) > std::abs(m[piv][col])) {
            piv = r;
          }
        }
        std::swap(m[piv], m[col]);
        std::swap(b[piv], b[col]);
        if (m[col][col] == 0) {
          m[col][col] = 1e-300;
        }
        for (size_t r = col + 1; r < n; ++r) {
          double f = m[r][col] / m[col][col];
          for (size_t j = col; j < n; ++j) {
            m[r][j] -= f * m[col][j];
          }
          b[r] -= f * b[col];
        }
      }
      Vec x(n);
      for (size_t i = n; i-- > 0;) {
        double s = b[i];
        for (size_t j = i + 1; j < n; ++j) {
          s -= m[i][j] * x[j];
        }
        x[i] = s / m[i][i];
      }
      return x;
    }
  }  // namespace

  PfResult pf_metric(TrainTrackMap const& tt, double tol) {
    PfResult res;
    res.matrix = transition_matrix(tt);
    Matrix const& a = res.matrix;
    size_t        n = a.size();
    if (!is_primitive(a)) {
      throw DomainError("transition matrix is not primitive");
    }
    Vec v(n, 1.0 / static_cast<double>(n));
    res.fallback   = false;
    res.iterations = 0;
    double lambda  = 0;
    for (size_t it = 0; it < 100000; ++it) {
      Vec w   = left_apply(a, v);
      lambda  = std::accumulate(w.begin(), w.end(), 0.0);
      normalize_sum(w);
      v = std::move(w);
      res.iterations = it + 1;
      if (residual(a, v, lambda) <= tol) {
        break;
      }
    }
    if (residual(a, v, lambda) > tol) {
      res.fallback = true;
      auto        c  = char_poly(a);
      long double hi = 0, lo = 0;
      for (size_t j = 0; j < n; ++j) {
        long double s = 0;
        for (size_t i = 0; i < n; ++i) {
          s += a[i][j];
        }
        hi = std::max(hi, s);
      }
      hi += 1;
      // largest sign change scanning down from hi
      size_t      steps = 4096;
      long double prev  = horner(c, hi);
      long double step  = hi / steps;
      lo                = hi;
      for (size_t k = 1; k <= steps; ++k) {
        long double x = hi - step * k;
        long double y = horner(c, x);
        if ((y <= 0) != (prev <= 0)) {
          lo = x;
          hi = x + step;
          break;
        }
        prev = y;
      }
      for (int k = 0; k < 200; ++k) {
        long double mid = (lo + hi) / 2;
        if ((horner(c, mid) <= 0) == (horner(c, lo) <= 0)) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      lambda = static_cast<double>((lo + hi) / 2);
      Vec x(n, 1.0);
      for (int k = 0; k < 20; ++k) {
        x = solve_shifted(a, lambda * (1 + 1e-14), x);
        for (auto& xi : x) {
          xi = std::abs(xi);
        }
        normalize_sum(x);
      }
      v = x;
    }
    res.lambda   = lambda;
    res.lengths  = v;
    res.residual = residual(a, v, lambda);
    return res;
  }

  TrainTrackMap with_pf_metric(TrainTrackMap const& tt, PfResult const& pf) {
    GbsGraph g = tt.graph();
    for (size_t i = 0; i < pf.lengths.size(); ++i) {
      g.set_length(static_cast<EdgeId>(2 * i), pf.lengths[i]);
    }
    return tt.with_lengths(g);
  }

  ////////////////////////////////////////////////////////////////////////
  // Gates
  ////////////////////////////////////////////////////////////////////////

  GateStructure::GateStructure(TrainTrackMap const& tt) : _graph(&tt.graph()) {
    GbsGraph const& g = tt.graph();
    _offset.resize(g.number_of_edges());
    for (EdgeId e = 0; e < static_cast<EdgeId>(g.number_of_edges()); ++e) {
      _offset[e] = _dirs.size();
      int64_t m  = direction_modulus(g, e);
      for (int64_t r = 0; r < m; ++r) {
        _dirs.push_back({e, r});
      }
    }
    _df.resize(_dirs.size());
    for (size_t i = 0; i < _dirs.size(); ++i) {
      Direction const& d   = _dirs[i];
      GroupWord const& img = tt.map.edge_image[d.edge];
      if (img.edges.empty()) {
        throw DomainError("degenerate edge image",
                          {g.edge_name(d.edge)});
      }
      VertexId a = g.origin(d.edge);
      Int res = Int(tt.map.vertex_multiplier[a]) * d.residue + img.syllables[0];
      _df[i]  = index(make_direction(g, img.edges[0], res));
    }
    _gate.resize(_dirs.size());
    size_t k = _dirs.size();
    for (size_t i = 0; i < _dirs.size(); ++i) {
      size_t j = i;
      for (size_t s = 0; s < k; ++s) {
        j = _df[j];
      }
      _gate[i] = j;
    }
  }

  TurnKey GateStructure::df(TurnKey const& t) const {
    return make_turn(*_graph, df(t.first), df(t.second));
  }

  std::vector<std::vector<Direction>> GateStructure::gates_at(VertexId v) const {
    std::map<size_t, std::vector<Direction>> by_gate;
    for (Direction const& d : directions_at(*_graph, v)) {
      by_gate[gate_of(d)].push_back(d);
    }
    std::vector<std::vector<Direction>> out;
    for (auto& [k, ds] : by_gate) {
      out.push_back(std::move(ds));
    }
    return out;
  }

  LegalityReport gates_and_legality(TrainTrackMap const&  tt,
                                    GateStructure const& gates) {
    GbsGraph const&   g = tt.graph();
    LegalityReport    rep;
    std::set<TurnKey> seen;
    std::vector<TurnKey> queue;
    for (EdgeId e = 0; e < static_cast<EdgeId>(g.number_of_edges()); e += 2) {
      for (auto const& t : path_turns(g, tt.map.edge_image[e])) {
        if (seen.insert(t).second) {
          queue.push_back(t);
        }
      }
    }
    for (size_t i = 0; i < queue.size(); ++i) {
      TurnKey next = gates.df(queue[i]);
      if (seen.insert(next).second) {
        queue.push_back(next);
      }
    }
    rep.closure.assign(seen.begin(), seen.end());
    for (auto const& t : rep.closure) {
      if (!gates.is_legal(t)) {
        rep.illegal_in_closure.push_back(t);
      }
    }
    for (VertexId v = 0; v < static_cast<VertexId>(g.number_of_vertices());
         ++v) {
      if (gates.gates_at(v).size() < 2) {
        rep.vertices_with_one_gate.push_back(v);
      }
    }
    rep.train_track
        = rep.illegal_in_closure.empty() && rep.vertices_with_one_gate.empty();
    return rep;
  }

  TurnTrace turn_orbit_trace(GateStructure const& gates, TurnKey const& t) {
    TurnTrace                 tr;
    std::map<TurnKey, size_t> index;
    TurnKey                   cur = t;
    while (true) {
      auto it = index.find(cur);
      if (it != index.end()) {
        tr.turns.push_back(cur);
        tr.reentry = it->second;
        return tr;
      }
      index.emplace(cur, tr.turns.size());
      tr.turns.push_back(cur);
      cur = gates.df(cur);
    }
  }

  size_t illegal_turn_count(GbsGraph const&      g,
                            GateStructure const& gates,
                            GroupWord const&     path) {
    size_t n = 0;
    for (auto const& t : path_turns(g, path)) {
      n += gates.is_legal(t) ? 0 : 1;
    }
    return n;
  }

  size_t illegal_turn_count(GbsGraph const&      g,
                            GateStructure const& gates,
                            CyclicWord const&    c) {
    size_t n = 0;
    for (auto const& t : cyclic_turns(g, c)) {
      n += gates.is_legal(t) ? 0 : 1;
    }
    return n;
  }

  ////////////////////////////////////////////////////////////////////////
  // Cancellation constants
  ////////////////////////////////////////////////////////////////////////

  namespace {
    using Code = std::vector<std::pair<int64_t, EdgeId>>;

    // Residues before each edge; the trailing syllable is irrelevant to the
    // position of the path in the tree.
    Code path_code(GroupWord const& w) {
      Code c;
      c.reserve(w.edges.size());
      for (size_t i = 0; i < w.edges.size(); ++i) {
        c.emplace_back(static_cast<int64_t>(w.syllables[i]), w.edges[i]);
      }
      return c;
    }

    double common_prefix_length(GbsGraph const& g, Code const& a, Code const& b) {
      double len = 0;
      for (size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        if (a[i] != b[i]) {
          break;
        }
        len += g.length(a[i].second);
      }
      return len;
    }

    std::vector<GroupWord> outward_paths(GbsGraph const&  g,
                                         Direction const& d,
                                         size_t           depth) {
      GroupWord first(g.origin(d.edge));
      first.syllables[0] = d.residue;
      first.edges.push_back(d.edge);
      first.syllables.emplace_back(0);
      std::vector<GroupWord> all{first};
      std::vector<GroupWord> level{first};
      for (size_t k = 1; k < depth; ++k) {
        std::vector<GroupWord> next;
        for (auto const& p : level) {
          EdgeId   last = p.edges.back();
          VertexId u    = g.terminus(last);
          for (EdgeId e : g.out_edges(u)) {
            int64_t m = direction_modulus(g, e);
            for (int64_t s = 0; s < m; ++s) {
              if (e == GbsGraph::reverse(last) && s == 0) {
                continue;
              }
              GroupWord q        = p;
              q.syllables.back() = s;
              q.edges.push_back(e);
              q.syllables.emplace_back(0);
              next.push_back(std::move(q));
            }
          }
        }
        all.insert(all.end(), next.begin(), next.end());
        level = std::move(next);
      }
      return all;
    }

    double max_cancellation(TrainTrackMap const& tt,
                            std::vector<TurnKey> const& turns,
                            size_t depth) {
      GbsGraph const& g    = tt.graph();
      double          best = 0;
      for (auto const& t : turns) {
        if (t.is_degenerate()) {
          continue;
        }
        std::vector<std::pair<Code, int>> codes;
        for (int side = 0; side < 2; ++side) {
          Direction const& d = side == 0 ? t.first : t.second;
          for (auto const& p : outward_paths(g, d, depth)) {
            codes.emplace_back(path_code(tt.image(p)), side);
          }
        }
        std::sort(codes.begin(), codes.end());
        for (size_t i = 0; i + 1 < codes.size(); ++i) {
          if (codes[i].second != codes[i + 1].second) {
            best = std::max(
                best, common_prefix_length(g, codes[i].first, codes[i + 1].first));
          }
        }
      }
      return best;
    }
  }  // namespace

  double measured_cancellation(TrainTrackMap const& tt,
                               GroupWord const&     p,
                               GroupWord const&     q) {
    return common_prefix_length(
        tt.graph(), path_code(tt.image(p)), path_code(tt.image(q)));
  }

  Constants cancellation_constants(TrainTrackMap const&  tt,
                                   GateStructure const& gates,
                                   double                lambda,
                                   size_t                max_depth,
                                   std::optional<double> bcc_override) {
    (void) gates;
    GbsGraph const&   g = tt.graph();
    std::set<TurnKey> all;
    for (VertexId v = 0; v < static_cast<VertexId>(g.number_of_vertices());
         ++v) {
      auto ds = directions_at(g, v);
      for (size_t i = 0; i < ds.size(); ++i) {
        for (size_t j = i + 1; j < ds.size(); ++j) {
          all.insert(make_turn(g, ds[i], ds[j]));
        }
      }
    }
    std::vector<TurnKey> turns(all.begin(), all.end());
    Constants            c;
    c.lambda = lambda;
    c.depth  = 1;
    if (bcc_override) {
      c.bcc = *bcc_override;
    } else {
      double prev = max_cancellation(tt, turns, 1);
      for (size_t d = 2; d <= max_depth; ++d) {
        double cur = max_cancellation(tt, turns, d);
        if (cur <= prev) {
          break;
        }
        prev    = cur;
        c.depth = d;
      }
      c.bcc = prev;
    }
    c.c_f   = 2 * c.bcc / (lambda - 1);
    c.kappa = 2 * c.c_f;
    return c;
  }

  ////////////////////////////////////////////////////////////////////////
  // Iteration and legality ratio
  ////////////////////////////////////////////////////////////////////////

  GroupWord iterate_tighten(TrainTrackMap const& tt,
                            GroupWord const&     path,
                            size_t               n) {
    GroupWord w = britton_reduce(tt.graph(), path);
    for (size_t i = 0; i < n; ++i) {
      w = tt.image(w);
    }
    return w;
  }

  CyclicWord iterate_tighten(TrainTrackMap const& tt,
                             CyclicWord const&    c,
                             size_t               n) {
    CyclicWord w = c;
    for (size_t i = 0; i < n; ++i) {
      w = tt.image(w);
    }
    return w;
  }

  double legality_ratio(GbsGraph const&      g,
                        GateStructure const& gates,
                        double               kappa,
                        CyclicWord const&    c) {
    if (c.is_elliptic()) {
      throw DomainError("legality_ratio: elliptic element");
    }
    size_t              k = c.edges.size();
    std::vector<size_t> illegal;
    for (size_t i = 0; i < k; ++i) {
      TurnKey t = turn_between(g, c.edges[i], c.syllables[i],
                               c.edges[(i + 1) % k]);
      if (!gates.is_legal(t)) {
        illegal.push_back(i);
      }
    }
    if (illegal.empty()) {
      return 1.0;
    }
    double total = cyclic_length(g, c);
    double good  = 0;
    for (size_t j = 0; j < illegal.size(); ++j) {
      size_t from = illegal[j] + 1;
      size_t to   = j + 1 < illegal.size() ? illegal[j + 1] + 1
                                           : illegal[0] + 1 + k;
      double len  = 0;
      for (size_t i = from; i < to; ++i) {
        len += g.length(c.edges[i % k]);
      }
      if (len >= kappa) {
        good += len;
      }
    }
    return good / total;
  }

}  // namespace gbs
