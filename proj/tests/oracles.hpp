// Independent reference implementations used by the tests and the
// acceptance binary.

#ifndef GBS_TESTS_ORACLES_HPP_
#define GBS_TESTS_ORACLES_HPP_

#include <Eigen/Dense>
#include <algorithm>
#include <random>
#include <vector>

#include "gbs/traintrack.hpp"
#include "gbs/word.hpp"

namespace oracle {

  using gbs::EdgeId;
  using gbs::GbsGraph;
  using gbs::GroupWord;
  using gbs::Int;
  using gbs::VertexId;

  // A word as a flat token list: edges and syllables in any arrangement.
  struct Token {
    bool   is_edge;
    EdgeId edge;
    Int    power;
  };

  inline Int abs_int(Int const& a) {
    return a < 0 ? Int(-a) : a;
  }

  // Fixpoint of single rewriting steps applied at random positions:
  //   x^a x^b      -> x^(a+b)
  //   x^0          -> (removed)
  //   e x^k e'     -> x^(k/l(e) l(e'))           when l(e) divides k
  //   x^g e        -> x^r e x^(q s l(e))         g = q |l(e')| + r, 0 <= r < |l(e')|
  // where s is the sign of l(e'). The result is read off as a GroupWord.
  inline GroupWord naive_normal_form(GbsGraph const& g,
                                     GroupWord const& w,
                                     std::mt19937_64& rng) {
    std::vector<Token> t;
    if (w.syllables[0] != 0) {
      t.push_back({false, -1, w.syllables[0]});
    }
    for (size_t i = 0; i < w.edges.size(); ++i) {
      t.push_back({true, w.edges[i], 0});
      if (w.syllables[i + 1] != 0) {
        t.push_back({false, -1, w.syllables[i + 1]});
      }
    }
    while (true) {
      std::vector<std::pair<size_t, int>> moves;
      for (size_t i = 0; i < t.size(); ++i) {
        if (!t[i].is_edge && t[i].power == 0) {
          moves.push_back({i, 0});
        }
        if (i + 1 < t.size() && !t[i].is_edge && !t[i + 1].is_edge) {
          moves.push_back({i, 1});
        }
        if (i + 2 < t.size() && t[i].is_edge && !t[i + 1].is_edge && t[i + 2].is_edge
            && t[i + 2].edge == GbsGraph::reverse(t[i].edge)
            && t[i + 1].power % g.label(t[i].edge) == 0) {
          moves.push_back({i, 2});
        }
        if (i + 1 < t.size() && t[i].is_edge && t[i + 1].is_edge
            && t[i + 1].edge == GbsGraph::reverse(t[i].edge)) {
          moves.push_back({i, 3});  // pinch with empty syllable
        }
        if (i + 1 < t.size() && !t[i].is_edge && t[i + 1].is_edge) {
          int64_t m = g.label(GbsGraph::reverse(t[i + 1].edge));
          Int     mm = m < 0 ? -m : m;
          if (t[i].power < 0 || t[i].power >= mm) {
            moves.push_back({i, 4});
          }
        }
        if (i == 0 && t[0].is_edge) {
          // nothing: a leading edge already has a zero syllable
        }
      }
      if (moves.empty()) {
        break;
      }
      auto [i, kind] = moves[rng() % moves.size()];
      switch (kind) {
        case 0:
          t.erase(t.begin() + static_cast<long>(i));
          break;
        case 1:
          t[i].power += t[i + 1].power;
          t.erase(t.begin() + static_cast<long>(i) + 1);
          break;
        case 2: {
          EdgeId e = t[i].edge;
          Int    k = t[i + 1].power / g.label(e) * g.label(GbsGraph::reverse(e));
          t.erase(t.begin() + static_cast<long>(i), t.begin() + static_cast<long>(i) + 3);
          t.insert(t.begin() + static_cast<long>(i), Token{false, -1, k});
          break;
        }
        case 3:
          t.erase(t.begin() + static_cast<long>(i), t.begin() + static_cast<long>(i) + 2);
          break;
        case 4: {
          EdgeId  e  = t[i + 1].edge;
          int64_t le = g.label(GbsGraph::reverse(e));
          Int     mm = le < 0 ? -le : le;
          Int     r  = t[i].power % mm;
          if (r < 0) {
            r += mm;
          }
          Int q     = (t[i].power - r) / mm;
          Int carry = q * (le < 0 ? -1 : 1) * g.label(e);
          t[i].power = r;
          t.insert(t.begin() + static_cast<long>(i) + 2, Token{false, -1, carry});
          break;
        }
      }
    }
    GroupWord out(w.start);
    for (auto const& k : t) {
      if (k.is_edge) {
        out.edges.push_back(k.edge);
        out.syllables.emplace_back(0);
      } else {
        out.syllables.back() += k.power;
      }
    }
    return out;
  }

  // Random path word: up to max_letters edges with syllables in [-s, s].
  inline GroupWord random_path_word(GbsGraph const& g,
                                    std::mt19937_64& rng,
                                    size_t           max_letters = 12,
                                    int              s           = 6) {
    std::uniform_int_distribution<int> syl(-s, s);
    VertexId  v = static_cast<VertexId>(rng() % g.number_of_vertices());
    GroupWord w(v);
    w.syllables[0] = syl(rng);
    size_t n = rng() % (max_letters + 1);
    for (size_t i = 0; i < n; ++i) {
      auto const& out = g.out_edges(v);
      EdgeId      e   = out[rng() % out.size()];
      w.edges.push_back(e);
      w.syllables.emplace_back(syl(rng));
      v = g.terminus(e);
    }
    return w;
  }

  // Connectivity and cut vertices by deleting each vertex and flooding.
  struct CutResult {
    bool                connected;
    std::vector<size_t> cut_vertices;
  };

  inline size_t components(size_t n,
                           std::vector<std::pair<size_t, size_t>> const& edges,
                           size_t removed) {
    std::vector<size_t> parent(n);
    for (size_t i = 0; i < n; ++i) {
      parent[i] = i;
    }
    auto find = [&](size_t a) {
      while (parent[a] != a) {
        a = parent[a];
      }
      return a;
    };
    for (auto [a, b] : edges) {
      if (a != removed && b != removed) {
        parent[find(a)] = find(b);
      }
    }
    size_t c = 0;
    for (size_t i = 0; i < n; ++i) {
      if (i != removed && find(i) == i) {
        ++c;
      }
    }
    return c;
  }

  inline CutResult brute_force_cuts(size_t n,
                                    std::vector<std::pair<size_t, size_t>> const& edges) {
    CutResult r;
    size_t    base = components(n, edges, n);
    r.connected    = base <= 1;
    for (size_t v = 0; v < n; ++v) {
      if (components(n, edges, v) > base) {
        r.cut_vertices.push_back(v);
      }
    }
    return r;
  }

  // Largest real eigenvalue from a dense eigensolver.
  inline double spectral_radius(gbs::Matrix const& a) {
    size_t          n = a.size();
    Eigen::MatrixXd m(n, n);
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) {
        m(static_cast<long>(i), static_cast<long>(j)) = static_cast<double>(a[i][j]);
      }
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
    double best = 0;
    for (long i = 0; i < es.eigenvalues().size(); ++i) {
      best = std::max(best, std::abs(es.eigenvalues()[i]));
    }
    return best;
  }

  // Plain substring search.
  template <typename T>
  bool contains_subsequence(std::vector<T> const& hay, std::vector<T> const& needle) {
    return std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) != hay.end();
  }

}  // namespace oracle

#endif  // GBS_TESTS_ORACLES_HPP_
