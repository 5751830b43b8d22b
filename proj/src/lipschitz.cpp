#include "gbs/lipschitz.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>

namespace gbs {

  std::string to_string(Shape s) {
    switch (s) {
      case Shape::loop:
        return "loop";
      case Shape::figure_eight:
        return "figure-eight";
      case Shape::barbell:
        return "barbell";
      case Shape::singly_degenerate_barbell:
        return "singly-degenerate-barbell";
      case Shape::doubly_degenerate_barbell:
        return "doubly-degenerate-barbell";
    }
    return "?";
  }

  namespace {
    using Seq = std::vector<EdgeId>;

    // Directed simple cycles, one per rotation class: the cycle starts at
    // its smallest vertex.
    std::vector<Seq> simple_cycles(GbsGraph const& g) {
      std::vector<Seq> out;
      VertexId         nv = static_cast<VertexId>(g.number_of_vertices());
      for (VertexId s = 0; s < nv; ++s) {
        std::vector<bool> on(nv, false);
        Seq               cur;
        std::function<void(VertexId)> dfs = [&](VertexId v) {
          for (EdgeId e : g.out_edges(v)) {
            VertexId w = g.terminus(e);
            if (w == s) {
              cur.push_back(e);
              out.push_back(cur);
              cur.pop_back();
            } else if (w > s && !on[w]) {
              on[w] = true;
              cur.push_back(e);
              dfs(w);
              cur.pop_back();
              on[w] = false;
            }
          }
        };
        on[s] = true;
        dfs(s);
      }
      return out;
    }

    // Simple paths from p avoiding the blocked vertices (p excepted); when
    // allow_return is set, paths closing up at p are included.
    std::vector<Seq> simple_paths(GbsGraph const&          g,
                                  VertexId                 p,
                                  std::vector<bool> const& blocked,
                                  bool                     allow_return) {
      std::vector<Seq>  out;
      std::vector<bool> on(g.number_of_vertices(), false);
      Seq               cur;
      std::function<void(VertexId)> dfs = [&](VertexId v) {
        for (EdgeId e : g.out_edges(v)) {
          VertexId w = g.terminus(e);
          if (w == p) {
            if (allow_return) {
              cur.push_back(e);
              out.push_back(cur);
              cur.pop_back();
            }
            continue;
          }
          if (on[w] || blocked[w]) {
            continue;
          }
          on[w] = true;
          cur.push_back(e);
          out.push_back(cur);
          dfs(w);
          cur.pop_back();
          on[w] = false;
        }
      };
      on[p] = true;
      dfs(p);
      return out;
    }

    Seq rotate_to(GbsGraph const& g, Seq const& c, VertexId p) {
      for (size_t i = 0; i < c.size(); ++i) {
        if (g.origin(c[i]) == p) {
          Seq r(c.begin() + static_cast<long>(i), c.end());
          r.insert(r.end(), c.begin(), c.begin() + static_cast<long>(i));
          return r;
        }
      }
      throw std::logic_error("rotate_to: vertex not on cycle");
    }

    Seq reversed(Seq const& p) {
      Seq r;
      for (auto it = p.rbegin(); it != p.rend(); ++it) {
        r.push_back(GbsGraph::reverse(*it));
      }
      return r;
    }

    std::vector<bool> vertex_set(GbsGraph const& g, Seq const& c) {
      std::vector<bool> s(g.number_of_vertices(), false);
      for (EdgeId e : c) {
        s[g.origin(e)] = s[g.terminus(e)] = true;
      }
      return s;
    }

    // Row echelon form over Z with positive pivots.
    std::vector<std::vector<int64_t>> echelon(std::vector<std::vector<int64_t>> m,
                                              std::vector<int>& pivot_of_col) {
      size_t rows = m.size();
      size_t cols = rows == 0 ? 0 : m[0].size();
      pivot_of_col.assign(cols, -1);
      size_t r = 0;
      for (size_t c = 0; c < cols && r < rows; ++c) {
        while (true) {
          size_t best = rows;
          for (size_t i = r; i < rows; ++i) {
            if (m[i][c] != 0
                && (best == rows || std::llabs(m[i][c]) < std::llabs(m[best][c]))) {
              best = i;
            }
          }
          if (best == rows) {
            break;
          }
          std::swap(m[r], m[best]);
          bool clean = true;
          for (size_t i = r + 1; i < rows; ++i) {
            if (m[i][c] != 0) {
              int64_t q = m[i][c] / m[r][c];
              for (size_t j = c; j < cols; ++j) {
                m[i][j] -= q * m[r][j];
              }
              clean = clean && m[i][c] == 0;
            }
          }
          if (clean) {
            if (m[r][c] < 0) {
              for (auto& x : m[r]) {
                x = -x;
              }
            }
            pivot_of_col[c] = static_cast<int>(r);
            ++r;
            break;
          }
        }
      }
      return m;
    }

    struct Builder {
      MarkedGraph const&      m;
      CandidateOptions const& opts;
      CandidateSet            set;
      std::set<std::vector<Int>> keys;

      void add(Shape shape, Seq const& seq) {
        GbsGraph const& g = m.graph();
        size_t          k = seq.size();
        std::vector<std::vector<int64_t>> rows(k, std::vector<int64_t>(k, 0));
        for (size_t i = 0; i < k; ++i) {
          EdgeId next = seq[(i + 1) % k];
          rows[i][i] += g.label(GbsGraph::reverse(next));
          rows[i][(i + 1) % k] -= g.label(next);
        }
        std::vector<int> piv;
        auto             h = echelon(rows, piv);
        std::vector<int64_t> lo(k), hi(k);
        double               total = 1;
        for (size_t c = 0; c < k; ++c) {
          if (piv[c] >= 0) {
            lo[c] = 0;
            hi[c] = h[piv[c]][c] - 1;
          } else {
            lo[c] = -opts.free_bound;
            hi[c] = opts.free_bound;
          }
          total *= static_cast<double>(hi[c] - lo[c] + 1);
        }
        if (total > static_cast<double>(opts.max_per_sequence)) {
          set.truncated = true;
        }
        std::vector<int64_t> x(lo);
        size_t               tried = 0;
        while (tried < opts.max_per_sequence) {
          ++tried;
          try_decoration(shape, seq, x);
          size_t c = 0;
          while (c < k && x[c] == hi[c]) {
            x[c] = lo[c];
            ++c;
          }
          if (c == k) {
            break;
          }
          ++x[c];
        }
      }

      void try_decoration(Shape shape, Seq const& seq, std::vector<int64_t> const& x) {
        GbsGraph const& g = m.graph();
        size_t          k = seq.size();
        for (size_t i = 0; i < k; ++i) {
          if (seq[(i + 1) % k] == GbsGraph::reverse(seq[i])
              && floor_mod(x[i], g.label(seq[i])) == 0) {
            return;
          }
        }
        CyclicWord c;
        c.vertex = g.origin(seq[0]);
        c.edges  = seq;
        for (auto xi : x) {
          c.syllables.emplace_back(xi);
        }
        auto [red, conj] = cyclic_reduce(g, to_loop(g, c));
        (void) conj;
        if (red.edges.size() != k) {
          return;
        }
        auto key = conjugacy_key(g, red);
        if (!keys.insert(key).second) {
          return;
        }
        Candidate cand;
        cand.shape = shape;
        cand.word  = red;
        cand.crossings.assign(g.number_of_unoriented_edges(), 0);
        for (EdgeId e : red.edges) {
          cand.crossings[static_cast<size_t>(e) / 2]++;
        }
        Presentation const& P = *m.presentation;
        Reducer             r(g, P.base());
        GroupWord const&    tp = P.tree_path(g.origin(red.edges[0]));
        r.push_word(tp);
        r.push_word(to_loop(g, red));
        r.push_inverse(tp);
        cand.reference = m.comarking.apply(r.word());
        cand.length    = cyclic_length(g, red);
        set.candidates.push_back(std::move(cand));
      }
    };

    Seq concat(std::initializer_list<Seq> parts) {
      Seq s;
      for (auto const& p : parts) {
        s.insert(s.end(), p.begin(), p.end());
      }
      return s;
    }
  }  // namespace

  CandidateSet enumerate_candidates(MarkedGraph const&      m,
                                    CandidateOptions const& opts) {
    GbsGraph const& g = m.graph();
    Builder         b{m, opts, {}, {}};
    auto            cycles = simple_cycles(g);
    std::vector<std::vector<bool>> vsets;
    for (auto const& c : cycles) {
      vsets.push_back(vertex_set(g, c));
    }
    size_t nv = g.number_of_vertices();
    auto   label_at_end = [&](EdgeId e) {
      return std::llabs(g.label(e));
    };

    for (auto const& c : cycles) {
      b.add(Shape::loop, c);
    }
    for (size_t i = 0; i < cycles.size(); ++i) {
      for (size_t j = i + 1; j < cycles.size(); ++j) {
        std::vector<VertexId> common;
        for (size_t v = 0; v < nv; ++v) {
          if (vsets[i][v] && vsets[j][v]) {
            common.push_back(static_cast<VertexId>(v));
          }
        }
        if (common.size() == 1) {
          VertexId p = common[0];
          b.add(Shape::figure_eight,
                concat({rotate_to(g, cycles[i], p), rotate_to(g, cycles[j], p)}));
        } else if (common.empty()) {
          for (size_t p = 0; p < nv; ++p) {
            if (!vsets[i][p]) {
              continue;
            }
            std::vector<bool> blocked = vsets[i];
            for (auto const& path :
                 simple_paths(g, static_cast<VertexId>(p), blocked, false)) {
              VertexId q = g.terminus(path.back());
              if (!vsets[j][q]) {
                continue;
              }
              bool inner_ok = true;
              for (size_t s = 0; s + 1 < path.size(); ++s) {
                inner_ok = inner_ok && !vsets[j][g.terminus(path[s])];
              }
              if (!inner_ok) {
                continue;
              }
              b.add(Shape::barbell,
                    concat({rotate_to(g, cycles[i], static_cast<VertexId>(p)),
                            path, rotate_to(g, cycles[j], q), reversed(path)}));
            }
          }
        }
      }
    }
    for (size_t i = 0; i < cycles.size(); ++i) {
      for (size_t p = 0; p < nv; ++p) {
        if (!vsets[i][p]) {
          continue;
        }
        for (auto const& path :
             simple_paths(g, static_cast<VertexId>(p), vsets[i], false)) {
          if (label_at_end(path.back()) > 1) {
            b.add(Shape::singly_degenerate_barbell,
                  concat({rotate_to(g, cycles[i], static_cast<VertexId>(p)),
                          path, reversed(path)}));
          }
        }
      }
    }
    std::vector<bool> none(nv, false);
    for (size_t p = 0; p < nv; ++p) {
      for (auto const& path : simple_paths(g, static_cast<VertexId>(p), none, true)) {
        if (label_at_end(GbsGraph::reverse(path.front())) > 1
            && label_at_end(path.back()) > 1) {
          b.add(Shape::doubly_degenerate_barbell, concat({path, reversed(path)}));
        }
      }
    }
    return std::move(b.set);
  }

  LipResult lipschitz_distance(CandidateSet const& ca,
                               double              vol_a,
                               LengthFn const&     length_b,
                               double              vol_b) {
    if (ca.candidates.empty()) {
      throw DomainError("no candidates");
    }
    LipResult res{-1, 0, ca.candidates.front()};
    for (auto const& c : ca.candidates) {
      double lb = length_b(c.reference);
      if (lb <= 0) {
        throw DomainError("candidate is elliptic in the target tree");
      }
      double ratio = lb / c.length;
      if (ratio > res.lip) {
        res.lip     = ratio;
        res.witness = c;
      }
    }
    res.d_lip = std::log(res.lip * vol_a / vol_b);
    return res;
  }

  LipResult lipschitz_distance(MarkedGraph const&      a,
                               MarkedGraph const&      b,
                               CandidateOptions const& opts) {
    if (a.reference != b.reference
        && !same_combinatorics(*a.reference, *b.reference)) {
      throw DomainError("marked graphs have different references");
    }
    auto ca = enumerate_candidates(a, opts);
    return lipschitz_distance(
        ca, a.graph().volume(),
        [&](GroupWord const& ref) { return translation_length_ref(b, ref); },
        b.graph().volume());
  }

  GroupWord random_reference_word(Presentation const& ref,
                                  std::mt19937_64&    rng,
                                  size_t              max_letters) {
    size_t ngen = ref.number_of_generators();
    std::uniform_int_distribution<size_t>  len(1, max_letters);
    std::uniform_int_distribution<size_t>  gen(0, ngen - 1);
    std::uniform_int_distribution<int>     sign(0, 1);
    std::uniform_int_distribution<int64_t> power(1, 3);
    Reducer r(ref.graph(), ref.base());
    size_t  n = len(rng);
    for (size_t i = 0; i < n; ++i) {
      size_t    k = gen(rng);
      GroupWord w = ref.generator_loop(k);
      bool      inv = sign(rng) == 1;
      int64_t   p   = ref.is_vertex_generator(k) ? power(rng) : 1;
      for (int64_t j = 0; j < p; ++j) {
        if (inv) {
          r.push_inverse(w);
        } else {
          r.push_word(w);
        }
      }
    }
    return r.take();
  }

  double sup_check_random(MarkedGraph const& a,
                          MarkedGraph const& b,
                          size_t             n,
                          uint64_t           seed) {
    std::mt19937_64 rng(seed);
    double          best = 0;
    size_t          done = 0;
    size_t          attempts = 0;
    while (done < n && attempts < 50 * n + 100) {
      ++attempts;
      GroupWord w  = random_reference_word(*a.reference, rng);
      double    la = translation_length_ref(a, w);
      if (la <= 0) {
        continue;
      }
      best = std::max(best, translation_length_ref(b, w) / la);
      ++done;
    }
    return best;
  }

}  // namespace gbs
