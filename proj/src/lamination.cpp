#include "gbs/lamination.hpp"

#include <algorithm>
#include <cstring>
#include <deque>
#include <fstream>
#include <set>

#include "gbs/io.hpp"

namespace gbs {

  ////////////////////////////////////////////////////////////////////////
  // TurnAlphabet and SuffixAutomaton
  ////////////////////////////////////////////////////////////////////////

  int TurnAlphabet::token(TurnKey const& t) {
    auto it = _ids.find(t);
    if (it != _ids.end()) {
      return it->second;
    }
    int id = static_cast<int>(_ids.size());
    _ids.emplace(t, id);
    return id;
  }

  int TurnAlphabet::lookup(TurnKey const& t) const {
    auto it = _ids.find(t);
    return it == _ids.end() ? -1 : it->second;
  }

  SuffixAutomaton::SuffixAutomaton() : _len{0}, _link{-1}, _next(1) {}

  void SuffixAutomaton::add(Code const& word) {
    int last = 0;
    for (int c : word) {
      auto it = _next[last].find(c);
      if (it != _next[last].end()) {
        int q = it->second;
        if (_len[q] == _len[last] + 1) {
          last = q;
          continue;
        }
        int clone = static_cast<int>(_len.size());
        _len.push_back(_len[last] + 1);
        _link.push_back(_link[q]);
        _next.push_back(_next[q]);
        _link[q] = clone;
        for (int p = last; p != -1; p = _link[p]) {
          auto jt = _next[p].find(c);
          if (jt == _next[p].end() || jt->second != q) {
            break;
          }
          jt->second = clone;
        }
        last = clone;
        continue;
      }
      int cur = static_cast<int>(_len.size());
      _len.push_back(_len[last] + 1);
      _link.push_back(0);
      _next.emplace_back();
      int p = last;
      while (p != -1 && _next[p].find(c) == _next[p].end()) {
        _next[p][c] = cur;
        p           = _link[p];
      }
      if (p != -1) {
        int q = _next[p][c];
        if (_len[p] + 1 == _len[q]) {
          _link[cur] = q;
        } else {
          int clone = static_cast<int>(_len.size());
          _len.push_back(_len[p] + 1);
          _link.push_back(_link[q]);
          _next.push_back(_next[q]);
          while (p != -1) {
            auto jt = _next[p].find(c);
            if (jt == _next[p].end() || jt->second != q) {
              break;
            }
            jt->second = clone;
            p          = _link[p];
          }
          _link[q]   = clone;
          _link[cur] = clone;
        }
      }
      last = cur;
    }
  }

  std::vector<size_t> SuffixAutomaton::matching_statistics(Code const& code) const {
    std::vector<size_t> out(code.size());
    int                 v = 0;
    size_t              l = 0;
    for (size_t i = 0; i < code.size(); ++i) {
      int c = code[i];
      while (v != 0 && _next[v].find(c) == _next[v].end()) {
        v = _link[v];
        l = _len[v];
      }
      auto it = _next[v].find(c);
      if (it != _next[v].end()) {
        v = it->second;
        ++l;
      } else {
        l = 0;
      }
      out[i] = l;
    }
    return out;
  }

  bool SuffixAutomaton::contains(Code const& code) const {
    int v = 0;
    for (int c : code) {
      auto it = _next[v].find(c);
      if (it == _next[v].end()) {
        return false;
      }
      v = it->second;
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // LeafLibrary
  ////////////////////////////////////////////////////////////////////////

  namespace {
    GroupWord subpath(GbsGraph const& g, GroupWord const& w, size_t from, size_t to) {
      GroupWord s;
      s.start = g.origin(w.edges[from]);
      s.edges.assign(w.edges.begin() + static_cast<long>(from),
                     w.edges.begin() + static_cast<long>(to));
      s.syllables.assign(w.syllables.begin() + static_cast<long>(from),
                         w.syllables.begin() + static_cast<long>(to) + 1);
      return s;
    }

    std::vector<double> prefix_lengths(GbsGraph const&            g,
                                       std::vector<EdgeId> const& edges) {
      std::vector<double> p(edges.size() + 1, 0.0);
      for (size_t i = 0; i < edges.size(); ++i) {
        p[i + 1] = p[i] + g.length(edges[i]);
      }
      return p;
    }

    // First edge of the longest match ending at edge j (token 2j).
    size_t match_start(std::vector<size_t> const& ms, size_t j) {
      size_t l = ms[2 * j];
      if (l == 0) {
        return j + 1;
      }
      size_t s = 2 * j + 1 - l;
      if (s % 2 == 1) {
        ++s;
      }
      return s / 2;
    }
  }  // namespace

  LeafLibrary::LeafLibrary(TrainTrackMap const& tt, size_t k_max, size_t cap)
      : _graph(tt.graph()), _cap(cap) {
    if (k_max < 2) {
      throw DomainError("leaf library needs k_max >= 2");
    }
    std::vector<GroupWord> gen;
    for (EdgeId e = 0; e < static_cast<EdgeId>(_graph.number_of_edges()); e += 2) {
      gen.push_back(GroupWord::letter(_graph, e));
    }
    _gens.push_back(gen);
    for (size_t k = 1; k <= k_max; ++k) {
      for (auto& w : gen) {
        w = tt.image(w);
      }
      _gens.push_back(gen);
    }
    index(cap);
  }

  LeafLibrary::LeafLibrary(GbsGraph const&                            g,
                           std::vector<std::vector<GroupWord>> const& generations,
                           size_t                                     cap)
      : _graph(g), _gens(generations), _cap(cap) {
    if (_gens.empty()) {
      throw DomainError("empty leaf library");
    }
    index(cap);
  }

  void LeafLibrary::index(size_t cap) {
    auto add_word = [&](GroupWord const& w) {
      size_t k = w.edges.size();
      if (k == 0) {
        return;
      }
      Code code;
      auto encode = [&](GroupWord const& s) {
        Code c;
        for (size_t i = 0; i < s.edges.size(); ++i) {
          if (i > 0) {
            c.push_back(static_cast<int>(_graph.number_of_edges())
                        + _alphabet.token(turn_between(_graph, s.edges[i - 1],
                                                       s.syllables[i], s.edges[i])));
          }
          c.push_back(s.edges[i]);
        }
        return c;
      };
      if (k <= cap) {
        _sam.add(encode(w));
        return;
      }
      size_t stride = std::max<size_t>(1, cap / 2);
      for (size_t from = 0;; from += stride) {
        size_t to = std::min(k, from + cap);
        _sam.add(encode(subpath(_graph, w, from, to)));
        if (to == k) {
          break;
        }
      }
    };
    for (auto const& gen : _gens) {
      for (auto const& w : gen) {
        add_word(w);
        add_word(inverse(_graph, w));
      }
    }
  }

  Code LeafLibrary::path_code(GroupWord const& w) const {
    Code c;
    int  off = static_cast<int>(_graph.number_of_edges());
    for (size_t i = 0; i < w.edges.size(); ++i) {
      if (i > 0) {
        int t = _alphabet.lookup(
            turn_between(_graph, w.edges[i - 1], w.syllables[i], w.edges[i]));
        c.push_back(t < 0 ? -1 : off + t);
      }
      c.push_back(w.edges[i]);
    }
    return c;
  }

  Code LeafLibrary::cyclic_code(CyclicWord const& c, size_t periods) const {
    Code   out;
    int    off = static_cast<int>(_graph.number_of_edges());
    size_t k   = c.edges.size();
    for (size_t p = 0; p < periods; ++p) {
      for (size_t i = 0; i < k; ++i) {
        if (p > 0 || i > 0) {
          size_t prev = (i + k - 1) % k;
          int    t    = _alphabet.lookup(turn_between(
              _graph, c.edges[prev], c.syllables[prev], c.edges[i]));
          out.push_back(t < 0 ? -1 : off + t);
        }
        out.push_back(c.edges[i]);
      }
    }
    return out;
  }

  bool LeafLibrary::contains(GroupWord const& w) const {
    if (w.edges.empty()) {
      return true;
    }
    return _sam.contains(path_code(w));
  }

  bool LeafLibrary::quasi_periodic(size_t k_big, size_t k_small) const {
    for (auto const& big : generation(k_big)) {
      SuffixAutomaton sam;
      Code            code = path_code(big);
      sam.add(code);
      for (auto const& small : generation(k_small)) {
        if (!sam.contains(path_code(small))
            && !sam.contains(path_code(inverse(_graph, small)))) {
          return false;
        }
      }
    }
    return true;
  }

  std::vector<TurnKey> LeafLibrary::turns() const {
    std::set<TurnKey> s;
    for (size_t k = 1; k < _gens.size(); ++k) {
      for (auto const& w : _gens[k]) {
        for (auto const& t : path_turns(_graph, w)) {
          s.insert(t);
        }
      }
    }
    return {s.begin(), s.end()};
  }

  double LeafLibrary::longest_common_segment(LeafLibrary const& other) const {
    double best = 0;
    for (auto const& gen : other._gens) {
      for (auto const& w : gen) {
        if (w.edges.empty()) {
          continue;
        }
        auto ms = _sam.matching_statistics(path_code(w));
        auto p  = prefix_lengths(_graph, w.edges);
        for (size_t j = 0; j < w.edges.size(); ++j) {
          size_t s = match_start(ms, j);
          if (s <= j) {
            best = std::max(best, p[j + 1] - p[s]);
          }
        }
      }
    }
    return best;
  }

  namespace {
    constexpr char kMagic[8] = {'G', 'B', 'S', 'L', 'A', 'M', '1', '\0'};

    template <typename T>
    void put(std::ostream& o, T x) {
      o.write(reinterpret_cast<char const*>(&x), sizeof(T));
    }
    template <typename T>
    T get(std::istream& in) {
      T x{};
      in.read(reinterpret_cast<char*>(&x), sizeof(T));
      if (!in) {
        throw DomainError("truncated leaf library cache");
      }
      return x;
    }
  }  // namespace

  void LeafLibrary::save(std::string const& path, uint64_t key) const {
    std::ofstream o(path, std::ios::binary);
    if (!o) {
      throw DomainError("cannot write file", {path});
    }
    o.write(kMagic, sizeof(kMagic));
    put<uint64_t>(o, key);
    put<uint64_t>(o, _cap);
    put<uint64_t>(o, _gens.size());
    for (auto const& gen : _gens) {
      put<uint64_t>(o, gen.size());
      for (auto const& w : gen) {
        put<int32_t>(o, w.start);
        put<uint64_t>(o, w.edges.size());
        for (EdgeId e : w.edges) {
          put<int32_t>(o, e);
        }
        for (auto const& s : w.syllables) {
          std::string text = s.str();
          put<uint32_t>(o, static_cast<uint32_t>(text.size()));
          o.write(text.data(), static_cast<long>(text.size()));
        }
      }
    }
  }

  LeafLibrary LeafLibrary::load(std::string const& path,
                                GbsGraph const&    g,
                                uint64_t           key) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw DomainError("cannot open file", {path});
    }
    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
      throw DomainError("not a leaf library cache", {path});
    }
    if (get<uint64_t>(in) != key) {
      throw DomainError("leaf library cache belongs to another map", {path});
    }
    size_t cap  = get<uint64_t>(in);
    size_t ngen = get<uint64_t>(in);
    std::vector<std::vector<GroupWord>> gens(ngen);
    for (auto& gen : gens) {
      gen.resize(get<uint64_t>(in));
      for (auto& w : gen) {
        w.start  = get<int32_t>(in);
        size_t k = get<uint64_t>(in);
        w.edges.resize(k);
        for (auto& e : w.edges) {
          e = get<int32_t>(in);
        }
        w.syllables.clear();
        for (size_t i = 0; i <= k; ++i) {
          std::string text(get<uint32_t>(in), '\0');
          in.read(text.data(), static_cast<long>(text.size()));
          w.syllables.emplace_back(text);
        }
        if (!is_well_formed(g, w)) {
          throw DomainError("leaf library cache does not match the graph");
        }
      }
    }
    return LeafLibrary(g, gens, cap);
  }

  uint64_t map_hash(TrainTrackMap const& tt) {
    std::string text = tt_to_json(tt).dump();
    uint64_t    h    = 1469598103934665603ULL;
    for (unsigned char c : text) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    return h;
  }

  ////////////////////////////////////////////////////////////////////////
  // Pieces
  ////////////////////////////////////////////////////////////////////////

  std::vector<Piece> detect_pieces(CyclicWord const&  axis,
                                   LeafLibrary const& lib,
                                   double             L) {
    GbsGraph const& g = lib.graph();
    size_t          k = axis.edges.size();
    if (k == 0) {
      return {};
    }
    auto   ms = lib.automaton().matching_statistics(lib.cyclic_code(axis, 3));
    std::vector<size_t> start(3 * k);
    for (size_t j = 0; j < 3 * k; ++j) {
      start[j] = match_start(ms, j);
    }
    // a cut where no match contains two consecutive edges makes the cyclic
    // problem linear
    size_t w0 = k;
    for (size_t c = k; c < 2 * k; ++c) {
      if (start[c] >= c) {
        w0 = c;
        break;
      }
    }
    std::vector<double> P(k + 1, 0.0);
    for (size_t j = 0; j < k; ++j) {
      P[j + 1] = P[j] + g.length(axis.edges[(w0 + j) % k]);
    }
    std::vector<double> best(k + 1, 0.0);
    std::vector<long>   from(k + 1, -1);  // piece start, or -1 for a gap
    std::deque<size_t>  dq;
    size_t              pushed = 0;
    double const        eps    = 1e-12;
    for (size_t j = 1; j <= k; ++j) {
      size_t end_edge = w0 + j - 1;
      size_t s        = start[end_edge] > w0 ? start[end_edge] - w0 : 0;
      while (pushed + 1 <= j && P[j] - P[pushed] >= L - eps) {
        while (!dq.empty()
               && best[dq.back()] - P[dq.back()] <= best[pushed] - P[pushed]) {
          dq.pop_back();
        }
        dq.push_back(pushed);
        ++pushed;
      }
      while (!dq.empty() && dq.front() < s) {
        dq.pop_front();
      }
      best[j] = best[j - 1];
      if (!dq.empty() && dq.front() < j) {
        double cand = best[dq.front()] + P[j] - P[dq.front()];
        if (cand > best[j] + eps) {
          best[j] = cand;
          from[j] = static_cast<long>(dq.front());
        }
      }
    }
    std::vector<Piece> pieces;
    for (size_t j = k; j > 0;) {
      if (from[j] < 0) {
        --j;
        continue;
      }
      size_t i = static_cast<size_t>(from[j]);
      pieces.push_back({(w0 + i) % k, j - i, P[j] - P[i]});
      j = i;
    }
    std::reverse(pieces.begin(), pieces.end());
    return pieces;
  }

  double lamination_ratio(CyclicWord const&  axis,
                          LeafLibrary const& lib,
                          double             L) {
    double total = cyclic_length(lib.graph(), axis);
    if (total <= 0) {
      throw DomainError("lamination ratio of an elliptic element");
    }
    double covered = 0;
    for (auto const& p : detect_pieces(axis, lib, L)) {
      covered += p.length;
    }
    return covered / total;
  }

  std::vector<std::vector<GroupWord>> transport_leaves(
      LeafLibrary const&      lib,
      GroupoidMorphism const& h,
      GbsGraph const&         g,
      size_t                  trim) {
    std::vector<std::vector<GroupWord>> out;
    for (size_t k = 0; k <= lib.k_max(); ++k) {
      std::vector<GroupWord> gen;
      for (auto const& w : lib.generation(k)) {
        GroupWord img = h.apply(lib.graph(), g, w);
        if (img.edges.size() <= 2 * trim) {
          continue;
        }
        gen.push_back(subpath(g, img, trim, img.edges.size() - trim));
      }
      out.push_back(std::move(gen));
    }
    return out;
  }

}  // namespace gbs
