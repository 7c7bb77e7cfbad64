#include "dcm/compat.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace dcm {

namespace {

bool chords_cross(Label a, Label b, Label c, Label d) {
  if (a > b) std::swap(a, b);
  const bool c_in = a < c && c < b;
  const bool d_in = a < d && d < b;
  return c_in != d_in;
}

// True when every point of `inner` falls into a single gap of the sorted
// support `outer`, viewed cyclically.
bool within_one_gap(const std::vector<Label>& outer, const std::vector<Label>& inner) {
  const std::size_t m = outer.size();
  std::size_t gap = m + 1;
  for (Label x : inner) {
    std::size_t g = static_cast<std::size_t>(std::upper_bound(outer.begin(), outer.end(), x) - outer.begin());
    if (g == m) g = 0;
    if (gap == m + 1) {
      gap = g;
    } else if (g != gap) {
      return false;
    }
  }
  return true;
}

void apply_flip(std::vector<Label>& mate, const std::vector<Label>& support, const std::vector<Label>& original) {
  const std::size_t m = support.size();
  const bool starts_paired = original[static_cast<std::size_t>(support[0] - 1)] == support[1];
  const std::size_t offset = starts_paired ? 1 : 0;
  for (std::size_t i = 0; i < m; i += 2) {
    const Label x = support[(i + offset) % m];
    const Label y = support[(i + offset + 1) % m];
    mate[static_cast<std::size_t>(x - 1)] = y;
    mate[static_cast<std::size_t>(y - 1)] = x;
  }
}

// Flippable partitions by recursive interval decomposition. An interval
// [a, b] is always closed under the matching. The part holding the chord at
// a either runs to the right of it (case A) or inside it (case B); every
// other part then lives in one of the gaps between its support points.
class PartitionEngine {
 public:
  explicit PartitionEngine(const std::vector<Label>& mate)
      : mate_(mate), n_(static_cast<int>(mate.size())),
        memo_(static_cast<std::size_t>((n_ + 2) * (n_ + 2)), kUnknown) {}

  std::uint64_t count(int a, int b) {
    if (a > b) return 1;
    std::uint64_t& slot = memo_[static_cast<std::size_t>(a * (n_ + 2) + b)];
    if (slot != kUnknown) return slot;
    const int p = a;
    const int q = mate(p);
    std::uint64_t total = 0;
    const std::uint64_t inside = count(p + 1, q - 1);
    if (inside != 0) total += inside * chain_count(tops(q + 1, b), q + 1, b);
    const std::uint64_t after = count(q + 1, b);
    if (after != 0) total += chain_count(tops(p + 1, q - 1), p + 1, q - 1) * after;
    slot = total;
    return total;
  }

  void enumerate(const std::function<void(const std::vector<FlippableSet>&)>& emit) {
    emit_ = &emit;
    parts_.clear();
    pending_.assign(1, {1, n_});
    if (count(1, n_) > 0) run();
  }

 private:
  struct Chord {
    int s;
    int e;
  };
  static constexpr std::uint64_t kUnknown = std::numeric_limits<std::uint64_t>::max();

  int mate(int p) const { return mate_[static_cast<std::size_t>(p - 1)]; }

  std::vector<Chord> tops(int a, int b) const {
    std::vector<Chord> out;
    for (int p = a; p <= b; p = mate(p) + 1) out.push_back({p, mate(p)});
    return out;
  }

  // Sum over nonempty chains t_{j1} < ... < t_{jr} of the product of the
  // counts of chord insides and of the gaps between start, chords and end.
  std::uint64_t chain_count(const std::vector<Chord>& t, int start, int end) {
    std::vector<std::uint64_t> f(t.size(), 0);
    std::uint64_t total = 0;
    for (std::size_t j = 0; j < t.size(); ++j) {
      const std::uint64_t in = count(t[j].s + 1, t[j].e - 1);
      if (in == 0) continue;
      std::uint64_t lead = count(start, t[j].s - 1);
      for (std::size_t i = 0; i < j; ++i) {
        if (f[i] != 0) lead += f[i] * count(t[i].e + 1, t[j].s - 1);
      }
      f[j] = in * lead;
      total += f[j] * count(t[j].e + 1, end);
    }
    return total;
  }

  // viable[j]: chord j can be chosen and the chain completed after it.
  std::vector<char> viable(const std::vector<Chord>& t, int end) {
    std::vector<char> ok(t.size(), 0);
    for (std::size_t j = t.size(); j-- > 0;) {
      if (count(t[j].s + 1, t[j].e - 1) == 0) continue;
      if (count(t[j].e + 1, end) > 0) {
        ok[j] = 1;
        continue;
      }
      for (std::size_t i = j + 1; i < t.size(); ++i) {
        if (ok[i] && count(t[j].e + 1, t[i].s - 1) > 0) {
          ok[j] = 1;
          break;
        }
      }
    }
    return ok;
  }

  void run() {
    if (pending_.empty()) {
      (*emit_)(parts_);
      return;
    }
    const int a = pending_.back().first;
    const int b = pending_.back().second;
    pending_.pop_back();
    if (a > b) {
      run();
    } else {
      const int p = a;
      const int q = mate(p);
      if (count(p + 1, q - 1) > 0) {
        const auto t = tops(q + 1, b);
        std::vector<int> chosen;
        choose(t, viable(t, b), 0, q + 1, b, chosen, [&] {
          std::vector<Label> support{p, q};
          pending_.push_back({p + 1, q - 1});
          push_chain(t, chosen, q + 1, b, support);
          finish_part(std::move(support), 2 + 2 * chosen.size());
        });
      }
      if (count(q + 1, b) > 0) {
        const auto t = tops(p + 1, q - 1);
        std::vector<int> chosen;
        choose(t, viable(t, q - 1), 0, p + 1, q - 1, chosen, [&] {
          std::vector<Label> support{p};
          pending_.push_back({q + 1, b});
          push_chain(t, chosen, p + 1, q - 1, support);
          support.push_back(q);
          finish_part(std::move(support), 2 + 2 * chosen.size());
        });
      }
    }
    pending_.push_back({a, b});
  }

  void push_chain(const std::vector<Chord>& t, const std::vector<int>& chosen, int start, int end,
                  std::vector<Label>& support) {
    int gap = start;
    for (int j : chosen) {
      const Chord c = t[static_cast<std::size_t>(j)];
      pending_.push_back({gap, c.s - 1});
      pending_.push_back({c.s + 1, c.e - 1});
      support.push_back(c.s);
      support.push_back(c.e);
      gap = c.e + 1;
    }
    pending_.push_back({gap, end});
  }

  // pending_ already holds the gaps of this part; `gaps` of them are popped
  // once the recursion returns.
  void finish_part(std::vector<Label> support, std::size_t gaps) {
    parts_.push_back(FlippableSet{std::move(support)});
    run();
    parts_.pop_back();
    pending_.resize(pending_.size() - gaps);
  }

  template <typename Done>
  void choose(const std::vector<Chord>& t, const std::vector<char>& ok, std::size_t from, int gap,
              int end, std::vector<int>& chosen, const Done& done) {
    for (std::size_t j = from; j < t.size(); ++j) {
      if (!ok[j] || count(gap, t[j].s - 1) == 0) continue;
      chosen.push_back(static_cast<int>(j));
      if (count(t[j].e + 1, end) > 0) done();
      choose(t, ok, j + 1, t[j].e + 1, end, chosen, done);
      chosen.pop_back();
    }
  }

  const std::vector<Label>& mate_;
  int n_;
  std::vector<std::uint64_t> memo_;
  std::vector<std::pair<int, int>> pending_;
  std::vector<FlippableSet> parts_;
  const std::function<void(const std::vector<FlippableSet>&)>* emit_ = nullptr;
};

}  // namespace

bool are_disjoint_compatible(const Matching& a, const Matching& b) {
  if (a.size() != b.size()) throw std::invalid_argument("are_disjoint_compatible: size mismatch");
  const auto ea = a.edges();
  const auto eb = b.edges();
  for (const Edge& x : ea) {
    for (const Edge& y : eb) {
      if (x == y) return false;
      if (x.a == y.a || x.a == y.b || x.b == y.a || x.b == y.b) continue;
      if (chords_cross(x.a, x.b, y.a, y.b)) return false;
    }
  }
  return true;
}

std::vector<std::vector<Label>> alternating_cycles(const Matching& a, const Matching& b) {
  if (a.size() != b.size()) throw std::invalid_argument("alternating_cycles: size mismatch");
  const int n = a.points();
  std::vector<char> seen(static_cast<std::size_t>(n + 1), 0);
  std::vector<std::vector<Label>> cycles;
  for (Label start = 1; start <= n; ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    std::vector<Label> cycle;
    Label v = start;
    bool use_a = true;
    do {
      seen[static_cast<std::size_t>(v)] = 1;
      cycle.push_back(v);
      v = use_a ? a.partner(v) : b.partner(v);
      use_a = !use_a;
    } while (v != start);
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

bool are_disjoint_compatible_by_cycles(const Matching& a, const Matching& b) {
  const auto cycles = alternating_cycles(a, b);
  std::vector<std::vector<Label>> supports;
  for (const auto& cycle : cycles) {
    const std::size_t m = cycle.size();
    if (m < 4) return false;
    std::vector<Label> sorted = cycle;
    std::sort(sorted.begin(), sorted.end());
    // A polygon on points in convex position is simple iff it visits its
    // vertices in cyclic order, in one direction or the other.
    std::vector<std::size_t> pos(m);
    for (std::size_t i = 0; i < m; ++i) {
      pos[i] = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), cycle[i]) - sorted.begin());
    }
    bool forward = true;
    bool backward = true;
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t next = pos[(i + 1) % m];
      forward = forward && next == (pos[i] + 1) % m;
      backward = backward && next == (pos[i] + m - 1) % m;
    }
    if (!forward && !backward) return false;
    supports.push_back(std::move(sorted));
  }
  for (std::size_t i = 0; i < supports.size(); ++i) {
    for (std::size_t j = i + 1; j < supports.size(); ++j) {
      if (!within_one_gap(supports[i], supports[j])) return false;
    }
  }
  return true;
}

void check_partition(const Matching& m, const FlippablePartition& p) {
  const int n = m.points();
  const auto& mate = m.partners();
  std::vector<int> owner(static_cast<std::size_t>(n + 1), -1);
  for (std::size_t i = 0; i < p.parts.size(); ++i) {
    const auto& s = p.parts[i].support;
    if (s.size() < 4 || s.size() % 2 != 0) {
      throw std::invalid_argument("part " + std::to_string(i) + " must hold at least two edges");
    }
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (s[j] < 1 || s[j] > n) throw std::invalid_argument("support label out of range");
      if (j > 0 && s[j] <= s[j - 1]) throw std::invalid_argument("support must be strictly increasing");
      if (owner[static_cast<std::size_t>(s[j])] != -1) {
        throw std::invalid_argument("label " + std::to_string(s[j]) + " lies in two parts");
      }
      owner[static_cast<std::size_t>(s[j])] = static_cast<int>(i);
    }
  }
  for (Label x = 1; x <= n; ++x) {
    if (owner[static_cast<std::size_t>(x)] == -1) {
      throw std::invalid_argument("edge at label " + std::to_string(x) + " is in no part");
    }
  }
  for (std::size_t i = 0; i < p.parts.size(); ++i) {
    const auto& s = p.parts[i].support;
    const std::size_t len = s.size();
    bool odd_pairs = true;
    bool even_pairs = true;
    for (std::size_t j = 0; j < len; j += 2) {
      odd_pairs = odd_pairs && mate[static_cast<std::size_t>(s[j] - 1)] == s[j + 1];
      even_pairs = even_pairs && mate[static_cast<std::size_t>(s[j + 1] - 1)] == s[(j + 2) % len];
    }
    if (!odd_pairs && !even_pairs) {
      throw std::invalid_argument("part " + std::to_string(i) + " does not pair alternate support points");
    }
    for (Label x = 1; x <= n; ++x) {
      const Label y = mate[static_cast<std::size_t>(x - 1)];
      if (y < x || owner[static_cast<std::size_t>(x)] == static_cast<int>(i)) continue;
      std::size_t inside = 0;
      for (Label v : s) inside += (v > x && v < y) ? 1 : 0;
      if (inside != 0 && inside != len) {
        throw std::invalid_argument("part " + std::to_string(i) + " does not lie on a single face");
      }
    }
    for (std::size_t j = i + 1; j < p.parts.size(); ++j) {
      if (!within_one_gap(s, p.parts[j].support)) {
        throw std::invalid_argument("parts " + std::to_string(i) + " and " + std::to_string(j) + " interleave");
      }
    }
  }
}

Matching flip(const Matching& m, const FlippablePartition& p) {
  check_partition(m, p);
  std::vector<Label> mate = m.partners();
  for (const auto& part : p.parts) apply_flip(mate, part.support, m.partners());
  return Matching::from_partners(std::move(mate));
}

void for_each_flippable_partition(const Matching& m,
                                  const std::function<void(const FlippablePartition&)>& visit) {
  if (m.empty()) return;
  PartitionEngine engine(m.partners());
  FlippablePartition scratch;
  engine.enumerate([&](const std::vector<FlippableSet>& parts) {
    scratch.parts = parts;
    visit(scratch);
  });
}

std::vector<FlippablePartition> flippable_partitions(const Matching& m) {
  std::vector<FlippablePartition> out;
  for_each_flippable_partition(m, [&](const FlippablePartition& p) {
    FlippablePartition sorted = p;
    std::sort(sorted.parts.begin(), sorted.parts.end());
    out.push_back(std::move(sorted));
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t degree(const Matching& m) {
  if (m.empty()) return 0;
  PartitionEngine engine(m.partners());
  return engine.count(1, m.points());
}

void for_each_neighbor(const Matching& m, const std::function<void(const std::vector<Label>&)>& visit) {
  if (m.empty()) return;
  PartitionEngine engine(m.partners());
  std::vector<Label> mate;
  engine.enumerate([&](const std::vector<FlippableSet>& parts) {
    mate = m.partners();
    for (const auto& part : parts) apply_flip(mate, part.support, m.partners());
    visit(mate);
  });
}

std::vector<Matching> neighbors(const Matching& m) {
  std::vector<Matching> out;
  for_each_neighbor(m, [&](const std::vector<Label>& mate) { out.push_back(Matching::from_partners(mate)); });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Matching> neighbors_bruteforce(const Matching& m) {
  std::vector<Matching> out;
  for (const Matching& other : enumerate_matchings(m.size())) {
    if (are_disjoint_compatible(m, other)) out.push_back(other);
  }
  return out;
}

}  // namespace dcm
