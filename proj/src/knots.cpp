#include "octasum/diagram.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <vector>

namespace octasum {

namespace {

// Generic planar-template tracer. A template is a set of crossings with
// geometric corners 0=BL, 1=BR, 2=TR, 3=TL (CCW) and a perfect matching of
// corner ports by curve segments (wires). Strands pass straight through a
// crossing along the diagonals BL-TR and BR-TL; over_is_main marks the
// BL-TR strand as the over strand.
struct Template {
  struct Node {
    bool over_is_main = true;
  };
  std::vector<Node> nodes;
  // wire endpoints: port id = 4*node + corner
  std::vector<std::pair<int, int>> wires;

  int diag(int port) const {
    int corner = port % 4;
    static const int d[4] = {2, 3, 0, 1};
    return (port / 4) * 4 + d[corner];
  }

  std::string to_pd() const {
    int n = static_cast<int>(nodes.size());
    std::vector<int> peer(static_cast<size_t>(4 * n), -1);
    for (auto [a, b] : wires) {
      if (peer[static_cast<size_t>(a)] >= 0 || peer[static_cast<size_t>(b)] >= 0)
        throw MalformedCode("template wire conflict");
      peer[static_cast<size_t>(a)] = b;
      peer[static_cast<size_t>(b)] = a;
    }
    for (int p = 0; p < 4 * n; ++p)
      if (peer[static_cast<size_t>(p)] < 0)
        throw MalformedCode("template port left open");

    // Trace the knot: arrive at in-port, leave at the diagonal, follow wire.
    std::vector<int> arc_at_port(static_cast<size_t>(4 * n), 0);
    int start = 0; // arrive INTO port 0
    int port = start, pass = 0;
    do {
      ++pass;
      int out = diag(port);
      arc_at_port[static_cast<size_t>(port)] = pass == 1 ? -1 : pass - 1;
      arc_at_port[static_cast<size_t>(out)] = pass;
      port = peer[static_cast<size_t>(out)];
    } while (port != start && pass <= 2 * n);
    if (pass != 2 * n)
      throw NotAKnot("template closure is not a single component");
    // first pass's in-arc is the final arc 2n
    for (auto &a : arc_at_port)
      if (a == -1)
        a = 2 * n;

    // under-in corner per node, then read CCW
    // re-trace to know in/out roles per diagonal
    std::vector<std::array<int, 2>> in_port_of(static_cast<size_t>(n),
                                               {-1, -1}); // per diagonal 0/1
    port = start;
    for (int t = 0; t < 2 * n; ++t) {
      int node = port / 4, corner = port % 4;
      int d = (corner == 0 || corner == 2) ? 0 : 1; // diagonal id
      in_port_of[static_cast<size_t>(node)][static_cast<size_t>(d)] = port;
      port = peer[static_cast<size_t>(diag(port))];
    }
    std::ostringstream os;
    for (int v = 0; v < n; ++v) {
      bool main_over = nodes[static_cast<size_t>(v)].over_is_main;
      int under_diag = main_over ? 1 : 0;
      int uin = in_port_of[static_cast<size_t>(v)][static_cast<size_t>(under_diag)];
      if (uin < 0)
        throw MalformedCode("node missed by trace");
      int c0 = uin % 4;
      if (v)
        os << " ";
      os << "X(";
      for (int k = 0; k < 4; ++k) {
        if (k)
          os << ",";
        os << arc_at_port[static_cast<size_t>(4 * v + (c0 + k) % 4)];
      }
      os << ")";
    }
    return os.str();
  }
};

// Wire bookkeeping: a connector accumulates the two ports of one segment.
struct Connectors {
  std::vector<std::vector<int>> members;
  std::vector<int> alias; // union-find for merged connectors

  int fresh() {
    members.emplace_back();
    alias.push_back(static_cast<int>(alias.size()));
    return static_cast<int>(alias.size()) - 1;
  }
  int root(int c) {
    while (alias[static_cast<size_t>(c)] != c)
      c = alias[static_cast<size_t>(c)];
    return c;
  }
  void attach(int c, int port) { members[static_cast<size_t>(root(c))].push_back(port); }
  void merge(int a, int b) {
    a = root(a);
    b = root(b);
    if (a == b)
      throw NotAKnot("template contains a free loop");
    auto &ma = members[static_cast<size_t>(a)];
    auto &mb = members[static_cast<size_t>(b)];
    ma.insert(ma.end(), mb.begin(), mb.end());
    mb.clear();
    alias[static_cast<size_t>(b)] = a;
  }
  void emit(Template &t) {
    for (size_t c = 0; c < members.size(); ++c) {
      if (alias[c] != static_cast<int>(c))
        continue;
      if (members[c].empty())
        continue;
      if (members[c].size() != 2)
        throw MalformedCode("dangling template segment");
      t.wires.emplace_back(members[c][0], members[c][1]);
    }
  }
};

// Closure of a braid word on `strands` strands; entries are signed 1-based
// generator indices. All strands run upward; sigma_i positive has the
// strand entering at bottom-left passing over.
std::string braid_closure_pd(const std::vector<int> &word, int strands) {
  Template t;
  Connectors conn;
  std::vector<int> pending(static_cast<size_t>(strands));
  std::vector<int> closure(static_cast<size_t>(strands));
  for (int p = 0; p < strands; ++p)
    closure[static_cast<size_t>(p)] = pending[static_cast<size_t>(p)] = conn.fresh();
  for (int g : word) {
    int i = std::abs(g) - 1;
    if (i < 0 || i + 1 >= strands)
      throw std::invalid_argument("braid generator out of range");
    int v = static_cast<int>(t.nodes.size());
    t.nodes.push_back({g > 0});
    conn.attach(pending[static_cast<size_t>(i)], 4 * v + 0);     // BL
    conn.attach(pending[static_cast<size_t>(i + 1)], 4 * v + 1); // BR
    pending[static_cast<size_t>(i)] = conn.fresh();
    conn.attach(pending[static_cast<size_t>(i)], 4 * v + 3); // TL
    pending[static_cast<size_t>(i + 1)] = conn.fresh();
    conn.attach(pending[static_cast<size_t>(i + 1)], 4 * v + 2); // TR
  }
  for (int p = 0; p < strands; ++p)
    conn.merge(pending[static_cast<size_t>(p)], closure[static_cast<size_t>(p)]);
  conn.emit(t);
  return t.to_pd();
}

// Standard alternating 4-plat of the 2-bridge knot C(t1,...,tm): the word
// sigma_2^{t1} sigma_1^{-t2} sigma_2^{t3} ..., plat-closed with cups and
// caps at positions (0,1) and (2,3).
std::string plat4_pd(const std::vector<int> &twists) {
  Template t;
  Connectors conn;
  std::vector<int> pending(4);
  int cup01 = conn.fresh(), cup23 = conn.fresh();
  pending[0] = pending[1] = cup01;
  pending[2] = pending[3] = cup23;
  bool right_pair = true;
  bool positive = true;
  for (int tw : twists) {
    if (tw <= 0)
      throw std::invalid_argument("twist counts must be positive");
    int lo = right_pair ? 1 : 0;
    for (int k = 0; k < tw; ++k) {
      int v = static_cast<int>(t.nodes.size());
      t.nodes.push_back({positive});
      conn.attach(pending[static_cast<size_t>(lo)], 4 * v + 0);
      conn.attach(pending[static_cast<size_t>(lo + 1)], 4 * v + 1);
      pending[static_cast<size_t>(lo)] = conn.fresh();
      conn.attach(pending[static_cast<size_t>(lo)], 4 * v + 3);
      pending[static_cast<size_t>(lo + 1)] = conn.fresh();
      conn.attach(pending[static_cast<size_t>(lo + 1)], 4 * v + 2);
    }
    right_pair = !right_pair;
    positive = !positive;
  }
  conn.merge(pending[0], pending[1]);
  conn.merge(pending[2], pending[3]);
  conn.emit(t);
  return t.to_pd();
}

} // namespace

const std::map<std::string, std::string> &knot_library() {
  static const std::map<std::string, std::string> lib = [] {
    std::map<std::string, std::string> m;
    m["trefoil"] = braid_closure_pd({1, 1, 1}, 2);
    m["3_1"] = m["trefoil"];
    m["trefoil_kink"] = braid_closure_pd({1, 1, 1, 2}, 3);
    m["figure8"] = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)";
    m["4_1"] = m["figure8"];
    m["5_2"] = plat4_pd({3, 2});
    m["6_1"] = plat4_pd({4, 2});
    m["6_2"] = plat4_pd({3, 1, 2});
    m["7_4"] = plat4_pd({3, 1, 3});
    m["8_3"] = plat4_pd({4, 4});
    m["8_19"] = braid_closure_pd({1, 2, 1, 2, 1, 2, 1, 2}, 3);
    m["unknot_kink_pos"] = braid_closure_pd({1}, 2);
    m["unknot_kink_neg"] = braid_closure_pd({-1}, 2);
    m["unknot_2kinks"] = braid_closure_pd({1, 2}, 3);
    m["unknot_2kinks_neg"] = braid_closure_pd({-1, -2}, 3);
    m["unknot_r2"] = braid_closure_pd({1, -2}, 3);
    return m;
  }();
  return lib;
}

Diagram knot(const std::string &name) {
  const auto &lib = knot_library();
  auto it = lib.find(name);
  if (it == lib.end())
    throw std::invalid_argument("unknown knot '" + name + "'");
  return Diagram::parse_pd(it->second);
}

} // namespace octasum
