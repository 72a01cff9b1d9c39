#include "octasum/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>
#include <sstream>
#include <unordered_set>

namespace octasum {

namespace {

int mod1(int x, int n) { // wrap into 1..n
  int r = (x - 1) % n;
  if (r < 0)
    r += n;
  return r + 1;
}

} // namespace

size_t Diagram::pass_index(int l) const {
  if (l < 1 || l > arc_count())
    throw std::out_of_range("pass label out of range");
  return static_cast<size_t>(l - 1);
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

Diagram Diagram::parse_pd(const std::string &text) {
  std::vector<std::array<int, 4>> tuples;
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() &&
           (std::isspace(static_cast<unsigned char>(text[i])) ||
            text[i] == ','))
      ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != 'X' && text[i] != 'x')
      throw MalformedCode("expected 'X(' at position " + std::to_string(i));
    ++i;
    if (i >= text.size() || (text[i] != '(' && text[i] != '['))
      throw MalformedCode("expected '(' after X");
    char close = text[i] == '(' ? ')' : ']';
    ++i;
    std::array<int, 4> t{};
    for (int k = 0; k < 4; ++k) {
      skip_ws();
      size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        ++i;
      if (start == i) {
        if (i < text.size() && text[i] == close)
          throw MalformedCode("crossing tuple has fewer than 4 entries");
        throw MalformedCode("expected arc label in crossing tuple");
      }
      t[static_cast<size_t>(k)] = std::stoi(text.substr(start, i - start));
    }
    skip_ws();
    if (i >= text.size() || text[i] != close)
      throw MalformedCode("crossing tuple has more than 4 entries");
    ++i;
    tuples.push_back(t);
    skip_ws();
  }
  if (tuples.empty())
    throw MalformedCode("empty PD code");
  return from_pd_tuples(tuples);
}

Diagram Diagram::parse_gauss(const std::string &text) {
  struct Visit {
    bool over;
    int crossing;
    int sign;
  };
  std::vector<Visit> visits;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    if (tok.size() < 3)
      throw MalformedCode("bad Gauss token '" + tok + "'");
    char kind = static_cast<char>(std::toupper(tok[0]));
    if (kind != 'O' && kind != 'U')
      throw MalformedCode("Gauss token must start with O or U");
    char sg = tok.back();
    if (sg != '+' && sg != '-')
      throw MalformedCode("Gauss token must end with + or -");
    int num = 0;
    try {
      num = std::stoi(tok.substr(1, tok.size() - 2));
    } catch (...) {
      throw MalformedCode("bad crossing number in '" + tok + "'");
    }
    visits.push_back({kind == 'O', num, sg == '+' ? 1 : -1});
  }
  if (visits.empty() || visits.size() % 2 != 0)
    throw MalformedCode("Gauss code must list 2c passes");
  int n = static_cast<int>(visits.size()) / 2;

  std::map<int, std::pair<int, int>> over_pass, under_pass; // crossing -> (pass, sign)
  for (int p = 1; p <= 2 * n; ++p) {
    const Visit &v = visits[static_cast<size_t>(p - 1)];
    auto &slot = v.over ? over_pass : under_pass;
    if (slot.count(v.crossing))
      throw MalformedCode("crossing " + std::to_string(v.crossing) +
                          " visited twice as " + (v.over ? "over" : "under"));
    slot[v.crossing] = {p, v.sign};
  }
  if (over_pass.size() != static_cast<size_t>(n) ||
      under_pass.size() != static_cast<size_t>(n) ||
      over_pass.size() != under_pass.size())
    throw MalformedCode("each crossing must be visited once over, once under");

  std::vector<std::array<int, 4>> tuples;
  for (const auto &[c, up] : under_pass) {
    auto it = over_pass.find(c);
    if (it == over_pass.end())
      throw MalformedCode("crossing " + std::to_string(c) + " visited once");
    auto [u, su] = up;
    auto [o, so] = it->second;
    if (su != so)
      throw MalformedCode("inconsistent sign at crossing " + std::to_string(c));
    int u_in = mod1(u - 1, 2 * n), o_in = mod1(o - 1, 2 * n);
    if (su > 0)
      tuples.push_back({u_in, o, u, o_in});
    else
      tuples.push_back({u_in, o_in, u, o});
  }
  return from_pd_tuples(tuples);
}

// ---------------------------------------------------------------------------
// Construction from PD tuples
// ---------------------------------------------------------------------------

Diagram Diagram::from_pd_tuples(const std::vector<std::array<int, 4>> &tuples) {
  int n = static_cast<int>(tuples.size());
  int arcs = 2 * n;
  std::vector<int> label_uses(static_cast<size_t>(arcs) + 1, 0);
  for (const auto &t : tuples)
    for (int x : t) {
      if (x < 1 || x > arcs)
        throw MalformedCode("arc label " + std::to_string(x) +
                            " out of range 1.." + std::to_string(arcs));
      ++label_uses[static_cast<size_t>(x)];
    }
  for (int x = 1; x <= arcs; ++x)
    if (label_uses[static_cast<size_t>(x)] != 2)
      throw MalformedCode("arc label " + std::to_string(x) +
                          " must appear exactly twice");

  // Orient crossings. Under strand: a -> c; over strand: the one of b,d whose
  // successor (mod 2c) is the other. Arc labels are required to be sequential
  // along the traversal; per-component sequential numbering means a link.
  auto attempt = [&](const std::vector<std::array<int, 4>> &tt,
                     bool finalize) -> std::optional<Diagram> {
    Diagram d;
    d.crossings_.resize(static_cast<size_t>(n));
    d.pass_crossing_.assign(static_cast<size_t>(arcs), -1);
    d.pass_over_.assign(static_cast<size_t>(arcs), false);
    for (int ci = 0; ci < n; ++ci) {
      auto [a, b, c, dd] = tt[static_cast<size_t>(ci)];
      Crossing &cr = d.crossings_[static_cast<size_t>(ci)];
      if (mod1(a + 1, arcs) != c) {
        // not sequential: either a link-style code or garbage
        bool linkish = label_uses[static_cast<size_t>(mod1(a + 1, arcs))] == 2;
        if (!finalize)
          return std::nullopt;
        if (linkish)
          throw NotAKnot("under strand " + std::to_string(a) + "->" +
                         std::to_string(c) +
                         " breaks the single-component traversal");
        throw MalformedCode("arc labels are not sequential along the knot");
      }
      cr.under_in = a;
      cr.under_out = c;
      bool pos = mod1(dd + 1, arcs) == b;
      bool neg = mod1(b + 1, arcs) == dd;
      if (pos && neg) {
        // only for 2-arc kinks; disambiguate by pass availability
        pos = d.pass_crossing_[static_cast<size_t>(b - 1)] < 0;
        neg = !pos;
      }
      if (!pos && !neg) {
        if (!finalize)
          return std::nullopt;
        throw NotAKnot("over strand at crossing " + std::to_string(ci) +
                       " does not follow the traversal");
      }
      cr.sign = pos ? 1 : -1;
      cr.over_in = pos ? dd : b;
      cr.over_out = pos ? b : dd;
      // Pass labels are out-arc labels, so arc l is the paper's [l, l+1]:
      // it runs from pass l to pass l+1.
      auto set_pass = [&](int arc_label, bool over) {
        if (d.pass_crossing_[static_cast<size_t>(arc_label - 1)] >= 0) {
          if (!finalize)
            return false;
          throw MalformedCode("pass " + std::to_string(arc_label) +
                              " claimed by two crossings");
        }
        d.pass_crossing_[static_cast<size_t>(arc_label - 1)] = ci;
        d.pass_over_[static_cast<size_t>(arc_label - 1)] = over;
        return true;
      };
      if (!set_pass(cr.under_out, false) || !set_pass(cr.over_out, true))
        return std::nullopt;
      cr.over_label = cr.over_out;
      cr.under_label = cr.under_out;
    }
    for (int p = 0; p < arcs; ++p)
      if (d.pass_crossing_[static_cast<size_t>(p)] < 0) {
        if (!finalize)
          return std::nullopt;
        throw MalformedCode("pass " + std::to_string(p + 1) + " unused");
      }
    return d;
  };

  Diagram raw = *attempt(tuples, true);

  // Base point: an underpass immediately followed by an overpass at a
  // different crossing; among candidates take the smallest PD arc index.
  int base = -1;
  for (int p = 1; p <= arcs; ++p) {
    if (raw.pass_over_[raw.pass_index(p)])
      continue;
    int q = raw.next_pass(p);
    if (raw.pass_over_[raw.pass_index(q)] &&
        raw.pass_crossing_[raw.pass_index(q)] != raw.pass_crossing_[raw.pass_index(p)]) {
      base = p;
      break;
    }
  }
  if (base < 0)
    throw NoBasePoint("no underpass is followed by an overpass of a "
                      "different crossing");

  Diagram d = raw;
  if (base != 1) {
    std::vector<std::array<int, 4>> shifted = tuples;
    for (auto &t : shifted)
      for (int &x : t)
        x = mod1(x - base + 1, arcs);
    d = *attempt(shifted, true);
  }
  d.build_faces();
  d.build_morse_rotation();
  return d;
}

// ---------------------------------------------------------------------------
// Faces
// ---------------------------------------------------------------------------

namespace {

// Rotation slots in PD order at a crossing (CCW, slot 0 = under-in).
// Returns the arc occupying each slot and whether the arc ENDS there
// (arrives into the crossing) or starts there.
struct SlotInfo {
  int arc;
  bool incoming;
};

std::array<SlotInfo, 4> crossing_slots(const Crossing &c) {
  if (c.sign > 0)
    return {SlotInfo{c.under_in, true}, SlotInfo{c.over_out, false},
            SlotInfo{c.under_out, false}, SlotInfo{c.over_in, true}};
  return {SlotInfo{c.under_in, true}, SlotInfo{c.over_in, true},
          SlotInfo{c.under_out, false}, SlotInfo{c.over_out, false}};
}

} // namespace

void Diagram::build_faces() {
  int n = crossing_count();
  int arcs = arc_count();
  // For each directed arc (l, dir), the crossing and slot where its HEAD
  // attaches. dir=+1 follows the knot (head at the crossing of pass l+1).
  // dir encoded: 0 forward, 1 backward.
  std::vector<std::array<int, 2>> head_crossing(static_cast<size_t>(arcs)),
      head_slot(static_cast<size_t>(arcs));
  for (int ci = 0; ci < n; ++ci) {
    auto slots = crossing_slots(crossings_[static_cast<size_t>(ci)]);
    for (int s = 0; s < 4; ++s) {
      int l = slots[static_cast<size_t>(s)].arc;
      int dir = slots[static_cast<size_t>(s)].incoming ? 0 : 1;
      head_crossing[static_cast<size_t>(l - 1)][static_cast<size_t>(dir)] = ci;
      head_slot[static_cast<size_t>(l - 1)][static_cast<size_t>(dir)] = s;
    }
  }
  // Face tracing, keeping the face on the left of each directed arc:
  // arriving at slot s, leave through slot s-1 (mod 4).
  std::vector<std::array<int, 2>> face_of(static_cast<size_t>(arcs), {-1, -1});
  faces_.clear();
  arc_face_left_.assign(static_cast<size_t>(arcs), -1);
  arc_face_right_.assign(static_cast<size_t>(arcs), -1);
  for (int l0 = 1; l0 <= arcs; ++l0) {
    for (int dir0 = 0; dir0 < 2; ++dir0) {
      if (face_of[static_cast<size_t>(l0 - 1)][static_cast<size_t>(dir0)] >= 0)
        continue;
      Face face;
      int fid = static_cast<int>(faces_.size());
      int l = l0, dir = dir0;
      do {
        face_of[static_cast<size_t>(l - 1)][static_cast<size_t>(dir)] = fid;
        face.boundary_arcs.push_back(l);
        if (dir == 0)
          arc_face_left_[static_cast<size_t>(l - 1)] = fid;
        else
          arc_face_right_[static_cast<size_t>(l - 1)] = fid;
        int ci = head_crossing[static_cast<size_t>(l - 1)][static_cast<size_t>(dir)];
        int s = head_slot[static_cast<size_t>(l - 1)][static_cast<size_t>(dir)];
        int s_next = (s + 3) % 4;
        face.corners.push_back({ci, s_next});
        auto slots = crossing_slots(crossings_[static_cast<size_t>(ci)]);
        l = slots[static_cast<size_t>(s_next)].arc;
        // leaving the crossing: if the arc's head is here, we traverse it
        // backwards (dir=1 means against the knot orientation)
        dir = slots[static_cast<size_t>(s_next)].incoming ? 1 : 0;
      } while (!(l == l0 && dir == dir0));
      faces_.push_back(std::move(face));
    }
  }
  if (static_cast<int>(faces_.size()) != n + 2)
    throw NonPlanar("face count " + std::to_string(faces_.size()) +
                    " differs from c+2 = " + std::to_string(n + 2));
  // default outer face: maximal corner count, lowest index on ties
  size_t best = 0;
  for (size_t f = 1; f < faces_.size(); ++f)
    if (faces_[f].corners.size() > faces_[best].corners.size())
      best = f;
  outer_face_ = static_cast<int>(best);
}

void Diagram::set_outer_face(int f) {
  if (f < 0 || f >= static_cast<int>(faces_.size()))
    throw std::out_of_range("no such face");
  outer_face_ = f;
}

int Diagram::writhe() const {
  int w = 0;
  for (const auto &c : crossings_)
    w += c.sign;
  return w;
}

// ---------------------------------------------------------------------------
// Loops and windings
// ---------------------------------------------------------------------------

std::vector<int> Diagram::winding_map(const std::vector<int> &loop_arcs) const {
  std::vector<bool> on_loop(static_cast<size_t>(arc_count()) + 1, false);
  for (int l : loop_arcs)
    on_loop[static_cast<size_t>(l)] = true;
  std::vector<int> w(faces_.size(), 0);
  std::vector<bool> known(faces_.size(), false);
  known[static_cast<size_t>(outer_face_)] = true;
  std::deque<int> queue{outer_face_};
  auto relax = [&](int from, int to, int delta) {
    if (!known[static_cast<size_t>(to)]) {
      known[static_cast<size_t>(to)] = true;
      w[static_cast<size_t>(to)] = w[static_cast<size_t>(from)] + delta;
      queue.push_back(to);
    } else if (w[static_cast<size_t>(to)] != w[static_cast<size_t>(from)] + delta) {
      throw std::logic_error("inconsistent winding propagation");
    }
  };
  while (!queue.empty()) {
    int f = queue.front();
    queue.pop_front();
    for (int l = 1; l <= arc_count(); ++l) {
      int fl = face_left_of_arc(l), fr = face_right_of_arc(l);
      int delta = on_loop[static_cast<size_t>(l)] ? 1 : 0;
      if (fl == f)
        relax(f, fr, -delta);
      else if (fr == f)
        relax(f, fl, delta);
    }
  }
  for (bool k : known)
    if (!k)
      throw std::logic_error("winding propagation did not reach every face");
  return w;
}

LoopClass Diagram::loop_of_crossing(int c_or_zero) const {
  LoopClass loop;
  loop.crossing = c_or_zero;
  if (c_or_zero == 0) {
    for (int l = 1; l <= arc_count(); ++l)
      loop.arcs.push_back(l);
  } else {
    const Crossing &c = crossing(c_or_zero - 1);
    for (int l = c.label_j(); l < c.label_jp(); ++l)
      loop.arcs.push_back(l);
  }
  loop.winding = winding_map(loop.arcs);
  return loop;
}

WritheLinkingReport Diagram::check_writhe_linking_lemma(int crossing_id) const {
  const Crossing &c = crossing(crossing_id);
  int j = c.label_j(), jp = c.label_jp();
  auto inside = [&](int l) { return l > j && l < jp; };
  WritheLinkingReport rep;
  for (int l = j + 1; l < jp; ++l) {
    int sgn = crossing(crossing_of_pass(l)).sign;
    rep.sign_sum += sgn;
    if (!pass_is_over(l))
      rep.under_sign_sum += sgn;
  }
  // wr(gamma) over self-crossings of the loop, lk(gamma,gamma') over mixed
  for (const auto &cr : crossings_) {
    bool over_in = inside(cr.over_label), under_in = inside(cr.under_label);
    if (over_in && under_in)
      rep.writhe_gamma += cr.sign;
    else if (over_in != under_in)
      rep.twice_linking += cr.sign; // each mixed crossing counts eps/2 twice
  }
  long lk2 = rep.twice_linking;
  rep.consistent = (2 * rep.under_sign_sum == 2 * rep.writhe_gamma + lk2) &&
                   (rep.sign_sum == 2 * rep.writhe_gamma + lk2);
  return rep;
}

// ---------------------------------------------------------------------------
// Morse word construction for arc rotation numbers
// ---------------------------------------------------------------------------

namespace {

struct MorseEnd {
  int arc;
  bool up;
  bool operator==(const MorseEnd &o) const {
    return arc == o.arc && up == o.up;
  }
};

struct MorseState {
  std::vector<MorseEnd> front;
  unsigned processed = 0;

  std::string key() const {
    std::string k = std::to_string(processed) + "|";
    for (const auto &e : front)
      k += std::to_string(e.arc) + (e.up ? "u" : "d") + ",";
    return k;
  }
};

struct MorseSearch {
  const std::vector<Crossing> &crossings;
  int n;
  std::unordered_set<std::string> failed;
  std::vector<int> cap_left, cup_left; // per arc (1-based)

  explicit MorseSearch(const std::vector<Crossing> &cs)
      : crossings(cs), n(static_cast<int>(cs.size())),
        cap_left(2 * cs.size() + 1, 0), cup_left(2 * cs.size() + 1, 0) {}

  void greedy_caps(MorseState &st, std::vector<int> &caps_l,
                   std::vector<int> &caps_r) {
    bool again = true;
    while (again) {
      again = false;
      for (size_t p = 0; p + 1 < st.front.size(); ++p) {
        const MorseEnd &x = st.front[p];
        const MorseEnd &y = st.front[p + 1];
        if (x.arc == y.arc && x.up != y.up) {
          if (x.up)
            caps_r.push_back(x.arc); // up on the left: rightward travel cap
          else
            caps_l.push_back(x.arc);
          st.front.erase(st.front.begin() + static_cast<long>(p),
                         st.front.begin() + static_cast<long>(p) + 2);
          again = true;
          break;
        }
      }
    }
  }

  bool solve(MorseState st) {
    if (st.processed == (1u << n) - 1 && st.front.empty())
      return true;
    std::string key = st.key();
    if (failed.count(key))
      return false;

    for (int ci = 0; ci < n; ++ci) {
      if (st.processed & (1u << ci))
        continue;
      const Crossing &c = crossings[static_cast<size_t>(ci)];
      int in_l = c.sign > 0 ? c.over_in : c.under_in;
      int in_r = c.sign > 0 ? c.under_in : c.over_in;
      int out_l = c.sign > 0 ? c.under_out : c.over_out;
      int out_r = c.sign > 0 ? c.over_out : c.under_out;
      auto find_up = [&](int arc) {
        for (size_t p = 0; p < st.front.size(); ++p)
          if (st.front[p].arc == arc && st.front[p].up)
            return static_cast<long>(p);
        return -1L;
      };
      long pl = find_up(in_l), pr = find_up(in_r);

      auto try_state = [&](MorseState next, std::vector<int> cupsL,
                           std::vector<int> cupsR) {
        std::vector<int> capsL, capsR;
        greedy_caps(next, capsL, capsR);
        if (solve(std::move(next))) {
          for (int a : cupsL)
            cup_left[static_cast<size_t>(a)]++;
          for (int a : capsL)
            cap_left[static_cast<size_t>(a)]++;
          (void)cupsR;
          for (int a : capsR)
            (void)a; // rightward extrema carry trivial weight
          return true;
        }
        return false;
      };

      if (pl >= 0 && pr >= 0) {
        if (pr == pl + 1) {
          MorseState next = st;
          next.processed |= (1u << ci);
          next.front[static_cast<size_t>(pl)] = {out_l, true};
          next.front[static_cast<size_t>(pr)] = {out_r, true};
          if (try_state(std::move(next), {}, {}))
            return true;
        }
      } else if (pl >= 0 && pr < 0) {
        // cup-create the right input: [head up, tail down] to the right
        MorseState next = st;
        next.processed |= (1u << ci);
        next.front.insert(next.front.begin() + pl + 1,
                          {MorseEnd{in_r, true}, MorseEnd{in_r, false}});
        next.front[static_cast<size_t>(pl)] = {out_l, true};
        next.front[static_cast<size_t>(pl) + 1] = {out_r, true};
        if (try_state(std::move(next), {in_r}, {}))
          return true;
      } else if (pl < 0 && pr >= 0) {
        // cup-create the left input: [tail down, head up] to the left
        MorseState next = st;
        next.processed |= (1u << ci);
        next.front.insert(next.front.begin() + pr,
                          {MorseEnd{in_l, false}, MorseEnd{in_l, true}});
        next.front[static_cast<size_t>(pr) + 1] = {out_l, true};
        next.front[static_cast<size_t>(pr) + 2] = {out_r, true};
        if (try_state(std::move(next), {}, {in_l}))
          return true;
      } else {
        for (size_t at = 0; at <= st.front.size(); ++at) {
          MorseState next = st;
          next.processed |= (1u << ci);
          std::vector<MorseEnd> block = {{in_l, false}, {out_l, true},
                                         {out_r, true}, {in_r, false}};
          next.front.insert(next.front.begin() + static_cast<long>(at),
                            block.begin(), block.end());
          if (try_state(std::move(next), {in_r}, {in_l}))
            return true;
        }
      }
    }
    failed.insert(key);
    return false;
  }
};

} // namespace

void Diagram::build_morse_rotation() {
  int arcs = arc_count();
  arc_rotation_.assign(static_cast<size_t>(arcs), 0);
  if (crossing_count() == 0)
    return;
  if (crossing_count() > 24)
    throw std::runtime_error("Morse construction limited to 24 crossings");
  MorseSearch search(crossings_);
  MorseState st;
  if (!search.solve(st))
    throw std::logic_error("Morse word construction failed");
  for (int l = 1; l <= arcs; ++l)
    arc_rotation_[static_cast<size_t>(l - 1)] =
        search.cap_left[static_cast<size_t>(l)] -
        search.cup_left[static_cast<size_t>(l)];
}

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

std::string Diagram::emit_pd() const {
  std::ostringstream os;
  // canonical order: by under pass label
  std::vector<const Crossing *> order;
  for (const auto &c : crossings_)
    order.push_back(&c);
  std::sort(order.begin(), order.end(), [](const Crossing *a, const Crossing *b) {
    return a->under_label < b->under_label;
  });
  bool first = true;
  for (const Crossing *c : order) {
    if (!first)
      os << " ";
    first = false;
    if (c->sign > 0)
      os << "X(" << c->under_in << "," << c->over_out << "," << c->under_out
         << "," << c->over_in << ")";
    else
      os << "X(" << c->under_in << "," << c->over_in << "," << c->under_out
         << "," << c->over_out << ")";
  }
  return os.str();
}

std::string Diagram::to_json() const {
  std::ostringstream os;
  os << "{\"crossings\":[";
  for (size_t i = 0; i < crossings_.size(); ++i) {
    const Crossing &c = crossings_[i];
    if (i)
      os << ",";
    os << "{\"sign\":" << c.sign << ",\"over_label\":" << c.over_label
       << ",\"under_label\":" << c.under_label << ",\"arcs\":{\"over_in\":"
       << c.over_in << ",\"over_out\":" << c.over_out
       << ",\"under_in\":" << c.under_in << ",\"under_out\":" << c.under_out
       << "}}";
  }
  os << "],\"faces\":[";
  for (size_t f = 0; f < faces_.size(); ++f) {
    if (f)
      os << ",";
    os << "[";
    for (size_t k = 0; k < faces_[f].corners.size(); ++k) {
      if (k)
        os << ",";
      os << "[" << faces_[f].corners[k].crossing << ","
         << faces_[f].corners[k].slot << "]";
    }
    os << "]";
  }
  os << "],\"outer_face\":" << outer_face_ << ",\"writhe\":" << writhe()
     << ",\"arc_rotation\":[";
  for (size_t i = 0; i < arc_rotation_.size(); ++i) {
    if (i)
      os << ",";
    os << arc_rotation_[i];
  }
  os << "]}";
  return os.str();
}

} // namespace octasum
