#pragma once

// Seifert's algorithm. Any knot diagram is first normalized to a closed
// braid (Vogel moves: coherent finger moves that make the Seifert circles
// nested), then the Seifert matrix is read off the braid word: the surface
// is a stack of disks joined by half-twisted bands, one band per letter, and
// the homology basis has one cycle per consecutive pair of same-index
// letters. The pairing of basis cycles follows the classical band-linking
// rules; the conventions are pinned by the worked examples in the tests
// (positive trefoil: V congruent to [[-1,1],[0,-1]], signature -2).

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "kirbycalc/build.hpp"
#include "kirbycalc/diagram.hpp"
#include "kirbycalc/moves.hpp"
#include "kirbycalc/snf.hpp"

namespace kirbycalc {

namespace seifert_detail {

// Oriented smoothing: slot 0 joins the over-out slot, over-in joins slot 2.
struct Smoothed {
  std::vector<int> circle_of_arc;          // arc -> circle id
  int circles = 0;
  std::vector<int> merged_face_of_face;    // original face -> smoothed face (representative)
  LinkDiagram::FaceData fd;
};

inline int smooth_next_arc(const LinkDiagram& d,
                           const std::vector<std::array<LinkDiagram::SlotEntry, 4>>& t, int arc) {
  const SlotRef& h = d.arcs[arc].head;
  if (!h.valid()) return arc;
  const Crossing& x = d.crossings[h.crossing];
  int out = (h.slot == 0) ? x.over_out_slot() : 2;
  return t[h.crossing][out].arc;
}

inline Smoothed smooth(const LinkDiagram& d) {
  Smoothed s;
  auto t = d.slot_table();
  s.circle_of_arc.assign(d.arc_count(), -1);
  for (int a0 = 0; a0 < d.arc_count(); ++a0) {
    if (s.circle_of_arc[a0] >= 0) continue;
    int id = s.circles++;
    int a = a0;
    do {
      s.circle_of_arc[a] = id;
      a = smooth_next_arc(d, t, a);
    } while (a != a0);
  }
  // smoothed faces: original faces merged across the opened corners
  s.fd = d.face_data();
  int nf = static_cast<int>(s.fd.faces.size());
  std::vector<int> parent(nf);
  for (int i = 0; i < nf; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto corner_face = [&](int c, int slot) {
    const LinkDiagram::SlotEntry& e = t[c][slot];
    int dart = e.is_head ? dart_forward(e.arc) : dart_backward(e.arc);
    return s.fd.dart_face[dart];
  };
  for (int c = 0; c < d.crossing_count(); ++c) {
    int s1, s2;
    if (d.crossings[c].sign > 0) { s1 = 1; s2 = 3; }  // corners (1,2) and (3,0) open
    else { s1 = 0; s2 = 2; }                          // corners (0,1) and (2,3) open
    int f1 = find(corner_face(c, s1)), f2 = find(corner_face(c, s2));
    if (f1 != f2) parent[f1] = f2;
  }
  s.merged_face_of_face.assign(nf, -1);
  for (int i = 0; i < nf; ++i) s.merged_face_of_face[i] = find(i);
  return s;
}

// circles bordering each smoothed face, and the traversal flag of each dart
struct CircleFaceIncidence {
  // smoothed face representative -> set of (circle, dart forwardness) flags
  std::map<int, std::set<std::pair<int, int>>> border;
};

inline CircleFaceIncidence incidence(const LinkDiagram& d, const Smoothed& s) {
  CircleFaceIncidence inc;
  for (int a = 0; a < d.arc_count(); ++a) {
    if (d.arcs[a].is_free_loop()) continue;
    int circle = s.circle_of_arc[a];
    int fr = s.merged_face_of_face[s.fd.dart_face[dart_forward(a)]];
    int fl = s.merged_face_of_face[s.fd.dart_face[dart_backward(a)]];
    inc.border[fr].insert({circle, +1});
    inc.border[fl].insert({circle, -1});
  }
  return inc;
}

// defect pairs: two distinct circles bordering one smoothed face with the
// same traversal flag (Vogel's criterion for "not yet a closed braid")
inline std::vector<std::pair<int, int>> find_defect_arcs(const LinkDiagram& d, const Smoothed& s) {
  std::map<int, std::vector<std::pair<int, int>>> darts_by_face;  // face -> (arc, flag)
  for (int a = 0; a < d.arc_count(); ++a) {
    if (d.arcs[a].is_free_loop()) continue;
    int fr = s.merged_face_of_face[s.fd.dart_face[dart_forward(a)]];
    int fl = s.merged_face_of_face[s.fd.dart_face[dart_backward(a)]];
    darts_by_face[fr].push_back({a, +1});
    darts_by_face[fl].push_back({a, -1});
  }
  std::vector<std::pair<int, int>> out;
  for (auto& [f, list] : darts_by_face) {
    for (size_t i = 0; i < list.size(); ++i)
      for (size_t j = i + 1; j < list.size(); ++j) {
        auto [a1, f1] = list[i];
        auto [a2, f2] = list[j];
        if (f1 == f2 && s.circle_of_arc[a1] != s.circle_of_arc[a2]) out.push_back({a1, a2});
      }
  }
  return out;
}

inline int defect_count(const LinkDiagram& d, const Smoothed& s) {
  int count = 0;
  std::map<int, std::vector<std::pair<int, int>>> by_face;
  for (int a = 0; a < d.arc_count(); ++a) {
    if (d.arcs[a].is_free_loop()) continue;
    int fr = s.merged_face_of_face[s.fd.dart_face[dart_forward(a)]];
    int fl = s.merged_face_of_face[s.fd.dart_face[dart_backward(a)]];
    by_face[fr].push_back({s.circle_of_arc[a], +1});
    by_face[fl].push_back({s.circle_of_arc[a], -1});
  }
  for (auto& [f, list] : by_face) {
    std::set<std::pair<int, int>> seen(list.begin(), list.end());
    std::set<std::pair<int, int>> pairs;
    for (auto [c1, f1] : seen)
      for (auto [c2, f2] : seen)
        if (c1 < c2 && f1 == f2) pairs.insert({c1, c2});
    count += static_cast<int>(pairs.size());
  }
  return count;
}

// one Vogel move: a coherent finger of one defect arc across the other;
// returns plausible planar variants for the caller to pick from
inline std::vector<LinkDiagram> vogel_move_variants(const LinkDiagram& d, int x_arc, int y_arc) {
  std::vector<LinkDiagram> out;
  for (bool first_left : {true, false}) {
    for (bool second_at_zero : {false, true}) {
      int st0 = second_at_zero ? 1 : 0, st1 = second_at_zero ? 0 : 1;
      std::vector<BandEvent> path{BandEvent{y_arc, st0, first_left, true},
                                  BandEvent{y_arc, st1, !first_left, true}};
      try {
        out.push_back(reroute_strand(d, x_arc, 0, path));
      } catch (const DiagramError&) {
      } catch (const MoveError&) {
      }
    }
  }
  return out;
}

struct BraidForm {
  int strands = 0;
  std::vector<BraidLetter> word;
};

// Read the braid word off a diagram whose Seifert circles are nested.
inline BraidForm extract_braid(const LinkDiagram& d) {
  Smoothed s = smooth(d);
  CircleFaceIncidence inc = incidence(d, s);
  // collect faces and build circle adjacency along the face-circle tree
  std::map<int, std::set<int>> face_circles;
  for (auto& [f, set] : inc.border)
    for (auto [c, flag] : set) face_circles[f].insert(c);
  // free-loop-only diagrams have no faces
  if (d.crossing_count() == 0) {
    BraidForm bf;
    bf.strands = 1;
    return bf;
  }
  // the tree must be a path: exactly two faces see one circle, rest see two
  std::vector<int> end_faces;
  for (auto& [f, cs] : face_circles) {
    if (cs.size() == 1) end_faces.push_back(f);
    else if (cs.size() != 2)
      throw MoveError("braid read: seifert circles are not totally nested");
  }
  if (end_faces.size() != 2) throw MoveError("braid read: nesting is not a single chain");
  // walk the chain to order circles
  std::vector<int> circle_order;
  std::set<int> used_faces;
  int cur_face = std::min(end_faces[0], end_faces[1]);
  used_faces.insert(cur_face);
  for (;;) {
    const std::set<int>& cs = face_circles[cur_face];
    int next_circle = -1;
    for (int c : cs)
      if (circle_order.empty() || c != circle_order.back()) next_circle = c;
    if (next_circle < 0) break;
    circle_order.push_back(next_circle);
    // find the other face of this circle
    int nf = -1;
    for (auto& [f, cset] : face_circles)
      if (!used_faces.count(f) && cset.count(next_circle)) nf = f;
    if (nf < 0) break;
    used_faces.insert(nf);
    cur_face = nf;
  }
  if (static_cast<int>(circle_order.size()) != s.circles)
    throw MoveError("braid read: chain walk missed circles");
  std::vector<int> strand_of_circle(s.circles, -1);
  for (size_t i = 0; i < circle_order.size(); ++i) strand_of_circle[circle_order[i]] = static_cast<int>(i);

  // crossings per circle in traversal order, starting at the circle's lowest arc
  auto t = d.slot_table();
  std::vector<std::vector<int>> circle_cross(s.circles);
  std::vector<char> arc_seen(d.arc_count(), 0);
  for (int a0 = 0; a0 < d.arc_count(); ++a0) {
    if (arc_seen[a0] || d.arcs[a0].is_free_loop()) continue;
    int circle = s.circle_of_arc[a0];
    int a = a0;
    do {
      arc_seen[a] = 1;
      circle_cross[circle].push_back(d.arcs[a].head.crossing);
      a = smooth_next_arc(d, t, a);
    } while (a != a0);
  }
  // letters: crossing -> (index, sign); strands of its two smoothed arcs
  int m = d.crossing_count();
  std::vector<int> letter_index(m, -1);
  for (int c = 0; c < m; ++c) {
    int s_under = s.circle_of_arc[t[c][0].arc];
    int s_over = s.circle_of_arc[t[c][d.crossings[c].over_in_slot()].arc];
    int i1 = strand_of_circle[s_under], i2 = strand_of_circle[s_over];
    if (std::abs(i1 - i2) != 1)
      throw MoveError("braid read: crossing joins non-adjacent circles");
    letter_index[c] = std::min(i1, i2) + 1;  // 1-based generator index
  }
  // Linearize the angular order around the braid axis: anchor the innermost
  // circle anywhere, then merge each next circle's cyclic crossing sequence
  // at the first shared crossing already placed.
  auto rotate_to = [](std::vector<int> seq, int anchor) {
    auto it = std::find(seq.begin(), seq.end(), anchor);
    if (it == seq.end()) throw MoveError("braid read: anchor not on circle");
    std::rotate(seq.begin(), it, seq.end());
    return seq;
  };
  std::vector<int> global;
  {
    int c0 = circle_order[0];
    std::vector<int> seq = circle_cross[c0];
    if (seq.empty()) throw MoveError("braid read: disconnected braid");
    global = rotate_to(seq, *std::min_element(seq.begin(), seq.end()));
  }
  for (size_t j = 1; j < circle_order.size(); ++j) {
    const std::vector<int>& cyc = circle_cross[circle_order[j]];
    if (cyc.empty()) throw MoveError("braid read: disconnected braid");
    // shared crossings: those already placed in `global`
    std::set<int> placed(global.begin(), global.end());
    int anchor = -1;
    for (int x : global)
      if (std::find(cyc.begin(), cyc.end(), x) != cyc.end()) { anchor = x; break; }
    if (anchor < 0) throw MoveError("braid read: adjacent circles share no crossing");
    std::vector<int> lin = rotate_to(cyc, anchor);
    // verify shared subsequence order and insert the new crossings
    size_t gpos = std::find(global.begin(), global.end(), anchor) - global.begin();
    size_t insert_at = gpos + 1;
    for (size_t i = 1; i < lin.size(); ++i) {
      int x = lin[i];
      if (placed.count(x)) {
        auto it = std::find(global.begin() + static_cast<long>(gpos) + 1, global.end(), x);
        if (it == global.end())
          throw MoveError("braid read: cyclic orders are inconsistent (not a braid)");
        gpos = static_cast<size_t>(it - global.begin());
        insert_at = gpos + 1;
      } else {
        global.insert(global.begin() + static_cast<long>(insert_at), x);
        if (gpos >= insert_at) ++gpos;
        ++insert_at;
      }
    }
  }
  if (static_cast<int>(global.size()) != m)
    throw MoveError("braid read: some crossings were never placed");
  BraidForm bf;
  bf.strands = s.circles;
  for (int c : global) bf.word.push_back({letter_index[c], d.crossings[c].sign});
  return bf;
}

}  // namespace seifert_detail

// Normalize a diagram to a closed braid with Vogel moves; the output is a
// diagram of the same link whose Seifert circles are nested. Moves that
// shrink the defect count are preferred; any planar move is taken otherwise
// (the cap keeps pathological inputs honest).
inline LinkDiagram vogel_braid_form(const LinkDiagram& din, int max_moves = 400) {
  LinkDiagram d = din.twist_boxes.empty() ? din : expand_twist_boxes(din);
  for (int step = 0; step <= max_moves; ++step) {
    seifert_detail::Smoothed s = seifert_detail::smooth(d);
    auto defects = seifert_detail::find_defect_arcs(d, s);
    if (defects.empty()) return d;
    int cur = seifert_detail::defect_count(d, s);
    LinkDiagram fallback;
    bool have_fallback = false;
    bool moved = false;
    for (auto [a1, a2] : defects) {
      for (auto [x, y] : {std::pair{a1, a2}, std::pair{a2, a1}}) {
        for (LinkDiagram& cand : seifert_detail::vogel_move_variants(d, x, y)) {
          seifert_detail::Smoothed cs = seifert_detail::smooth(cand);
          if (seifert_detail::defect_count(cand, cs) < cur) {
            d = std::move(cand);
            moved = true;
            break;
          }
          if (!have_fallback) {
            fallback = std::move(cand);
            have_fallback = true;
          }
        }
        if (moved) break;
      }
      if (moved) break;
    }
    if (!moved) {
      if (!have_fallback) throw MoveError("vogel: no planar finger between any defect arcs");
      d = std::move(fallback);
    }
  }
  throw MoveError("vogel normalization did not terminate");
}

struct SeifertMatrix {
  IntMat v;
  int genus = 0;
  // provenance: for each basis cycle, the braid letter positions it spans
  std::vector<std::pair<int, int>> cycle_letters;
  std::vector<int> cycle_index;  // generator index of each cycle
};

// Seifert matrix of a braid word whose closure is a knot.
inline SeifertMatrix seifert_matrix_of_braid(int strands, const std::vector<BraidLetter>& word) {
  SeifertMatrix sm;
  struct Cycle {
    int index;
    int p, q;      // letter positions
    int sp, sq;    // signs at those letters
  };
  std::vector<Cycle> cycles;
  std::map<int, std::vector<int>> by_index;
  for (int pos = 0; pos < static_cast<int>(word.size()); ++pos)
    by_index[word[pos].index].push_back(pos);
  for (auto& [idx, list] : by_index)
    for (size_t i = 0; i + 1 < list.size(); ++i)
      cycles.push_back(Cycle{idx, list[i], list[i + 1], word[list[i]].sign, word[list[i + 1]].sign});
  std::sort(cycles.begin(), cycles.end(), [](const Cycle& a, const Cycle& b) {
    return std::pair(a.index, a.p) < std::pair(b.index, b.p);
  });
  int g2 = static_cast<int>(cycles.size());
  sm.v.assign(g2, std::vector<BigInt>(g2, BigInt(0)));
  for (int i = 0; i < g2; ++i) {
    sm.cycle_letters.push_back({cycles[i].p, cycles[i].q});
    sm.cycle_index.push_back(cycles[i].index);
  }
  for (int a = 0; a < g2; ++a) {
    const Cycle& A = cycles[a];
    // self pairing: the two half-twisted bands frame the cycle
    if (A.sp == 1 && A.sq == 1) sm.v[a][a] = BigInt(-1);
    else if (A.sp == -1 && A.sq == -1) sm.v[a][a] = BigInt(1);
    for (int b2 = 0; b2 < g2; ++b2) {
      if (a == b2) continue;
      const Cycle& B = cycles[b2];
      if (A.index == B.index && A.q == B.p) {
        // consecutive pair sharing one band
        if (A.sq > 0) sm.v[a][b2] = BigInt(1);
        else sm.v[b2][a] = BigInt(-1);
      }
      if (B.index == A.index + 1) {
        // cycles on adjacent disk pairs interact only when their letter
        // intervals interleave; the nonzero value sits on the higher-index
        // cycle's row, with the sign set by which interval starts first
        if (A.p < B.p && B.p < A.q && A.q < B.q) sm.v[b2][a] = BigInt(-1);
        if (B.p < A.p && A.p < B.q && B.q < A.q) sm.v[b2][a] = BigInt(1);
      }
    }
  }
  sm.genus = g2 / 2;
  return sm;
}

struct SeifertResult {
  int genus = 0;
  SeifertMatrix matrix;
  BigInt intersection_det;  // det(V - V^T), must be 1
};

inline SeifertResult seifert_surface(const LinkDiagram& din) {
  LinkDiagram d0 = din.twist_boxes.empty() ? din : expand_twist_boxes(din);
  if (d0.component_count() != 1)
    throw DiagramError("seifert surface: need a one-component diagram");
  LinkDiagram d = vogel_braid_form(d0);
  seifert_detail::BraidForm bf = seifert_detail::extract_braid(d);
  SeifertResult res;
  res.matrix = seifert_matrix_of_braid(bf.strands, bf.word);
  res.genus = res.matrix.genus;
  // structural check: the basis is symplectic
  int n = static_cast<int>(res.matrix.v.size());
  IntMat skew(n, std::vector<BigInt>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) skew[i][j] = res.matrix.v[i][j] - res.matrix.v[j][i];
  res.intersection_det = mat_det(skew);
  if (!(res.intersection_det == BigInt(1)))
    throw std::logic_error("seifert surface: basis is not symplectic");
  return res;
}

}  // namespace kirbycalc
