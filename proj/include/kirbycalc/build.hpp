#pragma once

// Construction toolkit shared by the diagram builders and the move engine.
//
// Crossings are placed from local compass data: four arc ends at distinct
// angles around the new crossing, two of them on the under strand. Slot 0 is
// anchored at the under strand's incoming end; the sign falls out of where
// the over strand's incoming end lands in the counterclockwise slot order.

#include <array>
#include <cstdlib>
#include <set>

#include "kirbycalc/diagram.hpp"

namespace kirbycalc {

struct EndSpec {
  int angle;     // degrees counterclockwise, multiples of 90 apart
  int arc;       // arc whose end sits here
  bool is_head;  // true: the arc arrives here (incoming)
  bool under;    // true: this end belongs to the under strand
};

inline int add_placed_crossing(LinkDiagram& d, std::array<EndSpec, 4> ends) {
  int under_head = -1;
  for (int i = 0; i < 4; ++i)
    if (ends[i].under && ends[i].is_head) under_head = i;
  if (under_head < 0) throw DiagramError("crossing placement: no incoming under end");
  int theta0 = ends[under_head].angle;
  std::array<const EndSpec*, 4> at{};
  for (const EndSpec& e : ends) {
    int rel = ((e.angle - theta0) % 360 + 360) % 360;
    if (rel % 90 != 0) throw DiagramError("crossing placement: angles must be multiples of 90");
    int s = rel / 90;
    if (at[s]) throw DiagramError("crossing placement: two ends at one angle");
    at[s] = &e;
  }
  for (int s = 0; s < 4; ++s)
    if (!at[s]) throw DiagramError("crossing placement: missing end");
  if (!at[2]->under || at[2]->is_head) throw DiagramError("crossing placement: under strand ends misplaced");
  if (at[1]->under || at[3]->under) throw DiagramError("crossing placement: over strand ends misplaced");
  int sign;
  if (at[3]->is_head && !at[1]->is_head) sign = +1;
  else if (at[1]->is_head && !at[3]->is_head) sign = -1;
  else throw DiagramError("crossing placement: over strand needs one head and one tail");
  int c = d.crossing_count();
  d.crossings.push_back(Crossing{sign});
  for (int s = 0; s < 4; ++s) {
    Arc& a = d.arcs[at[s]->arc];
    SlotRef ref{c, s};
    if (at[s]->is_head) {
      if (a.head.valid()) throw DiagramError("crossing placement: arc already has a head");
      a.head = ref;
    } else {
      if (a.tail.valid()) throw DiagramError("crossing placement: arc already has a tail");
      a.tail = ref;
    }
  }
  return c;
}

inline int new_open_arc(LinkDiagram& d, int comp = -1) {
  d.arcs.push_back(Arc{SlotRef{}, SlotRef{}, comp});
  return d.arc_count() - 1;
}

// Merge arc `back` into arc `front` (front supplies the missing end of back
// or vice versa), erasing `back` and compacting indices. `watch` lists arc
// index variables to keep in step.
inline void merge_arcs(LinkDiagram& d, int keep, int drop, std::vector<int*> watch = {}) {
  if (keep == drop) return;
  Arc& k = d.arcs[keep];
  Arc& g = d.arcs[drop];
  if (!k.head.valid() && g.head.valid()) k.head = g.head;
  else if (!k.tail.valid() && g.tail.valid()) k.tail = g.tail;
  else throw DiagramError("arc merge: ends do not complement");
  d.arcs.erase(d.arcs.begin() + drop);
  for (TwistBox& tb : d.twist_boxes)
    for (int& x : tb.arcs) {
      if (x == drop) x = keep < drop ? keep : keep - 1;
      else if (x > drop) --x;
    }
  for (int* p : watch) {
    if (*p == drop) *p = keep;
    if (*p > drop) --*p;
  }
}

// Recompute the component partition from connectivity. Each traversal keeps
// the decor of the lowest-id arc's old component. New order: by lowest arc.
inline void rebuild_components(LinkDiagram& d) {
  auto t = d.slot_table();
  std::vector<int> old_comp(d.arc_count());
  for (int a = 0; a < d.arc_count(); ++a) old_comp[a] = d.arcs[a].comp;
  std::vector<ComponentDecor> old_decor = d.comps;
  std::vector<int> assigned(d.arc_count(), -1);
  std::vector<ComponentDecor> comps;
  for (int a0 = 0; a0 < d.arc_count(); ++a0) {
    if (assigned[a0] >= 0) continue;
    int k = static_cast<int>(comps.size());
    ComponentDecor dec;
    bool have = false;
    int a = a0;
    do {
      assigned[a] = k;
      if (!have && old_comp[a] >= 0 && old_comp[a] < static_cast<int>(old_decor.size())) {
        dec = old_decor[old_comp[a]];
        have = true;
      }
      a = d.next_arc_on_component(t, a);
    } while (a != a0);
    comps.push_back(dec);
  }
  for (int a = 0; a < d.arc_count(); ++a) d.arcs[a].comp = assigned[a];
  d.comps = std::move(comps);
}

// ---- braid closures -------------------------------------------------------

struct BraidLetter {
  int index;  // 1-based: crossing between strands index, index+1
  int sign;   // +1 or -1
};

inline std::vector<BraidLetter> braid_word(std::initializer_list<int> signed_indices) {
  std::vector<BraidLetter> w;
  for (int v : signed_indices) {
    if (v == 0) throw DiagramError("braid letter 0");
    w.push_back({v > 0 ? v : -v, v > 0 ? 1 : -1});
  }
  return w;
}

// Closure of a braid, drawn downward. A positive letter gives a positive
// crossing (strands are coherently oriented in a braid closure).
inline LinkDiagram braid_closure(int strands, const std::vector<BraidLetter>& word) {
  if (strands < 1) throw DiagramError("braid needs at least one strand");
  LinkDiagram d;
  std::vector<int> init(strands), cur(strands);
  for (int p = 0; p < strands; ++p) init[p] = cur[p] = new_open_arc(d);
  for (const BraidLetter& l : word) {
    int i = l.index;
    if (i < 1 || i >= strands) throw DiagramError("braid letter out of range");
    int in_l = cur[i - 1], in_r = cur[i];
    int out_l = new_open_arc(d), out_r = new_open_arc(d);
    // ends at NW=135, NE=45, SW=225, SE=315; strands travel downward;
    // positive letter: the NE->SW path runs over
    bool left_under = l.sign > 0;
    add_placed_crossing(d, {EndSpec{135, in_l, true, left_under},
                            EndSpec{315, out_r, false, left_under},
                            EndSpec{45, in_r, true, !left_under},
                            EndSpec{225, out_l, false, !left_under}});
    cur[i - 1] = out_l;
    cur[i] = out_r;
  }
  for (int p = 0; p < strands; ++p) {
    std::vector<int*> watch;
    for (int q = 0; q < strands; ++q) { watch.push_back(&init[q]); watch.push_back(&cur[q]); }
    merge_arcs(d, cur[p], init[p], watch);  // close the column
  }
  rebuild_components(d);
  d.validate();
  return d;
}

inline LinkDiagram disjoint_union(const LinkDiagram& a, const LinkDiagram& b) {
  LinkDiagram d = a;
  int coff = a.crossing_count(), aoff = a.arc_count(), koff = a.component_count();
  for (const Crossing& c : b.crossings) d.crossings.push_back(c);
  for (Arc arc : b.arcs) {
    if (arc.tail.valid()) arc.tail.crossing += coff;
    if (arc.head.valid()) arc.head.crossing += coff;
    arc.comp += koff;
    d.arcs.push_back(arc);
  }
  for (const ComponentDecor& k : b.comps) d.comps.push_back(k);
  for (TwistBox box : b.twist_boxes) {
    for (int& x : box.arcs) x += aoff;
    d.twist_boxes.push_back(std::move(box));
  }
  d.validate();
  return d;
}

inline LinkDiagram unknot_loop(ComponentDecor decor = {}) {
  LinkDiagram d;
  d.arcs.push_back(Arc{SlotRef{}, SlotRef{}, 0});
  d.comps.push_back(decor);
  d.validate();
  return d;
}

inline LinkDiagram empty_diagram() { return LinkDiagram{}; }

// ---- twist box expansion ----------------------------------------------------

namespace detail {

// +1 if arc b runs the same way as arc a along their shared face, -1 if
// opposite. Free loops are unanchored and align with anything.
inline int relative_strand_direction(const LinkDiagram& d, const LinkDiagram::FaceData& fd,
                                     int a, int b) {
  if (d.arcs[a].is_free_loop() || d.arcs[b].is_free_loop()) return +1;
  int ra = d.face_right_of(fd, a), la = d.face_left_of(fd, a);
  int rb = d.face_right_of(fd, b), lb = d.face_left_of(fd, b);
  bool parallel = (ra == lb) || (la == rb);
  bool anti = (ra == rb) || (la == lb);
  if (parallel && anti) throw DiagramError("twist box: strand adjacency is ambiguous");
  if (parallel) return +1;
  if (anti) return -1;
  throw DiagramError("twist box strands do not share a face");
}

}  // namespace detail

// Replace every twist box by its braid of crossings: n(n-1)|k| crossings for
// k full twists, n(n-1)/2 for a half twist. A +1 full twist on coherently
// oriented strands produces positive crossings.
inline LinkDiagram expand_twist_boxes(const LinkDiagram& din) {
  LinkDiagram d = din;
  while (!d.twist_boxes.empty()) {
    TwistBox box = d.twist_boxes.back();
    d.twist_boxes.pop_back();
    int n = static_cast<int>(box.arcs.size());
    if ((box.denom == 1 && box.numer == 0) || n == 1) continue;
    auto fd = d.face_data();
    std::vector<int> dir(n, +1);  // link-direction of strand j relative to strand 0
    for (int j = 1; j < n; ++j)
      dir[j] = dir[j - 1] * detail::relative_strand_direction(d, fd, box.arcs[j - 1], box.arcs[j]);
    if (box.denom == 2) {
      for (int j = 0; j < n; ++j)
        if (dir[j] != dir[n - 1 - j])
          throw DiagramError("half twist needs matching strand orientations across the box");
    }
    // cut each strand; cur[j] = arc entering the braid at the top of column j,
    // exits[j] = piece leaving at the bottom of column j
    std::vector<int> cur(n), exits(n);
    for (int j = 0; j < n; ++j) {
      int a = box.arcs[j];
      if (d.arcs[a].is_free_loop()) {
        cur[j] = exits[j] = a;  // loop enters on one end, returns on the other
      } else if (dir[j] > 0) {
        int bottom = new_open_arc(d, d.arcs[a].comp);
        d.arcs[bottom].head = d.arcs[a].head;
        d.arcs[a].head = SlotRef{};
        cur[j] = a;
        exits[j] = bottom;
      } else {
        int bottom = new_open_arc(d, d.arcs[a].comp);
        d.arcs[bottom].tail = d.arcs[a].tail;
        d.arcs[a].tail = SlotRef{};
        cur[j] = a;
        exits[j] = bottom;
      }
    }
    std::vector<int> letters;
    int handed = (box.denom == 2) ? box.numer : (box.numer > 0 ? 1 : -1);
    if (box.denom == 2) {
      for (int i = 1; i <= n - 1; ++i)
        for (int j = i; j >= 1; --j) letters.push_back(j);
    } else {
      for (int rep = 0; rep < std::abs(box.numer); ++rep)
        for (int r = 0; r < n; ++r)
          for (int i = 1; i <= n - 1; ++i) letters.push_back(i);
    }
    std::vector<int> column_dir = dir;
    for (int li : letters) {
      int iL = li - 1, iR = li;
      int aL = cur[iL], aR = cur[iR];
      int dL = column_dir[iL], dR = column_dir[iR];
      int oL = new_open_arc(d, d.arcs[aL].comp);
      int oR = new_open_arc(d, d.arcs[aR].comp);
      // The pending arc always connects at the top of the crossing; whether
      // that end is a head depends on the strand's link-direction.
      auto top_end = [&](int angle, int in_arc, int sdir) {
        return EndSpec{angle, in_arc, sdir > 0, false};
      };
      auto bot_end = [&](int angle, int out_arc, int sdir) {
        return EndSpec{angle, out_arc, sdir < 0, false};
      };
      // left strand: NW=135 top, SE=315 bottom; right strand: NE=45, SW=225
      EndSpec e_nw = top_end(135, aL, dL), e_se = bot_end(315, oL, dL);
      EndSpec e_ne = top_end(45, aR, dR), e_sw = bot_end(225, oR, dR);
      bool left_under = handed > 0;  // positive handedness: NE->SW path over
      e_nw.under = e_se.under = left_under;
      e_ne.under = e_sw.under = !left_under;
      add_placed_crossing(d, {e_nw, e_se, e_ne, e_sw});
      cur[iL] = oR;  // strands swap columns: right strand exits at SW
      cur[iR] = oL;
      std::swap(column_dir[iL], column_dir[iR]);
    }
    for (int j = 0; j < n; ++j) {
      std::vector<int*> watch;
      for (int q = 0; q < n; ++q) { watch.push_back(&cur[q]); watch.push_back(&exits[q]); }
      merge_arcs(d, cur[j], exits[j], watch);
    }
    // A full twist is a pure braid, so the component partition is untouched
    // and indices stay stable. A half twist permutes strands: recompute.
    if (box.denom == 2) rebuild_components(d);
  }
  d.validate();
  return d;
}

}  // namespace kirbycalc
