#pragma once

// Rewiring core for the move engine.
//
// Moves are built in a temporarily unoriented representation: crossings keep
// their rotation and their over/under pair (under strand at slots {0,2}),
// arcs keep endpoints plus "witness" records of the original arcs they came
// from. finalize() walks the resulting 1-manifold, orients every component
// along the direction of its lowest-id original witness, anchors slot 0 at
// the incoming under end, and recomputes crossing signs. Untouched parts of
// a diagram come back structurally identical.

#include <algorithm>
#include <array>
#include <set>
#include <vector>

#include "kirbycalc/diagram.hpp"

namespace kirbycalc {

class UBuilder {
public:
  struct End {
    int crossing = -1;
    int slot = -1;
    bool placed() const { return crossing >= 0; }
  };
  struct UArc {
    End e0, e1;
    bool dead = false;
    // original arcs inside this arc; dir = +1 when the original ran e0->e1
    std::vector<std::pair<int, int>> witness;
    int orig_comp = -1;
  };
  struct UCross {
    std::array<int, 4> arc_at{-1, -1, -1, -1};  // counterclockwise slots
    std::array<int, 4> end_at{-1, -1, -1, -1};  // 0: arc's e0 here, 1: e1
    bool dead = false;
  };

  explicit UBuilder(const LinkDiagram& d) : src_(d) {
    crossings_.resize(d.crossing_count());
    arcs_.resize(d.arc_count());
    for (int a = 0; a < d.arc_count(); ++a) {
      UArc& u = arcs_[a];
      u.witness = {{a, +1}};
      u.orig_comp = d.arcs[a].comp;
      if (d.arcs[a].is_free_loop()) continue;
      u.e0 = End{d.arcs[a].tail.crossing, d.arcs[a].tail.slot};
      u.e1 = End{d.arcs[a].head.crossing, d.arcs[a].head.slot};
    }
    auto t = d.slot_table();
    for (int c = 0; c < d.crossing_count(); ++c)
      for (int s = 0; s < 4; ++s) {
        crossings_[c].arc_at[s] = t[c][s].arc;
        crossings_[c].end_at[s] = t[c][s].is_head ? 1 : 0;
      }
  }

  const LinkDiagram& source() const { return src_; }
  const UArc& arc(int a) const { return arcs_[a]; }
  const UCross& crossing(int c) const { return crossings_[c]; }

  int new_arc(int donor_comp = -1) {
    arcs_.push_back(UArc{});
    arcs_.back().orig_comp = donor_comp;
    return static_cast<int>(arcs_.size()) - 1;
  }

  // Cut arc a into pieces. For an open/closed ordinary arc with n cuts the n+1
  // pieces run e0 -> e1; piece[i].e1 and piece[i+1].e0 face cut i. For a free
  // loop, n cuts give n pieces in cyclic order: piece[i] runs from cut i to
  // cut i+1 (mod n). Witnesses stay with piece[0].
  std::vector<int> split(int a, int cuts) {
    if (cuts < 1) throw MoveError("split needs at least one cut");
    if (arcs_[a].dead) throw MoveError("split of a dead arc");
    UArc original = arcs_[a];
    bool loop = !original.e0.placed() && !original.e1.placed();
    int n_pieces = loop ? cuts : cuts + 1;
    std::vector<int> pieces{a};
    for (int i = 1; i < n_pieces; ++i) pieces.push_back(new_arc(original.orig_comp));
    arcs_[a].e1 = End{};
    if (loop) arcs_[a].e0 = End{};
    if (!loop && n_pieces > 1) {
      arcs_[pieces.back()].e1 = original.e1;
      if (original.e1.placed()) {
        crossings_[original.e1.crossing].arc_at[original.e1.slot] = pieces.back();
        crossings_[original.e1.crossing].end_at[original.e1.slot] = 1;
      }
    }
    return pieces;
  }

  struct Corner {
    int arc;
    int which_end;  // 0 or 1
  };

  // Place a crossing from four corners in counterclockwise order with the
  // under strand at positions 0 and 2. Corner handles may reference merged
  // arcs; they resolve to wherever the end lives now.
  int add_crossing_ccw(std::array<Corner, 4> corners) {
    for (Corner& k : corners) {
      auto [ra, re] = resolve_end(k.arc, k.which_end);
      k.arc = ra;
      k.which_end = re;
    }
    int c = static_cast<int>(crossings_.size());
    crossings_.push_back(UCross{});
    for (int s = 0; s < 4; ++s) {
      const Corner& k = corners[s];
      if (k.arc < 0 || arcs_[k.arc].dead) throw MoveError("crossing corner: bad arc");
      End& e = k.which_end == 0 ? arcs_[k.arc].e0 : arcs_[k.arc].e1;
      if (e.placed()) throw MoveError("crossing corner: arc end already placed");
      e = End{c, s};
      crossings_[c].arc_at[s] = k.arc;
      crossings_[c].end_at[s] = k.which_end;
    }
    return c;
  }

  struct CompassEnd {
    int angle;
    int arc;
    int which_end;
    bool under;
  };
  int add_crossing_compass(std::array<CompassEnd, 4> ends) {
    int base = -1;
    for (int i = 0; i < 4 && base < 0; ++i)
      if (ends[i].under) base = i;
    if (base < 0) throw MoveError("compass crossing: no under ends");
    std::array<const CompassEnd*, 4> at{};
    for (const CompassEnd& e : ends) {
      int rel = ((e.angle - ends[base].angle) % 360 + 360) % 360;
      if (rel % 90) throw MoveError("compass crossing: bad angle");
      if (at[rel / 90]) throw MoveError("compass crossing: duplicate angle");
      at[rel / 90] = &e;
    }
    for (int s = 0; s < 4; ++s)
      if (!at[s]) throw MoveError("compass crossing: missing end");
    if (!at[0]->under || !at[2]->under || at[1]->under || at[3]->under)
      throw MoveError("compass crossing: under ends not opposite");
    return add_crossing_ccw({Corner{at[0]->arc, at[0]->which_end},
                             Corner{at[1]->arc, at[1]->which_end},
                             Corner{at[2]->arc, at[2]->which_end},
                             Corner{at[3]->arc, at[3]->which_end}});
  }

  // Follow merges: where does an (arc, end) handle live now?
  std::pair<int, int> resolve_end(int a, int e) const {
    while (arcs_[a].dead) {
      auto it = end_redirect_.find(a * 2 + e);
      if (it == end_redirect_.end()) throw MoveError("arc end vanished in a merge");
      a = it->second.first;
      e = it->second.second;
    }
    return {a, e};
  }
  int live_arc(int a) const {
    while (arcs_[a].dead) {
      auto it = end_redirect_.find(a * 2);
      auto it1 = end_redirect_.find(a * 2 + 1);
      if (it != end_redirect_.end()) a = it->second.first;
      else if (it1 != end_redirect_.end()) a = it1->second.first;
      else throw MoveError("dead arc with no merge target");
    }
    return a;
  }

  // Glue two open arc ends smoothly. Joining an arc end to the other end of
  // the same arc closes it into a free loop.
  void join(int a_in, int end_a_in, int b_in, int end_b_in) {
    auto [a, end_a] = resolve_end(a_in, end_a_in);
    auto [b, end_b] = resolve_end(b_in, end_b_in);
    End& ea = end_a == 0 ? arcs_[a].e0 : arcs_[a].e1;
    End& eb = end_b == 0 ? arcs_[b].e0 : arcs_[b].e1;
    if (a == b && end_a == end_b) throw MoveError("join: arc end glued to itself");
    if (ea.placed() || eb.placed()) throw MoveError("join needs open ends");
    if (a == b) {
      arcs_[a].e0 = arcs_[a].e1 = End{};
      return;
    }
    End far = end_b == 0 ? arcs_[b].e1 : arcs_[b].e0;
    ea = far;
    if (far.placed()) {
      crossings_[far.crossing].arc_at[far.slot] = a;
      crossings_[far.crossing].end_at[far.slot] = end_a;
    }
    int through = (end_a == 1) ? +1 : -1;  // walk direction along a at the glue
    int b_walk = (end_b == 0) ? +1 : -1;   // walk direction along b past the glue
    for (auto [orig, dir] : arcs_[b].witness)
      arcs_[a].witness.push_back({orig, dir * b_walk * through});
    if (arcs_[a].orig_comp < 0) arcs_[a].orig_comp = arcs_[b].orig_comp;
    arcs_[b].dead = true;
    end_redirect_[b * 2 + (1 - end_b)] = {a, end_a};  // b's far end now lives on a
    end_redirect_[b * 2 + end_b] = {a, end_a};
  }

  // Detach all four arc ends from a crossing and delete it. Returns the
  // handles (arc, end index) in slot order.
  std::array<Corner, 4> unplug(int c) {
    UCross& x = crossings_[c];
    if (x.dead) throw MoveError("unplug: crossing already dead");
    std::array<Corner, 4> out;
    for (int s = 0; s < 4; ++s) {
      int a = x.arc_at[s];
      End& e = x.end_at[s] == 0 ? arcs_[a].e0 : arcs_[a].e1;
      e = End{};
      out[s] = Corner{a, x.end_at[s]};
    }
    x.dead = true;
    return out;
  }

  // Move the witnesses of a doomed arc onto its replacement. rel_dir = +1
  // when the replacement runs the same way (e0->e1) as the original.
  void adopt_witnesses(int to, int from, int rel_dir) {
    for (auto [orig, dir] : arcs_[from].witness)
      arcs_[to].witness.push_back({orig, dir * rel_dir});
    if (arcs_[to].orig_comp < 0) arcs_[to].orig_comp = arcs_[from].orig_comp;
  }

  void discard_arc(int a) {
    if (arcs_[a].e0.placed() || arcs_[a].e1.placed())
      throw MoveError("discard: arc still attached");
    arcs_[a].dead = true;
  }

  // Splice both strands straight through a crossing and delete it.
  void kill_crossing_smoothly(int c) {
    UCross& x = crossings_[c];
    if (x.dead) throw MoveError("crossing already dead");
    auto open_up = [&](int s) {
      int a = x.arc_at[s];
      End& e = x.end_at[s] == 0 ? arcs_[a].e0 : arcs_[a].e1;
      e = End{};
      return std::pair<int, int>{a, x.end_at[s]};
    };
    auto [a0, e0] = open_up(0);
    auto [a2, e2] = open_up(2);
    join(a0, e0, a2, e2);
    auto [a1, e1] = open_up(1);
    auto [a3, e3] = open_up(3);
    join(a1, e1, a3, e3);
    x.dead = true;
  }

  struct BuildResult {
    LinkDiagram d;
    std::vector<int> comp_origin;      // per new component: donor old comp or -1
    std::vector<int> old_comp_to_new;  // -1 when an old comp vanished or lost the donor race
    std::vector<int> arc_to_new;       // builder arc id -> final id (-1 when dead)
    std::vector<int> cross_to_new;     // builder crossing id -> final id
    std::vector<int> witness_final_arc;  // original arc -> final arc containing it
    std::vector<int> witness_final_dir;  // original arc -> +-1 (0 when gone)
  };

  BuildResult finalize() {
    std::vector<int> amap(arcs_.size(), -1), cmap(crossings_.size(), -1);
    int na = 0, nc = 0;
    for (size_t a = 0; a < arcs_.size(); ++a)
      if (!arcs_[a].dead) amap[a] = na++;
    for (size_t c = 0; c < crossings_.size(); ++c)
      if (!crossings_[c].dead) cmap[c] = nc++;

    struct Walk {
      std::vector<std::pair<int, int>> order;  // (arc, dir) with dir=+1: e0->e1
      int ref_orig = -1;                       // lowest original arc seen
      int ref_dir = 0;                         // its direction relative to the walk
      int donor_comp = -1;
      int first_arc = -1;
    };
    std::vector<Walk> walks;
    std::vector<int> walk_of(arcs_.size(), -1);
    for (size_t a0 = 0; a0 < arcs_.size(); ++a0) {
      if (arcs_[a0].dead || walk_of[a0] >= 0) continue;
      Walk w;
      w.first_arc = static_cast<int>(a0);
      int wid = static_cast<int>(walks.size());
      int a = static_cast<int>(a0);
      int dir = +1;
      for (;;) {
        if (walk_of[a] >= 0) throw MoveError("finalize: component walk revisited an arc");
        walk_of[a] = wid;
        w.order.push_back({a, dir});
        for (auto [orig, odir] : arcs_[a].witness) {
          int eff = odir * dir;
          if (w.ref_orig < 0 || orig < w.ref_orig) {
            w.ref_orig = orig;
            w.ref_dir = eff;
            w.donor_comp = src_.arcs[orig].comp;
          }
        }
        if (w.donor_comp < 0 && arcs_[a].orig_comp >= 0 && w.ref_orig < 0)
          w.donor_comp = arcs_[a].orig_comp;
        const End& exit = dir > 0 ? arcs_[a].e1 : arcs_[a].e0;
        if (!exit.placed()) {
          const End& other = dir > 0 ? arcs_[a].e0 : arcs_[a].e1;
          if (w.order.size() == 1 && !other.placed()) break;  // free loop
          throw MoveError("finalize: open arc end left unglued");
        }
        const UCross& x = crossings_[exit.crossing];
        int s2 = (exit.slot + 2) & 3;
        int b = x.arc_at[s2];
        if (b < 0 || arcs_[b].dead) throw MoveError("finalize: crossing references dead arc");
        dir = (x.end_at[s2] == 0) ? +1 : -1;
        if (b == static_cast<int>(a0)) {
          if (dir != +1) throw MoveError("finalize: walk closed against itself");
          break;
        }
        a = b;
      }
      walks.push_back(std::move(w));
    }

    std::vector<int> flip(walks.size(), +1);
    for (size_t w = 0; w < walks.size(); ++w)
      if (walks[w].ref_orig >= 0 && walks[w].ref_dir < 0) flip[w] = -1;

    // component numbering: donor components keep their relative old order,
    // brand-new components come after, by first arc
    std::vector<int> perm(walks.size());
    for (size_t i = 0; i < walks.size(); ++i) perm[i] = static_cast<int>(i);
    std::sort(perm.begin(), perm.end(), [&](int x, int y) {
      long long dx = walks[x].donor_comp >= 0 ? walks[x].donor_comp : (1LL << 40) + walks[x].first_arc;
      long long dy = walks[y].donor_comp >= 0 ? walks[y].donor_comp : (1LL << 40) + walks[y].first_arc;
      if (dx != dy) return dx < dy;
      return walks[x].first_arc < walks[y].first_arc;
    });
    std::vector<int> walk_comp(walks.size());
    BuildResult res;
    res.comp_origin.assign(walks.size(), -1);
    for (size_t i = 0; i < perm.size(); ++i) {
      walk_comp[perm[i]] = static_cast<int>(i);
      res.comp_origin[i] = walks[perm[i]].donor_comp;
    }

    LinkDiagram out;
    out.crossings.resize(nc);
    out.arcs.resize(na);
    out.comps.resize(walks.size());
    for (size_t k = 0; k < walks.size(); ++k)
      if (res.comp_origin[k] >= 0 && res.comp_origin[k] < src_.component_count())
        out.comps[k] = src_.comps[res.comp_origin[k]];

    // arc records with final directions; crossing refs still builder ids
    for (size_t w = 0; w < walks.size(); ++w) {
      for (auto [a, dir] : walks[w].order) {
        int fdir = dir * flip[w];
        const UArc& u = arcs_[a];
        Arc rec;
        rec.comp = walk_comp[w];
        End tail = fdir > 0 ? u.e0 : u.e1;
        End head = fdir > 0 ? u.e1 : u.e0;
        rec.tail = tail.placed() ? SlotRef{tail.crossing, tail.slot} : SlotRef{};
        rec.head = head.placed() ? SlotRef{head.crossing, head.slot} : SlotRef{};
        out.arcs[amap[a]] = rec;
      }
    }

    // crossing records: rotate so slot 0 holds the incoming under end
    for (size_t c = 0; c < crossings_.size(); ++c) {
      if (crossings_[c].dead) continue;
      const UCross& x = crossings_[c];
      auto is_head_at = [&](int s) {
        const Arc& fa = out.arcs[amap[x.arc_at[s]]];
        return fa.head.valid() && fa.head.crossing == static_cast<int>(c) && fa.head.slot == s;
      };
      int rot;
      if (is_head_at(0) && !is_head_at(2)) rot = 0;
      else if (is_head_at(2) && !is_head_at(0)) rot = 2;
      else throw MoveError("finalize: under strand orientation inconsistent");
      int sign;
      if (is_head_at((3 + rot) & 3) && !is_head_at((1 + rot) & 3)) sign = +1;
      else if (is_head_at((1 + rot) & 3) && !is_head_at((3 + rot) & 3)) sign = -1;
      else throw MoveError("finalize: over strand orientation inconsistent");
      out.crossings[cmap[c]].sign = sign;
      if (rot) {
        for (Arc& fa : out.arcs) {
          if (fa.tail.valid() && fa.tail.crossing == static_cast<int>(c))
            fa.tail.slot = (fa.tail.slot - rot + 4) & 3;
          if (fa.head.valid() && fa.head.crossing == static_cast<int>(c))
            fa.head.slot = (fa.head.slot - rot + 4) & 3;
        }
      }
    }
    for (Arc& fa : out.arcs) {
      if (fa.tail.valid()) fa.tail.crossing = cmap[fa.tail.crossing];
      if (fa.head.valid()) fa.head.crossing = cmap[fa.head.crossing];
    }

    res.old_comp_to_new.assign(src_.component_count(), -1);
    for (size_t k = 0; k < res.comp_origin.size(); ++k)
      if (res.comp_origin[k] >= 0 && res.old_comp_to_new[res.comp_origin[k]] < 0)
        res.old_comp_to_new[res.comp_origin[k]] = static_cast<int>(k);
    res.witness_final_arc.assign(src_.arc_count(), -1);
    res.witness_final_dir.assign(src_.arc_count(), 0);
    for (size_t w = 0; w < walks.size(); ++w)
      for (auto [a, dir] : walks[w].order)
        for (auto [orig, odir] : arcs_[a].witness) {
          res.witness_final_arc[orig] = amap[a];
          res.witness_final_dir[orig] = odir * dir * flip[w];
        }
    res.arc_to_new = amap;
    res.cross_to_new = cmap;
    res.d = std::move(out);
    return res;
  }

private:
  const LinkDiagram& src_;
  std::vector<UCross> crossings_;
  std::vector<UArc> arcs_;
  std::map<int, std::pair<int, int>> end_redirect_;
};

}  // namespace kirbycalc
