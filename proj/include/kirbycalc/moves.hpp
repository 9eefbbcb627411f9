#pragma once

// Kirby-calculus moves on decorated link diagrams: Reidemeister moves, band
// surgery, framed handleslides, slides under 1-handles, slam-dunks, ribbon
// moves and Hopf-pair cancellation. Every move returns a fresh diagram.
//
// Bands: a band attaches at two points (arc, station, side) and its core
// crosses arcs transversally at explicit events (arc, station, from_left,
// over). Stations order all cuts on one arc along the arc's direction; the
// two strands of the thickened band cross an arc at adjacent positions.
// Half twists sit at the end of the band, next to the second attachment.
// A positive half twist passes the band edge entering on the left over the
// other edge, matching the sign convention of twist boxes.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "kirbycalc/build.hpp"
#include "kirbycalc/diagram.hpp"
#include "kirbycalc/ubuild.hpp"

namespace kirbycalc {

struct BandEvent {
  int arc = -1;
  int station = 0;
  bool from_left = true;  // band crosses from the arc's left side to its right
  bool over = true;       // band passes over the crossed arc
};

struct Band {
  int start_arc = -1;
  int start_station = 0;
  bool start_side_left = true;  // side of start_arc the band departs from
  int end_arc = -1;
  int end_station = 0;
  bool end_side_left = true;  // side of end_arc the band arrives at
  std::vector<BandEvent> path;
  int half_twists = 0;
};

namespace detail {

// ---- cut bookkeeping --------------------------------------------------------

// Collects cut requests per arc and performs all splits at once. Cut handles
// then expose the pieces on each side of every cut.
class CutPlan {
public:
  int request(int arc, int station, int sub) {
    Key k{arc, station, sub};
    if (by_key_.count(k)) throw MoveError("two cuts at one arc station");
    int id = static_cast<int>(cuts_.size());
    cuts_.push_back(k);
    by_key_[k] = id;
    return id;
  }

  void apply(UBuilder& b) {
    std::map<int, std::vector<int>> per_arc;
    for (int i = 0; i < static_cast<int>(cuts_.size()); ++i)
      per_arc[cuts_[i].arc].push_back(i);
    side_.assign(cuts_.size(), Sides{});
    for (auto& [arc, ids] : per_arc) {
      std::sort(ids.begin(), ids.end(), [&](int x, int y) {
        return std::pair(cuts_[x].station, cuts_[x].sub) <
               std::pair(cuts_[y].station, cuts_[y].sub);
      });
      bool loop = !b.arc(arc).e0.placed() && !b.arc(arc).e1.placed();
      std::vector<int> pieces = b.split(arc, static_cast<int>(ids.size()));
      int n = static_cast<int>(ids.size());
      for (int j = 0; j < n; ++j) {
        Sides s;
        if (loop) {
          s.before_arc = pieces[(j + n - 1) % n];
          s.before_end = 1;
          s.after_arc = pieces[j];
          s.after_end = 0;
        } else {
          s.before_arc = pieces[j];
          s.before_end = 1;
          s.after_arc = pieces[j + 1];
          s.after_end = 0;
        }
        side_[ids[j]] = s;
      }
      arc_cuts_[arc] = {ids, pieces, loop};
    }
  }

  // builder piece covering station (s, 0) on the given arc (identity when uncut)
  int piece_at(int arc, int station) const {
    auto it = arc_cuts_.find(arc);
    if (it == arc_cuts_.end()) return arc;
    const ArcCuts& ac = it->second;
    int idx = 0;
    for (int id : ac.ids)
      if (std::pair(cuts_[id].station, cuts_[id].sub) < std::pair(station, 0)) ++idx;
    int n = static_cast<int>(ac.ids.size());
    if (ac.loop) return ac.pieces[(idx - 1 + n) % n];
    return ac.pieces[idx];
  }

  struct Sides {
    int before_arc = -1, before_end = -1;  // lower-station piece; end facing the cut
    int after_arc = -1, after_end = -1;
  };
  const Sides& at(int cut_id) const { return side_[cut_id]; }

private:
  struct Key {
    int arc, station, sub;
    bool operator<(const Key& o) const {
      return std::tie(arc, station, sub) < std::tie(o.arc, o.station, o.sub);
    }
  };
  struct ArcCuts {
    std::vector<int> ids;     // cut ids in station order
    std::vector<int> pieces;  // builder arc ids of the pieces
    bool loop = false;
  };
  std::vector<Key> cuts_;
  std::map<Key, int> by_key_;
  std::vector<Sides> side_;
  std::map<int, ArcCuts> arc_cuts_;
};

// best-effort face walk; the Euler check of the result is authoritative
inline void validate_band_faces(const LinkDiagram& d, const Band& band) {
  if (band.start_arc < 0 || band.start_arc >= d.arc_count() || band.end_arc < 0 ||
      band.end_arc >= d.arc_count())
    throw MoveError("band: no such arc");
  for (const BandEvent& e : band.path)
    if (e.arc < 0 || e.arc >= d.arc_count()) throw MoveError("band: event on missing arc");
  if (band.start_arc == band.end_arc && band.start_station == band.end_station)
    throw MoveError("band: attachment points must be distinct");
  auto fd = d.face_data();
  const int wildcard = -2;
  auto side_face = [&](int arc, bool left) {
    if (d.arcs[arc].is_free_loop()) return wildcard;
    return left ? d.face_left_of(fd, arc) : d.face_right_of(fd, arc);
  };
  int cur = side_face(band.start_arc, band.start_side_left);
  for (const BandEvent& e : band.path) {
    int entry = side_face(e.arc, e.from_left);
    if (cur != wildcard && entry != wildcard && cur != entry)
      throw MoveError("band: core leaves its face (not embedded as described)");
    cur = side_face(e.arc, !e.from_left);
  }
  int arrive = side_face(band.end_arc, band.end_side_left);
  if (cur != wildcard && arrive != wildcard && cur != arrive)
    throw MoveError("band: core does not reach the end attachment's face");
}

struct EdgeCursor {
  int arc = -1;
  int end = -1;
};

struct BandCoreOutcome {
  UBuilder::BuildResult build;
  int eps = 0;  // +1: both attachment strands kept their direction, -1: one reversed
  int final_left = -1;   // final arc ids carrying the edges into attachment 2
  int final_right = -1;
};

inline BandCoreOutcome band_surgery_core(const LinkDiagram& d, const Band& band) {
  validate_band_faces(d, band);
  UBuilder b(d);
  detail::CutPlan plan;
  int cut0 = plan.request(band.start_arc, band.start_station, 0);
  int cut1 = plan.request(band.end_arc, band.end_station, 0);
  std::vector<std::pair<int, int>> event_cuts;
  for (const BandEvent& e : band.path)
    event_cuts.push_back({plan.request(e.arc, e.station, 1), plan.request(e.arc, e.station, 2)});
  plan.apply(b);

  // attachment 1: the band edge on the lower-station side continues the
  // before-piece; leaving to the left puts the left edge there.
  const detail::CutPlan::Sides& s1 = plan.at(cut0);
  EdgeCursor left, right;
  if (band.start_side_left) {
    left = {s1.before_arc, s1.before_end};
    right = {s1.after_arc, s1.after_end};
  } else {
    left = {s1.after_arc, s1.after_end};
    right = {s1.before_arc, s1.before_end};
  }

  // events: crossing from the left means local travel "south" across an
  // "eastward" arc, so the left edge rides the east (higher-station) side
  // and the right edge crosses first.
  for (size_t i = 0; i < band.path.size(); ++i) {
    const BandEvent& e = band.path[i];
    const detail::CutPlan::Sides& lo = plan.at(event_cuts[i].first);
    const detail::CutPlan::Sides& hi = plan.at(event_cuts[i].second);
    EdgeCursor* order[2];
    order[0] = e.from_left ? &right : &left;
    order[1] = e.from_left ? &left : &right;
    for (int pass = 0; pass < 2; ++pass) {
      EdgeCursor* cur = order[pass];
      const detail::CutPlan::Sides& cs = pass == 0 ? lo : hi;
      int fresh = b.new_arc();
      int in_angle = e.from_left ? 90 : 270;
      int out_angle = e.from_left ? 270 : 90;
      b.add_crossing_compass({UBuilder::CompassEnd{180, cs.before_arc, cs.before_end, e.over},
                              UBuilder::CompassEnd{0, cs.after_arc, cs.after_end, e.over},
                              UBuilder::CompassEnd{in_angle, cur->arc, cur->end, !e.over},
                              UBuilder::CompassEnd{out_angle, fresh, 0, !e.over}});
      *cur = {fresh, 1};
    }
  }

  // half twists; after each twist the flows swap sides, so the cursor names
  // swap. Local travel south: left edge enters at NE, right at NW.
  for (int i = 0; i < std::abs(band.half_twists); ++i) {
    bool left_over = band.half_twists > 0;
    int freshL = b.new_arc(), freshR = b.new_arc();
    b.add_crossing_compass({UBuilder::CompassEnd{45, left.arc, left.end, !left_over},
                            UBuilder::CompassEnd{225, freshL, 0, !left_over},
                            UBuilder::CompassEnd{135, right.arc, right.end, left_over},
                            UBuilder::CompassEnd{315, freshR, 0, left_over}});
    // the old left flow exits at SW, i.e. on the right of travel
    left = {freshR, 1};
    right = {freshL, 1};
  }

  // attachment 2: arriving from the arc's left, the left edge (east side,
  // higher stations) continues into the after-piece.
  const detail::CutPlan::Sides& s2 = plan.at(cut1);
  int left_arc_in = left.arc, right_arc_in = right.arc;
  if (band.end_side_left) {
    b.join(s2.after_arc, s2.after_end, left.arc, left.end);
    b.join(s2.before_arc, s2.before_end, right.arc, right.end);
  } else {
    b.join(s2.before_arc, s2.before_end, left.arc, left.end);
    b.join(s2.after_arc, s2.after_end, right.arc, right.end);
  }
  int live_left = b.live_arc(left_arc_in);
  int live_right = b.live_arc(right_arc_in);

  BandCoreOutcome out;
  out.build = b.finalize();
  out.final_left = out.build.arc_to_new[live_left];
  out.final_right = out.build.arc_to_new[live_right];
  int ds = out.build.witness_final_dir[band.start_arc];
  int de = out.build.witness_final_dir[band.end_arc];
  if (ds == 0 || de == 0) throw MoveError("band: lost track of attachment orientation");
  out.eps = ds * de;
  out.build.d.validate();
  return out;
}

}  // namespace detail

// ---- band surgery -------------------------------------------------------------

struct BandSurgeryResult {
  LinkDiagram d;
  std::vector<int> old_comp_to_new;
  std::vector<int> result_comps;  // components containing the surgered strands
  int eps = 0;
  Band dual;  // band in the new diagram undoing the surgery (best effort)
  bool has_dual = false;
};

inline BandSurgeryResult band_surgery(const LinkDiagram& d, const Band& band) {
  int k1 = d.arcs[band.start_arc].comp;
  int k2 = d.arcs[band.end_arc].comp;
  long long lk = (k1 != k2) ? d.linking_number(k1, k2) : 0;
  detail::BandCoreOutcome core = detail::band_surgery_core(d, band);
  BandSurgeryResult res;
  res.eps = core.eps;
  res.old_comp_to_new = core.build.old_comp_to_new;
  LinkDiagram& nd = core.build.d;

  std::set<int> touched;
  if (int na = core.build.witness_final_arc[band.start_arc]; na >= 0)
    touched.insert(nd.arcs[na].comp);
  if (int nb = core.build.witness_final_arc[band.end_arc]; nb >= 0)
    touched.insert(nd.arcs[nb].comp);
  res.result_comps.assign(touched.begin(), touched.end());

  // framing policy: a framing survives only when two distinct components
  // with equal integer framings fuse; then the handleslide law applies.
  ComponentDecor fused{};
  if (k1 != k2 && d.comps[k1].framing.is_integer() && d.comps[k2].framing.is_integer() &&
      d.comps[k1].framing == d.comps[k2].framing) {
    long long n1 = d.comps[k1].framing.p, n2 = d.comps[k2].framing.p;
    fused.framing = Framing::integer(n1 + n2 + 2 * core.eps * lk);
    fused.bracketed = d.comps[k1].bracketed && d.comps[k2].bracketed;
  }
  for (int k : res.result_comps) nd.comps[k] = fused;

  // dual band across the band's last chamber
  int la = core.final_left, ra = core.final_right;
  if (la >= 0 && ra >= 0) {
    res.dual.start_arc = la;
    res.dual.end_arc = ra;
    res.dual.start_station = 0;
    res.dual.end_station = la == ra ? 1 : 0;
    res.dual.half_twists = 0;
    res.dual.start_side_left = res.dual.end_side_left = true;
    if (la != ra && !nd.arcs[la].is_free_loop() && !nd.arcs[ra].is_free_loop()) {
      auto fd = nd.face_data();
      int fl = nd.face_left_of(fd, la), fr = nd.face_right_of(fd, la);
      int gl = nd.face_left_of(fd, ra), gr = nd.face_right_of(fd, ra);
      if (fl == gl || fl == gr) {
        res.dual.start_side_left = true;
        res.dual.end_side_left = (gl == fl);
      } else if (fr == gl || fr == gr) {
        res.dual.start_side_left = false;
        res.dual.end_side_left = (gl == fr);
      }
    }
    res.has_dual = true;
  }
  res.d = std::move(nd);
  res.d.validate();
  return res;
}

// ---- Reidemeister moves --------------------------------------------------------

// Add a kink on an arc. chirality: writhe change. side_left: the loop bulges
// to the left of the arc's direction.
inline LinkDiagram reidemeister_1_add(const LinkDiagram& d, int arc, int chirality,
                                      bool side_left) {
  if (arc < 0 || arc >= d.arc_count()) throw MoveError("r1: no such arc");
  if (chirality != 1 && chirality != -1) throw MoveError("r1: chirality must be +-1");
  UBuilder b(d);
  std::vector<int> pieces = b.split(arc, 1);
  int p = pieces.front();
  int q = pieces.back();  // == p for a free loop
  int pe = 1, qe = 0;
  int g = b.new_arc();
  // strand passes W->E then loops; with the loop on the left the return
  // passage runs N->S (exit south), mirrored for the right side.
  // chirality +1 needs the return passage over for the left layout.
  int n_angle = side_left ? 90 : 270;
  int s_angle = side_left ? 270 : 90;
  bool return_over = side_left ? (chirality > 0) : (chirality < 0);
  b.add_crossing_compass({UBuilder::CompassEnd{180, p, pe, return_over},
                          UBuilder::CompassEnd{0, g, 0, return_over},
                          UBuilder::CompassEnd{n_angle, g, 1, !return_over},
                          UBuilder::CompassEnd{s_angle, q, qe, !return_over}});
  auto res = b.finalize();
  res.d.validate();
  if (res.d.total_writhe() != d.total_writhe() + chirality)
    throw std::logic_error("r1: writhe bookkeeping failed");
  return res.d;
}

inline LinkDiagram reidemeister_1_remove(const LinkDiagram& d, int crossing) {
  if (crossing < 0 || crossing >= d.crossing_count()) throw MoveError("r1: no such crossing");
  auto t = d.slot_table();
  bool kink = false;
  for (int s = 0; s < 4 && !kink; ++s) {
    int s2 = (s + 1) & 3;
    if (t[crossing][s].arc == t[crossing][s2].arc) kink = true;
  }
  if (!kink) throw MoveError("r1: crossing is not a kink");
  UBuilder b(d);
  b.kill_crossing_smoothly(crossing);
  auto res = b.finalize();
  res.d.validate();
  return res.d;
}

// Push arc x over (or under) arc y across a shared face.
inline LinkDiagram reidemeister_2_add(const LinkDiagram& d, int x, int y, bool x_over,
                                      bool from_left_of_y) {
  if (x < 0 || y < 0 || x >= d.arc_count() || y >= d.arc_count())
    throw MoveError("r2: no such arc");
  if (x == y) throw MoveError("r2: needs two distinct arcs");
  // face check (wildcards for free loops)
  if (!d.arcs[x].is_free_loop() && !d.arcs[y].is_free_loop()) {
    auto fd = d.face_data();
    int fy = from_left_of_y ? d.face_left_of(fd, y) : d.face_right_of(fd, y);
    if (d.face_left_of(fd, x) != fy && d.face_right_of(fd, x) != fy)
      throw MoveError("r2: arcs do not share the requested face");
  }
  // which prong of the finger meets the lower y-station: depends on whether
  // x runs with or against y along the shared face
  int rel = +1;
  if (!d.arcs[x].is_free_loop() && !d.arcs[y].is_free_loop()) {
    auto fd = d.face_data();
    int fy = from_left_of_y ? d.face_left_of(fd, y) : d.face_right_of(fd, y);
    bool y_dart_forward = !from_left_of_y;  // the face holds y's forward dart iff it is y's right
    bool x_dart_forward = d.face_right_of(fd, x) == fy;
    rel = (x_dart_forward != y_dart_forward) ? +1 : -1;
  }
  UBuilder b(d);
  detail::CutPlan plan;
  int cx = plan.request(x, 0, 0);
  int cy1 = plan.request(y, 0, 0);
  int cy2 = plan.request(y, 0, 1);
  plan.apply(b);
  const detail::CutPlan::Sides& sx = plan.at(cx);
  const detail::CutPlan::Sides& sy1 = plan.at(cy1);
  const detail::CutPlan::Sides& sy2 = plan.at(cy2);
  int tip = b.new_arc();
  int n_angle = from_left_of_y ? 90 : 270;
  int s_angle = from_left_of_y ? 270 : 90;
  std::pair<int, int> x_first{sx.before_arc, sx.before_end};
  std::pair<int, int> x_second{sx.after_arc, sx.after_end};
  if (rel < 0) std::swap(x_first, x_second);
  // finger: x_first -> (crossing at lower y station) -> tip -> (upper) -> x_second
  b.add_crossing_compass({UBuilder::CompassEnd{180, sy1.before_arc, sy1.before_end, x_over},
                          UBuilder::CompassEnd{0, sy1.after_arc, sy1.after_end, x_over},
                          UBuilder::CompassEnd{n_angle, x_first.first, x_first.second, !x_over},
                          UBuilder::CompassEnd{s_angle, tip, 0, !x_over}});
  b.add_crossing_compass({UBuilder::CompassEnd{180, sy2.before_arc, sy2.before_end, x_over},
                          UBuilder::CompassEnd{0, sy2.after_arc, sy2.after_end, x_over},
                          UBuilder::CompassEnd{s_angle, tip, 1, !x_over},
                          UBuilder::CompassEnd{n_angle, x_second.first, x_second.second, !x_over}});
  auto res = b.finalize();
  res.d.validate();
  return res.d;
}

inline LinkDiagram reidemeister_2_remove(const LinkDiagram& d, int c1, int c2) {
  if (c1 < 0 || c2 < 0 || c1 >= d.crossing_count() || c2 >= d.crossing_count() || c1 == c2)
    throw MoveError("r2: need two distinct crossings");
  auto t = d.slot_table();
  auto fd = d.face_data();
  // find the bigon face between c1 and c2
  int bigon = -1;
  int e = -1, f = -1;
  for (size_t fi = 0; fi < fd.faces.size(); ++fi) {
    if (fd.faces[fi].size() != 2) continue;
    int a0 = dart_arc(fd.faces[fi][0]);
    int a1 = dart_arc(fd.faces[fi][1]);
    std::set<int> cs;
    for (int a : {a0, a1}) {
      cs.insert(d.arcs[a].tail.crossing);
      cs.insert(d.arcs[a].head.crossing);
    }
    if (cs == std::set<int>{c1, c2}) {
      bigon = static_cast<int>(fi);
      e = a0;
      f = a1;
      break;
    }
  }
  if (bigon < 0) throw MoveError("r2: crossings do not bound a bigon");
  auto over_at = [&](int arc, int c) {
    const Arc& a = d.arcs[arc];
    int slot = a.tail.crossing == c ? a.tail.slot : a.head.slot;
    return slot == 1 || slot == 3;
  };
  bool e_over = over_at(e, c1) && over_at(e, c2);
  bool f_over = over_at(f, c1) && over_at(f, c2);
  if (!(e_over || f_over)) throw MoveError("r2: bigon strands interleave (clasp, not a bigon)");
  if (d.crossings[c1].sign == d.crossings[c2].sign)
    throw std::logic_error("r2: bigon with equal signs");
  UBuilder b(d);
  b.kill_crossing_smoothly(c1);
  b.kill_crossing_smoothly(c2);
  auto res = b.finalize();
  res.d.validate();
  return res.d;
}

// The third Reidemeister move on a triangular face. The strand crossing the
// other two consistently (over both or under both) slides across their
// crossing; the order in which the sliding strand meets the other two swaps.
inline LinkDiagram reidemeister_3(const LinkDiagram& d, int face) {
  auto fd = d.face_data();
  if (face < 0 || face >= static_cast<int>(fd.faces.size())) throw MoveError("r3: no such face");
  if (fd.faces[face].size() != 3) throw MoveError("r3: face is not a trigon");
  auto t = d.slot_table();
  std::array<int, 3> side{}, cr{};
  for (int i = 0; i < 3; ++i) side[i] = dart_arc(fd.faces[face][i]);
  if (side[0] == side[1] || side[1] == side[2] || side[0] == side[2])
    throw MoveError("r3: degenerate trigon");
  // the three crossings: shared endpoints of consecutive sides
  for (int i = 0; i < 3; ++i) {
    std::set<int> a{d.arcs[side[i]].tail.crossing, d.arcs[side[i]].head.crossing};
    std::set<int> b{d.arcs[side[(i + 1) % 3]].tail.crossing,
                    d.arcs[side[(i + 1) % 3]].head.crossing};
    std::vector<int> inter;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(inter));
    if (inter.size() != 1) throw MoveError("r3: trigon sides do not meet pairwise once");
    cr[i] = inter[0];  // crossing between side[i] and side[i+1]
  }
  auto slot_at = [&](int arc, int c) {
    const Arc& a = d.arcs[arc];
    if (a.tail.crossing == c && a.head.crossing == c)
      throw MoveError("r3: side arc loops at one crossing");
    return a.tail.crossing == c ? a.tail.slot : a.head.slot;
  };
  auto over_at = [&](int arc, int c) {
    int s = slot_at(arc, c);
    return s == 1 || s == 3;
  };
  // find the sliding side: over at both of its crossings or under at both.
  // side[i] meets crossings cr[(i+2)%3] and cr[i].
  int mi = -1;
  for (int i = 0; i < 3; ++i) {
    int ca = cr[(i + 2) % 3], cb = cr[i];
    if (over_at(side[i], ca) == over_at(side[i], cb)) { mi = i; break; }
  }
  if (mi < 0) throw MoveError("r3: no strand passes the other two consistently");
  int M = side[mi];
  int c1 = cr[(mi + 2) % 3];  // M with strand B
  int c2 = cr[mi];            // M with strand C
  int P = side[(mi + 2) % 3];  // B's trigon side, between c1 and c3
  int Q = side[(mi + 1) % 3];  // C's trigon side, between c3 and c2
  int c3 = cr[(mi + 1) % 3];   // B and C cross here

  // record everything about c1 and c2 before rewiring
  struct Rec {
    std::array<int, 4> arc;
    std::array<int, 4> is_head;  // 1 when the arc's head is at this slot
  };
  auto record = [&](int c) {
    Rec r;
    for (int s = 0; s < 4; ++s) {
      r.arc[s] = t[c][s].arc;
      r.is_head[s] = t[c][s].is_head ? 1 : 0;
    }
    return r;
  };
  Rec rec1 = record(c1), rec2 = record(c2);

  // strand B's far arc at c3: the continuation of P through c3
  int p_slot_c3 = slot_at(P, c3);
  int q_slot_c3 = slot_at(Q, c3);
  int b_far = t[c3][Crossing::continuation(p_slot_c3)].arc;
  int c_far = t[c3][Crossing::continuation(q_slot_c3)].arc;
  bool b_far_head_at_c3 = t[c3][Crossing::continuation(p_slot_c3)].is_head;
  bool c_far_head_at_c3 = t[c3][Crossing::continuation(q_slot_c3)].is_head;

  UBuilder b(d);
  // split the far arcs; identify the pieces nearest c3
  detail::CutPlan plan;
  int cutB = plan.request(b_far, 0, 0);
  int cutC = (c_far == b_far) ? plan.request(b_far, 0, 1) : plan.request(c_far, 0, 0);
  // when both far arcs coincide, orient the two cuts by which end is which:
  // cut order along the arc runs e0 -> e1; the B-side cut must be adjacent to
  // the end sitting at c3 on the B side.
  bool swap_cuts = false;
  if (c_far == b_far) {
    // b_far's end at c3 on B's side: head there iff b_far_head_at_c3
    // that end is e1 iff head. pieces: [e0 .. cut(sub0) .. cut(sub1) .. e1]
    // B's piece must touch its own c3 end.
    bool b_end_is_e1 = b_far_head_at_c3;  // head == e1 by arc conventions
    if (b_end_is_e1) swap_cuts = true;    // B's end is at the e1 side: use the later cut
  }
  plan.apply(b);
  const detail::CutPlan::Sides& sb = plan.at(swap_cuts ? cutC : cutB);
  const detail::CutPlan::Sides& sc = plan.at(swap_cuts ? cutB : cutC);
  auto near_piece = [&](const detail::CutPlan::Sides& s, int far_arc, bool head_at_c3,
                        bool use_after) -> std::pair<int, int> {
    // the piece adjacent to c3 keeps the original's c3 end: that end is e1
    // (head) on the before-piece chain only if the c3 end was the arc's e1.
    (void)far_arc;
    if (head_at_c3 != use_after) return {s.before_arc, s.before_end};
    return {s.after_arc, s.after_end};
  };
  // b_far's c3 end: if it is the arc's e1 (head), the c3-adjacent piece is the
  // last piece, i.e. the "after" side of the cut; otherwise the "before" side.
  auto [bn_arc, bn_end] = b_far_head_at_c3 ? std::pair<int, int>{sb.after_arc, sb.after_end}
                                           : std::pair<int, int>{sb.before_arc, sb.before_end};
  auto [bf_arc, bf_end] = b_far_head_at_c3 ? std::pair<int, int>{sb.before_arc, sb.before_end}
                                           : std::pair<int, int>{sb.after_arc, sb.after_end};
  auto [cn_arc, cn_end] = c_far_head_at_c3 ? std::pair<int, int>{sc.after_arc, sc.after_end}
                                           : std::pair<int, int>{sc.before_arc, sc.before_end};
  auto [cf_arc, cf_end] = c_far_head_at_c3 ? std::pair<int, int>{sc.before_arc, sc.before_end}
                                           : std::pair<int, int>{sc.after_arc, sc.after_end};

  auto h1 = b.unplug(c1);
  auto h2 = b.unplug(c2);
  // reconnect B through where c1 was, and C through where c2 was
  int p_slot_c1 = slot_at(P, c1);
  int q_slot_c2 = slot_at(Q, c2);
  {
    auto ph = h1[p_slot_c1];
    auto bh = h1[Crossing::continuation(p_slot_c1)];
    b.join(ph.arc, ph.which_end, bh.arc, bh.which_end);
    auto qh = h2[q_slot_c2];
    auto ch = h2[Crossing::continuation(q_slot_c2)];
    b.join(qh.arc, qh.which_end, ch.arc, ch.which_end);
  }
  int m_slot_c1 = slot_at(M, c1);
  int m_slot_c2 = slot_at(M, c2);
  int m_prime = b.new_arc();
  b.adopt_witnesses(m_prime, M, +1);
  b.discard_arc(M);

  // The sliding strand now meets the other two in the opposite order:
  // where it ran O1 -> c1 -> M -> c2 -> O2, it now runs through the new
  // crossings as O1 -> c2' -> M' -> c1' -> O2. Strand germ directions are
  // preserved, so each new crossing copies the old rotation with these
  // occupants: M's old slot takes the outer arc from the *other* crossing,
  // the outer slot takes M', and on the fixed strand the far piece takes the
  // trigon side's slot while the near piece (toward c3) takes the outer one.
  int o1_slot = Crossing::continuation(m_slot_c1);
  int o2_slot = Crossing::continuation(m_slot_c2);
  auto o1 = h1[o1_slot];
  auto o2 = h2[o2_slot];
  std::array<UBuilder::Corner, 4> k1{}, k2{};
  k1[p_slot_c1] = UBuilder::Corner{bf_arc, bf_end};
  k1[Crossing::continuation(p_slot_c1)] = UBuilder::Corner{bn_arc, bn_end};
  k1[m_slot_c1] = UBuilder::Corner{o2.arc, o2.which_end};
  k1[o1_slot] = UBuilder::Corner{m_prime, rec1.is_head[o1_slot]};
  k2[q_slot_c2] = UBuilder::Corner{cf_arc, cf_end};
  k2[Crossing::continuation(q_slot_c2)] = UBuilder::Corner{cn_arc, cn_end};
  k2[m_slot_c2] = UBuilder::Corner{o1.arc, o1.which_end};
  k2[o2_slot] = UBuilder::Corner{m_prime, rec2.is_head[o2_slot]};
  b.add_crossing_ccw(k1);
  b.add_crossing_ccw(k2);

  auto res = b.finalize();
  res.d.validate();
  return res.d;
}

// ---- strand rerouting, 1-handle slides ------------------------------------------

// Cut an arc and reroute the strand along a detour crossing the listed arcs.
// Not a link-preserving move by itself; used by the 1-handle slide and by
// diagram constructions.
inline LinkDiagram reroute_strand(const LinkDiagram& d, int arc, int station,
                                  const std::vector<BandEvent>& events) {
  if (arc < 0 || arc >= d.arc_count()) throw MoveError("reroute: no such arc");
  UBuilder b(d);
  detail::CutPlan plan;
  int cut = plan.request(arc, station, 0);
  std::vector<std::pair<int, int>> ev_cuts;
  for (const BandEvent& e : events) {
    if (e.arc < 0 || e.arc >= d.arc_count()) throw MoveError("reroute: event on missing arc");
    ev_cuts.push_back({plan.request(e.arc, e.station, 1), -1});
  }
  plan.apply(b);
  const detail::CutPlan::Sides& s0 = plan.at(cut);
  detail::EdgeCursor cur{s0.before_arc, s0.before_end};
  for (size_t i = 0; i < events.size(); ++i) {
    const BandEvent& e = events[i];
    const detail::CutPlan::Sides& cs = plan.at(ev_cuts[i].first);
    int fresh = b.new_arc();
    int in_angle = e.from_left ? 90 : 270;
    int out_angle = e.from_left ? 270 : 90;
    b.add_crossing_compass({UBuilder::CompassEnd{180, cs.before_arc, cs.before_end, e.over},
                            UBuilder::CompassEnd{0, cs.after_arc, cs.after_end, e.over},
                            UBuilder::CompassEnd{in_angle, cur.arc, cur.end, !e.over},
                            UBuilder::CompassEnd{out_angle, fresh, 0, !e.over}});
    cur = {fresh, 1};
  }
  b.join(s0.after_arc, s0.after_end, cur.arc, cur.end);
  auto res = b.finalize();
  res.d.validate();
  return res.d;
}

// Slide a strand under a 1-handle: reroute it through the dotted circle's
// spanning region. The detour passes under the dotted curve exactly twice
// with cancelling signs, so the homological data is untouched.
inline LinkDiagram slide_under_one_handle(const LinkDiagram& d, int moving_arc, int station,
                                          int dotted_comp, const std::vector<BandEvent>& events) {
  if (dotted_comp < 0 || dotted_comp >= d.component_count() || !d.comps[dotted_comp].dotted)
    throw MoveError("1-handle slide: component is not dotted");
  if (events.empty()) throw MoveError("1-handle slide: band not embedded (empty path)");
  int dotted_hits = 0;
  for (const BandEvent& e : events) {
    if (d.arcs[e.arc].comp == dotted_comp) {
      ++dotted_hits;
      if (e.over) throw MoveError("1-handle slide: strand must pass under the dotted circle");
    }
  }
  if (dotted_hits != 2)
    throw MoveError("1-handle slide: path must cross the dotted circle exactly twice");
  int moving_comp = d.arcs[moving_arc].comp;
  int lk_before = moving_comp == dotted_comp ? 0 : d.linking_number(moving_comp, dotted_comp);
  LinkDiagram nd;
  try {
    nd = reroute_strand(d, moving_arc, station, events);
  } catch (const DiagramError& e) {
    throw MoveError(std::string("1-handle slide: path crosses the spanning disk region "
                                "inconsistently (") + e.what() + ")");
  }
  // component indices are stable under rerouting (no merges or splits)
  if (moving_comp != dotted_comp && nd.linking_number(moving_comp, dotted_comp) != lk_before)
    throw MoveError("1-handle slide: path crosses the spanning disk inconsistently");
  return nd;
}

// ---- framed handleslide -----------------------------------------------------------

struct HandleslideResult {
  LinkDiagram d;
  std::vector<int> old_comp_to_new;
  int moved_comp = -1;  // component of the band sum in the new diagram
  int eps = 0;          // orientation compatibility used in the framing law
  long long new_framing = 0;
};

// Replace `moving` by its band sum with a framed parallel push-off of `over`.
// The push-off runs alongside `over` on the side from which the band arrives,
// with |n2 - writhe| correction twists so that lk(over, copy) = n2. The band
// must be untwisted and must end on an arc of `over`; its last leg is
// redirected onto the copy.
inline HandleslideResult handleslide(const LinkDiagram& d, int moving, int over,
                                     const Band& band) {
  if (moving < 0 || over < 0 || moving >= d.component_count() || over >= d.component_count())
    throw MoveError("handleslide: no such component");
  if (moving == over) throw MoveError("handleslide: cannot slide a component over itself");
  const ComponentDecor& dm = d.comps[moving];
  const ComponentDecor& dv = d.comps[over];
  if (dm.dotted || dv.dotted)
    throw MoveError("handleslide: dotted circles use the 1-handle slide");
  if (!dm.framing.is_integer() || !dv.framing.is_integer())
    throw MoveError("handleslide: both components need integer framings");
  if (dm.bracketed != dv.bracketed)
    throw MoveError("handleslide: bracketed and unbracketed components cannot slide");
  if (band.half_twists != 0) throw MoveError("handleslide: band must be untwisted");
  if (d.arcs[band.start_arc].comp != moving)
    throw MoveError("handleslide: band must start on the moving component");
  if (d.arcs[band.end_arc].comp != over)
    throw MoveError("handleslide: band must end on the component slid over");
  for (const BandEvent& e : band.path)
    if (e.arc == band.end_arc && e.station == band.end_station)
      throw MoveError("handleslide: band collides with its own attachment");

  for (const BandEvent& e : band.path)
    if (e.station < 0 || e.station >= (1 << 19))
      throw MoveError("handleslide: band stations must lie in [0, 2^19)");

  long long n1 = dm.framing.p, n2 = dv.framing.p;
  long long lk = d.linking_number(moving, over);
  long long twists = n2 - d.writhe(over);  // lk(over, blackboard parallel) = writhe

  // ---- stage 1: cable `over` with an unframed parallel copy -------------------
  bool copy_left = band.end_side_left;  // copy on the side the band arrives at
  auto t = d.slot_table();
  std::vector<int> order = d.component_arcs(over);
  // rotate the traversal to start at the band's end arc, so the twist region
  // and attachment segment sit on its parallel run
  {
    auto it = std::find(order.begin(), order.end(), band.end_arc);
    if (it == order.end()) throw MoveError("handleslide: band end not on the slid-over component");
    std::rotate(order.begin(), it, order.end());
  }
  std::set<int> over_arcs(order.begin(), order.end());

  UBuilder b(d);
  detail::CutPlan plan;
  const int kTail = -(1 << 21), kHead = (1 << 21), kTwist = 1 << 20;

  auto side_slot_of = [&](int s_in) { return copy_left ? (s_in + 3) & 3 : (s_in + 1) & 3; };
  auto request_adjacent_cut = [&](int c, int slot) {
    int arc = t[c][slot].arc;
    bool head_there = t[c][slot].is_head;
    return plan.request(arc, head_there ? kHead : kTail, c);
  };

  // pass A: collect cuts
  std::map<std::pair<int, int>, int> adj_cut;     // (crossing, slot) -> cut id
  std::vector<int> twist_cuts;
  std::set<int> visited_cross;
  for (int a : order) {
    if (a == band.end_arc)
      for (int k = 0; k < 2 * std::abs(static_cast<int>(twists)); ++k)
        twist_cuts.push_back(plan.request(band.end_arc, kTwist + k, 0));
    const SlotRef& h = d.arcs[a].head;
    if (!h.valid()) continue;
    int c = h.crossing;
    int s_in = h.slot;
    int other_under = t[c][0].arc;
    int other_over = t[c][d.crossings[c].over_in_slot()].arc;
    bool self = d.arcs[other_under].comp == over && d.arcs[other_over].comp == over;
    if (!self) {
      int ss = side_slot_of(s_in);
      if (!adj_cut.count({c, ss})) adj_cut[{c, ss}] = request_adjacent_cut(c, ss);
    } else if (!visited_cross.count(c)) {
      visited_cross.insert(c);
      // both passages: cut each passage's side arc on the other's copy side
      int sB_in = -1;
      for (int s = 0; s < 4; ++s)
        if (s != s_in && t[c][s].is_head) sB_in = s;
      if (sB_in < 0) throw MoveError("handleslide: bad self-crossing");
      int ssA = side_slot_of(s_in);   // Q's arc on P's copy side
      int ssB = side_slot_of(sB_in);  // P's arc on Q's copy side
      if (!adj_cut.count({c, ssA})) adj_cut[{c, ssA}] = request_adjacent_cut(c, ssA);
      if (!adj_cut.count({c, ssB})) adj_cut[{c, ssB}] = request_adjacent_cut(c, ssB);
    }
  }
  plan.apply(b);

  auto near_far = [&](int c, int slot) {
    const detail::CutPlan::Sides& s = plan.at(adj_cut.at({c, slot}));
    bool head_there = t[c][slot].is_head;
    std::pair<int, int> near = head_there ? std::pair{s.after_arc, s.after_end}
                                          : std::pair{s.before_arc, s.before_end};
    std::pair<int, int> far = head_there ? std::pair{s.before_arc, s.before_end}
                                         : std::pair{s.after_arc, s.after_end};
    return std::pair{near, far};
  };

  // pass B: build the chain
  int chain_start = b.new_arc();
  detail::EdgeCursor cur{chain_start, 1};
  int copy_attach_builder = -1;
  struct Pending {
    int pre_arc, post_arc;
  };
  std::map<int, Pending> pending;  // self-crossing second-passage hookup
  visited_cross.clear();

  auto angle_of = [&](int slot) { return slot * 90; };

  for (int a : order) {
    if (a == band.end_arc) {
      copy_attach_builder = cur.arc;
      // twist region: the copy weaves across the attachment arc
      for (size_t k = 0; k < twist_cuts.size(); ++k) {
        const detail::CutPlan::Sides& cs = plan.at(twist_cuts[k]);
        bool from_left = (k % 2 == 0) ? copy_left : !copy_left;
        bool cross_over = (from_left == (twists > 0));
        int fresh = b.new_arc();
        int in_angle = from_left ? 90 : 270;
        int out_angle = from_left ? 270 : 90;
        b.add_crossing_compass(
            {UBuilder::CompassEnd{180, cs.before_arc, cs.before_end, cross_over},
             UBuilder::CompassEnd{0, cs.after_arc, cs.after_end, cross_over},
             UBuilder::CompassEnd{in_angle, cur.arc, cur.end, !cross_over},
             UBuilder::CompassEnd{out_angle, fresh, 0, !cross_over}});
        cur = {fresh, 1};
      }
    }
    const SlotRef& h = d.arcs[a].head;
    if (!h.valid()) continue;
    int c = h.crossing;
    int s_in = h.slot;
    int s_out = Crossing::continuation(s_in);
    bool passage_over = (s_in != 0);
    int other_under = t[c][0].arc;
    int other_over = t[c][d.crossings[c].over_in_slot()].arc;
    bool self = d.arcs[other_under].comp == over && d.arcs[other_over].comp == over;
    if (!self) {
      int ss = side_slot_of(s_in);
      auto [near, far] = near_far(c, ss);
      int fresh = b.new_arc();
      b.add_crossing_compass(
          {UBuilder::CompassEnd{angle_of(s_in), cur.arc, cur.end, !passage_over},
           UBuilder::CompassEnd{angle_of(s_out), fresh, 0, !passage_over},
           UBuilder::CompassEnd{angle_of(Crossing::continuation(ss)), near.first, near.second,
                                passage_over},
           UBuilder::CompassEnd{angle_of(ss), far.first, far.second, passage_over}});
      cur = {fresh, 1};
    } else if (!pending.count(c)) {
      // first passage P through a self-crossing; Q is the other passage
      int sQ_in = -1;
      for (int s = 0; s < 4; ++s)
        if (s != s_in && t[c][s].is_head) sQ_in = s;
      int sQ_out = Crossing::continuation(sQ_in);
      bool q_over = (sQ_in != 0);
      int ssP = side_slot_of(s_in);   // Q's side arc crossed by P's copy
      int ssQ = side_slot_of(sQ_in);  // P's side arc crossed by Q's copy
      auto [qnear, qfar] = near_far(c, ssP);
      auto [pnear, pfar] = near_far(c, ssQ);
      // order of P-chain crossings: with Q at offset 0 and Q' offset toward
      // ssQ's compass direction; Q' comes second iff ssQ == s_out.
      bool q_copy_downstream_of_p = (ssQ == s_out);
      // order of Q-chain crossings: P' offset toward ssP; second iff ssP == sQ_out
      bool p_copy_downstream_of_q = (ssP == sQ_out);
      int q_pre = b.new_arc(), q_mid = b.new_arc(), q_post = b.new_arc();
      int p_mid = b.new_arc(), p_done = b.new_arc();
      // (P', Q): P-copy crosses original Q's side arc
      auto cross_PpQ = [&](detail::EdgeCursor in, int out_arc) {
        b.add_crossing_compass(
            {UBuilder::CompassEnd{angle_of(s_in), in.arc, in.end, !passage_over},
             UBuilder::CompassEnd{angle_of(s_out), out_arc, 0, !passage_over},
             UBuilder::CompassEnd{angle_of(Crossing::continuation(ssP)), qnear.first,
                                  qnear.second, passage_over},
             UBuilder::CompassEnd{angle_of(ssP), qfar.first, qfar.second, passage_over}});
      };
      // (P, Q'): Q-copy crosses original P's side arc
      auto cross_PQp = [&](int in_arc, int in_end, int out_arc) {
        b.add_crossing_compass(
            {UBuilder::CompassEnd{angle_of(sQ_in), in_arc, in_end, !q_over},
             UBuilder::CompassEnd{angle_of(sQ_out), out_arc, 0, !q_over},
             UBuilder::CompassEnd{angle_of(Crossing::continuation(ssQ)), pnear.first,
                                  pnear.second, q_over},
             UBuilder::CompassEnd{angle_of(ssQ), pfar.first, pfar.second, q_over}});
      };
      // (P', Q'): both copies cross; Q' passes over iff Q passes over P
      auto cross_PpQp = [&](detail::EdgeCursor p_in, int p_out, int q_in_arc, int q_in_end,
                            int q_out) {
        b.add_crossing_compass(
            {UBuilder::CompassEnd{angle_of(s_in), p_in.arc, p_in.end, !passage_over},
             UBuilder::CompassEnd{angle_of(s_out), p_out, 0, !passage_over},
             UBuilder::CompassEnd{angle_of(sQ_in), q_in_arc, q_in_end, passage_over},
             UBuilder::CompassEnd{angle_of(sQ_out), q_out, 0, passage_over}});
      };
      if (q_copy_downstream_of_p) {
        // P-chain: (P',Q) then (P',Q')
        cross_PpQ(cur, p_mid);
        if (p_copy_downstream_of_q) {
          // Q-chain: (P,Q') then (P',Q')
          cross_PQp(q_pre, 1, q_mid);
          cross_PpQp({p_mid, 1}, p_done, q_mid, 1, q_post);
          pending[c] = {q_pre, q_post};
        } else {
          // Q-chain: (P',Q') then (P,Q')
          cross_PpQp({p_mid, 1}, p_done, q_pre, 1, q_mid);
          cross_PQp(q_mid, 1, q_post);
          pending[c] = {q_pre, q_post};
        }
      } else {
        // P-chain: (P',Q') then (P',Q)
        if (p_copy_downstream_of_q) {
          cross_PQp(q_pre, 1, q_mid);
          cross_PpQp(cur, p_mid, q_mid, 1, q_post);
        } else {
          cross_PpQp(cur, p_mid, q_pre, 1, q_mid);
          cross_PQp(q_mid, 1, q_post);
        }
        cross_PpQ({p_mid, 1}, p_done);
        pending[c] = {q_pre, q_post};
      }
      cur = {p_done, 1};
    } else {
      // second passage through the self-crossing: splice into the prepared arcs
      Pending pn = pending.at(c);
      b.join(pn.pre_arc, 0, cur.arc, cur.end);
      cur = {pn.post_arc, 1};
    }
  }
  b.join(chain_start, 0, cur.arc, cur.end);
  if (copy_attach_builder < 0) throw MoveError("handleslide: copy attachment segment not found");

  int copy_attach_live = b.live_arc(copy_attach_builder);
  auto cable = b.finalize();
  cable.d.validate();

  // translate the user band onto the cabled diagram: all cable-internal cuts
  // sit outside the user station range, so each user point maps into the
  // piece covering its station
  auto user_piece = [&](int orig_arc, int station) {
    int piece = plan.piece_at(orig_arc, station);
    int fin = cable.arc_to_new[piece];
    if (fin < 0) throw MoveError("handleslide: band arc vanished while cabling");
    return fin;
  };

  Band tband;
  tband.start_arc = user_piece(band.start_arc, band.start_station);
  tband.start_station = band.start_station;
  tband.start_side_left = band.start_side_left;
  tband.end_arc = cable.arc_to_new[copy_attach_live];
  tband.end_station = 0;
  tband.end_side_left = band.end_side_left;
  tband.half_twists = 0;
  for (const BandEvent& e : band.path) {
    BandEvent te = e;
    te.arc = user_piece(e.arc, e.station);
    tband.path.push_back(te);
  }

  BandSurgeryResult surg = band_surgery(cable.d, tband);

  HandleslideResult res;
  res.eps = surg.eps;
  res.new_framing = n1 + n2 + 2 * surg.eps * lk;
  if (surg.result_comps.size() != 1)
    throw MoveError("handleslide: band sum did not produce a single component");
  res.moved_comp = surg.result_comps[0];
  res.d = std::move(surg.d);
  res.d.comps[res.moved_comp].framing = Framing::integer(res.new_framing);
  res.d.comps[res.moved_comp].bracketed = dm.bracketed;
  res.d.comps[res.moved_comp].dotted = false;
  // old-to-new through both stages
  res.old_comp_to_new.assign(d.component_count(), -1);
  for (int k = 0; k < d.component_count(); ++k) {
    int mid = cable.old_comp_to_new[k];
    if (mid >= 0) res.old_comp_to_new[k] = surg.old_comp_to_new[mid];
  }
  res.d.validate();
  return res;
}

// ---- slam-dunk ----------------------------------------------------------------

struct SlamDunkResult {
  LinkDiagram d;
  std::vector<int> old_comp_to_new;
  bool target_deleted = false;
  Framing new_target_slope;
};

// Remove a bracketed meridian, updating the target slope by
//   s' = r_meridian - 1/s_target      (1/0 = infinity)
// with infinity meaning "delete the component". Worked example: on the
// <1,0>-chain (1-framed circle with a 0-framed meridian), dunking the
// 1-framed circle gives s' = 1 - 1/0 = infinity, so both components vanish
// and the empty diagram presents the 3-sphere. An infinity-framed meridian
// (slope 1/0) is trivial surgery: it is deleted and the target is untouched.
inline SlamDunkResult slam_dunk(const LinkDiagram& d, int meridian, int target) {
  if (meridian < 0 || target < 0 || meridian >= d.component_count() ||
      target >= d.component_count() || meridian == target)
    throw MoveError("slam-dunk: need two distinct components");
  const ComponentDecor& dm = d.comps[meridian];
  const ComponentDecor& dt = d.comps[target];
  if (!dm.bracketed || !dt.bracketed)
    throw MoveError("slam-dunk: decorations not bracketed");
  if (!d.component_is_simple_closed(meridian))
    throw MoveError("slam-dunk: meridian has self-crossings");
  for (int k = 0; k < d.component_count(); ++k) {
    if (k == meridian) continue;
    int expect = (k == target) ? 2 : 0;
    if (d.crossings_between(meridian, k) != expect)
      throw MoveError("slam-dunk: meridian disk is not punctured once by the target only");
  }
  if (std::abs(d.linking_number(meridian, target)) != 1)
    throw MoveError("slam-dunk: meridian disk is not punctured once by the target only");

  SlamDunkResult res;
  bool meridian_infinite = dm.framing.q == 0;
  std::set<int> gone{meridian};
  if (meridian_infinite) {
    res.new_target_slope = dt.framing;
  } else {
    // s' = r - 1/s = (rp*sp - rq*sq) / (rq*sp)
    long long rp = dm.framing.p, rq = dm.framing.q;
    long long sp = dt.framing.p, sq = dt.framing.q;
    long long np = rp * sp - rq * sq;
    long long nq = rq * sp;
    if (nq == 0) {
      res.target_deleted = true;
      gone.insert(target);
    } else {
      res.new_target_slope = Framing::rational(np, nq);
    }
  }
  LinkDiagram nd = d.without_components(gone);
  // component indices after deletion
  res.old_comp_to_new.assign(d.component_count(), -1);
  int next = 0;
  for (int k = 0; k < d.component_count(); ++k)
    if (!gone.count(k)) res.old_comp_to_new[k] = next++;
  if (!res.target_deleted) {
    int nt = res.old_comp_to_new[target];
    nd.comps[nt].framing = res.new_target_slope;
  }
  nd.validate();
  res.d = std::move(nd);
  return res;
}

// ---- Hopf pair cancellation ------------------------------------------------------

struct CancelHopfResult {
  LinkDiagram d;
  std::vector<int> old_comp_to_new;
  bool split_verified = false;
};

// Cancel a dotted circle against a 2-handle whose attaching circle pierces
// the dotted spanning disk exactly once: both components crossingless
// against themselves, meeting in exactly two crossings where each strand
// passes over once (so the algebraic and geometric puncture counts agree).
inline CancelHopfResult cancel_hopf_pair(const LinkDiagram& d, int dotted, int handle2,
                                         bool assert_split = false) {
  if (dotted < 0 || handle2 < 0 || dotted >= d.component_count() ||
      handle2 >= d.component_count() || dotted == handle2)
    throw MoveError("hopf cancel: need two distinct components");
  if (!d.comps[dotted].dotted) throw MoveError("hopf cancel: first component must be dotted");
  if (d.comps[handle2].dotted || !d.comps[handle2].framing.is_integer())
    throw MoveError("hopf cancel: second component must be an integer-framed handle");
  if (!d.component_is_simple_closed(dotted) || !d.component_is_simple_closed(handle2))
    throw MoveError("hopf cancel: components must be embedded circles in the diagram");
  if (d.crossings_between(dotted, handle2) != 2 ||
      std::abs(d.linking_number(dotted, handle2)) != 1)
    throw MoveError("hopf cancel: intersection count != 1");
  CancelHopfResult res;
  res.split_verified = true;
  for (int k = 0; k < d.component_count() && res.split_verified; ++k) {
    if (k == dotted || k == handle2) continue;
    if (d.crossings_between(dotted, k) != 0 || d.crossings_between(handle2, k) != 0)
      res.split_verified = false;
  }
  if (!res.split_verified && !assert_split)
    throw MoveError("hopf cancel: pair is not split from the rest (pass assert_split to trust)");
  std::set<int> gone{dotted, handle2};
  LinkDiagram nd = d.without_components(gone);
  res.old_comp_to_new.assign(d.component_count(), -1);
  int next = 0;
  for (int k = 0; k < d.component_count(); ++k)
    if (!gone.count(k)) res.old_comp_to_new[k] = next++;
  nd.validate();
  res.d = std::move(nd);
  return res;
}

// ---- ribbon move -----------------------------------------------------------------

struct RibbonMoveResult {
  LinkDiagram d;
  std::vector<int> old_comp_to_new;
  std::vector<int> result_comps;
  bool verified = false;  // trivial flat bands are verified; the rest is asserted
};

// Band surgery on dotted components: splitting one dotted circle into two
// (undoing a fusion of the carved ribbon disk) or fusing two dotted circles.
// Only the flat, eventless band is a verified local pattern; everything else
// replays as an asserted step.
inline RibbonMoveResult ribbon_move(const LinkDiagram& d, int dotted_comp, const Band& band) {
  if (dotted_comp < 0 || dotted_comp >= d.component_count() || !d.comps[dotted_comp].dotted)
    throw MoveError("ribbon move: component is not dotted");
  int k1 = d.arcs[band.start_arc].comp;
  int k2 = d.arcs[band.end_arc].comp;
  if (k1 != dotted_comp && k2 != dotted_comp)
    throw MoveError("ribbon move: band does not touch the dotted component");
  if (!d.comps[k1].dotted || !d.comps[k2].dotted)
    throw MoveError("ribbon move: both band ends must lie on dotted circles");
  BandSurgeryResult surg = band_surgery(d, band);
  RibbonMoveResult res;
  res.old_comp_to_new = surg.old_comp_to_new;
  res.result_comps = surg.result_comps;
  res.verified = band.path.empty() && band.half_twists == 0;
  for (int k : res.result_comps) {
    surg.d.comps[k] = ComponentDecor{};
    surg.d.comps[k].dotted = true;
  }
  surg.d.validate();
  res.d = std::move(surg.d);
  return res;
}

}  // namespace kirbycalc
