#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "kirbycalc/build.hpp"
#include "kirbycalc/homology.hpp"
#include "kirbycalc/moves.hpp"
#include "kirbycalc/pd_io.hpp"

using namespace kirbycalc;

namespace {

LinkDiagram right_trefoil() { return braid_closure(2, braid_word({1, 1, 1})); }
LinkDiagram hopf_positive() { return braid_closure(2, braid_word({1, 1})); }

ComponentDecor surgery(long long p, long long q = 1) {
  return ComponentDecor{Framing::rational(p, q), false, true};
}

std::vector<std::vector<int>> linking_matrix(const LinkDiagram& d) {
  int n = d.component_count();
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) m[i][j] = d.linking_number(i, j);
  return m;
}

}  // namespace

TEST_CASE("r1 add and remove invert each other") {
  LinkDiagram u = unknot_loop();
  for (int chi : {1, -1}) {
    for (bool left : {true, false}) {
      LinkDiagram k = reidemeister_1_add(u, 0, chi, left);
      CHECK(k.crossing_count() == 1);
      CHECK(k.component_count() == 1);
      CHECK(k.writhe(0) == chi);
      LinkDiagram back = reidemeister_1_remove(k, 0);
      CHECK(diagrams_isomorphic(back, u));
    }
  }
  // kinks on a trefoil arc
  LinkDiagram t = right_trefoil();
  LinkDiagram tk = reidemeister_1_add(t, 2, -1, true);
  CHECK(tk.crossing_count() == 4);
  CHECK(tk.writhe(0) == 2);
  int kink = -1;
  auto st = tk.slot_table();
  for (int c = 0; c < tk.crossing_count() && kink < 0; ++c)
    for (int s = 0; s < 4 && kink < 0; ++s)
      if (st[c][s].arc == st[c][(s + 1) & 3].arc) kink = c;
  REQUIRE(kink >= 0);
  CHECK(diagrams_isomorphic(reidemeister_1_remove(tk, kink), t));
  CHECK_THROWS_AS(reidemeister_1_remove(t, 0), MoveError);
}

TEST_CASE("r2 add and remove invert each other") {
  LinkDiagram two = disjoint_union(unknot_loop(), unknot_loop());
  for (bool x_over : {true, false}) {
    for (bool from_left : {true, false}) {
      LinkDiagram pushed = reidemeister_2_add(two, 0, 1, x_over, from_left);
      CHECK(pushed.crossing_count() == 2);
      CHECK(pushed.component_count() == 2);
      CHECK(pushed.linking_number(0, 1) == 0);
      CHECK(diagrams_isomorphic(reidemeister_2_remove(pushed, 0, 1), two));
    }
  }
  // R2 on arcs of a knot
  LinkDiagram t = right_trefoil();
  auto fd = t.face_data();
  // find two distinct arcs sharing a face
  int ax = -1, ay = -1;
  for (int a = 0; a < t.arc_count() && ax < 0; ++a)
    for (int b2 = 0; b2 < t.arc_count() && ax < 0; ++b2) {
      if (a == b2) continue;
      if (t.face_right_of(fd, a) == t.face_left_of(fd, b2)) { ax = a; ay = b2; }
    }
  REQUIRE(ax >= 0);
  LinkDiagram pushed = reidemeister_2_add(t, ax, ay, true, true);
  CHECK(pushed.crossing_count() == 5);
  CHECK(pushed.writhe(0) == 3);
  // hopf link is a clasp: no bigon to remove
  LinkDiagram h = hopf_positive();
  CHECK_THROWS_AS(reidemeister_2_remove(h, 0, 1), MoveError);
}

TEST_CASE("r3 preserves planarity, linking and component count") {
  // Build a diagram with a trigon: push a strand over a crossing region.
  // The braid closure of [1, 2] on 3 strands has a trigon face.
  LinkDiagram d = braid_closure(3, braid_word({1, 2, 1, 2, 1, 2}));  // borromean-ish, 2 comps?
  d = braid_closure(3, braid_word({1, 2, 1}));
  auto fd = d.face_data();
  int trigon = -1;
  for (size_t f = 0; f < fd.faces.size(); ++f) {
    if (fd.faces[f].size() != 3) continue;
    std::set<int> arcs;
    for (int dart : fd.faces[f]) arcs.insert(dart_arc(dart));
    if (arcs.size() == 3) {
      try {
        reidemeister_3(d, static_cast<int>(f));
        trigon = static_cast<int>(f);
        break;
      } catch (const MoveError&) {
      }
    }
  }
  REQUIRE(trigon >= 0);
  LinkDiagram moved = reidemeister_3(d, trigon);
  moved.validate();
  CHECK(moved.crossing_count() == d.crossing_count());
  CHECK(moved.component_count() == d.component_count());
  CHECK(moved.total_writhe() == d.total_writhe());
  CHECK_FALSE(serialize_diagram(moved) == serialize_diagram(d));
}

TEST_CASE("band surgery splits and fuses") {
  // banding a 2-component crossingless unlink with a flat band -> unknot
  LinkDiagram two = disjoint_union(unknot_loop(), unknot_loop());
  Band flat;
  flat.start_arc = 0;
  flat.end_arc = 1;
  BandSurgeryResult fused = band_surgery(two, flat);
  CHECK(fused.d.component_count() == 1);
  CHECK(fused.d.crossing_count() == 0);
  CHECK(diagrams_isomorphic(fused.d, unknot_loop()));
  // splitting it again with the dual
  REQUIRE(fused.has_dual);
  BandSurgeryResult split = band_surgery(fused.d, fused.dual);
  CHECK(split.d.component_count() == 2);
  CHECK(diagrams_isomorphic(split.d, two));
}

TEST_CASE("band surgery with a twisted band makes a kinked knot") {
  LinkDiagram two = disjoint_union(unknot_loop(), unknot_loop());
  Band b;
  b.start_arc = 0;
  b.end_arc = 1;
  b.half_twists = 2;
  BandSurgeryResult r = band_surgery(two, b);
  CHECK(r.d.component_count() == 1);
  CHECK(r.d.crossing_count() == 2);
  r.d.validate();
}

TEST_CASE("band surgery dual returns the original after simplification") {
  // knot case: split the trefoil along a flat band, then refuse it
  LinkDiagram t = right_trefoil();
  Band b;
  b.start_arc = 0;
  b.end_arc = 0;
  b.start_station = 0;
  b.end_station = 1;
  BandSurgeryResult r = band_surgery(t, b);
  CHECK(r.d.component_count() == 2);
  REQUIRE(r.has_dual);
  BandSurgeryResult back = band_surgery(r.d, r.dual);
  CHECK(back.d.component_count() == 1);
  CHECK(diagrams_isomorphic(back.d, t));
}

TEST_CASE("band surgery framing policy") {
  LinkDiagram two = disjoint_union(unknot_loop(surgery(3)), unknot_loop(surgery(3)));
  Band flat;
  flat.start_arc = 0;
  flat.end_arc = 1;
  BandSurgeryResult r = band_surgery(two, flat);
  REQUIRE(r.result_comps.size() == 1);
  const Framing& f = r.d.comps[r.result_comps[0]].framing;
  CHECK(f.is_integer());
  CHECK(f.p == 6);  // 3 + 3 + 2*eps*0
  // unequal framings: dropped
  LinkDiagram uneq = disjoint_union(unknot_loop(surgery(3)), unknot_loop(surgery(4)));
  BandSurgeryResult r2 = band_surgery(uneq, flat);
  CHECK_FALSE(r2.d.comps[r2.result_comps[0]].framing.present);
}

TEST_CASE("handleslide over a split 0-framed unknot keeps the framing") {
  // n1=7 circle slides over split 0-framed circle: framing 7 + 0 +- 0 = 7
  LinkDiagram d = disjoint_union(unknot_loop(surgery(7)), unknot_loop(surgery(0)));
  Band b;
  b.start_arc = 0;
  b.end_arc = 1;
  HandleslideResult r = handleslide(d, 0, 1, b);
  CHECK(r.new_framing == 7);
  CHECK(r.d.component_count() == 2);
  CHECK(r.d.comps[r.moved_comp].framing.p == 7);
  // the other component is untouched
  int over_new = r.old_comp_to_new[1];
  REQUIRE(over_new >= 0);
  CHECK(r.d.comps[over_new].framing.p == 0);
  CHECK(r.d.linking_number(r.moved_comp, over_new) == 0);
}

TEST_CASE("handleslide framing law on a hopf pair") {
  // n1=1, n2=0, lk=1: coherent band gives 1+0+2 = 3, reversed gives -1
  LinkDiagram h = hopf_positive();
  h.comps[0] = surgery(1);
  h.comps[1] = surgery(0);
  auto fd = h.face_data();
  // find arcs of comps 0,1 sharing a face to run a short band
  int a0 = -1, a1 = -1;
  bool s0 = true, s1 = true;
  for (int x = 0; x < h.arc_count() && a0 < 0; ++x)
    for (int y = 0; y < h.arc_count() && a0 < 0; ++y) {
      if (h.arcs[x].comp != 0 || h.arcs[y].comp != 1) continue;
      for (bool sl : {true, false})
        for (bool el : {true, false}) {
          int fx = sl ? h.face_left_of(fd, x) : h.face_right_of(fd, x);
          int fy = el ? h.face_left_of(fd, y) : h.face_right_of(fd, y);
          if (fx == fy) { a0 = x; a1 = y; s0 = sl; s1 = el; }
        }
    }
  REQUIRE(a0 >= 0);
  Band b;
  b.start_arc = a0;
  b.start_side_left = s0;
  b.end_arc = a1;
  b.end_side_left = s1;
  HandleslideResult r = handleslide(h, 0, 1, b);
  long long lk01 = 1;
  CHECK(r.new_framing == 1 + 0 + 2 * r.eps * lk01);
  // verify the law against the output diagram: lk(moved, over') = lk +- n2
  int over_new = r.old_comp_to_new[1];
  CHECK(r.d.linking_number(r.moved_comp, over_new) == lk01 + r.eps * 0);
  r.d.validate();
}

TEST_CASE("handleslide lk transformation law with a third component") {
  // chain B - R - G, slide B over G? they are unlinked; slide B over R:
  // lk(B', G) = lk(B,G) + eps*lk(R,G)
  LinkDiagram chain = braid_closure(3, braid_word({1, 1, 2, 2}));
  int mid = -1;
  for (int k = 0; k < 3; ++k) {
    int links = 0;
    for (int j = 0; j < 3; ++j)
      if (j != k && chain.linking_number(k, j) != 0) ++links;
    if (links == 2) mid = k;
  }
  REQUIRE(mid >= 0);
  int bcomp = (mid + 1) % 3, gcomp = (mid + 2) % 3;
  for (int k = 0; k < 3; ++k) chain.comps[k] = surgery(k == mid ? 1 : 0);
  auto fd = chain.face_data();
  int a0 = -1, a1 = -1;
  bool s0 = true, s1 = true;
  for (int x = 0; x < chain.arc_count() && a0 < 0; ++x)
    for (int y = 0; y < chain.arc_count() && a0 < 0; ++y) {
      if (chain.arcs[x].comp != bcomp || chain.arcs[y].comp != mid) continue;
      for (bool sl : {true, false})
        for (bool el : {true, false}) {
          int fx = sl ? chain.face_left_of(fd, x) : chain.face_right_of(fd, x);
          int fy = el ? chain.face_left_of(fd, y) : chain.face_right_of(fd, y);
          if (fx == fy) { a0 = x; a1 = y; s0 = sl; s1 = el; }
        }
    }
  REQUIRE(a0 >= 0);
  Band b;
  b.start_arc = a0;
  b.start_side_left = s0;
  b.end_arc = a1;
  b.end_side_left = s1;
  long long lk_bg = chain.linking_number(bcomp, gcomp);
  long long lk_rg = chain.linking_number(mid, gcomp);
  long long lk_br = chain.linking_number(bcomp, mid);
  HandleslideResult r = handleslide(chain, bcomp, mid, b);
  CHECK(r.new_framing == 0 + 1 + 2 * r.eps * lk_br);
  int g_new = r.old_comp_to_new[gcomp];
  int r_new = r.old_comp_to_new[mid];
  REQUIRE(g_new >= 0);
  CHECK(r.d.linking_number(r.moved_comp, g_new) == lk_bg + r.eps * lk_rg);
  // H1 of the surgered manifold is invariant under handleslides
  CHECK(h1_of_surgery(chain) == h1_of_surgery(r.d));
  (void)r_new;
}

TEST_CASE("slam dunk conventions") {
  // <1,0>-chain: dunking the 1-framed circle deletes both components
  LinkDiagram h = hopf_positive();
  h.comps[0] = surgery(1);
  h.comps[1] = surgery(0);
  SlamDunkResult r = slam_dunk(h, 0, 1);
  CHECK(r.target_deleted);
  CHECK(r.d.component_count() == 0);
  CHECK(r.d.crossing_count() == 0);
  // dunking the 0-framed meridian instead: target becomes <, -1>? s' = 0 - 1/1 = -1
  SlamDunkResult r2 = slam_dunk(h, 1, 0);
  CHECK_FALSE(r2.target_deleted);
  REQUIRE(r2.d.component_count() == 1);
  CHECK(r2.d.comps[0].framing == Framing::integer(-1));
  // H1 invariance: <1,0> chain was S^3 (trivial), <-1> unknot is S^3 too
  CHECK(h1_of_surgery(r2.d).is_trivial());
  // infinity meridian: deleted, target unchanged
  LinkDiagram hi = hopf_positive();
  hi.comps[0] = ComponentDecor{Framing::infinity(), false, true};
  hi.comps[1] = surgery(5);
  SlamDunkResult r3 = slam_dunk(hi, 0, 1);
  CHECK_FALSE(r3.target_deleted);
  CHECK(r3.d.comps[0].framing == Framing::integer(5));
  // meridian pierced twice is rejected
  LinkDiagram bad = braid_closure(2, braid_word({1, 1, 1, 1}));
  bad.comps[0] = surgery(1);
  bad.comps[1] = surgery(0);
  CHECK_THROWS_AS(slam_dunk(bad, 0, 1), MoveError);
  // rational slope: meridian r=3/2 on target s=1: s' = 3/2 - 1 = 1/2
  LinkDiagram hr = hopf_positive();
  hr.comps[0] = ComponentDecor{Framing::rational(3, 2), false, true};
  hr.comps[1] = surgery(1);
  SlamDunkResult r4 = slam_dunk(hr, 0, 1);
  CHECK(r4.d.comps[0].framing == Framing::rational(1, 2));
}

TEST_CASE("slam dunk preserves h1") {
  // <n, 0> chains all present S^3
  for (long long n : {-3, 2, 7}) {
    LinkDiagram h = hopf_positive();
    h.comps[0] = surgery(n);
    h.comps[1] = surgery(0);
    AbelianInvariants before = h1_of_surgery(h);
    SlamDunkResult r = slam_dunk(h, 0, 1);
    AbelianInvariants after = r.d.component_count() ? h1_of_surgery(r.d) : AbelianInvariants{};
    CHECK(before == after);
  }
}

TEST_CASE("cancel hopf pair") {
  LinkDiagram h = hopf_positive();
  h.comps[0] = ComponentDecor{Framing::none(), true, false};  // dotted
  h.comps[1] = ComponentDecor{Framing::integer(0), false, false};
  LinkDiagram big = disjoint_union(h, right_trefoil());
  CancelHopfResult r = cancel_hopf_pair(big, 0, 1);
  CHECK(r.split_verified);
  CHECK(diagrams_isomorphic(r.d, right_trefoil()));
  // pierced twice: error
  LinkDiagram bad = braid_closure(2, braid_word({1, 1, 1, 1}));
  bad.comps[0] = ComponentDecor{Framing::none(), true, false};
  bad.comps[1] = ComponentDecor{Framing::integer(0), false, false};
  CHECK_THROWS_AS(cancel_hopf_pair(bad, 0, 1), MoveError);
}

TEST_CASE("ribbon move splits a dotted circle and fuses back") {
  LinkDiagram d = unknot_loop({Framing::none(), true, false});
  Band flat;
  flat.start_arc = 0;
  flat.end_arc = 0;
  flat.start_station = 0;
  flat.end_station = 1;
  RibbonMoveResult r = ribbon_move(d, 0, flat);
  CHECK(r.verified);
  CHECK(r.d.component_count() == 2);
  CHECK(r.d.comps[0].dotted);
  CHECK(r.d.comps[1].dotted);
  // fuse back
  Band fuse;
  fuse.start_arc = 0;
  fuse.end_arc = 1;
  RibbonMoveResult r2 = ribbon_move(r.d, 0, fuse);
  CHECK(r2.d.component_count() == 1);
  CHECK(diagrams_isomorphic(r2.d, d));
}

TEST_CASE("slide under one handle keeps linking with the dotted circle") {
  // dotted circle D and a split framed circle W; slide W under D
  LinkDiagram d = disjoint_union(unknot_loop({Framing::none(), true, false}),
                                 unknot_loop(surgery(2)));
  std::vector<BandEvent> path{BandEvent{0, 0, true, false}, BandEvent{0, 1, false, false}};
  LinkDiagram nd = slide_under_one_handle(d, 1, 0, 0, path);
  CHECK(nd.component_count() == 2);
  CHECK(nd.crossing_count() == 2);
  CHECK(nd.linking_number(0, 1) == 0);
  CHECK(nd.comps[1].framing.p == 2);
  // inconsistent path: both crossings the same way around
  std::vector<BandEvent> bad{BandEvent{0, 0, true, false}, BandEvent{0, 1, true, false}};
  CHECK_THROWS_AS(slide_under_one_handle(d, 1, 0, 0, bad), MoveError);
  // passing over the dotted circle is rejected
  std::vector<BandEvent> overpath{BandEvent{0, 0, true, true}, BandEvent{0, 1, false, true}};
  CHECK_THROWS_AS(slide_under_one_handle(d, 1, 0, 0, overpath), MoveError);
}

TEST_CASE("reroute detours a strand across another") {
  LinkDiagram d = disjoint_union(unknot_loop(), unknot_loop());
  // push comp 1 across comp 0 and back: like an R2 finger
  std::vector<BandEvent> path{BandEvent{0, 0, true, true}, BandEvent{0, 1, false, true}};
  LinkDiagram nd = reroute_strand(d, 1, 0, path);
  nd.validate();
  CHECK(nd.component_count() == 2);
  CHECK(nd.crossing_count() == 2);
  CHECK(nd.linking_number(0, 1) == 0);
}

TEST_CASE("whitehead link braid closure has zero linking number") {
  LinkDiagram wh = braid_closure(3, braid_word({1, -2, 1, -2, 1}));
  CHECK(wh.component_count() == 2);
  CHECK(wh.crossing_count() == 5);
  CHECK(wh.linking_number(0, 1) == 0);
}

TEST_CASE("random r-moves preserve linking matrix and planarity") {
  std::mt19937_64 rng(77);
  std::vector<LinkDiagram> seeds{right_trefoil(), hopf_positive(),
                                 braid_closure(3, braid_word({1, -2, 1, -2})),
                                 braid_closure(3, braid_word({1, 1, 2, 2}))};
  for (const LinkDiagram& seed : seeds) {
    LinkDiagram d = seed;
    auto lk0 = linking_matrix(d);
    int comps0 = d.component_count();
    for (int step = 0; step < 40; ++step) {
      int kind = static_cast<int>(rng() % 3);
      try {
        if (kind == 0) {
          int arc = static_cast<int>(rng() % d.arc_count());
          d = reidemeister_1_add(d, arc, (rng() & 1) ? 1 : -1, rng() & 1);
        } else if (kind == 1) {
          int x = static_cast<int>(rng() % d.arc_count());
          int y = static_cast<int>(rng() % d.arc_count());
          if (x != y) d = reidemeister_2_add(d, x, y, rng() & 1, rng() & 1);
        } else {
          auto fd = d.face_data();
          int f = static_cast<int>(rng() % fd.faces.size());
          if (fd.faces[f].size() == 3) d = reidemeister_3(d, f);
        }
      } catch (const MoveError&) {
        continue;  // randomly chosen location does not match the pattern
      }
      d.validate();
      CHECK(d.component_count() == comps0);
      CHECK(linking_matrix(d) == lk0);
    }
  }
}
