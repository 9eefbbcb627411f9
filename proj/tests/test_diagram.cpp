#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "kirbycalc/build.hpp"
#include "kirbycalc/diagram.hpp"
#include "kirbycalc/pd_io.hpp"

using namespace kirbycalc;

namespace {

LinkDiagram right_trefoil() { return braid_closure(2, braid_word({1, 1, 1})); }
LinkDiagram figure_eight() { return braid_closure(3, braid_word({1, -2, 1, -2})); }
LinkDiagram hopf_positive() { return braid_closure(2, braid_word({1, 1})); }

LinkDiagram scrambled(const LinkDiagram& d, std::mt19937_64& rng) {
  std::vector<int> corder(d.crossing_count()), aorder(d.arc_count());
  for (int i = 0; i < d.crossing_count(); ++i) corder[i] = i;
  for (int i = 0; i < d.arc_count(); ++i) aorder[i] = i;
  std::shuffle(corder.begin(), corder.end(), rng);
  std::shuffle(aorder.begin(), aorder.end(), rng);
  return detail::relabel_diagram(d, corder, aorder);
}

}  // namespace

TEST_CASE("crossingless unknot parses and round-trips") {
  LinkDiagram d = parse_diagram("kirbycalc-diagram v1\nO[0]\ncomp 0: arcs=0 framing=none dotted=0 bracketed=0\n");
  CHECK(d.component_count() == 1);
  CHECK(d.crossing_count() == 0);
  std::string s = serialize_diagram(d);
  LinkDiagram d2 = parse_diagram(s);
  CHECK(serialize_diagram(d2) == s);
  CHECK(d2.arcs[0].is_free_loop());
}

TEST_CASE("right trefoil has writhe +3 and validates") {
  LinkDiagram d = right_trefoil();
  CHECK(d.component_count() == 1);
  CHECK(d.crossing_count() == 3);
  CHECK(d.writhe(0) == 3);
  d.comps[0].framing = Framing::integer(1);
  d.validate();
  std::string s = serialize_diagram(d);
  LinkDiagram d2 = parse_diagram(s);
  CHECK(d2.writhe(0) == 3);
  CHECK(serialize_diagram(d2) == s);
}

TEST_CASE("figure eight has writhe 0") {
  LinkDiagram d = figure_eight();
  CHECK(d.component_count() == 1);
  CHECK(d.crossing_count() == 4);
  CHECK(d.writhe(0) == 0);
}

TEST_CASE("hopf link linking number") {
  LinkDiagram d = hopf_positive();
  CHECK(d.component_count() == 2);
  CHECK(d.linking_number(0, 1) == 1);
  CHECK(d.linking_number(1, 0) == 1);
  CHECK_THROWS_AS((void)d.linking_number(0, 0), DiagramError);
  LinkDiagram neg = braid_closure(2, braid_word({-1, -1}));
  CHECK(neg.linking_number(0, 1) == -1);
}

TEST_CASE("two-component crossingless unlink has linking number zero") {
  LinkDiagram d = disjoint_union(unknot_loop(), unknot_loop());
  CHECK(d.component_count() == 2);
  CHECK(d.linking_number(0, 1) == 0);
}

TEST_CASE("serialization is canonical across relabelings") {
  std::mt19937_64 rng(7);
  for (LinkDiagram d : {right_trefoil(), figure_eight(),
                        disjoint_union(hopf_positive(), unknot_loop())}) {
    std::string canon = serialize_diagram(d);
    for (int i = 0; i < 20; ++i) {
      LinkDiagram s = scrambled(d, rng);
      s.validate();
      CHECK(serialize_diagram(s) == canon);
    }
  }
}

TEST_CASE("isomorphism distinguishes knots and orientations") {
  CHECK(diagrams_isomorphic(right_trefoil(), right_trefoil()));
  CHECK_FALSE(diagrams_isomorphic(right_trefoil(), figure_eight()));
  // reversing one component of the positive Hopf link changes crossing signs
  LinkDiagram h = hopf_positive();
  LinkDiagram hr = h.with_reversed_components({1});
  hr.validate();
  CHECK(hr.linking_number(0, 1) == -1);
  CHECK_FALSE(diagrams_isomorphic(h, hr));
  // reversing both components is a sign-preserving relabeling
  LinkDiagram hb = h.with_reversed_components({0, 1});
  hb.validate();
  CHECK(diagrams_isomorphic(h, hb));
}

TEST_CASE("decorations distinguish otherwise equal diagrams") {
  LinkDiagram a = unknot_loop();
  LinkDiagram b = unknot_loop({Framing::integer(0), false, true});
  LinkDiagram c = unknot_loop({Framing::none(), true, false});
  CHECK_FALSE(diagrams_isomorphic(a, b));
  CHECK_FALSE(diagrams_isomorphic(b, c));
  CHECK(diagrams_isomorphic(b, unknot_loop({Framing::integer(0), false, true})));
  LinkDiagram r = unknot_loop({Framing::rational(3, 2), false, true});
  CHECK(serialize_diagram(r).find("framing=3/2") != std::string::npos);
}

TEST_CASE("parse rejects syntax and structural garbage") {
  CHECK_THROWS_AS(parse_diagram("nonsense"), ParseError);
  CHECK_THROWS_AS(parse_diagram("kirbycalc-diagram v1\nX[0,1,2]\n"), ParseError);
  // arc 0 with two heads (slot 0 and slot 3 are both incoming at sign +)
  CHECK_THROWS_AS(
      parse_diagram("kirbycalc-diagram v1\nX[0,1,1,0,+]\ncomp 0: arcs=0,1 framing=none dotted=0 bracketed=0\n"),
      ParseError);
  // structurally fine slots, wrong component declaration
  CHECK_THROWS_AS(
      parse_diagram("kirbycalc-diagram v1\nX[0,1,0,1,+]\ncomp 0: arcs=0,1 framing=none dotted=0 bracketed=0\n"),
      DiagramError);
  // dotted and framed at once
  CHECK_THROWS_AS(
      parse_diagram("kirbycalc-diagram v1\nO[0]\ncomp 0: arcs=0 framing=3 dotted=1 bracketed=0\n"),
      DiagramError);
  // framing not reduced
  CHECK_THROWS_AS(
      parse_diagram("kirbycalc-diagram v1\nO[0]\ncomp 0: arcs=0 framing=2/4 dotted=0 bracketed=0\n"),
      ParseError);
}

TEST_CASE("non-planar rotation system is rejected by the Euler check") {
  // Wire two crossings so the faces close up on a torus instead of a sphere.
  LinkDiagram d;
  for (int i = 0; i < 4; ++i) new_open_arc(d, 0);
  d.crossings.push_back(Crossing{+1});
  d.crossings.push_back(Crossing{+1});
  d.arcs[2].head = {0, 0};
  d.arcs[0].tail = {0, 2};
  d.arcs[3].head = {0, 3};
  d.arcs[1].tail = {0, 1};
  d.arcs[0].head = {1, 0};
  d.arcs[2].tail = {1, 2};
  d.arcs[1].head = {1, 3};
  d.arcs[3].tail = {1, 1};
  d.arcs[0].comp = d.arcs[2].comp = 0;
  d.arcs[1].comp = d.arcs[3].comp = 1;
  d.comps.resize(2);
  bool planar_ok = true;
  std::string msg;
  try {
    d.validate();
  } catch (const DiagramError& e) {
    planar_ok = false;
    msg = e.what();
  }
  CHECK_FALSE(planar_ok);
  CHECK(msg.find("planar") != std::string::npos);
}

TEST_CASE("twist box expansion counts crossings") {
  // k=0 box on 2 strands: box disappears, nothing changes
  {
    LinkDiagram d = disjoint_union(unknot_loop(), unknot_loop());
    d.twist_boxes.push_back(TwistBox{{0, 1}, 0, 1});
    d.validate();
    LinkDiagram e = expand_twist_boxes(d);
    CHECK(e.crossing_count() == 0);
    CHECK(e.twist_boxes.empty());
  }
  // k=+1 box on 2 strands -> 2 positive crossings (a Hopf link)
  {
    LinkDiagram d = disjoint_union(unknot_loop(), unknot_loop());
    d.twist_boxes.push_back(TwistBox{{0, 1}, 1, 1});
    d.validate();
    LinkDiagram e = expand_twist_boxes(d);
    CHECK(e.crossing_count() == 2);
    CHECK(e.crossings[0].sign == 1);
    CHECK(e.crossings[1].sign == 1);
    CHECK(e.component_count() == 2);
    CHECK(e.linking_number(0, 1) == 1);
    CHECK(diagrams_isomorphic(e, hopf_positive()));
  }
  // k=-2 box on 3 strands -> 12 negative crossings
  {
    LinkDiagram d = disjoint_union(disjoint_union(unknot_loop(), unknot_loop()), unknot_loop());
    d.twist_boxes.push_back(TwistBox{{0, 1, 2}, -2, 1});
    d.validate();
    LinkDiagram e = expand_twist_boxes(d);
    CHECK(e.crossing_count() == 12);
    for (const Crossing& c : e.crossings) CHECK(c.sign == -1);
    e.validate();
  }
  // half twist on 2 strands -> 1 crossing, fusing the two loops
  {
    LinkDiagram d = disjoint_union(unknot_loop(), unknot_loop());
    d.twist_boxes.push_back(TwistBox{{0, 1}, 1, 2});
    d.validate();
    LinkDiagram e = expand_twist_boxes(d);
    CHECK(e.crossing_count() == 1);
    CHECK(e.component_count() == 1);
  }
}

TEST_CASE("full twist boxes change linking by k times the strand product") {
  for (int k : {1, -1, 2, -3}) {
    LinkDiagram d = disjoint_union(unknot_loop(), unknot_loop());
    d.twist_boxes.push_back(TwistBox{{0, 1}, k, 1});
    d.validate();
    LinkDiagram e = expand_twist_boxes(d);
    CHECK(e.linking_number(0, 1) == k);
  }
  // three split loops through one full twist: all pairwise linkings +1
  {
    LinkDiagram dd = disjoint_union(disjoint_union(unknot_loop(), unknot_loop()), unknot_loop());
    dd.twist_boxes.push_back(TwistBox{{0, 1, 2}, 1, 1});
    dd.validate();
    LinkDiagram e = expand_twist_boxes(dd);
    CHECK(e.crossing_count() == 6);
    CHECK(e.linking_number(0, 1) == 1);
    CHECK(e.linking_number(0, 2) == 1);
    CHECK(e.linking_number(1, 2) == 1);
  }
}

TEST_CASE("component extraction and deletion splice straight through") {
  LinkDiagram h = hopf_positive();
  LinkDiagram only0 = h.restricted_to({0});
  CHECK(only0.component_count() == 1);
  CHECK(only0.crossing_count() == 0);
  CHECK(only0.arcs[0].is_free_loop());
  LinkDiagram tre = right_trefoil();
  LinkDiagram both = disjoint_union(tre, unknot_loop());
  LinkDiagram keep_tre = both.without_components({1});
  CHECK(diagrams_isomorphic(keep_tre, tre));
}
