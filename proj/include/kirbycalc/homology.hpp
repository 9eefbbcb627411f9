#pragma once

// First homology of surgered 3-manifolds from framed-link data, plus the
// homological validators behind the RBG-link and R-link definitions.
//
// Presentation convention, pinned: one meridian generator per component;
// for slope p_i/q_i the i-th relation has diagonal entry p_i and off-diagonal
// entries q_i * lk(i, j). Dotted circles enter as 0-framed surgery curves
// (the standard 1-handle boundary identification) and the report notes it.

#include <optional>
#include <string>
#include <vector>

#include "kirbycalc/build.hpp"
#include "kirbycalc/diagram.hpp"
#include "kirbycalc/snf.hpp"

namespace kirbycalc {

struct PresentationMatrix {
  IntMat m;
  std::vector<int> components;      // diagram component per row/column
  bool dotted_converted = false;    // some rows came from dotted circles
};

namespace detail {

inline LinkDiagram expanded_for_homology(const LinkDiagram& d) {
  return d.twist_boxes.empty() ? d : expand_twist_boxes(d);
}

}  // namespace detail

// strict=true enforces the bracketed-surgery precondition; strict=false also
// accepts unbracketed framed components (4-manifold boundary bookkeeping).
inline PresentationMatrix presentation_matrix(const LinkDiagram& din, bool strict = true) {
  LinkDiagram d = detail::expanded_for_homology(din);
  PresentationMatrix pm;
  for (int k = 0; k < d.component_count(); ++k) {
    const ComponentDecor& dec = d.comps[k];
    if (dec.dotted) {
      pm.components.push_back(k);
      pm.dotted_converted = true;
      continue;
    }
    if (!dec.framing.present)
      throw DiagramError("presentation matrix: component " + std::to_string(k) + " has no slope");
    if (dec.framing.is_infinity())
      throw DiagramError("presentation matrix: delete infinity-framed components first");
    if (strict && !dec.bracketed)
      throw DiagramError("presentation matrix: component " + std::to_string(k) + " is not bracketed surgery");
    pm.components.push_back(k);
  }
  int n = static_cast<int>(pm.components.size());
  pm.m.assign(n, std::vector<BigInt>(n, BigInt(0)));
  for (int a = 0; a < n; ++a) {
    int ka = pm.components[a];
    long long p = d.comps[ka].dotted ? 0 : d.comps[ka].framing.p;
    long long q = d.comps[ka].dotted ? 1 : d.comps[ka].framing.q;
    pm.m[a][a] = BigInt(p);
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      int kb = pm.components[b];
      pm.m[a][b] = BigInt(q) * BigInt(d.linking_number(ka, kb));
    }
  }
  return pm;
}

inline AbelianInvariants h1_of_surgery(const LinkDiagram& d, bool strict = true) {
  SmithResult s = smith_normal_form(presentation_matrix(d, strict).m);
  if (!s.certificate_valid()) throw std::logic_error("smith normal form certificate failed");
  return s.cokernel();
}

struct RbgVerdict {
  bool full_is_Z = false;        // H1(full surgery) == Z
  bool rg_trivial = false;       // H1(surgery on R u G) == 0
  bool rb_trivial = false;       // H1(surgery on R u B) == 0
  AbelianInvariants full, rg, rb;
  bool dotted_converted = false;
  bool homology_consistent() const { return full_is_Z && rg_trivial && rb_trivial; }
  std::string verdict() const { return homology_consistent() ? "homology-consistent" : "fail"; }
};

// Necessary homological conditions for an RBG link. Homeomorphism claims are
// not checked here; reductions are certified separately by move scripts.
inline RbgVerdict check_rbg_homology(const LinkDiagram& din, int r, int b, int g) {
  if (r == b || r == g || b == g) throw DiagramError("rbg check: components must be distinct");
  LinkDiagram d = detail::expanded_for_homology(din);
  int n = d.component_count();
  if (r < 0 || b < 0 || g < 0 || r >= n || b >= n || g >= n)
    throw DiagramError("rbg check: no such component");
  RbgVerdict v;
  {
    PresentationMatrix pm = presentation_matrix(d);
    v.dotted_converted = pm.dotted_converted;
    SmithResult s = smith_normal_form(pm.m);
    if (!s.certificate_valid()) throw std::logic_error("smith certificate failed");
    v.full = s.cokernel();
    v.full_is_Z = v.full.is_free_of_rank(1);
  }
  {
    SmithResult s = smith_normal_form(presentation_matrix(d.restricted_to({r, g})).m);
    if (!s.certificate_valid()) throw std::logic_error("smith certificate failed");
    v.rg = s.cokernel();
    v.rg_trivial = v.rg.is_trivial();
  }
  {
    SmithResult s = smith_normal_form(presentation_matrix(d.restricted_to({r, b})).m);
    if (!s.certificate_valid()) throw std::logic_error("smith certificate failed");
    v.rb = s.cokernel();
    v.rb_trivial = v.rb.is_trivial();
  }
  return v;
}

struct RlinkVerdict {
  bool all_zero_framed = false;
  bool zero_linking = false;
  AbelianInvariants h1;
  bool pass() const { return all_zero_framed && zero_linking; }
  std::string verdict() const { return pass() ? "pass" : "fail"; }
};

// Homological necessary condition for an n-component R-link: zero framings
// and identically zero linking matrix, i.e. H1 of the 0-surgery is Z^n.
inline RlinkVerdict check_rlink_homology(const LinkDiagram& din) {
  LinkDiagram d = detail::expanded_for_homology(din);
  RlinkVerdict v;
  v.all_zero_framed = true;
  for (int k = 0; k < d.component_count(); ++k) {
    const ComponentDecor& dec = d.comps[k];
    if (dec.dotted || !dec.framing.present || dec.framing.p != 0 || dec.framing.q != 1)
      v.all_zero_framed = false;
  }
  v.zero_linking = true;
  for (int i = 0; i < d.component_count(); ++i)
    for (int j = i + 1; j < d.component_count(); ++j)
      if (d.linking_number(i, j) != 0) v.zero_linking = false;
  if (v.all_zero_framed) {
    SmithResult s = smith_normal_form(presentation_matrix(d).m);
    if (!s.certificate_valid()) throw std::logic_error("smith certificate failed");
    v.h1 = s.cokernel();
    // cross-check: pass iff the presentation matrix is identically zero
    bool all_zero = true;
    for (const auto& row : presentation_matrix(d).m)
      for (const BigInt& e : row)
        if (!e.is_zero()) all_zero = false;
    if (all_zero != (v.pass() && v.h1.is_free_of_rank(d.component_count())))
      throw std::logic_error("rlink verdict disagrees with zero-matrix check");
  }
  return v;
}

}  // namespace kirbycalc
