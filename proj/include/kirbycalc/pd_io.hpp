#pragma once

// Extended-PD text format, one diagram per file:
//
//   kirbycalc-diagram v1
//   X[a,b,c,d,+]      crossing; slots 0..3 counterclockwise, slot 0 holds the
//                     incoming under arc, slot 2 the outgoing under arc
//   O[id]             crossingless free loop
//   comp 0: arcs=1,2,3 framing=0 dotted=0 bracketed=1
//   T[a b c,-2,-]     twist box: strands in planar order, amount, reserved
//
// '#' starts a comment; whitespace is insignificant. serialize_diagram emits
// the canonical relabeling, so isomorphic diagrams serialize identically and
// parse/serialize round-trips are bit-exact.

#include <cctype>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "kirbycalc/diagram.hpp"

namespace kirbycalc {

namespace detail {

inline std::string emit_diagram_text(const LinkDiagram& d) {
  std::ostringstream out;
  out << "kirbycalc-diagram v1\n";
  auto t = d.crossing_count() ? d.slot_table()
                              : std::vector<std::array<LinkDiagram::SlotEntry, 4>>{};
  for (int c = 0; c < d.crossing_count(); ++c) {
    out << "X[" << t[c][0].arc << "," << t[c][1].arc << "," << t[c][2].arc << ","
        << t[c][3].arc << "," << (d.crossings[c].sign > 0 ? "+" : "-") << "]\n";
  }
  for (int a = 0; a < d.arc_count(); ++a)
    if (d.arcs[a].is_free_loop()) out << "O[" << a << "]\n";
  for (int k = 0; k < d.component_count(); ++k) {
    out << "comp " << k << ": arcs=";
    std::vector<int> order = d.component_arcs(k);
    for (size_t i = 0; i < order.size(); ++i) out << (i ? "," : "") << order[i];
    const ComponentDecor& dec = d.comps[k];
    out << " framing=" << dec.framing.to_string() << " dotted=" << (dec.dotted ? 1 : 0)
        << " bracketed=" << (dec.bracketed ? 1 : 0) << "\n";
  }
  for (const TwistBox& b : d.twist_boxes) {
    out << "T[";
    for (size_t i = 0; i < b.arcs.size(); ++i) out << (i ? " " : "") << b.arcs[i];
    out << ",";
    if (b.denom == 2) out << (b.numer > 0 ? "+1/2" : "-1/2");
    else out << b.numer;
    out << ",-]\n";
  }
  return out.str();
}

// relabel with given orderings: crossings by cross_order, arcs by arc_order
inline LinkDiagram relabel_diagram(const LinkDiagram& d, const std::vector<int>& cross_order,
                                   const std::vector<int>& arc_order) {
  std::vector<int> cmap(d.crossing_count(), -1), amap(d.arc_count(), -1);
  for (size_t i = 0; i < cross_order.size(); ++i) cmap[cross_order[i]] = static_cast<int>(i);
  for (size_t i = 0; i < arc_order.size(); ++i) amap[arc_order[i]] = static_cast<int>(i);
  // component ids by first arc appearance in the new order
  std::vector<int> kmap(d.component_count(), -1);
  int next_k = 0;
  for (int old_a : arc_order) {
    int k = d.arcs[old_a].comp;
    if (kmap[k] < 0) kmap[k] = next_k++;
  }
  LinkDiagram out;
  out.crossings.resize(d.crossing_count());
  for (int c = 0; c < d.crossing_count(); ++c) out.crossings[cmap[c]] = d.crossings[c];
  out.arcs.resize(d.arc_count());
  for (int a = 0; a < d.arc_count(); ++a) {
    Arc na = d.arcs[a];
    na.comp = kmap[na.comp];
    if (na.tail.valid()) na.tail.crossing = cmap[na.tail.crossing];
    if (na.head.valid()) na.head.crossing = cmap[na.head.crossing];
    out.arcs[amap[a]] = na;
  }
  out.comps.resize(d.component_count());
  for (int k = 0; k < d.component_count(); ++k) out.comps[kmap[k]] = d.comps[k];
  for (TwistBox b : d.twist_boxes) {
    for (int& x : b.arcs) x = amap[x];
    out.twist_boxes.push_back(std::move(b));
  }
  return out;
}

}  // namespace detail

inline LinkDiagram canonicalize_diagram(const LinkDiagram& d) {
  using detail::PieceCode;
  auto pieces = d.pieces_by_arc();
  auto t = d.crossing_count() ? d.slot_table()
                              : std::vector<std::array<LinkDiagram::SlotEntry, 4>>{};

  struct PieceChoice {
    PieceCode min_code;
    std::vector<std::vector<int>> argmin_arc_orders;
    bool free_loop = false;
    int loop_arc = -1;
  };
  std::vector<PieceChoice> choices;
  for (const auto& piece : pieces) {
    PieceChoice ch;
    if (piece.size() == 1 && d.arcs[piece[0]].is_free_loop()) {
      ch.free_loop = true;
      ch.loop_arc = piece[0];
      const ComponentDecor& dec = d.comps[d.arcs[piece[0]].comp];
      ch.min_code.code = {-1, dec.framing.present ? 1 : 0, static_cast<int>(dec.framing.p),
                          static_cast<int>(dec.framing.q), dec.dotted ? 1 : 0,
                          dec.bracketed ? 1 : 0};
      ch.argmin_arc_orders.push_back({piece[0]});
    } else {
      bool first = true;
      for (int root : piece) {
        PieceCode pc = detail::piece_code_from_root(d, t, root);
        if (first || pc.code < ch.min_code.code) {
          ch.min_code = pc;
          ch.argmin_arc_orders.clear();
          ch.argmin_arc_orders.push_back(pc.arc_order);
          first = false;
        } else if (pc.code == ch.min_code.code) {
          ch.argmin_arc_orders.push_back(pc.arc_order);
        }
      }
    }
    choices.push_back(std::move(ch));
  }
  std::sort(choices.begin(), choices.end(),
            [](const PieceChoice& a, const PieceChoice& b) { return a.min_code.code < b.min_code.code; });

  auto assemble = [&](const std::vector<size_t>& pick) {
    std::vector<int> arc_order;
    for (size_t i = 0; i < choices.size(); ++i)
      for (int a : choices[i].argmin_arc_orders[pick[i]]) arc_order.push_back(a);
    std::vector<int> cross_order;
    std::vector<char> seen(d.crossing_count(), 0);
    for (int a : arc_order) {
      for (const SlotRef* r : {&d.arcs[a].head, &d.arcs[a].tail}) {
        if (r->valid() && !seen[r->crossing]) {
          seen[r->crossing] = 1;
          cross_order.push_back(r->crossing);
        }
      }
    }
    return detail::relabel_diagram(d, cross_order, arc_order);
  };

  // Ties between roots only matter when twist boxes can tell labelings apart.
  size_t combos = 1;
  bool overflow = false;
  for (const auto& ch : choices) {
    combos *= ch.argmin_arc_orders.size();
    if (combos > 4096) { overflow = true; break; }
  }
  std::vector<size_t> pick(choices.size(), 0);
  if (d.twist_boxes.empty() || overflow || combos == 1)
    return assemble(pick);

  std::string best;
  std::vector<size_t> cur(choices.size(), 0);
  LinkDiagram best_d;
  for (;;) {
    LinkDiagram cand = assemble(cur);
    std::string s = detail::emit_diagram_text(cand);
    if (best.empty() || s < best) { best = s; best_d = cand; }
    size_t i = 0;
    for (; i < cur.size(); ++i) {
      if (++cur[i] < choices[i].argmin_arc_orders.size()) break;
      cur[i] = 0;
    }
    if (i == cur.size()) break;
  }
  return best_d;
}

inline std::string serialize_diagram(const LinkDiagram& d) {
  return detail::emit_diagram_text(canonicalize_diagram(d));
}

inline std::string LinkDiagram::canonical_serialization() const {
  return serialize_diagram(*this);
}

inline bool diagrams_isomorphic(const LinkDiagram& a, const LinkDiagram& b) {
  return serialize_diagram(a) == serialize_diagram(b);
}

// ---- parsing ------------------------------------------------------------------

namespace detail {

struct PdScanner {
  std::string text;
  size_t pos = 0;
  int line = 1;
  void skip_ws(bool newline_too) {
    while (pos < text.size()) {
      char c = text[pos];
      if (c == '#') {
        while (pos < text.size() && text[pos] != '\n') ++pos;
      } else if (c == '\n') {
        if (!newline_too) return;
        ++line;
        ++pos;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos;
      } else {
        return;
      }
    }
  }
  bool eof() {
    skip_ws(true);
    return pos >= text.size();
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("parse error at line " + std::to_string(line) + ": " + msg);
  }
  void expect(char c) {
    skip_ws(false);
    if (pos >= text.size() || text[pos] != c)
      fail(std::string("expected '") + c + "'");
    ++pos;
  }
  bool peek_is(char c) {
    skip_ws(false);
    return pos < text.size() && text[pos] == c;
  }
  long long integer() {
    skip_ws(false);
    size_t start = pos;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
    size_t digits = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == digits) fail("expected integer");
    return std::stoll(text.substr(start, pos - start));
  }
  std::string word() {
    skip_ws(false);
    size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_' ||
            text[pos] == '-'))
      ++pos;
    if (pos == start) fail("expected word");
    return text.substr(start, pos - start);
  }
  bool try_keyword(const std::string& kw) {
    skip_ws(true);
    if (text.compare(pos, kw.size(), kw) == 0) {
      pos += kw.size();
      return true;
    }
    return false;
  }
};

}  // namespace detail

inline LinkDiagram parse_diagram(const std::string& text) {
  detail::PdScanner sc{text};
  if (!sc.try_keyword("kirbycalc-diagram"))
    sc.fail("missing 'kirbycalc-diagram v1' header");
  if (!sc.try_keyword("v1")) sc.fail("unsupported diagram format version");

  struct XRec { std::array<long long, 4> slots; int sign; int line; };
  std::vector<XRec> xrecs;
  std::vector<long long> loops;
  struct CompRec {
    long long idx;
    std::vector<long long> arcs;
    Framing framing;
    bool dotted, bracketed;
  };
  std::vector<CompRec> comprecs;
  struct TRec { std::vector<long long> arcs; int numer; int denom; };
  std::vector<TRec> trecs;

  while (!sc.eof()) {
    sc.skip_ws(true);
    if (sc.peek_is('X')) {
      sc.expect('X');
      sc.expect('[');
      XRec r;
      r.line = sc.line;
      for (int i = 0; i < 4; ++i) {
        r.slots[i] = sc.integer();
        sc.expect(',');
      }
      sc.skip_ws(false);
      if (sc.peek_is('+')) { sc.expect('+'); r.sign = 1; }
      else if (sc.peek_is('-')) { sc.expect('-'); r.sign = -1; }
      else { long long v = sc.integer(); if (v != 1 && v != -1) sc.fail("crossing sign must be +-1"); r.sign = static_cast<int>(v); }
      if (sc.peek_is('1')) sc.integer();  // tolerate +1/-1 spelled out
      sc.expect(']');
      xrecs.push_back(r);
    } else if (sc.peek_is('O')) {
      sc.expect('O');
      sc.expect('[');
      loops.push_back(sc.integer());
      sc.expect(']');
    } else if (sc.peek_is('T')) {
      sc.expect('T');
      sc.expect('[');
      TRec r;
      r.arcs.push_back(sc.integer());
      while (!sc.peek_is(',')) r.arcs.push_back(sc.integer());
      sc.expect(',');
      long long n = sc.integer();
      if (sc.peek_is('/')) {
        sc.expect('/');
        long long q = sc.integer();
        if (q != 2 || (n != 1 && n != -1)) sc.fail("twist amount must be integer or +-1/2");
        r.numer = static_cast<int>(n);
        r.denom = 2;
      } else {
        r.numer = static_cast<int>(n);
        r.denom = 1;
      }
      sc.expect(',');
      sc.skip_ws(false);
      if (sc.peek_is('-')) sc.expect('-');
      else sc.integer();  // reserved anchor field
      sc.expect(']');
      trecs.push_back(std::move(r));
    } else if (sc.try_keyword("comp")) {
      CompRec r;
      r.idx = sc.integer();
      sc.expect(':');
      if (sc.word() != "arcs") sc.fail("expected arcs=");
      sc.expect('=');
      r.arcs.push_back(sc.integer());
      while (sc.peek_is(',')) { sc.expect(','); r.arcs.push_back(sc.integer()); }
      if (sc.word() != "framing") sc.fail("expected framing=");
      sc.expect('=');
      sc.skip_ws(false);
      if (std::isalpha(static_cast<unsigned char>(sc.text[sc.pos]))) {
        if (sc.word() != "none") sc.fail("framing must be an integer, p/q, or none");
        r.framing = Framing::none();
      } else {
        long long p = sc.integer();
        if (sc.peek_is('/')) {
          sc.expect('/');
          long long q = sc.integer();
          if (q < 0) sc.fail("framing denominator must be nonnegative");
          Framing f = Framing::rational(p, q);
          if (f.p != p || f.q != q) sc.fail("framing not in lowest terms");
          r.framing = f;
        } else {
          r.framing = Framing::integer(p);
        }
      }
      if (sc.word() != "dotted") sc.fail("expected dotted=");
      sc.expect('=');
      r.dotted = sc.integer() != 0;
      if (sc.word() != "bracketed") sc.fail("expected bracketed=");
      sc.expect('=');
      r.bracketed = sc.integer() != 0;
      comprecs.push_back(std::move(r));
    } else {
      sc.fail("unrecognized record");
    }
  }

  // collect arc labels
  std::map<long long, int> arc_of_label;
  auto touch = [&](long long lbl) {
    if (!arc_of_label.count(lbl)) arc_of_label[lbl] = -1;
  };
  for (const auto& x : xrecs)
    for (long long s : x.slots) touch(s);
  for (long long l : loops) touch(l);
  for (const auto& cr : comprecs)
    for (long long a : cr.arcs) touch(a);
  int next_arc = 0;
  for (auto& [lbl, id] : arc_of_label) id = next_arc++;

  LinkDiagram d;
  d.arcs.resize(next_arc);
  for (Arc& a : d.arcs) a.tail = a.head = SlotRef{};
  std::vector<int> head_set(next_arc, 0), tail_set(next_arc, 0);
  for (int c = 0; c < static_cast<int>(xrecs.size()); ++c) {
    const XRec& x = xrecs[c];
    Crossing cr;
    cr.sign = x.sign;
    d.crossings.push_back(cr);
    for (int s = 0; s < 4; ++s) {
      int a = arc_of_label[x.slots[s]];
      bool is_head = (s == 0) || (s == cr.over_in_slot());
      if (is_head) {
        if (head_set[a]++)
          throw ParseError("line " + std::to_string(x.line) + ": arc " +
                           std::to_string(x.slots[s]) + " has two incoming ends");
        d.arcs[a].head = SlotRef{c, s};
      } else {
        if (tail_set[a]++)
          throw ParseError("line " + std::to_string(x.line) + ": arc " +
                           std::to_string(x.slots[s]) + " has two outgoing ends");
        d.arcs[a].tail = SlotRef{c, s};
      }
    }
  }
  for (long long l : loops) {
    int a = arc_of_label[l];
    if (head_set[a] || tail_set[a])
      throw ParseError("free loop " + std::to_string(l) + " also appears at a crossing");
    head_set[a] = tail_set[a] = 1;  // occupied as loop
  }
  for (auto& [lbl, id] : arc_of_label)
    if (head_set[id] != 1 || tail_set[id] != 1)
      throw ParseError("arc " + std::to_string(lbl) + " does not have exactly one head and one tail");

  // components
  if (comprecs.empty() && next_arc > 0) throw ParseError("no component records");
  std::sort(comprecs.begin(), comprecs.end(),
            [](const CompRec& a, const CompRec& b) { return a.idx < b.idx; });
  d.comps.resize(comprecs.size());
  for (size_t k = 0; k < comprecs.size(); ++k) {
    if (comprecs[k].idx != static_cast<long long>(k))
      throw ParseError("component indices must be 0..n-1");
    d.comps[k].framing = comprecs[k].framing;
    d.comps[k].dotted = comprecs[k].dotted;
    d.comps[k].bracketed = comprecs[k].bracketed;
    for (long long lbl : comprecs[k].arcs) {
      int a = arc_of_label.at(lbl);
      if (d.arcs[a].comp >= 0) throw ParseError("arc " + std::to_string(lbl) + " in two components");
      d.arcs[a].comp = static_cast<int>(k);
    }
  }
  for (auto& [lbl, id] : arc_of_label)
    if (d.arcs[id].comp < 0)
      throw ParseError("arc " + std::to_string(lbl) + " not assigned to a component");

  for (const auto& tr : trecs) {
    TwistBox b;
    for (long long lbl : tr.arcs) b.arcs.push_back(arc_of_label.at(lbl));
    b.numer = tr.numer;
    b.denom = tr.denom;
    d.twist_boxes.push_back(std::move(b));
  }

  try {
    d.validate();
  } catch (const DiagramError& e) {
    throw DiagramError(std::string("validation failed: ") + e.what());
  }
  return d;
}

}  // namespace kirbycalc
