#pragma once

// Fundamental groups of link complements and surgered manifolds as finite
// presentations, with a replayable Tietze simplification and a bounded
// free-group certifier. Longitude convention, pinned: traverse a component
// and collect the over-strand generator (signed) at every underpass, then
// append meridian^(framing - self writhe); the result abelianizes to the
// surgery presentation row.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kirbycalc/build.hpp"
#include "kirbycalc/diagram.hpp"
#include "kirbycalc/snf.hpp"

namespace kirbycalc {

// words over generators: letter +k / -k means generator k-1 / its inverse
using Word = std::vector<int>;

inline Word word_inverse(const Word& w) {
  Word r;
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(-*it);
  return r;
}

inline Word free_reduce(const Word& w) {
  Word r;
  for (int x : w) {
    if (!r.empty() && r.back() == -x) r.pop_back();
    else r.push_back(x);
  }
  return r;
}

inline Word cyclic_reduce(Word w) {
  w = free_reduce(w);
  while (w.size() >= 2 && w.front() == -w.back()) {
    w.erase(w.begin());
    w.pop_back();
  }
  return w;
}

struct GroupPresentation {
  int generators = 0;
  std::vector<Word> relators;
  std::vector<std::string> gen_names;  // provenance (arc ids, surgery relators)

  friend bool operator==(const GroupPresentation&, const GroupPresentation&) = default;

  std::string to_string() const {
    std::string s = "< ";
    for (int g = 0; g < generators; ++g) {
      if (g) s += ", ";
      s += g < static_cast<int>(gen_names.size()) && !gen_names[g].empty()
               ? gen_names[g]
               : "x" + std::to_string(g);
    }
    s += " | ";
    for (size_t i = 0; i < relators.size(); ++i) {
      if (i) s += ", ";
      if (relators[i].empty()) s += "1";
      for (int x : relators[i]) {
        int g = std::abs(x) - 1;
        s += (g < static_cast<int>(gen_names.size()) && !gen_names[g].empty()
                  ? gen_names[g]
                  : "x" + std::to_string(g));
        if (x < 0) s += "'";
        s += " ";
      }
    }
    s += ">";
    return s;
  }

  AbelianInvariants abelianization() const {
    IntMat m(relators.size(), std::vector<BigInt>(generators, BigInt(0)));
    for (size_t i = 0; i < relators.size(); ++i)
      for (int x : relators[i]) m[i][std::abs(x) - 1] += BigInt(x > 0 ? 1 : -1);
    if (m.empty()) return AbelianInvariants{generators, {}};
    SmithResult s = smith_normal_form(m);
    if (!s.certificate_valid()) throw std::logic_error("abelianization: snf certificate failed");
    // cokernel of the transpose presentation: generators modulo relator rows
    AbelianInvariants inv;
    int rank = 0;
    for (int i = 0; i < std::min<int>(static_cast<int>(m.size()), generators); ++i) {
      if (s.D[i][i].is_zero()) continue;
      ++rank;
      if (s.D[i][i] > BigInt(1)) inv.torsion.push_back(s.D[i][i]);
    }
    inv.free_rank = generators - rank;
    return inv;
  }
};

namespace detail {

// overpass strand classes: arcs merged across crossings where they run over
inline std::vector<int> strand_classes(const LinkDiagram& d, int& count) {
  auto t = d.slot_table();
  std::vector<int> cls(d.arc_count());
  for (int a = 0; a < d.arc_count(); ++a) cls[a] = a;
  std::function<int(int)> find = [&](int x) {
    while (cls[x] != x) x = cls[x] = cls[cls[x]];
    return x;
  };
  for (int c = 0; c < d.crossing_count(); ++c) {
    int oi = find(t[c][d.crossings[c].over_in_slot()].arc);
    int oo = find(t[c][d.crossings[c].over_out_slot()].arc);
    if (oi != oo) cls[oi] = oo;
  }
  std::map<int, int> ids;
  std::vector<int> out(d.arc_count());
  for (int a = 0; a < d.arc_count(); ++a) {
    int r = find(a);
    if (!ids.count(r)) {
      int id = static_cast<int>(ids.size());
      ids[r] = id;
    }
    out[a] = ids[r];
  }
  count = static_cast<int>(ids.size());
  return out;
}

}  // namespace detail

// one generator per overpass strand, one conjugation relator per crossing
inline GroupPresentation wirtinger(const LinkDiagram& din) {
  LinkDiagram d = din.twist_boxes.empty() ? din : expand_twist_boxes(din);
  GroupPresentation p;
  int count = 0;
  std::vector<int> cls = detail::strand_classes(d, count);
  p.generators = count;
  p.gen_names.resize(count);
  for (int a = 0; a < d.arc_count(); ++a)
    if (p.gen_names[cls[a]].empty()) p.gen_names[cls[a]] = "a" + std::to_string(a);
  auto t = d.slot_table();
  for (int c = 0; c < d.crossing_count(); ++c) {
    int o = cls[t[c][d.crossings[c].over_in_slot()].arc] + 1;
    int in = cls[t[c][0].arc] + 1;
    int out = cls[t[c][2].arc] + 1;
    int s = d.crossings[c].sign;
    // x_out = x_o^s x_in x_o^-s
    Word r{s * o, in, -s * o, -out};
    p.relators.push_back(free_reduce(r));
  }
  return p;
}

// the framed longitude word of a component (see header note)
inline Word longitude_word(const LinkDiagram& d, int comp, long long framing,
                           const std::vector<int>& cls) {
  auto t = d.slot_table();
  std::vector<int> order = d.component_arcs(comp);
  Word w;
  for (int a : order) {
    const SlotRef& h = d.arcs[a].head;
    if (!h.valid()) continue;
    if (h.slot == 0) {
      int c = h.crossing;
      int o = cls[t[c][d.crossings[c].over_in_slot()].arc] + 1;
      w.push_back(d.crossings[c].sign * o);
    }
  }
  int meridian = cls[order.front()] + 1;
  long long extra = framing - d.writhe(comp);
  for (long long i = 0; i < (extra < 0 ? -extra : extra); ++i)
    w.push_back(extra > 0 ? meridian : -meridian);
  return free_reduce(w);
}

// wirtinger plus one framed-longitude relator per bracketed component
inline GroupPresentation surgered_presentation(const LinkDiagram& din) {
  LinkDiagram d = din.twist_boxes.empty() ? din : expand_twist_boxes(din);
  GroupPresentation p = wirtinger(d);
  int count = 0;
  std::vector<int> cls = detail::strand_classes(d, count);
  for (int k = 0; k < d.component_count(); ++k) {
    const ComponentDecor& dec = d.comps[k];
    if (dec.dotted) continue;  // 1-handles do not bound surgery relators here
    if (!dec.framing.present) continue;
    if (!dec.framing.is_integer())
      throw DiagramError("surgered presentation: integer framings required");
    if (!dec.bracketed) continue;
    p.relators.push_back(longitude_word(d, k, dec.framing.p, cls));
  }
  return p;
}

// ---- Tietze simplification with a replayable certificate -----------------------

struct TietzeStep {
  enum Kind { Normalize, Eliminate, Combine } kind = Normalize;
  int relator = -1;   // Eliminate: relator consumed; Combine: relator rewritten
  int gen = -1;       // Eliminate: generator removed (0-based)
  int other = -1;     // Combine: relator multiplied in
  int shift = 0;      // Combine: cyclic shift applied to `other`
  int exponent = 0;   // Combine: +1 or -1
};

struct TietzeCertificate {
  std::vector<TietzeStep> steps;
};

namespace detail {

inline void apply_normalize(GroupPresentation& p) {
  for (Word& r : p.relators) r = cyclic_reduce(r);
  p.relators.erase(std::remove_if(p.relators.begin(), p.relators.end(),
                                  [](const Word& w) { return w.empty(); }),
                   p.relators.end());
  std::sort(p.relators.begin(), p.relators.end(), [](const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
}

inline void substitute(Word& w, int gen1, const Word& repl) {
  Word out;
  Word repl_inv = word_inverse(repl);
  for (int x : w) {
    if (x == gen1) out.insert(out.end(), repl.begin(), repl.end());
    else if (x == -gen1) out.insert(out.end(), repl_inv.begin(), repl_inv.end());
    else out.push_back(x);
  }
  w = free_reduce(out);
}

inline void drop_generator(GroupPresentation& p, int gen0) {
  for (Word& r : p.relators)
    for (int& x : r) {
      int g = std::abs(x) - 1;
      if (g > gen0) x = x > 0 ? x - 1 : x + 1;
      else if (g == gen0) throw std::logic_error("tietze: dropped generator still used");
    }
  --p.generators;
  if (gen0 < static_cast<int>(p.gen_names.size())) p.gen_names.erase(p.gen_names.begin() + gen0);
}

inline bool apply_eliminate(GroupPresentation& p, int relator, int gen0) {
  if (relator < 0 || relator >= static_cast<int>(p.relators.size())) return false;
  Word r = p.relators[relator];
  int pos = -1, occurrences = 0;
  for (size_t i = 0; i < r.size(); ++i)
    if (std::abs(r[i]) - 1 == gen0) { pos = static_cast<int>(i); ++occurrences; }
  if (occurrences != 1) return false;
  // r = u g^e v = 1  =>  g^e = u^-1 v^-1, g = (v u)^-e
  Word u(r.begin(), r.begin() + pos), v(r.begin() + pos + 1, r.end());
  Word vu = v;
  vu.insert(vu.end(), u.begin(), u.end());
  Word repl = r[pos] > 0 ? word_inverse(vu) : vu;
  p.relators.erase(p.relators.begin() + relator);
  for (Word& w : p.relators) substitute(w, gen0 + 1, repl);
  drop_generator(p, gen0);
  return true;
}

inline bool apply_combine(GroupPresentation& p, int i, int j, int shift, int exponent) {
  if (i < 0 || j < 0 || i == j || i >= static_cast<int>(p.relators.size()) ||
      j >= static_cast<int>(p.relators.size()))
    return false;
  Word rj = p.relators[j];
  if (rj.empty()) return false;
  std::rotate(rj.begin(), rj.begin() + (shift % static_cast<int>(rj.size())), rj.end());
  if (exponent < 0) rj = word_inverse(rj);
  Word combined = p.relators[i];
  combined.insert(combined.end(), rj.begin(), rj.end());
  combined = cyclic_reduce(combined);
  if (combined.size() >= p.relators[i].size()) return false;
  p.relators[i] = combined;
  return true;
}

}  // namespace detail

struct TietzeResult {
  GroupPresentation presentation;
  TietzeCertificate certificate;
  long long steps_used = 0;
};

// deterministic greedy simplification: eliminate single-occurrence
// generators (shortest relator first), then shorten relators against each
// other; budget counts elementary operations
inline TietzeResult tietze_simplify(const GroupPresentation& input, long long budget = 100000) {
  TietzeResult res;
  GroupPresentation& p = res.presentation;
  p = input;
  if (budget <= 0) return res;  // no moves allowed: input comes back untouched
  auto log_and = [&](TietzeStep s) { res.certificate.steps.push_back(s); };
  detail::apply_normalize(p);
  log_and(TietzeStep{TietzeStep::Normalize});
  bool progress = true;
  while (progress && res.steps_used < budget) {
    progress = false;
    // eliminate: scan relators shortest-first, lowest generator first
    for (size_t ri = 0; ri < p.relators.size() && res.steps_used < budget; ++ri) {
      std::map<int, int> occ;
      for (int x : p.relators[ri]) occ[std::abs(x) - 1]++;
      int gen0 = -1;
      for (auto [g, n] : occ)
        if (n == 1) { gen0 = g; break; }
      if (gen0 < 0) continue;
      ++res.steps_used;
      if (detail::apply_eliminate(p, static_cast<int>(ri), gen0)) {
        log_and(TietzeStep{TietzeStep::Eliminate, static_cast<int>(ri), gen0});
        detail::apply_normalize(p);
        log_and(TietzeStep{TietzeStep::Normalize});
        progress = true;
        break;
      }
    }
    if (progress) continue;
    // combine: first strictly shortening product wins (deterministic scan)
    for (size_t i = 0; i < p.relators.size() && !progress; ++i)
      for (size_t j = 0; j < p.relators.size() && !progress; ++j) {
        if (i == j) continue;
        int len_j = static_cast<int>(p.relators[j].size());
        for (int shift = 0; shift < len_j && !progress; ++shift)
          for (int e : {1, -1}) {
            if (res.steps_used >= budget) break;
            ++res.steps_used;
            GroupPresentation trial = p;
            if (detail::apply_combine(trial, static_cast<int>(i), static_cast<int>(j), shift, e)) {
              p = trial;
              log_and(TietzeStep{TietzeStep::Combine, static_cast<int>(i), -1,
                                 static_cast<int>(j), shift, e});
              detail::apply_normalize(p);
              log_and(TietzeStep{TietzeStep::Normalize});
              progress = true;
              break;
            }
          }
      }
  }
  return res;
}

// replay a certificate from the original input; throws when a step no longer
// applies, so a valid certificate reproduces the output exactly
inline GroupPresentation replay_tietze(const GroupPresentation& input,
                                       const TietzeCertificate& cert) {
  GroupPresentation p = input;
  for (const TietzeStep& s : cert.steps) {
    switch (s.kind) {
      case TietzeStep::Normalize:
        detail::apply_normalize(p);
        break;
      case TietzeStep::Eliminate:
        if (!detail::apply_eliminate(p, s.relator, s.gen))
          throw std::logic_error("tietze replay: eliminate step does not apply");
        break;
      case TietzeStep::Combine:
        if (!detail::apply_combine(p, s.relator, s.other, s.shift, s.exponent))
          throw std::logic_error("tietze replay: combine step does not apply");
        break;
    }
  }
  return p;
}

enum class FreeCertificate { Yes, Inconclusive };

struct CertifyFreeResult {
  FreeCertificate verdict = FreeCertificate::Inconclusive;
  TietzeCertificate certificate;
  AbelianInvariants abelianization;
  GroupPresentation simplified;
};

// `yes` only with a full Tietze reduction to <x1..xn | >; the abelianization
// must be Z^n as well (cheap obstruction first). Never answers `no`.
inline CertifyFreeResult certify_free(const GroupPresentation& p, int rank,
                                      long long budget = 100000) {
  CertifyFreeResult res;
  res.abelianization = p.abelianization();
  if (!res.abelianization.is_free_of_rank(rank)) return res;  // rank obstruction
  TietzeResult t = tietze_simplify(p, budget);
  res.certificate = t.certificate;
  res.simplified = t.presentation;
  if (t.presentation.relators.empty() && t.presentation.generators == rank) {
    if (replay_tietze(p, t.certificate) == t.presentation)
      res.verdict = FreeCertificate::Yes;
  }
  return res;
}

}  // namespace kirbycalc
