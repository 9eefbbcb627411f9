#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "kirbycalc/build.hpp"
#include "kirbycalc/homology.hpp"
#include "kirbycalc/pi1.hpp"

using namespace kirbycalc;

namespace {

LinkDiagram right_trefoil() { return braid_closure(2, braid_word({1, 1, 1})); }
LinkDiagram hopf_positive() { return braid_closure(2, braid_word({1, 1})); }

ComponentDecor surgery(long long p) { return ComponentDecor{Framing::integer(p), false, true}; }

}  // namespace

TEST_CASE("wirtinger of the crossingless unknot") {
  GroupPresentation p = wirtinger(unknot_loop());
  CHECK(p.generators == 1);
  CHECK(p.relators.empty());
  CHECK(p.abelianization() == AbelianInvariants{1, {}});
}

TEST_CASE("wirtinger of the hopf link simplifies to the commutator") {
  GroupPresentation p = wirtinger(hopf_positive());
  CHECK(p.generators == 2);
  CHECK(p.relators.size() == 2);
  CHECK(p.abelianization() == AbelianInvariants{2, {}});
  TietzeResult t = tietze_simplify(p);
  CHECK(t.presentation.generators == 2);
  REQUIRE(t.presentation.relators.size() == 1);
  CHECK(t.presentation.relators[0].size() == 4);  // the commutator
  CHECK(replay_tietze(p, t.certificate) == t.presentation);
}

TEST_CASE("wirtinger trefoil simplifies to two generators") {
  GroupPresentation p = wirtinger(right_trefoil());
  CHECK(p.generators == 3);
  CHECK(p.relators.size() == 3);
  CHECK(p.abelianization() == AbelianInvariants{1, {}});
  TietzeResult t = tietze_simplify(p);
  CHECK(t.presentation.generators == 2);
  REQUIRE(t.presentation.relators.size() == 1);
  CHECK(t.presentation.relators[0].size() == 6);  // aba = bab
  CHECK(replay_tietze(p, t.certificate) == t.presentation);
}

TEST_CASE("tietze handles the toy example and the zero budget") {
  GroupPresentation p;
  p.generators = 2;
  p.relators = {Word{2}};  // < a, b | b >
  TietzeResult t = tietze_simplify(p);
  CHECK(t.presentation.generators == 1);
  CHECK(t.presentation.relators.empty());
  TietzeResult frozen = tietze_simplify(p, 0);
  CHECK(frozen.presentation == p);
  CHECK(frozen.certificate.steps.empty());
}

TEST_CASE("surgered presentations of simple surgeries") {
  // 0-surgery on the unknot: free of rank 1
  LinkDiagram u0 = unknot_loop(surgery(0));
  GroupPresentation p0 = surgered_presentation(u0);
  CertifyFreeResult r0 = certify_free(p0, 1);
  CHECK(r0.verdict == FreeCertificate::Yes);
  // <1>-surgery on the unknot: the trivial group (free of rank 0)
  LinkDiagram u1 = unknot_loop(surgery(1));
  GroupPresentation p1 = surgered_presentation(u1);
  CertifyFreeResult r1 = certify_free(p1, 0);
  CHECK(r1.verdict == FreeCertificate::Yes);
  // 0-surgery on the 2-component unlink: free of rank 2
  LinkDiagram u2 = disjoint_union(unknot_loop(surgery(0)), unknot_loop(surgery(0)));
  CertifyFreeResult r2 = certify_free(surgered_presentation(u2), 2);
  CHECK(r2.verdict == FreeCertificate::Yes);
}

TEST_CASE("0-framed trefoil surgery is inconclusive but has cyclic homology") {
  LinkDiagram t = right_trefoil();
  t.comps[0] = surgery(0);
  GroupPresentation p = surgered_presentation(t);
  CHECK(p.abelianization() == AbelianInvariants{1, {}});
  CertifyFreeResult r = certify_free(p, 1, 20000);
  CHECK(r.verdict == FreeCertificate::Inconclusive);
}

TEST_CASE("rank mismatch short-circuits to inconclusive") {
  GroupPresentation p = wirtinger(hopf_positive());  // abelianization Z^2
  CertifyFreeResult r = certify_free(p, 3, 1);
  CHECK(r.verdict == FreeCertificate::Inconclusive);
  CHECK(r.certificate.steps.empty());  // the homology obstruction fired first
}

TEST_CASE("longitude abelianization matches the surgery presentation") {
  std::mt19937_64 rng(13);
  int tested = 0;
  while (tested < 25) {
    int strands = 2 + static_cast<int>(rng() % 3);
    int len = 2 + static_cast<int>(rng() % 7);
    std::vector<BraidLetter> w;
    for (int i = 0; i < len; ++i)
      w.push_back({1 + static_cast<int>(rng() % (strands - 1)), (rng() & 1) ? 1 : -1});
    LinkDiagram d = braid_closure(strands, w);
    for (int k = 0; k < d.component_count(); ++k)
      d.comps[k] = surgery(static_cast<long long>(rng() % 7) - 3);
    ++tested;
    GroupPresentation p = surgered_presentation(d);
    CHECK(p.abelianization() == h1_of_surgery(d));
    // and wirtinger alone abelianizes to Z^components
    GroupPresentation wp = wirtinger(d);
    CHECK(wp.abelianization() == AbelianInvariants{d.component_count(), {}});
  }
}

TEST_CASE("certificates replay for random simplifications") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    int strands = 2 + static_cast<int>(rng() % 2);
    int len = 2 + static_cast<int>(rng() % 6);
    std::vector<BraidLetter> w;
    for (int i = 0; i < len; ++i)
      w.push_back({1 + static_cast<int>(rng() % (strands - 1)), (rng() & 1) ? 1 : -1});
    LinkDiagram d = braid_closure(strands, w);
    GroupPresentation p = wirtinger(d);
    TietzeResult t = tietze_simplify(p, 20000);
    CHECK(replay_tietze(p, t.certificate) == t.presentation);
    CHECK(t.presentation.abelianization() == p.abelianization());
  }
}
