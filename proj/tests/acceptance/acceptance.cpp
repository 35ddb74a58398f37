#include <algorithm>
#include <array>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"
#include "tfib/chern.hpp"
#include "tfib/fibration.hpp"
#include "tfib/intersection.hpp"
#include "tfib/lattice.hpp"
#include "tfib/monodromy.hpp"
#include "tfib/quintic.hpp"
#include "tfib/random.hpp"
#include "tfib/toric.hpp"

using namespace tfib;
namespace ix = tfib::intersection;
namespace q = tfib::quintic;
using tfib::testing::kSeed;

namespace {

// Collects the first failing check of a criterion.
class Criterion {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok && failure_.empty()) failure_ = what;
  }
  bool passed() const { return failure_.empty(); }
  const std::string& failure() const { return failure_; }

 private:
  std::string failure_;
};

std::string csv(const ix::CubicForm& f) {
  std::ostringstream os;
  for (const auto& [t, v] : f.entries()) os << t[0] << "," << t[1] << "," << t[2] << "," << v << "\n";
  return os.str();
}

const FibrationGraph& quintic_graph() {
  static const FibrationGraph g = q::build_quintic_fibration();
  return g;
}

const ix::CubicForm& cubic() {
  static const ix::CubicForm f = ix::cubic_form_table();
  return f;
}

void quintic_pipeline(Criterion& c) {
  const auto& g = quintic_graph();
  c.require(validate(g).ok(), "quintic graph fails validation");
  const auto census_ = census(g);
  c.require(census_.count(FiberKind::T12) == 50, "T12 count is not 50");
  c.require(census_.count(FiberKind::T21) == 250, "T21 count is not 250");
  c.require(census_.count(FiberKind::T11) == 0 && census_.count(FiberKind::T22) == 0, "unexpected vertex kinds");
  c.require(euler_characteristic(g) == -200, "chi is not -200");
  c.require(10 * 5 - 10 * 25 == -200, "face and edge contributions");
  c.require(is_simply_connected(g), "simple connectivity fails");
  std::size_t face_surfaces = 0;
  for (const auto& s : critical_surface_stats(g)) {
    if (s.vertices.size() != 25) continue;
    ++face_surfaces;
    c.require(s.genus == 6 && s.punctures == 15, "face surface is not (6, 15)");
  }
  c.require(face_surfaces == 10, "expected 10 face surfaces");
}

void monodromy_formula(Criterion& c) {
  using namespace tfib::testing::charts;
  std::size_t triples = 0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      for (int k = 0; k < 5; ++k) {
        if (i == j || j == k || i == k) continue;
        ++triples;
        const auto [l, m] = complement(i, j, k);
        Vec5 expected_j = unit(j);
        expected_j[m] += 5;
        c.require(same_class(l, composite(i, j, l, m, unit(j)), expected_j), "oracle: e_j is not sent to e_j + 5 e_m");
        c.require(same_class(l, composite(i, j, l, m, unit(k)), unit(k)), "oracle: e_k is not fixed");
        c.require(same_class(l, composite(i, j, l, m, unit(m)), unit(m)), "oracle: e_m is not fixed");
        const auto em = q::edge_monodromy(i, j, k);
        c.require(em.matches_closed_form, "composite does not match the closed form");
        c.require(em.in_face_basis == q::closed_form(), "face-basis matrix differs from the closed form");
        const IntMatrix P = q::projection(l);
        for (int a = 0; a < 5; ++a)
          c.require(em.composite * (P * to_lattice(unit(a))) == P * to_lattice(composite(i, j, l, m, unit(a))),
                    "library composite differs from the oracle");
      }
  c.require(triples == 60, "expected 60 ordered triples");
  const auto checks = q::leg_product_checks(quintic_graph());
  c.require(checks.size() == 30, "expected 30 face sides");
  for (const auto& lp : checks) {
    c.require(lp.equals_chart_composite, "leg product differs from the chart composite");
    c.require(lp.factor_five, "leg product lacks the factor 5");
  }
}

void mirror_invariants(Criterion& c) {
  const auto m = q::build_mirror_fibration(quintic_graph());
  c.require(validate(m.graph).ok(), "mirror graph fails validation");
  const auto census_ = census(m.graph);
  c.require(census_.count(FiberKind::T12) == 250 && census_.count(FiberKind::T21) == 50, "census not swapped");
  c.require(euler_characteristic(m.graph) == 200, "mirror chi is not 200");
  const auto rank = ix::rank_and_radical(cubic());
  c.require(rank.rank == 101, "intersection rank is not 101");
  c.require(m.b2 == static_cast<long>(rank.rank), "b2 disagrees with the intersection rank");
  const long b3 = 2 + 2 * static_cast<long>(rank.rank) - euler_characteristic(m.graph);
  c.require(b3 == 4 && m.b3 == 4, "b3 is not 4");
}

void intersection_suite(Criterion& c) {
  const LatticeVector H = ix::hyperplane_class();
  c.require(cubic().eval(H, H, H) == 5, "H^3 is not 5");
  const auto rank = ix::rank_and_radical(cubic());
  c.require(rank.rank == 101, "rank is not 101");
  c.require(rank.radical_rank == 4, "radical is not 4");
  const auto sat = ix::saturation_quotient(cubic());
  c.require(sat.group() == "(Z/5)^4" && sat.order == 625, "saturation is not (Z/5)^4");
  c.require(sat.generated_by_l, "saturation not generated by L_0..L_4");
  const auto z5 = ix::z5_cochain_check();
  c.require(z5.complex && z5.exact, "Z/5 cochains are not exact at C^1");
  c.require(z5.ker_d1_dimension == 4, "ker d1 is not 4-dimensional");
  for (std::size_t d = 0; d < ix::kClassCount; ++d) {
    const auto idx = ix::index_consistency(cubic(), d);
    c.require(idx.ok, "index consistency fails for " + ix::divisor_name(d));
    c.require(3 * idx.index + idx.cube + 2 * idx.c2 == 0, "3I + D^3 + 2 c2.D != 0 for " + ix::divisor_name(d));
  }
  c.require(ix::c2(H) == 50, "H.c2 is not 50");
}

void classification_suite(Criterion& c) {
  std::mt19937_64 rng(kSeed);
  struct Family {
    FiberKind kind;
    Integer a;
  };
  for (const Family& fam : std::vector<Family>{{FiberKind::T22, 0}, {FiberKind::T21, 0}, {FiberKind::T12, 0},
                                               {FiberKind::T11, 0}, {FiberKind::T11, 3}, {FiberKind::T11, -2}}) {
    const auto nf = normal_form_tuple(fam.kind, fam.a);
    for (int trial = 0; trial < 200; ++trial) {
      IntMatrix P;
      const auto conj = tfib::testing::random_conjugate(nf, rng, &P);
      const auto vp = vertex_profile(conj);
      c.require(vp.type.kind == fam.kind, "conjugate classified as another kind");
      c.require(vp.normal_form == normal_form_tuple(fam.kind, vp.parameter_a.value_or(0)), "normal form not recovered");
      if (fam.kind == FiberKind::T11) c.require(vp.parameter_a == fam.a, "T11 parameter not recovered");
      const IntMatrix B = vp.basis_change, Binv = inverse_unimodular(B);
      for (std::size_t i = 0; i < vp.presented.size(); ++i)
        c.require(Binv * vp.presented[i] * B == vp.normal_form[i], "basis change does not conjugate to the normal form");
    }
  }
  const IntMatrix T22{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}};
  for (int trial = 0; trial < 200; ++trial)
    c.require(classify_edge_3d(tfib::testing::random_conjugate({T22}, rng)[0]).kind == FiberKind::T22,
              "T22 edge conjugate misclassified");
  const std::vector<std::pair<IntMatrix, FiberKind>> planar{{IntMatrix{{1, 1}, {0, 1}}, FiberKind::I1_2D},
                                                            {IntMatrix{{0, -1}, {1, 1}}, FiberKind::SphereTr1},
                                                            {IntMatrix{{0, -1}, {1, 3}}, FiberKind::SphereTr3}};
  for (const auto& [T, kind] : planar)
    for (int trial = 0; trial < 200; ++trial) {
      const IntMatrix G = random_unimodular(2, rng);
      c.require(classify_edge_2d(G * T * inverse_unimodular(G)).kind == kind, "planar conjugate misclassified");
    }
  // Exhaustive oracle: identity, trace 2 with primitive T - I, trace 1 or 3, otherwise not well behaved.
  std::size_t checked = 0;
  for (long a = -3; a <= 3; ++a)
    for (long b = -3; b <= 3; ++b)
      for (long cc = -3; cc <= 3; ++cc)
        for (long d = -3; d <= 3; ++d) {
          if (a * d - b * cc != 1) continue;
          ++checked;
          const IntMatrix T{{a, b}, {cc, d}};
          FiberKind expected = FiberKind::NotWellBehaved;
          if (a == 1 && b == 0 && cc == 0 && d == 1) {
            expected = FiberKind::Nonsingular;
          } else if (a + d == 2) {
            const long g = std::gcd(std::gcd(std::labs(a - 1), std::labs(b)), std::gcd(std::labs(cc), std::labs(d - 1)));
            expected = g == 1 ? FiberKind::I1_2D : FiberKind::NotWellBehaved;
          } else if (a + d == 1) {
            expected = FiberKind::SphereTr1;
          } else if (a + d == 3) {
            expected = FiberKind::SphereTr3;
          }
          c.require(classify_edge_2d(T).kind == expected, "2x2 oracle disagrees on " + T.to_string());
        }
  c.require(checked > 100, "2x2 oracle enumerated too few matrices");
}

void chern_toric_suite(Criterion& c) {
  const std::vector<std::pair<Triangulation, MirrorCurve>> cases{
      {unit_triangle(), {0, 3}}, {c3_z3(true), {1, 3}}, {dilated_triangle(5), {6, 15}}};
  for (const auto& [t, expected] : cases) {
    c.require(validate_chain(chern_chain_from_triangulation(t)).ok(), "chain fails validation");
    const auto curve = mirror_curve_stats(t);
    c.require(curve == expected, "mirror curve stats differ");
    const auto stats = critical_surface_stats(dualize(local_fibration(t)));
    c.require(stats.size() == 1, "dual local fibration has more than one critical surface");
    if (stats.size() == 1)
      c.require(stats[0].genus == curve.genus && stats[0].punctures == curve.punctures,
                "mirror curve differs from the critical surface");
  }
}

void flop_suite(Criterion& c) {
  const auto id = ix::interior_trapezoid();
  const auto rep = ix::flop(0, id);
  c.require(is_unimodular(rep.after) && rep.after_unimodular, "flipped triangulation is not unimodular");
  c.require(validate(local_fibration(rep.after)).ok(), "flipped local fibration fails validation");
  const ix::CubicForm before = ix::cubic_form_local_toric(rep.before);
  const ix::CubicForm after = ix::cubic_form_local_toric(rep.after);
  c.require(before != after, "local cubic form did not change");
  c.require(!rep.deltas.empty(), "no global triple changed");
  c.require(rep.rank_before.rank == rep.rank_after.rank && rep.rank_after.rank == 101, "rank changed");
  c.require(rep.rank_before.radical_rank == rep.rank_after.radical_rank && rep.rank_after.radical_rank == 4,
            "radical changed");
  const Triangulation back = flip_edge(rep.after, rep.new_diagonal.first, rep.new_diagonal.second);
  c.require(csv(ix::cubic_form_local_toric(back)) == csv(before), "double flip does not restore the local form");
  const auto& [p, q] = rep.old_diagonal;
  const auto& [r, s] = rep.new_diagonal;
  const std::array<int, 3> face = q::faces()[0];
  auto D = [&](std::size_t point) { return ix::face_triangulation_divisor(face, rep.before.model.points[point]); };
  const ix::CubicForm restored = ix::flop_form(rep.form_after, D(r), D(s), D(p), D(q));
  c.require(csv(restored) == csv(rep.form_before), "double flip does not restore the global form");
  c.require(rep.double_flip_restores, "report says the double flip does not restore");
}

void property_suites(Criterion& c) {
  std::mt19937_64 rng(kSeed + 8);
  for (int trial = 0; trial < 50; ++trial) {
    auto g = local_fibration(tfib::testing::random_triangulation(rng, 4));
    for (const auto& v : g.vertices) tfib::testing::regauge(g, v.id, random_unimodular(3, rng));
    c.require(validate(g).ok(), "regauged graph fails validation");
    const auto d = dualize(g);
    c.require(dualize(d) == g, "dualize is not an involution");
    c.require(euler_characteristic(d) == -euler_characteristic(g), "dualize does not negate chi");
    const MonodromyRep rep = tfib::testing::random_unipotent_rep(rng);
    c.require(dual_rep(dual_rep(rep)) == rep, "dual_rep is not an involution");
  }
  for (FiberKind kind : {FiberKind::T22, FiberKind::T21, FiberKind::T12, FiberKind::T11}) {
    const MonodromyRep nf{3, normal_form_tuple(kind, 1), "nf"};
    const FiberType t = fiber_type(nf);
    for (int trial = 0; trial < 50; ++trial)
      c.require(fiber_type({3, tfib::testing::random_conjugate(nf.generators, rng), "g"}) == t,
                "fiber type is not conjugation invariant");
  }
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t rows = static_cast<std::size_t>(tfib::testing::random_long(rng, 1, 4));
    const std::size_t cols = static_cast<std::size_t>(tfib::testing::random_long(rng, 1, 4));
    const IntMatrix A = tfib::testing::random_matrix(rng, rows, cols, -6, 6);
    const auto s = smith_normal_form(A);
    c.require(s.U * A * s.V == s.D, "U A V != D");
    c.require(is_unimodular(s.U) && is_unimodular(s.V), "SNF transforms are not unimodular");
    const auto diag = s.diagonal();
    Integer prefix = 1;
    for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
      if (k < diag.size() && diag[k - 1] != 0) c.require(diag[k] % diag[k - 1] == 0, "divisibility chain fails");
      prefix *= diag[k - 1];
      c.require(tfib::testing::minor_gcd(A, k) == prefix, "determinantal divisor disagrees");
    }
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Criterion&)>>> criteria{
      {"quintic pipeline: census 50/250, chi -200, simply connected, ten (6,15) face surfaces", quintic_pipeline},
      {"monodromy formula: 60 chart composites and the factor 5 on every side", monodromy_formula},
      {"mirror invariants: census swapped, chi 200, b2 101 by intersection rank, b3 4", mirror_invariants},
      {"intersection suite: H^3 5, rank 101, radical 4, (Z/5)^4 saturation, Z/5 cochains, index, H.c2 50",
       intersection_suite},
      {"classification suite: normal forms from 200 conjugates each and the 2x2 oracle", classification_suite},
      {"chern/toric suite: chains validate and mirror curves (0,3) (1,3) (6,15) match", chern_toric_suite},
      {"flop: revalidated flip changes the local form, keeps 101/4, double flip restores", flop_suite},
      {"property suites: duality involution, conjugation invariance, SNF", property_suites}};
  int failures = 0;
  for (std::size_t n = 0; n < criteria.size(); ++n) {
    Criterion c;
    try {
      criteria[n].second(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    std::cout << (c.passed() ? "PASS" : "FAIL") << " criterion " << n + 1 << ": " << criteria[n].first;
    if (!c.passed()) std::cout << " [" << c.failure() << "]";
    std::cout << "\n";
    failures += c.passed() ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
