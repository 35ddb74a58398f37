#include "tfib/monodromy.hpp"

#include <algorithm>
#include <array>

namespace tfib {

std::string_view to_string(FiberKind kind) {
  switch (kind) {
    case FiberKind::Nonsingular: return "NONSINGULAR";
    case FiberKind::T22: return "T22";
    case FiberKind::T21: return "T21";
    case FiberKind::T12: return "T12";
    case FiberKind::T11: return "T11";
    case FiberKind::I1_2D: return "I1_2D";
    case FiberKind::SphereTr1: return "SPHERE_TR1";
    case FiberKind::SphereTr3: return "SPHERE_TR3";
    case FiberKind::NotWellBehaved: return "NOT_WELL_BEHAVED";
  }
  return "NOT_WELL_BEHAVED";
}

std::optional<FiberKind> fiber_kind_from_string(std::string_view name) {
  for (FiberKind k : {FiberKind::Nonsingular, FiberKind::T22, FiberKind::T21, FiberKind::T12, FiberKind::T11,
                      FiberKind::I1_2D, FiberKind::SphereTr1, FiberKind::SphereTr3, FiberKind::NotWellBehaved})
    if (to_string(k) == name) return k;
  return std::nullopt;
}

namespace {

void require_square(const IntMatrix& T, std::size_t n, const char* what) {
  if (T.rows() != n || T.cols() != n)
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " expects a " + std::to_string(n) + "x" +
                                                std::to_string(n) + " matrix, got " + T.to_string());
}

void require_det_one(const IntMatrix& T) {
  if (determinant(T) != 1) throw Error(ErrorCode::DeterminantNotOne, "det != 1 for " + T.to_string());
}

bool all_units(const std::vector<Integer>& ed, std::size_t expected) {
  return ed.size() == expected && std::all_of(ed.begin(), ed.end(), [](const Integer& d) { return d == 1; });
}

IntMatrix product(const std::vector<IntMatrix>& Ts) {
  IntMatrix P = IntMatrix::identity(Ts.front().rows());
  for (const auto& T : Ts) P = P * T;
  return P;
}

IntMatrix columns3(const LatticeVector& a, const LatticeVector& b, const LatticeVector& c) {
  return IntMatrix::from_columns({a, b, c});
}

IntMatrix fix_orientation(IntMatrix P) {
  if (determinant(P) < 0) P = -P;
  return P;
}

bool conjugates_to(const IntMatrix& P, const std::vector<IntMatrix>& tuple, const std::vector<IntMatrix>& nf) {
  if (!is_unimodular(P)) return false;
  IntMatrix Pinv = inverse_unimodular(P);
  for (std::size_t i = 0; i < tuple.size(); ++i)
    if (!(Pinv * tuple[i] * P == nf[i])) return false;
  return true;
}

// x with phi . x == 1 for a primitive functional phi.
LatticeVector unit_preimage(const LatticeVector& phi) {
  auto x = solve_integer(IntMatrix::from_rows({phi}), {Integer(1)});
  if (!x) throw Error(ErrorCode::Internal, "functional " + to_string(phi) + " is not primitive");
  return *x;
}

IntMatrix normalize_t22(const IntMatrix& T) {
  const IntMatrix N = T - IntMatrix::identity(3);
  std::size_t col = 0;
  while (col < 3 && content(N.column(col)) == 0) ++col;
  LatticeVector w = N.column(col);
  const Integer g = content(w);
  for (auto& x : w) x /= g;
  std::size_t r = 0;
  while (w[r] == 0) ++r;
  LatticeVector phi(3);
  for (std::size_t j = 0; j < 3; ++j) phi[j] = N(r, j) / w[r];
  const LatticeVector v3 = unit_preimage(phi);
  const auto K = kernel_saturated(IntMatrix::from_rows({phi}));
  // Complete w to a basis (w, v2) of ker phi.
  const IntMatrix Kc = IntMatrix::from_columns(K);
  auto coords = solve_integer(Kc, w);
  if (!coords) throw Error(ErrorCode::Internal, "T22 image not in kernel");
  Integer s, t;
  Integer gg;
  mpz_gcdext(gg.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), (*coords)[0].get_mpz_t(), (*coords)[1].get_mpz_t());
  if (gg != 1) throw Error(ErrorCode::NotWellBehaved, "T22 generator is not primitive");
  // alpha*delta - beta*gamma = 1 with (gamma, delta) = (-t, s).
  LatticeVector v2(3);
  for (std::size_t j = 0; j < 3; ++j) v2[j] = -t * K[0][j] + s * K[1][j];
  return fix_orientation(columns3(w, v2, v3));
}

IntMatrix normalize_t12(const std::vector<IntMatrix>& Ts) {
  const IntMatrix I = IntMatrix::identity(3);
  std::vector<IntMatrix> Ns;
  for (const auto& T : Ts) Ns.push_back(T - I);
  const auto K = kernel_saturated(vstack(Ns));
  const auto Phi = kernel_saturated(IntMatrix::from_rows(K));
  const LatticeVector v3 = unit_preimage(Phi.front());
  return fix_orientation(columns3(Ns[0] * v3, Ns[1] * v3, v3));
}

struct Unitriangular {
  Integer a, b, c;
};

Unitriangular entries(const IntMatrix& U) { return {U(0, 1), U(0, 2), U(1, 2)}; }

std::optional<IntMatrix> try_normalize_t11(const IntMatrix& F, const std::vector<IntMatrix>& tuple,
                                           Integer& a_out) {
  const IntMatrix Finv = inverse_unimodular(F);
  const auto t1 = entries(Finv * tuple[0] * F);
  const auto t2 = entries(Finv * tuple[1] * F);
  const LatticeVector u3{Integer(0), -t1.a * t1.b, Integer(1)};
  const LatticeVector u2{t2.b, t2.c, Integer(0)};
  const LatticeVector u1{t1.a * t2.c, Integer(0), Integer(0)};
  const IntMatrix Pp = columns3(u1, u2, u3);
  if (!is_unimodular(Pp)) return std::nullopt;
  const IntMatrix P = fix_orientation(F * Pp);
  const IntMatrix Pinv = inverse_unimodular(P);
  const Integer a = (Pinv * tuple[2] * P)(0, 2);
  if (!conjugates_to(P, tuple, normal_form_tuple(FiberKind::T11, a))) return std::nullopt;
  a_out = a;
  return P;
}

}  // namespace

std::vector<IntMatrix> normal_form_tuple(FiberKind kind, const Integer& a) {
  const IntMatrix e13{{1, 0, 1}, {0, 1, 0}, {0, 0, 1}};
  const IntMatrix e23{{1, 0, 0}, {0, 1, 1}, {0, 0, 1}};
  const IntMatrix inv{{1, 0, -1}, {0, 1, -1}, {0, 0, 1}};
  switch (kind) {
    case FiberKind::T22: return {e13, IntMatrix{{1, 0, -1}, {0, 1, 0}, {0, 0, 1}}};
    case FiberKind::T12: return {e13, e23, inv};
    case FiberKind::T21: return {e13.transpose(), e23.transpose(), inv.transpose()};
    case FiberKind::T11: {
      IntMatrix t3{{1, -1, 0}, {0, 1, 0}, {0, 0, 1}};
      t3(0, 2) = a;
      IntMatrix t4{{1, 0, 0}, {0, 1, -1}, {0, 0, 1}};
      t4(0, 2) = -a - 1;
      return {IntMatrix{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}, e23, t3, t4};
    }
    default: throw Error(ErrorCode::InvalidArgument, "no vertex normal form for " + std::string(to_string(kind)));
  }
}

FiberType classify_edge_2d(const IntMatrix& T) {
  require_square(T, 2, "classify_edge_2d");
  require_det_one(T);
  if (T.is_identity()) return {FiberKind::Nonsingular};
  if (is_unipotent(T))
    return {content(T - IntMatrix::identity(2)) == 1 ? FiberKind::I1_2D : FiberKind::NotWellBehaved};
  const Integer tr = trace(T);
  if (tr == 1) return {FiberKind::SphereTr1};
  if (tr == 3) return {FiberKind::SphereTr3};
  return {FiberKind::NotWellBehaved};
}

FiberType classify_edge_3d(const IntMatrix& T) {
  require_square(T, 3, "classify_edge_3d");
  require_det_one(T);
  if (T.is_identity()) return {FiberKind::Nonsingular, 3, 3};
  const IntMatrix N = T - IntMatrix::identity(3);
  if (is_unipotent(T)) {
    if ((N * N).is_zero() && kernel_saturated(N).size() == 2 && content(N) == 1) return {FiberKind::T22, 2, 2};
    return {FiberKind::NotWellBehaved};
  }
  if (kernel_saturated(N).size() == 1) {
    // Trace of the induced action on the rank-2 quotient.
    const Integer tr = trace(T) - 1;
    if (tr == 1) return {FiberKind::SphereTr1};
    if (tr == 3) return {FiberKind::SphereTr3};
  }
  return {FiberKind::NotWellBehaved};
}

IntMatrix flag_basis(const std::vector<IntMatrix>& generators) {
  const IntMatrix I = IntMatrix::identity(3);
  std::vector<IntMatrix> Ns;
  for (const auto& T : generators) Ns.push_back(T - I);
  const auto K1 = kernel_saturated(vstack(Ns));
  if (K1.size() != 1) throw Error(ErrorCode::NotWellBehaved, "flag basis needs a rank-1 invariant sublattice");
  const IntMatrix B = complete_to_basis(K1, 3).transpose();
  const IntMatrix Binv = inverse_unimodular(B);
  std::vector<IntMatrix> lower;
  for (const auto& T : generators) {
    const IntMatrix M = Binv * T * B - I;
    IntMatrix rows(2, 3);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 3; ++j) rows(i, j) = M(i + 1, j);
    lower.push_back(rows);
  }
  const auto K2 = kernel_saturated(vstack(lower));
  if (K2.size() != 2) throw Error(ErrorCode::NotWellBehaved, "flag basis needs a rank-2 invariant flag");
  const LatticeVector* k = nullptr;
  for (const auto& v : K2)
    if (v[1] != 0 || v[2] != 0) k = &v;
  const Integer g = gcd((*k)[1], (*k)[2]);
  const Integer p = (*k)[1] / g;
  const Integer q = (*k)[2] / g;
  Integer gg, x, y;
  mpz_gcdext(gg.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
  IntMatrix C = I;
  C(1, 1) = p;
  C(2, 1) = q;
  C(1, 2) = -y;
  C(2, 2) = x;
  const IntMatrix F = B * C;
  const IntMatrix Finv = inverse_unimodular(F);
  for (const auto& T : generators) {
    const IntMatrix U = Finv * T * F;
    if (U(1, 0) != 0 || U(2, 0) != 0 || U(2, 1) != 0)
      throw Error(ErrorCode::Internal, "flag basis failed to triangularize " + T.to_string());
  }
  return F;
}

FiberType fiber_type(const MonodromyRep& rep) {
  if (rep.dimension != 3) throw Error(ErrorCode::InvalidArgument, "fiber_type is defined for 3D representations");
  if (rep.generators.empty()) throw Error(ErrorCode::InvalidArgument, "empty monodromy representation");
  const IntMatrix I = IntMatrix::identity(3);
  for (const auto& T : rep.generators) {
    require_square(T, 3, "fiber_type");
    require_det_one(T);
    if (!is_unipotent(T)) throw Error(ErrorCode::SemistableRequired, "generator " + T.to_string() + " is not unipotent");
  }
  if (std::all_of(rep.generators.begin(), rep.generators.end(), [](const IntMatrix& T) { return T.is_identity(); }))
    return {FiberKind::Nonsingular, 3, 3};

  std::vector<IntMatrix> Ns, Nts;
  for (const auto& T : rep.generators) {
    Ns.push_back(T - I);
    Nts.push_back(T.transpose() - I);
  }
  const IntMatrix S = vstack(Ns);
  const IntMatrix St = vstack(Nts);
  FiberType ft;
  ft.b2 = static_cast<int>(kernel_saturated(S).size());
  ft.b1 = static_cast<int>(kernel_saturated(St).size());
  // Z/n-simplicity: invariants mod n have the same rank as over Z.
  if (!all_units(elementary_divisors(S), 3 - ft.b2) || !all_units(elementary_divisors(St), 3 - ft.b1)) return ft;

  if (ft.b1 == 2 && ft.b2 == 2) {
    std::vector<LatticeVector> flat;
    for (const auto& N : Ns) {
      LatticeVector v;
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) v.push_back(N(i, j));
      flat.push_back(v);
    }
    if (rank(IntMatrix::from_rows(flat)) == 1) ft.kind = FiberKind::T22;
  } else if (ft.b1 == 2 && ft.b2 == 1) {
    ft.kind = FiberKind::T21;
  } else if (ft.b1 == 1 && ft.b2 == 2) {
    ft.kind = FiberKind::T12;
  } else if (ft.b1 == 1 && ft.b2 == 1) {
    // G equals the full Heisenberg group iff its abelianized image is Z^2.
    const IntMatrix F = flag_basis(rep.generators);
    const IntMatrix Finv = inverse_unimodular(F);
    std::vector<LatticeVector> psi;
    for (const auto& T : rep.generators) {
      const IntMatrix U = Finv * T * F;
      psi.push_back({U(0, 1), U(1, 2)});
    }
    if (all_units(elementary_divisors(IntMatrix::from_rows(psi)), 2)) ft.kind = FiberKind::T11;
  }
  return ft;
}

VertexProfile vertex_profile(const std::vector<IntMatrix>& ordered) {
  const std::size_t n = ordered.size();
  if (n < 2 || n > 4) throw Error(ErrorCode::ValencyMismatch, "vertex valency " + std::to_string(n) + " outside [2,4]");
  for (const auto& T : ordered) {
    require_square(T, 3, "vertex_profile");
    if (!is_unimodular(T)) throw Error(ErrorCode::NotUnimodular, "generator " + T.to_string() + " is not unimodular");
    require_det_one(T);
  }
  if (!product(ordered).is_identity())
    throw Error(ErrorCode::RelationViolated, "ordered product is " + product(ordered).to_string());

  VertexProfile vp;
  vp.type = fiber_type(MonodromyRep{3, ordered, ""});
  vp.valency = n;
  const FiberKind kind = vp.type.kind;
  if (kind == FiberKind::NotWellBehaved)
    throw Error(ErrorCode::NotWellBehaved, "local monodromy group is not one of the semistable families");
  const std::size_t expected = kind == FiberKind::T22 ? 2 : kind == FiberKind::T11 ? 4 : kind == FiberKind::Nonsingular ? 0 : 3;
  if (expected != n)
    throw Error(ErrorCode::ValencyMismatch,
                std::string(to_string(kind)) + " vertex needs valency " + std::to_string(expected) + ", got " +
                    std::to_string(n));

  vp.presented = ordered;
  switch (kind) {
    case FiberKind::T22: vp.basis_change = normalize_t22(ordered[0]); break;
    case FiberKind::T12: vp.basis_change = normalize_t12(ordered); break;
    case FiberKind::T21: {
      std::vector<IntMatrix> tr;
      for (const auto& T : ordered) tr.push_back(T.transpose());
      vp.basis_change = transpose_inverse(normalize_t12(tr));
      break;
    }
    case FiberKind::T11: {
      const IntMatrix F = flag_basis(ordered);
      const IntMatrix Finv = inverse_unimodular(F);
      auto pattern = [&](const std::vector<IntMatrix>& tuple) {
        std::string s;
        for (const auto& T : tuple) {
          const auto e = entries(Finv * T * F);
          s += (e.c == 0 && e.a != 0) ? 'X' : (e.a == 0 && e.c != 0) ? 'Y' : '?';
        }
        return s;
      };
      bool found = false;
      for (std::size_t r = 0; r < 4 && !found; ++r) {
        std::vector<IntMatrix> rot(ordered.begin() + r, ordered.end());
        rot.insert(rot.end(), ordered.begin(), ordered.begin() + r);
        const std::string pat = pattern(rot);
        bool braid = false;
        if (pat == "XXYY") {
          // Hurwitz move (A, B) -> (A B A^{-1}, A) on positions 1, 2 keeps the product.
          const IntMatrix A = rot[1];
          rot[1] = A * rot[2] * inverse_unimodular(A);
          rot[2] = A;
          braid = true;
        } else if (pat != "XYXY") {
          continue;
        }
        Integer a;
        if (auto P = try_normalize_t11(F, rot, a)) {
          vp.basis_change = *P;
          vp.parameter_a = a;
          vp.presented = rot;
          vp.rotation = r;
          vp.braid_move = braid;
          found = true;
        }
      }
      if (!found) throw Error(ErrorCode::NotWellBehaved, "no relabelling reaches the (1,1) normal form");
      break;
    }
    default: throw Error(ErrorCode::ValencyMismatch, "trivial monodromy at a vertex");
  }
  vp.normal_form = normal_form_tuple(kind, vp.parameter_a.value_or(0));
  if (!conjugates_to(vp.basis_change, vp.presented, vp.normal_form))
    throw Error(ErrorCode::Internal, "normal form verification failed");
  return vp;
}

MonodromyRep dual_rep(const MonodromyRep& rep) {
  MonodromyRep out;
  out.dimension = rep.dimension;
  for (const auto& T : rep.generators) out.generators.push_back(transpose_inverse(T));
  const std::string suffix = "^*";
  if (rep.basis_label.size() >= suffix.size() &&
      rep.basis_label.compare(rep.basis_label.size() - suffix.size(), suffix.size(), suffix) == 0)
    out.basis_label = rep.basis_label.substr(0, rep.basis_label.size() - suffix.size());
  else
    out.basis_label = rep.basis_label + suffix;
  return out;
}

}  // namespace tfib
