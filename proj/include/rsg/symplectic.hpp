#pragma once

// Symplectic vector spaces over Q, coisotropic reduction, and constant
// Poisson bivectors induced through Libermann-type fibrations.
//
// Sign convention, used everywhere: the Hamiltonian vector field of a
// covector df is the unique X with omega(X, .) = df (no minus sign). With
// omega(u, v) = u^T Omega v this reads Omega^T X = df, and the induced
// bivector of the whole space is -Omega^{-1}.

#include <array>
#include <span>
#include <string>
#include <string_view>

#include "rsg/exact_linalg.hpp"

namespace rsg {

class SymplecticSpace {
 public:
  SymplecticSpace() = default;

  explicit SymplecticSpace(Matrix omega) : omega_(std::move(omega)) {
    if (omega_.rows() != omega_.cols()) throw Error("symplectic form must be square");
    if (!(omega_.transposed() == -omega_)) throw Error("symplectic form must be skew-symmetric");
    if (rank(omega_) != omega_.rows()) throw Error("symplectic form must be nondegenerate");
  }

  // Coordinates (q1, p1, ..., qn, pn) with omega(q_i, p_i) = 1.
  static SymplecticSpace standard(std::size_t pairs) {
    Matrix omega(2 * pairs, 2 * pairs);
    for (std::size_t i = 0; i < pairs; ++i) {
      omega(2 * i, 2 * i + 1) = 1;
      omega(2 * i + 1, 2 * i) = -1;
    }
    return SymplecticSpace(std::move(omega));
  }

  static SymplecticSpace point() { return SymplecticSpace(); }

  std::size_t dim() const { return omega_.rows(); }
  const Matrix& omega() const { return omega_; }

  Scalar form(const Vector& u, const Vector& v) const { return dot(u, omega_.apply(v)); }

  SymplecticSpace conjugate() const {
    SymplecticSpace s;
    s.omega_ = -omega_;
    return s;
  }

  friend bool operator==(const SymplecticSpace& a, const SymplecticSpace& b) { return a.omega_ == b.omega_; }

 private:
  Matrix omega_;
};

inline SymplecticSpace direct_sum(const SymplecticSpace& a, const SymplecticSpace& b) {
  return SymplecticSpace(block_diagonal(a.omega(), b.omega()));
}

// Block sum of sign_i * omega_i.
inline SymplecticSpace signed_product(std::span<const SymplecticSpace> factors, std::span<const int> signs) {
  if (factors.size() != signs.size()) throw Error("one sign per factor required");
  Matrix omega;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (signs[i] != 1 && signs[i] != -1) throw Error("signs must be +1 or -1");
    const Matrix block = signs[i] == 1 ? factors[i].omega() : -factors[i].omega();
    omega = block_diagonal(omega, block);
  }
  return SymplecticSpace(std::move(omega));
}

enum class SubspaceKind { isotropic, coisotropic, lagrangian, symplectic, generic };

inline std::string_view to_string(SubspaceKind k) {
  switch (k) {
    case SubspaceKind::isotropic: return "isotropic";
    case SubspaceKind::coisotropic: return "coisotropic";
    case SubspaceKind::lagrangian: return "lagrangian";
    case SubspaceKind::symplectic: return "symplectic";
    case SubspaceKind::generic: return "generic";
  }
  return "generic";
}

inline void require_same_dim(const SymplecticSpace& space, const Subspace& w) {
  if (w.ambient_dim() != space.dim())
    throw Error("subspace of dimension-" + std::to_string(w.ambient_dim()) + " ambient used in a " +
                std::to_string(space.dim()) + "-dimensional symplectic space");
}

// {v : omega(w, v) = 0 for all w in W} = ker(W Omega).
inline Subspace omega_orthogonal(const SymplecticSpace& space, const Subspace& w) {
  require_same_dim(space, w);
  if (w.dim() == 0) return Subspace::full(space.dim());
  return kernel(w.basis() * space.omega());
}

inline SubspaceKind classify(const SymplecticSpace& space, const Subspace& w) {
  const Subspace perp = omega_orthogonal(space, w);
  if (w == perp) return SubspaceKind::lagrangian;
  if (perp.contains(w)) return SubspaceKind::isotropic;
  if (w.contains(perp)) return SubspaceKind::coisotropic;
  if (w.dim() > 0 && intersect(w, perp).dim() == 0) return SubspaceKind::symplectic;
  return SubspaceKind::generic;
}

inline bool is_lagrangian(const SymplecticSpace& space, const Subspace& w) {
  return w == omega_orthogonal(space, w);
}

inline bool is_coisotropic(const SymplecticSpace& space, const Subspace& w) {
  return w.contains(omega_orthogonal(space, w));
}

// C / C^perp with its induced form.
struct ReducedSpace {
  SymplecticSpace space;
  Matrix projection;  // reduced_dim x ambient_dim
  Matrix lift;        // reduced_dim x ambient_dim, representatives inside C
  Subspace coisotrope;
  Subspace characteristic;  // C^perp
};

inline ReducedSpace reduce(const SymplecticSpace& space, const Subspace& c) {
  require_same_dim(space, c);
  Subspace perp = omega_orthogonal(space, c);
  if (!c.contains(perp)) throw Error("reduce: subspace is not coisotropic");
  QuotientSpace q = quotient(c, perp);
  Matrix induced = q.lift * space.omega() * q.lift.transposed();
  return {SymplecticSpace(std::move(induced)), std::move(q.projection), std::move(q.lift), c, std::move(perp)};
}

enum class LemmaOutcome { holds, hypothesis_failed, image_not_lagrangian };

inline std::string_view to_string(LemmaOutcome o) {
  switch (o) {
    case LemmaOutcome::holds: return "holds";
    case LemmaOutcome::hypothesis_failed: return "hypothesis_failed";
    case LemmaOutcome::image_not_lagrangian: return "image_not_lagrangian";
  }
  return "hypothesis_failed";
}

struct LemmaVerdict {
  LemmaOutcome outcome = LemmaOutcome::hypothesis_failed;
  bool direct_lagrangian = false;  // classify(space, l) == lagrangian
  std::string reason;

  bool holds() const { return outcome == LemmaOutcome::holds; }
  explicit operator bool() const { return holds(); }
};

// Decides Lagrangianity of l through the reduction of a coisotropic c with
// c^perp <= l <= c, and records the direct verdict alongside.
inline LemmaVerdict lagrangian_via_reduction(const SymplecticSpace& space, const Subspace& c, const Subspace& l) {
  LemmaVerdict v;
  v.direct_lagrangian = is_lagrangian(space, l);
  const Subspace perp = omega_orthogonal(space, c);
  if (!c.contains(perp)) {
    v.reason = "C is not coisotropic";
    return v;
  }
  if (!l.contains(perp)) {
    v.reason = "C^perp is not contained in L";
    return v;
  }
  if (!c.contains(l)) {
    v.reason = "L is not contained in C";
    return v;
  }
  const ReducedSpace red = reduce(space, c);
  const Subspace reduced_image = image(l, red.projection);
  if (!is_lagrangian(red.space, reduced_image)) {
    v.outcome = LemmaOutcome::image_not_lagrangian;
    v.reason = "image of L in C/C^perp is not Lagrangian";
    return v;
  }
  v.outcome = LemmaOutcome::holds;
  return v;
}

inline Vector hamiltonian_vector(const SymplecticSpace& space, const Vector& df) {
  if (df.size() != space.dim()) throw Error("covector does not match space dimension");
  auto x = solve(space.omega().transposed(), df);
  if (!x) throw Error("symplectic form is degenerate");
  return *x;
}

// Constant bivector; {alpha, beta} = alpha^T pi beta on linear functionals.
struct PoissonBivector {
  Matrix pi;

  std::size_t dim() const { return pi.rows(); }
  Scalar bracket(const Vector& alpha, const Vector& beta) const { return dot(alpha, pi.apply(beta)); }
  bool is_skew() const { return pi.transposed() == -pi; }

  friend bool operator==(const PoissonBivector& a, const PoissonBivector& b) { return a.pi == b.pi; }
};

// Bivector of the symplectic form itself: {f, g} = omega(X_f, X_g).
inline PoissonBivector symplectic_bivector(const SymplecticSpace& space) {
  auto inv = inverse(space.omega());
  if (!inv) throw Error("symplectic form is degenerate");
  return {-*inv};
}

// Bracket of the pulled-back functionals s*alpha, s*beta computed through the
// bivector of omega, an independent route from the Hamiltonian-vector one.
inline Scalar pulled_back_bracket(const SymplecticSpace& space, const Matrix& s, const Vector& alpha,
                                  const Vector& beta) {
  const Matrix st = s.transposed();
  return symplectic_bivector(space).bracket(st.apply(alpha), st.apply(beta));
}

inline Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v(n);
  v[i] = 1;
  return v;
}

// {s*a, s*b}_omega == sign * s*(Pi(a, b)) on every pair of basis covectors.
inline bool is_poisson_map(const SymplecticSpace& space, const Matrix& s, const PoissonBivector& base,
                           int sign = 1) {
  if (s.cols() != space.dim() || s.rows() != base.dim()) throw Error("map/base dimension mismatch");
  for (std::size_t i = 0; i < base.dim(); ++i)
    for (std::size_t j = 0; j < base.dim(); ++j) {
      const auto a = unit_vector(base.dim(), i);
      const auto b = unit_vector(base.dim(), j);
      if (pulled_back_bracket(space, s, a, b) != sign * base.bracket(a, b)) return false;
    }
  return true;
}

// Fibres of s and t are mutually omega-orthogonal complements: ker s = (ker t)^perp.
inline bool fibres_orthogonal(const SymplecticSpace& space, const Matrix& s, const Matrix& t) {
  return kernel(s) == omega_orthogonal(space, kernel(t));
}

// Unique constant Pi on the base making the surjection s a Poisson map. For
// constant coefficients the s-fibre foliation is always symplectically
// complete, so surjectivity is the only requirement.
inline PoissonBivector libermann_poisson(const SymplecticSpace& space, const Matrix& s) {
  if (s.cols() != space.dim()) throw Error("libermann_poisson: map does not start at the space");
  const std::size_t base = s.rows();
  if (rank(s) != base) throw Error("libermann_poisson: s is not surjective");
  const Matrix st = s.transposed();
  std::vector<Vector> fields;
  for (std::size_t i = 0; i < base; ++i) fields.push_back(hamiltonian_vector(space, st.apply(unit_vector(base, i))));
  PoissonBivector out{Matrix(base, base)};
  for (std::size_t i = 0; i < base; ++i)
    for (std::size_t j = 0; j < base; ++j) out.pi(i, j) = space.form(fields[i], fields[j]);
  if (!is_poisson_map(space, s, out)) throw std::logic_error("libermann_poisson: Poisson-map identity violated");
  return out;
}

// Two-map form: t must be a surjection onto the same base as well.
inline PoissonBivector libermann_poisson(const SymplecticSpace& space, const Matrix& s, const Matrix& t) {
  if (t.cols() != space.dim() || s.rows() != t.rows())
    throw Error("libermann_poisson: map dimensions do not match the space and each other");
  if (rank(t) != t.rows()) throw Error("libermann_poisson: t is not surjective");
  return libermann_poisson(space, s);
}

inline nlohmann::json to_json(const SymplecticSpace& s) {
  return {{"dim", s.dim()}, {"omega", to_json(s.omega())}};
}

inline SymplecticSpace symplectic_space_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("omega")) throw Error("symplectic space needs dim and omega");
  const auto n = j.at("dim").get<std::size_t>();
  return SymplecticSpace(matrix_from_json(j.at("omega"), n));
}

}  // namespace rsg
