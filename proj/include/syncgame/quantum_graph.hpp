#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "syncgame/graph.hpp"
#include "syncgame/matrix.hpp"
#include "syncgame/ncpoly.hpp"
#include "syncgame/rational.hpp"

namespace syncgame {

// Finite quantum set: a multimatrix algebra (+) M_{n(i)} with a faithful
// state psi = (+) Tr(Q_i .). Everything is expressed over the natural basis
// of matrix units, blocks in declaration order, entries row-major. When all
// weights are rational diagonal matrices the whole GNS structure is exact.
class QuantumSet {
 public:
  static QuantumSet classical_uniform(std::size_t n) {
    QuantumSet qs;
    qs.blocks_.assign(n, 1);
    Rational w(1, static_cast<std::int64_t>(n));
    qs.exact_diag_.assign(n, {w});
    qs.finish_exact();
    return qs;
  }

  // the unique tracial delta-form: Q_i = (n(i)/|X|) I
  static QuantumSet tracial(const std::vector<std::size_t>& blocks) {
    QuantumSet qs;
    qs.blocks_ = blocks;
    std::size_t dim = 0;
    for (auto n : blocks) dim += n * n;
    for (auto n : blocks)
      qs.exact_diag_.push_back(std::vector<Rational>(
          n, Rational(static_cast<std::int64_t>(n), static_cast<std::int64_t>(dim))));
    qs.finish_exact();
    return qs;
  }

  static QuantumSet with_rational_diagonal(const std::vector<std::size_t>& blocks,
                                           const std::vector<std::vector<Rational>>& diag) {
    QuantumSet qs;
    qs.blocks_ = blocks;
    qs.exact_diag_ = diag;
    qs.finish_exact();
    return qs;
  }

  static QuantumSet with_weights(const std::vector<std::size_t>& blocks, std::vector<CMat> weights,
                                 double tol = 1e-10) {
    QuantumSet qs;
    qs.blocks_ = blocks;
    qs.weights_ = std::move(weights);
    if (qs.blocks_.empty()) throw std::invalid_argument("QuantumSet: no blocks");
    if (qs.weights_.size() != qs.blocks_.size())
      throw std::invalid_argument("QuantumSet: one weight matrix per block required");
    double trace_sum = 0;
    for (std::size_t i = 0; i < qs.blocks_.size(); ++i) {
      const CMat& q = qs.weights_[i];
      if (q.rows() != qs.blocks_[i] || q.cols() != qs.blocks_[i])
        throw std::invalid_argument("QuantumSet: weight shape mismatch");
      if ((q - q.conj_transpose()).frobenius_norm() > tol)
        throw std::invalid_argument("QuantumSet: weight not Hermitian");
      if (!cholesky_posdef(q, tol)) throw std::invalid_argument("QuantumSet: weight not positive definite");
      for (std::size_t k = 0; k < q.rows(); ++k) trace_sum += q(k, k).real();
    }
    if (std::abs(trace_sum - 1.0) > tol)
      throw std::invalid_argument("QuantumSet: weight traces must sum to 1");
    return qs;
  }

  const std::vector<std::size_t>& blocks() const { return blocks_; }
  std::size_t dim() const {
    std::size_t d = 0;
    for (auto n : blocks_) d += n * n;
    return d;
  }
  bool commutative() const {
    for (auto n : blocks_)
      if (n != 1) return false;
    return true;
  }
  bool exact() const { return !exact_diag_.empty(); }
  const std::vector<std::vector<Rational>>& exact_diag() const { return exact_diag_; }
  const std::vector<CMat>& weights() const { return weights_; }

  std::size_t block_offset(std::size_t i) const {
    std::size_t off = 0;
    for (std::size_t t = 0; t < i; ++t) off += blocks_[t] * blocks_[t];
    return off;
  }
  // natural index of the matrix unit e^i_{jk}
  std::size_t unit_index(std::size_t i, std::size_t j, std::size_t k) const {
    return block_offset(i) + j * blocks_[i] + k;
  }
  // inverse of unit_index
  void locate(std::size_t p, std::size_t& i, std::size_t& j, std::size_t& k) const {
    for (i = 0; i < blocks_.size(); ++i) {
      std::size_t sz = blocks_[i] * blocks_[i];
      if (p < sz) {
        j = p / blocks_[i];
        k = p % blocks_[i];
        return;
      }
      p -= sz;
    }
    throw std::out_of_range("QuantumSet: natural index out of range");
  }

  // Gram matrix of <a,b> = psi(b* a) over the natural basis
  CMat gram() const {
    const std::size_t d = dim();
    CMat g(d, d);
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      std::size_t n = blocks_[i];
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t m = 0; m < n; ++m) {
            // <e_jk, e_jm> = psi(e_mj e_jk) = Q_km
            Complex q = exact() ? Complex(k == m ? exact_diag_[i][k].to_double() : 0.0, 0.0)
                                : weights_[i](k, m);
            g(unit_index(i, j, k), unit_index(i, j, m)) = q;
          }
    }
    return g;
  }
  // exact diagonal Gram entries (requires exact())
  std::vector<Rational> gram_diag_exact() const {
    std::vector<Rational> g(dim());
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      for (std::size_t j = 0; j < blocks_[i]; ++j)
        for (std::size_t k = 0; k < blocks_[i]; ++k) g[unit_index(i, j, k)] = exact_diag_[i][k];
    return g;
  }

  // psi as a vector over the natural basis: psi(e^i_jk)
  std::vector<Rational> psi_exact() const {
    std::vector<Rational> v(dim(), Rational(0));
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      for (std::size_t j = 0; j < blocks_[i]; ++j) v[unit_index(i, j, j)] = exact_diag_[i][j];
    return v;
  }
  std::vector<Complex> psi_numeric() const {
    std::vector<Complex> v(dim(), Complex(0));
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      for (std::size_t j = 0; j < blocks_[i]; ++j)
        for (std::size_t k = 0; k < blocks_[i]; ++k)
          v[unit_index(i, j, k)] = exact() ? Complex(j == k ? exact_diag_[i][j].to_double() : 0.0, 0.0)
                                           : weights_[i](k, j);
    return v;
  }

  // unit vector: 1 = sum_i sum_j e^i_jj
  template <class T>
  std::vector<T> eta() const {
    std::vector<T> v(dim(), T(0));
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      for (std::size_t j = 0; j < blocks_[i]; ++j) v[unit_index(i, j, j)] = T(1);
    return v;
  }

  // multiplication on natural coordinate matrices: given the coefficient
  // matrix M[p][q] of an element of L2 (x) L2, returns m(M) in L2
  template <class T>
  std::vector<T> apply_m(const Mat<T>& coeff) const {
    std::vector<T> out(dim(), T(0));
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      std::size_t n = blocks_[i];
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          T acc(0);
          for (std::size_t t = 0; t < n; ++t)
            acc = acc + coeff(unit_index(i, a, t), unit_index(i, t, b));
          out[unit_index(i, a, b)] = acc;
        }
    }
    return out;
  }

 private:
  std::vector<std::size_t> blocks_;
  std::vector<CMat> weights_;                     // always populated
  std::vector<std::vector<Rational>> exact_diag_; // non-empty only on the exact path

  void finish_exact() {
    if (blocks_.empty()) throw std::invalid_argument("QuantumSet: no blocks");
    if (exact_diag_.size() != blocks_.size())
      throw std::invalid_argument("QuantumSet: one diagonal per block required");
    Rational total(0);
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      if (exact_diag_[i].size() != blocks_[i])
        throw std::invalid_argument("QuantumSet: diagonal length mismatch");
      for (const auto& q : exact_diag_[i]) {
        if (q.sign() <= 0) throw std::invalid_argument("QuantumSet: weights must be positive");
        total += q;
      }
    }
    if (!(total == Rational(1))) throw std::invalid_argument("QuantumSet: weight traces must sum to 1");
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      CMat q(blocks_[i], blocks_[i]);
      for (std::size_t k = 0; k < blocks_[i]; ++k) q(k, k) = exact_diag_[i][k].to_double();
      weights_.push_back(std::move(q));
    }
  }
};

// --- delta form ------------------------------------------------------------

struct DeltaForm {
  double delta = 0;
  bool exact = false;
  Rational delta_sq;  // meaningful on the exact path
};

// Tr(Q_i^{-1}) must take one value delta^2 across all blocks.
inline std::optional<DeltaForm> delta_form(const QuantumSet& qs, double tol = 1e-10) {
  if (qs.exact()) {
    Rational common(0);
    for (std::size_t i = 0; i < qs.blocks().size(); ++i) {
      Rational tr(0);
      for (const auto& q : qs.exact_diag()[i]) tr += q.inverse();
      if (i == 0)
        common = tr;
      else if (!(tr == common))
        return std::nullopt;
    }
    DeltaForm df;
    df.exact = true;
    df.delta_sq = common;
    df.delta = std::sqrt(common.to_double());
    return df;
  }
  double common = 0;
  for (std::size_t i = 0; i < qs.blocks().size(); ++i) {
    CMat inv = inverse(qs.weights()[i]);  // throws std::domain_error when singular
    double tr = 0;
    for (std::size_t k = 0; k < inv.rows(); ++k) tr += inv(k, k).real();
    if (i == 0)
      common = tr;
    else if (std::abs(tr - common) > tol * std::max(1.0, std::abs(common)))
      return std::nullopt;
  }
  DeltaForm df;
  df.delta = std::sqrt(common);
  return df;
}

// --- structure tensors -------------------------------------------------------

// GNS data in the fixed orthonormal basis (blocks in order, matrix units
// row-major, Gram-Schmidt against psi(b* a)).
struct StructureTensors {
  std::size_t d = 0;
  CMat basis;                // columns = ONB vectors in natural coordinates
  CMat basis_inv;
  CMat gram;                 // natural-basis Gram
  CMat m;                    // d x d^2, ONB coordinates
  CMat m_star;               // d^2 x d (adjoint of m)
  std::vector<Complex> eta;  // unit in ONB coordinates
  std::vector<Complex> eta_star;
};

namespace detail {

// modified Gram-Schmidt of the natural basis against a Hermitian PD Gram
inline CMat gram_schmidt(const CMat& gram) {
  const std::size_t d = gram.rows();
  CMat b(d, d);
  auto inner = [&](const CMat& cols, std::size_t x, std::size_t y) {  // <col x, col y>
    Complex s = 0;
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t q = 0; q < d; ++q) s += std::conj(cols(p, y)) * gram(p, q) * cols(q, x);
    return s;
  };
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t p = 0; p < d; ++p) b(p, k) = p == k ? 1.0 : 0.0;
    for (std::size_t prev = 0; prev < k; ++prev) {
      Complex c = inner(b, k, prev);
      for (std::size_t p = 0; p < d; ++p) b(p, k) -= c * b(p, prev);
    }
    double norm = std::sqrt(std::abs(inner(b, k, k).real()));
    if (norm < 1e-12) throw std::domain_error("gram_schmidt: degenerate Gram matrix");
    for (std::size_t p = 0; p < d; ++p) b(p, k) = b(p, k) / norm;
  }
  return b;
}

}  // namespace detail

inline StructureTensors structure_tensors(const QuantumSet& qs) {
  if (!delta_form(qs)) throw std::invalid_argument("structure_tensors: the state is not a delta-form");
  StructureTensors st;
  st.d = qs.dim();
  st.gram = qs.gram();
  st.basis = detail::gram_schmidt(st.gram);
  st.basis_inv = inverse(st.basis);
  const std::size_t d = st.d;

  // m in natural coordinates: column (p,q) holds e_p e_q
  CMat m_nat(d, d * d);
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t q = 0; q < d; ++q) {
      CMat unitpair(d, d);
      unitpair(p, q) = 1.0;
      std::vector<Complex> prod = qs.apply_m(unitpair);
      for (std::size_t r = 0; r < d; ++r) m_nat(r, p * d + q) = prod[r];
    }
  // change both legs to the ONB: m_onb = B^-1 m_nat (B (x) B)
  CMat m_onb(d, d * d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      // image of b_a (x) b_b
      std::vector<Complex> acc(d, 0.0);
      for (std::size_t p = 0; p < d; ++p) {
        if (st.basis(p, a) == Complex(0)) continue;
        for (std::size_t q = 0; q < d; ++q) {
          Complex c = st.basis(p, a) * st.basis(q, b);
          if (c == Complex(0)) continue;
          for (std::size_t r = 0; r < d; ++r) acc[r] += c * m_nat(r, p * d + q);
        }
      }
      for (std::size_t r = 0; r < d; ++r) {
        Complex v = 0;
        for (std::size_t s = 0; s < d; ++s) v += st.basis_inv(r, s) * acc[s];
        m_onb(r, a * d + b) = v;
      }
    }
  st.m = m_onb;
  st.m_star = m_onb.conj_transpose();  // ONB coordinates: adjoint = dagger

  std::vector<Complex> eta_nat = qs.eta<Complex>();
  st.eta.assign(d, 0.0);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t s = 0; s < d; ++s) st.eta[r] += st.basis_inv(r, s) * eta_nat[s];
  st.eta_star.assign(d, 0.0);
  for (std::size_t r = 0; r < d; ++r) st.eta_star[r] = std::conj(st.eta[r]);
  return st;
}

// --- quantum graphs ----------------------------------------------------------

// Quantum adjacency operator on L2(X), stored over the natural basis; the
// exact matrix is carried whenever the quantum set is exact and the
// operator was built from exact data.
struct QuantumGraph {
  QuantumSet qset;
  DeltaForm delta;
  CMat a_nat;
  std::optional<QMat> a_exact;

  std::size_t dim() const { return qset.dim(); }
};

// Uniform measure on the vertices; A = adjacency + I (the reflexive
// convention), which is the operator of Schur multiplication on L2.
inline QuantumGraph from_classical(const Graph& g) {
  QuantumGraph qg{QuantumSet::classical_uniform(g.n()), {}, CMat(g.n(), g.n()), QMat(g.n(), g.n())};
  qg.delta = *delta_form(qg.qset);
  for (std::size_t v = 0; v < g.n(); ++v)
    for (std::size_t w = 0; w < g.n(); ++w) {
      int a = (v == w || g.adjacent(v, w)) ? 1 : 0;
      qg.a_nat(v, w) = a;
      (*qg.a_exact)(v, w) = Rational(a);
    }
  return qg;
}

// A = delta^2 psi(.) 1
inline QuantumGraph quantum_complete(const QuantumSet& qs) {
  auto df = delta_form(qs);
  if (!df) throw std::invalid_argument("quantum_complete: the state is not a delta-form");
  const std::size_t d = qs.dim();
  QuantumGraph qg{qs, *df, CMat(d, d), std::nullopt};
  std::vector<Complex> psi = qs.psi_numeric();
  std::vector<Complex> eta = qs.eta<Complex>();
  double d2 = df->delta * df->delta;
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t p = 0; p < d; ++p) qg.a_nat(r, p) = d2 * psi[p] * eta[r];
  if (qs.exact() && df->exact) {
    QMat ax(d, d);
    std::vector<Rational> psix = qs.psi_exact();
    std::vector<Rational> etax = qs.eta<Rational>();
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t p = 0; p < d; ++p) ax(r, p) = df->delta_sq * psix[p] * etax[r];
    qg.a_exact = std::move(ax);
  }
  return qg;
}

// A restricted to nothing: the edgeless (reflexive) quantum graph
inline QuantumGraph quantum_edgeless(const QuantumSet& qs) {
  auto df = delta_form(qs);
  if (!df) throw std::invalid_argument("quantum_edgeless: the state is not a delta-form");
  QuantumGraph qg{qs, *df, CMat(qs.dim(), qs.dim()), std::nullopt};
  for (std::size_t r = 0; r < qs.dim(); ++r) qg.a_nat(r, r) = 1.0;
  if (qs.exact() && df->exact) {
    QMat ax = QMat::identity(qs.dim());
    qg.a_exact = std::move(ax);
  }
  return qg;
}

// A_Xbar = delta^2 psi(.)1 + id - A_X; an involution.
inline QuantumGraph quantum_complement(const QuantumGraph& qg) {
  QuantumGraph out = qg;
  QuantumGraph complete = quantum_complete(qg.qset);
  out.a_nat = complete.a_nat + CMat::identity(qg.dim()) - qg.a_nat;
  if (qg.a_exact && complete.a_exact)
    out.a_exact = *complete.a_exact + QMat::identity(qg.dim()) - *qg.a_exact;
  else
    out.a_exact.reset();
  return out;
}

// build from an operator expressed in the fixed ONB (the JSON convention)
inline QuantumGraph from_onb_matrix(const QuantumSet& qs, const CMat& a_onb) {
  auto df = delta_form(qs);
  if (!df) throw std::invalid_argument("QuantumGraph: the state is not a delta-form");
  if (a_onb.rows() != qs.dim() || a_onb.cols() != qs.dim())
    throw std::invalid_argument("QuantumGraph: operator dimension mismatch");
  StructureTensors st = structure_tensors(qs);
  QuantumGraph qg{qs, *df, st.basis * a_onb * st.basis_inv, std::nullopt};
  return qg;
}

inline CMat to_onb_matrix(const QuantumGraph& qg) {
  StructureTensors st = structure_tensors(qg.qset);
  return st.basis_inv * qg.a_nat * st.basis;
}

// --- the three quantum adjacency axioms -------------------------------------

struct AxiomReport {
  bool exact_path = false;
  double schur_idempotent = 0;  // m(A (x) A)m* = delta^2 A
  double symmetry = 0;          // (i (x) eta* m)(i (x) A (x) i)(m* eta (x) i) = A
  double reflexive = 0;         // m(A (x) i)m* = delta^2 id
  double self_adjoint = 0;      // A* = A w.r.t. the GNS inner product
  double tolerance = 0;
  bool pass = false;

  double max_residual() const {
    return std::max(std::max(schur_idempotent, symmetry), std::max(reflexive, self_adjoint));
  }
};

// Exact evaluation of the axioms over the rationals; requires exact data.
inline AxiomReport check_quantum_adjacency_exact(const QuantumGraph& qg) {
  if (!qg.qset.exact() || !qg.a_exact || !qg.delta.exact)
    throw std::invalid_argument("check_quantum_adjacency_exact: exact data unavailable");
  const QuantumSet& qs = qg.qset;
  const std::size_t d = qs.dim();
  const QMat& a = *qg.a_exact;
  std::vector<Rational> g = qs.gram_diag_exact();
  std::vector<Rational> eta = qs.eta<Rational>();
  Rational d2 = qg.delta.delta_sq;

  // m* columns: m*(e_r)[p][q] = c^r_{pq} g_r / (g_p g_q)
  auto structure_constant = [&](std::size_t p, std::size_t q, std::size_t r) -> bool {
    std::size_t ip, jp, kp, iq, jq, kq, ir, jr, kr;
    qs.locate(p, ip, jp, kp);
    qs.locate(q, iq, jq, kq);
    qs.locate(r, ir, jr, kr);
    return ip == iq && ip == ir && kp == jq && jr == jp && kr == kq;
  };
  auto mstar_col = [&](std::size_t r) {
    QMat out(d, d);
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t q = 0; q < d; ++q)
        if (structure_constant(p, q, r)) out(p, q) = g[r] / (g[p] * g[q]);
    return out;
  };

  AxiomReport rep;
  rep.exact_path = true;
  rep.tolerance = 0;

  // axiom 1 and 3 columnwise
  QMat lhs1(d, d), lhs3(d, d);
  for (std::size_t r = 0; r < d; ++r) {
    QMat v = mstar_col(r);
    QMat w1 = a * v * a.transpose();
    std::vector<Rational> col1 = qs.apply_m(w1);
    QMat w3 = a * v;
    std::vector<Rational> col3 = qs.apply_m(w3);
    for (std::size_t p = 0; p < d; ++p) {
      lhs1(p, r) = col1[p];
      lhs3(p, r) = col3[p];
    }
  }
  QMat rhs1(d, d);
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t r = 0; r < d; ++r) rhs1(p, r) = d2 * a(p, r);
  rep.schur_idempotent = (lhs1 - rhs1).frobenius_norm();
  QMat rhs3(d, d);
  for (std::size_t p = 0; p < d; ++p) rhs3(p, p) = d2;
  rep.reflexive = (lhs3 - rhs3).frobenius_norm();

  // axiom 2: W A^T Z with W = reshape(m* eta), Z[a][b] = eta*(e_a e_b)
  QMat w(d, d);
  for (std::size_t r = 0; r < d; ++r) {
    if (eta[r].is_zero()) continue;
    QMat v = mstar_col(r);
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t q = 0; q < d; ++q) w(p, q) += eta[r] * v(p, q);
  }
  QMat z(d, d);
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t q = 0; q < d; ++q) {
      // eta*(x) = sum_r conj(eta_r) g_r x_r over natural coords
      Rational acc(0);
      for (std::size_t r = 0; r < d; ++r)
        if (!eta[r].is_zero() && structure_constant(p, q, r)) acc += eta[r] * g[r];
      z(p, q) = acc;
    }
  QMat lhs2 = w * a.transpose() * z;
  rep.symmetry = (lhs2 - a).frobenius_norm();

  // self-adjointness: A^T G = G A with diagonal G
  QMat sym(d, d);
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t q = 0; q < d; ++q) sym(p, q) = a(q, p) * g[p] - g[q] * a(p, q);
  rep.self_adjoint = sym.frobenius_norm();

  rep.pass = (lhs1 == rhs1) && (lhs2 == a) && (lhs3 == rhs3) && sym.all_zero();
  return rep;
}

// Numeric evaluation through the ONB structure tensors.
inline AxiomReport check_quantum_adjacency_numeric(const QuantumGraph& qg, double tol = 1e-10) {
  StructureTensors st = structure_tensors(qg.qset);
  const std::size_t d = st.d;
  CMat a = st.basis_inv * qg.a_nat * st.basis;  // ONB coordinates
  double d2 = qg.delta.delta * qg.delta.delta;

  AxiomReport rep;
  rep.tolerance = tol;

  auto mstar_col = [&](std::size_t r) {
    CMat v(d, d);
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t q = 0; q < d; ++q) v(p, q) = st.m_star(p * d + q, r);
    return v;
  };
  auto apply_m = [&](const CMat& coeff) {
    std::vector<Complex> out(d, 0.0);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t p = 0; p < d; ++p)
        for (std::size_t q = 0; q < d; ++q) out[r] += st.m(r, p * d + q) * coeff(p, q);
    return out;
  };

  CMat lhs1(d, d), lhs3(d, d);
  for (std::size_t r = 0; r < d; ++r) {
    CMat v = mstar_col(r);
    CMat w1 = a * v * a.transpose();
    auto col1 = apply_m(w1);
    CMat w3 = a * v;
    auto col3 = apply_m(w3);
    for (std::size_t p = 0; p < d; ++p) {
      lhs1(p, r) = col1[p];
      lhs3(p, r) = col3[p];
    }
  }
  rep.schur_idempotent = (lhs1 - Complex(d2, 0) * a).frobenius_norm();
  rep.reflexive = (lhs3 - Complex(d2, 0) * CMat::identity(d)).frobenius_norm();

  CMat w(d, d);
  for (std::size_t r = 0; r < d; ++r) {
    if (st.eta[r] == Complex(0)) continue;
    CMat v = mstar_col(r);
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t q = 0; q < d; ++q) w(p, q) += st.eta[r] * v(p, q);
  }
  CMat z(d, d);
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t q = 0; q < d; ++q) {
      Complex acc = 0;
      for (std::size_t r = 0; r < d; ++r) acc += st.eta_star[r] * st.m(r, p * d + q);
      z(p, q) = acc;
    }
  rep.symmetry = (w * a.transpose() * z - a).frobenius_norm();
  rep.self_adjoint = (a - a.conj_transpose()).frobenius_norm();
  rep.pass = rep.max_residual() <= tol;
  return rep;
}

// Exact when the data allows, numeric otherwise.
inline AxiomReport check_quantum_adjacency(const QuantumGraph& qg, double tol = 1e-10) {
  if (qg.qset.exact() && qg.a_exact && qg.delta.exact) return check_quantum_adjacency_exact(qg);
  return check_quantum_adjacency_numeric(qg, tol);
}

// --- presentations -----------------------------------------------------------

struct QisoPresentation {
  Presentation pres;
  bool delta_mismatch = false;
  std::size_t dx = 0, dy = 0;
  // letter of p_{i,j} (i over Y natural basis, j over X natural basis)
  Letter entry(std::size_t i, std::size_t j) const {
    return static_cast<Letter>(2 * (i * dx + j));
  }
};

// Presentation of O(G_Y, G_X): generators u_ij (rows over L2(Y), columns
// over L2(X)) with the Gram-twisted unitarity making rho_{Y,X} isometric,
// the *-homomorphism relations, and (1 (x) A_Y)u = u(1 (x) A_X). Requires
// exact rational data on both graphs (the ncalg engine is exact).
inline QisoPresentation qiso_presentation(const QuantumGraph& x, const QuantumGraph& y) {
  if (!x.qset.exact() || !x.a_exact || !y.qset.exact() || !y.a_exact)
    throw std::invalid_argument("qiso_presentation: exact rational data required on both graphs");
  QisoPresentation out;
  out.dx = x.dim();
  out.dy = y.dim();
  out.delta_mismatch = !(x.delta.delta_sq == y.delta.delta_sq);

  const std::size_t dx = out.dx, dy = out.dy;
  for (std::size_t i = 0; i < dy; ++i)
    for (std::size_t j = 0; j < dx; ++j)
      out.pres.alphabet.add_pair("u_" + std::to_string(i) + "_" + std::to_string(j));
  auto u = [&](std::size_t i, std::size_t j) { return NCPoly::letter(out.entry(i, j)); };
  auto ustar = [&](std::size_t i, std::size_t j) {
    return NCPoly::letter(out.pres.alphabet.star(out.entry(i, j)));
  };

  std::vector<Rational> gx = x.qset.gram_diag_exact();
  std::vector<Rational> gy = y.qset.gram_diag_exact();
  std::vector<Rational> etax = x.qset.eta<Rational>();
  std::vector<Rational> etay = y.qset.eta<Rational>();

  // twisted isometry: sum_k gy_k u*_{ki} u_{kj} = delta_ij gx_i
  for (std::size_t i = 0; i < dx; ++i)
    for (std::size_t j = 0; j < dx; ++j) {
      NCPoly rel;
      for (std::size_t k = 0; k < dy; ++k) rel += gy[k] * (ustar(k, i) * u(k, j));
      if (i == j) rel -= NCPoly::monomial({}, gx[i]);
      out.pres.add_relation(rel);
    }
  // twisted co-isometry: sum_k gx_k^-1 u_{ik} u*_{jk} = delta_ij gy_i^-1
  for (std::size_t i = 0; i < dy; ++i)
    for (std::size_t j = 0; j < dy; ++j) {
      NCPoly rel;
      for (std::size_t k = 0; k < dx; ++k) rel += gx[k].inverse() * (u(i, k) * ustar(j, k));
      if (i == j) rel -= NCPoly::monomial({}, gy[i].inverse());
      out.pres.add_relation(rel);
    }

  // multiplicativity against the structure constants of both algebras
  auto sc = [](const QuantumSet& qs, std::size_t p, std::size_t q, std::size_t r) {
    std::size_t ip, jp, kp, iq, jq, kq, ir, jr, kr;
    qs.locate(p, ip, jp, kp);
    qs.locate(q, iq, jq, kq);
    qs.locate(r, ir, jr, kr);
    return ip == iq && ip == ir && kp == jq && jr == jp && kr == kq;
  };
  for (std::size_t l = 0; l < dy; ++l)
    for (std::size_t q = 0; q < dx; ++q)
      for (std::size_t r = 0; r < dx; ++r) {
        NCPoly rel;
        for (std::size_t i = 0; i < dy; ++i)
          for (std::size_t j = 0; j < dy; ++j)
            if (sc(y.qset, i, j, l)) rel += u(i, q) * u(j, r);
        for (std::size_t p = 0; p < dx; ++p)
          if (sc(x.qset, q, r, p)) rel -= u(l, p);
        out.pres.add_relation(rel);
      }

  // unit preservation: sum_p etax_p u_{lp} = etay_l
  for (std::size_t l = 0; l < dy; ++l) {
    NCPoly rel;
    for (std::size_t p = 0; p < dx; ++p)
      if (!etax[p].is_zero()) rel += etax[p] * u(l, p);
    rel -= NCPoly::monomial({}, etay[l]);
    out.pres.add_relation(rel);
  }

  // star compatibility through the F matrices: u_{l, Fx(q)} = u*_{Fy(l), q}
  auto fmap = [](const QuantumSet& qs, std::size_t p) {
    std::size_t i, j, k;
    qs.locate(p, i, j, k);
    return qs.unit_index(i, k, j);
  };
  for (std::size_t l = 0; l < dy; ++l)
    for (std::size_t q = 0; q < dx; ++q)
      out.pres.add_relation(u(l, fmap(x.qset, q)) - ustar(fmap(y.qset, l), q));

  // covariance: sum_k (A_Y)_{lk} u_{kq} = sum_p u_{lp} (A_X)_{pq}
  const QMat& ax = *x.a_exact;
  const QMat& ay = *y.a_exact;
  for (std::size_t l = 0; l < dy; ++l)
    for (std::size_t q = 0; q < dx; ++q) {
      NCPoly rel;
      for (std::size_t k = 0; k < dy; ++k)
        if (!ay(l, k).is_zero()) rel += ay(l, k) * u(k, q);
      for (std::size_t p = 0; p < dx; ++p)
        if (!ax(p, q).is_zero()) rel -= ax(p, q) * u(l, p);
      out.pres.add_relation(rel);
    }
  return out;
}

// O(G_X) = O(G_X, G_X)
inline QisoPresentation qaut_presentation(const QuantumGraph& x) { return qiso_presentation(x, x); }

}  // namespace syncgame
