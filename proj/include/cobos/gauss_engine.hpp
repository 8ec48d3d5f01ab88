#pragma once

// Closed-form Gaussian integrals over one spatial dimension of the pair
// wavefunction. Integrals are of the form
//
//   int exp(-x^T B x) O exp(-x^T C x) d^N x,
//
// where B is the bra exponent, C the ket exponent and O is 1, sum_k x_k^2 or
// -d^2/dx_k^2. Coordinates are ordered a_1..a_n, b_1..b_n.

#include <cmath>
#include <span>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "cobos/errors.hpp"
#include "cobos/perm_classes.hpp"
#include "cobos/scalar.hpp"

namespace cobos {

template <class Scalar>
struct PairForm {
  MatrixX<Scalar> bra;
  MatrixX<Scalar> ket;

  Eigen::Index size() const { return ket.rows(); }
  MatrixX<Scalar> combined() const { return bra + ket; }
};

/// int exp(-a x^2 + b x + c) (d x^2 + e x + f) dx over the real line.
template <class Scalar>
Scalar gauss_moment_1d(const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& d,
                       const Scalar& e, const Scalar& f) {
  using std::exp;
  using std::sqrt;
  if (!(a > 0)) throw DivergentIntegral("gauss_moment_1d: quadratic coefficient must be > 0");
  const Scalar sqrt_a = sqrt(a);
  return sqrt(pi<Scalar>()) * exp(b * b / (4 * a) + c) *
         (4 * a * a * f + 2 * a * (b * e + d) + b * b * d) / (4 * a * a * sqrt_a);
}

/// Bra exponent p sum(a_i^2 + b_i^2) + q sum(a_i - b_perm(i))^2 and the
/// identity-ordered ket, both 2n x 2n.
template <class Scalar>
PairForm<Scalar> build_pair_form(int n_coords, const Scalar& p, const Scalar& q,
                                 std::span<const int> perm) {
  if (n_coords < 1) throw InvalidArgument("build_pair_form: n_coords must be >= 1");
  if (static_cast<int>(perm.size()) != n_coords || !is_permutation(perm))
    throw InvalidArgument("build_pair_form: invalid permutation");
  if (!(p > 0)) throw InvalidArgument("build_pair_form: p must be > 0");
  if (q < 0) throw InvalidArgument("build_pair_form: q must be >= 0");

  const Eigen::Index n = n_coords;
  PairForm<Scalar> form{MatrixX<Scalar>::Zero(2 * n, 2 * n), MatrixX<Scalar>::Zero(2 * n, 2 * n)};
  const Scalar diag = p + q;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index b_bra = n + perm[static_cast<std::size_t>(i)];
    const Eigen::Index b_ket = n + i;
    form.bra(i, i) = diag;
    form.bra(b_bra, b_bra) = diag;
    form.bra(i, b_bra) = -q;
    form.bra(b_bra, i) = -q;
    form.ket(i, i) = diag;
    form.ket(b_ket, b_ket) = diag;
    form.ket(i, b_ket) = -q;
    form.ket(b_ket, i) = -q;
  }
  return form;
}

/// Everything the matrix elements need from one form, from a single
/// Cholesky factorization of A = B + C.
template <class Scalar>
struct FormEvaluation {
  Scalar log_det;                  // log det A
  Scalar overlap;                  // pi^(N/2) / sqrt(det A)
  VectorX<Scalar> kinetic_ratios;  // per coordinate, <-d^2/dx_k^2> / overlap
  Scalar second_moment_ratio;      // <sum_k x_k^2> / overlap = tr(A^-1) / 2

  Scalar kinetic_ratio() const { return kinetic_ratios.sum(); }
};

template <class Scalar>
FormEvaluation<Scalar> evaluate_form(const PairForm<Scalar>& form) {
  using std::exp;
  using std::isfinite;
  using std::log;
  const MatrixX<Scalar> a = form.combined();
  const Eigen::Index n = a.rows();
  if (n == 0 || a.cols() != n || form.bra.rows() != n || form.bra.cols() != n)
    throw InvalidArgument("evaluate_form: bra and ket must be square and of equal size");
  if (!a.isApprox(a.transpose()))
    throw InvalidArgument("evaluate_form: quadratic form must be symmetric");

  Eigen::LLT<MatrixX<Scalar>> llt(a);
  if (llt.info() != Eigen::Success)
    throw DivergentIntegral("quadratic form is not positive definite");
  const auto& l = llt.matrixLLT();
  Scalar log_det = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(l(i, i) > 0) || !isfinite(l(i, i)))
      throw DivergentIntegral("quadratic form is not positive definite");
    log_det += 2 * log(l(i, i));
  }

  const MatrixX<Scalar> a_inv_c = llt.solve(form.ket);
  const MatrixX<Scalar> a_inv = llt.solve(MatrixX<Scalar>::Identity(n, n));

  FormEvaluation<Scalar> out;
  out.log_det = log_det;
  out.overlap = exp(Scalar(n) / 2 * log(pi<Scalar>()) - log_det / 2);
  out.kinetic_ratios.resize(n);
  for (Eigen::Index k = 0; k < n; ++k)
    out.kinetic_ratios(k) = 2 * form.ket(k, k) - 2 * form.ket.row(k).dot(a_inv_c.col(k));
  out.second_moment_ratio = a_inv.trace() / 2;
  return out;
}

/// int exp(-x^T A x) d^N x with A = B + C.
template <class Scalar>
Scalar overlap_integral(const PairForm<Scalar>& form) {
  return evaluate_form(form).overlap;
}

/// int exp(-x^T B x) (sum_k x_k^2) exp(-x^T C x) d^N x.
template <class Scalar>
Scalar second_moment_sum(const PairForm<Scalar>& form) {
  const auto ev = evaluate_form(form);
  return ev.overlap * ev.second_moment_ratio;
}

/// sum_k int exp(-x^T B x) (-d^2/dx_k^2) exp(-x^T C x) d^N x. Positive for
/// B = C.
template <class Scalar>
Scalar kinetic_bilinear(const PairForm<Scalar>& form) {
  const auto ev = evaluate_form(form);
  return ev.overlap * ev.kinetic_ratio();
}

/// Kinetic integral restricted to coordinate k.
template <class Scalar>
Scalar kinetic_coordinate(const PairForm<Scalar>& form, Eigen::Index k) {
  if (k < 0 || k >= form.size()) throw InvalidArgument("kinetic_coordinate: index out of range");
  const auto ev = evaluate_form(form);
  return ev.overlap * ev.kinetic_ratios(k);
}

#define COBOS_GAUSS_ENGINE_EXTERN(S)                                                           \
  extern template S gauss_moment_1d<S>(const S&, const S&, const S&, const S&, const S&,       \
                                       const S&);                                              \
  extern template PairForm<S> build_pair_form<S>(int, const S&, const S&, std::span<const int>); \
  extern template FormEvaluation<S> evaluate_form<S>(const PairForm<S>&);                       \
  extern template S overlap_integral<S>(const PairForm<S>&);                                    \
  extern template S second_moment_sum<S>(const PairForm<S>&);                                   \
  extern template S kinetic_bilinear<S>(const PairForm<S>&);                                    \
  extern template S kinetic_coordinate<S>(const PairForm<S>&, Eigen::Index);

COBOS_GAUSS_ENGINE_EXTERN(double)
COBOS_GAUSS_ENGINE_EXTERN(Float128)
COBOS_GAUSS_ENGINE_EXTERN(Float256)
COBOS_GAUSS_ENGINE_EXTERN(Float512)
COBOS_GAUSS_ENGINE_EXTERN(Float1024)

#undef COBOS_GAUSS_ENGINE_EXTERN

}  // namespace cobos
