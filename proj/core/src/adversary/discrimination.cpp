#include "anonq/adversary/discrimination.hpp"

#include <Eigen/Dense>
#include <stdexcept>

namespace anonq::adversary {

namespace {

Eigen::VectorXcd to_eigen(const StateVector& s) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(s.dim()));
  for (std::size_t i = 0; i < s.dim(); ++i) v(static_cast<Eigen::Index>(i)) = s.amp[i];
  return v;
}

DenseMatrix to_dense(const Eigen::MatrixXcd& m) {
  DenseMatrix d;
  d.dim = static_cast<std::size_t>(m.rows());
  d.a.resize(d.dim * d.dim);
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      d.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = m(r, c);
  return d;
}

}  // namespace

DiscriminationEnsemble build_sender_ensemble(const StateVector& state,
                                             const std::set<int>& honest_set) {
  if (honest_set.empty()) throw std::invalid_argument("honest set must be non-empty");
  DiscriminationEnsemble ens;
  const double p = 1.0 / static_cast<double>(honest_set.size());
  for (int i : honest_set) {
    if (i < 1 || i > state.num_qubits)
      throw std::invalid_argument("honest index out of range");
    ens.candidates.push_back(sender_transform(state, i));
    ens.priors.push_back(p);
    ens.labels.push_back(i);
  }
  return ens;
}

double helstrom_guess_prob(const StateVector& a, const StateVector& b) {
  if (a.num_qubits != b.num_qubits)
    throw std::invalid_argument("state dimensions differ");
  const Eigen::VectorXcd va = to_eigen(a), vb = to_eigen(b);
  const Eigen::MatrixXcd diff =
      va * va.adjoint() - vb * vb.adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(diff,
                                                     Eigen::EigenvaluesOnly);
  const double trace_norm = es.eigenvalues().cwiseAbs().sum();
  return 0.5 + 0.25 * trace_norm;
}

PgmResult pgm_guess_prob(const DiscriminationEnsemble& ensemble) {
  const std::size_t k = ensemble.candidates.size();
  if (k == 0) throw std::invalid_argument("empty ensemble");
  const Eigen::Index dim =
      static_cast<Eigen::Index>(ensemble.candidates.front().dim());

  Eigen::MatrixXcd avg = Eigen::MatrixXcd::Zero(dim, dim);
  std::vector<Eigen::VectorXcd> vecs;
  for (std::size_t i = 0; i < k; ++i) {
    vecs.push_back(to_eigen(ensemble.candidates[i]));
    avg += ensemble.priors[i] * (vecs.back() * vecs.back().adjoint());
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(avg);
  const auto& vals = es.eigenvalues();
  const auto& basis = es.eigenvectors();
  Eigen::VectorXd inv_sqrt(dim);
  Eigen::MatrixXcd proj = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (vals(i) > 1e-12) {
      inv_sqrt(i) = 1.0 / std::sqrt(vals(i));
      proj += basis.col(i) * basis.col(i).adjoint();
    } else {
      inv_sqrt(i) = 0.0;
    }
  }
  const Eigen::MatrixXcd half = basis * inv_sqrt.asDiagonal() * basis.adjoint();
  // Uniform completion off the ensemble support keeps the POVM closed
  // without touching any candidate's success term.
  const Eigen::MatrixXcd off_support =
      (Eigen::MatrixXcd::Identity(dim, dim) - proj) / static_cast<double>(k);

  PgmResult res;
  for (std::size_t i = 0; i < k; ++i) {
    const Eigen::MatrixXcd rho_i = vecs[i] * vecs[i].adjoint();
    const Eigen::MatrixXcd pi =
        half * (ensemble.priors[i] * rho_i) * half + off_support;
    res.operators.push_back(to_dense(pi));
    res.success += ensemble.priors[i] * (pi * rho_i).trace().real();
  }
  return res;
}

}  // namespace anonq::adversary
