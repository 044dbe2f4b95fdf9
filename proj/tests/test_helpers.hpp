#pragma once

#include <Eigen/Dense>
#include <random>

#include "donorspin/donor_spin.hpp"
#include "donorspin/species.hpp"

namespace testutil {

// Arsenic-like and phosphorus-like parameter sets for exercising other spin
// dimensions. Only the Bi constants are measured values; these are plain
// stand-ins with the right I.
inline donorspin::SpeciesParams arsenic_like() {
  return donorspin::make_species("As-like", "3/2", 198.35, 1.1e-4, 27.997);
}

inline donorspin::SpeciesParams phosphorus_like() {
  return donorspin::make_species("P-like", "1/2", 117.53, 6.2e-5, 27.997);
}

// Brute-force pair flip-flop amplitude <ab|S1+ S2- + S1- S2+|ba> formed in
// the full two-donor product space from raw eigenvectors.
inline double brute_force_exchange(const donorspin::Eigensystem& es, int index_a, int index_b) {
  const Eigen::MatrixXd splus = donorspin::electron_splus(es.species);
  const Eigen::MatrixXd sminus = splus.transpose();
  const Eigen::VectorXd a = es.vectors.col(index_a - 1);
  const Eigen::VectorXd b = es.vectors.col(index_b - 1);
  const int d = es.dim();

  Eigen::VectorXd ab(d * d), ba(d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      ab[i * d + j] = a[i] * b[j];
      ba[i * d + j] = b[i] * a[j];
    }

  auto apply_pair = [&](const Eigen::MatrixXd& op1, const Eigen::MatrixXd& op2,
                        const Eigen::VectorXd& v) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(d * d);
    for (int i = 0; i < d; ++i)
      for (int ii = 0; ii < d; ++ii) {
        if (op1(i, ii) == 0.0) continue;
        for (int j = 0; j < d; ++j)
          for (int jj = 0; jj < d; ++jj) {
            if (op2(j, jj) == 0.0) continue;
            out[i * d + j] += op1(i, ii) * op2(j, jj) * v[ii * d + jj];
          }
      }
    return out;
  };

  const Eigen::VectorXd t1 = apply_pair(splus, sminus, ba);
  const Eigen::VectorXd t2 = apply_pair(sminus, splus, ba);
  return ab.dot(t1) + ab.dot(t2);
}

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

}  // namespace testutil
