#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "adl/engine.hpp"
#include "adl/rng.hpp"
#include "adl/simulate.hpp"
#include "oracle.hpp"

namespace adl::testing {

struct Dataset {
  Eigen::MatrixXd X;
  Eigen::VectorXd y;
  Eigen::VectorXd beta_star;
};

/// AR(1) rows with a +/-1 sparse truth, drawn exactly like one simulation replication.
inline Dataset make_dataset(Index n, Index p, Index s0, double rho, double sigma2, FamilyKind family,
                            std::uint64_t seed) {
  RandomStream rng(seed, 0);
  const GlmFamily f(family);
  Dataset d;
  d.beta_star = make_beta_star(p, s0, rng);
  d.X.resize(n, p);
  d.y.resize(n);
  Eigen::VectorXd x(p);
  for (Index i = 0; i < n; ++i) {
    gen_ar1_row(rho, sigma2, rng, x);
    d.X.row(i) = x.transpose();
    d.y[i] = gen_response(x, d.beta_star, f, rng);
  }
  return d;
}

/// Streams the dataset through the engine and records (i, x, y, beta^(i), gamma^(i)) for slot q.
inline oracle::Transcript stream_with_transcript(AdlEngine& engine, const Dataset& d, std::size_t q) {
  oracle::Transcript t;
  for (Index i = 0; i < d.X.rows(); ++i) {
    const Eigen::VectorXd x = d.X.row(i).transpose();
    const Index m = engine.observe(x, d.y[i]);
    t.records.push_back({m, d.y[i], x, engine.lasso().current_estimate(), engine.nodewise(q).current_estimate()});
  }
  return t;
}

}  // namespace adl::testing
