#include "bmc/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "bmc/error.hpp"
#include "bmc/risk.hpp"

namespace bmc {

namespace {

struct Cell {
  int other;  // column index for row lists, row index for column lists
  double y;
};

// Observation lists by row and by column, in input order so accumulation
// order (and therefore every floating-point result) is independent of how
// the engine iterates.
struct ObsIndex {
  std::vector<std::vector<Cell>> by_row;
  std::vector<std::vector<Cell>> by_col;

  explicit ObsIndex(const ObservationSet& obs)
      : by_row(obs.m), by_col(obs.p) {
    for (const Observation& e : obs.entries) {
      by_row[e.i].push_back({e.j, e.y});
      by_col[e.j].push_back({e.i, e.y});
    }
  }
};

// Scratch buffers for one row update, reused across the whole fit.
struct RowWorkspace {
  Matrix precision;
  Vector potential;
  Vector mean;
  Vector lower;
  Vector upper;
  Vector x;

  explicit RowWorkspace(int K)
      : precision(K, K), potential(K), mean(K), lower(K), upper(K), x(K) {}
};

//   precision = c * sum_t v_t v_t^T,  potential = c * sum_t y_t v_t,
// with c = 2 lambda / n and v_t the factor row of the partner matrix.
void accumulate_row_system(const std::vector<Cell>& cells, const FactorMatrix& partner,
                           double c, Matrix& precision, Vector& potential) {
  const int K = static_cast<int>(partner.cols());
  precision.setZero();
  potential.setZero();
  for (const Cell& cell : cells) {
    const double* v = partner.data() + static_cast<std::ptrdiff_t>(cell.other) * K;
    for (int a = 0; a < K; ++a) {
      const double va = v[a];
      potential[a] += cell.y * va;
      for (int b = 0; b <= a; ++b) {
        precision(a, b) += va * v[b];
      }
    }
  }
  precision *= c;
  potential *= c;
  precision.triangularView<Eigen::StrictlyUpper>() =
      precision.transpose().triangularView<Eigen::StrictlyUpper>();
}

// Solve precision * mean = potential; minimum-norm on any null space. The
// potential always lies in the precision's range (both are built from the
// same factor rows), so the solution satisfies the system exactly.
void solve_row_mean(const Matrix& precision, const Vector& potential, Vector& mean) {
  Eigen::LDLT<Matrix> ldlt(precision);
  if (ldlt.info() == Eigen::Success && ldlt.isPositive()) {
    const auto& d = ldlt.vectorD();
    const double dmax = d.maxCoeff();
    if (dmax > 0.0 && d.minCoeff() > 1e-12 * dmax) {
      mean = ldlt.solve(potential);
      return;
    }
  }
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(precision);
  mean = cod.solve(potential);
}

void fill_prior_box(const PriorConfig& cfg, int k, Vector& lower, Vector& upper) {
  const double delta = cfg.delta();
  for (int l = 0; l < cfg.K; ++l) {
    const double half = (l < k) ? delta : cfg.kappa;
    lower[l] = -half;
    upper[l] = half;
  }
}

// Update every row of `self` given its partner factor.
void update_factor_rows(FactorMatrix& self, const FactorMatrix& partner,
                        const std::vector<std::vector<Cell>>& cells_by_row, double c,
                        int k, const PriorConfig& cfg, int inner_sweeps, Rng& rng,
                        RowWorkspace& ws) {
  fill_prior_box(cfg, k, ws.lower, ws.upper);
  const int rows = static_cast<int>(self.rows());
  for (int i = 0; i < rows; ++i) {
    accumulate_row_system(cells_by_row[i], partner, c, ws.precision, ws.potential);
    solve_row_mean(ws.precision, ws.potential, ws.mean);
    ws.x = self.row(i).transpose();
    detail::tmvn_sweeps_inplace(ws.precision, ws.mean, ws.lower, ws.upper, ws.x,
                                inner_sweeps, rng);
    self.row(i) = ws.x.transpose();
  }
}

void sweep_chain_inplace(FactorPair& chain, const ObsIndex& idx, double lambda, int n,
                         const PriorConfig& cfg, int inner_sweeps, Rng& rng,
                         RowWorkspace& ws) {
  const double c = 2.0 * lambda / n;
  update_factor_rows(chain.U, chain.V, idx.by_row, c, chain.k, cfg, inner_sweeps, rng,
                     ws);
  update_factor_rows(chain.V, chain.U, idx.by_col, c, chain.k, cfg, inner_sweeps, rng,
                     ws);
}

double factored_risk_impl(const ObservationSet& obs, const FactorMatrix& U,
                          const FactorMatrix& V) {
  const int K = static_cast<int>(U.cols());
  const long n = obs.n();
  auto residual_sq = [&](const Observation& e) {
    const double* u = U.data() + static_cast<std::ptrdiff_t>(e.i) * K;
    const double* v = V.data() + static_cast<std::ptrdiff_t>(e.j) * K;
    double dot = 0.0;
    for (int l = 0; l < K; ++l) dot += u[l] * v[l];
    const double d = e.y - dot;
    return d * d;
  };
  if (n > 10000) {
    detail::CompensatedSum acc;
    for (const Observation& e : obs.entries) acc.add(residual_sq(e));
    return acc.value() / static_cast<double>(n);
  }
  double acc = 0.0;
  for (const Observation& e : obs.entries) acc += residual_sq(e);
  return acc / static_cast<double>(n);
}

std::vector<std::pair<int, int>> resolve_trace_entries(const FitOptions& options, int m,
                                                       int p, Rng& rng) {
  if (!options.trace_entries.empty()) {
    for (auto [i, j] : options.trace_entries) {
      if (i < 0 || i >= m || j < 0 || j >= p) {
        fail(ErrorKind::InvalidArgument, "trace entry (" + std::to_string(i) + "," +
                                             std::to_string(j) + ") outside the grid");
      }
    }
    return options.trace_entries;
  }
  std::vector<std::pair<int, int>> out;
  const int want = std::min<long>(options.n_trace_entries, static_cast<long>(m) * p);
  int guard = 0;
  while (static_cast<int>(out.size()) < want && guard++ < 100000) {
    const int i = static_cast<int>(rng.u01() * m);
    const int j = static_cast<int>(rng.u01() * p);
    const auto cell = std::make_pair(std::min(i, m - 1), std::min(j, p - 1));
    if (std::find(out.begin(), out.end(), cell) == out.end()) out.push_back(cell);
  }
  return out;
}

double factored_entry(const FactorMatrix& U, const FactorMatrix& V, int i, int j) {
  return U.row(i).dot(V.row(j));
}

void record_trace(TraceData& trace, const FactorMatrix& U, const FactorMatrix& V,
                  int k_sel, double r_sel) {
  trace.k_selected.push_back(k_sel);
  trace.r_selected.push_back(r_sel);
  for (std::size_t e = 0; e < trace.entries.size(); ++e) {
    trace.values[e].push_back(
        factored_entry(U, V, trace.entries[e].first, trace.entries[e].second));
  }
}

}  // namespace

void GibbsConfig::validate() const {
  if (burn_in < 0) fail(ErrorKind::InvalidConfig, "GibbsConfig: burn_in must be >= 0");
  if (iterations < 1) fail(ErrorKind::InvalidConfig, "GibbsConfig: iterations must be >= 1");
  if (thin < 1) fail(ErrorKind::InvalidConfig, "GibbsConfig: thin must be >= 1");
  if (inner_sweeps < 1) {
    fail(ErrorKind::InvalidConfig, "GibbsConfig: inner_sweeps must be >= 1");
  }
}

double factored_empirical_risk(const ObservationSet& obs, const FactorPair& fp) {
  if (obs.entries.empty()) {
    fail(ErrorKind::EmptyObservations, "factored_empirical_risk: no observations");
  }
  if (fp.U.rows() != obs.m || fp.V.rows() != obs.p) {
    fail(ErrorKind::DimensionMismatch, "factored_empirical_risk: factor shape mismatch");
  }
  return factored_risk_impl(obs, fp.U, fp.V);
}

BoxTruncatedGaussian row_conditional(int i, const FactorMatrix& V,
                                     const ObservationSet& obs, double lambda, int k,
                                     const PriorConfig& cfg) {
  cfg.validate();
  obs.validate();
  if (obs.n() < 1) fail(ErrorKind::EmptyObservations, "row_conditional: no observations");
  if (i < 0 || i >= obs.m) {
    fail(ErrorKind::InvalidArgument, "row_conditional: row index outside grid");
  }
  if (V.rows() != obs.p || V.cols() != cfg.K) {
    fail(ErrorKind::DimensionMismatch, "row_conditional: V must be p x K");
  }
  if (k < 1 || k > cfg.K) {
    fail(ErrorKind::InvalidArgument, "row_conditional: rank index outside 1..K");
  }
  if (!(lambda > 0.0)) {
    fail(ErrorKind::InvalidArgument, "row_conditional: lambda must be > 0");
  }
  std::vector<Cell> cells;
  for (const Observation& e : obs.entries) {
    if (e.i == i) cells.push_back({e.j, e.y});
  }
  BoxTruncatedGaussian out;
  out.precision.resize(cfg.K, cfg.K);
  out.mean.resize(cfg.K);
  out.lower.resize(cfg.K);
  out.upper.resize(cfg.K);
  Vector potential(cfg.K);
  accumulate_row_system(cells, V, 2.0 * lambda / obs.n(), out.precision, potential);
  solve_row_mean(out.precision, potential, out.mean);
  fill_prior_box(cfg, k, out.lower, out.upper);
  return out;
}

FactorPair gibbs_sweep(FactorPair chain, const ObservationSet& obs, double lambda,
                       const PriorConfig& cfg, const GibbsConfig& gibbs_cfg, Rng& rng) {
  cfg.validate();
  gibbs_cfg.validate();
  obs.validate();
  if (obs.n() < 1) fail(ErrorKind::EmptyObservations, "gibbs_sweep: no observations");
  chain.validate(cfg);
  if (chain.U.rows() != obs.m || chain.V.rows() != obs.p) {
    fail(ErrorKind::DimensionMismatch, "gibbs_sweep: factor shape mismatch");
  }
  if (!(lambda > 0.0)) fail(ErrorKind::InvalidArgument, "gibbs_sweep: lambda must be > 0");
  ObsIndex idx(obs);
  RowWorkspace ws(cfg.K);
  sweep_chain_inplace(chain, idx, lambda, obs.n(), cfg, gibbs_cfg.inner_sweeps, rng, ws);
  return chain;
}

int select_chain(ChainEnsemble& ensemble, const ObservationSet& obs,
                 const PriorConfig& cfg, Rng& rng) {
  const int K = static_cast<int>(ensemble.chains.size());
  if (K == 0) fail(ErrorKind::InvalidArgument, "select_chain: empty ensemble");
  const Vector pmf = rank_indicator_pmf(cfg);
  if (pmf.size() != K) {
    fail(ErrorKind::DimensionMismatch, "select_chain: ensemble size differs from K");
  }
  Vector logw(K);
  for (int c = 0; c < K; ++c) {
    const double r = factored_risk_impl(obs, ensemble.chains[c].U, ensemble.chains[c].V);
    logw[c] = std::log(pmf[c]) - ensemble.lambda * r;
  }
  const double lmax = logw.maxCoeff();
  Vector w = (logw.array() - lmax).exp();
  w /= w.sum();
  ensemble.weights = w;
  return 1 + rng.categorical(w.data(), K);
}

FitResult fit_uniform_prior(const ObservationSet& obs, const PriorConfig& cfg,
                            double lambda, const GibbsConfig& gibbs_cfg,
                            const FitOptions& options) {
  obs.validate();
  if (obs.n() < 1) fail(ErrorKind::EmptyObservations, "fit_uniform_prior: no observations");
  cfg.validate_for(obs);
  gibbs_cfg.validate();
  if (!(lambda > 0.0)) {
    fail(ErrorKind::InvalidArgument, "fit_uniform_prior: lambda must be > 0");
  }

  const int K = cfg.K;
  const ObsIndex idx(obs);
  const Rng root(gibbs_cfg.seed);
  Rng select_rng = root.derive("uniform-select");
  Rng trace_rng = root.derive("trace-entries");

  std::vector<Rng> chain_rngs;
  chain_rngs.reserve(K);
  for (int k = 1; k <= K; ++k) chain_rngs.push_back(root.derive("uniform-chain", k));

  ChainEnsemble ens;
  ens.lambda = lambda;
  ens.weights = rank_indicator_pmf(cfg);
  ens.chains.reserve(K);
  for (int k = 1; k <= K; ++k) {
    ens.chains.push_back(sample_prior_given_rank(cfg, obs.m, obs.p, k, chain_rngs[k - 1]));
  }
  ens.mean_accumulator = Matrix::Zero(obs.m, obs.p);

  FitResult result;
  result.trace.entries = resolve_trace_entries(options, obs.m, obs.p, trace_rng);
  result.trace.values.assign(result.trace.entries.size(), {});

  std::vector<RowWorkspace> workspaces(K, RowWorkspace(K));
  const int workers = std::max(1, std::min(options.chain_workers, K));

  const int total = gibbs_cfg.burn_in + gibbs_cfg.iterations;
  for (int round = 0; round < total; ++round) {
    if (workers == 1) {
      for (int c = 0; c < K; ++c) {
        sweep_chain_inplace(ens.chains[c], idx, lambda, obs.n(), cfg,
                            gibbs_cfg.inner_sweeps, chain_rngs[c], workspaces[c]);
      }
    } else {
      std::vector<std::thread> pool;
      pool.reserve(workers);
      for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
          for (int c = w; c < K; c += workers) {
            sweep_chain_inplace(ens.chains[c], idx, lambda, obs.n(), cfg,
                                gibbs_cfg.inner_sweeps, chain_rngs[c], workspaces[c]);
          }
        });
      }
      for (auto& t : pool) t.join();
    }

    const int k_sel = select_chain(ens, obs, cfg, select_rng);
    const FactorPair& sel = ens.chains[k_sel - 1];

    if (round >= gibbs_cfg.burn_in) {
      const int rel = round - gibbs_cfg.burn_in;
      if (rel % gibbs_cfg.thin == 0) {
        ens.mean_accumulator.noalias() += sel.U * sel.V.transpose();
        ++ens.draws_accumulated;
      }
      record_trace(result.trace, sel.U, sel.V, k_sel,
                   factored_risk_impl(obs, sel.U, sel.V));
    }
  }

  result.estimate = ens.mean_accumulator / static_cast<double>(ens.draws_accumulated);
  return result;
}

FitResult fit_conjugate_prior(const ObservationSet& obs,
                              const ConjugatePriorConfig& cfg, double lambda,
                              const GibbsConfig& gibbs_cfg,
                              const FitOptions& options) {
  obs.validate();
  if (obs.n() < 1) {
    fail(ErrorKind::EmptyObservations, "fit_conjugate_prior: no observations");
  }
  cfg.validate();
  gibbs_cfg.validate();
  if (!(lambda > 0.0)) {
    fail(ErrorKind::InvalidArgument, "fit_conjugate_prior: lambda must be > 0");
  }
  if (cfg.K > std::min(obs.m, obs.p)) {
    fail(ErrorKind::InvalidConfig, "fit_conjugate_prior: K exceeds min(m,p)");
  }

  const int K = cfg.K;
  const int m = obs.m;
  const int p = obs.p;
  const ObsIndex idx(obs);
  const Rng root(gibbs_cfg.seed);
  Rng rng = root.derive("conjugate-chain");
  Rng trace_rng = root.derive("trace-entries");

  FactorMatrix U(m, K), V(p, K);
  for (int l = 0; l < K; ++l) {
    for (int i = 0; i < m; ++i) U(i, l) = rng.normal();
  }
  for (int l = 0; l < K; ++l) {
    for (int j = 0; j < p; ++j) V(j, l) = rng.normal();
  }
  Vector gamma = Vector::Ones(K);

  FitResult result;
  result.trace.entries = resolve_trace_entries(options, m, p, trace_rng);
  result.trace.values.assign(result.trace.entries.size(), {});

  Matrix precision(K, K);
  Vector potential(K), mean(K), z(K);
  Matrix accumulator = Matrix::Zero(m, p);
  long draws = 0;
  const double c = 2.0 * lambda / obs.n();

  auto update_rows = [&](FactorMatrix& self, const FactorMatrix& partner,
                         const std::vector<std::vector<Cell>>& cells_by_row) {
    const int rows = static_cast<int>(self.rows());
    for (int i = 0; i < rows; ++i) {
      accumulate_row_system(cells_by_row[i], partner, c, precision, potential);
      precision.diagonal() += gamma.cwiseInverse();
      Eigen::LLT<Matrix> llt(precision);
      if (llt.info() != Eigen::Success) {
        fail(ErrorKind::Numeric, "fit_conjugate_prior: row precision not positive definite");
      }
      mean = llt.solve(potential);
      for (int l = 0; l < K; ++l) z[l] = rng.normal();
      // x = mean + L^{-T} z has covariance precision^{-1}.
      self.row(i) = (mean + llt.matrixU().solve(z)).transpose();
    }
  };

  const int total = gibbs_cfg.burn_in + gibbs_cfg.iterations;
  const double shape = cfg.a + 0.5 * (m + p);
  for (int round = 0; round < total; ++round) {
    update_rows(U, V, idx.by_row);
    update_rows(V, U, idx.by_col);
    for (int l = 0; l < K; ++l) {
      const double ss = U.col(l).squaredNorm() + V.col(l).squaredNorm();
      gamma[l] = rng.inverse_gamma(shape, cfg.b + 0.5 * ss);
    }

    if (round >= gibbs_cfg.burn_in) {
      const int rel = round - gibbs_cfg.burn_in;
      if (rel % gibbs_cfg.thin == 0) {
        accumulator.noalias() += U * V.transpose();
        ++draws;
      }
      record_trace(result.trace, U, V, K, factored_risk_impl(obs, U, V));
    }
  }

  result.estimate = accumulator / static_cast<double>(draws);
  return result;
}

}  // namespace bmc
