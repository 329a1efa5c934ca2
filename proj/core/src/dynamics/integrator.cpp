// Copyright 2026 The ioncavity Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ioncavity/dynamics/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

#include "ioncavity/error.hpp"

namespace ioncavity::dynamics {

using qcore::Complex;
using qcore::DenseMatrix;
using qcore::SparseMatrix;

std::string to_string(Method m) { return m == Method::rk4 ? "rk4" : "dopri5"; }

Method method_from_string(const std::string& name) {
  if (name == "rk4") return Method::rk4;
  if (name == "dopri5") return Method::dopri5;
  throw ConfigError("integrator.method: expected 'rk4' or 'dopri5', got '" + name + "'");
}

void IntegratorConfig::validate() const {
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ConfigError("integrator.t_end: must be > 0");
  if (!(dt > 0.0)) throw ConfigError("integrator.dt: must be > 0");
  if (method == Method::dopri5 && (!(rel_tol > 0.0) || !(abs_tol > 0.0))) {
    throw ConfigError("integrator.rel_tol/abs_tol: must be > 0 for adaptive stepping");
  }
  if (!(sample_interval > 0.0)) throw ConfigError("integrator.sample_interval: must be > 0");
  if (!(bin_width > 0.0)) throw ConfigError("integrator.bin_width: must be > 0");
  const double n = t_end / sample_interval;
  if (std::abs(n - std::round(n)) > 1e-6) {
    throw ConfigError("integrator.t_end: must be a multiple of sample_interval");
  }
  const double b = bin_width / sample_interval;
  if (std::abs(b - std::round(b)) > 1e-6) {
    throw ConfigError("integrator.bin_width: must be a multiple of sample_interval");
  }
  if (positivity_every == 0) throw ConfigError("integrator.positivity_every: must be >= 1");
}

std::size_t IntegratorConfig::num_samples() const {
  return static_cast<std::size_t>(std::llround(t_end / sample_interval)) + 1;
}

std::vector<Observable> standard_observables(const model::LindbladModel& model) {
  std::vector<Observable> obs;
  const char* names[] = {"n_H", "n_V"};
  const char* tops[] = {"top_H", "top_V"};
  for (std::size_t k = 0; k < model.num_modes; ++k) {
    obs.push_back({names[k], model.photon_number(k), false});
  }
  if (model.num_modes == 2) {
    obs.push_back({"ba", model.photon_annihilation(1).adjoint() * model.photon_annihilation(0), true});
  }
  for (std::size_t k = 0; k < model.num_modes; ++k) {
    const std::size_t s = 2 + k;
    const std::size_t top = model.space.factor(s) - 1;
    obs.push_back({tops[k], qcore::embed(qcore::projector(top + 1, top), s, model.space), false});
  }
  return obs;
}

namespace {

constexpr std::size_t kSuperoperatorMaxDim = 160;

SparseMatrix effective_hamiltonian(const model::LindbladModel& model) {
  SparseMatrix h = model.hamiltonian.sparse();
  for (const auto& c : model.collapse) {
    const SparseMatrix l = c.op.sparse();
    SparseMatrix ll = SparseMatrix(l.adjoint()) * l;
    h -= Complex(0.0, 0.5 * c.rate) * ll;
  }
  h.prune(Complex(0.0, 0.0));
  return h;
}

void add_edges(const SparseMatrix& m, std::size_t from, std::vector<char>& seen,
               std::deque<std::size_t>& queue) {
  for (SparseMatrix::InnerIterator it(m, static_cast<Eigen::Index>(from)); it; ++it) {
    if (it.value() == Complex(0.0, 0.0)) continue;
    const auto to = static_cast<std::size_t>(it.row());
    if (!seen[to]) {
      seen[to] = 1;
      queue.push_back(to);
    }
  }
}

SparseMatrix restrict_to(const SparseMatrix& m, const std::vector<std::ptrdiff_t>& to_local,
                         std::size_t n) {
  std::vector<Eigen::Triplet<Complex>> trips;
  for (Eigen::Index col = 0; col < m.outerSize(); ++col) {
    const std::ptrdiff_t c = to_local[static_cast<std::size_t>(col)];
    if (c < 0) continue;
    for (SparseMatrix::InnerIterator it(m, col); it; ++it) {
      const std::ptrdiff_t r = to_local[static_cast<std::size_t>(it.row())];
      if (r >= 0) trips.emplace_back(r, c, it.value());
    }
  }
  SparseMatrix out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  out.setFromTriplets(trips.begin(), trips.end());
  out.makeCompressed();
  return out;
}

struct Liouvillian {
  SparseMatrix h_eff;
  std::vector<SparseMatrix> jumps;      // sqrt(rate) * L
  std::vector<SparseMatrix> jumps_adj;  // their adjoints

  void add_jump(SparseMatrix l) {
    jumps_adj.emplace_back(l.adjoint());
    jumps.push_back(std::move(l));
  }

  // Column-stacked superoperator, used for small evolved spaces where the
  // per-operator products are dominated by overhead.
  SparseMatrix super;
  bool use_super = false;

  void build_super() {
    const Eigen::Index n = h_eff.rows();
    SparseMatrix id(n, n);
    id.setIdentity();
    const SparseMatrix h_conj = h_eff.conjugate();
    super = Complex(0.0, -1.0) * SparseMatrix(Eigen::kroneckerProduct(id, h_eff)) +
            Complex(0.0, 1.0) * SparseMatrix(Eigen::kroneckerProduct(h_conj, id));
    for (const auto& l : jumps) {
      const SparseMatrix l_conj = l.conjugate();
      super += SparseMatrix(Eigen::kroneckerProduct(l_conj, l));
    }
    super.prune(Complex(0.0, 0.0));
    super.makeCompressed();
    use_super = true;
  }

  void apply(const DenseMatrix& rho, DenseMatrix& out, DenseMatrix& scratch) const {
    if (use_super) {
      const Eigen::Index n2 = rho.size();
      Eigen::Map<qcore::Vector>(out.data(), n2).noalias() =
          super * Eigen::Map<const qcore::Vector>(rho.data(), n2);
      return;
    }
    scratch.noalias() = h_eff * rho;
    out = Complex(0.0, -1.0) * (scratch - scratch.adjoint());
    for (std::size_t k = 0; k < jumps.size(); ++k) {
      scratch.noalias() = jumps[k] * rho;
      out.noalias() += scratch * jumps_adj[k];
    }
  }
};

void symmetrize(DenseMatrix& m) {
  DenseMatrix adj = m.adjoint();
  m = 0.5 * (m + adj);
}

class Stepper {
 public:
  Stepper(const Liouvillian& l, std::size_t n) : l_(l) {
    const auto d = static_cast<Eigen::Index>(n);
    for (auto* m : {&k1_, &k2_, &k3_, &k4_, &k5_, &k6_, &k7_, &tmp_, &scratch_, &y5_}) {
      m->setZero(d, d);
    }
  }

  void rk4(DenseMatrix& rho, double h) {
    l_.apply(rho, k1_, scratch_);
    tmp_ = rho + (0.5 * h) * k1_;
    l_.apply(tmp_, k2_, scratch_);
    tmp_ = rho + (0.5 * h) * k2_;
    l_.apply(tmp_, k3_, scratch_);
    tmp_ = rho + h * k3_;
    l_.apply(tmp_, k4_, scratch_);
    rho += (h / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
    symmetrize(rho);
  }

  // One Dormand-Prince 5(4) attempt. Returns the scaled error norm; on
  // acceptance (<= 1) the caller commits y5().
  double dopri_attempt(const DenseMatrix& rho, double h, double rtol, double atol) {
    if (!fsal_valid_) {
      l_.apply(rho, k1_, scratch_);
      fsal_valid_ = true;
    }
    tmp_ = rho + h * (1.0 / 5.0) * k1_;
    l_.apply(tmp_, k2_, scratch_);
    tmp_ = rho + h * ((3.0 / 40.0) * k1_ + (9.0 / 40.0) * k2_);
    l_.apply(tmp_, k3_, scratch_);
    tmp_ = rho + h * ((44.0 / 45.0) * k1_ - (56.0 / 15.0) * k2_ + (32.0 / 9.0) * k3_);
    l_.apply(tmp_, k4_, scratch_);
    tmp_ = rho + h * ((19372.0 / 6561.0) * k1_ - (25360.0 / 2187.0) * k2_ +
                      (64448.0 / 6561.0) * k3_ - (212.0 / 729.0) * k4_);
    l_.apply(tmp_, k5_, scratch_);
    tmp_ = rho + h * ((9017.0 / 3168.0) * k1_ - (355.0 / 33.0) * k2_ + (46732.0 / 5247.0) * k3_ +
                      (49.0 / 176.0) * k4_ - (5103.0 / 18656.0) * k5_);
    l_.apply(tmp_, k6_, scratch_);
    y5_ = rho + h * ((35.0 / 384.0) * k1_ + (500.0 / 1113.0) * k3_ + (125.0 / 192.0) * k4_ -
                     (2187.0 / 6784.0) * k5_ + (11.0 / 84.0) * k6_);
    l_.apply(y5_, k7_, scratch_);
    tmp_ = h * ((71.0 / 57600.0) * k1_ - (71.0 / 16695.0) * k3_ + (71.0 / 1920.0) * k4_ -
                (17253.0 / 339200.0) * k5_ + (22.0 / 525.0) * k6_ - (1.0 / 40.0) * k7_);
    double err = 0.0;
    for (Eigen::Index j = 0; j < rho.cols(); ++j) {
      for (Eigen::Index i = 0; i < rho.rows(); ++i) {
        const double scale = atol + rtol * std::max(std::abs(rho(i, j)), std::abs(y5_(i, j)));
        err = std::max(err, std::abs(tmp_(i, j)) / scale);
      }
    }
    return err;
  }

  void dopri_commit(DenseMatrix& rho) {
    rho = y5_;
    symmetrize(rho);
    k1_ = k7_;
  }

  void invalidate() { fsal_valid_ = false; }

 private:
  const Liouvillian& l_;
  DenseMatrix k1_, k2_, k3_, k4_, k5_, k6_, k7_, tmp_, scratch_, y5_;
  bool fsal_valid_ = false;
};

double min_eig(const DenseMatrix& rho) {
  DenseMatrix h = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Complex expect(const DenseMatrix& rho, const SparseMatrix& op) {
  Complex acc(0.0, 0.0);
  for (Eigen::Index col = 0; col < op.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(op, col); it; ++it) {
      acc += rho(it.col(), it.row()) * it.value();
    }
  }
  return acc;
}

std::string fmt_time(double t) {
  std::ostringstream s;
  s << t * 1e6 << " us";
  return s.str();
}

}  // namespace

std::vector<std::size_t> reachable_subspace(const model::LindbladModel& model,
                                            const qcore::DensityMatrix& rho0) {
  const std::size_t n = model.space.dim();
  const SparseMatrix h_eff = effective_hamiltonian(model);
  const SparseMatrix h_eff_adj = h_eff.adjoint();
  std::vector<SparseMatrix> jumps;
  for (const auto& c : model.collapse) jumps.push_back(c.op.sparse());

  std::vector<char> seen(n, 0);
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(rho0.element(i, i)) > 0.0) {
      seen[i] = 1;
      queue.push_back(i);
    }
  }
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    add_edges(h_eff, i, seen, queue);
    add_edges(h_eff_adj, i, seen, queue);
    for (const auto& l : jumps) add_edges(l, i, seen, queue);
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) out.push_back(i);
  }
  return out;
}

EvolveResult evolve(const model::LindbladModel& model, const qcore::DensityMatrix& rho0,
                    const IntegratorConfig& cfg, std::span<const Observable> observables,
                    const ObservationTransform& transform) {
  cfg.validate();
  qcore::require_same_space(model.space, rho0.space(), "evolve: initial state");
  model.validate();
  rho0.validate();

  const std::size_t full_dim = model.space.dim();
  std::vector<std::size_t> basis;
  if (cfg.restrict_to_reachable) {
    basis = reachable_subspace(model, rho0);
  } else {
    basis.resize(full_dim);
    for (std::size_t i = 0; i < full_dim; ++i) basis[i] = i;
  }
  const std::size_t n = basis.size();
  std::vector<std::ptrdiff_t> to_local(full_dim, -1);
  for (std::size_t k = 0; k < n; ++k) to_local[basis[k]] = static_cast<std::ptrdiff_t>(k);

  Liouvillian liou;
  liou.h_eff = restrict_to(effective_hamiltonian(model), to_local, n);
  for (const auto& c : model.collapse) {
    liou.add_jump(restrict_to(std::sqrt(c.rate) * c.op.sparse(), to_local, n));
  }
  if (n <= kSuperoperatorMaxDim) liou.build_super();

  std::vector<SparseMatrix> obs_ops;
  for (const auto& o : observables) {
    qcore::require_same_space(model.space, o.op.space(), "evolve: observable");
    obs_ops.push_back(restrict_to(o.op.sparse(), to_local, n));
  }

  const auto dn = static_cast<Eigen::Index>(n);
  DenseMatrix rho(dn, dn);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      rho(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = rho0.element(basis[a], basis[b]);
    }
  }

  const std::size_t num_samples = cfg.num_samples();
  std::vector<double> times(num_samples);
  for (std::size_t k = 0; k < num_samples; ++k) times[k] = static_cast<double>(k) * cfg.sample_interval;

  std::vector<std::vector<double>> columns;
  std::vector<std::string> names;
  for (const auto& o : observables) {
    if (o.complex_valued) {
      names.push_back(o.name + "_re");
      names.push_back(o.name + "_im");
    } else {
      names.push_back(o.name);
    }
  }
  columns.assign(names.size(), std::vector<double>(num_samples, 0.0));

  EvolveResult result;
  EvolveDiagnostics& diag = result.diagnostics;
  diag.evolved_dim = n;

  auto sample = [&](std::size_t k) {
    const double t = times[k];
    const Complex tr = rho.trace();
    const double dev = std::max(std::abs(tr.real() - 1.0), std::abs(tr.imag()));
    diag.max_trace_deviation = std::max(diag.max_trace_deviation, dev);
    if (dev > cfg.trace_tol) {
      throw NumericalError("evolve: trace deviates from 1 by " + std::to_string(dev) + " at t=" +
                           fmt_time(t));
    }
    if (k % cfg.positivity_every == 0 || k + 1 == num_samples) {
      const double lo = min_eig(rho);
      diag.min_eigenvalue = std::min(diag.min_eigenvalue, lo);
      if (lo < cfg.min_eigenvalue_tol) {
        throw NumericalError("evolve: density matrix eigenvalue " + std::to_string(lo) +
                             " below tolerance at t=" + fmt_time(t));
      }
    }
    const DenseMatrix* view = &rho;
    DenseMatrix transformed;
    if (transform) {
      transformed = rho;
      transform(t, basis, transformed);
      view = &transformed;
    }
    std::size_t c = 0;
    for (std::size_t o = 0; o < observables.size(); ++o) {
      const Complex v = expect(*view, obs_ops[o]);
      if (observables[o].complex_valued) {
        columns[c++][k] = v.real();
        columns[c++][k] = v.imag();
      } else {
        columns[c++][k] = v.real();
      }
    }
  };

  Stepper stepper(liou, n);
  sample(0);
  if (cfg.method == Method::rk4) {
    const double ratio = cfg.sample_interval / cfg.dt;
    std::size_t m = static_cast<std::size_t>(std::llround(ratio));
    if (m == 0 || std::abs(static_cast<double>(m) - ratio) > 1e-9 * ratio) {
      m = static_cast<std::size_t>(std::ceil(ratio));
    }
    const double h = cfg.sample_interval / static_cast<double>(m);
    for (std::size_t k = 1; k < num_samples; ++k) {
      for (std::size_t s = 0; s < m; ++s) stepper.rk4(rho, h);
      diag.steps += m;
      sample(k);
    }
  } else {
    double h = std::min(cfg.dt, cfg.sample_interval);
    const double h_min = 1e-12 * cfg.sample_interval;
    for (std::size_t k = 1; k < num_samples; ++k) {
      double t = times[k - 1];
      const double target = times[k];
      while (t < target) {
        const bool last = t + h >= target;
        const double step = last ? target - t : h;
        const double err = stepper.dopri_attempt(rho, step, cfg.rel_tol, cfg.abs_tol);
        if (!std::isfinite(err)) {
          throw NumericalError("evolve: non-finite error estimate at t=" + fmt_time(t));
        }
        if (err <= 1.0) {
          stepper.dopri_commit(rho);
          t = last ? target : t + step;
          ++diag.steps;
        } else {
          ++diag.rejected_steps;
        }
        const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        if (err <= 1.0 && last) {
          // Keep the controller's proposal rather than the clipped step.
          h = std::max(h, step * factor);
        } else {
          h = step * factor;
        }
        if (h < h_min) {
          throw NumericalError("evolve: adaptive step size underflow at t=" + fmt_time(t) +
                               "; tolerance cannot be met");
        }
      }
      sample(k);
    }
  }

  Trajectory traj(times, cfg.sample_interval, cfg.bin_width);
  for (std::size_t c = 0; c < names.size(); ++c) traj.add_series(names[c], std::move(columns[c]));
  result.trajectory = std::move(traj);

  DenseMatrix full = DenseMatrix::Zero(static_cast<Eigen::Index>(full_dim),
                                       static_cast<Eigen::Index>(full_dim));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      full(static_cast<Eigen::Index>(basis[a]), static_cast<Eigen::Index>(basis[b])) =
          rho(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
    }
  }
  qcore::Tolerances tol;
  tol.trace = cfg.trace_tol;
  tol.hermitian = 1e-10;
  tol.min_eigenvalue = cfg.min_eigenvalue_tol;
  result.final_state = qcore::DensityMatrix(model.space, std::move(full), tol);
  return result;
}

}  // namespace ioncavity::dynamics
