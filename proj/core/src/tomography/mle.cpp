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

#include "ioncavity/tomography/mle.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <optional>

#include <Eigen/Eigenvalues>

#include "ioncavity/error.hpp"
#include "ioncavity/util/parallel.hpp"
#include "ioncavity/util/random.hpp"

namespace ioncavity::tomography {

namespace {

using C = std::complex<double>;
using Eigen::VectorXd;

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Counts aggregated over detector swaps: weight n/N_total and measurement
// operator rho_in^T (x) P.
struct Term {
  Matrix4 m;
  double weight = 0.0;
};

struct Terms {
  std::vector<Term> terms;
  double total = 0.0;
};

bool same_input(const InputState& a, const InputState& b) {
  return std::abs(a.alpha - b.alpha) < 1e-12 && std::abs(a.beta - b.beta) < 1e-12;
}

Terms process_terms(std::span<const MeasurementRecord> records) {
  std::vector<InputState> inputs;
  std::vector<std::array<std::array<double, 2>, 3>> counts;
  std::vector<std::array<bool, 3>> seen;
  for (const auto& r : records) {
    r.validate();
    std::size_t k = 0;
    while (k < inputs.size() && !same_input(inputs[k], r.input)) ++k;
    if (k == inputs.size()) {
      inputs.push_back(r.input);
      counts.push_back({});
      seen.push_back({false, false, false});
    }
    const auto b = static_cast<std::size_t>(r.basis);
    counts[k][b][0] += static_cast<double>(r.n_first);
    counts[k][b][1] += static_cast<double>(r.n_second);
    seen[k][b] = true;
  }
  Eigen::Matrix<C, 4, Eigen::Dynamic> span(4, static_cast<Eigen::Index>(inputs.size()));
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    for (std::size_t b = 0; b < 3; ++b) {
      if (!seen[k][b]) {
        throw ConfigError("mle_process: input (" + std::to_string(inputs[k].alpha) + ", " +
                          std::to_string(inputs[k].beta) + ") lacks basis " +
                          to_string(kBases[b]));
      }
    }
    const Matrix2 rho = input_density(inputs[k]);
    span.col(static_cast<Eigen::Index>(k)) = Eigen::Map<const Eigen::Vector4cd>(rho.data());
  }
  if (inputs.size() < 4 || Eigen::FullPivLU<Eigen::MatrixXcd>(span).setThreshold(1e-9).rank() < 4) {
    throw ConfigError("mle_process: input states do not span the qubit operator space");
  }
  Terms t;
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    const Matrix2 rho_t = input_density(inputs[k]).transpose();
    for (std::size_t b = 0; b < 3; ++b) {
      for (int o = 0; o < 2; ++o) {
        const double n = counts[k][b][static_cast<std::size_t>(o)];
        t.total += n;
        if (n == 0.0) continue;
        Matrix4 m;
        const Matrix2 p = basis_projector(kBases[b], o == 0);
        for (int i = 0; i < 2; ++i) {
          for (int j = 0; j < 2; ++j) m.block<2, 2>(2 * i, 2 * j) = rho_t(i, j) * p;
        }
        t.terms.push_back({m, n});
      }
    }
  }
  if (t.total <= 0.0) throw ConfigError("mle_process: records contain no counts");
  for (auto& term : t.terms) term.weight /= t.total;
  return t;
}

Matrix2 trace_out(const Matrix4& a) {
  Matrix2 r;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) r(i, j) = a(2 * i, 2 * j) + a(2 * i + 1, 2 * j + 1);
  }
  return r;
}

Matrix4 kron_identity(const Matrix2& x) {
  Matrix4 r = Matrix4::Zero();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      r(2 * i, 2 * j) = x(i, j);
      r(2 * i + 1, 2 * j + 1) = x(i, j);
    }
  }
  return r;
}

struct Normalized {
  Matrix4 a;
  Matrix2 u;
  Eigen::Vector2d lambda;
  Matrix4 w;
  Matrix4 j;
  bool ok = false;
};

Normalized normalize(const Matrix4& t) {
  Normalized n;
  n.a = t.adjoint() * t;
  Eigen::SelfAdjointEigenSolver<Matrix2> es(trace_out(n.a));
  n.lambda = es.eigenvalues();
  n.u = es.eigenvectors();
  if (!(n.lambda.minCoeff() > 1e-300)) return n;
  const Eigen::Vector2d f = n.lambda.cwiseSqrt().cwiseInverse();
  n.w = kron_identity(n.u * f.cast<C>().asDiagonal() * n.u.adjoint());
  n.j = n.w * n.a * n.w;
  n.ok = true;
  return n;
}

double objective(const Normalized& n, const Terms& terms) {
  if (!n.ok) return kNegInf;
  double f = 0.0;
  for (const auto& t : terms.terms) {
    const double p = (t.m * n.j).trace().real();
    if (!(p > 0.0)) return kNegInf;
    f += t.weight * std::log(p);
  }
  return f;
}

Matrix4 gradient(const Matrix4& tm, const Normalized& n, const Terms& terms) {
  Matrix4 g = Matrix4::Zero();
  for (const auto& t : terms.terms) {
    const double p = (t.m * n.j).trace().real();
    g += (t.weight / p) * t.m;
  }
  const Matrix4 k = n.a * n.w * g + g * n.w * n.a;
  const Matrix2 kt = n.u.adjoint() * trace_out(k) * n.u;
  // Divided differences of lambda^{-1/2}.
  Matrix2 r;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double li = n.lambda(i);
      const double lj = n.lambda(j);
      double fd;
      if (std::abs(li - lj) > 1e-10 * std::max(li, lj)) {
        fd = (1.0 / std::sqrt(li) - 1.0 / std::sqrt(lj)) / (li - lj);
      } else {
        fd = -0.5 * std::pow(0.5 * (li + lj), -1.5);
      }
      r(i, j) = fd * kt(i, j);
    }
  }
  r = n.u * r * n.u.adjoint();
  const Matrix4 q = n.w * g * n.w + kron_identity(r);
  return 2.0 * tm * q;
}

template <int N>
VectorXd pack(const Eigen::Matrix<C, N, N>& m) {
  VectorXd x(2 * N * N);
  for (int k = 0; k < N * N; ++k) {
    x(k) = m.data()[k].real();
    x(N * N + k) = m.data()[k].imag();
  }
  return x;
}

template <int N>
Eigen::Matrix<C, N, N> unpack(const VectorXd& x) {
  Eigen::Matrix<C, N, N> m;
  for (int k = 0; k < N * N; ++k) m.data()[k] = C(x(k), x(N * N + k));
  return m;
}

struct Problem {
  std::function<double(const VectorXd&)> value;
  std::function<VectorXd(const VectorXd&)> grad;
  std::function<VectorXd(const VectorXd&)> project;
};

struct AscentResult {
  VectorXd x;
  double f = 0.0;
  std::size_t iterations = 0;
  double grad_norm = 0.0;
  std::vector<double> history;
};

// Quasi-Newton (BFGS) ascent with Armijo backtracking. The iterate is
// re-projected after every accepted step.
AscentResult bfgs_ascent(VectorXd x, const Problem& p, const MleOptions& opt, const char* who) {
  x = p.project(x);
  double f = p.value(x);
  if (!std::isfinite(f)) throw NumericalError(std::string(who) + ": infeasible starting point");
  VectorXd g = p.grad(x);
  const auto n = x.size();
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n);
  bool fresh = true;
  AscentResult res;
  res.history.push_back(f);
  for (std::size_t it = 1; it <= opt.max_iterations; ++it) {
    VectorXd d = h * g;
    double slope = g.dot(d);
    if (!(slope > 0.0)) {
      h.setIdentity();
      fresh = true;
      d = g;
      slope = g.squaredNorm();
    }
    if (slope == 0.0) {
      res.iterations = it - 1;
      break;
    }
    double step = 1.0;
    double f_new = kNegInf;
    VectorXd x_new;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      x_new = x + step * d;
      f_new = p.value(x_new);
      if (std::isfinite(f_new) && f_new >= f + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (!fresh) {
        h.setIdentity();
        fresh = true;
        continue;
      }
      // No ascent direction left at working precision.
      res.iterations = it;
      break;
    }
    x_new = p.project(x_new);
    f_new = p.value(x_new);
    const VectorXd g_new = p.grad(x_new);
    const VectorXd s = x_new - x;
    const VectorXd y = g - g_new;  // gradient of -f
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      if (fresh) h *= sy / y.squaredNorm();
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd i_n = Eigen::MatrixXd::Identity(n, n);
      h = (i_n - rho * s * y.transpose()) * h * (i_n - rho * y * s.transpose()) +
          rho * s * s.transpose();
      fresh = false;
    }
    const double df = f_new - f;
    x = x_new;
    f = f_new;
    g = g_new;
    res.history.push_back(f);
    res.iterations = it;
    if (std::abs(df) <= opt.rel_tol * std::max(std::abs(f), 1e-300)) break;
    if (it == opt.max_iterations) {
      throw NumericalError(std::string(who) + ": no convergence after " + std::to_string(it) +
                           " iterations (gradient norm " + std::to_string(g.norm()) + ")");
    }
  }
  res.x = x;
  res.f = f;
  res.grad_norm = g.norm();
  return res;
}

}  // namespace

double mle_objective(const Matrix4& t, std::span<const MeasurementRecord> records) {
  return objective(normalize(t), process_terms(records));
}

Matrix4 mle_gradient(const Matrix4& t, std::span<const MeasurementRecord> records) {
  const Normalized n = normalize(t);
  if (!n.ok) throw NumericalError("mle_gradient: singular input marginal");
  return gradient(t, n, process_terms(records));
}

double log_likelihood(const ProcessMatrix& process, std::span<const MeasurementRecord> records) {
  const Terms terms = process_terms(records);
  const Matrix4 j = process.choi();
  double f = 0.0;
  for (const auto& t : terms.terms) {
    const double p = (t.m * j).trace().real();
    if (!(p > 0.0)) return kNegInf;
    f += t.weight * std::log(p);
  }
  return f * terms.total;
}

MleResult mle_process(std::span<const MeasurementRecord> records, const MleOptions& opt) {
  const Terms terms = process_terms(records);
  Problem p;
  p.value = [&](const VectorXd& x) { return objective(normalize(unpack<4>(x)), terms); };
  p.grad = [&](const VectorXd& x) {
    const Matrix4 t = unpack<4>(x);
    return pack<4>(gradient(t, normalize(t), terms));
  };
  p.project = [](const VectorXd& x) {
    const Matrix4 t = unpack<4>(x);
    const Normalized n = normalize(t);
    return n.ok ? pack<4>(Matrix4(t * n.w)) : x;
  };
  const Matrix4 t0 = Matrix4::Identity() / std::sqrt(2.0);
  const AscentResult a = bfgs_ascent(pack<4>(t0), p, opt, "mle_process");
  const Normalized n = normalize(unpack<4>(a.x));
  MleResult r;
  r.process = ProcessMatrix::from_choi(n.j);
  r.log_likelihood = a.f * terms.total;
  r.iterations = a.iterations;
  r.gradient_norm = a.grad_norm;
  r.history = a.history;
  for (double& h : r.history) h *= terms.total;
  return r;
}

StateResult state_tomography(std::span<const MeasurementRecord> records, const MleOptions& opt) {
  if (records.empty()) throw ConfigError("state_tomography: no records");
  std::array<std::array<double, 2>, 3> counts{};
  std::array<bool, 3> seen{false, false, false};
  for (const auto& r : records) {
    r.validate();
    if (!same_input(r.input, records.front().input)) {
      throw ConfigError("state_tomography: records mix several inputs");
    }
    const auto b = static_cast<std::size_t>(r.basis);
    counts[b][0] += static_cast<double>(r.n_first);
    counts[b][1] += static_cast<double>(r.n_second);
    seen[b] = true;
  }
  for (std::size_t b = 0; b < 3; ++b) {
    if (!seen[b]) throw ConfigError("state_tomography: missing basis " + to_string(kBases[b]));
  }
  std::vector<std::pair<Matrix2, double>> terms;
  double total = 0.0;
  for (std::size_t b = 0; b < 3; ++b) {
    for (int o = 0; o < 2; ++o) {
      const double n = counts[b][static_cast<std::size_t>(o)];
      total += n;
      if (n > 0.0) terms.emplace_back(basis_projector(kBases[b], o == 0), n);
    }
  }
  if (total <= 0.0) throw ConfigError("state_tomography: records contain no counts");
  for (auto& t : terms) t.second /= total;

  Problem p;
  p.value = [&](const VectorXd& x) {
    const Matrix2 t = unpack<2>(x);
    const Matrix2 a = t.adjoint() * t;
    const double tr = a.trace().real();
    if (!(tr > 0.0)) return kNegInf;
    double f = 0.0;
    for (const auto& [m, w] : terms) {
      const double q = (m * a).trace().real() / tr;
      if (!(q > 0.0)) return kNegInf;
      f += w * std::log(q);
    }
    return f;
  };
  p.grad = [&](const VectorXd& x) {
    const Matrix2 t = unpack<2>(x);
    const Matrix2 a = t.adjoint() * t;
    const double tr = a.trace().real();
    Matrix2 q = -Matrix2::Identity() / tr;
    for (const auto& [m, w] : terms) q += (w / (m * a).trace().real()) * m;
    return pack<2>(Matrix2(2.0 * t * q));
  };
  p.project = [](const VectorXd& x) { return VectorXd(x / x.norm()); };
  const Matrix2 t0 = Matrix2::Identity() / std::sqrt(2.0);
  const AscentResult a = bfgs_ascent(pack<2>(t0), p, opt, "state_tomography");
  const Matrix2 t = unpack<2>(a.x);
  StateResult r;
  r.rho = t.adjoint() * t;
  r.rho /= r.rho.trace().real();
  r.log_likelihood = a.f * total;
  r.iterations = a.iterations;
  return r;
}

BootstrapResult bootstrap(std::span<const MeasurementRecord> records, std::size_t resamples,
                          std::uint64_t seed, std::size_t threads, const MleOptions& opt) {
  if (resamples < 100) throw ConfigError("bootstrap: resamples must be >= 100");
  process_terms(records);
  const std::vector<MeasurementRecord> base(records.begin(), records.end());
  auto fits = util::parallel_map(resamples, threads, [&](std::size_t r) -> std::optional<double> {
    util::Rng rng = util::make_rng(seed, r);
    std::vector<MeasurementRecord> sample = base;
    for (auto& rec : sample) {
      if (rec.attempts == 0) continue;
      const double n = static_cast<double>(rec.attempts);
      const auto c = util::sample_two_outcomes(rng, rec.attempts, static_cast<double>(rec.n_first) / n,
                                               static_cast<double>(rec.n_second) / n);
      rec.n_first = c.first;
      rec.n_second = c.second;
    }
    try {
      return process_fidelity(mle_process(sample, opt).process);
    } catch (const NumericalError&) {
      return std::nullopt;
    } catch (const ConfigError&) {
      return std::nullopt;
    }
  });
  BootstrapResult b;
  double sum = 0.0;
  double sum2 = 0.0;
  for (const auto& f : fits) {
    if (!f) {
      ++b.skipped;
      continue;
    }
    ++b.used;
    sum += *f;
  }
  if (static_cast<double>(b.skipped) > 0.05 * static_cast<double>(resamples)) {
    throw NumericalError("bootstrap: " + std::to_string(b.skipped) + " of " +
                         std::to_string(resamples) + " resamples failed to converge");
  }
  b.mean = sum / static_cast<double>(b.used);
  for (const auto& f : fits) {
    if (f) sum2 += (*f - b.mean) * (*f - b.mean);
  }
  b.std_error = b.used > 1 ? std::sqrt(sum2 / static_cast<double>(b.used - 1)) : 0.0;
  return b;
}

}  // namespace ioncavity::tomography
