#include "threshmatch/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "threshmatch/generalized.hpp"

namespace threshmatch {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

bool ConsistencyBox::feasible() const {
  for (int i = 0; i < agents(); ++i) {
    double lo_sum = std::accumulate(lo[i].begin(), lo[i].end(), 0.0);
    double hi_sum = std::accumulate(hi[i].begin(), hi[i].end(), 0.0);
    if (lo_sum > 1.0 + kUnitSumTol || hi_sum < 1.0 - kUnitSumTol) return false;
  }
  return true;
}

ConsistencyBox consistency_box(const InputProfile& input, const ThresholdVector& taus) {
  if (input.kind != ProfileKind::OneSided)
    throw std::invalid_argument("one-sided consistency box needs a one-sided profile");
  const int n = input.agents();
  ConsistencyBox box;
  box.lo.assign(n, std::vector<double>(n, 0.0));
  box.hi.assign(n, std::vector<double>(n, taus.last()));
  for (int i = 0; i < n; ++i) {
    for (int k = 1; k <= input.t; ++k) {
      for (const auto& mem : input.sets[i][k - 1]) {
        box.lo[i][mem.item] = taus.tau(k);
        box.hi[i][mem.item] = taus.tau(k - 1);
      }
    }
  }
  return box;
}

GenCoordMap GenCoordMap::of(const GeneralizedInstance& inst) {
  GenCoordMap map;
  map.offset.assign(inst.n, std::vector<int>(inst.m, 0));
  map.size.assign(inst.n, 0);
  for (int i = 0; i < inst.n; ++i) {
    int off = 0;
    for (int a = 0; a < inst.m; ++a) {
      map.offset[i][a] = off;
      off += inst.pair_depth(i, a);
    }
    map.size[i] = off;
  }
  return map;
}

ConsistencyBox consistency_box(const InputProfile& input, const ThresholdVector& taus,
                               const GeneralizedInstance& inst) {
  if (input.kind != ProfileKind::Generalized)
    throw std::invalid_argument("generalized consistency box needs a generalized profile");
  GenCoordMap map = GenCoordMap::of(inst);
  ConsistencyBox box;
  box.lo.resize(inst.n);
  box.hi.resize(inst.n);
  for (int i = 0; i < inst.n; ++i) {
    box.lo[i].assign(map.size[i], 0.0);
    box.hi[i].assign(map.size[i], taus.last());
    for (int k = 1; k <= input.t; ++k) {
      for (const auto& mem : input.sets[i][k - 1]) {
        int c = map.coord(i, mem.item, mem.copy);
        box.lo[i][c] = taus.tau(k);
        box.hi[i][c] = taus.tau(k - 1);
      }
    }
  }
  return box;
}

LinearMaxResult agent_linear_max(const std::vector<double>& coeffs,
                                 const std::vector<double>& lo, const std::vector<double>& hi) {
  const size_t n = coeffs.size();
  if (lo.size() != n || hi.size() != n)
    throw std::invalid_argument("coefficient and bound lengths do not match");
  double lo_sum = 0, hi_sum = 0;
  for (size_t j = 0; j < n; ++j) {
    if (lo[j] > hi[j] + kBoundaryTol) throw std::invalid_argument("box has lo > hi");
    lo_sum += lo[j];
    hi_sum += hi[j];
  }
  if (lo_sum > 1.0 + kUnitSumTol || hi_sum < 1.0 - kUnitSumTol)
    throw std::invalid_argument("infeasible box: no unit-sum point");

  LinearMaxResult result;
  result.u = lo;
  double budget = 1.0 - lo_sum;
  if (budget < 0) budget = 0;

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (coeffs[a] != coeffs[b]) return coeffs[a] > coeffs[b];
    return a < b;
  });
  for (int j : order) {
    if (budget <= 0) break;
    double room = hi[j] - lo[j];
    double add = std::min(room, budget);
    result.u[j] += add;
    budget -= add;
  }
  result.value = 0;
  for (size_t j = 0; j < n; ++j) result.value += coeffs[j] * result.u[j];
  return result;
}

namespace {

double eval(const std::vector<std::vector<double>>& coef,
            const std::vector<std::vector<double>>& u) {
  double s = 0;
  for (size_t i = 0; i < coef.size(); ++i)
    for (size_t j = 0; j < coef[i].size(); ++j) s += coef[i][j] * u[i][j];
  return s;
}

// Feasible maximizer of N over the face {D = 0}, when that face is
// nonempty: coordinates with positive denominator coefficient are pinned to
// zero. Returns false when the face is infeasible for some agent.
bool max_num_on_zero_den_face(const RatioProblem& p, std::vector<std::vector<double>>* u,
                              double* value) {
  const auto& box = *p.box;
  std::vector<std::vector<double>> face_hi = box.hi;
  for (int i = 0; i < box.agents(); ++i) {
    for (size_t j = 0; j < face_hi[i].size(); ++j) {
      if (p.den[i][j] > 1e-15) {
        if (box.lo[i][j] > kBoundaryTol) return false;
        face_hi[i][j] = 0.0;
      }
    }
    double lo_sum = std::accumulate(box.lo[i].begin(), box.lo[i].end(), 0.0);
    double hi_sum = std::accumulate(face_hi[i].begin(), face_hi[i].end(), 0.0);
    if (lo_sum > 1.0 + kUnitSumTol || hi_sum < 1.0 - kUnitSumTol) return false;
  }
  u->resize(box.agents());
  *value = 0;
  for (int i = 0; i < box.agents(); ++i) {
    auto res = agent_linear_max(p.num[i], box.lo[i], face_hi[i]);
    (*u)[i] = std::move(res.u);
    *value += res.value;
  }
  return true;
}

}  // namespace

RatioResult worst_case_ratio(const RatioProblem& problem) {
  const auto& box = *problem.box;
  if (!box.feasible()) throw std::invalid_argument("infeasible consistency box");
  const int agents = box.agents();

  RatioResult result;

  // The supremum is +infinity exactly when the denominator can vanish while
  // the numerator stays positive; the empty-profile adversaries realize
  // this face.
  {
    std::vector<std::vector<double>> face_u;
    double face_num = 0;
    if (max_num_on_zero_den_face(problem, &face_u, &face_num) && face_num > 1e-9) {
      result.unbounded = true;
      result.ratio = kInf;
      result.witness = std::move(face_u);
      return result;
    }
  }

  // Start from the denominator maximizer so the first lambda is defined.
  std::vector<std::vector<double>> u(agents);
  double num = 0, den = 0;
  for (int i = 0; i < agents; ++i) {
    auto res = agent_linear_max(problem.den[i], box.lo[i], box.hi[i]);
    u[i] = std::move(res.u);
  }
  num = eval(problem.num, u);
  den = eval(problem.den, u);
  if (den < 1e-15) {
    // D vanishes everywhere; the face check above already ruled out N > 0.
    result.ratio = 1.0;
    result.witness = std::move(u);
    return result;
  }

  double lambda = num / den;
  result.lambda_history.push_back(lambda);
  std::vector<double> coeffs;
  for (int iter = 0; iter < kDinkelbachMaxIter; ++iter) {
    std::vector<std::vector<double>> best_u(agents);
    double value = 0;
    for (int i = 0; i < agents; ++i) {
      coeffs.resize(problem.num[i].size());
      for (size_t j = 0; j < coeffs.size(); ++j)
        coeffs[j] = problem.num[i][j] - lambda * problem.den[i][j];
      auto res = agent_linear_max(coeffs, box.lo[i], box.hi[i]);
      best_u[i] = std::move(res.u);
      value += res.value;
    }
    result.iterations = iter + 1;
    if (value < kDinkelbachTol) {
      result.ratio = lambda;
      result.witness = std::move(best_u);
      result.final_residual = std::fabs(value);
      return result;
    }
    double new_num = eval(problem.num, best_u);
    double new_den = eval(problem.den, best_u);
    if (new_den < 1e-15) {
      // Positive residual with a vanishing denominator: unbounded.
      result.unbounded = true;
      result.ratio = kInf;
      result.witness = std::move(best_u);
      return result;
    }
    lambda = new_num / new_den;
    result.lambda_history.push_back(lambda);
    u = std::move(best_u);
  }
  throw std::runtime_error("dinkelbach iteration did not converge within " +
                           std::to_string(kDinkelbachMaxIter) + " steps");
}

DistortionResult exact_distortion(const std::vector<std::vector<double>>& p,
                                  const InputProfile& input, const ThresholdVector& taus) {
  const int n = input.agents();
  if (n > kMaxOneSidedOracleAgents)
    throw SizeLimitError("exact distortion refused: " + std::to_string(n) +
                         " agents exceeds the enumeration limit of " +
                         std::to_string(kMaxOneSidedOracleAgents));
  if (static_cast<int>(p.size()) != n)
    throw std::invalid_argument("distribution and input profile sizes do not match");

  ConsistencyBox box = consistency_box(input, taus);
  RatioProblem problem;
  problem.box = &box;
  problem.den = p;
  problem.num.assign(n, std::vector<double>(n, 0.0));

  DistortionResult result;
  result.distortion = -kInf;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    for (int i = 0; i < n; ++i) {
      std::fill(problem.num[i].begin(), problem.num[i].end(), 0.0);
      problem.num[i][perm[i]] = 1.0;
    }
    RatioResult r = worst_case_ratio(problem);
    if (r.unbounded) {
      result.distortion = kInf;
      result.unbounded = true;
      result.best_alternative.assign = perm;
      result.witness_u = std::move(r.witness);
      return result;
    }
    if (r.ratio > result.distortion) {
      result.distortion = r.ratio;
      result.best_alternative.assign = perm;
      result.witness_u = std::move(r.witness);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return result;
}

std::vector<std::vector<double>> allocation_coeffs(const Allocation& alloc,
                                                   const GeneralizedInstance& inst) {
  GenCoordMap map = GenCoordMap::of(inst);
  std::vector<std::vector<double>> coeffs(inst.n);
  for (int i = 0; i < inst.n; ++i) {
    coeffs[i].assign(map.size[i], 0.0);
    for (int a = 0; a < inst.m; ++a)
      for (int j = 1; j <= alloc.x[i][a]; ++j) coeffs[i][map.coord(i, a, j)] = 1.0;
  }
  return coeffs;
}

std::vector<std::vector<double>> grt_denominator_coeffs(const Allocation& gt_output,
                                                        const GeneralizedInstance& inst) {
  GenCoordMap map = GenCoordMap::of(inst);
  const double q = 0.5 * grt_random_pair_probability(inst.n, inst.m);
  std::vector<std::vector<double>> coeffs(inst.n);
  for (int i = 0; i < inst.n; ++i) {
    coeffs[i].assign(map.size[i], 0.0);
    for (int a = 0; a < inst.m; ++a) {
      for (int j = 1; j <= inst.copy_limit(i, a); ++j) coeffs[i][map.coord(i, a, j)] += q;
      for (int j = 1; j <= gt_output.x[i][a]; ++j) coeffs[i][map.coord(i, a, j)] += 0.5;
    }
  }
  return coeffs;
}

namespace {

void enumerate_alloc_rec(const GeneralizedInstance& inst, int pair_index,
                         std::vector<int>& cap_left, std::vector<int>& sup_left,
                         long long remaining, std::vector<std::vector<int>>& x,
                         std::vector<Allocation>& out) {
  const int total_pairs = inst.n * inst.m;
  if (remaining == 0) {
    Allocation alloc;
    alloc.x = x;
    alloc.maximal = true;
    out.push_back(std::move(alloc));
    return;
  }
  if (pair_index == total_pairs) return;
  // Prune: not enough room left in the remaining pairs.
  long long slack = 0;
  for (int idx = pair_index; idx < total_pairs && slack < remaining; ++idx) {
    int i = idx / inst.m, a = idx % inst.m;
    slack += std::min({cap_left[i], sup_left[a], inst.copy_limit(i, a)});
  }
  if (slack < remaining) return;

  const int i = pair_index / inst.m, a = pair_index % inst.m;
  int most = std::min({cap_left[i], sup_left[a], inst.copy_limit(i, a)});
  if (static_cast<long long>(most) > remaining) most = static_cast<int>(remaining);
  for (int c = 0; c <= most; ++c) {
    x[i][a] = c;
    cap_left[i] -= c;
    sup_left[a] -= c;
    enumerate_alloc_rec(inst, pair_index + 1, cap_left, sup_left, remaining - c, x, out);
    cap_left[i] += c;
    sup_left[a] += c;
    x[i][a] = 0;
  }
}

}  // namespace

std::vector<Allocation> enumerate_maximal_allocations(const GeneralizedInstance& inst) {
  inst.validate_dims();
  std::vector<Allocation> out;
  std::vector<int> cap_left = inst.capacities;
  std::vector<int> sup_left = inst.supplies;
  std::vector<std::vector<int>> x(inst.n, std::vector<int>(inst.m, 0));
  enumerate_alloc_rec(inst, 0, cap_left, sup_left, inst.assignable(), x, out);
  return out;
}

GenDistortionResult exact_distortion(const std::vector<std::vector<double>>& den_coeffs,
                                     const InputProfile& input, const ThresholdVector& taus,
                                     const GeneralizedInstance& inst) {
  if (inst.assignable() > kMaxGeneralizedOracleTotal)
    throw SizeLimitError("exact distortion refused: assignable total " +
                         std::to_string(inst.assignable()) + " exceeds the limit of " +
                         std::to_string(kMaxGeneralizedOracleTotal));

  ConsistencyBox box = consistency_box(input, taus, inst);
  RatioProblem problem;
  problem.box = &box;
  problem.den = den_coeffs;

  GenDistortionResult result;
  result.distortion = -kInf;
  for (const Allocation& alt : enumerate_maximal_allocations(inst)) {
    problem.num = allocation_coeffs(alt, inst);
    RatioResult r = worst_case_ratio(problem);
    if (r.unbounded) {
      result.distortion = kInf;
      result.unbounded = true;
      result.best_alternative = alt;
      result.witness_u = std::move(r.witness);
      return result;
    }
    if (r.ratio > result.distortion) {
      result.distortion = r.ratio;
      result.best_alternative = alt;
      result.witness_u = std::move(r.witness);
    }
  }
  return result;
}

std::vector<std::vector<double>> estimate_probabilities(
    const std::function<Matching(Rng&)>& sample_matching, int n, int samples, uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  std::vector<std::vector<double>> p(n, std::vector<double>(n, 0.0));
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    Matching m = sample_matching(rng);
    for (int i = 0; i < n; ++i) p[i][m.assign[i]] += 1.0;
  }
  for (auto& row : p)
    for (double& v : row) v /= samples;
  return p;
}

}  // namespace threshmatch
