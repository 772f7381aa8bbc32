#include "lcsfrogs/markov.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "lcsfrogs/error.hpp"

namespace lcsfrogs {

namespace {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

u64 pow_mod(u64 b, u64 e, u64 p) {
  u64 r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

class PrimeSource {
 public:
  u64 next() {
    do --cur_;
    while (!is_prime(cur_));
    return cur_;
  }

 private:
  u64 cur_ = u64{1} << 31;
};

// Solves the stationary system mod p. Returns nullopt when singular mod p.
std::optional<std::vector<u64>> solve_mod(const UniformChain& c, u64 p) {
  const std::size_t n = c.states;
  const std::size_t w = n + 1;
  std::vector<u64> a(n * w, 0);
  // Row j < n-1: sum_i A_ij pi_i - d pi_j = 0. Last row: sum pi_i = 1.
  for (std::size_t i = 0; i < n; ++i)
    for (int e = 0; e < c.degree; ++e) {
      std::size_t j = c.next(i, e);
      if (j + 1 < n) a[j * w + i] = (a[j * w + i] + 1) % p;
    }
  for (std::size_t j = 0; j + 1 < n; ++j)
    a[j * w + j] = (a[j * w + j] + p - static_cast<u64>(c.degree) % p) % p;
  for (std::size_t i = 0; i < n; ++i) a[(n - 1) * w + i] = 1;
  a[(n - 1) * w + n] = 1;

  std::vector<std::size_t> nz;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv * w + col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    if (piv != col)
      for (std::size_t k = 0; k < w; ++k) std::swap(a[piv * w + k], a[col * w + k]);
    u64* prow = &a[col * w];
    const u64 inv = pow_mod(prow[col], p - 2, p);
    nz.clear();
    for (std::size_t k = col; k < w; ++k)
      if (prow[k]) {
        prow[k] = prow[k] * inv % p;
        nz.push_back(k);
      }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      u64* row = &a[r * w];
      const u64 f = row[col];
      if (!f) continue;
      const u64 neg = p - f;
      for (std::size_t k : nz) row[k] = (row[k] + neg * prow[k]) % p;
    }
  }
  std::vector<u64> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i * w + n];
  return x;
}

// Finds n/d == u (mod m) with |n|, d <= sqrt(m/2).
std::optional<Rational> reconstruct(const mpz_class& u, const mpz_class& m,
                                    const mpz_class& bound) {
  mpz_class r0 = m, r1 = u, t0 = 0, t1 = 1;
  while (r1 > bound) {
    mpz_class q = r0 / r1;
    mpz_class r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    mpz_class t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (abs(t1) > bound || t1 == 0) return std::nullopt;
  mpz_class num = t1 < 0 ? mpz_class(-r1) : r1;
  mpz_class den = abs(t1);
  mpz_class g = gcd(num, den);
  if (g != 1) return std::nullopt;
  return Rational(num, den);
}

bool verify(const UniformChain& c, const std::vector<Rational>& pi) {
  Rational total = 0;
  std::vector<Rational> flow(c.states, 0);
  for (std::size_t i = 0; i < c.states; ++i) {
    total += pi[i];
    for (int e = 0; e < c.degree; ++e) flow[c.next(i, e)] += pi[i];
  }
  if (total != 1) return false;
  for (std::size_t j = 0; j < c.states; ++j)
    if (flow[j] != pi[j] * c.degree) return false;
  return true;
}

}  // namespace

std::vector<Rational> stationary_exact(const UniformChain& c) {
  if (c.states == 0) throw Error("empty chain");
  PrimeSource primes;
  mpz_class modulus = 1;
  std::vector<mpz_class> residues(c.states, 0);
  int singular = 0;
  constexpr int kMaxPrimes = 400;
  for (int used = 0; used < kMaxPrimes;) {
    const u64 p = primes.next();
    auto sol = solve_mod(c, p);
    if (!sol) {
      // A chain with a unique stationary law is singular mod only finitely
      // many primes; repeated failures mean the system itself is singular.
      if (++singular >= 3) throw Error("chain not uniquely ergodic");
      continue;
    }
    ++used;
    // Garner step: x' = x + M * ((r - x) * M^{-1} mod p).
    const mpz_class pz(static_cast<unsigned long>(p));
    const u64 minv = pow_mod(mpz_class(modulus % pz).get_ui(), p - 2, p);
    for (std::size_t i = 0; i < c.states; ++i) {
      const u64 xr = mpz_class(residues[i] % pz).get_ui();
      const u64 diff = ((*sol)[i] + p - xr) % p;
      const u64 t = diff * minv % p;
      residues[i] += modulus * static_cast<unsigned long>(t);
    }
    modulus *= pz;

    mpz_class bound;
    mpz_sqrt(bound.get_mpz_t(), mpz_class(modulus / 2).get_mpz_t());
    std::vector<Rational> pi;
    pi.reserve(c.states);
    bool ok = true;
    for (std::size_t i = 0; i < c.states && ok; ++i) {
      auto q = reconstruct(residues[i], modulus, bound);
      if (q) pi.push_back(*q);
      else ok = false;
    }
    if (ok && verify(c, pi)) return pi;
  }
  throw Error("exact stationary solve did not converge");
}

std::vector<double> stationary_double(const UniformChain& c) {
  const auto n = static_cast<Eigen::Index>(c.states);
  if (n == 0) throw Error("empty chain");
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(c.states * (c.degree + 2));
  const double w = 1.0 / c.degree;
  // Row j (< n-1): sum_i P_ij pi_i - pi_j = 0.
  for (std::size_t i = 0; i < c.states; ++i)
    for (int e = 0; e < c.degree; ++e) {
      auto j = static_cast<Eigen::Index>(c.next(i, e));
      if (j + 1 < n) trip.emplace_back(j, static_cast<Eigen::Index>(i), w);
    }
  for (Eigen::Index j = 0; j + 1 < n; ++j) trip.emplace_back(j, j, -1.0);
  for (Eigen::Index i = 0; i < n; ++i) trip.emplace_back(n - 1, i, 1.0);
  Eigen::SparseMatrix<double> m(n, n);
  m.setFromTriplets(trip.begin(), trip.end());
  m.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(m);
  if (lu.info() != Eigen::Success) throw Error("chain not uniquely ergodic");
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs(n - 1) = 1.0;
  Eigen::VectorXd x = lu.solve(rhs);
  if (lu.info() != Eigen::Success || !x.allFinite())
    throw Error("chain not uniquely ergodic");
  return {x.data(), x.data() + n};
}

Stationary solve_stationary(const UniformChain& c, bool exact) {
  Stationary out;
  if (exact) {
    auto q = stationary_exact(c);
    out.values.reserve(q.size());
    for (const auto& v : q) out.values.push_back(v.get_d());
    out.exact = std::move(q);
  } else {
    out.values = stationary_double(c);
  }
  return out;
}

struct FundamentalSolver::Impl {
  std::vector<double> pi;
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
};

FundamentalSolver::FundamentalSolver(const UniformChain& c, std::span<const double> pi)
    : impl_(std::make_unique<Impl>()) {
  const auto n = static_cast<Eigen::Index>(c.states);
  if (pi.size() != c.states || n == 0) throw Error("size mismatch");
  impl_->pi.assign(pi.begin(), pi.end());
  // Rows 0..n-2: y_i - sum_e y_succ / d. Last row: pi . y.
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(c.states * (c.degree + 2));
  const double w = 1.0 / c.degree;
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    trip.emplace_back(i, i, 1.0);
    for (int e = 0; e < c.degree; ++e)
      trip.emplace_back(i, static_cast<Eigen::Index>(c.next(i, e)), -w);
  }
  for (Eigen::Index i = 0; i < n; ++i) trip.emplace_back(n - 1, i, pi[i]);
  Eigen::SparseMatrix<double> m(n, n);
  m.setFromTriplets(trip.begin(), trip.end());
  m.makeCompressed();
  impl_->lu.compute(m);
  if (impl_->lu.info() != Eigen::Success) throw Error("fundamental matrix is singular");
}

FundamentalSolver::~FundamentalSolver() = default;
FundamentalSolver::FundamentalSolver(FundamentalSolver&&) noexcept = default;
FundamentalSolver& FundamentalSolver::operator=(FundamentalSolver&&) noexcept = default;

std::vector<double> FundamentalSolver::apply(std::span<const double> g) const {
  const auto& pi = impl_->pi;
  const auto n = static_cast<Eigen::Index>(pi.size());
  if (g.size() != pi.size()) throw Error("size mismatch");
  double pg = 0;
  for (std::size_t i = 0; i < pi.size(); ++i) pg += pi[i] * g[i];
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) rhs(i) = g[i] - pg;
  rhs(n - 1) = pg;
  Eigen::VectorXd y = impl_->lu.solve(rhs);
  if (!y.allFinite()) throw Error("fundamental matrix is singular");
  return {y.data(), y.data() + n};
}

double FundamentalSolver::variance(std::span<const double> g) const {
  const auto& pi = impl_->pi;
  auto y = apply(g);
  double tzg = 0, tg = 0, pg = 0;
  for (std::size_t i = 0; i < pi.size(); ++i) {
    tzg += pi[i] * g[i] * y[i];
    tg += pi[i] * g[i] * g[i];
    pg += pi[i] * g[i];
  }
  return std::max(0.0, 2 * tzg - pg * pg - tg);
}

std::vector<double> apply_fundamental(const UniformChain& c, std::span<const double> pi,
                                      std::span<const double> g) {
  return FundamentalSolver(c, pi).apply(g);
}

double asymptotic_variance(const UniformChain& c, std::span<const double> pi,
                           std::span<const double> g) {
  return FundamentalSolver(c, pi).variance(g);
}

}  // namespace lcsfrogs
