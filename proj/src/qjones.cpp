#include "qknot/qjones.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <unordered_map>
#include <vector>

#include "qknot/dilog.hpp"

namespace qknot::qjones {

namespace {

/// Dense Laurent workspace for the hot summation loops: a contiguous
/// coefficient block plus the exponent of its first entry. QLaurent's map
/// representation is the exchange format, not the compute format.
class Dense {
 public:
  Dense() = default;

  static Dense one() {
    Dense d;
    d.off_ = 0;
    d.c_.assign(1, Int(1));
    return d;
  }

  bool is_zero() const { return c_.empty(); }
  long offset() const { return off_; }
  const std::vector<Int>& raw() const { return c_; }

  // *= coef * q^a
  void mul_monomial(long coef, long a) {
    if (c_.empty()) return;
    off_ += a;
    if (coef != 1)
      for (Int& v : c_) v *= coef;
    if (coef == 0) c_.clear();
  }

  // *= (1 - q^a)
  void mul_one_minus_q(long a) {
    if (c_.empty()) return;
    if (a == 0) {  // multiplying by zero
      c_.clear();
      return;
    }
    const long n = static_cast<long>(c_.size());
    const long new_off = std::min(off_, off_ + a);
    const long new_top = std::max(off_ + n - 1, off_ + a + n - 1);
    std::vector<Int> out(static_cast<size_t>(new_top - new_off + 1), Int(0));
    for (long i = 0; i < n; ++i) {
      out[static_cast<size_t>(off_ + i - new_off)] += c_[static_cast<size_t>(i)];
      out[static_cast<size_t>(off_ + a + i - new_off)] -= c_[static_cast<size_t>(i)];
    }
    off_ = new_off;
    c_ = std::move(out);
    trim();
  }

  // exact /= (1 - q^a), a > 0
  void div_one_minus_q(long a) {
    if (a <= 0) throw std::logic_error("Dense::div_one_minus_q needs a positive exponent");
    if (c_.empty()) return;
    const long n = static_cast<long>(c_.size());
    // r(e) satisfies c(e) = r(e) - r(e-a): ascending sweep r = c + shifted r.
    for (long i = a; i < n; ++i)
      c_[static_cast<size_t>(i)] += c_[static_cast<size_t>(i - a)];
    for (long i = n - a; i < n; ++i) {
      if (c_[static_cast<size_t>(i)] != 0)
        throw std::logic_error("Dense::div_one_minus_q: division is not exact");
    }
    c_.resize(static_cast<size_t>(std::max<long>(n - a, 0)));
    trim();
  }

  static Dense mul(const Dense& a, const Dense& b) {
    Dense out;
    if (a.is_zero() || b.is_zero()) return out;
    out.off_ = a.off_ + b.off_;
    out.c_.assign(a.c_.size() + b.c_.size() - 1, Int(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (size_t j = 0; j < b.c_.size(); ++j)
        out.c_[i + j] += a.c_[i] * b.c_[j];
    }
    out.trim();
    return out;
  }

  // this += sign * q^shift * other
  void add_scaled(const Dense& other, long shift, int sign) {
    if (other.is_zero()) return;
    const long o_off = other.off_ + shift;
    const long o_top = o_off + static_cast<long>(other.c_.size()) - 1;
    if (c_.empty()) {
      off_ = o_off;
      c_.assign(other.c_.size(), Int(0));
    }
    long new_off = std::min(off_, o_off);
    long new_top = std::max(off_ + static_cast<long>(c_.size()) - 1, o_top);
    if (new_off != off_ || new_top != off_ + static_cast<long>(c_.size()) - 1) {
      std::vector<Int> grown(static_cast<size_t>(new_top - new_off + 1), Int(0));
      for (size_t i = 0; i < c_.size(); ++i)
        grown[static_cast<size_t>(off_ - new_off) + i] = std::move(c_[i]);
      c_ = std::move(grown);
      off_ = new_off;
    }
    for (size_t i = 0; i < other.c_.size(); ++i) {
      Int& slot = c_[static_cast<size_t>(o_off - off_) + i];
      if (sign > 0)
        slot += other.c_[i];
      else
        slot -= other.c_[i];
    }
    trim();
  }

  // q -> 1/q
  Dense mirrored() const {
    Dense out;
    if (c_.empty()) return out;
    out.c_.assign(c_.rbegin(), c_.rend());
    out.off_ = -(off_ + static_cast<long>(c_.size()) - 1);
    return out;
  }

  QLaurent to_qlaurent() const {
    QLaurent out;
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] != 0)
        out += QLaurent::monomial(c_[i], off_ + static_cast<long>(i));
    }
    return out;
  }

 private:
  void trim() {
    size_t lead = 0;
    while (lead < c_.size() && c_[lead] == 0) ++lead;
    if (lead == c_.size()) {
      c_.clear();
      off_ = 0;
      return;
    }
    if (lead > 0) {
      c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
      off_ += static_cast<long>(lead);
    }
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  long off_ = 0;
  std::vector<Int> c_;
};

Dense dense_qpoch(long a, unsigned n) {
  Dense d = Dense::one();
  for (unsigned i = 1; i <= n; ++i) {
    d.mul_one_minus_q(a + static_cast<long>(i) - 1);
    if (d.is_zero()) break;
  }
  return d;
}

Dense dense_qbinom(unsigned n, unsigned k) {
  if (k > n) throw std::invalid_argument("qbinom requires k <= n");
  Dense d = Dense::one();
  // [n over k] = prod_{t=1}^{n-k} (1 - q^{k+t}) / (1 - q^t); interleave the
  // exact divisions to keep intermediate degrees low.
  for (unsigned t = 1; t <= n - k; ++t) {
    d.mul_one_minus_q(static_cast<long>(k + t));
    d.div_one_minus_q(static_cast<long>(t));
  }
  return d;
}

/// Lazily memoized q-binomials, used by the nested twist/torus sums. Only
/// engaged for small N; above that the table would dominate memory.
class BinomCache {
 public:
  explicit BinomCache(unsigned N) : enabled_(N <= 64) {}

  const Dense& get(unsigned n, unsigned k) {
    if (!enabled_) {
      scratch_ = dense_qbinom(n, k);
      return scratch_;
    }
    const std::uint64_t key = (static_cast<std::uint64_t>(n) << 32) | k;
    auto it = table_.find(key);
    if (it == table_.end()) it = table_.emplace(key, dense_qbinom(n, k)).first;
    return it->second;
  }

 private:
  bool enabled_;
  Dense scratch_;
  std::unordered_map<std::uint64_t, Dense> table_;
};

double chain_count(unsigned N, unsigned depth) {
  // C(N-1+depth, depth) in floating point; only used against the cap.
  double c = 1.0;
  for (unsigned i = 1; i <= depth; ++i)
    c *= static_cast<double>(N - 1 + i) / static_cast<double>(i);
  return c;
}

void enforce_cap(unsigned N, unsigned depth, const SumLimits& limits) {
  const double chains = chain_count(N, depth);
  if (chains > static_cast<double>(limits.max_chains)) {
    throw ResourceCapError(
        "nested Jones sum too large: about " + std::to_string(chains) +
            " chains for N=" + std::to_string(N) + ", |p|=" + std::to_string(depth) +
            " exceeds the cap of " + std::to_string(limits.max_chains) +
            " (raise SumLimits::max_chains / --max-chains to override)",
        chains, limits.max_chains);
  }
}

/// Inner weighted chain sum G_depth(t) for fixed top index t:
///   G_1(u) = 1,   G_i(u) = sum_{v<=u} [u over v] q^{f(v)} G_{i-1}(v).
/// `f` couples the inner indices to the top one, so the recursion is rebuilt
/// per t. `mirror_binom` selects base q^{-1} binomials (negative twists).
Dense inner_chain_sum(unsigned depth, unsigned t, BinomCache& binoms,
                      bool mirror_binom, const std::function<long(long)>& f) {
  std::vector<Dense> prev(t + 1);
  for (unsigned u = 0; u <= t; ++u) prev[u] = Dense::one();
  std::vector<Dense> cur(t + 1);
  for (unsigned level = 2; level <= depth; ++level) {
    for (unsigned u = 0; u <= t; ++u) {
      Dense sum;
      for (unsigned v = 0; v <= u; ++v) {
        if (prev[v].is_zero()) continue;
        Dense bin = binoms.get(u, v);
        if (mirror_binom) bin = bin.mirrored();
        Dense piece = Dense::mul(bin, prev[v]);
        piece.mul_monomial(1, f(static_cast<long>(v)));
        sum.add_scaled(piece, 0, +1);
      }
      cur[u] = std::move(sum);
    }
    std::swap(prev, cur);
  }
  return prev[t];
}

}  // namespace

QLaurent qpoch(long a, unsigned n) { return dense_qpoch(a, n).to_qlaurent(); }

QLaurent qbinom(unsigned n, unsigned k, QBase base) {
  Dense d = dense_qbinom(n, k);
  if (base == QBase::q_inverse) d = d.mirrored();
  return d.to_qlaurent();
}

QLaurent jones_twist(int p, unsigned N, const SumLimits& limits) {
  if (p == 0) throw std::invalid_argument("jones_twist requires p != 0");
  if (N < 1) throw std::invalid_argument("jones_twist requires N >= 1");
  const unsigned depth = static_cast<unsigned>(p > 0 ? p : -p);
  enforce_cap(N, depth, limits);

  BinomCache binoms(N);
  Dense acc;
  Dense poch = Dense::one();  // (q^{1-N})_t (q^{1+N})_t
  const long Nl = static_cast<long>(N);
  for (unsigned t = 0; t < N; ++t) {
    const long tl = static_cast<long>(t);
    if (t >= 1) {
      poch.mul_one_minus_q(tl - Nl);
      poch.mul_one_minus_q(tl + Nl);
    }
    if (poch.is_zero()) break;

    Dense term = poch;
    int sign = +1;
    long base_exp = 0;
    if (p > 0) {
      base_exp = static_cast<long>(p - 1) * tl * (tl + 1) + tl;
    } else {
      sign = (t % 2 == 0) ? +1 : -1;
      base_exp = -(2 * static_cast<long>(depth) - 1) * tl * (tl + 1) / 2;
    }
    if (depth >= 2) {
      const auto f = (p > 0)
                         ? std::function<long(long)>([tl](long v) { return v * v - (2 * tl + 1) * v; })
                         : std::function<long(long)>([tl](long v) { return -v * v + (2 * tl + 1) * v; });
      Dense inner = inner_chain_sum(depth, t, binoms, /*mirror_binom=*/p < 0, f);
      term = Dense::mul(term, inner);
    }
    acc.add_scaled(term, base_exp, sign);
  }
  return acc.to_qlaurent();
}

QLaurent jones_torus(int p, unsigned N, const SumLimits& limits) {
  if (p < 1) throw std::invalid_argument("jones_torus requires p >= 1");
  if (N < 1) throw std::invalid_argument("jones_torus requires N >= 1");
  const unsigned depth = static_cast<unsigned>(p);
  enforce_cap(N, depth, limits);

  BinomCache binoms(N);
  Dense acc;
  Dense poch = Dense::one();    // (q^{1-N})_t
  Dense qb = Dense::one();      // (q^{1+N})_t / (q)_t = [N+t over t]
  const long Nl = static_cast<long>(N);
  for (unsigned t = 0; t < N; ++t) {
    const long tl = static_cast<long>(t);
    if (t >= 1) {
      poch.mul_one_minus_q(tl - Nl);
      qb.mul_one_minus_q(Nl + tl);
      qb.div_one_minus_q(tl);
    }
    if (poch.is_zero()) break;

    Dense term = Dense::mul(poch, qb);
    const long base_exp = static_cast<long>(p - 1) * tl * (tl + 1);
    if (depth >= 2) {
      const auto f = std::function<long(long)>([tl](long v) { return v * v - (2 * tl + 1) * v; });
      Dense inner = inner_chain_sum(depth, t, binoms, /*mirror_binom=*/false, f);
      term = Dense::mul(term, inner);
    }
    acc.add_scaled(term, base_exp, +1);
  }
  // prefactor q^{p(1-N^2)}
  acc.mul_monomial(1, static_cast<long>(p) * (1 - Nl * Nl));
  return acc.to_qlaurent();
}

std::array<QLaurent, 3> jones_trefoil_variants(unsigned N) {
  if (N < 1) throw std::invalid_argument("jones_trefoil_variants requires N >= 1");
  const long Nl = static_cast<long>(N);

  // (a) q^{1-N} sum_n q^{-nN} (q^{1-N})_n
  Dense a;
  {
    Dense poch = Dense::one();
    for (unsigned n = 0; n < N; ++n) {
      const long nl = static_cast<long>(n);
      if (n >= 1) poch.mul_one_minus_q(nl - Nl);
      if (poch.is_zero()) break;
      a.add_scaled(poch, -nl * Nl, +1);
    }
    a.mul_monomial(1, 1 - Nl);
  }

  // (b) sum_n q^{-n(n+2)} (q^{1-N})_n (q^{1+N})_n
  Dense b;
  {
    Dense poch = Dense::one();
    for (unsigned n = 0; n < N; ++n) {
      const long nl = static_cast<long>(n);
      if (n >= 1) {
        poch.mul_one_minus_q(nl - Nl);
        poch.mul_one_minus_q(nl + Nl);
      }
      if (poch.is_zero()) break;
      b.add_scaled(poch, -nl * (nl + 2), +1);
    }
  }

  // (c) the torus formula at p = 1
  return {a.to_qlaurent(), b.to_qlaurent(), jones_torus(1, N)};
}

Cx jones_eval(const JonesQuery& query, const SumLimits& limits) {
  if (!query.r.has_value() || *query.r == 0.0)
    throw std::invalid_argument("jones_eval requires a nonzero evaluation parameter r");
  QLaurent j;
  if (query.knot.kind == KnotKind::twist)
    j = jones_twist(query.knot.p, query.N, limits);
  else
    j = jones_torus(query.knot.p, query.N, limits);
  const Cx value = j.eval_root(*query.r, query.N);
  if (!is_finite(value)) throw EvalOverflow("jones_eval produced a non-finite value");
  return value;
}

double check_poch_asymptotics(Cx x, double n_fraction, double r, unsigned N) {
  if (std::abs(x) == 0.0) return 0.0;
  if (std::abs(x) >= 1.0)
    throw std::invalid_argument("check_poch_asymptotics requires |x| < 1");
  const unsigned n = static_cast<unsigned>(n_fraction * static_cast<double>(N));
  if (n == 0) return 0.0;

  const double two_pi = 2.0 * std::numbers::pi;
  Cx log_sum = 0.0;
  for (unsigned i = 1; i <= n; ++i) {
    const Cx qi = std::polar(1.0, two_pi * r * static_cast<double>(i) / static_cast<double>(N));
    log_sum += std::log(1.0 - x * qi);
  }
  const Cx qn = std::polar(1.0, two_pi * r * static_cast<double>(n) / static_cast<double>(N));
  const Cx kernel = (li2(x).value - li2(x * qn).value) *
                    (static_cast<double>(N) / (two_pi * r)) / Cx(0.0, 1.0);
  return std::abs(log_sum - kernel) / std::abs(log_sum);
}

}  // namespace qknot::qjones
