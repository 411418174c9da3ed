#include "tiercrypt/seriesmask.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace tiercrypt {

namespace {

BigInt factorial(unsigned n) {
  BigInt f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

void check_spec(const SeriesSpec& spec) {
  if (spec.n_terms < 1) throw Error(ErrorCode::ERR_BAD_VALUE, "series needs n >= 1");
}

// Ceiling of the Cauchy root bound of q': all real roots of q' lie below it,
// so q is strictly monotone on (bound, +inf).
BigInt derivative_cauchy_bound(const MaskPolynomial& q) {
  const unsigned d = q.degree();
  BigInt lead = d * q.coefficients[d];
  BigInt max_other = 0;
  for (unsigned i = 1; i < d; ++i)
    max_other = std::max(max_other, BigInt(boost::multiprecision::abs(i * q.coefficients[i])));
  BigInt abs_lead = boost::multiprecision::abs(lead);
  return 1 + (max_other + abs_lead - 1) / abs_lead;
}

// Value -> preimages over [0, bound], built once per spec.
struct PreimageTable {
  BigInt bound;
  std::map<BigInt, std::vector<BigInt>> hits;
};

constexpr unsigned kCacheBoundCap = 1u << 20;

std::shared_ptr<const PreimageTable> exhaustive_table(const SeriesSpec& spec,
                                                      const MaskPolynomial& q,
                                                      const BigInt& bound) {
  static std::mutex mu;
  static std::map<std::pair<int, unsigned>, std::shared_ptr<const PreimageTable>> cache;
  const auto key = std::make_pair(int(spec.kind), spec.n_terms);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto table = std::make_shared<PreimageTable>();
  table->bound = bound;
  for (BigInt x = 0; x <= bound; ++x) table->hits[q.eval(x)].push_back(x);
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, table);
  return table;
}

// Single root of the strictly monotone tail (bound, +inf), or nullopt. The
// search window is seeded with the degree-th root of |T| (the lead coefficient
// is always +-1) and widened until it provably brackets T, then bisected.
std::optional<BigInt> tail_search(const MaskPolynomial& q, const BigInt& bound, const BigInt& t) {
  const unsigned d = q.degree();
  const bool increasing = q.coefficients[d] > 0;
  const BigInt floor_x = bound + 1;
  auto val = [&](const BigInt& x) { return increasing ? q.eval(x) : -q.eval(x); };
  const BigInt target = increasing ? t : -t;

  if (val(floor_x) > target) return std::nullopt; // tail starts beyond T
  BigInt seed = integer_root(boost::multiprecision::abs(t), d);

  BigInt lo = std::max(floor_x, BigInt(seed - 4));
  BigInt step = 8;
  while (lo > floor_x && val(lo) > target) {
    lo = std::max(floor_x, BigInt(seed - step));
    step <<= 1;
  }
  BigInt hi = std::max(lo, BigInt(seed + 4));
  step = 8;
  while (val(hi) < target) {
    hi = seed + step;
    step <<= 1;
  }
  while (lo < hi) {
    BigInt mid = (lo + hi) >> 1;
    if (val(mid) < target) lo = mid + 1;
    else hi = mid;
  }
  if (val(lo) == target) return lo;
  return std::nullopt;
}

std::vector<BigInt> preimages(const BigInt& t, const SeriesSpec& spec) {
  const MaskPolynomial q = mask_coeffs(spec);
  const BigInt bound = derivative_cauchy_bound(q);
  std::vector<BigInt> found;
  if (bound <= kCacheBoundCap) {
    auto table = exhaustive_table(spec, q, bound);
    if (auto it = table->hits.find(t); it != table->hits.end())
      found.insert(found.end(), it->second.begin(), it->second.end());
  } else {
    // Too big to memoize; scan directly.
    for (BigInt x = 0; x <= bound; ++x)
      if (q.eval(x) == t) found.push_back(x);
  }
  if (auto x = tail_search(q, bound, t)) found.push_back(*x);
  return found;
}

} // namespace

const char* series_name(SeriesKind k) {
  switch (k) {
    case SeriesKind::SIN: return "SIN";
    case SeriesKind::COS: return "COS";
    case SeriesKind::EXP: return "EXP";
  }
  return "?";
}

std::optional<SeriesKind> series_from_name(const std::string& name) {
  for (SeriesKind k : {SeriesKind::SIN, SeriesKind::COS, SeriesKind::EXP})
    if (name == series_name(k)) return k;
  return std::nullopt;
}

BigInt MaskPolynomial::eval(const BigInt& x) const {
  BigInt acc = 0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * x + *it;
  return acc;
}

MaskPolynomial mask_coeffs(const SeriesSpec& spec) {
  check_spec(spec);
  const unsigned n = spec.n_terms;
  MaskPolynomial q;
  switch (spec.kind) {
    case SeriesKind::SIN:
      q.scale = factorial(2 * n + 1);
      q.coefficients.assign(2 * n + 2, 0);
      for (unsigned k = 0; k <= n; ++k) {
        BigInt c = q.scale / factorial(2 * k + 1);
        q.coefficients[2 * k + 1] = (k % 2 == 0) ? c : -c;
      }
      break;
    case SeriesKind::COS:
      q.scale = factorial(2 * n);
      q.coefficients.assign(2 * n + 1, 0);
      for (unsigned k = 0; k <= n; ++k) {
        BigInt c = q.scale / factorial(2 * k);
        q.coefficients[2 * k] = (k % 2 == 0) ? c : -c;
      }
      break;
    case SeriesKind::EXP:
      q.scale = factorial(n);
      q.coefficients.assign(n + 1, 0);
      for (unsigned k = 0; k <= n; ++k) q.coefficients[k] = q.scale / factorial(k);
      break;
  }
  return q;
}

BigInt mask_encode(const BigInt& x, const SeriesSpec& spec) {
  check_spec(spec);
  if (x < 0) throw Error(ErrorCode::ERR_BAD_VALUE, "mask input must be >= 0");
  const BigInt t = mask_coeffs(spec).eval(x);
  auto pre = preimages(t, spec);
  if (pre.size() > 1)
    throw Error(ErrorCode::ERR_AMBIGUOUS_MASK,
                std::to_string(pre.size()) + " preimages share the masked value");
  return t;
}

BigInt mask_decode(const BigInt& t, const SeriesSpec& spec) {
  check_spec(spec);
  auto pre = preimages(t, spec);
  if (pre.empty()) throw Error(ErrorCode::ERR_NO_PREIMAGE, "no integer solves q(X) = T");
  if (pre.size() > 1)
    throw Error(ErrorCode::ERR_AMBIGUOUS_MASK,
                std::to_string(pre.size()) + " preimages share the masked value");
  return pre.front();
}

BigInt integer_root(const BigInt& a, unsigned d) {
  if (a < 0) throw Error(ErrorCode::ERR_BAD_VALUE, "integer_root needs a >= 0");
  if (d == 0) throw Error(ErrorCode::ERR_BAD_VALUE, "integer_root needs d >= 1");
  if (a == 0 || d == 1) return a;
  BigInt x = BigInt(1) << (bit_length(a) / d + 1); // >= true root
  for (;;) {
    BigInt xd1 = boost::multiprecision::pow(x, d - 1);
    BigInt y = ((d - 1) * x + a / xd1) / d;
    if (y >= x) break;
    x = y;
  }
  while (boost::multiprecision::pow(x, d) > a) --x;
  while (boost::multiprecision::pow(x + 1, d) <= a) ++x;
  return x;
}

} // namespace tiercrypt
