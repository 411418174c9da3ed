#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tiercrypt/numeric.hpp"

namespace tiercrypt {

enum class SeriesKind { SIN, COS, EXP };

const char* series_name(SeriesKind k);
std::optional<SeriesKind> series_from_name(const std::string& name);

struct SeriesSpec {
  SeriesKind kind = SeriesKind::SIN;
  unsigned n_terms = 3; // truncation index N: SIN keeps powers up to X^(2N+1)
};

// Integer form of the truncated Maclaurin series: q(X) = L * p(X), where L is
// the factorial of the highest retained power. Every coefficient is an exact
// integer, so q(X) is an integer for every integer X.
struct MaskPolynomial {
  std::vector<BigInt> coefficients; // index = power of X
  BigInt scale;                     // L

  unsigned degree() const { return unsigned(coefficients.size()) - 1; }
  BigInt eval(const BigInt& x) const;
};

MaskPolynomial mask_coeffs(const SeriesSpec& spec);

/// T = q(X), emitted only when X is the unique non-negative integer preimage.
/// Throws ERR_AMBIGUOUS_MASK if another non-negative integer maps to the same T.
BigInt mask_encode(const BigInt& x, const SeriesSpec& spec);

/// The unique X >= 0 with q(X) = T. All candidates at or below the Cauchy
/// bound of q' are tested exhaustively; beyond it q is strictly monotone and
/// the single remaining candidate is isolated by exact integer search.
/// Throws ERR_NO_PREIMAGE or ERR_AMBIGUOUS_MASK.
BigInt mask_decode(const BigInt& t, const SeriesSpec& spec);

/// Floor of the d-th root of a non-negative integer (exact, Newton iteration).
BigInt integer_root(const BigInt& a, unsigned d);

} // namespace tiercrypt
