#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "rohlin/expr.hpp"

namespace rohlin {

// Product-type Z^2-actions on infinite tensor products of matrix algebras,
// described by finitely many explicit blocks followed by a tail rule.

struct ActionBlock {
  std::int64_t q;
  MatrixExpr u1;
  MatrixExpr u2;
};

struct TailEntry {
  std::int64_t q = 1;
  std::int64_t s = 0;
  friend bool operator==(const TailEntry&, const TailEntry&) = default;
};

/// trivial: no blocks follow the explicit ones.
/// periodic: the entries of `period` repeat forever; the c-th appearance
/// (c = 1, 2, ...) of {q, s} is a block M_{q^e}, e = start_exponent + c - 1,
/// carrying lambda = exp(2 pi i s / q^e). With q = 2, s = 1, start 1 this is
/// the pair (Omega(2^e, exp(2 pi i / 2^e)), S(2^e)) for e = 1, 2, 3, ...
struct TailSpec {
  enum class Kind { kTrivial, kPeriodic };
  Kind kind = Kind::kTrivial;
  std::vector<TailEntry> period;
  std::int64_t start_exponent = 1;
  friend bool operator==(const TailSpec&, const TailSpec&) = default;
};

struct ProductActionSpec {
  std::vector<ActionBlock> blocks;
  TailSpec tail;
};

/// lambda_k = exp(2 pi i s / base^exponent), an element of Z / base^exponent Z.
struct InvariantEntry {
  std::int64_t base = 1;
  std::int64_t exponent = 1;
  std::int64_t s = 0;
  friend bool operator==(const InvariantEntry&, const InvariantEntry&) = default;
};

struct InvariantSequence {
  std::vector<InvariantEntry> explicit_part;
  TailSpec tail;

  /// Entry k (0-based) of the full sequence; nullopt past the end of a
  /// trivial tail.
  std::optional<InvariantEntry> at(std::size_t k) const;
};

/// Commutation scalar of every block, snapped to a q-th root of unity.
/// Throws kDimensionMismatch when a block's matrices are not q x q.
InvariantSequence extract_invariant(const ProductActionSpec& spec);

/// Eventual equality. Both tails must be of the same kind and, for periodic
/// tails, the block dimensions must agree from some point on; otherwise
/// kIncomparableShapes.
bool invariants_equivalent(const InvariantSequence& a, const InvariantSequence& b);

enum class RohlinVerdict { kRohlin, kNotDecidedFinite, kEvidenceFor, kEvidenceAgainst };
std::string_view verdict_name(RohlinVerdict v) noexcept;

struct EmpiricalOptions {
  std::size_t start = 0;   // first block (0-based)
  std::size_t depth = 8;   // number of cumulative truncations
  int lmax = 3;
  double threshold = 0.1;
};

struct RohlinReport {
  RohlinVerdict verdict = RohlinVerdict::kNotDecidedFinite;
  /// Weyl profile of each cumulative spectrum (empirical mode only).
  std::vector<double> profile_trace;
};

/// Decides from the invariant: every block dimension must be a prime power
/// (kClassMismatch); the action has the Rohlin property when the tail is
/// periodic with a nonzero residue, and nothing is decided otherwise.
RohlinReport rohlin_check_invariant(const ProductActionSpec& spec);

/// For commuting blocks only (kNonCommutingBlock): Weyl profiles of the
/// cumulative joint spectra of the explicit blocks, with a verdict from the
/// last one.
RohlinReport rohlin_check_empirical(const ProductActionSpec& spec,
                                    const EmpiricalOptions& options = {});

enum class RohlinMode { kInvariant, kEmpirical };

RohlinReport rohlin_check(const ProductActionSpec& spec, RohlinMode mode,
                          const EmpiricalOptions& options = {});

/// i_k in {0, 1, ...} or infinity.
struct Exponent {
  bool infinite = false;
  std::int64_t value = 0;
  static Exponent inf() { return {true, 0}; }
  friend bool operator==(const Exponent&, const Exponent&) = default;
};

/// Supernatural number: exponents of finitely many listed primes plus a rule
/// for all remaining primes.
struct AlgebraSignature {
  enum class TailRule { kNone, kAllOtherPrimes };
  std::map<std::int64_t, Exponent> exponents;
  TailRule tail_rule = TailRule::kNone;
  Exponent tail_exponent;

  bool infinite_dimensional() const;
};

AlgebraSignature algebra_signature(const ProductActionSpec& spec);

enum class Regime { kManyClasses, kOneClass, kNoRohlin };
std::string_view regime_name(Regime r) noexcept;

/// MANY_CLASSES when infinitely many primes have a finite positive exponent,
/// ONE_CLASS when only finitely many do but the algebra is infinite
/// dimensional, NO_ROHLIN when it is finite dimensional.
Regime classify_regime(const AlgebraSignature& sig);

/// Prime factorization by trial division, primes ascending.
std::map<std::int64_t, std::int64_t> factorize(std::int64_t q);

}  // namespace rohlin
