#include "rohlin/actions.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "rohlin/equidist.hpp"
#include "rohlin/error.hpp"
#include "rohlin/lambda_pairs.hpp"

namespace rohlin {

namespace {

using Factorization = std::map<std::int64_t, std::int64_t>;

Factorization dimension_of(const InvariantEntry& e) {
  Factorization f = factorize(e.base);
  for (auto& [prime, power] : f) power *= e.exponent;
  return f;
}

bool is_prime_power(std::int64_t q) { return q >= 2 && factorize(q).size() == 1; }

LambdaPair evaluate_block(const ActionBlock& block, std::size_t index) {
  const ComplexMatrix u1 = block.u1.evaluate();
  const ComplexMatrix u2 = block.u2.evaluate();
  if (u1.rows() != block.q || u2.rows() != block.q) {
    throw Error(Errc::kDimensionMismatch, "block " + std::to_string(index) + " declares q = " +
                                              std::to_string(block.q) + " but its matrices are " +
                                              std::to_string(u1.rows()) + " and " +
                                              std::to_string(u2.rows()) + " dimensional");
  }
  return LambdaPair::from(UnitaryMatrix::from(u1), UnitaryMatrix::from(u2));
}

}  // namespace

std::map<std::int64_t, std::int64_t> factorize(std::int64_t q) {
  if (q < 1) throw Error(Errc::kInvalidArgument, "only positive integers factorize");
  std::map<std::int64_t, std::int64_t> out;
  for (std::int64_t p = 2; p <= q / p; ++p) {
    while (q % p == 0) {
      ++out[p];
      q /= p;
    }
  }
  if (q > 1) ++out[q];
  return out;
}

std::optional<InvariantEntry> InvariantSequence::at(std::size_t k) const {
  if (k < explicit_part.size()) return explicit_part[k];
  if (tail.kind == TailSpec::Kind::kTrivial || tail.period.empty()) return std::nullopt;
  const std::size_t t = k - explicit_part.size();
  const std::size_t period = tail.period.size();
  const TailEntry& entry = tail.period[t % period];
  const auto repeat = static_cast<std::int64_t>(t / period);
  return InvariantEntry{entry.q, tail.start_exponent + repeat, entry.s};
}

InvariantSequence extract_invariant(const ProductActionSpec& spec) {
  InvariantSequence seq;
  seq.tail = spec.tail;
  for (std::size_t k = 0; k < spec.blocks.size(); ++k) {
    const ActionBlock& block = spec.blocks[k];
    const LambdaPair pair = evaluate_block(block, k);
    const Turns angle = pair.angle();  // reduced, denominator divides q
    const std::int64_t s = angle.num() * (block.q / angle.den());
    seq.explicit_part.push_back({block.q, 1, s});
  }
  return seq;
}

bool invariants_equivalent(const InvariantSequence& a, const InvariantSequence& b) {
  using Kind = TailSpec::Kind;
  const bool a_periodic = a.tail.kind == Kind::kPeriodic && !a.tail.period.empty();
  const bool b_periodic = b.tail.kind == Kind::kPeriodic && !b.tail.period.empty();
  if (a_periodic != b_periodic) {
    throw Error(Errc::kIncomparableShapes, "one sequence is finite and the other is not");
  }
  if (!a_periodic) {
    // Finite sequences of the same length agree vacuously past their end.
    if (a.explicit_part.size() != b.explicit_part.size()) {
      throw Error(Errc::kIncomparableShapes, "finite sequences of different lengths");
    }
    return true;
  }

  // Past both explicit parts every dimension exponent grows affinely with
  // the number of completed periods, and residues repeat with the period.
  // Two full common periods therefore decide both the shape and the values.
  const std::size_t start = std::max(a.explicit_part.size(), b.explicit_part.size());
  const std::size_t common = std::lcm(a.tail.period.size(), b.tail.period.size());
  bool equal = true;
  for (std::size_t k = start; k < start + 2 * common; ++k) {
    const InvariantEntry x = *a.at(k);
    const InvariantEntry y = *b.at(k);
    if (dimension_of(x) != dimension_of(y)) {
      throw Error(Errc::kIncomparableShapes,
                  "block dimensions differ at index " + std::to_string(k));
    }
    if (x.s != y.s) equal = false;
  }
  return equal;
}

std::string_view verdict_name(RohlinVerdict v) noexcept {
  switch (v) {
    case RohlinVerdict::kRohlin: return "ROHLIN";
    case RohlinVerdict::kNotDecidedFinite: return "NOT_DECIDED_FINITE";
    case RohlinVerdict::kEvidenceFor: return "EVIDENCE_FOR";
    case RohlinVerdict::kEvidenceAgainst: return "EVIDENCE_AGAINST";
  }
  return "UNKNOWN";
}

RohlinReport rohlin_check_invariant(const ProductActionSpec& spec) {
  for (std::size_t k = 0; k < spec.blocks.size(); ++k) {
    if (!is_prime_power(spec.blocks[k].q)) {
      throw Error(Errc::kClassMismatch, "block " + std::to_string(k) + " has dimension " +
                                            std::to_string(spec.blocks[k].q) +
                                            ", not a prime power");
    }
  }
  for (const TailEntry& e : spec.tail.period) {
    if (!is_prime_power(e.q)) {
      throw Error(Errc::kClassMismatch,
                  "tail dimension " + std::to_string(e.q) + " is not a prime power");
    }
  }
  // Validates every block even though only the tail decides.
  extract_invariant(spec);

  RohlinReport report;
  const bool nonzero_tail =
      spec.tail.kind == TailSpec::Kind::kPeriodic &&
      std::any_of(spec.tail.period.begin(), spec.tail.period.end(),
                  [](const TailEntry& e) { return e.s % e.q != 0; });
  report.verdict = nonzero_tail ? RohlinVerdict::kRohlin : RohlinVerdict::kNotDecidedFinite;
  return report;
}

RohlinReport rohlin_check_empirical(const ProductActionSpec& spec,
                                    const EmpiricalOptions& options) {
  std::vector<LambdaPair> pairs;
  pairs.reserve(spec.blocks.size());
  for (std::size_t k = 0; k < spec.blocks.size(); ++k) {
    LambdaPair pair = evaluate_block(spec.blocks[k], k);
    if (pair.angle().num() != 0) {
      throw Error(Errc::kNonCommutingBlock,
                  "empirical mode needs commuting blocks; block " + std::to_string(k) +
                      " has lambda = exp(2 pi i " + pair.angle().to_string() + ")");
    }
    pairs.push_back(std::move(pair));
  }
  for (const TailEntry& e : spec.tail.period) {
    if (e.s % e.q != 0) {
      throw Error(Errc::kNonCommutingBlock, "empirical mode needs a commuting tail");
    }
  }
  if (options.depth == 0 || options.start + options.depth > pairs.size()) {
    throw Error(Errc::kInvalidArgument, "start + depth exceeds the number of explicit blocks");
  }
  pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(options.start + options.depth), pairs.end());

  RohlinReport report;
  for (const TorusSequence& spectrum : cumulative_spectra(pairs, options.start)) {
    report.profile_trace.push_back(weyl_profile(spectrum, options.lmax));
  }
  report.verdict = report.profile_trace.back() < options.threshold
                       ? RohlinVerdict::kEvidenceFor
                       : RohlinVerdict::kEvidenceAgainst;
  return report;
}

RohlinReport rohlin_check(const ProductActionSpec& spec, RohlinMode mode,
                          const EmpiricalOptions& options) {
  return mode == RohlinMode::kInvariant ? rohlin_check_invariant(spec)
                                        : rohlin_check_empirical(spec, options);
}

bool AlgebraSignature::infinite_dimensional() const {
  if (tail_rule == TailRule::kAllOtherPrimes && (tail_exponent.infinite || tail_exponent.value > 0)) {
    return true;
  }
  return std::any_of(exponents.begin(), exponents.end(),
                     [](const auto& kv) { return kv.second.infinite; });
}

AlgebraSignature algebra_signature(const ProductActionSpec& spec) {
  AlgebraSignature sig;
  for (const ActionBlock& block : spec.blocks) {
    for (const auto& [prime, power] : factorize(block.q)) {
      Exponent& e = sig.exponents[prime];
      if (!e.infinite) e.value += power;
    }
  }
  if (spec.tail.kind == TailSpec::Kind::kPeriodic) {
    for (const TailEntry& entry : spec.tail.period) {
      for (const auto& [prime, power] : factorize(entry.q)) {
        (void)power;
        sig.exponents[prime] = Exponent::inf();
      }
    }
  }
  return sig;
}

std::string_view regime_name(Regime r) noexcept {
  switch (r) {
    case Regime::kManyClasses: return "MANY_CLASSES";
    case Regime::kOneClass: return "ONE_CLASS";
    case Regime::kNoRohlin: return "NO_ROHLIN";
  }
  return "UNKNOWN";
}

Regime classify_regime(const AlgebraSignature& sig) {
  // Only the rule for the remaining primes can produce infinitely many
  // finite positive exponents.
  if (sig.tail_rule == AlgebraSignature::TailRule::kAllOtherPrimes &&
      !sig.tail_exponent.infinite && sig.tail_exponent.value >= 1) {
    return Regime::kManyClasses;
  }
  return sig.infinite_dimensional() ? Regime::kOneClass : Regime::kNoRohlin;
}

}  // namespace rohlin
