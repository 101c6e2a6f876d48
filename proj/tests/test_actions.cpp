#include <doctest.h>

#include <string>

#include "rohlin/actions.hpp"
#include "rohlin/error.hpp"
#include "rohlin/invariants.hpp"
#include "rohlin/io.hpp"
#include "support.hpp"

using namespace rohlin;
using namespace rohlin::testing;

namespace {

ProductActionSpec fixture(const char* name) {
  return parse_action_spec(read_json_file(std::string(ROHLIN_SOURCE_DIR) + "/fixtures/" + name));
}

ActionBlock block(std::int64_t q, const std::string& u1, const std::string& u2) {
  return {q, MatrixExpr::parse(u1), MatrixExpr::parse(u2)};
}

TailSpec periodic(std::vector<TailEntry> period, std::int64_t start = 1) {
  return {TailSpec::Kind::kPeriodic, std::move(period), start};
}

// Unitary matrix literal text for the expression grammar.
std::string literal(const ComplexMatrix& m) {
  std::string out = "[";
  char buf[96];
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out += r ? ",[" : "[";
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "%s%.17g%+.17gi", c ? "," : "", m(r, c).real(), m(r, c).imag());
      out += buf;
    }
    out += "]";
  }
  return out + "]";
}

Errc error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::kInvalidArgument;
}

InvariantSequence random_sequence(Rng& rng, const std::vector<std::int64_t>& dims,
                                  const std::vector<std::int64_t>& tail_dims) {
  InvariantSequence seq;
  for (std::int64_t q : dims) {
    std::uniform_int_distribution<std::int64_t> s(0, q - 1);
    seq.explicit_part.push_back({q, 1, s(rng)});
  }
  seq.tail.kind = TailSpec::Kind::kPeriodic;
  for (std::int64_t q : tail_dims) {
    std::uniform_int_distribution<std::int64_t> s(0, 1);
    seq.tail.period.push_back({q, s(rng)});
  }
  return seq;
}

}  // namespace

TEST_SUITE("actions") {

TEST_CASE("invariant of a single anticommuting block") {
  ProductActionSpec spec;
  spec.blocks.push_back(block(2, "S(2)", "Omega(2,1/2)"));
  const InvariantSequence seq = extract_invariant(spec);
  REQUIRE(seq.explicit_part.size() == 1);
  CHECK(seq.explicit_part[0] == InvariantEntry{2, 1, 1});
  CHECK_FALSE(seq.at(1).has_value());
}

TEST_CASE("commuting blocks have zero invariant") {
  ProductActionSpec spec;
  spec.blocks.push_back(block(2, "S(2)", "I(2)"));
  spec.blocks.push_back(block(3, "diag(0,1/3,2/3)", "diag(1/2,0,0)"));
  for (const InvariantEntry& e : extract_invariant(spec).explicit_part) CHECK(e.s == 0);
}

TEST_CASE("the two outer conjugate actions") {
  const ProductActionSpec alpha = fixture("outer_conjugate_alpha.json");
  const ProductActionSpec beta = fixture("outer_conjugate_beta.json");
  const InvariantSequence a = extract_invariant(alpha), b = extract_invariant(beta);
  for (const InvariantEntry& e : a.explicit_part) CHECK(e.s != 0);
  CHECK(b.explicit_part[0].s == 0);
  // The tail continues the powers of two after 2^3.
  CHECK(*a.at(4) == InvariantEntry{2, 4, 1});
  CHECK(*a.at(6) == InvariantEntry{2, 6, 1});
  CHECK(invariants_equivalent(a, b));
  CHECK(rohlin_check(alpha, RohlinMode::kInvariant).verdict == RohlinVerdict::kRohlin);
  CHECK(rohlin_check(beta, RohlinMode::kInvariant).verdict == RohlinVerdict::kRohlin);
}

TEST_CASE("equivalence examples") {
  Rng rng(107);
  const InvariantSequence a = random_sequence(rng, {2, 3, 5}, {7});
  CHECK(invariants_equivalent(a, a));
  InvariantSequence b = a;
  b.explicit_part[1].s = (b.explicit_part[1].s + 1) % 3;
  CHECK(invariants_equivalent(a, b));
  InvariantSequence c = a;
  c.tail.period[0].s = 1 - c.tail.period[0].s;
  CHECK_FALSE(invariants_equivalent(a, c));

  InvariantSequence finite = a;
  finite.tail = {};
  CHECK(error_of([&] { invariants_equivalent(a, finite); }) == Errc::kIncomparableShapes);
  InvariantSequence other = a;
  other.tail.period[0].q = 11;
  CHECK(error_of([&] { invariants_equivalent(a, other); }) == Errc::kIncomparableShapes);
}

TEST_CASE("equivalence is an equivalence relation") {
  Rng rng(109);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int trial = 0; trial < 100; ++trial) {
    // Same eventual shape; prefixes of different lengths express the same tail.
    const InvariantSequence base = random_sequence(rng, {3, 5}, {2, 2});
    std::vector<InvariantSequence> family;
    for (int j = 0; j < 3; ++j) {
      InvariantSequence s = base;
      for (auto& e : s.explicit_part) {
        if (coin(rng)) e.s = (e.s + 1) % e.base;
      }
      if (coin(rng)) s.tail.period[static_cast<std::size_t>(coin(rng))].s ^= 1;
      if (coin(rng)) {
        // Unroll one period into the explicit part.
        for (const TailEntry& t : s.tail.period) s.explicit_part.push_back({t.q, s.tail.start_exponent, t.s});
        ++s.tail.start_exponent;
      }
      family.push_back(s);
    }
    for (const auto& x : family) CHECK(invariants_equivalent(x, x));
    for (const auto& x : family) {
      for (const auto& y : family) {
        CHECK(invariants_equivalent(x, y) == invariants_equivalent(y, x));
        for (const auto& z : family) {
          if (invariants_equivalent(x, y) && invariants_equivalent(y, z)) CHECK(invariants_equivalent(x, z));
        }
      }
    }
  }
}

TEST_CASE("invariant is unchanged by conjugating blocks") {
  Rng rng(113);
  ProductActionSpec plain, conjugated;
  const std::pair<std::int64_t, std::int64_t> shapes[] = {{2, 1}, {3, 2}, {4, 3}, {5, 0}, {6, 1}};
  for (const auto& [q, k] : shapes) {
    const ComplexMatrix s = shift_matrix(q), w = clock_matrix(q, Turns(k, q));
    const ComplexMatrix g = haar_matrix(q, rng);
    plain.blocks.push_back({q, MatrixExpr::parse(literal(s)), MatrixExpr::parse(literal(w))});
    conjugated.blocks.push_back({q, MatrixExpr::parse(literal(g * s * g.adjoint())),
                                 MatrixExpr::parse(literal(g * w * g.adjoint()))});
  }
  CHECK(extract_invariant(plain).explicit_part == extract_invariant(conjugated).explicit_part);
}

TEST_CASE("invariant-mode verdicts") {
  ProductActionSpec spec;
  spec.blocks.push_back(block(2, "S(2)", "I(2)"));
  spec.tail = periodic({{8, 1}});
  CHECK(rohlin_check(spec, RohlinMode::kInvariant).verdict == RohlinVerdict::kRohlin);
  spec.tail = periodic({{8, 0}});
  CHECK(rohlin_check(spec, RohlinMode::kInvariant).verdict == RohlinVerdict::kNotDecidedFinite);
  spec.tail = {};
  CHECK(rohlin_check(spec, RohlinMode::kInvariant).verdict == RohlinVerdict::kNotDecidedFinite);
  spec.blocks.push_back(block(6, "S(6)", "I(6)"));
  CHECK(error_of([&] { rohlin_check(spec, RohlinMode::kInvariant); }) == Errc::kClassMismatch);
}

TEST_CASE("empirical mode on commuting grids") {
  const ProductActionSpec grid = fixture("commuting_grid.json");
  const RohlinReport report = rohlin_check(grid, RohlinMode::kEmpirical);
  CHECK(report.verdict == RohlinVerdict::kEvidenceFor);
  REQUIRE(report.profile_trace.size() == 8);
  CHECK(report.profile_trace.back() < 0.1);

  ProductActionSpec only_twos;
  for (int j = 0; j < 4; ++j) {
    only_twos.blocks.push_back(block(2, "S(2)", "I(2)"));
    only_twos.blocks.push_back(block(2, "I(2)", "S(2)"));
  }
  // Spectra stay in {+-1}^2, so l = (2, 0) never averages out.
  const RohlinReport twos = rohlin_check(only_twos, RohlinMode::kEmpirical);
  CHECK(twos.verdict == RohlinVerdict::kEvidenceAgainst);
  CHECK(twos.profile_trace.back() == doctest::Approx(1.0));

  CHECK(error_of([] { rohlin_check(fixture("outer_conjugate_alpha.json"), RohlinMode::kEmpirical); }) ==
        Errc::kNonCommutingBlock);
  EmpiricalOptions deep;
  deep.depth = 9;
  CHECK(error_of([&] { rohlin_check(grid, RohlinMode::kEmpirical, deep); }) == Errc::kInvalidArgument);
}

TEST_CASE("algebra signatures") {
  ProductActionSpec spec;
  spec.blocks.push_back(block(4, "I(4)", "I(4)"));
  spec.blocks.push_back(block(9, "I(9)", "I(9)"));
  AlgebraSignature sig = algebra_signature(spec);
  CHECK(sig.exponents == std::map<std::int64_t, Exponent>{{2, {false, 2}}, {3, {false, 2}}});
  CHECK_FALSE(sig.infinite_dimensional());
  CHECK(classify_regime(sig) == Regime::kNoRohlin);

  ProductActionSpec six;
  six.blocks.push_back(block(6, "I(6)", "I(6)"));
  CHECK(algebra_signature(six).exponents == std::map<std::int64_t, Exponent>{{2, {false, 1}}, {3, {false, 1}}});

  ProductActionSpec car;
  car.tail = periodic({{2, 0}});
  sig = algebra_signature(car);
  CHECK(sig.exponents.at(2) == Exponent::inf());
  CHECK(classify_regime(sig) == Regime::kOneClass);

  CHECK(factorize(360) == std::map<std::int64_t, std::int64_t>{{2, 3}, {3, 2}, {5, 1}});
  CHECK(factorize(1).empty());
}

TEST_CASE("regime trichotomy") {
  AlgebraSignature many;
  many.tail_rule = AlgebraSignature::TailRule::kAllOtherPrimes;
  many.tail_exponent = {false, 1};
  CHECK(classify_regime(many) == Regime::kManyClasses);
  many.exponents[2] = Exponent::inf();
  CHECK(classify_regime(many) == Regime::kManyClasses);

  AlgebraSignature every_prime_infinite;
  every_prime_infinite.tail_rule = AlgebraSignature::TailRule::kAllOtherPrimes;
  every_prime_infinite.tail_exponent = Exponent::inf();
  CHECK(classify_regime(every_prime_infinite) == Regime::kOneClass);

  AlgebraSignature car;
  car.exponents[2] = Exponent::inf();
  CHECK(classify_regime(car) == Regime::kOneClass);

  AlgebraSignature finite;
  finite.exponents[2] = {false, 3};
  finite.exponents[5] = {false, 1};
  CHECK(classify_regime(finite) == Regime::kNoRohlin);
  CHECK(regime_name(Regime::kManyClasses) == "MANY_CLASSES");
}

TEST_CASE("signature and regime survive regrouping") {
  Rng rng(127);
  const std::int64_t dims[] = {2, 3, 4, 5, 2, 3};
  std::uniform_int_distribution<int> coin(0, 1);
  for (int trial = 0; trial < 30; ++trial) {
    ProductActionSpec spec;
    for (std::int64_t q : dims) {
      const std::string n = std::to_string(q);
      spec.blocks.push_back(block(q, "S(" + n + ")", "Omega(" + n + ",1/" + n + ")"));
    }
    if (coin(rng)) spec.tail = periodic({{2, 1}, {3, 0}});

    ProductActionSpec grouped;
    grouped.tail = spec.tail;
    for (std::size_t j = 0; j < spec.blocks.size();) {
      if (j + 1 < spec.blocks.size() && coin(rng)) {
        const ActionBlock& a = spec.blocks[j];
        const ActionBlock& b = spec.blocks[j + 1];
        grouped.blocks.push_back(block(a.q * b.q, "kron(" + a.u1.to_string() + "," + b.u1.to_string() + ")",
                                       "kron(" + a.u2.to_string() + "," + b.u2.to_string() + ")"));
        j += 2;
      } else {
        grouped.blocks.push_back(spec.blocks[j]);
        ++j;
      }
    }
    const AlgebraSignature s1 = algebra_signature(spec), s2 = algebra_signature(grouped);
    CHECK(s1.exponents == s2.exponents);
    CHECK(classify_regime(s1) == classify_regime(s2));
    // Regrouped blocks are still lambda-pairs.
    CHECK_NOTHROW(extract_invariant(grouped));
  }
}

TEST_CASE("winding detects differing invariants on prime-power blocks") {
  // For an exact pair with scalar e^{2 pi i s/q} padded to n = q r, winding at
  // e^{-2 pi i t/q} is r times the principal representative of t - s mod q.
  Rng rng(131);
  for (std::int64_t q : {3, 4, 5, 8, 9}) {
    for (std::int64_t r : {1, 2, 3}) {
      const std::int64_t n = q * r;
      const ComplexMatrix g = haar_matrix(n, rng);
      for (std::int64_t s = 0; s < q; ++s) {
        const ComplexMatrix id = ComplexMatrix::Identity(r, r);
        const UnitaryMatrix u = UnitaryMatrix::from(g * kron(shift_matrix(q), id) * g.adjoint());
        const UnitaryMatrix v = UnitaryMatrix::from(g * kron(clock_matrix(q, Turns(-s, q)), id) * g.adjoint());
        for (std::int64_t t = 0; t < q; ++t) {
          if (2 * (((t - s) % q + q) % q) == q) continue;  // defect exactly 2
          const WindingResult w = winding_number(u, v, root_of_unity(-t, q));
          CHECK(w.value % r == 0);
          const std::int64_t residue = ((w.value / r - (t - s)) % q + q) % q;
          CHECK(residue == 0);
          CHECK(((w.value / r) % q != 0) == (s != t));
        }
      }
    }
  }
}

TEST_CASE("block size must match the declared dimension") {
  ProductActionSpec spec;
  spec.blocks.push_back(block(3, "S(2)", "S(2)"));
  CHECK(error_of([&] { extract_invariant(spec); }) == Errc::kDimensionMismatch);
  spec.blocks[0] = block(2, "S(2)", "diag(0,1/4)");
  CHECK(error_of([&] { extract_invariant(spec); }) == Errc::kNotScalarCommutator);
}

}  // TEST_SUITE
