#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <string>

#include "rohlin/actions.hpp"
#include "rohlin/equidist.hpp"
#include "rohlin/error.hpp"
#include "rohlin/invariants.hpp"
#include "rohlin/io.hpp"
#include "rohlin/lambda_pairs.hpp"
#include "rohlin/towers.hpp"

namespace rohlin::cli {

namespace {

using nlohmann::json;

// Thrown for problems with the command line itself (exit code 2).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fixed_turns(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17f", t);
  return buf;
}

json invariant_json(const InvariantSequence& seq) {
  json entries = json::array();
  for (const InvariantEntry& e : seq.explicit_part) entries.push_back({{"q", e.base}, {"s", e.s}});
  json tail = {{"kind", seq.tail.kind == TailSpec::Kind::kPeriodic ? "periodic" : "trivial"}};
  if (seq.tail.kind == TailSpec::Kind::kPeriodic) {
    json period = json::array();
    for (const TailEntry& e : seq.tail.period) period.push_back({{"q", e.q}, {"s", e.s}});
    tail["period"] = std::move(period);
    tail["start_exponent"] = seq.tail.start_exponent;
  }
  return {{"explicit", std::move(entries)}, {"tail", std::move(tail)}};
}

json exponent_json(const Exponent& e) { return e.infinite ? json("inf") : json(e.value); }

json signature_json(const AlgebraSignature& sig) {
  json exps = json::object();
  for (const auto& [prime, e] : sig.exponents) exps[std::to_string(prime)] = exponent_json(e);
  json out = {{"exponents", std::move(exps)},
              {"infinite_dimensional", sig.infinite_dimensional()}};
  if (sig.tail_rule == AlgebraSignature::TailRule::kAllOtherPrimes) {
    out["tail_rule"] = {{"all_other_primes", exponent_json(sig.tail_exponent)}};
  } else {
    out["tail_rule"] = "none";
  }
  return out;
}

// Invariant-mode verdict, or the error that prevented one.
json invariant_verdict_json(const ProductActionSpec& spec) {
  try {
    return {{"mode", "invariant"}, {"verdict", verdict_name(rohlin_check_invariant(spec).verdict)}};
  } catch (const Error& e) {
    if (e.code() != Errc::kClassMismatch) throw;
    return {{"mode", "invariant"}, {"verdict", nullptr}, {"error", e.name()}, {"detail", e.what()}};
  }
}

json report_json(const RohlinReport& r) {
  return {{"mode", "empirical"},
          {"verdict", verdict_name(r.verdict)},
          {"profile_trace", r.profile_trace}};
}

Turns parse_lambda(const std::string& text) {
  try {
    return Turns::parse(text);
  } catch (const Error& e) {
    throw UsageError("--lambda expects rational turns such as 1/8: " + std::string(e.what()));
  }
}

// Most balanced a x b = count with a <= b.
std::vector<std::size_t> balanced_dims(std::size_t count) {
  std::size_t a = 1;
  for (std::size_t d = 1; d * d <= count; ++d) {
    if (count % d == 0) a = d;
  }
  return {a, count / a};
}

struct EmpiricalFlags {
  std::size_t m = 0;
  std::size_t depth = 8;
  int lmax = 3;
  double threshold = 0.1;

  void attach(CLI::App* app) {
    app->add_option("--m", m, "first block of the cumulative products (0-based)");
    app->add_option("--depth", depth, "number of cumulative truncations")->check(CLI::PositiveNumber);
    app->add_option("--lmax", lmax, "largest |l_i| in the Weyl profile")->check(CLI::PositiveNumber);
    app->add_option("--threshold", threshold, "profile level counted as evidence");
  }
  EmpiricalOptions options() const { return {m, depth, lmax, threshold}; }
};

int cmd_analyze(const std::string& path, const std::string& mode, const EmpiricalFlags& flags,
                std::ostream& out) {
  const ProductActionSpec spec = parse_action_spec(read_json_file(path));
  const AlgebraSignature sig = algebra_signature(spec);
  json report = {{"invariant", invariant_json(extract_invariant(spec))},
                 {"signature", signature_json(sig)},
                 {"regime", regime_name(classify_regime(sig))}};
  report["rohlin"] = mode == "empirical" ? report_json(rohlin_check_empirical(spec, flags.options()))
                                         : invariant_verdict_json(spec);
  out << report.dump(2) << "\n";
  return kExitOk;
}

int cmd_classify(const std::string& path_a, const std::string& path_b, std::ostream& out) {
  const ProductActionSpec a = parse_action_spec(read_json_file(path_a));
  const ProductActionSpec b = parse_action_spec(read_json_file(path_b));
  const bool equivalent = invariants_equivalent(extract_invariant(a), extract_invariant(b));
  const json rohlin_a = invariant_verdict_json(a);
  const json rohlin_b = invariant_verdict_json(b);
  const bool in_class = rohlin_a["verdict"] == "ROHLIN" && rohlin_b["verdict"] == "ROHLIN";

  json report = {{"equivalent", equivalent},
                 {"regime_a", regime_name(classify_regime(algebra_signature(a)))},
                 {"regime_b", regime_name(classify_regime(algebra_signature(b)))},
                 {"rohlin_a", rohlin_a},
                 {"rohlin_b", rohlin_b}};
  if (in_class) {
    report["justification"] =
        equivalent ? "both actions have the Rohlin property and eventually equal invariants: "
                     "outer conjugate"
                   : "both actions have the Rohlin property and invariants that are not "
                     "eventually equal: not outer conjugate";
    report["outer_conjugate"] = equivalent;
  } else {
    report["justification"] =
        "invariants compared only; outer conjugacy is decided by them only for Rohlin actions "
        "on prime-power blocks";
    report["outer_conjugate"] = nullptr;
  }
  out << report.dump(2) << "\n";
  return kExitOk;
}

int cmd_weyl(const std::string& path, const EmpiricalFlags& flags, const std::string& out_path,
             std::size_t eps_limit, std::ostream& out) {
  const ProductActionSpec spec = parse_action_spec(read_json_file(path));
  std::vector<LambdaPair> pairs;
  for (std::size_t k = 0; k < spec.blocks.size() && k < flags.m + flags.depth; ++k) {
    const ActionBlock& b = spec.blocks[k];
    pairs.push_back(LambdaPair::from(UnitaryMatrix::from(b.u1.evaluate()),
                                     UnitaryMatrix::from(b.u2.evaluate())));
  }
  if (pairs.size() < flags.m + flags.depth) {
    throw UsageError("--m + --depth exceeds the number of explicit blocks");
  }
  const std::vector<TorusSequence> spectra = cumulative_spectra(pairs, flags.m);

  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw UsageError("cannot write " + out_path);
  }
  std::ostream& csv = out_path.empty() ? out : file;
  csv << "n,l,abs_weyl_sum,eps_star\n";

  json profiles = json::array();
  double last = 0.0;
  for (std::size_t t = 0; t < spectra.size(); ++t) {
    const TorusSequence& s = spectra[t];
    const std::size_t n = flags.m + t + 1;  // blocks m..n-1 (0-based) are in the product
    std::string eps;
    if (s.size() <= eps_limit) {
      eps = fixed_turns(epsilon_distribution(s, balanced_dims(s.size())).eps_star);
    }
    double profile = 0.0;
    for (int l1 = 0; l1 <= flags.lmax; ++l1) {
      for (int l2 = -flags.lmax; l2 <= flags.lmax; ++l2) {
        if (l1 == 0 && l2 <= 0) continue;  // |W(-l)| = |W(l)|
        const double w = std::abs(weyl_sum(s, {l1, l2}));
        profile = std::max(profile, w);
        csv << n << ",\"" << l1 << " " << l2 << "\"," << fixed_turns(w) << "," << eps << "\n";
      }
    }
    profiles.push_back({{"n", n}, {"points", s.size()}, {"weyl_profile", profile}});
    last = profile;
  }
  if (!out_path.empty()) {
    json summary = {{"truncations", std::move(profiles)},
                    {"verdict", last < flags.threshold ? "EVIDENCE_FOR" : "EVIDENCE_AGAINST"},
                    {"csv", out_path}};
    out << summary.dump(2) << "\n";
  }
  return kExitOk;
}

int cmd_tower(std::int64_t n, std::optional<std::int64_t> k, std::optional<std::int64_t> l,
              bool search, std::optional<double> eps, const std::string& e0_csv,
              std::ostream& out) {
  TowerParams params;
  if (search) {
    if (!eps) throw UsageError("--search needs --eps");
    params = search_tower_params(n, *eps);
  } else {
    if (!k || !l) throw UsageError("tower needs --k and --l, or --search --eps");
    params = {n, *k, *l};
  }
  const TowerFamily tower = build_tower(params);
  const TowerMetrics m = tower_metrics(tower);
  json report = {{"n", params.n},
                 {"k", params.k},
                 {"l", params.l},
                 {"N", tower.ambient()},
                 {"rank_e0", tower.rank()},
                 {"coverage", std::to_string(m.coverage.num) + "/" + std::to_string(m.coverage.den)},
                 {"coverage_value", m.coverage.value()},
                 {"defect", m.defect},
                 {"steps", m.steps}};
  if (search) report["eps"] = *eps;
  if (!e0_csv.empty()) {
    std::ofstream file(e0_csv);
    if (!file) throw UsageError("cannot write " + e0_csv);
    const ComplexMatrix e0 = tower.projection(0);
    for (Eigen::Index r = 0; r < e0.rows(); ++r) {
      for (Eigen::Index c = 0; c < e0.cols(); ++c) {
        file << (c ? "," : "") << e0(r, c).real();
      }
      file << "\n";
    }
    report["e0_csv"] = e0_csv;
  }
  out << report.dump(2) << "\n";
  return kExitOk;
}

std::string diag_expr(const std::vector<Complex>& values) {
  std::string s = "diag(";
  for (std::size_t i = 0; i < values.size(); ++i) {
    s += (i ? "," : "") + fixed_turns(turns_of(values[i]));
  }
  return s + ")";
}

int cmd_decompose(const std::string& path, std::ostream& out) {
  const PairDocument doc = parse_pair_document(read_json_file(path));
  const CanonicalDecomposition d = decompose_pair(UnitaryMatrix::from(doc.u.evaluate()),
                                                  UnitaryMatrix::from(doc.v.evaluate()));
  const Turns inverse = Turns(-d.angle.num(), d.angle.den()).wrapped();
  json omegas = json::array(), mus = json::array(), w = json::array();
  for (const Complex& z : d.omegas) omegas.push_back(turns_of(z));
  for (const Complex& z : d.mus) mus.push_back(turns_of(z));
  const ComplexMatrix& wm = d.w.matrix();
  for (Eigen::Index r = 0; r < wm.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < wm.cols(); ++c) row.push_back({wm(r, c).real() + 0.0, wm(r, c).imag() + 0.0});  // no negative zeros
    w.push_back(std::move(row));
  }
  const std::string p = std::to_string(d.p);
  json report = {{"n", doc.n},
                 {"u", "kron(S(" + p + ")," + diag_expr(d.omegas) + ")"},
                 {"v", "kron(Omega(" + p + "," + inverse.to_string() + ")," + diag_expr(d.mus) + ")"},
                 {"p", d.p},
                 {"lambda", d.angle.to_string()},
                 {"omegas", std::move(omegas)},
                 {"mus", std::move(mus)},
                 {"conjugator", std::move(w)}};
  out << report.dump(2) << "\n";
  return kExitOk;
}

int cmd_winding(const std::string& path, const std::string& lambda, std::ostream& out) {
  const Turns angle = parse_lambda(lambda);
  const PairDocument doc = parse_pair_document(read_json_file(path));
  const WindingResult r = winding_number(UnitaryMatrix::from(doc.u.evaluate()),
                                         UnitaryMatrix::from(doc.v.evaluate()), angle.phase());
  json report = {{"value", r.value}, {"defect", r.defect}, {"method_agreement", r.method_agreement}};
  out << report.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-dimensional tools for product-type Z^2-actions on UHF algebras", "rohlin"};
  app.require_subcommand(1);

  std::string spec_path, spec_b_path, pair_path, out_path, e0_csv, lambda, mode = "invariant";
  EmpiricalFlags analyze_flags, weyl_flags;
  std::size_t eps_limit = 1024;
  std::int64_t tower_n = 1;
  std::optional<std::int64_t> tower_k, tower_l;
  std::optional<double> tower_eps;
  bool tower_search = false;

  CLI::App* analyze = app.add_subcommand("analyze", "invariant, signature, regime and Rohlin verdict");
  analyze->add_option("spec", spec_path, "action spec JSON")->required();
  analyze->add_option("--mode", mode, "Rohlin check: invariant or empirical")
      ->check(CLI::IsMember({"invariant", "empirical"}));
  analyze_flags.attach(analyze);

  CLI::App* classify = app.add_subcommand("classify", "compare the invariants of two actions");
  classify->add_option("a", spec_path, "first action spec")->required();
  classify->add_option("b", spec_b_path, "second action spec")->required();

  CLI::App* weyl = app.add_subcommand("weyl", "Weyl sums of cumulative joint spectra");
  weyl->add_option("spec", spec_path, "action spec JSON with commuting blocks")->required();
  weyl_flags.attach(weyl);
  weyl->add_option("--out", out_path, "CSV destination (stdout when omitted)");
  weyl->add_option("--eps-limit", eps_limit, "skip eps_star above this many points");

  CLI::App* tower = app.add_subcommand("tower", "Rohlin tower metrics");
  tower->add_option("--n", tower_n, "number of projections")->check(CLI::PositiveNumber);
  tower->add_option("--k", tower_k, "ramp length");
  tower->add_option("--l", tower_l, "plateau length");
  tower->add_flag("--search", tower_search, "search (k, l) for the given --eps");
  tower->add_option("--eps", tower_eps, "target for defect and 1 - coverage");
  tower->add_option("--e0-csv", e0_csv, "write e_0 as a dense CSV matrix");

  CLI::App* decompose = app.add_subcommand("decompose", "canonical form of a lambda-commuting pair");
  decompose->add_option("pair", pair_path, "pair JSON")->required();

  CLI::App* winding = app.add_subcommand("winding", "winding-number invariant of a pair");
  winding->add_option("pair", pair_path, "pair JSON")->required();
  winding->add_option("--lambda", lambda, "commutation scalar in turns, e.g. 1/8")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*analyze) return cmd_analyze(spec_path, mode, analyze_flags, out);
    if (*classify) return cmd_classify(spec_path, spec_b_path, out);
    if (*weyl) return cmd_weyl(spec_path, weyl_flags, out_path, eps_limit, out);
    if (*tower) return cmd_tower(tower_n, tower_k, tower_l, tower_search, tower_eps, e0_csv, out);
    if (*decompose) return cmd_decompose(pair_path, out);
    if (*winding) return cmd_winding(pair_path, lambda, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error at offset " << e.position() << ": " << e.detail() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.name() << ": " << e.what() << "\n";
    // Rejected arguments are usage errors; everything else is numerical.
    return e.code() == Errc::kInvalidArgument ? kExitUsage : kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace rohlin::cli
