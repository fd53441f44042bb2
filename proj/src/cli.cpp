#include "gwm/cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gwm/comparison.hpp"
#include "gwm/limits.hpp"
#include "gwm/moments.hpp"
#include "gwm/montecarlo.hpp"
#include "gwm/parallel.hpp"
#include "gwm/verify.hpp"

namespace gwm {

using json = nlohmann::ordered_json;

cplx parse_complex(const std::string& text) {
  if (text.empty()) throw validation_error("empty complex literal");
  if (text.back() != 'i') {
    try {
      std::size_t used = 0;
      const double re = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return cplx{re};
    } catch (const std::exception&) {
      throw validation_error("bad complex literal '" + text + "'");
    }
  }
  // RE+IMi or RE-IMi; the sign splitting must skip exponent signs.
  const std::string body = text.substr(0, text.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t i = 1; i < body.size(); ++i) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' &&
        body[i - 1] != 'E')
      split = i;
  }
  if (split == std::string::npos)
    throw validation_error("bad complex literal '" + text +
                           "' (expected RE+IMi)");
  try {
    return cplx{std::stod(body.substr(0, split)), std::stod(body.substr(split))};
  } catch (const std::exception&) {
    throw validation_error("bad complex literal '" + text + "'");
  }
}

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(tok);
  return out;
}

double parse_real(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw validation_error(std::string("bad ") + what + " '" + s + "'");
  }
}

std::vector<TollSequence> parse_tolls(const std::string& spec,
                                      const OffspringLaw& law) {
  std::vector<TollSequence> out;
  for (const std::string& tok : split_list(spec)) {
    if (tok == "log") {
      out.push_back(TollSequence::log_size());
    } else if (tok == "clog") {
      out.push_back(TollSequence::centered_log(mu_prime(law)));
    } else if (tok.rfind("pow:", 0) == 0) {
      out.push_back(TollSequence::power(parse_complex(tok.substr(4))));
    } else if (tok.rfind("cpow:", 0) == 0) {
      const cplx a = parse_complex(tok.substr(5));
      out.push_back(TollSequence::centered_power(a, mu_alpha(law, a)));
    } else {
      throw validation_error("bad toll spec '" + tok + "'");
    }
  }
  if (out.empty()) throw validation_error("empty toll spec");
  return out;
}

json cjson(cplx v) { return json{{"re", v.real()}, {"im", v.imag()}}; }

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw error("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

int cmd_constants(const RunConfig& cfg) {
  const OffspringLaw law = make_law(cfg.law);
  json out{{"schema", 1}, {"law", law.name()}};
  out["sigma2"] = law.variance();
  out["span"] = law.span();
  out["mu_prime"] = mu_prime(law);
  out["shape_var_const"] = shape_variance_const(law);
  const ShapeMeanCoeffs smc = shape_mean_coeffs(law);
  out["shape_mean_sqrt_coeff"] = smc.sqrt_coeff;
  out["shape_mean_log_coeff"] = smc.log_coeff;
  for (const std::string& a : cfg.alphas) {
    const cplx alpha = parse_complex(a);
    json ja{{"alpha", cjson(alpha)}};
    ja["mu_alpha"] = cjson(mu_alpha(law, alpha));
    ja["mean2_coeff"] = cjson(mean2_coeff(law, alpha));
    out["alpha_values"].push_back(ja);
  }
  if (cfg.alphas.size() == 1) {
    out["mu_alpha"] = out["alpha_values"][0]["mu_alpha"];
    out["mean2_coeff"] = out["alpha_values"][0]["mean2_coeff"];
  }
  if (!cfg.tolls.empty()) {
    // --t values arrive through cfg.tolls for this subcommand.
    for (const std::string& tv : split_list(cfg.tolls)) {
      const double t = parse_real(tv, "t value");
      out["imag_variance"].push_back(
          json{{"t", t}, {"value", imag_variance(law, t)}});
    }
    if (out["imag_variance"].size() == 1)
      out["imag_var"] = out["imag_variance"][0]["value"];
  }
  Output o(cfg.output);
  if (cfg.json) {
    o.stream() << out.dump(2) << "\n";
  } else {
    o.stream() << "law " << law.name() << "\n"
               << "  sigma^2            " << law.variance() << "\n"
               << "  mu'                " << out["mu_prime"].get<double>()
               << "\n"
               << "  shape var const    "
               << out["shape_var_const"].get<double>() << "\n";
    if (out.contains("alpha_values"))
      for (const auto& ja : out["alpha_values"])
        o.stream() << "  mu(" << ja["alpha"]["re"].get<double>() << "+"
                   << ja["alpha"]["im"].get<double>() << "i) = "
                   << ja["mu_alpha"]["re"].get<double>() << " + "
                   << ja["mu_alpha"]["im"].get<double>() << "i\n";
    if (out.contains("imag_variance"))
      for (const auto& jv : out["imag_variance"])
        o.stream() << "  imag var(t=" << jv["t"].get<double>()
                   << ") = " << jv["value"].get<double>() << "\n";
  }
  return 0;
}

int cmd_qn(const RunConfig& cfg) {
  const OffspringLaw law = make_law(cfg.law);
  TreeSizeLaw ts(law, cfg.n_max);
  Output o(cfg.output);
  o.stream() << "n,q_n,asymptotic_ratio\n" << std::setprecision(17);
  for (std::size_t n = 1; n <= cfg.n_max; n += law.span())
    o.stream() << n << "," << ts.q(n) << "," << ts.asymptotic_ratio(n) << "\n";
  return 0;
}

int cmd_moments(const RunConfig& cfg) {
  const OffspringLaw law = make_law(cfg.law);
  const std::vector<TollSequence> tolls = parse_tolls(cfg.tolls, law);
  MomentEngine engine(law, cfg.trunc);
  json out{{"schema", 1}, {"law", law.name()}};
  for (const TollSequence& t : tolls) out["tolls"].push_back(t.describe());
  out["trunc"] = cfg.trunc;
  out["route"] = "series";
  out["values"] = json::array();
  for (std::size_t n : cfg.n_list) {
    const cplx v = engine.conditional_moment(n, tolls);
    out["values"].push_back(json{{"n", n}, {"re", v.real()}, {"im", v.imag()}});
  }
  Output o(cfg.output);
  o.stream() << out.dump(2) << "\n";
  return 0;
}

int cmd_oracle(const RunConfig& cfg) {
  const OffspringLaw law = make_law(cfg.law);
  const std::vector<TollSequence> tolls = parse_tolls(cfg.tolls, law);
  const cplx v = enumerate_moment(law, cfg.n, tolls);
  Output o(cfg.output);
  if (cfg.json) {
    json out{{"schema", 1}, {"law", law.name()}, {"n", cfg.n},
             {"route", "enumeration"}};
    for (const TollSequence& t : tolls) out["tolls"].push_back(t.describe());
    out["value"] = cjson(v);
    o.stream() << out.dump(2) << "\n";
  } else {
    o.stream() << std::setprecision(17) << v.real();
    if (v.imag() != 0.0)
      o.stream() << (v.imag() > 0 ? "+" : "") << v.imag() << "i";
    o.stream() << "\n";
  }
  return 0;
}

int cmd_simulate(const RunConfig& cfg) {
  const OffspringLaw law = make_law(cfg.law);
  const std::vector<TollSequence> tolls = parse_tolls(cfg.tolls, law);
  const unsigned threads = cfg.threads ? cfg.threads : default_threads();
  const EmpiricalSummary s =
      monte_carlo(law, cfg.n, cfg.reps, tolls, cfg.seed, threads);
  json out{{"schema", 1},     {"law", law.name()}, {"n", s.n},
           {"reps", s.reps},  {"seed", s.seed},    {"batches", s.batches},
           {"strategy", s.strategy}};
  out["results"] = json::array();
  for (const TollStats& st : s.per_toll) {
    json jt{{"toll", st.toll}};
    jt["mean"] = cjson(st.mean);
    jt["se"] = json{{"mean_re", st.se_mean_re},
                    {"mean_im", st.se_mean_im},
                    {"var", st.se_variance},
                    {"abs2_mean", st.se_abs2_mean}};
    jt["var"] = st.variance;
    jt["m4"] = st.m4;
    jt["abs2_mean"] = st.abs2_mean;
    jt["skewness"] = st.skewness;
    jt["excess_kurtosis"] = st.excess_kurtosis;
    jt["mixed"] = json::array();
    for (const auto& [lr, v] : st.mixed)
      jt["mixed"].push_back(json{
          {"l", lr.first}, {"r", lr.second}, {"re", v.real()}, {"im", v.imag()}});
    out["results"].push_back(jt);
  }
  out["cross"] = json::array();
  for (const CrossStats& cs : s.cross)
    out["cross"].push_back(json{{"a", cs.a},
                                {"b", cs.b},
                                {"cov_plain", cjson(cs.cov_plain)},
                                {"cov_conj", cjson(cs.cov_conj)},
                                {"corr_with_conj", cs.corr_with_conj},
                                {"corr_conj", cs.corr_conj}});
  Output o(cfg.output);
  o.stream() << out.dump(2) << "\n";
  return 0;
}

int cmd_compare(const RunConfig& cfg) {
  std::vector<OffspringLaw> laws;
  for (const std::string& d : cfg.laws) laws.push_back(make_law(d));
  if (laws.size() < 2)
    throw validation_error("compare: needs at least two laws");
  std::vector<double> alphas;
  for (const std::string& a : cfg.alphas)
    alphas.push_back(parse_real(a, "alpha"));

  Output o(cfg.output);
  std::ostream& os = o.stream();
  os << std::setprecision(17) << "law";
  for (double a : alphas) os << ",mu(" << a << ")";
  if (cfg.mu_prime) os << ",mu_prime";
  os << "\n";
  for (const OffspringLaw& law : laws) {
    os << law.name();
    for (double a : alphas) os << "," << mu_alpha(law, cplx{a}).real();
    if (cfg.mu_prime) os << "," << mu_prime(law);
    os << "\n";
  }

  json verdicts{{"schema", 1}};
  verdicts["pairs"] = json::array();
  static const char* kRelNames[] = {"leq", "strict", "pointwise-strict",
                                    "incomparable"};
  for (std::size_t i = 0; i < laws.size(); ++i) {
    for (std::size_t j = i + 1; j < laws.size(); ++j) {
      const OrderVerdict v = phi_order(laws[i], laws[j]);
      json jp{{"law1", laws[i].name()},
              {"law2", laws[j].name()},
              {"relation", kRelNames[int(v.relation)]},
              {"reversed", v.reversed},
              {"grid_size", v.grid_size}};
      for (double w : v.witness_points) jp["witnesses"].push_back(w);
      if (cfg.cm_order >= 0 && !v.reversed &&
          v.relation != OrderVerdict::Relation::kIncomparable) {
        const CompleteMonotonicityReport rep = complete_monotonicity_check(
            laws[i], laws[j], unsigned(cfg.cm_order), {0.5, 1.0, 2.0, 5.0});
        jp["complete_monotonicity"] =
            json{{"ok", rep.ok},
                 {"min_value", rep.min_value},
                 {"argmin_r", rep.argmin_r},
                 {"argmin_t", rep.argmin_t}};
      }
      verdicts["pairs"].push_back(jp);
    }
  }
  os << "\n" << verdicts.dump(2) << "\n";
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  VerifyOptions opts;
  opts.full = cfg.suite == "full";
  opts.threads = cfg.threads;
  const std::vector<CriterionResult> results = run_acceptance_suite(opts);
  Output o(cfg.output);
  o.stream() << format_report(results);
  return all_passed(results) ? 0 : 1;
}

void add_common(CLI::App* app, RunConfig& cfg) {
  app->add_option("--output", cfg.output, "write to file instead of stdout");
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig cfg;
  CLI::App app{"moments of power-sum additive functionals on conditioned "
               "Galton-Watson trees"};
  app.require_subcommand(1);

  CLI::App* constants = app.add_subcommand("constants", "asymptotic constants");
  constants->add_option("--law", cfg.law, "law descriptor")->required();
  constants->add_option("--alpha", cfg.alphas, "exponent(s) RE[+IMi]");
  constants->add_option("--t", cfg.tolls, "imaginary exponents t (csv)");
  constants->add_flag("--json", cfg.json, "JSON output");
  add_common(constants, cfg);

  CLI::App* qn = app.add_subcommand("qn", "tree-size law table");
  qn->add_option("--law", cfg.law)->required();
  qn->add_option("--n-max", cfg.n_max)->required();
  add_common(qn, cfg);

  CLI::App* moments = app.add_subcommand("moments", "exact moments (series)");
  moments->add_option("--law", cfg.law)->required();
  moments->add_option("--tolls", cfg.tolls)->required();
  moments->add_option("--n", cfg.n_list, "sizes")->required()->delimiter(',');
  moments->add_option("--trunc", cfg.trunc);
  moments->add_flag("--json", cfg.json);
  add_common(moments, cfg);

  CLI::App* oracle = app.add_subcommand("oracle", "exact moments (enumeration)");
  oracle->add_option("--law", cfg.law)->required();
  oracle->add_option("--n", cfg.n)->required();
  oracle->add_option("--tolls", cfg.tolls)->required();
  oracle->add_flag("--json", cfg.json);
  add_common(oracle, cfg);

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo sampling");
  simulate->add_option("--law", cfg.law)->required();
  simulate->add_option("--n", cfg.n)->required();
  simulate->add_option("--reps", cfg.reps)->required();
  simulate->add_option("--tolls", cfg.tolls)->required();
  simulate->add_option("--seed", cfg.seed);
  simulate->add_option("--threads", cfg.threads);
  simulate->add_flag("--json", cfg.json);
  add_common(simulate, cfg);

  CLI::App* compare = app.add_subcommand("compare", "cross-law comparisons");
  compare->add_option("--laws", cfg.laws)->required()->delimiter(',');
  compare->add_option("--alphas", cfg.alphas)->delimiter(',');
  compare->add_flag("--mu-prime", cfg.mu_prime);
  compare->add_option("--cm-order", cfg.cm_order);
  add_common(compare, cfg);

  CLI::App* verify = app.add_subcommand("verify", "acceptance suite");
  verify->add_option("--suite", cfg.suite)
      ->check(CLI::IsMember({"quick", "full"}));
  verify->add_option("--threads", cfg.threads);
  add_common(verify, cfg);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    throw validation_error(std::string("usage: ") + e.what());
  }
  for (CLI::App* sub :
       {constants, qn, moments, oracle, simulate, compare, verify})
    if (sub->parsed()) cfg.subcommand = sub->get_name();
  return cfg;
}

std::vector<std::string> RunConfig::to_flags() const {
  const RunConfig def;
  std::vector<std::string> out{subcommand};
  auto push = [&](const std::string& flag, const std::string& value) {
    out.push_back(flag);
    out.push_back(value);
  };
  if (!law.empty()) push("--law", law);
  if (!laws.empty()) {
    std::string joined;
    for (const std::string& l : laws) joined += (joined.empty() ? "" : ",") + l;
    push("--laws", joined);
  }
  if (!tolls.empty())
    push(subcommand == "constants" ? "--t" : "--tolls", tolls);
  if (!alphas.empty()) {
    if (subcommand == "constants") {
      for (const std::string& a : alphas) push("--alpha", a);
    } else {
      std::string joined;
      for (const std::string& a : alphas)
        joined += (joined.empty() ? "" : ",") + a;
      push("--alphas", joined);
    }
  }
  if (trunc != def.trunc) push("--trunc", std::to_string(trunc));
  if (!n_list.empty()) {
    std::string joined;
    for (std::size_t v : n_list)
      joined += (joined.empty() ? "" : ",") + std::to_string(v);
    push("--n", joined);
  }
  if (n != 0) push("--n", std::to_string(n));
  if (n_max != 0) push("--n-max", std::to_string(n_max));
  if (reps != 0) push("--reps", std::to_string(reps));
  if (seed != def.seed) push("--seed", std::to_string(seed));
  if (threads != 0) push("--threads", std::to_string(threads));
  if (json) out.push_back("--json");
  if (mu_prime) out.push_back("--mu-prime");
  if (cm_order >= 0) push("--cm-order", std::to_string(cm_order));
  if (subcommand == "verify" && suite != def.suite) push("--suite", suite);
  if (!output.empty()) push("--output", output);
  return out;
}

int run_config(const RunConfig& cfg) {
  if (cfg.subcommand == "constants") return cmd_constants(cfg);
  if (cfg.subcommand == "qn") return cmd_qn(cfg);
  if (cfg.subcommand == "moments") return cmd_moments(cfg);
  if (cfg.subcommand == "oracle") return cmd_oracle(cfg);
  if (cfg.subcommand == "simulate") return cmd_simulate(cfg);
  if (cfg.subcommand == "compare") return cmd_compare(cfg);
  if (cfg.subcommand == "verify") return cmd_verify(cfg);
  throw validation_error("unknown subcommand '" + cfg.subcommand + "'");
}

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  RunConfig cfg;
  try {
    cfg = parse_args(args);
  } catch (const validation_error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  try {
    return run_config(cfg);
  } catch (const error& e) {
    std::cerr << nlohmann::ordered_json{{"error", e.what()}}.dump() << "\n";
    return 1;
  }
}

}  // namespace gwm
