// Command-line front end. stdout carries one JSON envelope per run (or the
// fuzz JSONL stream when no --out is given); diagnostics go to stderr.

#include "mathieu/lab.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

namespace {

using namespace mathieu;

enum Exit : int { ok = 0, failure = 1, bad_input = 2, no_threshold = 3, violation = 4, self_check_failed = 5 };

class Timer {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void emit(const std::string& command, Json args, Json result, const Timer& timer, std::optional<std::uint64_t> seed = {}) {
  Json env{{"schema", schema_version}, {"command", {{"name", command}, {"args", std::move(args)}}}};
  env["result"] = std::move(result);
  if (seed) env["seed"] = *seed;
  env["timing_ms"] = timer.elapsed_ms();
  std::cout << env.dump(2) << '\n';
}

Json mc_json(const McEstimate& e) {
  return {{"mean", {{"re", e.mean.real()}, {"im", e.mean.imag()}}},
          {"std_error", e.std_error},
          {"samples", e.samples},
          {"seed", e.seed},
          {"rng", Rng::name}};
}

Json exact_json(const RadicalScalar& v) {
  return {{"exact", to_json(v)}, {"text", v.to_string()}, {"approx", {{"re", v.to_complex().real()}, {"im", v.to_complex().imag()}}}};
}

struct Options {
  std::string file;
  std::string shift;
  std::string h;
  unsigned long pmax = 12;
  std::uint64_t mc_samples = 0;
  std::uint64_t seed = 1;

  FuzzConfig fuzz;
  std::string lmax = "2";
  std::string out;

  std::vector<std::string> legendre_terms;
};

int cmd_integrate(const Options& o) {
  Timer timer;
  const auto spec = product_from_json(read_json_file(o.file));
  std::optional<MatrixElementIndex> shift;
  if (!o.shift.empty()) shift = parse_index_triple(o.shift);
  const auto value = integrate_product(spec, shift);
  Json result = exact_json(value);
  result["product"] = spec.to_string();
  result["frequency_filter_passed"] = frequency_of(spec, shift).is_zero();
  Json args{{"file", o.file}};
  if (shift) args["shift"] = shift->to_string();
  std::optional<std::uint64_t> seed;
  if (o.mc_samples > 0) {
    result["numeric"] = mc_json(mc_integral(spec, o.mc_samples, o.seed, shift));
    seed = o.seed;
    std::cerr << "seed " << o.seed << '\n';
  }
  emit("integrate", args, result, timer, seed);
  return ok;
}

int cmd_power_scan(const Options& o) {
  Timer timer;
  if (o.pmax < 1) throw ParseError("--pmax", "must be at least 1");
  const auto f = function_from_json(read_json_file(o.file));
  std::optional<MatrixElementIndex> h;
  if (!o.h.empty()) h = parse_index_triple(o.h);
  Json rows = Json::array();
  for (unsigned long p = 1; p <= o.pmax; ++p) {
    const auto value = h ? power_integral_with_witness(f, p, *h) : power_integral(f, p);
    Json row{{"P", p}};
    row.update(exact_json(value));
    if (o.mc_samples > 0) row["numeric"] = mc_json(mc_power_integral(f, p, o.mc_samples, o.seed, h));
    rows.push_back(std::move(row));
  }
  Json args{{"file", o.file}, {"pmax", o.pmax}};
  if (h) args["with_h"] = h->to_string();
  std::optional<std::uint64_t> seed;
  if (o.mc_samples > 0) {
    args["mc"] = o.mc_samples;
    seed = o.seed;
    std::cerr << "seed " << o.seed << '\n';
  }
  emit("power-scan", args, {{"function", f.to_string()}, {"scan", rows}}, timer, seed);
  return ok;
}

int cmd_hull(const Options& o) {
  Timer timer;
  const auto f = function_from_json(read_json_file(o.file));
  const auto hull = f.hull();
  Json result = to_json(hull_certificate(hull), hull);
  result["case"] = to_string(classify_instance(f));
  Json vertices = Json::array();
  for (const auto& v : convex_hull_vertices(hull)) vertices.push_back(to_json(v));
  result["vertices"] = vertices;
  emit("hull", {{"file", o.file}}, result, timer);
  return ok;
}

int cmd_threshold(const Options& o) {
  Timer timer;
  const auto f = function_from_json(read_json_file(o.file));
  const auto h = parse_index_triple(o.h);
  try {
    const auto p0 = vanishing_threshold(f.hull(), {h.m, h.n});
    emit("threshold", {{"file", o.file}, {"h", h.to_string()}}, {{"threshold", p0}}, timer);
    return ok;
  } catch (const PreconditionViolation&) {
    std::cerr << "no finite threshold guaranteed: the origin lies in the support hull\n";
    return no_threshold;
  }
}

int cmd_fuzz(Options o) {
  Timer timer;
  try {
    o.fuzz.l_max = HalfInt::parse(o.lmax);
  } catch (const std::exception& e) {
    throw ParseError("--lmax", e.what());
  }
  o.fuzz.seed = o.seed;
  try {
    o.fuzz.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError("fuzz", e.what());
  }
  std::cerr << "seed " << o.fuzz.seed << " rng " << Rng::name << '\n';

  FuzzSummary summary;
  if (o.out.empty()) {
    summary = fuzz(o.fuzz, std::cout);
  } else {
    std::ofstream out(o.out, std::ios::binary | std::ios::trunc);
    if (!out) {
      std::cerr << "cannot write '" << o.out << "'\n";
      return bad_input;
    }
    summary = fuzz(o.fuzz, out);
    out.flush();
    if (!out) {
      std::cerr << "write to '" << o.out << "' failed\n";
      return bad_input;
    }
    Json counts;
    for (const auto& [v, n] : summary.by_verdict) counts[to_string(v)] = n;
    Json result{{"out", o.out}, {"trials_run", summary.trials_run}, {"counts", counts}, {"aborted", summary.aborted}};
    if (summary.violation_trial) result["violation_trial"] = *summary.violation_trial;
    emit("fuzz",
         {{"trials", o.fuzz.trials}, {"first_trial", o.fuzz.first_trial}, {"lmax", o.fuzz.l_max.to_string()},
          {"kmax", o.fuzz.k_max}, {"pmax", o.fuzz.p_max}, {"rank2_bias", o.fuzz.rank2_bias}},
         result, timer, o.fuzz.seed);
  }
  std::cerr << summary.trials_run << " trials: " << summary.by_verdict[Verdict::consistent] << " consistent, "
            << summary.by_verdict[Verdict::inconclusive_candidate] << " inconclusive-candidate, "
            << summary.by_verdict[Verdict::violation] << " violation\n";
  if (summary.violation_trial) {
    std::cerr << "violation at trial " << *summary.violation_trial << "; rerun with --seed " << o.fuzz.seed
              << " --first-trial " << *summary.violation_trial << " --trials 1\n";
    return violation;
  }
  return ok;
}

int cmd_verify_paper() {
  Timer timer;
  const auto report = verify_paper_suite();
  for (const auto& item : report.items) {
    std::cerr << (item.passed ? "PASS " : "FAIL ") << item.name << " (" << item.checks << " checks)\n";
    for (const auto& f : item.failures) std::cerr << "    " << f << '\n';
  }
  for (const auto& item : report.items)
    if (item.name == "schur-orthogonality") {
      std::cerr << "Schur table, int t^l_{m,n} t^l_{-m,-n}:\n";
      for (const auto& row : item.details["table"])
        std::cerr << "    (" << row["index"]["l"].get<std::string>() << ", " << row["index"]["m"].get<std::string>()
                  << ", " << row["index"]["n"].get<std::string>() << ")  " << row["value"].get<std::string>() << '\n';
    }
  emit("verify-paper", Json::object(), to_json(report), timer);
  return report.passed() ? ok : self_check_failed;
}

int cmd_legendre_scan(const Options& o) {
  Timer timer;
  if (o.pmax < 1) throw ParseError("--pmax", "must be at least 1");
  std::map<long, GaussianRational> coeffs;
  for (const auto& term : o.legendre_terms) {
    // "l:re" or "l:re:im"
    const auto first = term.find(':');
    if (first == std::string::npos) throw ParseError("--coeff", "expected 'l:re' or 'l:re:im', got '" + term + "'");
    const auto second = term.find(':', first + 1);
    try {
      const long l = std::stol(term.substr(0, first));
      const Rational re = parse_rational(term.substr(first + 1, second == std::string::npos ? std::string::npos : second - first - 1));
      const Rational im = second == std::string::npos ? Rational(0) : parse_rational(term.substr(second + 1));
      coeffs[l] += GaussianRational(re, im);
    } catch (const std::exception& e) {
      throw ParseError("--coeff", "cannot parse '" + term + "': " + e.what());
    }
  }
  LegendreScan scan;
  try {
    scan = legendre_moment_scan(coeffs, o.pmax);
  } catch (const std::invalid_argument& e) {
    throw ParseError("--coeff", e.what());
  }
  Json moments = Json::array();
  for (std::size_t p = 0; p < scan.moments.size(); ++p)
    moments.push_back({{"P", p + 1}, {"value", to_json(scan.moments[p])}});
  emit("legendre-scan", {{"coeff", o.legendre_terms}, {"pmax", o.pmax}},
       {{"moments", moments}, {"first_nonzero", scan.first_nonzero ? Json(*scan.first_nonzero) : Json(nullptr)}}, timer);
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Haar integrals of powers of SU(2) matrix-element combinations"};
  app.require_subcommand(1);
  Options o;

  auto* integrate = app.add_subcommand("integrate", "exact integral of a product of matrix elements");
  integrate->add_option("file", o.file, "product JSON file")->required();
  integrate->add_option("--shift", o.shift, "extra factor l,m,n");
  integrate->add_option("--mc", o.mc_samples, "Monte Carlo samples for a numeric cross-check");
  integrate->add_option("--seed", o.seed, "Monte Carlo seed");

  auto* scan = app.add_subcommand("power-scan", "exact int f^P (or f^P h) for P = 1..Pmax");
  scan->add_option("file", o.file, "function JSON file")->required();
  scan->add_option("--pmax", o.pmax, "largest power")->capture_default_str();
  scan->add_option("--with-h", o.h, "witness element l,a,b");
  scan->add_option("--mc", o.mc_samples, "Monte Carlo samples per power");
  scan->add_option("--seed", o.seed, "Monte Carlo seed");

  auto* hull = app.add_subcommand("hull", "origin membership in the support hull, with certificate");
  hull->add_option("file", o.file, "function JSON file")->required();

  auto* threshold = app.add_subcommand("threshold", "power beyond which int f^P h vanishes");
  threshold->set_help_flag("--help", "print this help message and exit");
  threshold->add_option("file", o.file, "function JSON file")->required();
  threshold->add_option("--h", o.h, "witness element l,a,b")->required();

  auto* fuzz_cmd = app.add_subcommand("fuzz", "check the proven direction on random instances");
  fuzz_cmd->add_option("--seed", o.seed, "run seed")->capture_default_str();
  fuzz_cmd->add_option("--trials", o.fuzz.trials, "number of trials")->capture_default_str();
  fuzz_cmd->add_option("--first-trial", o.fuzz.first_trial, "index of the first trial")->capture_default_str();
  fuzz_cmd->add_option("--lmax", o.lmax, "largest spin")->capture_default_str();
  fuzz_cmd->add_option("--kmax", o.fuzz.k_max, "largest number of terms")->capture_default_str();
  fuzz_cmd->add_option("--pmax", o.fuzz.p_max, "largest power")->capture_default_str();
  fuzz_cmd->add_option("--rank2-bias", o.fuzz.rank2_bias, "share of collinear three-term instances")
      ->capture_default_str();
  fuzz_cmd->add_option("--out", o.out, "JSONL report file (default: stdout)");

  auto* verify = app.add_subcommand("verify-paper", "self-check on the exactly solvable cases");

  auto* legendre = app.add_subcommand("legendre-scan", "moments of sum A_l P_l on [-1, 1]");
  legendre->add_option("--coeff", o.legendre_terms, "l:re or l:re:im, repeatable")->required();
  legendre->add_option("--pmax", o.pmax, "largest power")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e, std::cerr, std::cerr);
    return bad_input;
  }

  try {
    if (*integrate) return cmd_integrate(o);
    if (*scan) return cmd_power_scan(o);
    if (*hull) return cmd_hull(o);
    if (*threshold) return cmd_threshold(o);
    if (*fuzz_cmd) return cmd_fuzz(o);
    if (*verify) return cmd_verify_paper();
    if (*legendre) return cmd_legendre_scan(o);
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return bad_input;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return bad_input;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return failure;
  }
  return failure;
}
