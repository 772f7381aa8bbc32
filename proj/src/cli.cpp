#include "lcsfrogs/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <ostream>
#include <thread>

#include "CLI11.hpp"
#include "lcsfrogs/chain.hpp"
#include "lcsfrogs/error.hpp"
#include "lcsfrogs/lcs.hpp"
#include "lcsfrogs/montecarlo.hpp"
#include "lcsfrogs/serialize.hpp"
#include "lcsfrogs/signed.hpp"
#include "lcsfrogs/words.hpp"

namespace lcsfrogs::cli {

namespace {

struct Options {
  std::string word;
  std::vector<std::string> positional;
  int alphabet = 0;
  std::string rho;
  std::string method = "exact";
  std::int64_t n = 0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  int threads = 0;
  std::string format = "json";
  std::string band = "auto";
  std::int64_t x = -1;
  int k = 0;
  int m = 0;
  int a = 0;
  int b = 0;
  std::string positions;
  std::uint64_t steps = 0;
  std::uint64_t burn_in = 10'000;
};

int default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

LcsMethod parse_band(const std::string& text) {
  if (text == "auto") return {};
  if (text == "exact") return {LcsMethod::Kind::Exact, 0};
  if (text == "heuristic") return {LcsMethod::Kind::Heuristic, 0};
  std::int64_t t = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), t);
  if (ec != std::errc() || end != text.data() + text.size() || t < 0)
    throw UsageError("--band expects auto, exact, heuristic or a non-negative integer");
  return {LcsMethod::Kind::Band, t};
}

std::string method_name(LcsMethod m, bool heuristic_auto) {
  switch (m.kind) {
    case LcsMethod::Kind::Exact: return "exact";
    case LcsMethod::Kind::Heuristic: return "heuristic";
    case LcsMethod::Kind::Band: return "band";
    case LcsMethod::Kind::Auto: break;
  }
  return heuristic_auto ? "heuristic" : "exact";
}

// Parses the words with one codec so equal characters get equal codes.
std::vector<Word> parse_words(const std::vector<std::string>& texts, int alphabet) {
  SymbolCodec codec;
  std::vector<Word> out;
  for (const auto& t : texts) out.push_back(codec.parse(t));
  if (alphabet != 0 && alphabet < codec.distinct())
    throw UsageError("--alphabet " + std::to_string(alphabet) + " is smaller than the " +
                     std::to_string(codec.distinct()) + " distinct symbols given");
  const Alphabet alpha(std::max({alphabet, codec.distinct(), 1}));
  for (auto& w : out) w = w.with_alphabet(alpha);
  return out;
}

Word period_word(const Options& o) {
  if (o.word.empty()) throw UsageError("--word is required");
  return parse_words({o.word}, o.alphabet).front();
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

Json rational_json(const Rational& q) { return format_rational(q); }

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
  return s;
}

ExperimentConfig experiment(const Options& o, std::int64_t default_n, std::int64_t default_trials) {
  ExperimentConfig c;
  c.seed = o.seed;
  c.n = o.n > 0 ? o.n : default_n;
  c.trials = o.trials > 0 ? o.trials : default_trials;
  c.alphabet_size = o.alphabet > 0 ? o.alphabet : 2;
  c.threads = o.threads > 0 ? o.threads : default_threads();
  return c;
}

// Speeds by the requested method, with per-frog spreads for Monte Carlo.
struct SpeedReport {
  Speeds speeds;
  std::vector<SummaryStats> spread;
  std::optional<ChainSolution> chain;
};

SpeedReport compute_speeds(const Word& w, const Options& o) {
  const int alphabet = w.alphabet().size();
  const int k = static_cast<int>(w.size());
  SpeedReport r;
  if (o.method == "exact") {
    r.chain = analyze(w, alphabet);
    r.speeds = r.chain->speeds;
  } else if (o.method == "reduced") {
    auto sums = speeds_reduced(w, alphabet, k);
    for (int m = 0; m < k; ++m)
      r.speeds.values.push_back(sums.values[m] - (m ? sums.values[m - 1] : 0.0));
    if (sums.exact) {
      std::vector<Rational> ex;
      for (int m = 0; m < k; ++m) {
        Rational s = (*sums.exact)[m] - (m ? (*sums.exact)[m - 1] : Rational(0));
        s.canonicalize();
        ex.push_back(s);
      }
      r.speeds.exact = std::move(ex);
    }
  } else {
    const auto cfg = experiment(o, 100'000, 20);
    if (!is_irreducible(w)) throw Error("reducible word");
    r.spread = estimate_speeds(w, alphabet, cfg.n, cfg.trials, cfg.seed, cfg.threads);
    for (const auto& s : r.spread) r.speeds.values.push_back(s.mean);
  }
  return r;
}

std::vector<std::string> speed_strings(const Speeds& s) {
  std::vector<std::string> out;
  for (std::size_t m = 0; m < s.values.size(); ++m)
    out.push_back(s.exact ? format_rational((*s.exact)[m]) : format_double(s.values[m]));
  return out;
}

int cmd_lcs(const Options& o, std::ostream& out) {
  if (o.positional.size() != 2) throw UsageError("lcs needs two words");
  auto words = parse_words(o.positional, o.alphabet);
  const LcsMethod method = parse_band(o.band);
  const auto a = words[0].symbols(), b = words[1].symbols();
  const bool big = static_cast<std::int64_t>(std::max(a.size(), b.size())) >
                   LcsMethod::kHeuristicAbove;
  Json j{{"command", "lcs"}, {"method", method_name(method, big)}};
  std::int64_t length = 0;
  if (method.kind == LcsMethod::Kind::Heuristic ||
      (method.kind == LcsMethod::Kind::Auto && big)) {
    auto h = lcs_heuristic(a, b);
    length = h.length;
    j["band_used"] = h.band_used;
    j["confirmed"] = h.confirmed;
  } else if (method.kind == LcsMethod::Kind::Band) {
    length = lcs_banded(a, b, method.band);
    j["band_used"] = method.band;
  } else {
    length = lcs_dp(a, b);
  }
  j["length"] = length;
  if (o.format == "csv")
    out << "length\n" << length << "\n";
  else
    emit(out, j);
  return 0;
}

int cmd_periodic_lcs(const Options& o, std::ostream& out) {
  if (o.word.empty()) throw UsageError("--word is required");
  if (o.positional.size() != 1) throw UsageError("periodic-lcs needs one word r");
  auto words = parse_words({o.word, o.positional[0]}, o.alphabet);
  const std::int64_t x = o.x >= 0 ? o.x : static_cast<std::int64_t>(words[1].size());
  const auto length = lcs_periodic(words[1], words[0], x);
  if (o.format == "csv")
    out << "length\n" << length << "\n";
  else
    emit(out, {{"command", "periodic-lcs"}, {"x", x}, {"length", length}});
  return 0;
}

int cmd_speeds(const Options& o, std::ostream& out) {
  const Word w = period_word(o);
  const auto r = compute_speeds(w, o);
  const auto text = speed_strings(r.speeds);
  if (o.format == "csv") {
    out << join(text, ",") << "\n";
    return 0;
  }
  Json j{{"command", "speeds"},
         {"word", o.word},
         {"alphabet", w.alphabet().size()},
         {"method", o.method},
         {"speeds_text", join(text, ",")}};
  Json sp = Json::array();
  for (const auto& s : text) sp.push_back(s);
  j["speeds"] = sp;
  j["values"] = r.speeds.values;
  if (!r.spread.empty()) {
    Json st = Json::array();
    for (const auto& s : r.spread) st.push_back(to_json(s));
    j["stats"] = st;
    j["config"] = to_json(experiment(o, 100'000, 20));
  }
  if (r.chain) j["states"] = r.chain->states.size();
  emit(out, j);
  return 0;
}

int cmd_gamma(const Options& o, std::ostream& out) {
  const Word w = period_word(o);
  const int k = static_cast<int>(w.size());
  const Rational rho = parse_rational(o.rho.empty() ? "1" : o.rho);
  if (rho < 0) throw UsageError("--rho must be non-negative");
  auto r = compute_speeds(w, o);

  Json gamma_value;
  Json tau_value = nullptr;
  if (r.speeds.exact)
    gamma_value = rational_json(gamma(std::span<const Rational>(*r.speeds.exact), k, rho));
  else
    gamma_value = gamma(std::span<const double>(r.speeds.values), k, rho.get_d());

  GammaCurve curve;
  if (r.chain) {
    r.chain->sigmas = all_sigmas(*r.chain);
    tau_value = tau(*r.chain, rho);
    curve = gamma_curve(*r.chain);
  } else {
    curve = gamma_curve(k, r.speeds);
  }

  if (o.format == "csv") {
    out << "rho,gamma,tau\n";
    for (const auto& b : curve.breakpoints)
      out << (b.rho_exact ? format_rational(*b.rho_exact) : format_double(b.rho)) << ","
          << (b.gamma_exact ? format_rational(*b.gamma_exact) : format_double(b.gamma)) << ","
          << (b.tau ? format_double(*b.tau) : "") << "\n";
    return 0;
  }
  Json j{{"command", "gamma"},
         {"word", o.word},
         {"alphabet", w.alphabet().size()},
         {"method", o.method},
         {"rho", format_rational(rho)},
         {"gamma", gamma_value},
         {"tau", tau_value},
         {"curve", to_json(curve)}};
  if (!r.spread.empty()) j["config"] = to_json(experiment(o, 100'000, 20));
  emit(out, j);
  return 0;
}

int cmd_tau(const Options& o, std::ostream& out) {
  if (o.rho.empty()) throw UsageError("--rho is required");
  const Word w = period_word(o);
  const Rational rho = parse_rational(o.rho);
  if (rho < 0) throw UsageError("--rho must be non-negative");
  const auto sol = analyze(w, w.alphabet().size());
  const double t = tau(sol, rho);
  Json frog = nullptr;
  Json sigma = nullptr;
  for (int m = 0; m < sol.k(); ++m) {
    const bool hit = sol.speeds.exact ? (*sol.speeds.exact)[m] == rho
                                      : std::abs(sol.speeds.values[m] - rho.get_d()) <= 1e-9;
    if (hit) {
      frog = m + 1;
      sigma = sigma_m(sol, m + 1);
      break;
    }
  }
  if (o.format == "csv") {
    out << "rho,tau\n" << format_rational(rho) << "," << format_double(t) << "\n";
    return 0;
  }
  emit(out, {{"command", "tau"},
             {"word", o.word},
             {"rho", format_rational(rho)},
             {"tau", t},
             {"frog", frog},
             {"sigma", sigma}});
  return 0;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = std::min(text.find(',', pos), text.size());
    int v = 0;
    auto [end, ec] = std::from_chars(text.data() + pos, text.data() + comma, v);
    if (ec != std::errc() || end != text.data() + comma)
      throw UsageError("expected a comma-separated list of integers, got '" + text + "'");
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

int cmd_margins(const Options& o, std::ostream& out) {
  if (o.k < 1) throw UsageError("--k is required");
  if (o.steps > 0) {
    auto r = coupled_run(o.k, o.m, o.steps, o.seed, o.burn_in);
    const auto d = compare_with_formula(r);
    std::vector<DistributionRow> rows;
    Json jr = Json::array();
    for (const auto& [key, count] : r.frog_joint) {
      DistributionRow row{{key.first}, count};
      for (int p : pads_of(key.second, o.k)) row.positions.push_back(p);
      const Rational f = joint_formula(o.k, o.m, key.first, key.second);
      jr.push_back({{"pad", key.first},
                    {"others", pads_of(key.second, o.k)},
                    {"count", count},
                    {"frequency", static_cast<double>(count) / static_cast<double>(r.steps)},
                    {"formula", format_rational(f)}});
      rows.push_back(std::move(row));
    }
    if (o.format == "csv") {
      out << distribution_csv(rows);
      return 0;
    }
    emit(out, {{"command", "margins"},
               {"k", o.k},
               {"m", o.m},
               {"steps", r.steps},
               {"seed", o.seed},
               {"incompatible_steps", r.incompatible_steps},
               {"joint_tv", d.joint_tv},
               {"max_conditional_tv", d.max_conditional_tv},
               {"rows", jr}});
    return 0;
  }
  if (o.positions.empty()) throw UsageError("--positions or --steps is required");
  const auto l = parse_int_list(o.positions);
  const Rational f = margins_formula(o.k, o.m, l);
  Json brute = nullptr;
  if (o.k <= 24) brute = format_rational(margins_bruteforce(o.k, o.m, l));
  if (o.format == "csv") {
    out << "formula,bruteforce\n"
        << format_rational(f) << "," << (brute.is_null() ? "" : brute.get<std::string>()) << "\n";
    return 0;
  }
  emit(out, {{"command", "margins"},
             {"k", o.k},
             {"m", o.m},
             {"positions", l},
             {"formula", format_rational(f)},
             {"bruteforce", brute}});
  return 0;
}

int emit_experiment(const Options& o, const char* name, const ExperimentConfig& cfg,
                    const std::string& method, const SampleSet& s, std::ostream& out) {
  if (o.format == "csv") {
    out << samples_csv(s.samples);
    return 0;
  }
  emit(out, {{"command", name}, {"method", method}, {"config", to_json(cfg)}, {"stats", to_json(s.stats)}});
  return 0;
}

int cmd_delta(const Options& o, std::ostream& out) {
  const auto cfg = experiment(o, 1000, 100);
  const LcsMethod method = parse_band(o.band);
  const auto s = delta_experiment(cfg, method);
  return emit_experiment(o, "delta", cfg,
                         method_name(method, cfg.n > LcsMethod::kHeuristicAbove), s, out);
}

int cmd_cs_estimate(const Options& o, std::ostream& out) {
  const auto cfg = experiment(o, 10'000, 10);
  const LcsMethod method = parse_band(o.band);
  const auto s = estimate_gamma_cs(cfg, method);
  return emit_experiment(o, "cs-estimate", cfg, method_name(method, true), s, out);
}

int cmd_signed_check(const Options& o, std::ostream& out) {
  if (o.k < 1) throw UsageError("--k is required");
  const auto rep = check_time_reversal(o.k, o.a, o.b);
  if (o.format == "csv") {
    out << "k,a,b,checked,violations\n"
        << o.k << "," << o.a << "," << o.b << "," << rep.checked << "," << rep.violations << "\n";
    return 0;
  }
  Json j{{"command", "signed-check"},
         {"k", o.k},
         {"a", o.a},
         {"b", o.b},
         {"checked", rep.checked},
         {"violations", rep.violations}};
  if (rep.first_violation) j["first_violation"] = to_string(*rep.first_violation);
  emit(out, j);
  return 0;
}

void add_format(CLI::App* sub, Options& o) {
  sub->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
}

void add_random(CLI::App* sub, Options& o) {
  sub->add_option("--n", o.n, "Word length");
  sub->add_option("--trials", o.trials, "Number of independent trials");
  sub->add_option("--seed", o.seed, "Master seed")->capture_default_str();
  sub->add_option("--threads", o.threads, "Worker threads (default: all cores)");
}

void add_method(CLI::App* sub, Options& o) {
  sub->add_option("--method", o.method,
                  "exact: full chain; reduced: m-arrangement chains; montecarlo: random words")
      ->check(CLI::IsMember({"exact", "reduced", "montecarlo"}))
      ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"LCS against periodic words via frog dynamics"};
  app.name("lcsfrogs");
  app.require_subcommand(1);

  auto* lcs = app.add_subcommand("lcs", "LCS length of two words");
  lcs->add_option("words", o.positional, "The two words")->expected(2);
  lcs->add_option("--alphabet", o.alphabet, "Alphabet size (at least the distinct symbols)");
  lcs->add_option("--band", o.band,
                  "auto (exact DP up to length 20000, heuristic above), exact, heuristic, or a "
                  "fixed band width")
      ->capture_default_str();
  add_format(lcs, o);

  auto* plcs = app.add_subcommand("periodic-lcs", "LCS of r against the periodic word W^(x)");
  plcs->add_option("r", o.positional, "The word r")->expected(1);
  plcs->add_option("--word", o.word, "The period W")->required();
  plcs->add_option("--x", o.x, "Length of W^(x) (default |r|)");
  plcs->add_option("--alphabet", o.alphabet, "Alphabet size");
  add_format(plcs, o);

  auto* gam = app.add_subcommand("gamma", "Linear coefficient of E LCS(R, W^(rho n))");
  gam->add_option("--word", o.word, "The period W")->required();
  gam->add_option("--rho", o.rho, "Ratio p/q (default 1)");
  gam->add_option("--alphabet", o.alphabet, "Alphabet size of R (default: symbols of W)");
  add_method(gam, o);
  add_random(gam, o);
  add_format(gam, o);

  auto* spd = app.add_subcommand("speeds", "Frog speeds of W");
  spd->add_option("--word", o.word, "The period W")->required();
  spd->add_option("--alphabet", o.alphabet, "Alphabet size of R (default: symbols of W)");
  add_method(spd, o);
  add_random(spd, o);
  add_format(spd, o);

  auto* ta = app.add_subcommand("tau", "Square-root coefficient at rho");
  ta->add_option("--word", o.word, "The period W")->required();
  ta->add_option("--rho", o.rho, "Ratio p/q")->required();
  ta->add_option("--alphabet", o.alphabet, "Alphabet size of R");
  add_format(ta, o);

  auto* mar = app.add_subcommand(
      "margins", "Position law of frog m+1 given frogs 1..m, for W = 12...k");
  mar->add_option("--k", o.k, "Period length")->required();
  mar->add_option("--m", o.m, "Number of frogs conditioned on")->required();
  mar->add_option("--positions", o.positions,
                  "l_1,...,l_(m+1), strictly decreasing within one window");
  mar->add_option("--steps", o.steps, "Run the coupled lazy chain for this many steps instead");
  mar->add_option("--burn-in", o.burn_in, "Steps discarded before recording")
      ->capture_default_str();
  mar->add_option("--seed", o.seed, "Master seed")->capture_default_str();
  add_format(mar, o);

  auto* del = app.add_subcommand(
      "delta", "LCS(v,w) - LCS(v1,w1) - LCS(v2,w2) over random pairs split in half");
  del->add_option("--alphabet", o.alphabet, "Alphabet size (default 2)");
  del->add_option("--band", o.band, "auto, exact, heuristic, or a fixed band width")
      ->capture_default_str();
  add_random(del, o);
  add_format(del, o);

  auto* cs = app.add_subcommand("cs-estimate", "LCS(R,R')/n over random pairs");
  cs->add_option("--alphabet", o.alphabet, "Alphabet size (default 2)");
  cs->add_option("--band", o.band, "auto (heuristic), exact, heuristic, or a fixed band width")
      ->capture_default_str();
  add_random(cs, o);
  add_format(cs, o);

  auto* sc = app.add_subcommand("signed-check",
                                "Exhaustive time-reversal check of the signed chain");
  sc->add_option("--k", o.k, "Ring size")->required();
  sc->add_option("--a", o.a, "Positive frogs")->required();
  sc->add_option("--b", o.b, "Negative frogs")->required();
  add_format(sc, o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (lcs->parsed()) return cmd_lcs(o, out);
    if (plcs->parsed()) return cmd_periodic_lcs(o, out);
    if (gam->parsed()) return cmd_gamma(o, out);
    if (spd->parsed()) return cmd_speeds(o, out);
    if (ta->parsed()) return cmd_tau(o, out);
    if (mar->parsed()) return cmd_margins(o, out);
    if (del->parsed()) return cmd_delta(o, out);
    if (cs->parsed()) return cmd_cs_estimate(o, out);
    if (sc->parsed()) return cmd_signed_check(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace lcsfrogs::cli
