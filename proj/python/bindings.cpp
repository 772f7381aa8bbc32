#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "lcsfrogs/chain.hpp"
#include "lcsfrogs/cli.hpp"
#include "lcsfrogs/error.hpp"
#include "lcsfrogs/lcs.hpp"
#include "lcsfrogs/montecarlo.hpp"
#include "lcsfrogs/signed.hpp"

namespace py = pybind11;
using namespace lcsfrogs;

namespace {

// Both words share one codec so equal characters get equal codes.
std::pair<Word, Word> parse_pair(const std::string& a, const std::string& b, int alphabet) {
  SymbolCodec codec;
  Word v = codec.parse(a);
  Word w = codec.parse(b);
  const int size = std::max(alphabet, codec.distinct());
  return {v.with_alphabet(Alphabet(std::max(size, 1))), w.with_alphabet(Alphabet(std::max(size, 1)))};
}

py::dict stats_dict(const SummaryStats& s) {
  py::dict d;
  d["count"] = s.count;
  d["mean"] = s.mean;
  d["stddev"] = s.stddev;
  d["min"] = s.min;
  d["max"] = s.max;
  return d;
}

py::dict sample_dict(const SampleSet& s) {
  py::dict d = stats_dict(s.stats);
  d["samples"] = s.samples;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  // Later registrations are tried first, so the subclass goes last.
  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  const py::tuple usage_bases = py::make_tuple(error, py::handle(PyExc_ValueError));
  py::register_exception<UsageError>(m, "UsageError", usage_bases);

  m.def("lcs", [](const std::string& v, const std::string& w) {
    const auto [a, b] = parse_pair(v, w, 0);
    return lcs_dp(a, b);
  }, py::arg("v"), py::arg("w"));

  m.def("lcs_heuristic", [](const std::string& v, const std::string& w) {
    const auto [a, b] = parse_pair(v, w, 0);
    const auto h = lcs_heuristic(a, b);
    return py::make_tuple(h.length, h.band_used, h.confirmed);
  }, py::arg("v"), py::arg("w"));

  m.def("lcs_periodic", [](const std::string& r, const std::string& word, std::int64_t x) {
    const auto [a, b] = parse_pair(r, word, 0);
    return lcs_periodic(a, b, x);
  }, py::arg("r"), py::arg("word"), py::arg("x"));

  m.def("delta", [](const std::string& v, const std::string& w) {
    const auto [a, b] = parse_pair(v, w, 0);
    return delta_statistic(a, b);
  }, py::arg("v"), py::arg("w"));

  // Exact speeds as "p/q" strings (floats for words too large to solve exactly).
  m.def("speeds", [](const std::string& word, int alphabet) {
    const Word w = parse_word(word, alphabet);
    const auto sol = analyze(w, w.alphabet().size());
    py::list out;
    if (sol.speeds.exact)
      for (const auto& s : *sol.speeds.exact) out.append(format_rational(s));
    else
      for (double s : sol.speeds.values) out.append(s);
    return out;
  }, py::arg("word"), py::arg("alphabet") = 0);

  m.def("gamma", [](const std::string& word, const std::string& rho, int alphabet) {
    const Word w = parse_word(word, alphabet);
    const int sigma = w.alphabet().size();
    const auto sol = analyze(w, sigma);
    const Rational r = parse_rational(rho);
    py::dict d;
    if (sol.speeds.exact) {
      d["gamma"] = format_rational(lcsfrogs::gamma(*sol.speeds.exact, sol.k(), r));
    } else {
      d["gamma"] = lcsfrogs::gamma(sol.speeds.values, sol.k(), r.get_d());
    }
    d["tau"] = tau(sol, r);
    return d;
  }, py::arg("word"), py::arg("rho") = "1", py::arg("alphabet") = 0);

  m.def("tau", [](const std::string& word, const std::string& rho, int alphabet) {
    const Word w = parse_word(word, alphabet);
    return tau(analyze(w, w.alphabet().size()), parse_rational(rho));
  }, py::arg("word"), py::arg("rho"), py::arg("alphabet") = 0);

  m.def("margins", [](int k, int mm, const std::vector<int>& positions) {
    return format_rational(margins_formula(k, mm, positions));
  }, py::arg("k"), py::arg("m"), py::arg("positions"));

  m.def("estimate_speeds", [](const std::string& word, int alphabet, std::int64_t n,
                              std::int64_t trials, std::uint64_t seed, int threads) {
    const Word w = parse_word(word, alphabet);
    py::list out;
    for (const auto& s : estimate_speeds(w, w.alphabet().size(), n, trials, seed, threads))
      out.append(stats_dict(s));
    return out;
  }, py::arg("word"), py::arg("alphabet") = 0, py::arg("n") = 100'000, py::arg("trials") = 20,
     py::arg("seed") = 0, py::arg("threads") = 1);

  m.def("delta_experiment", [](std::int64_t n, std::int64_t trials, std::uint64_t seed,
                               int alphabet, int threads) {
    SampleSet s;
    {
      py::gil_scoped_release release;
      s = delta_experiment({seed, trials, n, alphabet, threads});
    }
    return sample_dict(s);
  }, py::arg("n"), py::arg("trials"), py::arg("seed") = 0, py::arg("alphabet") = 2,
     py::arg("threads") = 1);

  m.def("estimate_gamma_cs", [](std::int64_t n, std::int64_t trials, std::uint64_t seed,
                                int alphabet, int threads) {
    SampleSet s;
    {
      py::gil_scoped_release release;
      s = estimate_gamma_cs({seed, trials, n, alphabet, threads});
    }
    return sample_dict(s);
  }, py::arg("n"), py::arg("trials"), py::arg("seed") = 0, py::arg("alphabet") = 2,
     py::arg("threads") = 1);

  // Same as the command-line tool; returns (exit code, stdout, stderr).
  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"));
}
