#include "refdecomp/catalog.hpp"
#include "refdecomp/decomposer.hpp"
#include "refdecomp/diffmetric.hpp"
#include "refdecomp/equivalence.hpp"
#include "refdecomp/error.hpp"
#include "refdecomp/harness.hpp"
#include "refdecomp/syntax.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace refdecomp;

namespace {

MethodAst parse(const std::string &source) { return parse_method(source); }

py::dict rule_dict(const RewriteRule &r) {
  py::dict d;
  d["id"] = r.id;
  d["name"] = r.name;
  d["tier"] = to_string(r.tier);
  d["lhs"] = r.lhs;
  d["rhs"] = r.rhs;
  d["guards"] = r.guards;
  d["invertible"] = r.invertible;
  d["inverse_id"] = r.inverse_id;
  return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Decomposition of equivalent MiniJ method pairs into catalog rewrites";

  static py::exception<Error> error(m, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p)
        std::rethrow_exception(p);
    } catch (const Error &e) {
      error((std::string(to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  m.def("normalize", [](const std::string &src) { return print_method(parse(src)); },
        py::arg("source"), "Parse, type-check and print a method in canonical form.");

  m.def("tokens", [](const std::string &src) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto &t : method_tokens(parse(src)))
      out.emplace_back(to_string(t.kind), t.lexeme);
    return out;
  }, py::arg("source"), "(kind, lexeme) tokens of the canonical form.");

  m.def("token_delta", [](const std::string &a, const std::string &b) {
    auto d = token_delta(method_tokens(parse(a)), method_tokens(parse(b)));
    return std::make_pair(d.added, d.deleted);
  }, py::arg("a"), py::arg("b"), "(added, deleted) token counts from a to b.");

  m.def("sim", [](const std::string &mid, const std::string &left, const std::string &right) {
    return sim(parse(mid), parse(left), parse(right)).value;
  }, py::arg("mid"), py::arg("left"), py::arg("right"));

  m.def("check_equivalent", [](const std::string &a, const std::string &b, std::size_t n,
                               std::uint64_t seed) -> py::object {
    auto v = check_equivalent(parse(a), parse(b), n, seed);
    if (v.consistent())
      return py::none();
    const auto &cx = *v.counterexample;
    std::vector<std::string> input;
    for (const auto &x : cx.input)
      input.push_back(display(x));
    py::dict d;
    d["input"] = input;
    d["a"] = cx.outcome_a.str();
    d["b"] = cx.outcome_b.str();
    return std::move(d);
  }, py::arg("a"), py::arg("b"), py::arg("n") = kDefaultSamples, py::arg("seed") = 0,
        "None when no sampled input tells the methods apart, else a counterexample.");

  m.def("list_rules", [] {
    py::list out;
    for (const auto &r : list_rules())
      out.append(rule_dict(r));
    return out;
  });

  m.def("rewrites", [](const std::string &rule_id, const std::string &src) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto &r : find_rewrites(rule_by_id(rule_id), parse(src)))
      out.emplace_back(r.site.summary(), print_method(r.result));
    return out;
  }, py::arg("rule_id"), py::arg("source"), "(site, rewritten method) for every site of a rule.");

  m.def("decompose_json", [](const std::string &left, const std::string &right,
                             const std::string &tiers, int beam, std::uint64_t seed, bool verify,
                             bool snapshots, const std::string &pair_id) {
    DecomposeConfig c;
    c.tiers = parse_tier_set(tiers);
    c.beam_width = beam;
    c.seed = seed;
    c.verify = verify;
    auto l = parse(left), r = parse(right);
    DecompositionTrace trace;
    {
      py::gil_scoped_release release;
      trace = decompose_pair(l, r, c, pair_id);
    }
    return trace_to_json(trace, c.tiers, snapshots).dump();
  }, py::arg("left"), py::arg("right"), py::arg("tiers") = "all", py::arg("beam") = 1,
        py::arg("seed") = 0, py::arg("verify") = true, py::arg("snapshots") = false,
        py::arg("pair_id") = "");
}
