// Python bindings for the main operations: parse, check, normalize, denote,
// per-step verification and the property suite.

#include "lams/denote.hpp"
#include "lams/parse.hpp"
#include "lams/props.hpp"
#include "lams/rewrite.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace lams;

namespace {

RingId ring_arg(const std::string& name) { return ring_from_name(name); }

py::dict step_dict(size_t index, const Step& s) {
  py::dict d;
  d["index"] = index;
  d["rule"] = rule_name(s.rule);
  d["path"] = s.path;
  d["before"] = pretty(s.before);
  d["after"] = pretty(s.after);
  return d;
}

}  // namespace

PYBIND11_MODULE(_lams, m) {
  m.doc() = "linear-typed algebraic lambda calculus: parser, type checker, "
            "rewrite engine and exact denotational evaluator";

  py::register_exception<ParseError>(m, "LamsParseError");
  py::register_exception<TypeError>(m, "LamsTypeError");

  m.def(
      "check_type",
      [](const std::string& src, const std::string& ring) {
        TermPtr t = parse_term(src, ring_arg(ring));
        return pretty_type(synthesize({}, t)->used_type());
      },
      py::arg("src"), py::arg("ring") = "qsi",
      "Minimal type of a closed term, pretty-printed.");

  m.def(
      "parse_pretty",
      [](const std::string& src, const std::string& ring) {
        return pretty(parse_term(src, ring_arg(ring)));
      },
      py::arg("src"), py::arg("ring") = "qsi",
      "Canonical (AC-sorted) rendering of a term.");

  m.def(
      "normalize",
      [](const std::string& src, const std::string& ring, size_t max_steps) {
        RingId r = ring_arg(ring);
        TermPtr t = parse_term(src, r);
        synthesize({}, t);
        Trace tr = Rewriter(r).normalize(t, max_steps);
        py::list steps;
        for (size_t i = 0; i < tr.steps.size(); ++i)
          steps.append(step_dict(i, tr.steps[i]));
        py::dict out;
        out["normal_form"] = pretty(tr.final_term);
        out["steps"] = steps;
        return out;
      },
      py::arg("src"), py::arg("ring") = "qsi", py::arg("max_steps") = 10000,
      "Full reduction: the normal form and the step trace.");

  m.def(
      "denote",
      [](const std::string& src, const std::string& ring) {
        RingId r = ring_arg(ring);
        TermPtr t = parse_term(src, r);
        TypedPtr typed = synthesize({}, t);
        if (!is_ground_type(typed->used_type()))
          throw std::invalid_argument("type is not renderable: " +
                                      pretty_type(typed->used_type()));
        return render_sem(denote(typed, r), typed->used_type());
      },
      py::arg("src"), py::arg("ring") = "qsi",
      "Exact denotation at a ground type, rendered.");

  m.def(
      "verify",
      [](const std::string& src, const std::string& ring) {
        RingId r = ring_arg(ring);
        TermPtr t = parse_term(src, r);
        TypedPtr typed = synthesize({}, t);
        TypePtr ty = typed->used_type();
        if (!is_ground_type(ty))
          throw std::invalid_argument("type is not ground: " +
                                      pretty_type(ty));
        Rewriter rw(r);
        SemPtr prev = denote(typed, r);
        for (auto& s : rw.normalize(t).steps) {
          SemPtr cur = denote(check({}, s.after, ty), r);
          if (sem_eq(prev, cur, ty, r) != TriBool::True) return false;
          prev = cur;
        }
        return true;
      },
      py::arg("src"), py::arg("ring") = "qsi",
      "True when every rewrite step preserves the denotation.");

  m.def(
      "run_properties",
      [](std::uint64_t seed, int count, int size, const std::string& ring) {
        GenConfig cfg;
        cfg.seed = seed;
        cfg.count = count;
        cfg.max_size = size;
        cfg.ring = ring_arg(ring);
        py::dict out;
        for (const auto& rep : run_all_properties(cfg)) {
          py::dict r;
          r["cases"] = rep.cases;
          py::list fails;
          for (const auto& f : rep.failures) {
            py::dict fd;
            fd["case"] = f.case_index;
            fd["term"] = f.term;
            fd["detail"] = f.detail;
            fails.append(fd);
          }
          r["failures"] = fails;
          out[py::str(rep.name)] = r;
        }
        return out;
      },
      py::arg("seed") = 1, py::arg("count") = 50, py::arg("size") = 10,
      py::arg("ring") = "qsi", "Run the metatheorem property suite.");
}
