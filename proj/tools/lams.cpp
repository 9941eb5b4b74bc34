// Batch driver: parse -> check -> (run | denote | verify) over .lams files,
// plus the property suite. Exit codes: 0 ok, 1 parse/type error, 2 a property
// or verification failed, 3 internal invariant violation.

#include "lams/denote.hpp"
#include "lams/parse.hpp"
#include "lams/props.hpp"
#include "lams/rewrite.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>

using json = nlohmann::json;
using namespace lams;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUser = 1;
constexpr int kExitVerify = 2;
constexpr int kExitInternal = 3;

RingId default_ring() {
  if (const char* env = std::getenv("LAMS_RING")) return ring_from_name(env);
  return RingId::QSqrt2I;
}

json type_error_json(const TypeError& e) {
  json j{{"error", "type"},
         {"kind", type_error_kind_name(e.kind)},
         {"rule", e.rule},
         {"term", pretty(e.offending)}};
  if (e.expected) j["expected"] = pretty_type(e.expected);
  if (e.found) j["found"] = pretty_type(e.found);
  return j;
}

json parse_error_json(const ParseError& e) {
  json j{{"error", "parse"},
         {"message", e.what()},
         {"line", e.span.line},
         {"col", e.span.col}};
  if (!e.expected.empty()) j["expected"] = e.expected;
  return j;
}

struct Loaded {
  TermPtr term;
  TypedPtr typed;
};

Loaded load(const std::string& path, RingId ring) {
  Loaded out;
  out.term = parse_file(path, ring);
  out.typed = synthesize({}, out.term);
  return out;
}

int cmd_check(const std::string& path, RingId ring, bool as_json) {
  Loaded l = load(path, ring);
  if (as_json)
    std::cout << json{{"type", pretty_type(l.typed->used_type())}} << "\n";
  else
    std::cout << pretty_type(l.typed->used_type()) << "\n";
  return kExitOk;
}

int cmd_run(const std::string& path, RingId ring, bool trace,
            size_t max_steps) {
  Loaded l = load(path, ring);
  Rewriter rw(ring);
  Trace tr = rw.normalize(l.term, max_steps);
  if (trace) {
    for (size_t i = 0; i < tr.steps.size(); ++i) {
      const Step& s = tr.steps[i];
      std::cout << json{{"index", i},
                        {"rule", rule_name(s.rule)},
                        {"path", s.path},
                        {"before", pretty(s.before)},
                        {"after", pretty(s.after)}}
                << "\n";
    }
    std::cout << json{{"steps", tr.steps.size()},
                      {"normal_form", pretty(tr.final_term)}}
              << "\n";
  } else {
    std::cout << pretty(tr.final_term) << "\n";
  }
  return kExitOk;
}

int cmd_denote(const std::string& path, RingId ring) {
  Loaded l = load(path, ring);
  TypePtr ty = l.typed->used_type();
  if (!is_ground_type(ty)) {
    std::cerr << "denotation of type " << pretty_type(ty)
              << " is not renderable (functions are compared extensionally "
                 "only)\n";
    return kExitUser;
  }
  std::cout << render_sem(denote(l.typed, ring), ty) << "\n";
  return kExitOk;
}

int cmd_verify(const std::string& path, RingId ring) {
  Loaded l = load(path, ring);
  TypePtr ty = l.typed->used_type();
  if (!is_ground_type(ty)) {
    std::cerr << "verification needs a ground or span-of-ground type, got "
              << pretty_type(ty) << "\n";
    return kExitUser;
  }
  Rewriter rw(ring);
  Trace tr = rw.normalize(l.term);
  SemPtr prev = denote(l.typed, ring);
  bool all_ok = true;
  for (size_t i = 0; i < tr.steps.size(); ++i) {
    SemPtr cur = denote(check({}, tr.steps[i].after, ty), ring);
    bool ok = sem_eq(prev, cur, ty, ring) == TriBool::True;
    std::cout << "step " << i << " [" << rule_name(tr.steps[i].rule) << "] "
              << (ok ? "ok" : "DENOTATION CHANGED") << "\n";
    if (!ok) {
      std::cout << "  before: " << render_sem(prev, ty) << "\n"
                << "  after:  " << render_sem(cur, ty) << "\n";
      all_ok = false;
    }
    prev = cur;
  }
  std::cout << (all_ok ? "verified" : "FAILED") << ": " << tr.steps.size()
            << " steps, denotation " << render_sem(prev, ty) << "\n";
  return all_ok ? kExitOk : kExitVerify;
}

int cmd_props(std::uint64_t seed, int count, int size, RingId ring,
              bool as_json) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.count = count;
  cfg.max_size = size;
  cfg.ring = ring;
  auto reports = run_all_properties(cfg);
  bool ok = true;
  json out = json::array();
  for (const auto& r : reports) {
    ok = ok && r.ok();
    if (as_json) {
      json fr = json::array();
      for (const auto& f : r.failures)
        fr.push_back({{"case", f.case_index},
                      {"term", f.term},
                      {"detail", f.detail}});
      out.push_back({{"property", r.name},
                     {"seed", r.seed},
                     {"cases", r.cases},
                     {"failures", fr}});
    } else {
      std::cout << r.name << ": " << r.cases << " cases, "
                << r.failures.size() << " failures\n";
      for (const auto& f : r.failures)
        std::cout << "  case " << f.case_index << ": " << f.term << "\n    "
                  << f.detail << "\n";
    }
  }
  if (as_json) std::cout << out << "\n";
  return ok ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lams: linear-typed algebraic lambda calculus toolchain"};
  app.require_subcommand(1);

  std::string ring_name_opt;
  app.add_option("--ring", ring_name_opt,
                 "scalar ring: q, qsi (default) or z; env LAMS_RING");

  std::string path;
  bool trace = false;
  size_t max_steps = 10000;
  bool format_json = false;
  std::uint64_t seed = 1;
  int count = 100;
  int size = 10;

  CLI::App* c_check = app.add_subcommand("check", "type-check a file");
  c_check->add_option("path", path)->required();
  c_check->add_flag("--json", format_json, "machine-readable output");

  CLI::App* c_run = app.add_subcommand("run", "normalize a file");
  c_run->add_option("path", path)->required();
  c_run->add_flag("--trace", trace, "emit one JSON line per step");
  c_run->add_option("--max-steps", max_steps, "step budget (default 10000)");

  CLI::App* c_denote = app.add_subcommand("denote", "evaluate denotationally");
  c_denote->add_option("path", path)->required();

  CLI::App* c_verify =
      app.add_subcommand("verify", "check per-step denotational equality");
  c_verify->add_option("path", path)->required();

  CLI::App* c_props = app.add_subcommand("props", "run the property suite");
  c_props->add_option("--seed", seed, "generator seed (default 1)");
  c_props->add_option("--count", count, "base case count (default 100)");
  c_props->add_option("--size", size, "max term size (default 10)");
  c_props->add_flag("--json", format_json, "JSON report");

  CLI11_PARSE(app, argc, argv);

  RingId ring = RingId::QSqrt2I;
  try {
    ring = ring_name_opt.empty() ? default_ring()
                                 : ring_from_name(ring_name_opt);
  } catch (const ring_error& e) {
    std::cerr << e.what() << "\n";
    return kExitUser;
  }

  try {
    if (c_check->parsed()) return cmd_check(path, ring, format_json);
    if (c_run->parsed()) return cmd_run(path, ring, trace, max_steps);
    if (c_denote->parsed()) return cmd_denote(path, ring);
    if (c_verify->parsed()) return cmd_verify(path, ring);
    if (c_props->parsed())
      return cmd_props(seed, count, size, ring, format_json);
  } catch (const ParseError& e) {
    std::cout << parse_error_json(e) << "\n";
    return kExitUser;
  } catch (const TypeError& e) {
    std::cout << type_error_json(e) << "\n";
    return kExitUser;
  } catch (const ring_error& e) {
    std::cerr << e.what() << "\n";
    return kExitUser;
  } catch (const normalization_budget_exceeded& e) {
    std::cerr << "no normal form within the step budget; this violates "
                 "strong normalization and indicates an engine bug\n";
    return kExitInternal;
  } catch (const internal_error& e) {
    std::cerr << "internal invariant violation: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUser;
}
