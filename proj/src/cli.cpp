// Copyright 2026 The msat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "msat/cli.hpp"

#include <cstdlib>
#include <fstream>

#include "CLI11.hpp"
#include "cli_internal.hpp"
#include "msat/error.hpp"

namespace msat::cli {

int Report::exit_code() const {
  if (verdict == "pass") return kPass;
  if (verdict == "fail") return kFail;
  return kUnknown;
}

const std::vector<std::string>& verbs() {
  static const std::vector<std::string> list{
      "check-theory", "normalize",    "hom",            "compose",  "check-model",
      "monad-laws",   "free",         "adjunction",     "strict-check", "homotopy-probe",
      "rigidify",     "localize",     "verify-up",      "verify-ktk"};
  return list;
}

const std::map<std::string, std::vector<std::string>>& verb_operations() {
  static const std::map<std::string, std::vector<std::string>> table{
      {"check-theory", {"parse_theory", "builtin_doctrine"}},
      {"normalize", {"typecheck", "substitute", "normalize", "terms_equal"}},
      {"hom", {"enumerate_terms", "hom_enumerate"}},
      {"compose", {"compose", "identity", "projection", "product", "tuple"}},
      {"check-model", {"evaluate", "check_equations", "enumerate_homs"}},
      {"monad-laws", {"check_monad_laws"}},
      {"free", {"free_algebra", "degreewise_free"}},
      {"adjunction", {"adjunction_check"}},
      {"strict-check", {"as_functor", "check_product_preservation", "check_strictly_local", "check_strict"}},
      {"homotopy-probe", {"standard", "homotopy_probe"}},
      {"rigidify", {"rigidify_presentation"}},
      {"localize", {"surjectivity_step", "injectivity_step", "localize"}},
      {"verify-up", {"verify_universal_property"}},
      {"verify-ktk", {"projection_map_set", "verify_ktk"}},
  };
  return table;
}

Report run(const Options& options) {
  const auto& table = detail::verb_table();
  auto it = table.find(options.verb);
  if (it == table.end()) throw Error(ErrorKind::InvalidParameter, "unknown verb '" + options.verb + "'");
  Report r;
  r.verb = options.verb;
  it->second(options, r);
  return r;
}

std::string emit_report(const Report& report, const std::string& format) {
  if (format == "text") {
    std::string line = report.verb + ": " + report.verdict;
    if (!report.summary.empty()) line += " (" + report.summary + ")";
    return line + "\n";
  }
  nlohmann::json j;
  j["schema"] = kSchema;
  j["tool"] = {{"name", "msat"}, {"version", kVersion}};
  j["verb"] = report.verb;
  j["verdict"] = report.verdict;
  j["summary"] = report.summary;
  j["bounds"] = report.bounds;
  j["inputs"] = report.inputs;
  j["result"] = report.result;
  j["counterexamples"] = report.counterexamples;
  j["trace"] = report.trace;
  return j.dump(2) + "\n";
}

namespace {

void add_common(CLI::App& sub, Options& o) {
  sub.add_option("--theory", o.theory, "builtin:<spec> or a theory file")->required();
  sub.add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  sub.add_option("--out", o.out, "write the report here instead of stdout");
}

void add_bounds(CLI::App& sub, Options& o) {
  sub.add_option("--size", o.size, "term size bound s")->capture_default_str();
  sub.add_option("--object-bound", o.object_bound, "object size bound B")->capture_default_str();
  sub.add_option("--dim-cap", o.dim_cap, "simplicial dimension cap N")->capture_default_str();
  sub.add_option("--model-bound", o.model_bound, "largest carrier of generated models")->capture_default_str();
  sub.add_option("--budget", o.budget, "localization rounds")->capture_default_str();
  sub.add_option("--arrows", o.arrows, "truncation arrows for H_A: generating or full")->capture_default_str();
}

void configure(CLI::App& app, Options& o) {
  app.require_subcommand(1);
  auto verb = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    add_common(*s, o);
    add_bounds(*s, o);
    s->callback([&o, name] { o.verb = name; });
    return s;
  };
  verb("check-theory", "parse and print a theory");
  auto* n = verb("normalize", "normal form of a term");
  n->add_option("--term", o.term)->required();
  n->add_option("--context", o.context, "e.g. 'x:G, y:G'");
  n->add_option("--against", o.against, "decide equality with this term");
  n->add_option("--assign", o.assign, "var=term, substituted before normalizing");
  n->add_option("--depth", o.depth, "equality budget for generic theories")->capture_default_str();
  auto* h = verb("hom", "enumerate morphisms");
  h->add_option("--from", o.from, "source object, e.g. 'G,G'")->required();
  h->add_option("--to", o.to, "target object")->required();
  auto* c = verb("compose", "composition and the cartesian structure");
  c->add_option("--g", o.g, "'SRC -> TGT : t1; t2'");
  c->add_option("--f", o.f);
  c->add_option("--identity", o.identity, "object");
  c->add_option("--projection", o.projection, "object");
  c->add_option("--select", o.select, "0-based entries for --projection")->delimiter(',');
  c->add_option("--product", o.product, "object");
  c->add_option("--with", o.with, "second factor for --product");
  c->add_option("--tuple", o.tuple, "component morphism (repeatable)");
  c->add_option("--from", o.from, "source for an empty --tuple");
  auto* m = verb("check-model", "check a model against the equations");
  m->add_option("--model", o.model)->required();
  m->add_option("--term", o.term, "term to evaluate");
  m->add_option("--context", o.context);
  m->add_option("--assign", o.assign, "var=element");
  m->add_option("--to", o.target_model, "second model; counts homomorphisms");
  auto* ml = verb("monad-laws", "algebra laws for the free-algebra monad");
  ml->add_option("--model", o.model)->required();
  ml->add_option("--depth", o.depth)->capture_default_str();
  auto* f = verb("free", "free algebra, or degreewise on a simplicial set");
  f->add_option("--sort", o.sort, "generator sort (default: first)");
  f->add_option("--generators", o.generators)->capture_default_str();
  f->add_option("--simplex", o.simplex, "delta:N, boundary:N or horn:N:K");
  auto* a = verb("adjunction", "per-sort free/forgetful adjunction");
  a->add_option("--model", o.model)->required();
  a->add_option("--sort", o.sort, "default: every sort");
  a->add_option("--generators", o.generators, "largest |Y|")->capture_default_str();
  auto* sc = verb("strict-check", "product preservation and strict locality");
  sc->add_option("--diagram", o.diagram);
  sc->add_option("--model", o.model, "use H_A");
  auto* hp = verb("homotopy-probe", "pi0 and homology comparison");
  hp->add_option("--diagram", o.diagram);
  hp->add_option("--model", o.model, "use H_A");
  hp->add_option("--simplex", o.simplex, "tensor a set-level input with this simplicial set");
  auto* rg = verb("rigidify", "the presentation K_T X");
  rg->add_option("--diagram", o.diagram);
  rg->add_option("--model", o.model, "use H_A");
  auto* lc = verb("localize", "localization steps");
  lc->add_option("--diagram", o.diagram);
  lc->add_option("--model", o.model, "use H_A");
  lc->add_option("--step", o.step, "surjectivity or injectivity: run one step");
  lc->add_option("--target", o.target, "projection map target for --step");
  lc->add_flag("--approximate", o.approximate, "accept unstable hom sets");
  auto* up = verb("verify-up", "universal property of K_T X");
  up->add_option("--diagram", o.diagram)->required();
  up->add_option("--model", o.model, "single model instead of all up to --model-bound");
  auto* kt = verb("verify-ktk", "K_T on the projection maps");
  kt->add_option("--model", o.model, "single model instead of all up to --model-bound");
}

int error_exit(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::BudgetExhausted:
    case ErrorKind::HomEnumerationIncomplete:
      return kUnknown;
    default:
      return kUsage;
  }
}

}  // namespace

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app("msat: a workbench for multi-sorted Lawvere theories", "msat");
  app.set_version_flag("--version", kVersion);
  configure(app, o);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kPass : kUsage;
  }
  if (const char* seed = std::getenv("MSAT_SEED")) {
    try {
      std::size_t used = 0;
      o.seed = std::stoull(seed, &used);
      if (used != std::string(seed).size()) throw std::invalid_argument(seed);
    } catch (const std::exception&) {
      err << "msat: MSAT_SEED must be a non-negative integer\n";
      return kUsage;
    }
  }
  Report r;
  try {
    r = run(o);
  } catch (const Error& e) {
    err << "msat: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return error_exit(e);
  } catch (const std::exception& e) {
    err << "msat: " << e.what() << "\n";
    return kUsage;
  }
  r.bounds["size"] = r.bounds.value("size", nlohmann::json(o.size));
  r.bounds["object_bound"] = r.bounds.value("object_bound", nlohmann::json(o.object_bound));
  r.bounds["dim_cap"] = r.bounds.value("dim_cap", nlohmann::json(o.dim_cap));
  r.bounds["model_bound"] = r.bounds.value("model_bound", nlohmann::json(o.model_bound));
  r.bounds["budget"] = r.bounds.value("budget", nlohmann::json(o.budget));
  auto text = emit_report(r, o.format);
  if (o.out.empty()) {
    out << text;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) {
      err << "msat: cannot write " << o.out << "\n";
      return kUsage;
    }
    f << text;
  }
  return r.exit_code();
}

}  // namespace msat::cli
