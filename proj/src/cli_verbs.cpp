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

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "cli_internal.hpp"
#include "msat/dsl.hpp"
#include "msat/models.hpp"
#include "msat/rigidify.hpp"
#include "msat/simplicial.hpp"
#include "msat/theory_cat.hpp"

namespace msat::cli::detail {
namespace {

using nlohmann::json;

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t depth = 0, start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')' && depth > 0) --depth;
    if (s[i] == sep && depth == 0) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  out.push_back(trim(s.substr(start)));
  return out;
}

Error usage(const std::string& message) { return Error(ErrorKind::InvalidParameter, message); }

void require(const std::string& value, const char* flag, const Options& o) {
  if (value.empty()) throw usage(o.verb + " needs " + flag);
}

json file_input(const std::string& path) {
  return {{"path", path}, {"digest", "fnv1a64:" + digest(read_file(path))}};
}

DoctrinePtr theory(const Options& o, Report& r) {
  require(o.theory, "--theory", o);
  if (o.theory.rfind("builtin:", 0) == 0) {
    r.inputs["theory"] = {{"builtin", o.theory.substr(8)}};
  } else {
    r.inputs["theory"] = file_input(o.theory);
  }
  return load_theory(o.theory);
}

FiniteAlgebra model(const Options& o, Report& r, const DoctrinePtr& d, bool validate = true,
                    const std::string& path = "", const char* key = "model") {
  const std::string& p = path.empty() ? o.model : path;
  require(p, "--model", o);
  r.inputs[key] = file_input(p);
  return parse_model(read_file(p), d, validate);
}

json diagram_json(const Options& o, Report& r) {
  require(o.diagram, "--diagram", o);
  r.inputs["diagram"] = file_input(o.diagram);
  try {
    return json::parse(read_file(o.diagram));
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Syntax, o.diagram + ": " + e.what());
  }
}

void echo_truncation(Report& r, const Truncation& t) {
  r.bounds["object_bound"] = t.object_bound();
  r.bounds["size"] = t.term_bound();
  r.bounds["arrows"] = std::string(to_string(t.kind()));
}

ArrowKind arrow_kind(const Options& o) {
  if (o.arrows == "generating") return ArrowKind::Generating;
  if (o.arrows == "full") return ArrowKind::Full;
  throw usage("--arrows must be generating or full");
}

/// A set-level diagram from --diagram, or H_A for --model.
DiagramOnTruncation set_diagram(const Options& o, Report& r, const DoctrinePtr& d) {
  if (!o.diagram.empty()) {
    auto x = diagram_from_json(diagram_json(o, r), d);
    echo_truncation(r, x.truncation());
    return x;
  }
  if (o.model.empty()) throw usage(o.verb + " needs --diagram or --model");
  auto alg = model(o, r, d);
  return as_functor(alg, Truncation::make(d, o.object_bound, o.size, arrow_kind(o)));
}

std::string object_text(const TheoryObject& a) {
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + a[i].name;
  return s;
}

std::string morphism_text(const TheoryMorphism& m) {
  std::string s = object_text(m.source) + " -> " + object_text(m.target) + " :";
  for (std::size_t i = 0; i < m.terms.size(); ++i) s += (i ? "; " : " ") + to_string(m.terms[i]);
  return s;
}

/// `SRC -> TGT : t1; t2` with terms over v1..vn.
TheoryMorphism parse_morphism(const std::string& text, const Doctrine& d) {
  auto arrow = text.find("->");
  auto colon = text.find(':', arrow == std::string::npos ? 0 : arrow);
  if (arrow == std::string::npos || colon == std::string::npos) {
    throw Error(ErrorKind::Syntax, "morphism '" + text + "' is not of the form SRC -> TGT : terms");
  }
  auto src = TheoryObject::parse(trim(text.substr(0, arrow)));
  auto tgt = TheoryObject::parse(trim(text.substr(arrow + 2, colon - arrow - 2)));
  std::vector<Term> terms;
  auto body = trim(text.substr(colon + 1));
  if (!body.empty()) {
    for (const auto& t : split(body, ';')) terms.push_back(parse_term(t, src.context(), d));
  }
  return make_morphism(src, tgt, std::move(terms), d);
}

json morphism_json(const TheoryMorphism& m) {
  return {{"text", morphism_text(m)}, {"morphism", to_json(m)}};
}

TruncSimplicialSet simplex(const std::string& spec, std::size_t cap) {
  auto parts = split(spec, ':');
  auto num = [&](std::size_t i) -> std::size_t {
    if (i >= parts.size()) throw usage("--simplex '" + spec + "' is missing a number");
    try {
      return std::stoul(parts[i]);
    } catch (const std::exception&) {
      throw usage("--simplex '" + spec + "': bad number '" + parts[i] + "'");
    }
  };
  if (parts[0] == "delta" && parts.size() == 2) return standard(StandardKind::Delta, num(1), cap);
  if (parts[0] == "boundary" && parts.size() == 2) return standard(StandardKind::Boundary, num(1), cap);
  if (parts[0] == "horn" && parts.size() == 3) return standard(StandardKind::Horn, num(1), cap, num(2));
  throw usage("--simplex must be delta:N, boundary:N or horn:N:K");
}

Sort sort_arg(const Options& o, const Doctrine& d) {
  if (o.sort.empty()) return d.sorts().at(0);
  Sort s(o.sort);
  if (!d.has_sort(s)) throw Error(ErrorKind::UnknownSymbol, "unknown sort '" + o.sort + "'");
  return s;
}

std::string equation_text(const Equation& e) { return to_string(e.lhs) + " = " + to_string(e.rhs); }

// ---------------------------------------------------------------------------

void check_theory(const Options& o, Report& r) {
  auto d = theory(o, r);
  auto text = print_theory(*d);
  bool stable = print_theory(*parse_theory(text)) == text;
  json ops = json::array();
  for (const auto& op : d->ops()) {
    json dom = json::array();
    for (const auto& s : op.domain) dom.push_back(s.name);
    ops.push_back({{"name", op.name}, {"domain", dom}, {"codomain", op.codomain.name}});
  }
  json sorts = json::array();
  for (const auto& s : d->sorts()) sorts.push_back(s.name);
  json eqs = json::array();
  for (const auto& e : d->equations()) eqs.push_back(equation_text(e));
  r.bounds["object_bound"] = o.object_bound;
  r.result = {{"name", d->name()},
              {"engine", std::string(to_string(d->engine()))},
              {"sorts", sorts},
              {"operations", ops},
              {"equations", eqs},
              {"objects", objects_up_to(*d, o.object_bound).size()},
              {"canonical", text},
              {"round_trip_stable", stable}};
  if (!stable) r.counterexamples.push_back({{"canonical", text}});
  r.verdict = stable ? "pass" : "fail";
  r.summary = d->name() + ", " + std::to_string(d->sorts().size()) + " sorts, " +
              std::to_string(d->ops().size()) + " operations, " + std::to_string(d->equations().size()) +
              " equations";
}

void normalize_verb(const Options& o, Report& r) {
  auto d = theory(o, r);
  require(o.term, "--term", o);
  Context ctx = parse_context(o.context);
  Term t = parse_term(o.term, ctx, *d);
  Sort s = typecheck(t, ctx, *d);
  r.result["term"] = to_string(t);
  r.result["sort"] = s.name;
  if (!o.assign.empty()) {
    Assignment a;
    for (const auto& kv : o.assign) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) throw usage("--assign expects var=term");
      auto var = trim(kv.substr(0, eq));
      if (!ctx.find(var)) throw Error(ErrorKind::UnboundVariable, "'" + var + "' is not in the context");
      a[var] = parse_term(trim(kv.substr(eq + 1)), ctx, *d);
    }
    for (std::size_t i = 0; i < ctx.size(); ++i)
      if (!a.count(ctx.name(i))) a[ctx.name(i)] = Term::variable(ctx.name(i), ctx.sort(i));
    t = substitute(t, a);
    r.result["substituted"] = to_string(t);
  }
  if (d->exact()) {
    auto nf = normalize(t, *d);
    r.result["normal_form"] = to_string(nf);
    r.result["size"] = term_size(nf, *d);
    r.summary = to_string(nf);
  } else {
    r.summary = to_string(t);
  }
  if (!o.against.empty()) {
    Term u = parse_term(o.against, ctx, *d);
    auto v = terms_equal(t, u, *d, static_cast<int>(o.depth));
    r.bounds["depth"] = o.depth;
    r.result["against"] = to_string(u);
    r.result["equal"] = std::string(to_string(v));
    r.verdict = v == Verdict::Equal ? "pass" : v == Verdict::Distinct ? "fail" : "unknown";
    if (v == Verdict::Distinct) {
      json c = {{"lhs", to_string(t)}, {"rhs", to_string(u)}};
      if (d->exact()) {
        c["lhs_normal_form"] = to_string(normalize(t, *d));
        c["rhs_normal_form"] = to_string(normalize(u, *d));
      }
      r.counterexamples.push_back(c);
    }
    r.summary += " vs " + to_string(u) + ": " + std::string(to_string(v));
  }
}

void hom(const Options& o, Report& r) {
  auto d = theory(o, r);
  auto src = TheoryObject::parse(o.from);
  auto tgt = TheoryObject::parse(o.to);
  r.bounds["size"] = o.size;
  json components = json::array();
  for (std::size_t i = 0; i < tgt.size(); ++i) {
    components.push_back({{"sort", tgt[i].name},
                          {"terms", enumerate_terms(src.context(), tgt[i], *d, o.size).size()}});
  }
  auto homs = hom_enumerate(src, tgt, *d, o.size);
  json list = json::array();
  for (const auto& m : homs) list.push_back(morphism_text(m));
  r.result = {{"from", object_text(src)}, {"to", object_text(tgt)}, {"count", homs.size()},
              {"components", components}, {"morphisms", list}};
  r.summary = std::to_string(homs.size()) + " morphisms " + object_text(src) + " -> " + object_text(tgt);
}

void compose_verb(const Options& o, Report& r) {
  auto d = theory(o, r);
  int modes = !o.g.empty() + !o.identity.empty() + !o.projection.empty() + !o.product.empty() +
              !o.tuple.empty();
  if (modes != 1) throw usage("compose needs exactly one of --g/--f, --identity, --projection, --product, --tuple");
  if (!o.g.empty()) {
    require(o.f, "--f", o);
    auto g = parse_morphism(o.g, *d);
    auto f = parse_morphism(o.f, *d);
    auto c = compose(g, f, *d);
    r.result = {{"operation", "compose"}, {"g", morphism_text(g)}, {"f", morphism_text(f)},
                {"result", morphism_json(c)}};
    r.summary = morphism_text(c);
  } else if (!o.identity.empty()) {
    auto m = identity(TheoryObject::parse(o.identity));
    r.result = {{"operation", "identity"}, {"result", morphism_json(m)}};
    r.summary = morphism_text(m);
  } else if (!o.projection.empty()) {
    auto m = projection(TheoryObject::parse(o.projection), o.select);
    r.result = {{"operation", "projection"}, {"result", morphism_json(m)}};
    r.summary = morphism_text(m);
  } else if (!o.product.empty()) {
    require(o.with, "--with", o);
    auto cone = product(TheoryObject::parse(o.product), TheoryObject::parse(o.with));
    r.result = {{"operation", "product"},
                {"object", object_text(cone.object)},
                {"first", morphism_json(cone.first)},
                {"second", morphism_json(cone.second)}};
    r.summary = object_text(cone.object);
  } else {
    std::vector<TheoryMorphism> fs;
    for (const auto& t : o.tuple) fs.push_back(parse_morphism(t, *d));
    auto m = tuple(fs, o.from.empty() ? TheoryObject() : TheoryObject::parse(o.from));
    r.result = {{"operation", "tuple"}, {"result", morphism_json(m)}};
    r.summary = morphism_text(m);
  }
}

void check_model(const Options& o, Report& r) {
  auto d = theory(o, r);
  auto alg = model(o, r, d, false);
  auto report = check_equations(alg);
  json carriers = json::object();
  for (std::size_t s = 0; s < d->sorts().size(); ++s) carriers[d->sorts()[s].name] = alg.carrier(s).size();
  r.result = {{"model", alg.name()}, {"carriers", carriers}, {"instances", report.instances},
              {"violations", report.violations.size()}};
  for (const auto& v : report.violations) {
    json a = json::object();
    for (const auto& [var, label] : v.assignment) a[var] = label;
    r.counterexamples.push_back({{"equation", equation_text(d->equations()[v.equation])},
                                 {"assignment", a},
                                 {"lhs", v.lhs_value},
                                 {"rhs", v.rhs_value}});
  }
  r.verdict = report.ok() ? "pass" : "fail";
  r.summary = alg.name() + ": " + std::to_string(report.instances) + " equation instances, " +
              std::to_string(report.violations.size()) + " violated";
  if (!o.term.empty()) {
    Context ctx = parse_context(o.context);
    Environment env;
    for (const auto& kv : o.assign) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) throw usage("--assign expects var=element");
      auto var = trim(kv.substr(0, eq));
      const Sort* s = ctx.find(var);
      if (!s) throw Error(ErrorKind::UnboundVariable, "'" + var + "' is not in the context");
      auto e = alg.find(*s, trim(kv.substr(eq + 1)));
      if (!e) throw Error(ErrorKind::ElementNotInCarrier, "'" + trim(kv.substr(eq + 1)) + "' is not in carrier " + s->name);
      env[var] = *e;
    }
    Term t = parse_term(o.term, ctx, *d);
    Sort s = typecheck(t, ctx, *d);
    r.result["evaluation"] = {{"term", to_string(t)}, {"value", alg.carrier(s)[evaluate(alg, t, env)]}};
  }
  if (!o.target_model.empty()) {
    auto b = model(o, r, d, true, o.target_model, "target_model");
    r.result["homomorphisms"] = enumerate_homs(alg, b).size();
  }
}

void monad_laws(const Options& o, Report& r) {
  auto d = theory(o, r);
  auto alg = model(o, r, d, false);
  MonadLawOptions opts;
  opts.depth = o.depth;
  opts.seed = o.seed;
  r.bounds["depth"] = o.depth;
  r.bounds["seed"] = o.seed;
  auto report = check_monad_laws(alg, opts);
  r.result = {{"model", alg.name()}, {"unit_checks", report.unit_checks},
              {"multiplication_checks", report.multiplication_checks}};
  for (const auto& f : report.failures) r.counterexamples.push_back({{"law", f.law}, {"detail", f.detail}});
  r.verdict = report.ok() ? "pass" : "fail";
  r.summary = alg.name() + ": " + std::to_string(report.unit_checks) + " unit and " +
              std::to_string(report.multiplication_checks) + " multiplication checks, " +
              std::to_string(report.failures.size()) + " failures";
}

void free_verb(const Options& o, Report& r) {
  auto d = theory(o, r);
  Sort alpha = sort_arg(o, *d);
  r.bounds["size"] = o.size;
  if (!o.simplex.empty()) {
    r.bounds["dim_cap"] = o.dim_cap;
    auto y = simplex(o.simplex, o.dim_cap);
    auto f = degreewise_free(d, alpha, y);
    json levels = json::array();
    for (std::size_t k = 0; k <= f.dim_cap(); ++k) {
      json counts = json::object();
      for (const auto& s : d->sorts()) counts[s.name] = f.level(k).enumerate(s, o.size).size();
      levels.push_back({{"generators", y.size(k)}, {"elements", counts}});
    }
    auto err = f.identity_error(o.size);
    r.result = {{"sort", alpha.name}, {"simplex", o.simplex}, {"levels", levels},
                {"identities_hold", !err.has_value()}};
    if (err) r.counterexamples.push_back({{"identity", *err}});
    r.verdict = err ? "fail" : "pass";
    r.summary = "degreewise free on " + o.simplex + ", " + std::to_string(f.dim_cap() + 1) + " levels";
    return;
  }
  r.bounds["generators"] = o.generators;
  auto p = free_algebra(d, generator_context(alpha, o.generators));
  json elements = json::object();
  std::size_t total = 0;
  for (const auto& s : d->sorts()) {
    json list = json::array();
    for (const auto& t : p.enumerate(s, o.size)) list.push_back(to_string(t));
    total += list.size();
    elements[s.name] = list;
  }
  r.result = {{"sort", alpha.name}, {"generators", to_json(p)["generators"]}, {"elements", elements}};
  r.summary = std::to_string(total) + " elements of size <= " + std::to_string(o.size);
}

void adjunction(const Options& o, Report& r) {
  auto d = theory(o, r);
  auto alg = model(o, r, d);
  std::vector<Sort> sorts = o.sort.empty() ? d->sorts() : std::vector<Sort>{sort_arg(o, *d)};
  r.bounds["generators"] = o.generators;
  r.bounds["size"] = o.size;
  json checks = json::array();
  bool ok = true;
  for (const auto& s : sorts) {
    for (std::size_t n = 0; n <= o.generators; ++n) {
      auto a = adjunction_check(d, s, n, alg, o.size);
      json c = {{"sort", s.name}, {"generators", n}, {"homs", a.homs}, {"functions", a.functions},
                {"fragment_elements", a.fragment_elements}, {"ok", a.ok}};
      checks.push_back(c);
      if (!a.ok) {
        ok = false;
        c["detail"] = a.detail;
        r.counterexamples.push_back(c);
      }
    }
  }
  r.result = {{"model", alg.name()}, {"checks", checks}};
  r.verdict = ok ? "pass" : "fail";
  r.summary = std::to_string(checks.size()) + " adjunction checks";
}

void strict_check(const Options& o, Report& r) {
  auto d = theory(o, r);
  if (!o.diagram.empty()) {
    auto j = diagram_json(o, r);
    if (j.contains("levels")) {
      auto x = simplicial_diagram_from_json(j, d);
      echo_truncation(r, x.truncation());
      r.bounds["dim_cap"] = x.dim_cap();
      auto s = check_strict(x);
      for (const auto& f : s.failures)
        r.counterexamples.push_back({{"level", f.level}, {"object", object_text(f.object)},
                                     {"values", f.value_count}, {"product", f.product_count}});
      r.result = {{"simplicial", true}, {"strict", s.strict()}};
      r.verdict = s.strict() ? "pass" : "fail";
      r.summary = s.strict() ? "strict at every level" : std::to_string(s.failures.size()) + " failures";
      return;
    }
  }
  auto x = set_diagram(o, r, d);
  echo_truncation(r, x.truncation());
  auto p = check_product_preservation(x);
  auto l = check_strictly_local(x);
  for (const auto& f : p.failures)
    r.counterexamples.push_back({{"object", object_text(f.object)}, {"values", f.value_count},
                                 {"product", f.product_count}, {"injective", f.injective},
                                 {"surjective", f.surjective}});
  json local = json::array();
  for (const auto& f : l.failures)
    local.push_back({{"object", object_text(f.object)}, {"maps_from_target", f.maps_from_target},
                     {"maps_from_factors", f.maps_from_factors}});
  r.result = {{"simplicial", false}, {"strict", p.strict()}, {"strictly_local", l.local()},
              {"locality_failures", local}};
  r.verdict = p.strict() ? "pass" : "fail";
  r.summary = std::string(p.strict() ? "product preserving" : "not product preserving") +
              (l.local() ? ", strictly local" : ", not strictly local");
}

void homotopy(const Options& o, Report& r) {
  auto d = theory(o, r);
  std::optional<SimplicialDiagram> x;
  if (!o.diagram.empty()) {
    auto j = diagram_json(o, r);
    if (j.contains("levels")) x = simplicial_diagram_from_json(j, d);
    else x = o.simplex.empty() ? constant(diagram_from_json(j, d), o.dim_cap)
                               : tensor(diagram_from_json(j, d), simplex(o.simplex, o.dim_cap));
  } else {
    auto h = set_diagram(o, r, d);
    x = o.simplex.empty() ? constant(h, o.dim_cap) : tensor(h, simplex(o.simplex, o.dim_cap));
  }
  echo_truncation(r, x->truncation());
  r.bounds["dim_cap"] = x->dim_cap();
  auto p = homotopy_probe(*x);
  auto refutation = [](const Refutation& f) {
    return json{{"object", object_text(f.object)}, {"invariant", f.invariant},
                {"value", f.value}, {"product", f.expected}};
  };
  for (const auto& f : p.refutations) r.counterexamples.push_back(refutation(f));
  json terminal = json::array();
  for (const auto& f : p.terminal_refutations) terminal.push_back(refutation(f));
  r.result = {{"outcome", p.passed() ? "passed_necessary_checks" : "refuted"},
              {"strict", check_strict(*x).strict()},
              {"terminal", {{"passed", p.terminal_passed()}, {"refutations", terminal}}}};
  r.verdict = p.passed() ? "pass" : "fail";
  r.summary = p.passed() ? "passed necessary checks (not a proof of weak equivalence)"
                         : "refuted at " + object_text(p.refutations[0].object) + " by " + p.refutations[0].invariant;
}

void rigidify_verb(const Options& o, Report& r) {
  auto d = theory(o, r);
  auto x = set_diagram(o, r, d);
  echo_truncation(r, x.truncation());
  auto p = rigidify_presentation(x);
  r.result = {{"presentation", to_json(p)}};
  r.summary = std::to_string(p.generators().size()) + " generators, " +
              std::to_string(p.relations().size()) + " relations";
}

json unit_json(const Truncation& t, const std::vector<std::vector<std::int32_t>>& unit) {
  json j = json::object();
  for (std::size_t o = 0; o < unit.size(); ++o) j[object_text(t.objects()[o])] = unit[o];
  return j;
}

void localize_verb(const Options& o, Report& r) {
  auto d = theory(o, r);
  auto x = set_diagram(o, r, d);
  echo_truncation(r, x.truncation());
  r.bounds["budget"] = o.budget;
  r.result["approximate_allowed"] = o.approximate;
  if (!o.step.empty()) {
    require(o.target, "--target", o);
    ProjectionMap p{TheoryObject::parse(o.target)};
    StepResult s = o.step == "surjectivity" ? surjectivity_step(x, p, o.approximate)
                   : o.step == "injectivity" ? injectivity_step(x, p, o.approximate)
                                             : throw usage("--step must be surjectivity or injectivity");
    r.result["step"] = o.step;
    r.result["diagram"] = to_json(s.diagram);
    r.result["unit"] = unit_json(x.truncation(), s.unit);
    r.result["approximate"] = s.approximate;
    r.verdict = s.approximate ? "unknown" : "pass";
    r.summary = o.step + " step at " + o.target;
    return;
  }
  try {
    auto l = localize(x, o.budget, o.approximate);
    r.result["diagram"] = to_json(l.diagram);
    r.result["unit"] = unit_json(x.truncation(), l.unit);
    r.trace = to_json(l.trace);
    r.verdict = l.trace.approximate ? "unknown" : "pass";
    r.summary = "strictly local after " + std::to_string(l.trace.rounds) + " rounds";
  } catch (const BudgetExhaustedError& e) {
    r.trace = to_json(e.trace());
    r.result["error"] = e.what();
    r.verdict = "unknown";
    r.summary = e.what();
  }
}

std::vector<FiniteAlgebra> models_for(const Options& o, Report& r, const DoctrinePtr& d) {
  if (!o.model.empty()) return {model(o, r, d)};
  r.bounds["model_bound"] = o.model_bound;
  return models_up_to(d, o.model_bound);
}

json checks_json(const UniversalPropertyReport& u) {
  json j = json::array();
  for (const auto& c : u.checks)
    j.push_back({{"model", c.model}, {"left", c.homs}, {"right", c.nats}, {"ok", c.ok}});
  return j;
}

void verify_up(const Options& o, Report& r) {
  auto d = theory(o, r);
  if (o.diagram.empty()) throw usage("verify-up needs --diagram");
  auto x = diagram_from_json(diagram_json(o, r), d);
  echo_truncation(r, x.truncation());
  auto models = models_for(o, r, d);
  auto p = rigidify_presentation(x);
  auto u = verify_universal_property(x, p, models);
  auto checks = checks_json(u);
  for (const auto& c : checks)
    if (!c["ok"].get<bool>()) r.counterexamples.push_back(c);
  r.result = {{"generators", p.generators().size()}, {"relations", p.relations().size()},
              {"checks", checks}};
  r.verdict = u.ok() ? "pass" : "fail";
  r.summary = std::to_string(u.checks.size()) + " models, Hom(K X, A) vs Nat(X, H_A)";
}

void verify_ktk_verb(const Options& o, Report& r) {
  auto d = theory(o, r);
  r.bounds["object_bound"] = o.object_bound;
  r.bounds["size"] = o.size;
  auto models = models_for(o, r, d);
  json maps = json::array();
  bool ok = true;
  for (const auto& p : projection_map_set(*d, o.object_bound)) {
    auto u = verify_ktk(d, p, models, o.size);
    auto checks = checks_json(u);
    for (const auto& c : checks)
      if (!c["ok"].get<bool>()) r.counterexamples.push_back({{"target", object_text(p.target)}, {"check", c}});
    ok = ok && u.ok();
    maps.push_back({{"target", object_text(p.target)}, {"checks", checks}});
  }
  r.result = {{"projection_maps", maps}};
  r.verdict = ok ? "pass" : "fail";
  r.summary = std::to_string(maps.size()) + " projection maps against " + std::to_string(models.size()) + " models";
}

}  // namespace

const std::map<std::string, Verb>& verb_table() {
  static const std::map<std::string, Verb> table{
      {"check-theory", check_theory}, {"normalize", normalize_verb}, {"hom", hom},
      {"compose", compose_verb},      {"check-model", check_model},  {"monad-laws", monad_laws},
      {"free", free_verb},            {"adjunction", adjunction},    {"strict-check", strict_check},
      {"homotopy-probe", homotopy},   {"rigidify", rigidify_verb},   {"localize", localize_verb},
      {"verify-up", verify_up},       {"verify-ktk", verify_ktk_verb},
  };
  return table;
}

std::string digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace msat::cli::detail
