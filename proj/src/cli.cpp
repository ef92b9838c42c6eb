/*
 * Copyright 2026 The stpa-rec Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "stpa/cli.hpp"

#include <functional>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "stpa/analysis.hpp"
#include "stpa/axioms.hpp"
#include "stpa/config.hpp"
#include "stpa/errors.hpp"
#include "stpa/meadow_laws.hpp"
#include "stpa/protocols.hpp"
#include "stpa/semantics.hpp"
#include "stpa/soundness.hpp"
#include "stpa/syntax.hpp"

namespace stpa {

namespace {

using Json = nlohmann::ordered_json;

// Values collected from the command line before the configuration is
// resolved.  Unset optionals leave the configuration untouched.
struct Flags {
  bool json = false;
  bool trace = false;
  std::string config_path;
  std::optional<std::string> speed;
  std::optional<std::int64_t> seed;
  std::optional<int> depth;
  std::optional<std::int64_t> unfold_budget;
  std::optional<std::int64_t> samples;
  std::vector<std::string> assignments;

  // Ambient and term arguments shared by several subcommands.
  std::string at = "0";
  std::string sigma = "{}";
  std::string channels;
  std::vector<std::string> terms;

  // Subcommand specific.
  bool random = false;
  std::size_t max_traces = 1000;
  std::string method = "game";
  std::int64_t instances = 100;
  std::vector<std::string> only;
  bool list = false;
  std::string apply;
  std::string par_action;
  bool no_maxprog = false;
};

class Command {
 public:
  Command(const Flags& f, std::ostream& out) : f_(f), out_(out) {
    kv_ = LoadEnvConfig();
    if (!f.config_path.empty()) kv_.Merge(KeyValues::Load(f.config_path));
    if (f.speed) kv_.Set("speed", *f.speed);
    if (f.seed) kv_.Set("seed", std::to_string(*f.seed));
    if (f.depth) kv_.Set("depth", std::to_string(*f.depth));
    if (f.unfold_budget) kv_.Set("unfold_budget", std::to_string(*f.unfold_budget));
    if (f.samples) kv_.Set("samples", std::to_string(*f.samples));
    for (const auto& a : f.assignments) kv_.SetAssignment(a);
    cfg_ = CliConfig::FromKeyValues(kv_);
    if (f.json) cfg_.json = true;
    ctx_.speed = SpeedConfig::Make(cfg_.speed);
    ctx_.unfold_budget = cfg_.unfold_budget;
    sem_.speed = ctx_.speed;
    sem_.unfold_budget = cfg_.unfold_budget;
  }

  int Parse() {
    Term p = TermArg(0);
    Classification c = ClassifyNormalForm(p);
    if (cfg_.json) {
      Emit(Json{{"term", Print(p)},
                {"closed", IsClosed(p)},
                {"size", TermSize(p)},
                {"normal_form", ToString(c.cls)}});
    } else {
      out_ << Print(p) << '\n';
    }
    return kExitOk;
  }

  int Rewrite(const std::string& which) {
    Term p = TermArg(0);
    RewriteTrace trace;
    RewriteTrace* tp = f_.trace || cfg_.json ? &trace : nullptr;
    Term r;
    if (which == "normalize") {
      r = normalize(p, cfg_.depth, ctx_, tp);
    } else if (which == "shnf") {
      r = shnf(p, ctx_, tp);
    } else {
      auto [c, t, s, body] = StateArgs(p);
      r = hnf_state(c, t, s, body, ctx_, tp);
    }
    if (cfg_.json) {
      Emit(Json{{"result", Print(r)},
                {"normal_form", ToString(ClassifyNormalForm(r).cls)},
                {"steps", trace.steps.size()}});
    } else {
      out_ << Print(r) << '\n';
    }
    if (f_.trace) out_ << TraceToJsonLines(trace);
    return kExitOk;
  }

  int Step() {
    Term p = TermArg(0);
    TransitionSet steps = step_set(p, At(), Sigma(), sem_);
    for (const auto& tr : steps) {
      std::string next = tr.next ? Print(*tr.next) : "";
      if (cfg_.json) {
        Emit(Json{{"label", Print(tr.label)},
                  {"next", tr.next ? Json(next) : Json(nullptr)}});
      } else {
        out_ << Print(tr.label) << " -> " << (tr.next ? next : "(terminated)")
             << '\n';
      }
    }
    if (!cfg_.json && steps.empty()) out_ << "no transitions\n";
    return kExitOk;
  }

  int Idle() {
    Term p = TermArg(0);
    IdleSet idle = idle_set(p, At(), Sigma(), sem_);
    if (cfg_.json) {
      Emit(Json{{"idle", idle.str()}, {"empty", idle.empty()}});
    } else {
      out_ << idle.str() << '\n';
    }
    return kExitOk;
  }

  int Run() {
    Term p = TermArg(0);
    RunPolicy policy;
    policy.kind = f_.random ? RunPolicy::Kind::kRandom
                            : RunPolicy::Kind::kExhaustive;
    policy.depth = cfg_.depth;
    policy.seed = cfg_.seed;
    policy.max_traces = f_.max_traces;
    auto traces = run(p, At(), Sigma(), policy, sem_);
    for (std::size_t i = 0; i < traces.size(); ++i) {
      if (cfg_.json) {
        std::istringstream lines(TraceToJsonLines(traces[i]));
        std::string line;
        while (std::getline(lines, line)) {
          Json j = Json::parse(line);
          Json tagged{{"trace", i}};
          for (auto& [k, v] : j.items()) tagged[k] = v;
          Emit(tagged);
        }
      } else {
        out_ << "trace " << i << ':';
        for (const auto& s : traces[i].steps) {
          out_ << ' ' << (s.action ? Print(*s.action) : s.kind);
        }
        if (traces[i].truncated) out_ << " ...";
        out_ << '\n';
      }
    }
    return kExitOk;
  }

  int Linearize() {
    Term p = TermArg(0);
    auto [c, t, s, body] = StateArgs(p);
    LinearSpec e = linearize(c, t, s, body, cfg_.depth, ctx_);
    if (cfg_.json) {
      Json trunc = Json::array();
      for (const auto& x : e.truncated) trunc.push_back(x);
      Emit(Json{{"spec", e.str()},
                {"equations", e.equations.size()},
                {"truncated", trunc}});
    } else {
      out_ << e.str() << '\n';
    }
    return kExitOk;
  }

  int Bisim() {
    Term p = TermArg(0);
    Term q = TermArg(1);
    BisimVerdict v;
    if (f_.method == "linear") {
      auto [c1, t1, s1, b1] = StateArgs(p);
      auto [c2, t2, s2, b2] = StateArgs(q);
      v = bisim_linear(linearize(c1, t1, s1, b1, cfg_.depth, ctx_),
                       linearize(c2, t2, s2, b2, cfg_.depth, ctx_));
    } else {
      std::vector<Instant> instants;
      if (at_given_) {
        instants.emplace_back(At(), Sigma());
      } else {
        instants = relevant_instants(p, q);
      }
      v = bisim_definitional(p, q, instants, cfg_.depth, sem_);
    }
    if (cfg_.json) {
      const char* kind = v.kind == BisimVerdict::Kind::kBisimilar ? "bisimilar"
                         : v.kind == BisimVerdict::Kind::kDistinguished
                             ? "distinguished"
                             : "inconclusive";
      Emit(Json{{"verdict", kind},
                {"up_to_depth", v.up_to_depth},
                {"witness", v.witness},
                {"reason", v.reason}});
    } else {
      out_ << v.str() << '\n';
    }
    return v.bisimilar() ? kExitOk : kExitNegative;
  }

  int MeadowSelftest() {
    auto reports = MeadowSelfTest(static_cast<std::size_t>(cfg_.samples),
                                  cfg_.seed);
    bool all = true;
    for (const auto& r : reports) {
      all = all && r.failed == 0;
      if (cfg_.json) {
        Emit(Json{{"law", r.name},
                  {"equation", r.equation},
                  {"checked", r.checked},
                  {"failed", r.failed},
                  {"counterexample", r.counterexample}});
      } else {
        out_ << (r.failed == 0 ? "PASS " : "FAIL ") << r.name << "  "
             << r.equation << "  (" << r.checked << " instances)";
        if (r.failed) out_ << "  e.g. " << r.counterexample;
        out_ << '\n';
      }
    }
    return all ? kExitOk : kExitNegative;
  }

  int AxiomCheck() {
    if (f_.list) {
      for (const auto& a : axiom_list()) {
        if (cfg_.json) {
          Emit(Json{{"id", a.id},
                    {"group", a.group},
                    {"equation", a.equation},
                    {"derived", a.derived}});
        } else {
          out_ << a.id << "  [" << a.group << "]  " << a.equation << '\n';
        }
      }
      return kExitOk;
    }
    if (!f_.apply.empty()) {
      if (!IsAxiomId(f_.apply)) throw InvalidArgument("unknown axiom " + f_.apply);
      Term p = TermArg(0);
      RewriteStep step;
      auto r = apply_axiom(f_.apply, p, ctx_, &step);
      if (!r) {
        if (cfg_.json) {
          Emit(Json{{"applied", false}});
        } else {
          out_ << "no redex of " << f_.apply << '\n';
        }
        return kExitNegative;
      }
      if (cfg_.json) {
        Emit(Json{{"applied", true}, {"result", Print(*r)}});
      } else {
        out_ << Print(*r) << '\n';
      }
      if (f_.trace) out_ << TraceToJsonLines(RewriteTrace{{step}});
      return kExitOk;
    }
    SoundnessOptions opts;
    opts.instances = static_cast<int>(f_.instances);
    opts.seed = cfg_.seed;
    opts.only = f_.only;
    auto rows = CheckAxiomSoundness(opts);
    int bad = 0;
    for (const auto& r : rows) {
      if (r.discrepancies) ++bad;
      if (cfg_.json) {
        Emit(Json{{"axiom", r.id},
                  {"group", r.group},
                  {"derived", r.derived},
                  {"instances", r.instances},
                  {"discrepancies", r.discrepancies},
                  {"counterexample", r.counterexample}});
      } else {
        out_ << (r.discrepancies ? "FAIL " : "ok   ") << r.id << "  "
             << r.instances << " instances, " << r.discrepancies
             << " discrepancies";
        if (!r.counterexample.empty()) out_ << "  e.g. " << r.counterexample;
        out_ << '\n';
      }
    }
    return bad == 0 ? kExitOk : kExitNegative;
  }

  int Par() {
    ParSetup s = ParSetupFromKeyValues(kv_);
    const std::string& act = f_.par_action;
    if (act == "condition") {
      Scalar cycle = cycle_time(s.params);
      bool ok = cycle_condition(s.params);
      if (cfg_.json) {
        Emit(Json{{"timeout", s.params.timeout.str()},
                  {"cycle", cycle.str()},
                  {"holds", ok}});
      } else {
        out_ << "timeout " << s.params.timeout.str() << (ok ? " > " : " <= ")
             << "cycle " << cycle.str() << (ok ? ": holds" : ": fails") << '\n';
      }
      return ok ? kExitOk : kExitNegative;
    }
    if (act == "build") {
      out_ << Print(build_par(s.params)) << '\n';
      return kExitOk;
    }
    if (act == "run") {
      out_ << TraceToJsonLines(run_par(s.params, s.inputs, cfg_.seed));
      return kExitOk;
    }
    if (act == "anomaly") {
      AnomalyResult a = find_priority_anomaly(s.params, s.inputs, !f_.no_maxprog);
      if (cfg_.json) {
        Emit(Json{{"found", a.found},
                  {"skipped", a.skipped},
                  {"taken", a.taken},
                  {"states", a.states},
                  {"exhausted", a.exhausted}});
      } else if (a.found) {
        out_ << "reception " << a.skipped << " passed over by " << a.taken << '\n';
      } else {
        out_ << "no anomaly in " << a.states << " states"
             << (a.exhausted ? "" : " (state limit reached)") << '\n';
      }
      if (a.found && f_.trace) out_ << TraceToJsonLines(a.trace);
      return a.found ? kExitOk : kExitNegative;
    }
    DeliveryResult r = check_delivery(s.params, s.inputs);
    if (cfg_.json) {
      Emit(Json{{"verdict", ToString(r.verdict)},
                {"reason", r.reason},
                {"states", r.states},
                {"maximal", r.maximal_states},
                {"truncated", r.truncated_states},
                {"receptions_timed_exactly", r.receptions_timed_exactly},
                {"retransmission_after_k_error",
                 r.retransmission_after_k_error.has_value()}});
    } else {
      out_ << ToString(r.verdict) << ": " << r.states << " states, "
           << r.maximal_states << " maximal, " << r.truncated_states
           << " at the depth bound";
      if (!r.reason.empty()) out_ << "; " << r.reason;
      out_ << '\n';
    }
    if (r.verdict == DeliveryResult::Verdict::kViolation || f_.trace) {
      out_ << TraceToJsonLines(r.trace);
    }
    return r.ok() ? kExitOk : kExitNegative;
  }

  void set_at_given(bool b) { at_given_ = b; }

 private:
  struct StateParams {
    ChannelSet c;
    Scalar t;
    CommState sigma;
    Term body;
  };

  Term TermArg(std::size_t i) const {
    if (i >= f_.terms.size()) {
      throw InvalidArgument("missing term argument " + std::to_string(i + 1));
    }
    return ParseTerm(f_.terms[i]);
  }
  Scalar At() const { return Scalar::Parse(f_.at); }
  CommState Sigma() const { return ParseSigma(f_.sigma); }

  // Explicit --channels wins; otherwise the term must be a state operator.
  StateParams StateArgs(const Term& p) const {
    if (!f_.channels.empty()) {
      return {ParseChannels(f_.channels), At(), Sigma(), p};
    }
    if (!p.is(TermKind::kStateOp)) {
      throw InvalidArgument(
          "expected a state-operator term or --channels with --at/--sigma");
    }
    return {p.channels(), p.state_time(), p.sigma(), p.lhs()};
  }

  void Emit(const Json& j) { out_ << j.dump() << '\n'; }

  const Flags& f_;
  std::ostream& out_;
  KeyValues kv_;
  CliConfig cfg_;
  AxiomContext ctx_;
  SemanticsOptions sem_;
  bool at_given_ = false;
};

}  // namespace

int Dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  Flags f;
  CLI::App app{"Space-time process algebra workbench", "stpa"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", f.json, "JSON-lines output");
  app.add_flag("--trace", f.trace, "also print derivation or run traces");
  app.add_option("--config", f.config_path, "key = value configuration file");
  app.add_option("--speed", f.speed, "transmission speed v");
  app.add_option("--seed", f.seed, "random seed");
  app.add_option("--depth", f.depth, "depth bound");
  app.add_option("--unfold-budget", f.unfold_budget, "recursion unfolding budget");
  app.add_option("--samples", f.samples, "samples per property");
  app.add_option("--set", f.assignments, "override a configuration key (key=value)");

  auto ambient = [&](CLI::App* sub) {
    sub->add_option("--at", f.at, "ambient time");
    sub->add_option("--sigma", f.sigma, "communication state");
  };
  auto terms = [&](CLI::App* sub, int n) {
    sub->add_option("terms", f.terms, "process terms")->required()->expected(n);
  };

  std::string chosen;
  auto sub = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->callback([&chosen, name] { chosen = name; });
    return s;
  };

  terms(sub("parse", "parse and print a term"), 1);
  terms(sub("normalize", "normalize a term with the axioms"), 1);
  terms(sub("shnf", "semi-head normal form"), 1);
  CLI::App* hnf = sub("hnf", "head normal form under a state operator");
  ambient(hnf);
  hnf->add_option("--channels", f.channels, "channel set, e.g. c1,c2");
  terms(hnf, 1);
  CLI::App* step = sub("step", "transitions at an ambient instant");
  ambient(step);
  terms(step, 1);
  CLI::App* idle = sub("idle", "idle set at an ambient instant");
  ambient(idle);
  terms(idle, 1);
  CLI::App* runc = sub("run", "maximal transition sequences");
  ambient(runc);
  runc->add_flag("--random", f.random, "follow one random branch");
  runc->add_option("--max-traces", f.max_traces, "limit on listed traces");
  terms(runc, 1);
  CLI::App* lin = sub("linearize", "linear recursive specification");
  ambient(lin);
  lin->add_option("--channels", f.channels, "channel set, e.g. c1,c2");
  terms(lin, 1);
  CLI::App* bis = sub("bisim", "bisimilarity of two terms");
  ambient(bis);
  bis->add_option("--channels", f.channels, "channel set for --method linear");
  bis->add_option("--method", f.method, "game or linear")
      ->check(CLI::IsMember({"game", "linear"}));
  terms(bis, 2);
  sub("meadow-selftest", "check the signed meadow laws on random rationals");
  CLI::App* ax = sub("axiom-check", "axiom soundness against the semantics");
  ax->add_option("--instances", f.instances, "random instances per schema");
  ax->add_option("--only", f.only, "restrict to these schema ids");
  ax->add_flag("--list", f.list, "list the schemas");
  ax->add_option("--apply", f.apply, "apply one schema to a term");
  ax->add_option("terms", f.terms, "term for --apply");
  CLI::App* par = sub("par", "the PAR protocol case study");
  par->add_option("action", f.par_action, "run, check, condition, anomaly or build")
      ->required()
      ->check(CLI::IsMember({"run", "check", "condition", "anomaly", "build"}));
  par->add_flag("--no-maxprog", f.no_maxprog, "anomaly search without priority");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Command cmd(f, out);
    bool at_given = false;
    for (CLI::App* s : {hnf, step, idle, runc, lin, bis}) {
      if (s->count("--at") > 0 || s->count("--sigma") > 0) at_given = true;
    }
    cmd.set_at_given(at_given);
    static const std::map<std::string, std::function<int(Command&)>> table = {
        {"parse", [](Command& c) { return c.Parse(); }},
        {"normalize", [](Command& c) { return c.Rewrite("normalize"); }},
        {"shnf", [](Command& c) { return c.Rewrite("shnf"); }},
        {"hnf", [](Command& c) { return c.Rewrite("hnf"); }},
        {"step", [](Command& c) { return c.Step(); }},
        {"idle", [](Command& c) { return c.Idle(); }},
        {"run", [](Command& c) { return c.Run(); }},
        {"linearize", [](Command& c) { return c.Linearize(); }},
        {"bisim", [](Command& c) { return c.Bisim(); }},
        {"meadow-selftest", [](Command& c) { return c.MeadowSelftest(); }},
        {"axiom-check", [](Command& c) { return c.AxiomCheck(); }},
        {"par", [](Command& c) { return c.Par(); }},
    };
    return table.at(chosen)(cmd);
  } catch (const NotRepresentable& e) {
    err << "not representable: " << e.what() << '\n';
    return kExitNotRepresentable;
  } catch (const SyntaxError& e) {
    err << "syntax error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kExitNegative;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitNegative;
  }
}

}  // namespace stpa
