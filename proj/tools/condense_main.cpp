#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "condense/domain.hpp"
#include "condense/errors.hpp"
#include "condense/lattice.hpp"
#include "condense/lp.hpp"
#include "condense/quantale.hpp"
#include "condense/report.hpp"
#include "condense/shells.hpp"
#include "condense/subst.hpp"
#include "condense/subst_quantale.hpp"

namespace {

using namespace condense;

constexpr int exit_pass = 0;
constexpr int exit_verdict = 1;
constexpr int exit_usage = 2;

struct global_opts {
  std::uint64_t seed = 0;
  std::size_t max_carrier = 100000;
  std::size_t iteration_cap = 10000;
  std::string format = "human";
};

std::string read_file(const std::string& path, run_report& rep) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot open file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  rep.inputs.emplace_back(path, digest_hex(text));
  return text;
}

void emit(const run_report& rep, const global_opts& g) {
  std::cout << (g.format == "kv" ? render_kv(rep) : render_human(rep));
}

void add_laws_verdict(run_report& rep, const law_report& laws) {
  add_kv(rep, "verdict", laws.empty() ? "pass" : "fail");
  rep.laws.insert(rep.laws.end(), laws.begin(), laws.end());
}

// Inline fixpoint lists arrive without the directive; files carry it.
std::string domain_text(const std::string& inline_spec) {
  return "fixpoints: " + inline_spec + "\n";
}

void add_warnings(run_report& rep, const std::vector<std::string>& warnings) {
  for (std::size_t i = 0; i < warnings.size(); ++i)
    add_kv(rep, "note." + std::to_string(i), warnings[i]);
}

struct verify_opts {
  std::string quantale_path, carrier_path;
};

int cmd_verify(const global_opts& g, const verify_opts& o, run_report& rep) {
  law_report laws;
  if (!o.quantale_path.empty()) {
    explicit_quantale q = parse_quantale(read_file(o.quantale_path, rep));
    add_kv(rep, "mode", "exhaustive");
    add_kv(rep, "carrier", std::to_string(q.size()) + " elements");
    laws = verify_quantale(q);
    law_report lin = verify_linear_laws(q);
    laws.insert(laws.end(), lin.begin(), lin.end());
  } else {
    sub_carrier c(parse_carrier_config(read_file(o.carrier_path, rep)), g.max_carrier);
    sub_quantale q(c);
    add_kv(rep, "mode", "sampled");
    add_kv(rep, "seed", std::to_string(g.seed));
    add_kv(rep, "carrier", std::to_string(c.size()) + " substitutions");
    add_kv(rep, "sample", std::to_string(law_sample(c, g.seed).size()) + " sets");
    laws = verify_quantale(q, g.seed);
    law_report lin = verify_linear_laws(q, g.seed);
    laws.insert(laws.end(), lin.begin(), lin.end());
  }
  add_laws_verdict(rep, laws);
  return laws.empty() ? exit_pass : exit_verdict;
}

struct shell_opts {
  std::string mode;
  std::string quantale_path, carrier_path;
  std::string domain_path, fixpoints;
};

int cmd_shell(const global_opts& g, const shell_opts& o, run_report& rep) {
  add_kv(rep, "mode", o.mode);
  if (!o.carrier_path.empty() && o.mode == "complete") {
    sub_carrier c(parse_carrier_config(read_file(o.carrier_path, rep)), g.max_carrier);
    throw size_limit_error(
        "complete shell over a substitution carrier needs the full powerset ambient (2^" +
        std::to_string(c.size()) + " sets here); the weak mode works on set families directly");
  }
  std::vector<std::string> warnings;
  if (!o.quantale_path.empty()) {
    explicit_quantale q = parse_quantale(read_file(o.quantale_path, rep));
    std::string dtext = o.domain_path.empty() ? domain_text(o.fixpoints)
                                              : read_file(o.domain_path, rep);
    explicit_domain a = parse_domain(q.lattice(), dtext, &warnings);
    add_warnings(rep, warnings);
    explicit_domain shell;
    std::size_t iterations = 0, stabilized = 0;
    if (o.mode == "complete") {
      std::vector<explicit_domain> trace;
      shell = complete_shell(q, a, &trace);
      iterations = trace.size() - 1;
      stabilized = trace.size() - 1;
    } else {
      shell = weak_complete_shell(q, a, g.iteration_cap, &stabilized);
      iterations = stabilized + 1;
    }
    for (std::size_t i = 0; i < shell.fix.size(); ++i)
      add_kv(rep, "fixpoint." + std::to_string(i), q.elem_name(shell.fix[i]));
    add_kv(rep, "fixpoints", std::to_string(shell.fix.size()));
    add_kv(rep, "iterations", std::to_string(iterations));
    add_kv(rep, "stabilized_at", std::to_string(stabilized));
  } else {
    sub_carrier c(parse_carrier_config(read_file(o.carrier_path, rep)), g.max_carrier);
    sub_quantale q(c);
    std::string dtext = o.domain_path.empty() ? domain_text(o.fixpoints)
                                              : read_file(o.domain_path, rep);
    sub_domain a = parse_domain_subst(c, dtext, &warnings);
    add_warnings(rep, warnings);
    std::size_t stabilized = 0;
    sub_domain shell = weak_complete_shell(q, a, g.iteration_cap, &stabilized);
    for (std::size_t i = 0; i < shell.fix.size(); ++i)
      add_kv(rep, "fixpoint." + std::to_string(i), render_set(c, shell.fix[i]));
    add_kv(rep, "fixpoints", std::to_string(shell.fix.size()));
    add_kv(rep, "iterations", std::to_string(stabilized + 1));
    add_kv(rep, "stabilized_at", std::to_string(stabilized));
  }
  return exit_pass;
}

struct condense_opts {
  std::string carrier_path, program_path;
  std::string domain_path, fixpoints;
  std::string goal;
  bool refine = false;
};

int cmd_condense(const global_opts& g, const condense_opts& o, run_report& rep) {
  sub_carrier c(parse_carrier_config(read_file(o.carrier_path, rep)), g.max_carrier);
  sub_quantale q(c);
  program p = parse_program(c, read_file(o.program_path, rep));
  std::vector<std::string> warnings;
  std::string dtext =
      o.domain_path.empty() ? domain_text(o.fixpoints) : read_file(o.domain_path, rep);
  sub_domain rho = parse_domain_subst(c, dtext, &warnings);
  add_warnings(rep, warnings);
  add_kv(rep, "goal", o.goal);
  eval_config cfg{g.iteration_cap};

  condense_report r = check_condensing(c, p, rho, o.goal, cfg);
  add_kv(rep, "verdict", r.ok ? "condensing" : "not condensing");
  if (!r.ok) {
    add_kv(rep, "witness.theta", render_set(c, r.witness->first));
    add_kv(rep, "witness.phi", render_set(c, r.witness->second));
    add_kv(rep, "side.goal_directed", render_set(c, r.sides->first));
    add_kv(rep, "side.goal_independent", render_set(c, r.sides->second));
  }
  if (!o.refine) return r.ok ? exit_pass : exit_verdict;

  std::size_t stabilized = 0;
  sub_domain shell = weak_complete_shell(q, rho, g.iteration_cap, &stabilized);
  for (std::size_t i = 0; i < shell.fix.size(); ++i)
    add_kv(rep, "refined.fixpoint." + std::to_string(i), render_set(c, shell.fix[i]));
  condense_report after = check_condensing(c, p, shell, o.goal, cfg);
  add_kv(rep, "refined.verdict", after.ok ? "condensing" : "not condensing");
  if (!after.ok) {
    add_kv(rep, "refined.witness.theta", render_set(c, after.witness->first));
    add_kv(rep, "refined.witness.phi", render_set(c, after.witness->second));
  }
  if (!r.ok) {
    // The shell refines rho, so the former witness pair stays inside its fixpoints.
    auto [left, right] =
        condensing_sides(c, p, shell, o.goal, r.witness->first, r.witness->second, cfg);
    add_kv(rep, "refined.at_former_witness.goal_directed", render_set(c, left));
    add_kv(rep, "refined.at_former_witness.goal_independent", render_set(c, right));
  }
  return after.ok ? exit_pass : exit_verdict;
}

struct eval_opts {
  std::string carrier_path, program_path;
  std::string domain_path, fixpoints;
  std::string goal;
  std::string phi, theta;
};

int cmd_eval(const global_opts& g, const eval_opts& o, run_report& rep) {
  sub_carrier c(parse_carrier_config(read_file(o.carrier_path, rep)), g.max_carrier);
  program p = parse_program(c, read_file(o.program_path, rep));
  add_kv(rep, "goal", o.goal);
  eval_config cfg{g.iteration_cap};
  const bool abstract_mode = !o.domain_path.empty() || !o.fixpoints.empty();
  if (abstract_mode) {
    if (o.theta.empty())
      throw parse_error("abstract evaluation needs --theta (a set expression)");
    std::vector<std::string> warnings;
    std::string dtext =
        o.domain_path.empty() ? domain_text(o.fixpoints) : read_file(o.domain_path, rep);
    sub_domain rho = parse_domain_subst(c, dtext, &warnings);
    add_warnings(rep, warnings);
    subst_set theta = parse_set_expr(c, o.theta);
    add_kv(rep, "mode", "abstract");
    add_kv(rep, "theta", render_set(c, theta));
    subst_set out = abstract_eval(c, p, rho, o.goal, theta, cfg);
    add_kv(rep, "result", render_set(c, out));
  } else {
    if (o.phi.empty()) throw parse_error("concrete evaluation needs --phi (a set expression)");
    subst_set phi = parse_set_expr(c, o.phi);
    add_kv(rep, "mode", "concrete");
    add_kv(rep, "phi", render_set(c, phi));
    subst_set out = concrete_eval(c, p, o.goal, phi, cfg);
    add_kv(rep, "result", render_set(c, out));
  }
  return exit_pass;
}

struct residual_opts {
  std::string carrier_path, quantale_path;
  std::string a, c;
};

int cmd_residual(const global_opts& g, const residual_opts& o, run_report& rep) {
  if (!o.quantale_path.empty()) {
    explicit_quantale q = parse_quantale(read_file(o.quantale_path, rep));
    const finite_lattice& lat = q.lattice();
    auto find = [&](const std::string& name) -> elem_id {
      for (elem_id e = 0; e < lat.size(); ++e)
        if (lat.name(e) == name) return e;
      throw parse_error("'" + name + "' is not an element of the quantale");
    };
    elem_id a = find(o.a), cc = find(o.c);
    add_kv(rep, "a", lat.name(a));
    add_kv(rep, "c", lat.name(cc));
    add_kv(rep, "residual", lat.name(q.residual(a, cc)));
  } else {
    sub_carrier c(parse_carrier_config(read_file(o.carrier_path, rep)), g.max_carrier);
    subst_set a = parse_set_expr(c, o.a);
    subst_set cc = parse_set_expr(c, o.c);
    add_kv(rep, "a", render_set(c, a));
    add_kv(rep, "c", render_set(c, cc));
    add_kv(rep, "residual", render_set(c, residual_sets(a, cc)));
  }
  return exit_pass;
}

// Built-in scenarios on the default two-variable carrier. Each assertion
// reports pass or an expected-vs-actual mismatch; the exit status is the
// conjunction.
struct example_runner {
  run_report& rep;
  std::size_t idx = 0;
  bool all_ok = true;

  void assert_eq(const std::string& label, const std::string& expected,
                 const std::string& actual) {
    const std::string key = "assert." + std::to_string(idx++);
    if (expected == actual) {
      add_kv(rep, key, "pass: " + label);
    } else {
      all_ok = false;
      add_kv(rep, key, "MISMATCH: " + label);
      add_kv(rep, key + ".expected", expected);
      add_kv(rep, key + ".actual", actual);
    }
  }
};

sub_carrier default_carrier(const global_opts& g) {
  return sub_carrier({{"X", "Y"}, {"Z", "W"}, {"a"}}, g.max_carrier);
}

std::string render_domain(const sub_carrier& c, const sub_domain& d) {
  std::string out;
  for (std::size_t i = 0; i < d.fix.size(); ++i) {
    if (i) out += ", ";
    out += render_set(c, d.fix[i]);
  }
  return out;
}

int cmd_example(const global_opts& g, const std::string& name, run_report& rep) {
  if (name != "4.2" && name != "4.9")
    throw parse_error("unknown example '" + name + "'; known examples: 4.2, 4.9");
  sub_carrier c = default_carrier(g);
  sub_quantale q(c);
  named_set_table ns = named_sets(c);
  program p = parse_program(c, "p(X,Y) <- { X/a ; Y/a }.\n");
  add_kv(rep, "program", "p(X,Y) <- { X/a ; Y/a }.");
  example_runner run{rep};
  eval_config cfg{g.iteration_cap};

  if (name == "4.2") {
    sub_domain rho = make_domain(q, {ns.i_xy});
    run.assert_eq("moore closure of {I(X,Y)}", "TOP, I(X,Y)", render_domain(c, rho));
    run.assert_eq("abstract semantics at TOP", "I(X,Y)",
                  render_set(c, abstract_eval(c, p, rho, "p", ns.top, cfg)));
    run.assert_eq("closure of I(X,Y) (x) TOP", "TOP",
                  render_set(c, apply_closure(q, rho, tensor_sets(ns.i_xy, ns.top))));
    run.assert_eq("closure of I(X,Y) (x) I(X,Y)", "TOP",
                  render_set(c, apply_closure(q, rho, tensor_sets(ns.i_xy, ns.i_xy))));
    auto [left, right] = condensing_sides(c, p, rho, "p", ns.i_xy, ns.top, cfg);
    run.assert_eq("goal-directed side at (I(X,Y), TOP)", "I(X,Y)", render_set(c, left));
    run.assert_eq("goal-independent side at (I(X,Y), TOP)", "TOP", render_set(c, right));
    condense_report r = check_condensing(c, p, rho, "p", cfg);
    run.assert_eq("condensing verdict", "not condensing",
                  r.ok ? "condensing" : "not condensing");
  } else {
    run.assert_eq("residual(TOP, I(X,Y))", "G(X,Y)",
                  render_set(c, residual_sets(ns.top, ns.i_xy)));
    run.assert_eq("residual(I(X,Y), I(X,Y))", "G(X,Y)+EG",
                  render_set(c, residual_sets(ns.i_xy, ns.i_xy)));
    sub_domain rho = make_domain(q, {ns.i_xy});
    std::size_t stabilized = 0;
    sub_domain shell = weak_complete_shell(q, rho, g.iteration_cap, &stabilized);
    sub_domain rho_prime = make_domain(q, {ns.i_xy, ns.g_xy, ns.g_or_eg});
    run.assert_eq("weak-complete shell of {TOP, I(X,Y)}", render_domain(c, rho_prime),
                  render_domain(c, shell));
    sub_domain arrow = lin_arrow_domain(q, rho_prime, rho_prime);
    sub_domain closed = reduced_product(q, {rho_prime, arrow});
    run.assert_eq("shell closed under its own residuals", render_domain(c, rho_prime),
                  render_domain(c, closed));
    condense_report r = check_condensing(c, p, rho_prime, "p", cfg);
    run.assert_eq("condensing verdict", "condensing",
                  r.ok ? "condensing" : "not condensing");
    auto [left, right] = condensing_sides(c, p, rho_prime, "p", ns.i_xy, ns.top, cfg);
    run.assert_eq("goal-directed side at (I(X,Y), TOP)", "G(X,Y)", render_set(c, left));
    run.assert_eq("goal-independent side at (I(X,Y), TOP)", "G(X,Y)", render_set(c, right));
  }
  add_kv(rep, "verdict", run.all_ok ? "all assertions hold" : "assertion mismatch");
  return run.all_ok ? exit_pass : exit_verdict;
}

std::string join_args(int argc, char** argv) {
  std::string out;
  for (int i = 1; i < argc; ++i) {
    if (i > 1) out += ' ';
    out += argv[i];
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  global_opts g;
  CLI::App app{"finite-model workbench for condensing abstract domains"};
  app.require_subcommand(1);
  app.add_option("--seed", g.seed, "sampler seed");
  app.add_option("--max-carrier", g.max_carrier, "substitution carrier size cap");
  app.add_option("--iteration-cap", g.iteration_cap, "fixpoint iteration cap");
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"human", "kv"}));

  verify_opts vo;
  CLI::App* verify = app.add_subcommand("verify", "check quantale and linear-implication laws");
  CLI::Option* v_q = verify->add_option("--quantale", vo.quantale_path, "quantale file (exhaustive)");
  CLI::Option* v_c = verify->add_option("--carrier", vo.carrier_path, "carrier file (sampled)");
  v_q->excludes(v_c);

  shell_opts so;
  CLI::App* shell = app.add_subcommand("shell", "compute a completeness shell");
  shell->add_option("--mode", so.mode, "complete or weak")
      ->required()
      ->check(CLI::IsMember({"complete", "weak"}));
  CLI::Option* s_q = shell->add_option("--quantale", so.quantale_path, "quantale file");
  CLI::Option* s_c = shell->add_option("--carrier", so.carrier_path, "carrier file");
  s_q->excludes(s_c);
  CLI::Option* s_d = shell->add_option("--domain", so.domain_path, "domain file");
  CLI::Option* s_f = shell->add_option("--fixpoints", so.fixpoints, "inline fixpoint list");
  s_d->excludes(s_f);

  condense_opts co;
  CLI::App* cond = app.add_subcommand("condense", "check the condensing identity");
  cond->add_option("--carrier", co.carrier_path, "carrier file")->required();
  cond->add_option("--program", co.program_path, "program file")->required();
  CLI::Option* c_d = cond->add_option("--domain", co.domain_path, "domain file");
  CLI::Option* c_f = cond->add_option("--fixpoints", co.fixpoints, "inline fixpoint list");
  c_d->excludes(c_f);
  cond->add_option("--goal", co.goal, "goal predicate")->required();
  cond->add_flag("--refine", co.refine, "refine to the weak-complete shell and re-check");

  eval_opts eo;
  CLI::App* eval = app.add_subcommand("eval", "evaluate a goal concretely or abstractly");
  eval->add_option("--carrier", eo.carrier_path, "carrier file")->required();
  eval->add_option("--program", eo.program_path, "program file")->required();
  eval->add_option("--goal", eo.goal, "goal predicate")->required();
  eval->add_option("--phi", eo.phi, "concrete input set expression");
  CLI::Option* e_d = eval->add_option("--domain", eo.domain_path, "domain file (abstract mode)");
  CLI::Option* e_f = eval->add_option("--fixpoints", eo.fixpoints, "inline fixpoints (abstract mode)");
  e_d->excludes(e_f);
  eval->add_option("--theta", eo.theta, "abstract input set expression");

  residual_opts ro;
  CLI::App* resid = app.add_subcommand("residual", "print the linear implication a -o c");
  CLI::Option* r_c = resid->add_option("--carrier", ro.carrier_path, "carrier file");
  CLI::Option* r_q = resid->add_option("--quantale", ro.quantale_path, "quantale file");
  r_q->excludes(r_c);
  resid->add_option("--a", ro.a, "left argument")->required();
  resid->add_option("--c", ro.c, "right argument")->required();

  std::string example_name;
  CLI::App* example = app.add_subcommand("example", "reproduce a built-in worked scenario");
  example->add_option("name", example_name, "scenario name (4.2 or 4.9)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? exit_pass : exit_usage;
  }

  run_report rep;
  rep.command = join_args(argc, argv);
  const auto t0 = std::chrono::steady_clock::now();
  int code = exit_pass;
  try {
    if (verify->parsed()) {
      if (vo.quantale_path.empty() == vo.carrier_path.empty())
        throw parse_error("verify needs exactly one of --quantale or --carrier");
      code = cmd_verify(g, vo, rep);
    } else if (shell->parsed()) {
      if (so.quantale_path.empty() == so.carrier_path.empty())
        throw parse_error("shell needs exactly one of --quantale or --carrier");
      if (!(so.mode == "complete" && !so.carrier_path.empty()) &&
          so.domain_path.empty() && so.fixpoints.empty())
        throw parse_error("shell needs a domain (--domain or --fixpoints)");
      code = cmd_shell(g, so, rep);
    } else if (cond->parsed()) {
      if (co.domain_path.empty() && co.fixpoints.empty())
        throw parse_error("condense needs a domain (--domain or --fixpoints)");
      code = cmd_condense(g, co, rep);
    } else if (eval->parsed()) {
      code = cmd_eval(g, eo, rep);
    } else if (resid->parsed()) {
      if (ro.quantale_path.empty() == ro.carrier_path.empty())
        throw parse_error("residual needs exactly one of --quantale or --carrier");
      code = cmd_residual(g, ro, rep);
    } else if (example->parsed()) {
      code = cmd_example(g, example_name, rep);
    }
  } catch (const condense::error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  }
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  emit(rep, g);
  return code;
}
