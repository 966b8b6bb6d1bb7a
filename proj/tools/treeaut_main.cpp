#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "treeaut/elements.hpp"
#include "treeaut/engine.hpp"
#include "treeaut/exprlang.hpp"
#include "treeaut/relations.hpp"

namespace {

using nlohmann::ordered_json;
using namespace treeaut;

constexpr int exit_pass = 0;
constexpr int exit_fail = 1;
constexpr int exit_unknown = 2;
constexpr int exit_usage = 64;
constexpr int exit_eval_error = 65;
constexpr int exit_internal = 70;

struct Session {
  int n = 0;
  int depth = 8;
  std::size_t budget = 10000;
  std::uint64_t seed = 0;
  std::string format = "text";
  bool depth_given = false;
  bool budget_given = false;

  bool json() const { return format == "json"; }
};

void emit(const ordered_json& doc) { std::cout << doc.dump(2) << "\n"; }

std::string join_ints(const std::vector<int>& values) {
  std::ostringstream out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out << ',';
    out << values[i];
  }
  return out.str();
}

int run_eval(Engine& engine, const Session& s, const std::string& text, bool names) {
  TreeAut value = evaluate_text(engine, s.n, text);
  std::string portrait = engine.portrait(value, s.depth, names);
  if (s.json()) {
    emit({{"command", "eval"},
          {"n", s.n},
          {"depth", s.depth},
          {"names", names},
          {"portrait", portrait}});
  } else {
    std::cout << portrait << "\n";
  }
  return exit_pass;
}

int run_apply(Engine& engine, const Session& s, const std::string& text,
              const std::string& vertex_text) {
  std::vector<int> vertex = parse_vertex(vertex_text, s.n);
  TreeAut value = evaluate_text(engine, s.n, text);
  std::vector<int> image = engine.apply_vertex(value, vertex);
  std::string image_text = vertex_to_string(image, s.n);
  if (s.json()) {
    emit({{"command", "apply"},
          {"n", s.n},
          {"vertex", vertex_to_string(vertex, s.n)},
          {"image", image_text}});
  } else {
    std::cout << image_text << "\n";
  }
  return exit_pass;
}

int run_equal(Engine& engine, const Session& s, const std::string& left_text,
              const std::string& right_text, bool bisim) {
  TreeAut left = evaluate_text(engine, s.n, left_text);
  TreeAut right = evaluate_text(engine, s.n, right_text);
  if (bisim) {
    BisimResult result = engine.equal_bisim(left, right, s.budget);
    std::string verdict;
    int code = exit_pass;
    switch (result.kind) {
      case BisimResult::Kind::Equal:
        verdict = "equal";
        code = exit_pass;
        break;
      case BisimResult::Kind::NotEqual:
        verdict = "not-equal";
        code = exit_fail;
        break;
      case BisimResult::Kind::Unknown:
        verdict = "unknown";
        code = exit_unknown;
        break;
    }
    if (s.json()) {
      ordered_json doc{{"command", "equal"}, {"n", s.n},
                       {"mode", "bisim"},    {"budget", s.budget},
                       {"verdict", verdict}, {"pairs_explored", result.pairs_explored}};
      if (result.kind == BisimResult::Kind::NotEqual) {
        doc["witness"] = vertex_to_string(result.witness, s.n);
      }
      emit(doc);
    } else if (result.kind == BisimResult::Kind::Equal) {
      std::cout << "EQUAL pairs=" << result.pairs_explored << "\n";
    } else if (result.kind == BisimResult::Kind::NotEqual) {
      std::cout << "NOT-EQUAL witness=" << vertex_to_string(result.witness, s.n) << "\n";
    } else {
      std::cout << "UNKNOWN budget=" << s.budget << "\n";
    }
    return code;
  }
  bool equal = engine.equal_to_depth(left, right, s.depth);
  if (s.json()) {
    emit({{"command", "equal"},
          {"n", s.n},
          {"mode", "depth"},
          {"depth", s.depth},
          {"verdict", equal ? "equal" : "not-equal"}});
  } else {
    std::cout << (equal ? "EQUAL" : "NOT-EQUAL") << " depth=" << s.depth << "\n";
  }
  return equal ? exit_pass : exit_fail;
}

int run_commutes(Engine& engine, const Session& s, const std::string& left_text,
                 const std::string& right_text) {
  TreeAut left = evaluate_text(engine, s.n, left_text);
  TreeAut right = evaluate_text(engine, s.n, right_text);
  bool commute = engine.commutes_to_depth(left, right, s.depth);
  if (s.json()) {
    emit({{"command", "commutes"}, {"n", s.n}, {"depth", s.depth}, {"commutes", commute}});
  } else {
    std::cout << (commute ? "COMMUTES" : "DOES-NOT-COMMUTE") << " depth=" << s.depth << "\n";
  }
  return commute ? exit_pass : exit_fail;
}

int run_conjugate(Engine& engine, const Session& s, const std::string& text, int levels) {
  TreeAut beta = evaluate_text(engine, s.n, text);
  ConjugationResult result;
  try {
    result = conjugate_to_tau(engine, beta, levels);
  } catch (const std::domain_error& ex) {
    if (s.json()) {
      emit({{"command", "conjugate-to-tau"},
            {"n", s.n},
            {"levels", levels},
            {"certified", false},
            {"reason", ex.what()}});
    } else {
      std::cout << "NOT-CONJUGATE " << ex.what() << "\n";
    }
    return exit_fail;
  }
  const ConjugationReport& report = result.report;
  // A full-depth portrait of a mostly trivial conjugator is unreadably large,
  // so render shallow unless the user asked for a specific depth.
  int portrait_depth = s.depth_given ? s.depth : 2;
  std::string portrait = engine.portrait(result.conjugator, portrait_depth);
  if (s.json()) {
    emit({{"command", "conjugate-to-tau"},
          {"n", s.n},
          {"levels", levels},
          {"certified", report.certified},
          {"certified_depth", report.certified_depth},
          {"stages", report.stages},
          {"power_reduction", report.power_reduction},
          {"exponent_adjustment", report.exponent_adjustment},
          {"screening_exponents", report.screening_exponents},
          {"screening_passed", report.screening_passed},
          {"notes", report.notes},
          {"conjugator_portrait", portrait}});
  } else {
    std::cout << "CONJUGATOR " << portrait << "\n";
    std::cout << "SCREENING exponents=" << join_ints(report.screening_exponents)
              << " passed=" << (report.screening_passed ? "yes" : "no") << "\n";
    std::cout << "POWER-REDUCTION " << report.power_reduction << "\n";
    std::cout << "STAGES " << report.stages << "\n";
    std::cout << "ADJUSTMENT "
              << (report.exponent_adjustment.empty() ? "none" : report.exponent_adjustment)
              << "\n";
    for (const std::string& note : report.notes) std::cout << "NOTE " << note << "\n";
    std::cout << (report.certified ? "CERTIFIED" : "NOT-CERTIFIED")
              << " depth=" << report.certified_depth << "\n";
  }
  return report.certified ? exit_pass : exit_fail;
}

int run_verify(Engine& engine, const Session& s, const std::string& suite,
               const std::vector<std::string>& raw_params) {
  std::map<std::string, std::string> params;
  params["n"] = std::to_string(s.n);
  params["seed"] = std::to_string(s.seed);
  if (s.depth_given) params["depth"] = std::to_string(s.depth);
  if (s.budget_given) params["budget"] = std::to_string(s.budget);
  for (const std::string& raw : raw_params) {
    std::size_t split = raw.find('=');
    if (split == std::string::npos || split == 0) {
      throw std::invalid_argument("--param expects key=value, got '" + raw + "'");
    }
    params[raw.substr(0, split)] = raw.substr(split + 1);
  }
  SuiteReport report = verify(engine, suite, params);
  if (s.json()) {
    ordered_json param_doc = ordered_json::object();
    for (const auto& [key, value] : report.params) param_doc[key] = value;
    ordered_json relation_doc = ordered_json::array();
    for (const RelationResult& r : report.relations) {
      ordered_json entry{{"id", r.id}, {"passed", r.passed}};
      if (!r.passed && !r.witness.empty()) entry["witness"] = r.witness;
      relation_doc.push_back(entry);
    }
    emit({{"command", "verify"},
          {"suite", report.suite},
          {"params", param_doc},
          {"relations", relation_doc},
          {"seed", report.seed},
          {"duration_ms", report.duration_ms},
          {"passed", report.passed()}});
  } else {
    std::cout << report.to_text();
  }
  return report.passed() ? exit_pass : exit_fail;
}

int run_dot(Engine& engine, const Session& s, const std::string& text) {
  TreeAut value = evaluate_text(engine, s.n, text);
  StateGraph graph = engine.state_graph(value, s.budget);
  if (!graph.complete) {
    if (s.json()) {
      emit({{"command", "dot"},
            {"n", s.n},
            {"budget", s.budget},
            {"complete", false},
            {"states_explored", graph.states_explored}});
    } else {
      std::cout << "UNKNOWN budget=" << s.budget << "\n";
    }
    return exit_unknown;
  }
  std::string dot = to_dot(engine, graph);
  if (s.json()) {
    emit({{"command", "dot"},
          {"n", s.n},
          {"budget", s.budget},
          {"complete", true},
          {"states", graph.states.size()},
          {"dot", dot}});
  } else {
    std::cout << dot;
  }
  return exit_pass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computation with automorphisms of the regular n-ary rooted tree",
               "treeaut"};
  app.fallthrough();
  app.require_subcommand(1);

  Session session;
  app.add_option("--n", session.n, "tree degree (alphabet size)")
      ->required()
      ->check(CLI::Range(2, 64));
  CLI::Option* depth_opt = app.add_option("--depth", session.depth, "comparison depth")
                               ->check(CLI::Range(0, 32))
                               ->capture_default_str();
  CLI::Option* budget_opt =
      app.add_option("--budget", session.budget, "bisimulation / state budget")
          ->check(CLI::Range(std::size_t{1}, std::size_t{100000000}))
          ->capture_default_str();
  app.add_option("--seed", session.seed, "seed for sampled checks")->capture_default_str();
  app.add_option("--format", session.format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  CLI::App* eval_cmd = app.add_subcommand("eval", "print the portrait of an expression");
  std::string eval_expr;
  bool eval_names = false;
  eval_cmd->add_option("expr", eval_expr, "expression to evaluate")->required();
  eval_cmd->add_flag("--names", eval_names, "render registered element names");

  CLI::App* apply_cmd = app.add_subcommand("apply", "image of a vertex under an expression");
  std::string apply_expr;
  std::string apply_vertex;
  apply_cmd->add_option("expr", apply_expr, "expression to evaluate")->required();
  apply_cmd->add_option("vertex", apply_vertex, "vertex word (digits, or comma-separated)")
      ->required();

  CLI::App* equal_cmd = app.add_subcommand("equal", "compare two expressions");
  std::string equal_left;
  std::string equal_right;
  bool equal_bisim = false;
  equal_cmd->add_option("left", equal_left, "first expression")->required();
  equal_cmd->add_option("right", equal_right, "second expression")->required();
  equal_cmd->add_flag("--bisim", equal_bisim, "exact comparison by bisimulation closure");

  CLI::App* commutes_cmd = app.add_subcommand("commutes", "check commutation to a depth");
  std::string commutes_left;
  std::string commutes_right;
  commutes_cmd->add_option("left", commutes_left, "first expression")->required();
  commutes_cmd->add_option("right", commutes_right, "second expression")->required();

  CLI::App* conj_cmd =
      app.add_subcommand("conjugate-to-tau", "search for a conjugator onto the adding machine");
  std::string conj_expr;
  int conj_levels = 6;
  conj_cmd->add_option("expr", conj_expr, "expression to conjugate")->required();
  conj_cmd->add_option("--levels", conj_levels, "certification depth")
      ->check(CLI::Range(1, 32))
      ->capture_default_str();

  CLI::App* verify_cmd = app.add_subcommand("verify", "run a relation verification suite");
  std::string verify_suite;
  std::vector<std::string> verify_params;
  std::string suite_help;
  for (const std::string& name : suite_names()) {
    if (!suite_help.empty()) suite_help += ", ";
    suite_help += name;
  }
  verify_cmd->add_option("suite", verify_suite, "one of: " + suite_help)->required();
  verify_cmd->add_option("--param", verify_params, "suite parameter key=value (repeatable)");

  CLI::App* dot_cmd = app.add_subcommand("dot", "DOT state graph of an expression");
  std::string dot_expr;
  dot_cmd->add_option("expr", dot_expr, "expression to evaluate")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : exit_usage;
  }
  session.depth_given = depth_opt->count() > 0;
  session.budget_given = budget_opt->count() > 0;

  Engine engine;
  try {
    if (*eval_cmd) return run_eval(engine, session, eval_expr, eval_names);
    if (*apply_cmd) return run_apply(engine, session, apply_expr, apply_vertex);
    if (*equal_cmd) return run_equal(engine, session, equal_left, equal_right, equal_bisim);
    if (*commutes_cmd) return run_commutes(engine, session, commutes_left, commutes_right);
    if (*conj_cmd) return run_conjugate(engine, session, conj_expr, conj_levels);
    if (*verify_cmd) return run_verify(engine, session, verify_suite, verify_params);
    if (*dot_cmd) return run_dot(engine, session, dot_expr);
  } catch (const ParseError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return exit_eval_error;
  } catch (const EvalError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return exit_eval_error;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return exit_usage;
  } catch (const std::exception& ex) {
    std::cerr << "internal error: " << ex.what() << "\n";
    return exit_internal;
  }
  return exit_usage;
}
