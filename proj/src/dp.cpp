#include "mproj/dp.hpp"

#include <algorithm>
#include <condition_variable>
#include <deque>
#include <functional>
#include <mutex>
#include <thread>

#include "mproj/encoding.hpp"

namespace mproj {

std::set<Symbol> defined_symbols(const std::vector<Rule>& rules) {
  std::set<Symbol> out;
  for (const auto& r : rules)
    if (!r.lhs.is_var()) out.insert(r.lhs.symbol());
  return out;
}

namespace {

Term mark_root(const Term& t) {
  std::vector<Term> args(t.args().begin(), t.args().end());
  return Term::app(t.symbol().marked_version(), std::move(args));
}

}  // namespace

DPProblem dependency_pairs(const TRS& trs) {
  DPProblem problem;
  problem.rules = trs.rules;
  const auto defined = defined_symbols(trs.rules);
  for (const auto& r : trs.rules) {
    for (const auto& u : subterms(r.rhs)) {
      if (u.is_var() || !defined.contains(u.symbol())) continue;
      Rule pair{mark_root(r.lhs), mark_root(u)};
      if (std::find(problem.pairs.begin(), problem.pairs.end(), pair) == problem.pairs.end())
        problem.pairs.push_back(std::move(pair));
    }
  }
  return problem;
}

namespace {

// Fresh names use '%', which parsed identifiers never contain.
Term cap_ren(const Term& t, const std::set<Symbol>& defined, std::size_t& fresh) {
  if (t.is_var() || defined.contains(t.symbol())) return Term::var("%c" + std::to_string(fresh++));
  std::vector<Term> args;
  for (const auto& a : t.args()) args.push_back(cap_ren(a, defined, fresh));
  return Term::app(t.symbol(), std::move(args));
}

Term rename_apart(const Term& t) {
  if (t.is_var()) return Term::var(t.var_name() + "%r");
  std::vector<Term> args;
  for (const auto& a : t.args()) args.push_back(rename_apart(a));
  return Term::app(t.symbol(), std::move(args));
}

}  // namespace

Graph estimated_dependency_graph(const std::vector<Rule>& pairs, const std::vector<Rule>& rules) {
  const auto defined = defined_symbols(rules);
  std::vector<Term> targets;
  for (const auto& p : pairs) targets.push_back(rename_apart(p.lhs));

  Graph g(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    std::size_t fresh = 0;
    const Term capped = cap_ren(pairs[i].rhs, defined, fresh);
    for (std::size_t j = 0; j < pairs.size(); ++j)
      if (unify(capped, targets[j])) g[i].push_back(j);
  }
  return g;
}

std::vector<std::vector<std::size_t>> sccs(const Graph& graph) {
  const std::size_t n = graph.size();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> out;
  std::size_t counter = 0;

  std::function<void(std::size_t)> connect = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w : graph[v]) {
      if (index[w] == kUnvisited) {
        connect(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] != index[v]) return;
    std::vector<std::size_t> component;
    std::size_t w;
    do {
      w = stack.back();
      stack.pop_back();
      on_stack[w] = false;
      component.push_back(w);
    } while (w != v);
    const bool self_loop =
        std::find(graph[v].begin(), graph[v].end(), v) != graph[v].end();
    if (component.size() > 1 || self_loop) {
      std::sort(component.begin(), component.end());
      out.push_back(std::move(component));
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (index[v] == kUnvisited) connect(v);
  // Tarjan completes components sinks first.
  std::reverse(out.begin(), out.end());
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes:
      return "YES";
    case Verdict::Maybe:
      return "MAYBE";
    case Verdict::Timeout:
      return "TIMEOUT";
  }
  return "MAYBE";
}

std::size_t ProofTree::pairs_removed() const {
  std::size_t n = 0;
  for (const auto& s : steps) n += s.removed.size();
  return n;
}

std::optional<ProofStep> certify_model(const Model& model, const std::vector<Rule>& pairs,
                                       const std::vector<Rule>& rules, ProjectionMode mode,
                                       std::string& why) {
  const auto signature = problem_signature(pairs, rules);
  std::set<Symbol> roots;
  for (const auto& p : pairs)
    for (const Term* side : {&p.lhs, &p.rhs})
      if (!side->is_var()) roots.insert(side->symbol());
  if (!evaluate(mode_constraints(mode, signature, roots), model)) {
    why = "rejected model: violates the " + to_string(mode) + " projection constraints";
    return std::nullopt;
  }
  Multiprojection pi;
  try {
    pi = decode_model(model, signature);
  } catch (const ModelError& e) {
    why = std::string("rejected model: ") + e.what();
    return std::nullopt;
  }
  Verification check = verify_solution(pi, pairs, rules);
  if (!check.ok) {
    why = "rejected projection " + pi.to_string() + ": " + check.failure;
    return std::nullopt;
  }
  if (check.strict.empty()) {
    why = "rejected projection " + pi.to_string() + ": no pair strictly decreasing";
    return std::nullopt;
  }
  return ProofStep{pairs, mode, std::move(pi), std::move(check.strict)};
}

ProcessorOutcome subterm_processor(const std::vector<Rule>& pairs, const std::vector<Rule>& rules,
                                   ProjectionMode mode, const Solver& solver,
                                   const SolveContext& ctx) {
  ProcessorOutcome out;
  const Formula f = encode_problem(pairs, rules, mode);
  SolveResult r = solver.solve(f, ctx);
  switch (r.status) {
    case SolveResult::Status::Sat:
      out.step = certify_model(r.model, pairs, rules, mode, out.diagnostic);
      break;
    case SolveResult::Status::Unsat:
      break;
    case SolveResult::Status::TimedOut:
      out.timed_out = true;
      out.diagnostic = r.diagnostic;
      break;
    case SolveResult::Status::Unknown:
      out.diagnostic = r.diagnostic;
      break;
  }
  return out;
}

namespace {

std::vector<Rule> select(const std::vector<Rule>& pairs, const std::vector<std::size_t>& idx) {
  std::vector<Rule> out;
  for (std::size_t i : idx) out.push_back(pairs[i]);
  return out;
}

std::vector<std::vector<Rule>> components(const std::vector<Rule>& pairs, const std::vector<Rule>& rules) {
  std::vector<std::vector<Rule>> out;
  for (const auto& c : sccs(estimated_dependency_graph(pairs, rules))) out.push_back(select(pairs, c));
  return out;
}

}  // namespace

ProofTree prove_termination(const TRS& trs, ProjectionMode mode, const Solver& solver,
                            const SolveContext& ctx) {
  ProofTree proof;
  proof.strategy = to_string(mode);
  const DPProblem problem = dependency_pairs(trs);
  proof.pairs_total = problem.pairs.size();

  std::deque<std::vector<Rule>> work;
  for (auto& c : components(problem.pairs, problem.rules)) work.push_back(std::move(c));

  bool timed_out = false;
  while (!work.empty()) {
    if (ctx.expired()) {
      timed_out = true;
      break;
    }
    std::vector<Rule> scc = std::move(work.front());
    work.pop_front();

    ProcessorOutcome step = subterm_processor(scc, problem.rules, mode, solver, ctx);
    if (step.timed_out || (!step.step && ctx.expired())) {
      work.push_front(std::move(scc));
      timed_out = true;
      break;
    }
    if (!step.step) {
      proof.open.push_back(std::move(scc));
      continue;
    }
    std::vector<Rule> rest;
    for (const auto& p : scc)
      if (std::find(step.step->removed.begin(), step.step->removed.end(), p) == step.step->removed.end())
        rest.push_back(p);
    proof.steps.push_back(std::move(*step.step));

    auto sub = components(rest, problem.rules);
    for (auto it = sub.rbegin(); it != sub.rend(); ++it) work.push_front(std::move(*it));
  }

  if (timed_out) {
    for (auto& c : work) proof.open.push_back(std::move(c));
    proof.verdict = Verdict::Timeout;
  } else {
    proof.verdict = proof.open.empty() ? Verdict::Yes : Verdict::Maybe;
  }
  return proof;
}

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::Simple:
      return "simple";
    case Strategy::Recursive:
      return "recursive";
    case Strategy::Multi:
      return "multi";
    case Strategy::All:
      return "all";
  }
  return "all";
}

Strategy parse_strategy(std::string_view name) {
  if (name == "all") return Strategy::All;
  switch (parse_mode(name)) {
    case ProjectionMode::Simple:
      return Strategy::Simple;
    case ProjectionMode::Recursive:
      return Strategy::Recursive;
    case ProjectionMode::Multi:
      return Strategy::Multi;
  }
  return Strategy::All;
}

namespace {

constexpr ProjectionMode kModes[] = {ProjectionMode::Simple, ProjectionMode::Recursive,
                                     ProjectionMode::Multi};

ProofTree prove_all(const TRS& trs, const SolverHandle& handle, const SolveContext& outer) {
  constexpr std::size_t n = std::size(kModes);
  std::mutex mu;
  std::condition_variable cv;
  std::optional<ProofTree> results[n];
  std::stop_source cancel[n];
  std::vector<std::jthread> tasks;

  for (std::size_t k = 0; k < n; ++k) {
    tasks.emplace_back([&, k] {
      const auto solver = make_solver(handle);
      std::stop_callback forward(outer.stop, [&] { cancel[k].request_stop(); });
      SolveContext ctx{outer.deadline, cancel[k].get_token()};
      ProofTree proof = prove_termination(trs, kModes[k], *solver, ctx);
      {
        std::lock_guard lock(mu);
        results[k] = std::move(proof);
      }
      cv.notify_all();
    });
  }

  std::optional<std::size_t> winner;
  {
    std::unique_lock lock(mu);
    cv.wait(lock, [&] {
      // Modes after a YES can no longer win.
      for (std::size_t k = 0; k < n; ++k) {
        if (results[k] && results[k]->verdict == Verdict::Yes) {
          for (std::size_t j = k + 1; j < n; ++j) cancel[j].request_stop();
          break;
        }
      }
      // The first YES in preference order wins once all earlier modes finished.
      for (std::size_t k = 0; k < n; ++k) {
        if (!results[k]) return false;
        if (results[k]->verdict == Verdict::Yes) {
          winner = k;
          return true;
        }
      }
      return true;
    });
  }
  for (auto& s : cancel) s.request_stop();
  tasks.clear();

  ProofTree chosen;
  if (winner) {
    chosen = std::move(*results[*winner]);
  } else {
    std::optional<std::size_t> timeout;
    for (std::size_t k = 0; k < n && !timeout; ++k)
      if (results[k]->verdict == Verdict::Timeout) timeout = k;
    chosen = std::move(*results[timeout.value_or(n - 1)]);
  }
  chosen.strategy = "all";
  return chosen;
}

}  // namespace

ProofTree prove_termination(const TRS& trs, Strategy strategy, const SolverHandle& handle,
                            std::chrono::milliseconds budget, std::stop_token stop) {
  SolveContext ctx{std::chrono::steady_clock::now() + budget, std::move(stop)};
  switch (strategy) {
    case Strategy::Simple:
    case Strategy::Recursive:
    case Strategy::Multi: {
      const auto solver = make_solver(handle);
      return prove_termination(trs, kModes[static_cast<int>(strategy)], *solver, ctx);
    }
    case Strategy::All:
      return prove_all(trs, handle, ctx);
  }
  return {};
}

}  // namespace mproj
