#include "mproj/report.hpp"

#include <array>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "mproj/parser.hpp"

namespace mproj {

using nlohmann::json;

std::string proof_to_text(const ProofTree& proof) {
  std::string out = to_string(proof.verdict) + "\n";
  out += "strategy: " + proof.strategy + "\n";
  out += "dependency pairs: " + std::to_string(proof.pairs_total) + "\n";
  for (std::size_t i = 0; i < proof.steps.size(); ++i) {
    const auto& s = proof.steps[i];
    out += "step " + std::to_string(i + 1) + " (" + to_string(s.mode) + " projection)\n";
    out += "  component:\n";
    for (const auto& r : s.scc) out += "    " + r.to_string() + "\n";
    out += "  projection: " + s.projection.to_string() + "\n";
    out += "  removed:\n";
    for (const auto& r : s.removed) out += "    " + r.to_string() + "\n";
  }
  for (const auto& c : proof.open) {
    out += "unsolved component:\n";
    for (const auto& r : c) out += "  " + r.to_string() + "\n";
  }
  return out;
}

namespace {

json rule_list(const std::vector<Rule>& rules) {
  json a = json::array();
  for (const auto& r : rules) a.push_back(r.to_string());
  return a;
}

Rule parse_rule(const std::string& text, const TRS& trs) {
  const auto arrow = text.find(" -> ");
  if (arrow == std::string::npos) throw std::invalid_argument("rule without arrow: " + text);
  return Rule{parse_term(text.substr(0, arrow), trs.variables), parse_term(text.substr(arrow + 4), trs.variables)};
}

std::vector<Rule> parse_rules(const json& a, const TRS& trs) {
  if (!a.is_array()) throw std::invalid_argument("expected an array of rules");
  std::vector<Rule> out;
  for (const auto& r : a) out.push_back(parse_rule(r.get<std::string>(), trs));
  return out;
}

Verdict parse_verdict(const std::string& s) {
  if (s == "YES") return Verdict::Yes;
  if (s == "MAYBE") return Verdict::Maybe;
  if (s == "TIMEOUT") return Verdict::Timeout;
  throw std::invalid_argument("unknown verdict '" + s + "'");
}

}  // namespace

json proof_to_json(const ProofTree& proof) {
  json steps = json::array();
  for (const auto& s : proof.steps) {
    json pi = json::object();
    for (const auto& [f, m] : s.projection.entries()) {
      json idx = json::array();
      for (const auto& [i, c] : m.counts())
        for (std::size_t k = 0; k < c; ++k) idx.push_back(i);
      pi[f.to_string()] = idx;
    }
    steps.push_back({{"scc", rule_list(s.scc)},
                     {"mode", to_string(s.mode)},
                     {"projection", pi},
                     {"removed", rule_list(s.removed)}});
  }
  json open = json::array();
  for (const auto& c : proof.open) open.push_back(rule_list(c));
  return {{"verdict", to_string(proof.verdict)},
          {"strategy", proof.strategy},
          {"pairs_total", proof.pairs_total},
          {"steps", steps},
          {"open", open}};
}

ProofTree proof_from_json(const json& doc, const TRS& trs) {
  try {
    ProofTree proof;
    proof.verdict = parse_verdict(doc.at("verdict").get<std::string>());
    proof.strategy = doc.at("strategy").get<std::string>();
    proof.pairs_total = doc.at("pairs_total").get<std::size_t>();
    for (const auto& s : doc.at("steps")) {
      ProofStep step;
      step.scc = parse_rules(s.at("scc"), trs);
      step.mode = parse_mode(s.at("mode").get<std::string>());
      step.removed = parse_rules(s.at("removed"), trs);
      for (const auto& [name, indices] : s.at("projection").items()) {
        const bool marked = !name.empty() && name.back() == '#';
        const std::string base = marked ? name.substr(0, name.size() - 1) : name;
        const Symbol* found = nullptr;
        for (const auto& f : trs.signature)
          if (f.name == base) found = &f;
        if (!found) throw std::invalid_argument("unknown symbol '" + name + "' in projection");
        Multiset<std::size_t> m;
        for (const auto& i : indices) m.add(i.get<std::size_t>());
        step.projection.set(Symbol{base, found->arity, marked}, std::move(m));
      }
      proof.steps.push_back(std::move(step));
    }
    for (const auto& c : doc.at("open")) proof.open.push_back(parse_rules(c, trs));
    return proof;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed proof document: ") + e.what());
  } catch (const ParseError& e) {
    throw std::invalid_argument(std::string("malformed rule in proof: ") + e.what());
  }
}

std::string replay_proof(const ProofTree& proof, const TRS& trs) {
  for (std::size_t i = 0; i < proof.steps.size(); ++i) {
    const auto& s = proof.steps[i];
    const Verification v = verify_solution(s.projection, s.scc, trs.rules);
    const std::string where = "step " + std::to_string(i + 1) + ": ";
    if (!v.ok) return where + v.failure;
    if (v.strict.empty()) return where + "no strictly decreasing pair";
    if (v.strict != s.removed) return where + "removed pairs differ from the strictly decreasing ones";
  }
  if (proof.verdict == Verdict::Yes && !proof.open.empty()) return "YES proof has unsolved components";
  return {};
}

namespace {

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string pad_left(const std::string& s, std::size_t w) {
  return s.size() >= w ? s : std::string(w - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, std::size_t w) {
  return s.size() >= w ? s : s + std::string(w - s.size(), ' ');
}

}  // namespace

std::string bench_table(const std::vector<BenchRow>& rows, const std::vector<std::string>& modes) {
  struct Tally {
    std::array<std::size_t, 3> count{};
    std::array<double, 3> seconds{};
  };
  std::map<std::string, Tally> by_mode;
  for (const auto& r : rows) {
    auto& t = by_mode[r.mode];
    const auto k = static_cast<std::size_t>(r.verdict);
    ++t.count[k];
    t.seconds[k] += r.seconds;
  }

  const std::vector<std::string> header = {"Projections", "Yes",     "(sec)", "Maybe",
                                           "(sec)",       "Timeout", "(sec)", "Total (sec)"};
  std::vector<std::vector<std::string>> table{header};
  for (const auto& m : modes) {
    const Tally t = by_mode.count(m) ? by_mode.at(m) : Tally{};
    std::vector<std::string> line{m};
    for (std::size_t k = 0; k < 3; ++k) {
      line.push_back(std::to_string(t.count[k]));
      line.push_back(fixed(t.seconds[k]));
    }
    line.push_back(fixed(t.seconds[0] + t.seconds[1] + t.seconds[2]));
    table.push_back(std::move(line));
  }

  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& line : table)
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());

  std::string out;
  for (const auto& line : table) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c) out += "  ";
      out += c == 0 ? pad_right(line[c], width[c]) : pad_left(line[c], width[c]);
    }
    out += "\n";
  }
  return out;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::string out = "file,mode,verdict,seconds,pairs_total,pairs_removed\n";
  for (const auto& r : rows) {
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.3f", r.seconds);
    out += r.file + "," + r.mode + "," + to_string(r.verdict) + "," + secs + "," +
           std::to_string(r.pairs_total) + "," + std::to_string(r.pairs_removed) + "\n";
  }
  return out;
}

}  // namespace mproj
