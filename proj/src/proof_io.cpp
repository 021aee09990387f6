#include "cutr/proof_io.hpp"

#include <fstream>
#include <regex>
#include <sstream>

#include "cutr/errors.hpp"
#include "cutr/parse.hpp"
#include "json.hpp"

namespace cutr {

using nlohmann::json;

namespace {

struct Line {
  std::size_t depth;
  std::size_t offset;
  Sequent sequent;
  RuleId rule;
  std::optional<std::vector<Occ>> principal;
};

Occ parse_occ(const std::string& s, std::size_t offset) {
  if (s.size() < 2 || (s[0] != 'a' && s[0] != 's')) throw ParseError("bad occurrence '" + s + "'", offset);
  try {
    return Occ{s[0] == 'a' ? Side::Ante : Side::Succ, std::stoul(s.substr(1))};
  } catch (const std::exception&) {
    throw ParseError("bad occurrence '" + s + "'", offset);
  }
}

std::vector<Occ> parse_occs(const std::string& s, std::size_t offset) {
  std::vector<Occ> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_occ(item, offset));
  return out;
}

std::string occs_str(const std::vector<Occ>& os) {
  std::string out;
  for (const Occ& o : os) out += (out.empty() ? "" : ",") + to_string(o);
  return out;
}

/// First principal that makes the instance validate, else a plausible guess.
std::vector<Occ> guess_principal(CalculusId c, RuleInstance inst) {
  std::vector<std::vector<Occ>> candidates;
  const Sequent& q = inst.conclusion;
  if (inst.rule == RuleId::Cut) return {};
  if (inst.rule == RuleId::Init) {
    for (std::size_t i = 0; i < q.ante.size(); ++i)
      for (std::size_t j = 0; j < q.succ.size(); ++j)
        if (q.ante[i] == q.succ[j]) candidates.push_back({{Side::Ante, i}, {Side::Succ, j}});
  } else {
    const Side s = principal_side(inst.rule);
    for (std::size_t i = 0; i < q.side(s).size(); ++i) candidates.push_back({{s, i}});
  }
  for (const auto& cand : candidates) {
    inst.principal = cand;
    if (!infer_flow(c, inst)) return cand;
  }
  return candidates.empty() ? std::vector<Occ>{} : candidates.front();
}

/// Unchecked node: the flow is inferred when possible and left empty otherwise.
NodePtr raw_node(CalculusId c, RuleId r, Sequent concl, std::optional<std::vector<Occ>> principal,
                 std::vector<NodePtr> kids) {
  RuleInstance inst{r, std::move(concl), {}, {}, {}};
  for (const auto& k : kids) inst.premises.push_back(k->sequent());
  inst.principal = principal ? *principal : guess_principal(c, inst);
  RuleInstance probe = inst;
  if (!infer_flow(c, probe)) inst.flow = std::move(probe.flow);
  return std::make_shared<const ProofNode>(ProofNode{std::move(inst), std::move(kids)});
}

NodePtr build(CalculusId c, const std::vector<Line>& lines, std::size_t& i) {
  const Line& me = lines[i++];
  std::vector<NodePtr> kids;
  while (i < lines.size() && lines[i].depth > me.depth) {
    if (lines[i].depth != me.depth + 1) throw ParseError("indentation jumps by more than one level", lines[i].offset);
    kids.push_back(build(c, lines, i));
  }
  return raw_node(c, me.rule, me.sequent, me.principal, std::move(kids));
}

CalculusId parse_calculus(const std::string& name, std::size_t offset) {
  if (auto c = calculus_from_string(name)) return *c;
  throw ParseError("unknown calculus '" + name + "'", offset);
}

}  // namespace

LoadedProof read_proof_text(const std::string& text) {
  static const std::regex node_re(R"(^( *)(.*?)\s+\[([A-Za-z_]+)(?:\s+principal=([as0-9,]*))?\]\s*$)");
  static const std::regex header_re(R"(^\s*calculus:\s*(\S+)\s*$)");
  LoadedProof out;
  bool have_header = false;
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string line;
  std::size_t offset = 0;
  while (std::getline(in, line)) {
    const std::size_t here = offset;
    offset += line.size() + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::smatch m;
    if (!have_header) {
      if (!std::regex_match(line, m, header_re)) throw ParseError("expected 'calculus: <name>' header", here);
      out.calculus = parse_calculus(m[1], here);
      have_header = true;
      continue;
    }
    if (!std::regex_match(line, m, node_re)) throw ParseError("expected '<sequent>  [<rule> ...]'", here);
    if (m[1].length() % 2 != 0) throw ParseError("indentation must be a multiple of two spaces", here);
    const auto rule = rule_from_string(m[3].str());
    if (!rule) throw ParseError("unknown rule '" + m[3].str() + "'", here);
    Line l{static_cast<std::size_t>(m[1].length()) / 2, here, {}, *rule, std::nullopt};
    try {
      l.sequent = parse_sequent(m[2].str());
    } catch (const ParseError& e) {
      throw ParseError(std::string("bad sequent: ") + e.what(), here + static_cast<std::size_t>(m.position(2)) + e.position());
    }
    if (m[4].matched) l.principal = parse_occs(m[4], here);
    lines.push_back(std::move(l));
  }
  if (!have_header) throw ParseError("empty proof file", 0);
  if (lines.empty()) throw ParseError("no proof nodes", offset);
  if (lines[0].depth != 0) throw ParseError("root must not be indented", lines[0].offset);
  std::size_t i = 0;
  out.proof = build(out.calculus, lines, i);
  if (i != lines.size()) throw ParseError("more than one root", lines[i].offset);
  return out;
}

namespace {

void write_walk(const NodePtr& n, std::size_t depth, std::ostringstream& os) {
  os << std::string(2 * depth, ' ') << print_sequent(n->sequent()) << "  [" << to_string(n->rule());
  if (!n->inst.principal.empty()) os << " principal=" << occs_str(n->inst.principal);
  os << "]\n";
  for (const auto& k : n->children) write_walk(k, depth + 1, os);
}

json node_json(const NodePtr& n) {
  json j;
  j["sequent"] = print_sequent(n->sequent());
  j["rule"] = std::string(to_string(n->rule()));
  json pr = json::array();
  for (const Occ& o : n->inst.principal) pr.push_back(to_string(o));
  j["principal"] = pr;
  json flow = json::array();
  for (const auto& f : n->inst.flow) flow.push_back({{"ante", f.ante}, {"succ", f.succ}});
  j["flow"] = flow;
  json kids = json::array();
  for (const auto& k : n->children) kids.push_back(node_json(k));
  j["premises"] = kids;
  return j;
}

NodePtr node_from_json(CalculusId c, const json& j) {
  const auto rule = rule_from_string(j.at("rule").get<std::string>());
  if (!rule) throw ParseError("unknown rule '" + j.at("rule").get<std::string>() + "'", 0);
  Sequent concl = parse_sequent(j.at("sequent").get<std::string>());
  std::vector<NodePtr> kids;
  if (j.contains("premises"))
    for (const auto& k : j.at("premises")) kids.push_back(node_from_json(c, k));
  std::optional<std::vector<Occ>> principal;
  if (j.contains("principal")) {
    principal.emplace();
    for (const auto& o : j.at("principal")) principal->push_back(parse_occ(o.get<std::string>(), 0));
  }
  if (!j.contains("flow")) return raw_node(c, *rule, std::move(concl), principal, std::move(kids));
  RuleInstance inst{*rule, std::move(concl), {}, principal.value_or(std::vector<Occ>{}), {}};
  for (const auto& k : kids) inst.premises.push_back(k->sequent());
  for (const auto& f : j.at("flow"))
    inst.flow.push_back(PremiseFlow{f.at("ante").get<std::vector<std::vector<std::size_t>>>(),
                                    f.at("succ").get<std::vector<std::vector<std::size_t>>>()});
  return std::make_shared<const ProofNode>(ProofNode{std::move(inst), std::move(kids)});
}

}  // namespace

std::string write_proof_text(CalculusId c, const Proof& p) {
  std::ostringstream os;
  os << "calculus: " << to_string(c) << "\n";
  write_walk(p, 0, os);
  return os.str();
}

std::string write_proof_json(CalculusId c, const Proof& p) {
  json j{{"calculus", std::string(to_string(c))}, {"proof", node_json(p)}};
  return j.dump(1) + "\n";
}

LoadedProof read_proof_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("bad JSON: ") + e.what(), e.byte);
  }
  try {
    LoadedProof out;
    out.calculus = parse_calculus(j.at("calculus").get<std::string>(), 0);
    out.proof = node_from_json(out.calculus, j.at("proof"));
    return out;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad proof JSON: ") + e.what(), 0);
  }
}

LoadedProof read_proof(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return read_proof_json(text);
  return read_proof_text(text);
}

LoadedProof read_proof_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return read_proof(ss.str());
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw PreconditionError("cannot write " + path);
  out << content;
}

std::string audit_kv(const AnalyticityAudit& a) {
  std::ostringstream os;
  std::size_t bad = 0;
  for (const auto& cut : a.cuts) bad += cut.analytic ? 0 : 1;
  os << "cuts=" << a.cuts.size() << "\n"
     << "nonanalytic_cuts=" << bad << "\n"
     << "height=" << a.height << "\n";
  for (const auto& cut : a.cuts)
    os << "cut node=" << cut.node << " formula=" << print_formula(cut.formula)
       << " analytic=" << (cut.analytic ? "yes" : "no") << "\n";
  return os.str();
}

std::string audit_json(const AnalyticityAudit& a) {
  json cuts = json::array();
  for (const auto& cut : a.cuts)
    cuts.push_back({{"node", cut.node}, {"formula", print_formula(cut.formula)}, {"analytic", cut.analytic}});
  json bad = json::array();
  for (const auto& f : a.nonanalytic_formulas) bad.push_back(print_formula(f));
  json j{{"valid", true}, {"height", a.height}, {"cuts", cuts}, {"nonanalytic_formulas", bad}};
  return j.dump(1) + "\n";
}

std::string report_json(const RestrictionReport& r) {
  json j{{"cuts_before", r.cuts_before},
         {"cuts_after", r.cuts_after},
         {"max_cut_size_before", r.max_cut_size_before},
         {"max_cut_size_after", r.max_cut_size_after},
         {"recursive_invocations", r.recursive_invocations},
         {"tuples_expanded", r.tuples_expanded},
         {"criticals_delta1", r.criticals_delta1},
         {"criticals_delta2", r.criticals_delta2},
         {"assertions_checked", r.assertions_checked},
         {"max_depth", r.max_depth},
         {"broken_repaired", r.broken_repaired}};
  return j.dump(1) + "\n";
}

}  // namespace cutr
