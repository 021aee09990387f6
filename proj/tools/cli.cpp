#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "cutr/errors.hpp"
#include "cutr/parse.hpp"
#include "cutr/proof_io.hpp"
#include "cutr/restrict.hpp"
#include "cutr/search.hpp"
#include "cutr/trace.hpp"

namespace cutr::cli {

namespace {

/// Unreadable files and malformed arguments; exit 1.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_json_path(const std::string& path) {
  return std::filesystem::path(path).extension() == ".json";
}

struct Options {
  std::string file;
  std::string out;
  std::string calculus;
  std::string cut_policy = "none";
  std::string goal;
  std::string occ;
  std::string premise = "left";
  std::string dir = ".";
  long node = 0;
  std::size_t depth = 6;
  std::size_t count = 10;
  std::uint64_t seed = 0;
  bool json = false;
};

CalculusId calculus_flag(const std::string& s) {
  auto c = calculus_from_string(s);
  if (!c) throw InputError("unknown calculus '" + s + "' (expected biint or s5)");
  return *c;
}

LoadedProof load(const Options& o, std::ostream& err) {
  LoadedProof lp = read_proof(slurp(o.file));
  if (!o.calculus.empty()) {
    const CalculusId c = calculus_flag(o.calculus);
    if (c != lp.calculus)
      err << "warning: --calculus " << to_string(c) << " overrides file header " << to_string(lp.calculus) << "\n";
    lp.calculus = c;
  }
  return lp;
}

std::string render(CalculusId c, const Proof& p, bool json) {
  return json ? write_proof_json(c, p) : write_proof_text(c, p);
}

/// Writes p to path (or out when path is empty). Files are read back and
/// rechecked; a mismatch is an internal error.
void emit_proof(CalculusId c, const Proof& p, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << write_proof_text(c, p);
    return;
  }
  write_file(path, render(c, p, is_json_path(path)));
  const LoadedProof back = read_proof(slurp(path));
  if (back.calculus != c || find_error(c, back.proof) || !same_proof(back.proof, p))
    throw InternalError("round trip failed for " + path);
}

Occ parse_occ(const std::string& s) {
  if (s.size() < 2 || (s[0] != 'a' && s[0] != 's')) throw InputError("bad occurrence '" + s + "'");
  try {
    return {s[0] == 'a' ? Side::Ante : Side::Succ, static_cast<std::size_t>(std::stoul(s.substr(1)))};
  } catch (const std::logic_error&) {
    throw InputError("bad occurrence '" + s + "'");
  }
}

SearchPolicy search_policy(const Options& o) {
  SearchPolicy pol;
  pol.depth_bound = o.depth;
  const std::string& cp = o.cut_policy;
  if (cp.rfind("pool:", 0) == 0) {
    pol.cut = CutPolicy::Pool;
    std::istringstream in(slurp(cp.substr(5)));
    for (std::string line; std::getline(in, line);) {
      const auto k = line.find_first_not_of(" \t");
      if (k == std::string::npos || line[k] == '#') continue;
      pol.pool.push_back(parse_formula(line));
    }
  } else if (auto p = cut_policy_from_string(cp); p && *p != CutPolicy::Pool) {
    pol.cut = *p;
  } else {
    throw InputError("unknown cut policy '" + cp + "' (expected none, analytic or pool:<file>)");
  }
  return pol;
}

int cmd_check(const Options& o, std::ostream& out, std::ostream& err) {
  const LoadedProof lp = load(o, err);
  const AnalyticityAudit a = check_proof(lp.calculus, lp.proof);
  out << (o.json ? audit_json(a) : audit_kv(a));
  return Ok;
}

int cmd_restrict(const Options& o, std::ostream& out, std::ostream& err) {
  const LoadedProof lp = load(o, err);
  check_proof(lp.calculus, lp.proof);
  const auto [res, rep] = restrict_all(lp.calculus, lp.proof);
  emit_proof(lp.calculus, res, o.out, out);
  out << (o.json ? report_json(rep) : rep.to_kv());
  return Ok;
}

int cmd_trace(const Options& o, std::ostream& out, std::ostream& err) {
  const LoadedProof lp = load(o, err);
  check_proof(lp.calculus, lp.proof);
  const auto nodes = preorder(lp.proof);
  if (o.node < 0 || static_cast<std::size_t>(o.node) >= nodes.size())
    throw InputError("no node " + std::to_string(o.node));
  OccRef seed;
  if (!o.occ.empty()) {
    const Occ at = parse_occ(o.occ);
    seed = {o.node, at.side, at.index};
  } else {
    const ProofNode* n = nodes[static_cast<std::size_t>(o.node)];
    if (n->rule() != RuleId::Cut) throw PreconditionError("node " + std::to_string(o.node) + " is not a cut; use --occ");
    const bool left = o.premise == "left";
    if (!left && o.premise != "right") throw InputError("--premise must be left or right");
    const long kid = left ? o.node + 1 : o.node + 1 + static_cast<long>(node_count(n->children[0]));
    const Side side = left ? Side::Succ : Side::Ante;
    seed = {kid, side, find_occ(n->children[left ? 0 : 1]->sequent(), side, cut_formula(n->inst)).index};
  }
  out << dump_trace(compute_trace(lp.proof, seed));
  return Ok;
}

int cmd_search(const Options& o, std::ostream& out, std::ostream&) {
  const CalculusId c = calculus_flag(o.calculus.empty() ? "biint" : o.calculus);
  const Sequent goal = parse_sequent(o.goal);
  const SearchResult r = prove_bounded(c, goal, search_policy(o));
  if (!r.found()) {
    out << "exhausted explored=" << r.explored << " depth=" << o.depth << "\n";
    return Ok;
  }
  emit_proof(c, r.proof, o.out, out);
  out << "found explored=" << r.explored << " height=" << height(r.proof) << " cuts=" << cut_count(r.proof) << "\n";
  return Ok;
}

int cmd_dualize(const Options& o, std::ostream& out, std::ostream& err) {
  const LoadedProof lp = load(o, err);
  if (lp.calculus != CalculusId::BiInt) throw PreconditionError("dualize: duality is defined for biint only");
  check_proof(lp.calculus, lp.proof);
  emit_proof(lp.calculus, dualize_proof(lp.proof), o.out, out);
  return Ok;
}

int cmd_corpus(const Options& o, std::ostream& out, std::ostream&) {
  const CalculusId c = calculus_flag(o.calculus.empty() ? "biint" : o.calculus);
  std::filesystem::create_directories(o.dir);
  const auto items = generate_corpus(c, o.seed, o.count);
  for (const auto& it : items) emit_proof(c, it.proof, (std::filesystem::path(o.dir) / (it.name + ".prf")).string(), out);
  const std::string manifest = corpus_manifest(c, o.seed, items);
  write_file((std::filesystem::path(o.dir) / "MANIFEST").string(), manifest);
  out << manifest;
  return Ok;
}

int cmd_stats(const Options& o, std::ostream& out, std::ostream& err) {
  const LoadedProof lp = load(o, err);
  const AnalyticityAudit a = check_proof(lp.calculus, lp.proof);
  std::size_t bad = 0;
  for (const auto& cut : a.cuts) bad += cut.analytic ? 0 : 1;
  if (o.json) {
    const nlohmann::json j{{"calculus", to_string(lp.calculus)}, {"nodes", node_count(lp.proof)},
                           {"height", a.height},  {"cuts", a.cuts.size()},
                           {"nonanalytic_cuts", bad}, {"max_cut_size", max_cut_size(lp.proof)}};
    out << j.dump(1) << "\n";
  } else {
    out << "calculus=" << to_string(lp.calculus) << "\nnodes=" << node_count(lp.proof) << "\nheight=" << a.height
        << "\ncuts=" << a.cuts.size() << "\nnonanalytic_cuts=" << bad << "\nmax_cut_size=" << max_cut_size(lp.proof)
        << "\n";
  }
  return Ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"cutr: cut restriction for biint and s5 sequent proofs"};
  app.require_subcommand(1);
  Options o;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--calculus", o.calculus, "biint or s5 (overrides the file header)");
    sub->add_flag("--json", o.json, "structured output");
  };

  auto* check = app.add_subcommand("check", "validate a proof and print its cut audit");
  check->add_option("file", o.file)->required();
  common(check);

  auto* restrict = app.add_subcommand("restrict", "make every cut analytic");
  restrict->add_option("file", o.file)->required();
  restrict->add_option("-o,--out", o.out, "output proof (.json for JSON)");
  common(restrict);

  auto* trace = app.add_subcommand("trace", "trace a formula occurrence upwards");
  trace->add_option("file", o.file)->required();
  trace->add_option("node", o.node, "preorder node id")->required();
  trace->add_option("--occ", o.occ, "occurrence at the node, e.g. a0 or s1");
  trace->add_option("--premise", o.premise, "for a cut node: left or right premise")->capture_default_str();
  common(trace);

  auto* search = app.add_subcommand("search", "bounded backward proof search");
  search->add_option("sequent", o.goal)->required();
  search->add_option("--depth", o.depth)->capture_default_str();
  search->add_option("--cut-policy", o.cut_policy, "none, analytic or pool:<file>")->capture_default_str();
  search->add_option("-o,--out", o.out);
  common(search);

  auto* dualize = app.add_subcommand("dualize", "mirror a biint proof");
  dualize->add_option("file", o.file)->required();
  dualize->add_option("-o,--out", o.out);
  common(dualize);

  auto* corpus = app.add_subcommand("corpus", "write a seeded corpus of proofs with non-analytic cuts");
  corpus->add_option("--seed", o.seed)->capture_default_str();
  corpus->add_option("--count", o.count)->capture_default_str();
  corpus->add_option("--dir", o.dir)->capture_default_str();
  common(corpus);

  auto* stats = app.add_subcommand("stats", "cut counts, height and maximal cut size");
  stats->add_option("file", o.file)->required();
  common(stats);

  std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? Ok : BadInput;
  }

  try {
    if (*check) return cmd_check(o, out, err);
    if (*restrict) return cmd_restrict(o, out, err);
    if (*trace) return cmd_trace(o, out, err);
    if (*search) return cmd_search(o, out, err);
    if (*dualize) return cmd_dualize(o, out, err);
    if (*corpus) return cmd_corpus(o, out, err);
    if (*stats) return cmd_stats(o, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return BadInput;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return BadInput;
  } catch (const SignatureError& e) {
    err << "signature error: " << e.what() << "\n";
    return BadInput;
  } catch (const ProofError& e) {
    err << "invalid proof: " << e.what() << "\n";
    return BadInput;
  } catch (const PreconditionError& e) {
    err << "precondition: " << e.what() << "\n";
    return Precondition;
  } catch (const InternalError& e) {
    err << "internal: " << e.what() << "\n";
    return Internal;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return BadInput;
  }
  return BadInput;
}

}  // namespace cutr::cli
