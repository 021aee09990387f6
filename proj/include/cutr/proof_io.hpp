#pragma once

#include <string>

#include "cutr/restrict.hpp"

namespace cutr {

struct LoadedProof {
  CalculusId calculus = CalculusId::BiInt;
  Proof proof;
};

// Text format:
//
//   calculus: biint
//   p |- p & T  [and_R principal=s0]
//     p |- p  [init principal=a0,s0]
//     p |- T  [top_R]
//
// One node per line, children indented two spaces deeper than their parent,
// in premise order. A missing principal is inferred. Blank lines and lines
// starting with '#' are ignored.
//
// Nodes are built without validation so that check_proof can report the
// first bad inference; only syntax errors throw (ParseError).
LoadedProof read_proof_text(const std::string& text);
std::string write_proof_text(CalculusId c, const Proof& p);

/// JSON with explicit flow maps. read_proof_json accepts a missing flow.
std::string write_proof_json(CalculusId c, const Proof& p);
LoadedProof read_proof_json(const std::string& text);

/// Dispatches on the first non-blank character ('{' means JSON).
LoadedProof read_proof(const std::string& text);
LoadedProof read_proof_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

std::string audit_kv(const AnalyticityAudit& a);
std::string audit_json(const AnalyticityAudit& a);
std::string report_json(const RestrictionReport& r);

}  // namespace cutr
