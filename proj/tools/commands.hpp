#pragma once

// The five CLI subcommands as functions from a problem file to a JSON report
// and an exit code. Reports echo the input fields so they can be fed back in.

#include <functional>
#include <string>

#include "problem_io.hpp"

namespace wallform::cli {

struct CommandResult {
  json report;
  int exit_code = 0;
};

inline void add_wall_report(json& j, const WallForm& wf) {
  const WallClass c = classify(wf);
  j["wall_gram"] = to_json(wf.gram());
  j["residual_basis"] = to_json(wf.residual_basis());
  j["symmetric"] = c.symmetric;
  j["antisymmetric"] = c.antisymmetric;
  j["alternating"] = c.alternating;
}

inline CommandResult cmd_analyze(const ProblemFile& p) {
  const Isometry tau = p.isometry();
  json out = echo(p);
  add_wall_report(out, wall_form(tau));
  out["residual_dim"] = residual_space(tau).dim();
  out["fixed_dim"] = fixed_space(tau).dim();
  const auto idx = unipotency_index(tau);
  out["unipotency_index"] = idx ? json(*idx) : json(nullptr);
  out["involution"] = is_involution(tau);
  out["unipotent2"] = is_unipotent2(tau);
  if (!p.reflection_words.empty()) {
    json words = json::array();
    for (const auto& w : p.reflection_words) {
      const ReflectionWord word(tau.space(), w);
      const SquareClass sn = spinor_norm_word(word);
      json e;
      e["factors"] = to_json(w);
      e["spinor_norm"] = sn.representative.to_string();
      e["spinor_norm_trivial"] = sn.trivial();
      e["realizes_tau"] = word.to_isometry() == tau;
      words.push_back(e);
    }
    out["reflection_words"] = words;
  }
  return {out, 0};
}

inline CommandResult cmd_decompose(const ProblemFile& p) {
  const Isometry tau = p.isometry();
  const Decomposition d = decompose(tau);
  json out = echo(p);
  out["W_basis"] = to_json(d.W().vectors());
  json blocks = json::array();
  for (const auto& b : d.blocks()) {
    json e;
    if (const auto* r = std::get_if<ReflectionBlock>(&b)) {
      e["kind"] = "reflection";
      e["vectors"] = to_json(std::vector<Vec>{r->u, r->v});
    } else {
      const auto& i = std::get<InterchangeBlock>(b);
      e["kind"] = "interchange";
      e["vectors"] = to_json(std::vector<Vec>{i.x, i.y, i.w, i.z});
    }
    blocks.push_back(e);
  }
  out["blocks"] = blocks;
  out["m"] = d.m();
  out["s"] = d.s();
  out["alternating"] = d.alternating();
  const auto err = d.validate();
  out["valid"] = !err.has_value();
  if (err) out["validation_error"] = *err;
  return {out, err ? exit_code(ErrorKind::InternalError) : 0};
}

inline CommandResult cmd_clifford(const ProblemFile& p) {
  const Isometry tau = p.isometry();
  if (tau.field().characteristic() != 2) fail(ErrorKind::CharacteristicNot2, "clifford needs characteristic 2");
  if (!is_involution(tau)) fail(ErrorKind::NotInvolution, "tau^2 != id");
  json out = echo(p);
  out["involution_type"] = to_string(involution_type(natural_involution(tau)));
  if (!(residual_space(tau) == fixed_space(tau))) {
    for (const char* key : {"phi_dim", "phi_generator_squares", "pfister", "pfister_square", "transpose_iso", "criterion"})
      out[key] = nullptr;
    return {out, 0};
  }
  const PhiAlgebra phi = phi_subalgebra(tau);
  if (!phi.verified()) fail(ErrorKind::InternalError, "Phi subalgebra properties fail");
  out["phi_dim"] = phi.dim;
  json squares = json::array();
  for (const auto& s : phi.generator_squares) squares.push_back(s.to_string());
  out["phi_generator_squares"] = squares;
  const PfisterDescriptor pf = pfister_invariant(tau);
  out["pfister"] = pf.to_strings();
  out["pfister_square"] = pf.square;
  const TransposeCriterion c = transpose_iso_criterion(tau);
  out["transpose_iso"] = c.holds();
  out["criterion"] = {{"q_values_square", c.q_values_square},
                      {"omega_values_square", c.omega_values_square},
                      {"split_form", c.split_form}};
  return {out, 0};
}

inline json verify_report(const VerifyReport& r) {
  json j;
  j["theorem"] = r.theorem;
  j["group_order"] = r.group_order;
  j["checked"] = r.checked;
  j["failed"] = r.failed;
  j["examples"] = r.examples;
  return j;
}

inline CommandResult cmd_verify(const std::string& theorem, const ProblemFile& p) {
  const auto& ids = theorem_ids();
  if (std::find(ids.begin(), ids.end(), theorem) == ids.end()) fail(ErrorKind::UnknownTheorem, "unknown theorem id: " + theorem);
  const GroupEnumeration g = enumerate_orthogonal_group(p.space());
  const VerifyReport r = exhaustive_verify(theorem, g);
  json out = echo(p);
  out.update(verify_report(r));
  out["method"] = to_string(g.method());
  return {out, r.failed ? exit_code(ErrorKind::InternalError) : 0};
}

inline CommandResult cmd_enumerate(const ProblemFile& p) {
  const GroupEnumeration g = enumerate_orthogonal_group(p.space());
  std::size_t u2 = 0;
  for (const auto& m : g.elements()) u2 += g.compact_space().is_unipotent2(m);
  json out = echo(p);
  out["order"] = g.size();
  out["unipotent2_count"] = u2;
  out["method"] = to_string(g.method());
  return {out, 0};
}

inline json error_report(ErrorKind kind, const std::string& message) {
  return {{"error", to_string(kind)}, {"message", message}};
}

/// Runs a command body, mapping library errors to their exit codes.
inline CommandResult run_guarded(const std::function<CommandResult()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    return {error_report(e.kind(), e.message()), exit_code(e.kind())};
  } catch (const std::exception& e) {
    return {error_report(ErrorKind::InternalError, e.what()), exit_code(ErrorKind::InternalError)};
  }
}

}  // namespace wallform::cli
