#pragma once

// Session documents: the declarative text format the CLI reads. A document
// is a sequence of named blocks
//
//   poisson_algebra sl2 {
//     vars: e h f
//     bracket: {e, h} = -2*e
//     ...
//   }
//
// declaring Poisson algebras, ideals, Poisson orders, modules, and quantum
// affine spaces. References (base:, over:) resolve to earlier declarations
// only, so documents are acyclic by construction. Every object is validated
// as it loads -- brackets for antisymmetry and Jacobi, orders through their
// axiom checks, modules through module_check -- and failures surface as
// file:line:column diagnostics. Blocks that exist to demonstrate a failing
// check may declare `allow_invalid: true` to load anyway.

#include <map>
#include <string>
#include <vector>

#include "pomelo/envelope.hpp"
#include "pomelo/groebner.hpp"
#include "pomelo/order.hpp"
#include "pomelo/poisson.hpp"
#include "pomelo/semiclassical.hpp"

namespace pomelo {

enum class DeclKind { algebra, ideal, order, module, qspace };

struct SessionDocument {
  // declaration order, for serialization and lookups
  std::vector<std::pair<DeclKind, std::string>> decls;

  std::map<std::string, PoissonAlgebra> algebras;
  std::map<std::string, Ideal> ideals;
  std::map<std::string, std::string> ideal_over;    // owning algebra name
  std::map<std::string, PoissonOrder> orders;
  std::map<std::string, std::string> order_base;    // base algebra name
  std::map<std::string, PoissonModule> modules;
  std::map<std::string, std::string> module_over;   // algebra or order name
  std::map<std::string, QuantumAffineSpace> qspaces;

  bool has(const std::string& name) const;
};

// Parses and validates a document. Diagnostics are input errors whose
// message starts with "<filename>:<line>:<column>: ".
SessionDocument parse_session(const std::string& text,
                              const std::string& filename = "<input>");
SessionDocument parse_session_file(const std::string& path);

// Canonical text form: fixed key order, normalized polynomial strings,
// shorthands expanded. Serializing a parse of the output reproduces it
// byte for byte.
std::string serialize_session(const SessionDocument& doc);

// One declaration block in the same canonical form.
std::string serialize_algebra(const std::string& name, const PoissonAlgebra& p);

// Envelope element expressions for the CLI: terms joined by + or -, each a
// product of factors `d[var]`, an order basis name, or a polynomial in the
// base variables (parenthesised when it has more than one term).
EnvElement parse_env_expr(const EnvParent& e, const std::string& text);

} // namespace pomelo
