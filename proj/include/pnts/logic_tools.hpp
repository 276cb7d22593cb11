#pragma once

// Formula enumeration, the semantic kernel, constructive synthesis in R and
// the modal Riesz space axiom checker.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pnts/evaluate.hpp"
#include "pnts/formula.hpp"
#include "pnts/model.hpp"

namespace pnts {

/// First `count` positive rationals in breadth-first Stern-Brocot order
/// (1, 1/2, 2, 1/3, 2/3, 3/2, 3, ...). With `unit_only`, only those in (0,1).
std::vector<Rational> stern_brocot(std::size_t count, bool unit_only = false);

struct EnumeratedFormula {
  Formula formula;
  Valuation value;
};

/// Breadth-first enumeration of R formulas over the labels and propositions
/// of `m`: diamonds, scalings by +-q for q in a Stern-Brocot prefix, and the
/// binary connectives +, \/, /\. Formulas with an already seen value on `m`
/// are dropped. Deterministic; stops after `budget` formulas or at closure.
std::vector<EnumeratedFormula> enumerate_r_formulas(const Pnts& m, std::size_t budget,
                                                    std::size_t constants = 3);

/// States grouped by their values under the first `budget` enumerated
/// formulas and every formula in `extra`.
Partition semantic_kernel(const Pnts& m, std::size_t budget, const std::vector<Formula>& extra = {});

struct SynthesisOptions {
  /// Largest modal depth a separator may have.
  std::size_t max_depth = 6;
};

/// For each UE-bisimilarity block, an R formula that is 1 on the block and 0
/// elsewhere, in block order of bisimilarity(m, ue).
std::vector<Formula> block_indicators(const Pnts& m, const SynthesisOptions& options = {});

/// R formula whose exact value on `m` equals `target`. The target must be
/// constant on UE-bisimilarity blocks (LogicError otherwise). Throws
/// ResourceError when separators deeper than options.max_depth are needed.
Formula synthesize_formula(const Pnts& m, const Valuation& target,
                           const SynthesisOptions& options = {});

enum class ModelType { pnts, mp, nts };
ModelType parse_model_type(const std::string& s);
std::string to_string(ModelType t);

struct AxiomWitness {
  Valuation f;
  Valuation g;
  Rational lambda1;
  Rational lambda2;
  StateId state = 0;
  Rational lhs;
  Rational rhs;
};

struct AxiomResult {
  std::string name;
  bool passed = true;
  std::size_t checked = 0;
  std::optional<AxiomWitness> counterexample;
};

struct AxiomReport {
  ModelType claimed = ModelType::pnts;
  LabelId label = 0;
  std::vector<AxiomResult> axioms;

  bool all_passed() const;
  const AxiomResult* find(const std::string& name) const;
};

/// Checks the diamond of `label` on random rational valuations: monotone,
/// sublinear, positively affine homogeneous, Boolean on 1; for MP also
/// linear, for NTS also sup-preserving. Failures carry re-checkable witnesses.
AxiomReport check_modal_riesz_axioms(const Pnts& m, LabelId label, std::size_t samples,
                                     ModelType claimed, std::uint64_t seed = 1);

}  // namespace pnts
