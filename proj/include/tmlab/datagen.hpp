#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tmlab/machine.hpp"

namespace tmlab {

// Noise-free training distributions over Boolean operator truth tables. The
// OR sub-operators restrict the support to one positive pattern plus the
// all-zero pattern; IDENTITY and NOT are the 1-bit baselines.
enum class OperatorKind : std::uint8_t {
  And,
  Or,
  OrSub11,
  OrSub01,
  OrSub10,
  Xor,
  Identity,
  Not,
};

// Config-file names: AND, OR, OR_SUB_11, OR_SUB_01, OR_SUB_10, XOR,
// IDENTITY, NOT.
std::string operator_name(OperatorKind kind);
OperatorKind operator_kind_from_name(std::string_view name);

struct OperatorSpec {
  OperatorKind kind = OperatorKind::And;
  std::vector<InputVector> patterns;  // admissible inputs, lexicographic
  std::vector<Bit> labels;            // deterministic operator outputs
  std::vector<Rational> weights;      // strictly positive, sum to exactly 1

  int input_width() const {
    return static_cast<int>(patterns.front().size());
  }
};

// Uniform weights over the admissible patterns.
OperatorSpec make_operator(OperatorKind kind);

// Weights keyed by input bit-string ("01" means x1=0, x2=1). Every
// admissible pattern must get a positive weight; weights are normalized
// exactly. Unknown or missing patterns raise ConfigError.
OperatorSpec make_operator(OperatorKind kind,
                           const std::map<std::string, Rational>& weights);

// All admissible (input, label) pairs in lexicographic input order.
std::vector<std::pair<InputVector, Bit>> truth_table(const OperatorSpec& spec);

// Draws an input per the weights and attaches the operator's label;
// consumes exactly one uniform.
Sample draw_sample(const OperatorSpec& spec, RandomSource& rng);

}  // namespace tmlab
