#include "tmlab/clause.hpp"

#include <stdexcept>

namespace tmlab {

Bit literal_value(const InputVector& x, int literal_index) {
  if (literal_index < 1 || literal_index > 2 * static_cast<int>(x.size())) {
    throw std::out_of_range("literal index out of range");
  }
  const int k = (literal_index + 1) / 2;  // input index, 1-based
  const Bit value = x[static_cast<std::size_t>(k - 1)];
  return literal_index % 2 == 1 ? value : static_cast<Bit>(value == 0);
}

Bit evaluate(const ClauseState& clause, const InputVector& x, EvalMode mode) {
  if (clause.input_width() != static_cast<int>(x.size())) {
    throw std::invalid_argument("input width does not match clause width");
  }
  bool any_included = false;
  for (int idx = 1; idx <= static_cast<int>(clause.tas.size()); ++idx) {
    if (action(clause.tas[static_cast<std::size_t>(idx - 1)]) !=
        ActionKind::Include) {
      continue;
    }
    any_included = true;
    if (literal_value(x, idx) == 0) return 0;
  }
  if (!any_included) return mode == EvalMode::Train ? 1 : 0;
  return 1;
}

}  // namespace tmlab
