#include "tmlab/datagen.hpp"

#include <array>

#include "tmlab/errors.hpp"

namespace tmlab {

namespace {

struct OperatorInfo {
  OperatorKind kind;
  const char* name;
  int width;
};

constexpr std::array<OperatorInfo, 8> kOperators{{
    {OperatorKind::And, "AND", 2},
    {OperatorKind::Or, "OR", 2},
    {OperatorKind::OrSub11, "OR_SUB_11", 2},
    {OperatorKind::OrSub01, "OR_SUB_01", 2},
    {OperatorKind::OrSub10, "OR_SUB_10", 2},
    {OperatorKind::Xor, "XOR", 2},
    {OperatorKind::Identity, "IDENTITY", 1},
    {OperatorKind::Not, "NOT", 1},
}};

Bit label_for(OperatorKind kind, const InputVector& x) {
  switch (kind) {
    case OperatorKind::And:
    case OperatorKind::OrSub11:
      return static_cast<Bit>(x[0] & x[1]);
    case OperatorKind::Or:
      return static_cast<Bit>(x[0] | x[1]);
    case OperatorKind::OrSub01:
      return static_cast<Bit>(!x[0] && x[1]);
    case OperatorKind::OrSub10:
      return static_cast<Bit>(x[0] && !x[1]);
    case OperatorKind::Xor:
      return static_cast<Bit>(x[0] ^ x[1]);
    case OperatorKind::Identity:
      return x[0];
    case OperatorKind::Not:
      return static_cast<Bit>(x[0] == 0);
  }
  throw std::logic_error("unhandled operator kind");
}

bool admissible(OperatorKind kind, const InputVector& x) {
  // The OR sub-operators keep only their positive pattern and (0,0).
  switch (kind) {
    case OperatorKind::OrSub11:
      return x == InputVector{0, 0} || x == InputVector{1, 1};
    case OperatorKind::OrSub01:
      return x == InputVector{0, 0} || x == InputVector{0, 1};
    case OperatorKind::OrSub10:
      return x == InputVector{0, 0} || x == InputVector{1, 0};
    default:
      return true;
  }
}

std::string pattern_key(const InputVector& x) {
  std::string key;
  for (Bit b : x) key += static_cast<char>('0' + b);
  return key;
}

}  // namespace

std::string operator_name(OperatorKind kind) {
  for (const auto& info : kOperators) {
    if (info.kind == kind) return info.name;
  }
  throw std::logic_error("unhandled operator kind");
}

OperatorKind operator_kind_from_name(std::string_view name) {
  for (const auto& info : kOperators) {
    if (name == info.name) return info.kind;
  }
  throw ConfigError("operator.name",
                    "unknown operator '" + std::string(name) + "'");
}

OperatorSpec make_operator(OperatorKind kind) {
  int width = 0;
  for (const auto& info : kOperators) {
    if (info.kind == kind) width = info.width;
  }
  OperatorSpec spec;
  spec.kind = kind;
  const int count = 1 << width;
  for (int v = 0; v < count; ++v) {
    InputVector x(static_cast<std::size_t>(width));
    for (int b = 0; b < width; ++b) {
      x[static_cast<std::size_t>(b)] =
          static_cast<Bit>((v >> (width - 1 - b)) & 1);
    }
    if (!admissible(kind, x)) continue;
    spec.patterns.push_back(x);
    spec.labels.push_back(label_for(kind, x));
  }
  const long long n = static_cast<long long>(spec.patterns.size());
  spec.weights.assign(spec.patterns.size(), Rational(1, n));
  return spec;
}

OperatorSpec make_operator(OperatorKind kind,
                           const std::map<std::string, Rational>& weights) {
  OperatorSpec spec = make_operator(kind);
  Rational total(0);
  std::size_t used = 0;
  for (std::size_t i = 0; i < spec.patterns.size(); ++i) {
    const std::string key = pattern_key(spec.patterns[i]);
    auto it = weights.find(key);
    if (it == weights.end()) {
      throw ConfigError("operator.weights", "missing weight for pattern '" +
                                                key + "'");
    }
    if (it->second <= Rational(0)) {
      throw ConfigError("operator.weights",
                        "weight for pattern '" + key + "' must be positive");
    }
    spec.weights[i] = it->second;
    total += it->second;
    ++used;
  }
  if (used != weights.size()) {
    for (const auto& [key, value] : weights) {
      bool known = false;
      for (const auto& pattern : spec.patterns) {
        known = known || pattern_key(pattern) == key;
      }
      if (!known) {
        throw ConfigError("operator.weights",
                          "pattern '" + key + "' is not admissible for " +
                              operator_name(kind));
      }
    }
  }
  for (auto& w : spec.weights) w /= total;
  return spec;
}

std::vector<std::pair<InputVector, Bit>> truth_table(
    const OperatorSpec& spec) {
  std::vector<std::pair<InputVector, Bit>> table;
  table.reserve(spec.patterns.size());
  for (std::size_t i = 0; i < spec.patterns.size(); ++i) {
    table.emplace_back(spec.patterns[i], spec.labels[i]);
  }
  return table;
}

Sample draw_sample(const OperatorSpec& spec, RandomSource& rng) {
  const double u = rng.next_unit();
  Rational cumulative(0);
  std::size_t chosen = spec.patterns.size() - 1;
  for (std::size_t i = 0; i < spec.weights.size(); ++i) {
    cumulative += spec.weights[i];
    if (u < cumulative.to_double()) {
      chosen = i;
      break;
    }
  }
  return Sample{spec.patterns[chosen], spec.labels[chosen]};
}

}  // namespace tmlab
