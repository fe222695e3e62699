#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace schwinger {

struct ObjectId {
  std::uint32_t value = 0;
  constexpr ObjectId() = default;
  constexpr explicit ObjectId(std::uint32_t v) : value(v) {}
  constexpr explicit ObjectId(std::size_t v) : value(static_cast<std::uint32_t>(v)) {}
  constexpr explicit ObjectId(int v) : value(static_cast<std::uint32_t>(v)) {}
  friend constexpr auto operator<=>(ObjectId, ObjectId) = default;
};

struct MorphismId {
  std::uint32_t value = 0;
  constexpr MorphismId() = default;
  constexpr explicit MorphismId(std::uint32_t v) : value(v) {}
  constexpr explicit MorphismId(std::size_t v) : value(static_cast<std::uint32_t>(v)) {}
  constexpr explicit MorphismId(int v) : value(static_cast<std::uint32_t>(v)) {}
  friend constexpr auto operator<=>(MorphismId, MorphismId) = default;
};

inline constexpr MorphismId kUndefined{std::numeric_limits<std::uint32_t>::max()};

struct MorphismEnds {
  ObjectId source;
  ObjectId target;
  friend constexpr bool operator==(MorphismEnds, MorphismEnds) = default;
};

// Raw tables backing a finite groupoid. Composition is a dense row-major
// |K| x |K| table: compose[a * |K| + b] = a o b, or kUndefined.
struct GroupoidTables {
  std::size_t n_objects = 0;
  std::vector<MorphismEnds> morphisms;
  std::vector<MorphismId> unit_of;
  std::vector<MorphismId> inverse_of;
  std::vector<MorphismId> compose;
  std::vector<std::string> labels;
};

// Multiplication table of a finite group; product[g * order + h] = g h.
struct GroupTable {
  std::size_t order = 0;
  std::vector<std::uint32_t> product;
  std::vector<std::uint32_t> inverse;
  std::uint32_t identity = 0;
};

GroupTable cyclic_group_table(std::size_t k);

// Immutable finite groupoid. Identity of objects and morphisms is positional.
// A FiniteGroupoid may hold tables that violate the axioms (when built with
// from_tables); validate_axioms reports those violations.
class FiniteGroupoid {
 public:
  static constexpr std::size_t kMaxMorphisms = 4096;

  FiniteGroupoid() = default;

  // No validation is performed; use validate_axioms on the result.
  static FiniteGroupoid from_tables(GroupoidTables tables);

  std::size_t object_count() const { return tables_.n_objects; }
  std::size_t morphism_count() const { return tables_.morphisms.size(); }

  ObjectId source(MorphismId a) const { return tables_.morphisms[a.value].source; }
  ObjectId target(MorphismId a) const { return tables_.morphisms[a.value].target; }
  MorphismId unit(ObjectId x) const { return tables_.unit_of[x.value]; }
  MorphismId inverse(MorphismId a) const { return tables_.inverse_of[a.value]; }

  // a o b; kUndefined when s(a) != t(b).
  MorphismId compose(MorphismId a, MorphismId b) const {
    return tables_.compose[a.value * morphism_count() + b.value];
  }

  bool is_unit(MorphismId a) const;

  std::span<const MorphismId> hom(ObjectId a, ObjectId b) const {
    return hom_[a.value * object_count() + b.value];
  }
  // K^y: morphisms with target y, ascending.
  std::span<const MorphismId> target_fiber(ObjectId y) const { return target_fiber_[y.value]; }
  // K_x: morphisms with source x, ascending.
  std::span<const MorphismId> source_fiber(ObjectId x) const { return source_fiber_[x.value]; }

  const std::string& label(MorphismId a) const;
  const GroupoidTables& tables() const { return tables_; }

 private:
  void index();

  GroupoidTables tables_;
  std::vector<std::vector<MorphismId>> hom_;
  std::vector<std::vector<MorphismId>> target_fiber_;
  std::vector<std::vector<MorphismId>> source_fiber_;
};

// Morphism (y,x) has index y * n + x.
FiniteGroupoid pair_groupoid(std::size_t n);

// Validates the table (closure, identity, inverses, associativity).
FiniteGroupoid group_groupoid(const GroupTable& table);

FiniteGroupoid cyclic_groupoid(std::size_t k);

// Morphism (y; g; x) has index (y * n + x) * |group| + g.
FiniteGroupoid product_with_group(std::size_t n, const FiniteGroupoid& group);

// Accepts "pair:<n>", "cyclic:<k>", "pair_x_cyclic:<n>,<k>".
FiniteGroupoid builtin_groupoid(const std::string& spec);

enum class Axiom {
  unit_missing,
  unit_endpoints,
  left_unit,
  right_unit,
  inverse_missing,
  inverse_endpoints,
  inverse_law,
  composability_domain,
  composition_endpoints,
  associativity,
};

std::string_view to_string(Axiom axiom);

struct Violation {
  Axiom axiom;
  std::vector<std::uint32_t> witnesses;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::size_t count(Axiom axiom) const;
};

ValidationReport validate_axioms(const FiniteGroupoid& g);

// G_a^b in ascending order.
std::vector<MorphismId> hom_set(const FiniteGroupoid& g, ObjectId a, ObjectId b);

}  // namespace schwinger
