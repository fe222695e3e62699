#include "schwinger/groupoid.hpp"

#include <charconv>
#include <sstream>

#include "schwinger/error.hpp"

namespace schwinger {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_size: return "invalid-size";
    case ErrorKind::invalid_group: return "invalid-group";
    case ErrorKind::shape: return "shape";
    case ErrorKind::range: return "range";
    case ErrorKind::consistency: return "consistency";
    case ErrorKind::composition: return "composition";
    case ErrorKind::orientation: return "orientation";
    case ErrorKind::grid: return "grid";
    case ErrorKind::word: return "word";
    case ErrorKind::non_quasi_invariant: return "non-quasi-invariant-measure";
    case ErrorKind::unsupported_form: return "unsupported-form";
    case ErrorKind::symmetry: return "symmetry";
    case ErrorKind::normalization: return "normalization";
    case ErrorKind::metric: return "metric";
    case ErrorKind::geometry: return "geometry";
    case ErrorKind::parse: return "parse";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

std::string_view to_string(Axiom axiom) {
  switch (axiom) {
    case Axiom::unit_missing: return "unit-missing";
    case Axiom::unit_endpoints: return "unit-endpoints";
    case Axiom::left_unit: return "left-unit";
    case Axiom::right_unit: return "right-unit";
    case Axiom::inverse_missing: return "inverse-missing";
    case Axiom::inverse_endpoints: return "inverse-endpoints";
    case Axiom::inverse_law: return "inverse-law";
    case Axiom::composability_domain: return "composability-domain";
    case Axiom::composition_endpoints: return "composition-endpoints";
    case Axiom::associativity: return "associativity";
  }
  return "unknown";
}

GroupTable cyclic_group_table(std::size_t k) {
  if (k == 0) throw Error(ErrorKind::invalid_size, "cyclic group order must be >= 1");
  GroupTable t;
  t.order = k;
  t.product.resize(k * k);
  t.inverse.resize(k);
  for (std::size_t g = 0; g < k; ++g) {
    for (std::size_t h = 0; h < k; ++h) t.product[g * k + h] = static_cast<std::uint32_t>((g + h) % k);
    t.inverse[g] = static_cast<std::uint32_t>((k - g) % k);
  }
  t.identity = 0;
  return t;
}

FiniteGroupoid FiniteGroupoid::from_tables(GroupoidTables tables) {
  const std::size_t n = tables.n_objects;
  const std::size_t m = tables.morphisms.size();
  if (m > kMaxMorphisms) {
    throw Error(ErrorKind::invalid_size,
                "groupoid has " + std::to_string(m) + " morphisms; dense tables are limited to " +
                    std::to_string(kMaxMorphisms));
  }
  if (tables.unit_of.size() != n || tables.inverse_of.size() != m || tables.compose.size() != m * m) {
    throw Error(ErrorKind::shape, "groupoid table sizes are inconsistent");
  }
  for (std::size_t a = 0; a < m; ++a) {
    if (tables.morphisms[a].source.value >= n || tables.morphisms[a].target.value >= n) {
      throw Error(ErrorKind::range, "morphism " + std::to_string(a) + " has an endpoint out of range");
    }
  }
  if (!tables.labels.empty() && tables.labels.size() != m) {
    throw Error(ErrorKind::shape, "label count does not match morphism count");
  }
  FiniteGroupoid g;
  g.tables_ = std::move(tables);
  g.index();
  return g;
}

void FiniteGroupoid::index() {
  const std::size_t n = object_count();
  hom_.assign(n * n, {});
  target_fiber_.assign(n, {});
  source_fiber_.assign(n, {});
  for (std::size_t a = 0; a < morphism_count(); ++a) {
    const auto& e = tables_.morphisms[a];
    // hom is keyed (source, target) to match hom(a, b) = G_a^b.
    hom_[e.source.value * n + e.target.value].push_back(MorphismId(a));
    target_fiber_[e.target.value].push_back(MorphismId(a));
    source_fiber_[e.source.value].push_back(MorphismId(a));
  }
}

bool FiniteGroupoid::is_unit(MorphismId a) const {
  const ObjectId x = source(a);
  return target(a) == x && unit(x) == a;
}

const std::string& FiniteGroupoid::label(MorphismId a) const {
  static const std::string empty;
  if (tables_.labels.empty()) return empty;
  return tables_.labels[a.value];
}

FiniteGroupoid pair_groupoid(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::invalid_size, "pair groupoid needs at least one object");
  const std::size_t m = n * n;
  if (m > FiniteGroupoid::kMaxMorphisms) {
    throw Error(ErrorKind::invalid_size, "pair groupoid of " + std::to_string(n) + " objects exceeds table limit");
  }
  GroupoidTables t;
  t.n_objects = n;
  t.morphisms.resize(m);
  t.unit_of.resize(n);
  t.inverse_of.resize(m);
  t.compose.assign(m * m, kUndefined);
  t.labels.resize(m);
  for (std::size_t y = 0; y < n; ++y) {
    for (std::size_t x = 0; x < n; ++x) {
      const std::size_t id = y * n + x;
      t.morphisms[id] = {ObjectId(x), ObjectId(y)};
      t.inverse_of[id] = MorphismId(x * n + y);
      t.labels[id] = "(" + std::to_string(y) + "," + std::to_string(x) + ")";
    }
    t.unit_of[y] = MorphismId(y * n + y);
  }
  // (z,y) o (y,x) = (z,x)
  for (std::size_t z = 0; z < n; ++z)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t x = 0; x < n; ++x)
        t.compose[(z * n + y) * m + (y * n + x)] = MorphismId(z * n + x);
  return FiniteGroupoid::from_tables(std::move(t));
}

namespace {

void validate_group_table(const GroupTable& table) {
  const std::size_t k = table.order;
  if (k == 0) throw Error(ErrorKind::invalid_group, "group must have at least one element");
  if (table.product.size() != k * k || table.inverse.size() != k) {
    throw Error(ErrorKind::invalid_group, "group table has the wrong size");
  }
  if (table.identity >= k) throw Error(ErrorKind::invalid_group, "identity index out of range");
  for (auto v : table.product)
    if (v >= k) throw Error(ErrorKind::invalid_group, "group table is not closed");
  const auto mul = [&](std::size_t g, std::size_t h) { return table.product[g * k + h]; };
  for (std::size_t g = 0; g < k; ++g) {
    if (mul(table.identity, g) != g || mul(g, table.identity) != g) {
      throw Error(ErrorKind::invalid_group, "element " + std::to_string(g) + " violates the identity law");
    }
    const auto inv = table.inverse[g];
    if (inv >= k || mul(g, inv) != table.identity || mul(inv, g) != table.identity) {
      throw Error(ErrorKind::invalid_group, "element " + std::to_string(g) + " violates the inverse law");
    }
  }
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      for (std::size_t c = 0; c < k; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) {
          std::ostringstream os;
          os << "group table is not associative at (" << a << "," << b << "," << c << ")";
          throw Error(ErrorKind::invalid_group, os.str());
        }
}

}  // namespace

FiniteGroupoid group_groupoid(const GroupTable& table) {
  validate_group_table(table);
  const std::size_t k = table.order;
  GroupoidTables t;
  t.n_objects = 1;
  t.morphisms.assign(k, {ObjectId(0), ObjectId(0)});
  t.unit_of = {MorphismId(table.identity)};
  t.inverse_of.resize(k);
  t.compose.resize(k * k);
  t.labels.resize(k);
  for (std::size_t g = 0; g < k; ++g) {
    t.inverse_of[g] = MorphismId(table.inverse[g]);
    t.labels[g] = "g" + std::to_string(g);
    for (std::size_t h = 0; h < k; ++h) t.compose[g * k + h] = MorphismId(table.product[g * k + h]);
  }
  return FiniteGroupoid::from_tables(std::move(t));
}

FiniteGroupoid cyclic_groupoid(std::size_t k) { return group_groupoid(cyclic_group_table(k)); }

FiniteGroupoid product_with_group(std::size_t n, const FiniteGroupoid& group) {
  if (n == 0) throw Error(ErrorKind::invalid_size, "product needs at least one object");
  if (group.object_count() != 1) {
    throw Error(ErrorKind::shape, "product_with_group expects a one-object groupoid, got " +
                                      std::to_string(group.object_count()) + " objects");
  }
  const std::size_t k = group.morphism_count();
  const std::size_t m = n * n * k;
  if (m > FiniteGroupoid::kMaxMorphisms) {
    throw Error(ErrorKind::invalid_size, "product groupoid exceeds table limit");
  }
  const auto id = [&](std::size_t y, std::size_t g, std::size_t x) { return (y * n + x) * k + g; };
  GroupoidTables t;
  t.n_objects = n;
  t.morphisms.resize(m);
  t.unit_of.resize(n);
  t.inverse_of.resize(m);
  t.compose.assign(m * m, kUndefined);
  t.labels.resize(m);
  const std::uint32_t e = group.unit(ObjectId(0)).value;
  for (std::size_t y = 0; y < n; ++y) {
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t g = 0; g < k; ++g) {
        const std::size_t a = id(y, g, x);
        t.morphisms[a] = {ObjectId(x), ObjectId(y)};
        t.inverse_of[a] = MorphismId(id(x, group.inverse(MorphismId(g)).value, y));
        t.labels[a] = "(" + std::to_string(y) + ";" + std::to_string(g) + ";" + std::to_string(x) + ")";
      }
    }
    t.unit_of[y] = MorphismId(id(y, e, y));
  }
  // (z; g'; y) o (y; g; x) = (z; g'g; x)
  for (std::size_t z = 0; z < n; ++z)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t g2 = 0; g2 < k; ++g2)
          for (std::size_t g1 = 0; g1 < k; ++g1) {
            const auto prod = group.compose(MorphismId(g2), MorphismId(g1)).value;
            t.compose[id(z, g2, y) * m + id(y, g1, x)] = MorphismId(id(z, prod, x));
          }
  return FiniteGroupoid::from_tables(std::move(t));
}

namespace {

std::size_t parse_count(std::string_view text, const std::string& spec) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::parse, "malformed builtin groupoid spec '" + spec + "'");
  }
  return value;
}

}  // namespace

FiniteGroupoid builtin_groupoid(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw Error(ErrorKind::parse, "builtin groupoid spec needs 'name:args': " + spec);
  const std::string name = spec.substr(0, colon);
  const std::string_view args = std::string_view(spec).substr(colon + 1);
  if (name == "pair") return pair_groupoid(parse_count(args, spec));
  if (name == "cyclic") return cyclic_groupoid(parse_count(args, spec));
  if (name == "pair_x_cyclic") {
    const auto comma = args.find(',');
    if (comma == std::string_view::npos) throw Error(ErrorKind::parse, "pair_x_cyclic needs '<n>,<k>': " + spec);
    const auto n = parse_count(args.substr(0, comma), spec);
    const auto k = parse_count(args.substr(comma + 1), spec);
    return product_with_group(n, cyclic_groupoid(k));
  }
  throw Error(ErrorKind::parse, "unknown builtin groupoid '" + name + "'");
}

std::size_t ValidationReport::count(Axiom axiom) const {
  std::size_t c = 0;
  for (const auto& v : violations)
    if (v.axiom == axiom) ++c;
  return c;
}

ValidationReport validate_axioms(const FiniteGroupoid& g) {
  ValidationReport report;
  const auto& t = g.tables();
  const std::size_t n = t.n_objects;
  const std::size_t m = t.morphisms.size();
  const auto add = [&](Axiom axiom, std::vector<std::uint32_t> ids, std::string msg) {
    report.violations.push_back({axiom, std::move(ids), std::move(msg)});
  };
  const auto valid = [&](MorphismId a) { return a.value < m; };
  const auto cmp = [&](std::size_t a, std::size_t b) { return t.compose[a * m + b]; };

  for (std::size_t x = 0; x < n; ++x) {
    const MorphismId u = t.unit_of[x];
    if (!valid(u)) {
      add(Axiom::unit_missing, {static_cast<std::uint32_t>(x)}, "object " + std::to_string(x) + " has no unit");
      continue;
    }
    const auto& e = t.morphisms[u.value];
    if (e.source.value != x || e.target.value != x) {
      add(Axiom::unit_endpoints, {static_cast<std::uint32_t>(x), u.value},
          "unit of object " + std::to_string(x) + " is not a loop at it");
    }
  }

  for (std::size_t a = 0; a < m; ++a) {
    const auto& e = t.morphisms[a];
    const MorphismId src_unit = t.unit_of[e.source.value];
    const MorphismId tgt_unit = t.unit_of[e.target.value];
    if (valid(src_unit) && cmp(a, src_unit.value) != MorphismId(a)) {
      add(Axiom::right_unit, {static_cast<std::uint32_t>(a)}, "a o 1_s(a) != a for morphism " + std::to_string(a));
    }
    if (valid(tgt_unit) && cmp(tgt_unit.value, a) != MorphismId(a)) {
      add(Axiom::left_unit, {static_cast<std::uint32_t>(a)}, "1_t(a) o a != a for morphism " + std::to_string(a));
    }
    const MorphismId inv = t.inverse_of[a];
    if (!valid(inv)) {
      add(Axiom::inverse_missing, {static_cast<std::uint32_t>(a)}, "morphism " + std::to_string(a) + " has no inverse");
      continue;
    }
    const auto& ie = t.morphisms[inv.value];
    if (ie.source != e.target || ie.target != e.source) {
      add(Axiom::inverse_endpoints, {static_cast<std::uint32_t>(a), inv.value},
          "inverse of " + std::to_string(a) + " has wrong endpoints");
    }
    if (cmp(inv.value, a) != src_unit || cmp(a, inv.value) != tgt_unit) {
      add(Axiom::inverse_law, {static_cast<std::uint32_t>(a), inv.value},
          "inverse law fails for morphism " + std::to_string(a));
    }
  }

  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      const bool composable = t.morphisms[a].source == t.morphisms[b].target;
      const MorphismId r = cmp(a, b);
      const auto ids = std::vector<std::uint32_t>{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
      if (composable != (r != kUndefined)) {
        add(Axiom::composability_domain, ids,
            "composition of " + std::to_string(a) + " and " + std::to_string(b) +
                (composable ? " is undefined but should be defined" : " is defined but should not be"));
        continue;
      }
      if (!composable) continue;
      if (!valid(r) || t.morphisms[r.value].source != t.morphisms[b].source ||
          t.morphisms[r.value].target != t.morphisms[a].target) {
        add(Axiom::composition_endpoints, ids,
            "composition of " + std::to_string(a) + " and " + std::to_string(b) + " has wrong endpoints");
      }
    }
  }

  // Exhaustive associativity over composable triples whose partial products exist.
  for (std::size_t a = 0; a < m; ++a) {
    const auto sa = t.morphisms[a].source;
    for (MorphismId b : g.target_fiber(sa)) {
      const MorphismId ab = cmp(a, b.value);
      if (!valid(ab)) continue;
      const auto sb = t.morphisms[b.value].source;
      for (MorphismId c : g.target_fiber(sb)) {
        const MorphismId bc = cmp(b.value, c.value);
        if (!valid(bc)) continue;
        const MorphismId left = cmp(ab.value, c.value);
        const MorphismId right = cmp(a, bc.value);
        if (left != right) {
          add(Axiom::associativity,
              {static_cast<std::uint32_t>(a), b.value, c.value},
              "(a o b) o c != a o (b o c) for (" + std::to_string(a) + "," + std::to_string(b.value) + "," +
                  std::to_string(c.value) + ")");
        }
      }
    }
  }
  return report;
}

std::vector<MorphismId> hom_set(const FiniteGroupoid& g, ObjectId a, ObjectId b) {
  if (a.value >= g.object_count() || b.value >= g.object_count()) {
    throw Error(ErrorKind::range, "hom_set: object id out of range");
  }
  const auto h = g.hom(a, b);
  return {h.begin(), h.end()};
}

}  // namespace schwinger
