#include "schwinger/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "schwinger/error.hpp"

namespace schwinger::io {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(s);
  while (std::getline(ss, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

// Non-empty, non-comment lines, each with its 1-based line number.
std::vector<std::pair<std::size_t, std::string>> data_lines(const std::string& text) {
  std::vector<std::pair<std::size_t, std::string>> out;
  std::istringstream ss(text);
  std::string line;
  std::size_t no = 0;
  while (std::getline(ss, line)) {
    ++no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    out.emplace_back(no, line);
  }
  return out;
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  throw Error(ErrorKind::parse, "line " + std::to_string(line) + ": " + what);
}

std::size_t parse_index(const std::string& s, std::size_t line, std::size_t limit) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) parse_fail(line, "bad index '" + s + "'");
  if (v >= limit) parse_fail(line, "index " + s + " out of range");
  return v;
}

double parse_real(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) parse_fail(line, "bad number '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    parse_fail(line, "bad number '" + s + "'");
  }
}

std::uint32_t json_index(const json& j, std::size_t limit, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw Error(ErrorKind::parse, std::string(what) + " must be a non-negative integer");
  const auto v = j.get<std::uint64_t>();
  if (v >= limit) throw Error(ErrorKind::parse, std::string(what) + " " + std::to_string(v) + " out of range");
  return static_cast<std::uint32_t>(v);
}

}  // namespace

FiniteGroupoid parse_groupoid_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::parse, std::string("groupoid JSON: ") + e.what());
  }
  try {
    GroupoidTables t;
    t.n_objects = doc.at("objects").get<std::size_t>();
    const auto& morphs = doc.at("morphisms");
    const std::size_t k = morphs.size();
    if (k > FiniteGroupoid::kMaxMorphisms) throw Error(ErrorKind::parse, "too many morphisms");
    t.morphisms.assign(k, {});
    t.labels.assign(k, {});
    std::vector<bool> seen(k, false);
    for (const auto& m : morphs) {
      const auto id = json_index(m.at("id"), k, "morphism id");
      if (seen[id]) throw Error(ErrorKind::parse, "duplicate morphism id " + std::to_string(id));
      seen[id] = true;
      t.morphisms[id] = {ObjectId(json_index(m.at("src"), t.n_objects, "src")),
                         ObjectId(json_index(m.at("tgt"), t.n_objects, "tgt"))};
      t.labels[id] = m.contains("label") ? m["label"].get<std::string>() : std::to_string(id);
    }

    // hom[(src, tgt)] for thin-groupoid inference
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint32_t>> hom;
    for (std::uint32_t a = 0; a < k; ++a) hom[{t.morphisms[a].source.value, t.morphisms[a].target.value}].push_back(a);
    bool thin = true;
    for (const auto& [key, v] : hom) thin = thin && v.size() <= 1;
    const auto unique = [&](std::uint32_t s, std::uint32_t tg, const char* what) {
      auto it = hom.find({s, tg});
      if (it == hom.end()) throw Error(ErrorKind::parse, std::string("cannot infer ") + what + ": no morphism " +
                                                             std::to_string(s) + " -> " + std::to_string(tg));
      return MorphismId(it->second.front());
    };
    const auto need_thin = [&](const char* what) {
      if (!thin) throw Error(ErrorKind::parse, std::string(what) + " table is required for a groupoid with parallel morphisms");
    };

    t.unit_of.assign(t.n_objects, kUndefined);
    if (doc.contains("units")) {
      for (const auto& e : doc["units"]) t.unit_of[json_index(e.at(0), t.n_objects, "unit object")] = MorphismId(json_index(e.at(1), k, "unit morphism"));
    } else {
      need_thin("units");
      for (std::uint32_t x = 0; x < t.n_objects; ++x) t.unit_of[x] = unique(x, x, "unit");
    }
    t.inverse_of.assign(k, kUndefined);
    if (doc.contains("inverse")) {
      for (const auto& e : doc["inverse"]) t.inverse_of[json_index(e.at(0), k, "morphism")] = MorphismId(json_index(e.at(1), k, "inverse"));
    } else {
      need_thin("inverse");
      for (std::uint32_t a = 0; a < k; ++a)
        t.inverse_of[a] = unique(t.morphisms[a].target.value, t.morphisms[a].source.value, "inverse");
    }
    t.compose.assign(k * k, kUndefined);
    if (doc.contains("compose")) {
      for (const auto& e : doc["compose"]) {
        const auto a = json_index(e.at(0), k, "morphism"), b = json_index(e.at(1), k, "morphism");
        t.compose[a * k + b] = MorphismId(json_index(e.at(2), k, "composite"));
      }
    } else {
      need_thin("compose");
      for (std::uint32_t a = 0; a < k; ++a)
        for (std::uint32_t b = 0; b < k; ++b)
          if (t.morphisms[a].source == t.morphisms[b].target)
            t.compose[a * k + b] = unique(t.morphisms[b].source.value, t.morphisms[a].target.value, "composite");
    }
    for (std::uint32_t x = 0; x < t.n_objects; ++x)
      if (t.unit_of[x] == kUndefined) throw Error(ErrorKind::parse, "object " + std::to_string(x) + " has no unit entry");
    for (std::uint32_t a = 0; a < k; ++a)
      if (t.inverse_of[a] == kUndefined) throw Error(ErrorKind::parse, "morphism " + std::to_string(a) + " has no inverse entry");
    return FiniteGroupoid::from_tables(std::move(t));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse, std::string("groupoid JSON: ") + e.what());
  }
}

std::string groupoid_to_json(const FiniteGroupoid& g) {
  json doc;
  doc["objects"] = g.object_count();
  json morphs = json::array(), compose = json::array(), inverse = json::array(), units = json::array();
  const std::size_t k = g.morphism_count();
  for (std::size_t a = 0; a < k; ++a) {
    const MorphismId id(a);
    morphs.push_back({{"id", a}, {"src", g.source(id).value}, {"tgt", g.target(id).value}, {"label", g.label(id)}});
    inverse.push_back({a, g.inverse(id).value});
    for (std::size_t b = 0; b < k; ++b) {
      const MorphismId c = g.compose(id, MorphismId(b));
      if (c != kUndefined) compose.push_back({a, b, c.value});
    }
  }
  for (std::size_t x = 0; x < g.object_count(); ++x) units.push_back({x, g.unit(ObjectId(x)).value});
  doc["morphisms"] = morphs;
  doc["compose"] = compose;
  doc["inverse"] = inverse;
  doc["units"] = units;
  return doc.dump(1);
}

FiniteGroupoid load_groupoid(const std::string& source) {
  if (source.find(':') != std::string::npos && source.find('/') == std::string::npos &&
      source.find(".json") == std::string::npos) {
    try {
      return builtin_groupoid(source);
    } catch (const Error& e) {
      throw Error(ErrorKind::parse, e.what());
    }
  }
  return parse_groupoid_json(read_file(source));
}

GroupoidMeasure parse_measure_csv(const std::string& text, const FiniteGroupoid& g) {
  GroupoidMeasure m = counting_measure(g);
  enum class Section { none, objects, morphisms } section = Section::none;
  for (const auto& [no, line] : data_lines(text)) {
    const auto cols = split(line, ',');
    if (cols.size() == 2 && cols[0] == "object_id" && cols[1] == "weight") {
      section = Section::objects;
      continue;
    }
    if (cols.size() == 2 && cols[0] == "morphism_id" && cols[1] == "fiber_weight") {
      section = Section::morphisms;
      continue;
    }
    if (section == Section::none) parse_fail(no, "row before any section header");
    if (cols.size() != 2) parse_fail(no, "expected two columns");
    if (section == Section::objects)
      m.object_weights[parse_index(cols[0], no, g.object_count())] = parse_real(cols[1], no);
    else
      m.fiber_weights[parse_index(cols[0], no, g.morphism_count())] = parse_real(cols[1], no);
  }
  try {
    check_measure(m, g);
  } catch (const Error& e) {
    throw Error(ErrorKind::parse, std::string("measure: ") + e.what());
  }
  return m;
}

QLagrangian parse_q_lagrangian_csv(const std::string& text, const FiniteGroupoid& g) {
  const auto lines = data_lines(text);
  if (lines.empty() || lines.front().second != "morphism_id,value")
    throw Error(ErrorKind::parse, "q-Lagrangian CSV must start with the header morphism_id,value");
  std::vector<double> v(g.morphism_count(), 0.0);
  std::vector<bool> seen(g.morphism_count(), false);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& [no, line] = lines[i];
    const auto cols = split(line, ',');
    if (cols.size() != 2) parse_fail(no, "expected two columns");
    const auto id = parse_index(cols[0], no, g.morphism_count());
    if (seen[id]) parse_fail(no, "duplicate morphism " + cols[0]);
    seen[id] = true;
    v[id] = parse_real(cols[1], no);
  }
  for (std::size_t a = 0; a < seen.size(); ++a)
    if (!seen[a]) throw Error(ErrorKind::parse, "q-Lagrangian has no value for morphism " + std::to_string(a));
  return make_q_lagrangian(std::move(v), g);
}

void write_q_lagrangian_csv(std::ostream& out, const QLagrangian& l) {
  out << "morphism_id,value\n";
  for (std::size_t a = 0; a < l.values.size(); ++a) out << a << ',' << format_double(l.values[a]) << '\n';
}

DFSSpec parse_dfs_spec_json(const std::string& text, std::size_t n_objects, const std::vector<double>& object_weights) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::parse, std::string("DFS config: ") + e.what());
  }
  try {
    DFSSpec spec = DFSSpec::uniform(n_objects, object_weights);
    if (doc.contains("hbar")) spec.hbar = doc["hbar"].get<double>();
    if (doc.contains("mode")) {
      const auto mode = doc["mode"].get<std::string>();
      if (mode == "real") spec.mode = PhaseMode::real;
      else if (mode == "euclidean") spec.mode = PhaseMode::euclidean;
      else throw Error(ErrorKind::parse, "unknown mode '" + mode + "'");
    }
    if (doc.contains("convention")) {
      const auto c = doc["convention"].get<std::string>();
      if (c == "incremental") spec.convention = ActionConvention::incremental;
      else if (c == "anchored") spec.convention = ActionConvention::anchored;
      else throw Error(ErrorKind::parse, "unknown convention '" + c + "'");
    }
    if (doc.contains("density") && !(doc["density"].is_string() && doc["density"] == "uniform")) {
      const auto& d = doc["density"];
      if (!d.is_array() || d.empty()) throw Error(ErrorKind::parse, "density must be a non-empty array");
      if (d.front().is_array())
        spec.density = d.get<std::vector<std::vector<double>>>();
      else
        spec.density = {d.get<std::vector<double>>()};
      for (const auto& row : spec.density)
        if (row.size() != n_objects)
          throw Error(ErrorKind::parse, "density rows must have " + std::to_string(n_objects) + " entries");
    }
    return spec;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse, std::string("DFS config: ") + e.what());
  }
}

AlgebraElement parse_algebra_element_csv(const std::string& text, const FiniteGroupoid& g) {
  const auto lines = data_lines(text);
  if (lines.empty() || lines.front().second != "morphism_id,re,im")
    throw Error(ErrorKind::parse, "algebra element CSV must start with the header morphism_id,re,im");
  AlgebraElement f(g.morphism_count());
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& [no, line] = lines[i];
    const auto cols = split(line, ',');
    if (cols.size() != 3) parse_fail(no, "expected three columns");
    f[parse_index(cols[0], no, g.morphism_count())] = Complex(parse_real(cols[1], no), parse_real(cols[2], no));
  }
  return f;
}

void write_algebra_element_csv(std::ostream& out, const AlgebraElement& f) {
  out << "morphism_id,re,im\n";
  for (std::size_t a = 0; a < f.size(); ++a)
    out << a << ',' << format_double(f[a].real()) << ',' << format_double(f[a].imag()) << '\n';
}

void write_history_csv(std::ostream& out, const DiscreteHistory& w) {
  out << "k,time,kpath_morphism_id\n";
  for (std::size_t k = 0; k < w.kpath.size(); ++k)
    out << k << ',' << format_double(w.grid[k]) << ',' << w.kpath[k].value << '\n';
}

void write_word_csv(std::ostream& out, const HistoryWord& word) {
  out << "segment,orientation,k,time,kpath_morphism_id\n";
  for (std::size_t s = 0; s < word.segments.size(); ++s) {
    const auto& w = word.segments[s];
    const char* o = w.orientation == Orientation::future ? "future" : "past";
    for (std::size_t k = 0; k < w.kpath.size(); ++k)
      out << s << ',' << o << ',' << k << ',' << format_double(w.grid[k]) << ',' << w.kpath[k].value << '\n';
  }
}

void write_propagator_csv(std::ostream& out, const PropagatorTable& table) {
  out << "x0,t0,x1,t1,re,im,abs,phase\n";
  for (const auto& e : table.entries) {
    out << e.x0.value << ',' << format_double(e.t0) << ',' << e.x1.value << ',' << format_double(e.t1) << ','
        << format_double(e.amplitude.real()) << ',' << format_double(e.amplitude.imag()) << ','
        << format_double(std::abs(e.amplitude)) << ',' << format_double(std::arg(e.amplitude)) << '\n';
  }
}

void write_propagator_json(std::ostream& out, const PropagatorTable& table) {
  json rows = json::array();
  for (const auto& e : table.entries) {
    rows.push_back({{"x0", e.x0.value},
                    {"t0", e.t0},
                    {"x1", e.x1.value},
                    {"t1", e.t1},
                    {"re", e.amplitude.real()},
                    {"im", e.amplitude.imag()},
                    {"abs", std::abs(e.amplitude)},
                    {"phase", std::arg(e.amplitude)}});
  }
  out << json{{"entries", rows}}.dump(1) << '\n';
}

void write_convergence_csv(std::ostream& out, const ConvergenceTable& table) {
  out << "N,dt,value_re,value_im,reference_re,reference_im,rel_error\n";
  for (const auto& r : table.rows) {
    out << r.N << ',' << format_double(r.dt) << ',' << format_double(r.value.real()) << ','
        << format_double(r.value.imag()) << ',' << format_double(r.reference.real()) << ','
        << format_double(r.reference.imag()) << ',' << format_double(r.rel_error) << '\n';
  }
}

void write_convergence_json(std::ostream& out, const ConvergenceTable& table) {
  json rows = json::array();
  for (const auto& r : table.rows) {
    rows.push_back({{"N", r.N},
                    {"dt", r.dt},
                    {"value_re", r.value.real()},
                    {"value_im", r.value.imag()},
                    {"reference_re", r.reference.real()},
                    {"reference_im", r.reference.imag()},
                    {"rel_error", r.rel_error}});
  }
  out << json{{"rows", rows}, {"warnings", table.warnings}}.dump(1) << '\n';
}

void write_certificate_csv(std::ostream& out, const PositivityCertificate& cert) {
  out << "min_eigenvalue,form_matrix_dim,hermiticity_defect,verdict\n"
      << format_double(cert.min_eigenvalue) << ',' << cert.form_matrix_dim << ','
      << format_double(cert.hermiticity_defect) << ',' << (cert.verdict == Verdict::positive ? "positive" : "indefinite")
      << '\n';
}

}  // namespace schwinger::io
