#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "schwinger/continuum.hpp"
#include "schwinger/groupoid.hpp"
#include "schwinger/histories.hpp"
#include "schwinger/lagrangian.hpp"
#include "schwinger/measure.hpp"
#include "schwinger/propagator.hpp"
#include "schwinger/states.hpp"

namespace schwinger::io {

// 17 significant digits.
std::string format_double(double v);

std::string read_file(const std::string& path);

// JSON groupoid description:
//   {"objects": n, "morphisms": [{"id", "src", "tgt"}...],
//    "compose": [[a, b, a o b]...], "inverse": [[a, a^-1]...], "units": [[x, 1_x]...]}
// Missing compose/inverse/units tables are inferred only when every hom set
// has at most one element. Throws ErrorKind::parse.
FiniteGroupoid parse_groupoid_json(const std::string& text);
std::string groupoid_to_json(const FiniteGroupoid& g);

// Builtin spec string or path to a JSON file.
FiniteGroupoid load_groupoid(const std::string& source);

// CSV with two sections, each introduced by its header line:
//   object_id,weight
//   morphism_id,fiber_weight
// Rows absent from a section default to 1.
GroupoidMeasure parse_measure_csv(const std::string& text, const FiniteGroupoid& g);

// morphism_id,value
QLagrangian parse_q_lagrangian_csv(const std::string& text, const FiniteGroupoid& g);
void write_q_lagrangian_csv(std::ostream& out, const QLagrangian& l);

// {"hbar": 1, "mode": "real"|"euclidean", "convention": "incremental"|"anchored",
//  "density": [p_0, ...] or [[p_0(t_0), ...], ...]}
// A missing density (or the string "uniform") means the uniform density for
// the given object weights.
DFSSpec parse_dfs_spec_json(const std::string& text, std::size_t n_objects,
                            const std::vector<double>& object_weights = {});

// morphism_id,re,im
AlgebraElement parse_algebra_element_csv(const std::string& text, const FiniteGroupoid& g);
void write_algebra_element_csv(std::ostream& out, const AlgebraElement& f);

// k,time,kpath_morphism_id
void write_history_csv(std::ostream& out, const DiscreteHistory& w);
// segment,orientation,k,time,kpath_morphism_id
void write_word_csv(std::ostream& out, const HistoryWord& word);

// x0,t0,x1,t1,re,im,abs,phase
void write_propagator_csv(std::ostream& out, const PropagatorTable& table);
void write_propagator_json(std::ostream& out, const PropagatorTable& table);

// N,dt,value_re,value_im,reference_re,reference_im,rel_error
void write_convergence_csv(std::ostream& out, const ConvergenceTable& table);
void write_convergence_json(std::ostream& out, const ConvergenceTable& table);

void write_certificate_csv(std::ostream& out, const PositivityCertificate& cert);

}  // namespace schwinger::io
