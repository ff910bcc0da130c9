#ifndef POVMKIT_IO_HPP
#define POVMKIT_IO_HPP

#include <string>
#include <utility>
#include <vector>

#include "povmkit/fuzzy_order.hpp"
#include "povmkit/instruments.hpp"
#include "povmkit/markov.hpp"
#include "povmkit/povm.hpp"
#include "povmkit/reduction.hpp"

namespace povmkit {

/* JSON schemas (complex numbers are [re, im] two-element arrays):
     POVM        {"dim": d, "outcomes": [{"label": str, "matrix": [[[re,im],...],...]}]}
     state       {"dim": d, "matrix": [...]}
     Markov      {"row_labels": [...], "col_labels": [...], "matrix": [[...],...]}
     ensemble    {"dim": d, "weights": [...], "states": [...], "pivotal": [...]}
     instrument  {"dim": d, "outcomes": [{"label": str, "kraus": [matrix,...]}]}
   Serialization is deterministic: sorted keys, shortest round-trip floats. */

std::string povm_to_json(const DiscretePovm& a);
DiscretePovm povm_from_json(const std::string& text, const Tolerances& tol = {});
// Schema parse only, axioms unchecked: feeds check_povm for diagnostics.
std::vector<std::pair<std::string, CMatrix>> povm_outcomes_from_json(const std::string& text);

std::string density_to_json(const DensityMatrix& rho);
DensityMatrix density_from_json(const std::string& text, const Tolerances& tol = {});

std::string markov_to_json(const MarkovMatrix& kappa);
MarkovMatrix markov_from_json(const std::string& text);

std::string ensemble_to_json(const StateEnsemble& e);
StateEnsemble ensemble_from_json(const std::string& text, const Tolerances& tol = {});

std::string instrument_to_json(const KrausInstrument& inst);
KrausInstrument instrument_from_json(const std::string& text, const Tolerances& tol = {});

std::string reduction_report_to_json(const ReductionReport& report);
std::string order_verdict_to_json(const OrderVerdict& v);
std::string equivalence_verdict_to_json(const EquivalenceVerdict& v);
std::string conservation_verdict_to_json(const ConservationVerdict& v);

std::string read_file(const std::string& path);

}  // namespace povmkit

#endif
