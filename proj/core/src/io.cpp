/* JSON serialization for every file schema. nlohmann/json stays private to
   this translation unit. */

#include "povmkit/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "povmkit/errors.hpp"

namespace povmkit {

namespace {

using nlohmann::json;

json complex_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const CMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.dim(); ++j) row.push_back(complex_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Complex complex_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ValidationError(where + ": complex numbers are [re, im] arrays");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

CMatrix matrix_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ValidationError(where + ": matrix must be a nonempty array of rows");
  const int dim = static_cast<int>(j.size());
  CMatrix m(dim);
  for (int i = 0; i < dim; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != dim)
      throw ValidationError(where + ": matrix is not square (row " + std::to_string(i) + ")");
    for (int c = 0; c < dim; ++c)
      m(i, c) = complex_from(j[i][c], where + "[" + std::to_string(i) + "][" +
                                          std::to_string(c) + "]");
  }
  if (!m.all_finite()) throw ValidationError(where + ": non-finite entry");
  return m;
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

const json& field(const json& j, const char* name) {
  const auto it = j.find(name);
  if (it == j.end()) throw ValidationError(std::string("missing field \"") + name + "\"");
  return *it;
}

int dim_field(const json& j) {
  const json& d = field(j, "dim");
  if (!d.is_number_integer() || d.get<int>() < 1)
    throw ValidationError("field \"dim\" must be a positive integer");
  return d.get<int>();
}

void check_dim(const CMatrix& m, int dim, const std::string& where) {
  if (m.dim() != dim)
    throw ValidationError(where + ": matrix dimension " + std::to_string(m.dim()) +
                          " disagrees with \"dim\" " + std::to_string(dim));
}

json povm_json(const DiscretePovm& a) {
  json out;
  out["dim"] = a.dim();
  json outcomes = json::array();
  for (int i = 0; i < a.size(); ++i)
    outcomes.push_back({{"label", a.label(i)}, {"matrix", matrix_json(a.effect(i).matrix())}});
  out["outcomes"] = std::move(outcomes);
  return out;
}

json markov_json(const MarkovMatrix& kappa) {
  json rows = json::array();
  for (int r = 0; r < kappa.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < kappa.cols(); ++c) row.push_back(kappa(r, c));
    rows.push_back(std::move(row));
  }
  return json{{"row_labels", kappa.row_labels()},
              {"col_labels", kappa.col_labels()},
              {"matrix", std::move(rows)}};
}

json bijection_json(const Bijection& b) {
  json out = json::array();
  for (const auto& [x, y] : b) out.push_back(json::array({x, y}));
  return out;
}

std::vector<std::pair<std::string, CMatrix>> outcomes_from(const json& j) {
  const int dim = dim_field(j);
  const json& outcomes = field(j, "outcomes");
  if (!outcomes.is_array() || outcomes.empty())
    throw ValidationError("field \"outcomes\" must be a nonempty array");
  std::vector<std::pair<std::string, CMatrix>> out;
  out.reserve(outcomes.size());
  for (size_t i = 0; i < outcomes.size(); ++i) {
    const json& o = outcomes[i];
    const std::string where = "outcomes[" + std::to_string(i) + "]";
    const json& label = field(o, "label");
    if (!label.is_string()) throw ValidationError(where + ": \"label\" must be a string");
    CMatrix m = matrix_from(field(o, "matrix"), where + ".matrix");
    check_dim(m, dim, where);
    out.emplace_back(label.get<std::string>(), std::move(m));
  }
  return out;
}

}  // namespace

std::string povm_to_json(const DiscretePovm& a) { return povm_json(a).dump(2); }

std::vector<std::pair<std::string, CMatrix>> povm_outcomes_from_json(const std::string& text) {
  return outcomes_from(parse_text(text));
}

DiscretePovm povm_from_json(const std::string& text, const Tolerances& tol) {
  return DiscretePovm(outcomes_from(parse_text(text)), tol);
}

std::string density_to_json(const DensityMatrix& rho) {
  return json{{"dim", rho.dim()}, {"matrix", matrix_json(rho.matrix().matrix())}}.dump(2);
}

DensityMatrix density_from_json(const std::string& text, const Tolerances& tol) {
  const json j = parse_text(text);
  const int dim = dim_field(j);
  CMatrix m = matrix_from(field(j, "matrix"), "matrix");
  check_dim(m, dim, "state");
  return DensityMatrix(HermitianMatrix(m, tol.herm), tol);
}

std::string markov_to_json(const MarkovMatrix& kappa) { return markov_json(kappa).dump(2); }

MarkovMatrix markov_from_json(const std::string& text) {
  const json j = parse_text(text);
  const json& rl = field(j, "row_labels");
  const json& cl = field(j, "col_labels");
  const json& m = field(j, "matrix");
  if (!rl.is_array() || !cl.is_array() || !m.is_array())
    throw ValidationError("Markov schema needs row_labels, col_labels and matrix arrays");
  std::vector<std::string> row_labels, col_labels;
  for (const auto& v : rl) row_labels.push_back(v.get<std::string>());
  for (const auto& v : cl) col_labels.push_back(v.get<std::string>());
  if (m.size() != row_labels.size())
    throw ValidationError("Markov matrix row count disagrees with row_labels");
  std::vector<double> entries;
  entries.reserve(row_labels.size() * col_labels.size());
  for (const auto& row : m) {
    if (!row.is_array() || row.size() != col_labels.size())
      throw ValidationError("Markov matrix row length disagrees with col_labels");
    for (const auto& v : row) {
      if (!v.is_number()) throw ValidationError("Markov matrix entries must be numbers");
      entries.push_back(v.get<double>());
    }
  }
  return MarkovMatrix(std::move(row_labels), std::move(col_labels), std::move(entries));
}

std::string ensemble_to_json(const StateEnsemble& e) {
  json states = json::array();
  for (const auto& s : e.states()) states.push_back(matrix_json(s.matrix().matrix()));
  return json{{"dim", e.dim()},
              {"weights", e.weights()},
              {"states", std::move(states)},
              {"pivotal", matrix_json(e.pivotal().matrix().matrix())}}
      .dump(2);
}

StateEnsemble ensemble_from_json(const std::string& text, const Tolerances& tol) {
  const json j = parse_text(text);
  const int dim = dim_field(j);
  const json& ws = field(j, "weights");
  const json& ss = field(j, "states");
  if (!ws.is_array() || !ss.is_array() || ws.size() != ss.size() || ws.empty())
    throw ValidationError("ensemble needs matching nonempty weights and states arrays");
  std::vector<double> weights;
  for (const auto& w : ws) weights.push_back(w.get<double>());
  std::vector<DensityMatrix> states;
  for (size_t i = 0; i < ss.size(); ++i) {
    CMatrix m = matrix_from(ss[i], "states[" + std::to_string(i) + "]");
    check_dim(m, dim, "states[" + std::to_string(i) + "]");
    states.emplace_back(HermitianMatrix(m, tol.herm), tol);
  }
  StateEnsemble e(std::move(states), std::move(weights), tol);
  // The stored pivotal must match the recomputed mixture.
  const CMatrix stored = matrix_from(field(j, "pivotal"), "pivotal");
  check_dim(stored, dim, "pivotal");
  if (frobenius_distance(stored, e.pivotal().matrix().matrix()) > 1e-9)
    throw ValidationError("pivotal deviates from the weighted state mixture");
  return e;
}

std::string instrument_to_json(const KrausInstrument& inst) {
  json outcomes = json::array();
  for (int x = 0; x < inst.size(); ++x) {
    json ops = json::array();
    for (const auto& k : inst.kraus(x)) ops.push_back(matrix_json(k));
    outcomes.push_back({{"label", inst.label(x)}, {"kraus", std::move(ops)}});
  }
  return json{{"dim", inst.dim()}, {"outcomes", std::move(outcomes)}}.dump(2);
}

KrausInstrument instrument_from_json(const std::string& text, const Tolerances& tol) {
  const json j = parse_text(text);
  const int dim = dim_field(j);
  const json& outcomes = field(j, "outcomes");
  if (!outcomes.is_array() || outcomes.empty())
    throw ValidationError("field \"outcomes\" must be a nonempty array");
  std::vector<std::pair<std::string, std::vector<CMatrix>>> parsed;
  for (size_t i = 0; i < outcomes.size(); ++i) {
    const json& o = outcomes[i];
    const std::string where = "outcomes[" + std::to_string(i) + "]";
    const json& label = field(o, "label");
    if (!label.is_string()) throw ValidationError(where + ": \"label\" must be a string");
    const json& ops = field(o, "kraus");
    if (!ops.is_array()) throw ValidationError(where + ": \"kraus\" must be an array");
    std::vector<CMatrix> kraus;
    for (size_t k = 0; k < ops.size(); ++k) {
      CMatrix m = matrix_from(ops[k], where + ".kraus[" + std::to_string(k) + "]");
      check_dim(m, dim, where + ".kraus[" + std::to_string(k) + "]");
      kraus.push_back(std::move(m));
    }
    parsed.emplace_back(label.get<std::string>(), std::move(kraus));
  }
  return KrausInstrument(std::move(parsed), tol);
}

std::string reduction_report_to_json(const ReductionReport& report) {
  json out;
  out["groups"] = report.groups;
  out["dropped"] = report.dropped;
  out["reduced"] = report.reduced ? povm_json(*report.reduced) : json(nullptr);
  out["h"] = report.h;
  return out.dump(2);
}

std::string order_verdict_to_json(const OrderVerdict& v) {
  json out;
  out["holds"] = v.holds;
  out["borderline"] = v.borderline;
  out["residual"] = v.residual;
  out["witness"] = v.witness ? markov_json(*v.witness) : json(nullptr);
  return out.dump(2);
}

std::string equivalence_verdict_to_json(const EquivalenceVerdict& v) {
  json out;
  out["equivalent"] = v.equivalent;
  out["borderline"] = v.borderline;
  out["method"] = v.method == EquivMethod::lp ? "lp" : "reduce";
  out["forward"] = v.forward ? markov_json(*v.forward) : json(nullptr);
  out["backward"] = v.backward ? markov_json(*v.backward) : json(nullptr);
  out["bijection"] = v.bijection ? bijection_json(*v.bijection) : json(nullptr);
  return out.dump(2);
}

std::string conservation_verdict_to_json(const ConservationVerdict& v) {
  json c1;
  c1["holds_for_projection"] = v.condition1.holds_for_projection;
  c1["exhaustive_search"] = v.condition1.exhaustive_search
                                ? json(*v.condition1.exhaustive_search)
                                : json("not attempted");
  json out;
  out["condition1"] = std::move(c1);
  out["condition2"] = v.condition2;
  out["bijection"] = v.reduce_bijection ? bijection_json(*v.reduce_bijection) : json(nullptr);
  out["lp_forward"] = v.lp_forward ? markov_json(*v.lp_forward) : json(nullptr);
  out["lp_backward"] = v.lp_backward ? markov_json(*v.lp_backward) : json(nullptr);
  return out.dump(2);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file \"" + path + "\"");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace povmkit
