#include "qcmi/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "qcmi/error.hpp"

namespace qcmi {

namespace {

[[noreturn]] void fail(const std::string& message) { throw Error(ErrorKind::Parse, message); }

const Json& field(const Json& j, const char* name, const std::string& where) {
  if (!j.is_object()) fail(where + ": expected an object");
  auto it = j.find(name);
  if (it == j.end()) fail(where + ": missing field '" + name + "'");
  return *it;
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) fail(where + ": expected a number");
  return j.get<double>();
}

std::vector<double> numbers(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where + ": expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::vector<double>> rows(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where + ": expected an array of rows");
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(numbers(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

LabelSet labels_from(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where + ": expected an array of labels");
  LabelSet out;
  for (const auto& v : j) {
    if (!v.is_string()) fail(where + ": labels must be strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::vector<std::size_t> dims_from(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where + ": expected an array of dimensions");
  std::vector<std::size_t> out;
  for (const auto& v : j) {
    if (!v.is_number_unsigned() || v.get<std::size_t>() == 0) fail(where + ": dimensions must be positive integers");
    out.push_back(v.get<std::size_t>());
  }
  return out;
}

Json rows_json(const Matrix& m, bool imag) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(imag ? m(r, c).imag() : m(r, c).real());
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(source + ": " + e.what() + " (byte " + std::to_string(e.byte) + ")");
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Parse, path + ": cannot open file for writing");
  out << text;
}

Json matrix_to_json(const Matrix& m) { return Json{{"re", rows_json(m, false)}, {"im", rows_json(m, true)}}; }

Matrix matrix_from_json(const Json& j, const std::string& where) {
  const auto re = rows(field(j, "re", where), where + ".re");
  if (re.empty() || re.front().empty()) fail(where + ".re: empty matrix");
  std::vector<std::vector<double>> im;
  if (j.contains("im")) im = rows(j.at("im"), where + ".im");
  const std::size_t n = re.size(), m = re.front().size();
  Matrix out(n, m);
  for (std::size_t r = 0; r < n; ++r) {
    if (re[r].size() != m) fail(where + ".re: ragged rows");
    for (std::size_t c = 0; c < m; ++c) out(r, c) = re[r][c];
  }
  if (!im.empty()) {
    if (im.size() != n) fail(where + ".im: shape differs from re");
    for (std::size_t r = 0; r < n; ++r) {
      if (im[r].size() != m) fail(where + ".im: shape differs from re");
      for (std::size_t c = 0; c < m; ++c) out(r, c) += Complex(0.0, im[r][c]);
    }
  }
  return out;
}

LabeledState state_from_json(const Json& j) {
  const LabelSet labels = labels_from(field(j, "labels", "state"), "state.labels");
  const std::vector<std::size_t> dims = dims_from(field(j, "dims", "state"), "state.dims");
  if (labels.size() != dims.size()) fail("state: labels and dims differ in length");
  SubsystemLayout layout = [&] {
    try {
      return SubsystemLayout(labels, dims);
    } catch (const Error& e) {
      fail(std::string("state.labels: ") + e.what());
    }
  }();
  const std::size_t d = layout.total_dim();

  LabeledState s;
  if (j.contains("matrix")) {
    const Matrix m = matrix_from_json(j.at("matrix"), "state.matrix");
    if (m.rows() != d || m.cols() != d)
      fail("state.matrix: expected " + std::to_string(d) + "x" + std::to_string(d) + " for the given dims");
    s = LabeledState(std::move(layout), m);
  } else if (j.contains("vector")) {
    const Json& v = j.at("vector");
    const auto re = numbers(field(v, "re", "state.vector"), "state.vector.re");
    std::vector<double> im(re.size(), 0.0);
    if (v.contains("im")) im = numbers(v.at("im"), "state.vector.im");
    if (re.size() != d || im.size() != d) fail("state.vector: expected " + std::to_string(d) + " amplitudes");
    Matrix col(d, 1);
    double norm = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      col(i, 0) = Complex(re[i], im[i]);
      norm += std::norm(col(i, 0));
    }
    if (std::abs(std::sqrt(norm) - 1.0) > 1e-9)
      throw Error(ErrorKind::NotDensityMatrix, "state.vector: norm " + std::to_string(std::sqrt(norm)) + " is not 1 within 1e-9");
    s = LabeledState(std::move(layout), Matrix::projector(col));
  } else {
    fail("state: needs a 'matrix' or a 'vector' field");
  }
  require_valid(s);
  return s;
}

Json state_to_json(const LabeledState& s) {
  return Json{{"labels", s.labels()}, {"dims", s.layout().dims()}, {"matrix", matrix_to_json(s.matrix())}};
}

LabeledState load_state(const std::string& path) { return state_from_json(read_json_file(path)); }

OperatorSet operators_from_json(const Json& j) {
  OperatorSet out;
  out.target = labels_from(field(j, "target", "operators"), "operators.target");
  const Json& ops = field(j, "ops", "operators");
  if (!ops.is_array() || ops.empty()) fail("operators.ops: expected a non-empty array");
  for (std::size_t i = 0; i < ops.size(); ++i) out.ops.push_back(matrix_from_json(ops[i], "operators.ops[" + std::to_string(i) + "]"));
  const std::string kind = j.value("kind", "kraus");
  if (kind == "kraus") {
    out.kind = OperatorKind::Kraus;
  } else if (kind == "povm") {
    out.kind = OperatorKind::Povm;
  } else {
    fail("operators.kind: expected \"kraus\" or \"povm\", got \"" + kind + "\"");
  }
  return out;
}

Json operators_to_json(const OperatorSet& ops) {
  Json list = Json::array();
  for (const auto& m : ops.ops) list.push_back(matrix_to_json(m));
  return Json{{"target", ops.target}, {"ops", list}, {"kind", ops.kind == OperatorKind::Kraus ? "kraus" : "povm"}};
}

Json povm_to_json(const Povm& povm) { return operators_to_json({povm.target(), povm.effects(), OperatorKind::Povm}); }

KrausChannel to_channel(const OperatorSet& ops) {
  if (ops.kind != OperatorKind::Kraus) fail("operators: expected kind \"kraus\"");
  return KrausChannel(ops.ops, ops.target);
}

Povm to_povm(const OperatorSet& ops) {
  if (ops.kind != OperatorKind::Povm) fail("operators: expected kind \"povm\"");
  return Povm(ops.ops, ops.target);
}

Scenario scenario_from_json(const Json& j) {
  if (!j.is_object()) fail("scenario: expected an object");
  const Json& family = field(j, "family", "scenario");
  Scenario base;
  bool named = false;
  if (family.is_string()) {
    const std::string name = family.get<std::string>();
    if (name == "partial_swap") {
      base = partial_swap_scenario();
    } else if (name == "dephasing") {
      base = dephasing_scenario();
    } else if (name == "paper_example") {
      base = paper_example_scenario();
    } else {
      fail("scenario.family: unknown family \"" + name + "\"");
    }
    named = true;
  } else if (family.is_object() && family.contains("custom")) {
    const Json& list = family.at("custom");
    if (!list.is_array() || list.empty()) fail("scenario.family.custom: expected a non-empty array");
    std::vector<double> times;
    std::vector<Matrix> unitaries;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string where = "scenario.family.custom[" + std::to_string(i) + "]";
      times.push_back(number(field(list[i], "t", where), where + ".t"));
      unitaries.push_back(matrix_from_json(list[i], where));
    }
    base.family = tabulated_family(std::move(times), std::move(unitaries));
    base.family_name = "custom";
  } else {
    fail("scenario.family: expected a family name or {\"custom\": [...]}");
  }

  if (j.contains("initial_as")) {
    const Json& as = j.at("initial_as");
    if (as.is_string()) {
      const std::string spec = as.get<std::string>();
      if (spec.rfind("bell:", 0) != 0) fail("scenario.initial_as: expected a state or \"bell:d\"");
      std::size_t d = 0;
      try {
        d = std::stoul(spec.substr(5));
      } catch (const std::exception&) {
        fail("scenario.initial_as: bad dimension in \"" + spec + "\"");
      }
      if (d < 2) fail("scenario.initial_as: bell dimension must be at least 2");
      base.initial_as = maximally_entangled(d);
    } else {
      base.initial_as = state_from_json(as);
    }
  } else if (!named) {
    fail("scenario: missing field 'initial_as'");
  }
  if (j.contains("initial_env")) {
    base.initial_env = state_from_json(j.at("initial_env"));
  } else if (!named) {
    fail("scenario: missing field 'initial_env'");
  }
  if (base.initial_as.labels().size() != 2) fail("scenario.initial_as: expected two subsystems (ancilla, system)");
  return base;
}

}  // namespace qcmi
