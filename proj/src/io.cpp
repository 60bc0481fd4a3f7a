/**
 * Copyright 2026, the qrecover authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include "qrecover/io.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qrecover {

namespace {

using Json = nlohmann::json;

std::string escape(const std::string &s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
    case '"': out += "\\\""; break;
    case '\\': out += "\\\\"; break;
    case '\n': out += "\\n"; break;
    case '\t': out += "\\t"; break;
    default:
      if (static_cast<unsigned char>(c) < 0x20) {
        char buf[8];
        std::snprintf(buf, sizeof buf, "\\u%04x", c);
        out += buf;
      } else {
        out += c;
      }
    }
  }
  out += '"';
  return out;
}

// JSON value: finite reals as bare %.17g numbers, non-finite as strings.
std::string jreal(double v) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class T> std::string jint(T v) { return std::to_string(v); }

std::string jbool(bool v) { return v ? "true" : "false"; }

std::string jarr(const std::vector<std::string> &elements) {
  std::string out = "[";
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (i) out += ", ";
    out += elements[i];
  }
  out += "]";
  return out;
}

std::string jreal_array(const std::vector<double> &v) {
  std::vector<std::string> parts;
  parts.reserve(v.size());
  for (double x : v) parts.push_back(jreal(x));
  return jarr(parts);
}

std::string jint_array(const std::vector<int> &v) {
  std::vector<std::string> parts;
  parts.reserve(v.size());
  for (int x : v) parts.push_back(jint(x));
  return jarr(parts);
}

std::string jstr_array(const std::vector<std::string> &v) {
  std::vector<std::string> parts;
  parts.reserve(v.size());
  for (const auto &s : v) parts.push_back(escape(s));
  return jarr(parts);
}

// Row-major [re, im] pairs.
std::string jmatrix(const Matrix &m) {
  std::vector<std::string> parts;
  parts.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      parts.push_back("[" + jreal(m(r, c).real()) + ", " +
                      jreal(m(r, c).imag()) + "]");
  return jarr(parts);
}

// One field per line, fixed order, no nesting in the line structure.
class DocWriter {
public:
  void field(const std::string &key, const std::string &inline_value) {
    lines_.push_back("  " + escape(key) + ": " + inline_value);
  }
  std::string close() const {
    std::string out = "{\n";
    for (std::size_t i = 0; i < lines_.size(); ++i) {
      out += lines_[i];
      out += i + 1 < lines_.size() ? ",\n" : "\n";
    }
    out += "}\n";
    return out;
  }

private:
  std::vector<std::string> lines_;
};

double real_of(const Json &j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw IoError("unexpected string where a real was required: " + s);
  }
  if (!j.is_number()) throw IoError("expected a number");
  return j.get<double>();
}

Json parse_document(const std::string &text, const std::string &kind) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception &e) {
    throw IoError(std::string("malformed document: ") + e.what());
  }
  if (!j.is_object()) throw IoError("document is not an object");
  if (!j.contains("kind") || j.at("kind") != kind)
    throw IoError("expected a document of kind '" + kind + "'");
  return j;
}

std::vector<double> real_vector_of(const Json &j) {
  if (!j.is_array()) throw IoError("expected an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto &x : j) out.push_back(real_of(x));
  return out;
}

Matrix matrix_of(const Json &j, long long rows, long long cols) {
  if (!j.is_array() || static_cast<long long>(j.size()) != rows * cols)
    throw IoError("matrix entry count does not match the declared dims");
  Matrix m(rows, cols);
  long long k = 0;
  for (const auto &pair : j) {
    if (!pair.is_array() || pair.size() != 2)
      throw IoError("matrix entries must be [re, im] pairs");
    m(k / cols, k % cols) = Complex(real_of(pair[0]), real_of(pair[1]));
    ++k;
  }
  return m;
}

std::string inline_report(const InequalityReport &r) {
  std::ostringstream out;
  out << "{\"inequality\": " << escape(to_string(r.inequality))
      << ", \"map_variant\": " << escape(to_string(r.map_variant))
      << ", \"swivel_t\": " << jreal(r.swivel_t)
      << ", \"lhs\": " << jreal(r.lhs) << ", \"rhs\": " << jreal(r.rhs)
      << ", \"gap\": " << jreal(r.gap) << ", \"ratio\": " << jreal(r.ratio)
      << ", \"instance_seed\": " << jint(r.instance_seed)
      << ", \"instance_descriptor\": " << escape(r.instance_descriptor)
      << ", \"violation\": " << jbool(r.violation) << "}";
  return out.str();
}

InequalityReport report_of(const Json &j) {
  InequalityReport r;
  r.inequality = inequality_from_string(j.at("inequality").get<std::string>());
  r.map_variant = map_variant_from_string(j.at("map_variant").get<std::string>());
  r.swivel_t = real_of(j.at("swivel_t"));
  r.lhs = real_of(j.at("lhs"));
  r.rhs = real_of(j.at("rhs"));
  r.gap = real_of(j.at("gap"));
  r.ratio = real_of(j.at("ratio"));
  r.instance_seed = j.at("instance_seed").get<std::uint64_t>();
  r.instance_descriptor = j.at("instance_descriptor").get<std::string>();
  r.violation = j.at("violation").get<bool>();
  return r;
}

std::string csv_cell(const std::string &s) {
  std::string out = "\"";
  for (char c : s) {
    out += c;
    if (c == '"') out += '"';
  }
  out += '"';
  return out;
}

std::string csv_join(const std::vector<double> &v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ';';
    out += format_real(v[i]);
  }
  return out;
}

} // namespace

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string timestamp_utc() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string serialize(const MultipartiteState &rho,
                      const std::string &timestamp) {
  DocWriter doc;
  doc.field("version", "1");
  doc.field("kind", escape("state"));
  doc.field("timestamp", escape(timestamp));
  doc.field("labels", jstr_array(rho.layout.labels));
  doc.field("dims", jint_array(rho.layout.dims));
  doc.field("matrix", jmatrix(rho.matrix));
  return doc.close();
}

MultipartiteState parse_state(const std::string &text) {
  const Json j = parse_document(text, "state");
  std::vector<std::string> labels =
      j.at("labels").get<std::vector<std::string>>();
  std::vector<int> dims = j.at("dims").get<std::vector<int>>();
  SubsystemLayout layout(std::move(labels), std::move(dims));
  const long long n = layout.total_dim();
  return make_state(matrix_of(j.at("matrix"), n, n), std::move(layout));
}

std::string serialize(const Distribution &p, const std::string &timestamp) {
  DocWriter doc;
  doc.field("version", "1");
  doc.field("kind", escape("distribution"));
  doc.field("timestamp", escape(timestamp));
  doc.field("shape", jint_array(p.shape));
  std::vector<double> probs(p.probs.data(), p.probs.data() + p.probs.size());
  doc.field("probs", jreal_array(probs));
  return doc.close();
}

Distribution parse_distribution(const std::string &text) {
  const Json j = parse_document(text, "distribution");
  const std::vector<double> probs = real_vector_of(j.at("probs"));
  RealVector v(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i)
    v(static_cast<long long>(i)) = probs[i];
  return make_distribution(std::move(v), j.at("shape").get<std::vector<int>>());
}

std::string serialize(const ExtensionReport &report,
                      const std::string &timestamp) {
  DocWriter doc;
  doc.field("schema_version", "1");
  doc.field("kind", escape("extension_report"));
  doc.field("timestamp", escape(timestamp));
  doc.field("k", jint(report.k));
  doc.field("cmi_used", jreal(report.cmi_used));
  doc.field("theorem_bound", jreal(report.theorem_bound));
  doc.field("measured_bound", jreal(report.measured_bound));
  doc.field("symmetry_residual", jreal(report.symmetry_residual));
  doc.field("step_distances", jreal_array(report.step_distances));
  doc.field("marginal_distances", jreal_array(report.marginal_distances));
  return doc.close();
}

ExtensionReport parse_extension_report(const std::string &text) {
  const Json j = parse_document(text, "extension_report");
  ExtensionReport r;
  r.k = j.at("k").get<int>();
  r.cmi_used = real_of(j.at("cmi_used"));
  r.theorem_bound = real_of(j.at("theorem_bound"));
  r.measured_bound = real_of(j.at("measured_bound"));
  r.symmetry_residual = real_of(j.at("symmetry_residual"));
  r.step_distances = real_vector_of(j.at("step_distances"));
  r.marginal_distances = real_vector_of(j.at("marginal_distances"));
  return r;
}

std::string serialize(const InequalityReport &report,
                      const std::string &timestamp) {
  DocWriter doc;
  doc.field("schema_version", "1");
  doc.field("kind", escape("inequality_report"));
  doc.field("timestamp", escape(timestamp));
  doc.field("inequality", escape(to_string(report.inequality)));
  doc.field("map_variant", escape(to_string(report.map_variant)));
  doc.field("swivel_t", jreal(report.swivel_t));
  doc.field("lhs", jreal(report.lhs));
  doc.field("rhs", jreal(report.rhs));
  doc.field("gap", jreal(report.gap));
  doc.field("ratio", jreal(report.ratio));
  doc.field("instance_seed", jint(report.instance_seed));
  doc.field("instance_descriptor", escape(report.instance_descriptor));
  doc.field("violation", jbool(report.violation));
  return doc.close();
}

InequalityReport parse_inequality_report(const std::string &text) {
  return report_of(parse_document(text, "inequality_report"));
}

std::string serialize(const SearchResult &result, const std::string &timestamp) {
  DocWriter doc;
  doc.field("schema_version", "1");
  doc.field("kind", escape("search_summary"));
  doc.field("timestamp", escape(timestamp));
  doc.field("status", escape(result.status));
  doc.field("violations", jint(result.violations));
  doc.field("best", inline_report(result.best));
  std::vector<std::string> rows;
  rows.reserve(result.worst.size());
  for (const auto &r : result.worst) rows.push_back(inline_report(r));
  doc.field("worst", jarr(rows));
  return doc.close();
}

SearchResult parse_search_summary(const std::string &text) {
  const Json j = parse_document(text, "search_summary");
  SearchResult r;
  r.status = j.at("status").get<std::string>();
  r.violations = j.at("violations").get<long long>();
  r.best = report_of(j.at("best"));
  for (const auto &row : j.at("worst")) r.worst.push_back(report_of(row));
  return r;
}

std::string serialize(const MeasureEstimate &estimate,
                      const std::string &timestamp) {
  DocWriter doc;
  doc.field("schema_version", "1");
  doc.field("kind", escape("measure_estimate"));
  doc.field("timestamp", escape(timestamp));
  doc.field("value", jreal(estimate.value));
  doc.field("measure_kind",
            escape(estimate.kind == MeasureEstimate::Kind::upper_bound
                       ? "upper_bound"
                       : "heuristic_min"));
  doc.field("restarts", jint(estimate.restarts));
  doc.field("converged", jbool(estimate.converged));
  if (estimate.decomposition) {
    doc.field("decomposition_weights",
              jreal_array(estimate.decomposition->weights));
    std::vector<std::string> kets;
    kets.reserve(estimate.decomposition->kets.size());
    for (const auto &ket : estimate.decomposition->kets)
      kets.push_back(jmatrix(ket));
    doc.field("decomposition_kets", jarr(kets));
  }
  if (estimate.extension) {
    doc.field("extension_labels", jstr_array(estimate.extension->layout.labels));
    doc.field("extension_dims", jint_array(estimate.extension->layout.dims));
    doc.field("extension_matrix", jmatrix(estimate.extension->matrix));
  }
  return doc.close();
}

MeasureEstimate parse_measure_estimate(const std::string &text) {
  const Json j = parse_document(text, "measure_estimate");
  MeasureEstimate e;
  e.value = real_of(j.at("value"));
  const std::string kind = j.at("measure_kind").get<std::string>();
  if (kind == "upper_bound") e.kind = MeasureEstimate::Kind::upper_bound;
  else if (kind == "heuristic_min") e.kind = MeasureEstimate::Kind::heuristic_min;
  else throw IoError("unknown measure kind: " + kind);
  e.restarts = j.at("restarts").get<int>();
  e.converged = j.at("converged").get<bool>();
  if (j.contains("decomposition_weights")) {
    PureDecomposition dec;
    dec.weights = real_vector_of(j.at("decomposition_weights"));
    for (const auto &ket : j.at("decomposition_kets")) {
      const Matrix col = matrix_of(ket, static_cast<long long>(ket.size()), 1);
      dec.kets.push_back(col.col(0));
    }
    e.decomposition = std::move(dec);
  }
  if (j.contains("extension_matrix")) {
    SubsystemLayout layout(
        j.at("extension_labels").get<std::vector<std::string>>(),
        j.at("extension_dims").get<std::vector<int>>());
    const long long n = layout.total_dim();
    e.extension =
        make_state(matrix_of(j.at("extension_matrix"), n, n), std::move(layout));
  }
  return e;
}

std::string serialize(const ClassicalGapReport &report,
                      const std::string &timestamp) {
  DocWriter doc;
  doc.field("schema_version", "1");
  doc.field("kind", escape("classical_gap_report"));
  doc.field("timestamp", escape(timestamp));
  doc.field("d_pq", jreal(report.d_pq));
  doc.field("d_tp_tq", jreal(report.d_tp_tq));
  doc.field("lhs", jreal(report.lhs));
  doc.field("rhs", jreal(report.rhs));
  doc.field("gap", jreal(report.gap));
  doc.field("deterministic", jbool(report.deterministic));
  doc.field("equality", jbool(report.equality));
  doc.field("holds", jbool(report.holds));
  return doc.close();
}

ClassicalGapReport parse_classical_gap_report(const std::string &text) {
  const Json j = parse_document(text, "classical_gap_report");
  ClassicalGapReport r;
  r.d_pq = real_of(j.at("d_pq"));
  r.d_tp_tq = real_of(j.at("d_tp_tq"));
  r.lhs = real_of(j.at("lhs"));
  r.rhs = real_of(j.at("rhs"));
  r.gap = real_of(j.at("gap"));
  r.deterministic = j.at("deterministic").get<bool>();
  r.equality = j.at("equality").get<bool>();
  r.holds = j.at("holds").get<bool>();
  return r;
}

std::string to_string(FunctorialityAxiom axiom) {
  switch (axiom) {
  case FunctorialityAxiom::normalization: return "normalization";
  case FunctorialityAxiom::tensor: return "tensor";
  case FunctorialityAxiom::composition: return "composition";
  }
  throw DomainError("unknown axiom");
}

std::string serialize(const FunctorialityReport &report,
                      const std::string &timestamp) {
  DocWriter doc;
  doc.field("schema_version", "1");
  doc.field("kind", escape("functoriality_report"));
  doc.field("timestamp", escape(timestamp));
  doc.field("axiom", escape(to_string(report.axiom)));
  doc.field("deviation", jreal(report.deviation));
  doc.field("instances", jint(report.instances));
  doc.field("asserted", jbool(report.asserted));
  doc.field("holds", jbool(report.holds));
  return doc.close();
}

FunctorialityReport parse_functoriality_report(const std::string &text) {
  const Json j = parse_document(text, "functoriality_report");
  FunctorialityReport r;
  r.axiom = axiom_from_string(j.at("axiom").get<std::string>());
  r.deviation = real_of(j.at("deviation"));
  r.instances = j.at("instances").get<int>();
  r.asserted = j.at("asserted").get<bool>();
  r.holds = j.at("holds").get<bool>();
  return r;
}

std::string csv_header(const InequalityReport &) {
  return "inequality,map_variant,swivel_t,lhs,rhs,gap,ratio,instance_seed,"
         "instance_descriptor,violation";
}

std::string csv_row(const InequalityReport &report) {
  std::ostringstream out;
  out << csv_cell(to_string(report.inequality)) << ','
      << csv_cell(to_string(report.map_variant)) << ','
      << format_real(report.swivel_t) << ',' << format_real(report.lhs) << ','
      << format_real(report.rhs) << ',' << format_real(report.gap) << ','
      << format_real(report.ratio) << ',' << report.instance_seed << ','
      << csv_cell(report.instance_descriptor) << ','
      << (report.violation ? "true" : "false");
  return out.str();
}

std::string csv_header(const ExtensionReport &) {
  return "k,cmi_used,theorem_bound,measured_bound,symmetry_residual,"
         "step_distances,marginal_distances";
}

std::string csv_row(const ExtensionReport &report) {
  std::ostringstream out;
  out << report.k << ',' << format_real(report.cmi_used) << ','
      << format_real(report.theorem_bound) << ','
      << format_real(report.measured_bound) << ','
      << format_real(report.symmetry_residual) << ','
      << csv_cell(csv_join(report.step_distances)) << ','
      << csv_cell(csv_join(report.marginal_distances));
  return out.str();
}

std::string csv_header(const MeasureEstimate &) {
  return "value,measure_kind,restarts,converged";
}

std::string csv_row(const MeasureEstimate &estimate) {
  std::ostringstream out;
  out << format_real(estimate.value) << ','
      << (estimate.kind == MeasureEstimate::Kind::upper_bound ? "upper_bound"
                                                              : "heuristic_min")
      << ',' << estimate.restarts << ','
      << (estimate.converged ? "true" : "false");
  return out.str();
}

std::string read_text_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  if (in.bad()) throw IoError("read failure on " + path);
  return out.str();
}

void write_text_file(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write failure on " + path);
}

InequalityId inequality_from_string(const std::string &name) {
  for (InequalityId id :
       {InequalityId::fr_fidelity, InequalityId::kim, InequalityId::zhang,
        InequalityId::bsw, InequalityId::sbw, InequalityId::cmi_rel_ent,
        InequalityId::big_one, InequalityId::transpose_gap_quantum})
    if (to_string(id) == name) return id;
  throw DomainError("unknown inequality: " + name);
}

MapVariant map_variant_from_string(const std::string &name) {
  for (MapVariant v :
       {MapVariant::petz_t0, MapVariant::swivelled, MapVariant::best_scan})
    if (to_string(v) == name) return v;
  throw DomainError("unknown map variant: " + name);
}

FunctorialityAxiom axiom_from_string(const std::string &name) {
  for (FunctorialityAxiom a :
       {FunctorialityAxiom::normalization, FunctorialityAxiom::tensor,
        FunctorialityAxiom::composition})
    if (to_string(a) == name) return a;
  throw DomainError("unknown axiom: " + name);
}

} // namespace qrecover
