#include "selfaffine/report.hpp"

#include <fstream>
#include <sstream>

namespace selfaffine {

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorKind::Malformed, what);
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) malformed("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) malformed(std::string("missing field \"") + key + "\"");
  return *it;
}

const Json& array(const Json& j, const char* what) {
  if (!j.is_array()) malformed(std::string(what) + " must be an array");
  return j;
}

template <class T, class Parse>
Matrix<T> matrix_from_json(const Json& j, Parse parse) {
  array(j, "matrix");
  const std::size_t rows = j.size();
  const std::size_t cols = rows == 0 ? 0 : array(j[0], "matrix row").size();
  Matrix<T> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (array(j[i], "matrix row").size() != cols)
      throw Error(ErrorKind::DimensionMismatch, "matrix rows differ in length");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = parse(j[i][k]);
  }
  return m;
}

template <class T>
Json matrix_to_json(const Matrix<T>& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    out.push_back(std::move(row));
  }
  return out;
}

template <class T>
Json vector_to_json(const std::vector<T>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

std::int64_t small_int(const Json& j, const char* what) {
  const Integer x = integer_from_json(j);
  if (!x.fits_slong_p())
    malformed(std::string(what) + " is out of range");
  return x.get_si();
}

std::size_t count(const Json& j, const char* what) {
  const std::int64_t x = small_int(j, what);
  if (x < 0 || x > 1000000) malformed(std::string(what) + " is out of range");
  return static_cast<std::size_t>(x);
}

}  // namespace

Json to_json(const Integer& x) { return x.get_str(); }
Json to_json(const Rational& x) { return x.get_str(); }
Json to_json(const IntVector& v) { return vector_to_json(v); }
Json to_json(const RatVector& v) { return vector_to_json(v); }
Json to_json(const IntMatrix& m) { return matrix_to_json(m); }
Json to_json(const RatMatrix& m) { return matrix_to_json(m); }

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
    return Integer(std::to_string(j.get<std::int64_t>()));
  }
  if (!j.is_string()) malformed("expected an integer or a decimal string");
  const std::string s = j.get<std::string>();
  Integer x;
  if (s.empty() || x.set_str(s, 10) != 0) malformed("bad integer \"" + s + "\"");
  return x;
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(integer_from_json(j));
  if (!j.is_string()) malformed("expected a rational string such as \"3/4\"");
  const std::string s = j.get<std::string>();
  Rational x;
  if (s.empty() || x.set_str(s, 10) != 0 || x.get_den() == 0)
    malformed("bad rational \"" + s + "\"");
  x.canonicalize();
  return x;
}

IntVector int_vector_from_json(const Json& j) {
  IntVector v;
  for (const auto& x : array(j, "vector")) v.push_back(integer_from_json(x));
  return v;
}

RatVector rat_vector_from_json(const Json& j) {
  RatVector v;
  for (const auto& x : array(j, "vector")) v.push_back(rational_from_json(x));
  return v;
}

IntMatrix int_matrix_from_json(const Json& j) {
  return matrix_from_json<Integer>(j, integer_from_json);
}

RatMatrix rat_matrix_from_json(const Json& j) {
  return matrix_from_json<Rational>(j, rational_from_json);
}

ProblemInstance parse_instance(const Json& j) {
  IntMatrix m = int_matrix_from_json(field(j, "matrix"));
  IntVector v = int_vector_from_json(field(j, "v"));
  const std::int64_t q = small_int(field(j, "q"), "q");
  return ProblemInstance(std::move(m), std::move(v), q);
}

ProblemInstance parse_instance_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    malformed(std::string("invalid JSON: ") + e.what());
  }
  return parse_instance(j);
}

ProblemInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) malformed("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance_text(buf.str());
}

Json to_json(const Frame& f) {
  return Json{{"basis", to_json(f.basis)},
              {"basis_inv", to_json(f.basis_inv)},
              {"reduced_dim", f.reduced_dim},
              {"reduced_matrix", to_json(f.reduced_matrix)},
              {"reduced_digit", to_json(f.reduced_digit)},
              {"companion_branch", f.companion_branch}};
}

Frame frame_from_json(const Json& j) {
  Frame f;
  f.basis = rat_matrix_from_json(field(j, "basis"));
  f.basis_inv = rat_matrix_from_json(field(j, "basis_inv"));
  f.reduced_dim = count(field(j, "reduced_dim"), "reduced_dim");
  f.reduced_matrix = int_matrix_from_json(field(j, "reduced_matrix"));
  f.reduced_digit = int_vector_from_json(field(j, "reduced_digit"));
  const Json& branch = field(j, "companion_branch");
  if (!branch.is_boolean()) malformed("companion_branch must be a boolean");
  f.companion_branch = branch.get<bool>();
  return f;
}

Json to_json(const Witness& w) {
  return Json{{"type", "witness"},
              {"alpha", to_json(w.alpha)},
              {"ell", w.ell},
              {"frame", to_json(w.frame)}};
}

Json to_json(const HadamardTriple& t) {
  Json digits = Json::array();
  for (const auto& d : t.digits) digits.push_back(to_json(d));
  Json duals = Json::array();
  for (const auto& s : t.duals) duals.push_back(to_json(s));
  return Json{{"type", "hadamard_triple"},
              {"m", to_json(t.m)},
              {"digits", std::move(digits)},
              {"duals", std::move(duals)},
              {"frame", to_json(t.frame)},
              {"unitary", t.unitary}};
}

Json to_json(const OrthogonalityCertificate& c) {
  return Json{{"lambda1", to_json(c.lambda1)},
              {"lambda2", to_json(c.lambda2)},
              {"j", c.j}};
}

Json to_json(const Conditions& c) {
  return Json{{"r", c.r},
              {"det_m1", to_json(c.det_m1)},
              {"gcd", to_json(c.gcd_q_detm1)},
              {"q_divides", c.q_divides_detm1},
              {"pure_power_c",
               c.pure_power_c ? to_json(*c.pure_power_c) : Json(nullptr)},
              {"companion_branch", c.companion_branch}};
}

namespace {

struct CertificateWriter {
  Json operator()(const ConditionOnly&) const { return nullptr; }
  Json operator()(const HadamardCertificate& c) const {
    Json j = to_json(c.triple);
    j["phases"] = to_json(c.phases);
    return j;
  }
  Json operator()(const WitnessCertificate& c) const { return to_json(c.witness); }
};

}  // namespace

Json to_json(const Certificate& c) { return std::visit(CertificateWriter{}, c); }

Certificate certificate_from_json(const Json& j) {
  if (j.is_null()) return ConditionOnly{};
  const Json& type = field(j, "type");
  if (type == "witness") {
    Witness w;
    w.alpha = rat_vector_from_json(field(j, "alpha"));
    w.ell = count(field(j, "ell"), "ell");
    w.frame = frame_from_json(field(j, "frame"));
    return WitnessCertificate{std::move(w)};
  }
  if (type == "hadamard_triple") {
    HadamardCertificate c;
    c.triple.m = int_matrix_from_json(field(j, "m"));
    for (const auto& d : array(field(j, "digits"), "digits"))
      c.triple.digits.push_back(int_vector_from_json(d));
    for (const auto& s : array(field(j, "duals"), "duals"))
      c.triple.duals.push_back(int_vector_from_json(s));
    c.triple.frame = frame_from_json(field(j, "frame"));
    // The stored flag is a claim; verification recomputes it.
    c.triple.unitary = false;
    c.phases = rat_matrix_from_json(field(j, "phases"));
    return c;
  }
  malformed("unknown certificate type");
}

Json to_json(const CliqueReport& r) {
  Json set = Json::array();
  for (const auto& f : r.witness_set) set.push_back(to_json(f));
  Json certs = Json::array();
  for (const auto& c : r.certificates) certs.push_back(to_json(c));
  return Json{{"kind", "lattice-restricted orthogonal clique (evidence, not a bound)"},
              {"lattice_denominator", r.lattice_denominator},
              {"box_radius", r.box_radius},
              {"j_max", r.j_max},
              {"candidates", r.candidates},
              {"max_clique_size", r.max_clique_size},
              {"witness_set", std::move(set)},
              {"certificates", std::move(certs)},
              {"certified", r.certified}};
}

Json to_json(const CompletenessReport& r) {
  Json probes = Json::array();
  for (const auto& p : r.probes) probes.push_back(to_json(p));
  return Json{{"kind", "Parseval completeness defect (numerical diagnostic)"},
              {"depth", r.depth},
              {"tail_eps", r.tail_eps},
              {"probes", std::move(probes)},
              {"defects", r.defects}};
}

Json make_report(const Classification& c, bool certificate_verified,
                 const ReportOptions& options) {
  Json theorems = Json::array();
  for (const auto& t : c.conditions.theorems) theorems.push_back(t);
  Json report{{"verdict", std::string(to_string(c.verdict))},
              {"conditions", to_json(c.conditions)},
              {"certificate", to_json(c.certificate)},
              {"theorems_applied", std::move(theorems)},
              {"timings_ms", options.timings_ms.value_or(Json::object())},
              {"certificate_verified", certificate_verified}};
  if (options.evidence) report["evidence"] = *options.evidence;
  return report;
}

}  // namespace selfaffine
