#include "selfaffine/cli.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "selfaffine/report.hpp"

namespace selfaffine {

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Malformed:
    case ErrorKind::DimensionMismatch:
      return 1;
    case ErrorKind::ZeroVector:
    case ErrorKind::NotExpanding:
    case ErrorKind::BadQ:
    case ErrorKind::NotDivisible:
    case ErrorKind::GcdOne:
    case ErrorKind::TooLarge:
    case ErrorKind::NonConvergent:
      return 2;
    default:
      return 3;
  }
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct CommonOptions {
  std::string input;
  bool json = false;
  bool human = false;
};

struct EvidenceOptions {
  std::int64_t box = 10;
  std::int64_t lattice_den = 1;
  std::optional<std::size_t> j_max;
  std::size_t cap = kDefaultCliqueCap;
  double tail_eps = kDefaultTailEps;
  std::size_t depth = 3;
};

template <class T>
std::string aligned(const Matrix<T>& m, const std::string& indent) {
  std::vector<std::string> cells(m.rows() * m.cols());
  std::size_t width = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      cells[i * m.cols() + j] = m(i, j).get_str();
      width = std::max(width, cells[i * m.cols() + j].size());
    }
  std::ostringstream os;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << indent << "[";
    for (std::size_t j = 0; j < m.cols(); ++j)
      os << (j ? " " : "") << std::setw(static_cast<int>(width))
         << cells[i * m.cols() + j];
    os << "]\n";
  }
  return os.str();
}

std::vector<Frequency> default_probes(std::size_t dim) {
  std::vector<Frequency> probes;
  for (int t = 0; t < 10; ++t)
    probes.emplace_back(dim, ratio(t, 20));
  return probes;
}

Frequency parse_frequency(const std::string& text, std::size_t dim) {
  Frequency xi;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) xi.push_back(rational_from_json(Json(item)));
  if (xi.size() != dim)
    throw Error(ErrorKind::DimensionMismatch,
                "frequency has " + std::to_string(xi.size()) +
                    " entries, expected " + std::to_string(dim));
  return xi;
}

std::size_t spectrum_j_max(const ProblemInstance& inst,
                           const std::vector<Frequency>& freqs) {
  std::size_t best = 1;
  Frequency delta(inst.dim());
  for (std::size_t a = 0; a < freqs.size(); ++a)
    for (std::size_t b = a + 1; b < freqs.size(); ++b) {
      for (std::size_t i = 0; i < delta.size(); ++i)
        delta[i] = freqs[a][i] - freqs[b][i];
      best = std::max(best, default_j_max(inst, delta));
    }
  return best;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::Malformed, "cannot write " + path);
  f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json clique_evidence(const ProblemInstance& inst, const EvidenceOptions& o) {
  return to_json(
      max_orthogonal_clique(inst, o.lattice_den, o.box, o.j_max, o.cap));
}

Json completeness_evidence(const ProblemInstance& inst, const Classification& c,
                           const EvidenceOptions& o) {
  const auto* cert = std::get_if<HadamardCertificate>(&c.certificate);
  if (!cert)
    return Json{{"kind", "Parseval completeness defect (numerical diagnostic)"},
                {"skipped", "no Hadamard triple, so no candidate spectrum"}};
  const CandidateSpectrum spectrum = candidate_spectrum(cert->triple, o.depth);
  return to_json(
      completeness_defect(inst, spectrum, default_probes(inst.dim()), o.tail_eps));
}

void print_classification(std::ostream& out, const Classification& c,
                          bool verified) {
  const Conditions& cond = c.conditions;
  out << "verdict: " << to_string(c.verdict) << "\n";
  out << "r: " << cond.r
      << (cond.companion_branch ? " (companion branch)" : " (block reduction)")
      << "\n";
  out << "det M1: " << cond.det_m1 << "\n";
  out << "gcd(q, det M1): " << cond.gcd_q_detm1 << "\n";
  out << "q divides det M1: " << (cond.q_divides_detm1 ? "true" : "false")
      << "\n";
  out << "char poly of M1: " << char_poly(c.m1) << "\n";
  out << "pure power c: "
      << (cond.pure_power_c ? cond.pure_power_c->get_str() : "none") << "\n";
  out << "rules applied:";
  for (const auto& t : cond.theorems) out << " " << t;
  out << "\n";
  if (const auto* h = std::get_if<HadamardCertificate>(&c.certificate)) {
    out << "certificate: hadamard triple, dual digits";
    for (const auto& s : h->triple.duals) out << " " << to_string(s);
    out << "\n";
  } else if (const auto* w = std::get_if<WitnessCertificate>(&c.certificate)) {
    out << "certificate: witness alpha = " << to_string(w->witness.alpha)
        << ", ell = " << w->witness.ell << "\n";
  } else {
    out << "certificate: none\n";
  }
  out << "certificate verified: " << (verified ? "true" : "false") << "\n";
}

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int operator()(const std::vector<std::string>& args) {
    CLI::App app{"Spectrality classifier for self-affine measures with "
                 "consecutive collinear digits",
                 "selfaffine"};
    app.require_subcommand(1);
    std::function<int()> action;

    add_classify(app, action);
    add_decompose(app, action);
    add_witness(app, action);
    add_hadamard(app, action);
    add_spectrum(app, action);
    add_clique(app, action);
    add_sample(app, action);
    add_mu_hat(app, action);
    add_verify(app, action);

    try {
      std::vector<std::string> reversed(args.rbegin(), args.rend());
      app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
      return app.exit(e, out_, err_) == 0 ? 0 : 1;
    }
    try {
      return action();
    } catch (const Error& e) {
      err_ << "error: " << e.what() << "\n";
      return exit_code(e.kind());
    } catch (const std::exception& e) {
      err_ << "internal error: " << e.what() << "\n";
      return 3;
    }
  }

 private:
  static void add_common(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--input,-i", o.input, "Instance JSON file")->required();
    auto* json = cmd->add_flag("--json", o.json, "JSON output");
    auto* human = cmd->add_flag("--human", o.human, "Text output (default)");
    json->excludes(human);
  }

  static void add_evidence_knobs(CLI::App* cmd, EvidenceOptions& o) {
    cmd->add_option("--box", o.box, "Clique box radius N")->capture_default_str();
    cmd->add_option("--lattice-den", o.lattice_den, "Clique lattice denominator L")
        ->capture_default_str();
    cmd->add_option("--jmax", o.j_max, "Largest factor index searched for zeros");
    cmd->add_option("--cap", o.cap, "Maximum number of clique candidates")
        ->capture_default_str();
    cmd->add_option("--tail-eps", o.tail_eps, "mu_hat truncation bound")
        ->capture_default_str();
  }

  void add_classify(CLI::App& app, std::function<int()>& action) {
    auto* cmd = app.add_subcommand("classify", "Classify an instance");
    add_common(cmd, common_);
    cmd->add_option("--report", report_path_, "Write the JSON report here");
    cmd->add_option("--evidence", evidence_, "none, clique or completeness")
        ->check(CLI::IsMember({"none", "clique", "completeness"}))
        ->capture_default_str();
    cmd->add_option("--depth", evidence_opts_.depth, "Candidate spectrum depth")
        ->capture_default_str();
    cmd->add_flag("--timings", timings_, "Record wall-clock timings");
    cmd->add_option("--verify-certificate", verify_path_,
                    "Re-verify an existing report instead of classifying");
    add_evidence_knobs(cmd, evidence_opts_);
    cmd->callback([&] {
      action = [this] { return verify_path_.empty() ? classify() : verify(verify_path_); };
    });
  }

  int classify() {
    const ProblemInstance inst = load_instance(common_.input);
    Json timings = Json::object();
    auto start = Clock::now();
    const Classification c = selfaffine::classify(inst);
    timings["classify"] = elapsed_ms(start);
    start = Clock::now();
    const bool verified = verify_certificate(inst, c.certificate);
    timings["verify"] = elapsed_ms(start);

    ReportOptions options;
    if (evidence_ != "none") {
      start = Clock::now();
      options.evidence = evidence_ == "clique"
                             ? Json{{"clique", clique_evidence(inst, evidence_opts_)}}
                             : Json{{"completeness",
                                     completeness_evidence(inst, c, evidence_opts_)}};
      timings["evidence"] = elapsed_ms(start);
    }
    if (timings_) options.timings_ms = timings;
    const Json report = make_report(c, verified, options);
    if (!report_path_.empty()) write_text(report_path_, dump(report));
    if (common_.json) {
      out_ << dump(report);
    } else {
      print_classification(out_, c, verified);
      if (options.evidence) out_ << "evidence: " << options.evidence->dump() << "\n";
    }
    return verified ? 0 : 3;
  }

  void add_decompose(CLI::App& app, std::function<int()>& action) {
    auto* cmd = app.add_subcommand("decompose", "Companion or block form of (M, v)");
    add_common(cmd, common_);
    cmd->callback([&] { action = [this] { return decompose(); }; });
  }

  int decompose() {
    const ProblemInstance inst = load_instance(common_.input);
    const std::size_t r = krylov(inst.matrix(), inst.digit_vector()).rank;
    if (r == inst.dim()) {
      const CompanionConjugation cc =
          companion_conjugate(inst.matrix(), inst.digit_vector());
      const IntPolynomial p = char_poly(inst.matrix());
      if (common_.json) {
        out_ << dump(Json{{"branch", "companion"},
                          {"r", r},
                          {"b", to_json(cc.b)},
                          {"m_tilde", to_json(cc.m_tilde)},
                          {"v_tilde", to_json(cc.v_tilde)},
                          {"char_poly", to_string(p)}});
      } else {
        out_ << "companion branch (r = n = " << r << ")\n";
        out_ << "char poly: " << p << "\n";
        out_ << "B:\n" << aligned(cc.b, "  ");
        out_ << "companion form:\n" << aligned(cc.m_tilde, "  ");
        out_ << "B^-1 v: " << to_string(cc.v_tilde) << "\n";
      }
      return 0;
    }
    const BlockDecomposition d = block_decompose(inst.matrix(), inst.digit_vector());
    if (common_.json) {
      out_ << dump(Json{{"branch", "block"},
                        {"r", d.r},
                        {"b", to_json(d.b)},
                        {"m1", to_json(d.m1)},
                        {"c", to_json(d.c)},
                        {"m2", to_json(d.m2)},
                        {"x", to_json(d.x)}});
    } else {
      out_ << "block reduction (r = " << d.r << " < n = " << inst.dim() << ")\n";
      out_ << "B:\n" << aligned(d.b, "  ");
      out_ << "M1:\n" << aligned(d.m1, "  ");
      out_ << "C:\n" << aligned(d.c, "  ");
      out_ << "M2:\n" << aligned(d.m2, "  ");
      out_ << "x: " << to_string(d.x) << "\n";
    }
    return 0;
  }

  void add_witness(CLI::App& app, std::function<int()>& action) {
    auto* cmd = app.add_subcommand("witness", "Infinite-orthogonality witness");
    add_common(cmd, common_);
    cmd->add_option("--family", family_, "Also list this many family members")
        ->capture_default_str();
    cmd->callback([&] { action = [this] { return witness(); }; });
  }

  int witness() {
    const ProblemInstance inst = load_instance(common_.input);
    const Witness w = construct_witness(inst);
    const bool ok = verify_witness(inst, w);
    const std::vector<Frequency> family =
        family_ ? witness_family(inst, w, family_) : std::vector<Frequency>{};
    if (common_.json) {
      Json j = to_json(w);
      j["verified"] = ok;
      Json fam = Json::array();
      for (const auto& f : family) fam.push_back(to_json(f));
      j["family"] = std::move(fam);
      out_ << dump(j);
    } else {
      out_ << "alpha: " << to_string(w.alpha) << "\n";
      out_ << "ell: " << w.ell << "\n";
      out_ << "verified: " << (ok ? "true" : "false") << "\n";
      for (const auto& f : family) out_ << "family: " << to_string(f) << "\n";
    }
    return ok ? 0 : 3;
  }

  void add_hadamard(CLI::App& app, std::function<int()>& action) {
    auto* cmd = app.add_subcommand("hadamard", "Hadamard triple when q | det M1");
    add_common(cmd, common_);
    cmd->callback([&] { action = [this] { return hadamard(); }; });
  }

  int hadamard() {
    const ProblemInstance inst = load_instance(common_.input);
    const Frame frame = spectral_frame(inst.matrix(), inst.digit_vector());
    const HadamardTriple t = construct_dual_digits(frame, inst.q());
    const PhaseMatrix phases = phase_matrix(t.m, t.digits, t.duals);
    if (common_.json) {
      Json j = to_json(t);
      j["phases"] = to_json(phases);
      out_ << dump(j);
    } else {
      out_ << "reduced matrix:\n" << aligned(t.m, "  ");
      out_ << "digits:";
      for (const auto& d : t.digits) out_ << " " << to_string(d);
      out_ << "\nduals:";
      for (const auto& s : t.duals) out_ << " " << to_string(s);
      out_ << "\nphases (mod 1):\n" << aligned(phases, "  ");
      out_ << "unitary: " << (t.unitary ? "true" : "false") << "\n";
    }
    return t.unitary ? 0 : 3;
  }

  void add_spectrum(CLI::App& app, std::function<int()>& action) {
    auto* cmd = app.add_subcommand("spectrum", "Candidate spectrum from the Hadamard triple");
    add_common(cmd, common_);
    spectrum_depth_ = 2;
    cmd->add_option("--depth", spectrum_depth_, "Number of digit levels")
        ->capture_default_str();
    cmd->add_option("--jmax", evidence_opts_.j_max, "Largest factor index searched");
    cmd->callback([&] { action = [this] { return spectrum(); }; });
  }

  int spectrum() {
    const ProblemInstance inst = load_instance(common_.input);
    const Frame frame = spectral_frame(inst.matrix(), inst.digit_vector());
    const HadamardTriple t = construct_dual_digits(frame, inst.q());
    const CandidateSpectrum s = candidate_spectrum(t, spectrum_depth_);
    const std::size_t j_max =
        evidence_opts_.j_max.value_or(spectrum_j_max(inst, s.frequencies));
    const PairwiseCertification cert = certify_pairwise(inst, s.frequencies, j_max);
    if (common_.json) {
      Json freqs = Json::array();
      for (const auto& f : s.frequencies) freqs.push_back(to_json(f));
      Json certs = Json::array();
      for (const auto& c : cert.certificates) certs.push_back(to_json(c));
      out_ << dump(Json{{"depth", s.depth},
                        {"frequencies", std::move(freqs)},
                        {"pairs", cert.pairs},
                        {"certified", cert.certified},
                        {"max_j", cert.max_j},
                        {"j_max", j_max},
                        {"certificates", std::move(certs)}});
    } else {
      out_ << "depth: " << s.depth << "\n";
      for (const auto& f : s.frequencies) out_ << "  " << to_string(f) << "\n";
      out_ << "certified pairs: " << cert.certified << "/" << cert.pairs
           << " (max j " << cert.max_j << ", searched up to " << j_max << ")\n";
    }
    return cert.all_certified() ? 0 : 3;
  }

  void add_clique(CLI::App& app, std::function<int()>& action) {
    auto* cmd = app.add_subcommand("clique", "Maximum orthogonal clique on a lattice box");
    add_common(cmd, common_);
    add_evidence_knobs(cmd, evidence_opts_);
    cmd->callback([&] { action = [this] { return clique(); }; });
  }

  int clique() {
    const ProblemInstance inst = load_instance(common_.input);
    const CliqueReport r = max_orthogonal_clique(
        inst, evidence_opts_.lattice_den, evidence_opts_.box, evidence_opts_.j_max,
        evidence_opts_.cap);
    if (common_.json) {
      out_ << dump(to_json(r));
    } else {
      out_ << "lattice: (1/" << r.lattice_denominator << ") Z^" << inst.dim()
           << ", box radius " << r.box_radius << ", " << r.candidates
           << " candidates, j_max " << r.j_max << "\n";
      out_ << "max clique size: " << r.max_clique_size
           << " (lattice-restricted evidence, not a bound)\n";
      for (const auto& f : r.witness_set) out_ << "  " << to_string(f) << "\n";
      out_ << "certified: " << (r.certified ? "true" : "false") << "\n";
    }
    return r.certified ? 0 : 3;
  }

  void add_sample(CLI::App& app, std::function<int()>& action) {
    auto* cmd = app.add_subcommand("sample", "Chaos-game samples of the attractor as CSV");
    cmd->add_option("--input,-i", common_.input, "Instance JSON file")->required();
    cmd->add_option("--iters", iters_, "Number of points")->capture_default_str();
    cmd->add_option("--seed", seed_, "RNG seed")->capture_default_str();
    cmd->add_option("--thin", thin_, "Keep every thin-th iterate")->capture_default_str();
    cmd->add_option("--output,-o", output_, "CSV file (default stdout)");
    cmd->callback([&] { action = [this] { return sample(); }; });
  }

  int sample() {
    const ProblemInstance inst = load_instance(common_.input);
    const AttractorSample s = chaos_game(inst, iters_, seed_, thin_);
    std::ostringstream csv;
    for (std::size_t i = 0; i < inst.dim(); ++i) csv << (i ? ",x" : "x") << i + 1;
    csv << "\n" << std::setprecision(12);
    for (const auto& p : s.points) {
      for (std::size_t i = 0; i < p.size(); ++i) csv << (i ? "," : "") << p[i];
      csv << "\n";
    }
    if (output_.empty())
      out_ << csv.str();
    else
      write_text(output_, csv.str());
    return 0;
  }

  void add_mu_hat(CLI::App& app, std::function<int()>& action) {
    auto* cmd = app.add_subcommand("mu-hat", "Fourier transform at a rational frequency");
    add_common(cmd, common_);
    cmd->add_option("--xi", xi_, "Comma-separated rationals, e.g. 1/2,0")->required();
    cmd->add_option("--tail-eps", evidence_opts_.tail_eps, "Truncation bound")
        ->capture_default_str();
    cmd->callback([&] { action = [this] { return mu_hat_cmd(); }; });
  }

  int mu_hat_cmd() {
    const ProblemInstance inst = load_instance(common_.input);
    const Frequency xi = parse_frequency(xi_, inst.dim());
    const MuHatValue v = mu_hat(inst, xi, evidence_opts_.tail_eps);
    if (common_.json) {
      out_ << dump(Json{{"xi", to_json(xi)},
                        {"re", v.value.real()},
                        {"im", v.value.imag()},
                        {"abs", std::abs(v.value)},
                        {"error_bound", v.error_bound},
                        {"factors", v.factors},
                        {"exact_zero", v.exact_zero}});
    } else {
      out_ << std::setprecision(12) << "mu_hat" << to_string(xi) << " = "
           << v.value.real() << (v.value.imag() < 0 ? " - " : " + ")
           << std::abs(v.value.imag()) << "i\n";
      out_ << "|mu_hat| = " << std::abs(v.value) << " +/- " << v.error_bound << "\n";
      out_ << "factors: " << v.factors
           << (v.exact_zero ? " (exact zero factor)" : "") << "\n";
    }
    return 0;
  }

  void add_verify(CLI::App& app, std::function<int()>& action) {
    auto* cmd = app.add_subcommand("verify", "Re-verify a report against its instance");
    add_common(cmd, common_);
    cmd->add_option("--report", report_path_, "Report JSON from classify")->required();
    cmd->callback([&] { action = [this] { return verify(report_path_); }; });
  }

  int verify(const std::string& path) {
    const ProblemInstance inst = load_instance(common_.input);
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Malformed, "cannot read " + path);
    Json report;
    try {
      report = Json::parse(in);
    } catch (const Json::parse_error& e) {
      throw Error(ErrorKind::Malformed, std::string("invalid JSON: ") + e.what());
    }
    if (!report.is_object() || !report.contains("certificate") ||
        !report.contains("verdict") || !report.contains("conditions"))
      throw Error(ErrorKind::Malformed, "report lacks verdict/conditions/certificate");
    const Certificate cert = certificate_from_json(report["certificate"]);
    const bool cert_ok = verify_certificate(inst, cert);
    const Classification fresh = selfaffine::classify(inst);
    const bool consistent = report["verdict"] == to_string(fresh.verdict) &&
                            report["conditions"] == to_json(fresh.conditions);
    if (common_.json) {
      out_ << dump(Json{{"certificate_verified", cert_ok},
                        {"verdict_consistent", consistent}});
    } else {
      out_ << "certificate_verified: " << (cert_ok ? "true" : "false") << "\n";
      out_ << "verdict_consistent: " << (consistent ? "true" : "false") << "\n";
    }
    return cert_ok && consistent ? 0 : 3;
  }

  std::ostream& out_;
  std::ostream& err_;
  CommonOptions common_;
  EvidenceOptions evidence_opts_;
  std::string report_path_;
  std::string verify_path_;
  std::string evidence_ = "none";
  bool timings_ = false;
  std::size_t family_ = 0;
  std::size_t spectrum_depth_ = 2;
  std::size_t iters_ = 100000;
  std::uint64_t seed_ = 0;
  std::size_t thin_ = 1;
  std::string output_;
  std::string xi_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  return Runner(out, err)(args);
}

}  // namespace selfaffine
