#include "slct/report.hpp"

#include "slct/euler_expr.hpp"

#include <charconv>
#include <cstdio>
#include <map>
#include <sstream>

namespace slct {

std::string format_double(double v) {
  // 17 significant digits round-trip IEEE doubles exactly; trim to the
  // shortest form that still parses back bit-identically.
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == v) break;
  }
  return buf;
}

namespace {

std::string fmt_window(const Window& w) {
  return "(" + format_double(w.lambda_minus) + "," + format_double(w.lambda_plus) + "," +
         format_double(w.epsilon) + ")";
}

const char* fmt_bool(bool b) { return b ? "true" : "false"; }

class Writer {
public:
  void kv(const std::string& key, const std::string& value) {
    out_ << key << " = " << value << "\n";
  }
  void kv(const std::string& key, double value) { kv(key, format_double(value)); }
  void kv(const std::string& key, int value) { kv(key, std::to_string(value)); }
  void kv(const std::string& key, bool value) { kv(key, std::string(fmt_bool(value))); }

  void spectral(const std::string& prefix, const SpectralData& data) {
    kv(prefix + ".mode", to_string(data.mode));
    kv(prefix + ".dim", data.dim);
    std::ostringstream ev;
    ev << "[";
    for (const auto& [value, mult] : data.eigenvalues)
      ev << " (" << format_double(value) << "," << mult << ")";
    ev << " ]";
    kv(prefix + ".eigenvalues", ev.str());
    kv(prefix + ".kernel_dim", data.kernel_dim);
    kv(prefix + ".extra_kernel_dim", data.extra_kernel_dim);
    kv(prefix + ".morse_index", data.morse_index);
    std::ostringstream bs;
    bs << "[";
    for (const auto& [beta, mult] : data.betas)
      bs << " (" << format_double(beta) << "," << mult << ")";
    bs << " ]";
    kv(prefix + ".betas", bs.str());
  }

  std::string str() const { return out_.str(); }

private:
  std::ostringstream out_;
};

}  // namespace

std::string AnalysisReport::serialize() const {
  Writer w;
  w.kv("slct-report", 1);
  w.kv("case", case_name);
  w.kv("problem", problem);
  w.kv("mode", to_string(mode));
  w.kv("exit_code", exit_code);

  w.kv("orbit.n", orbit.n);
  std::ostringstream coords;
  coords << "[";
  for (int i = 0; i < orbit.coords.size(); ++i) coords << " " << format_double(orbit.coords[i]);
  coords << " ]";
  w.kv("orbit.coords", coords.str());
  w.kv("orbit.value", orbit.value);
  w.kv("orbit.grad_norm", orbit.grad_norm);
  w.kv("orbit.com_zero", orbit.com_zero);

  w.spectral("spectral.ambient", spectral_ambient);
  w.spectral("spectral.com_reduced", spectral_reduced);

  w.kv("isolation.slice_radius", isolation.slice_radius);
  w.kv("isolation.samples", isolation.samples);
  w.kv("isolation.min_grad_norm", isolation.min_grad_norm_on_annulus);
  w.kv("isolation.verdict",
       std::string(isolation.verdict == IsolationReport::Verdict::isolated_on_slice
                       ? "isolated_on_slice"
                       : "inconclusive"));

  w.kv("hypotheses.minimal", hypotheses.minimal);
  w.kv("hypotheses.isolated", hypotheses.isolated);
  w.kv("hypotheses.free_action", hypotheses.free_action);
  w.kv("hypotheses.positive_spectrum", hypotheses.positive_spectrum);
  w.kv("hypotheses.all", hypotheses.all());

  if (resonance) {
    const auto& r = *resonance;
    w.kv("resonance.lambda_max", r.lambda_max);
    std::ostringstream ls;
    ls << "[";
    for (const auto& p : r.lambda_points) {
      ls << " " << format_double(p.value) << "@";
      for (size_t i = 0; i < p.provenance.size(); ++i) {
        if (i) ls << ";";
        ls << p.provenance[i].first << "/" << p.provenance[i].second;
      }
    }
    ls << " ]";
    w.kv("resonance.lambda_set", ls.str());
    std::ostringstream adm;
    adm << "[";
    for (int j : r.admissibility.admissible) adm << " " << j;
    adm << " ]";
    w.kv("resonance.admissible", adm.str());
    std::ostringstream rej;
    rej << "[";
    for (const auto& [j0, diag] : r.admissibility.rejections)
      rej << " (" << j0 << "," << diag.j << "," << format_double(diag.ratio) << ","
          << diag.nearest << ")";
    rej << " ]";
    w.kv("resonance.rejections", rej.str());
    std::ostringstream ratios;
    ratios << "[";
    for (int i = 0; i < r.admissibility.ratios.rows(); ++i) {
      ratios << " (";
      for (int j = 0; j < r.admissibility.ratios.cols(); ++j) {
        if (j) ratios << ",";
        ratios << format_double(r.admissibility.ratios(i, j));
      }
      ratios << ")";
    }
    ratios << " ]";
    w.kv("resonance.ratios", ratios.str());
    for (size_t b = 0; b < r.branches.size(); ++b) {
      const auto& br = r.branches[b];
      const std::string p = "resonance.branch." + std::to_string(b + 1);
      w.kv(p + ".j0", br.j0);
      w.kv(p + ".lambda0", br.lambda0);
      w.kv(p + ".window", fmt_window(br.window));
      w.kv(p + ".period", br.predicted_period);
      w.kv(p + ".minimal_period_guaranteed", br.minimal_period.guaranteed);
      w.kv(p + ".minimal_period_k_checked", br.minimal_period.k_checked);
    }
  }

  for (size_t c = 0; c < certificates.size(); ++c) {
    const auto& cert = certificates[c];
    const std::string p = "certificate." + std::to_string(c + 1);
    w.kv(p + ".j0", cert.j0);
    w.kv(p + ".beta", cert.beta);
    w.kv(p + ".window", fmt_window(cert.window));
    w.kv(p + ".n0", cert.n0);
    w.kv(p + ".margin", cert.margin);
    w.kv(p + ".r_minus", cert.r_minus);
    w.kv(p + ".r_plus", cert.r_plus);
    w.kv(p + ".dim_extra_kernel", cert.dim_extra_kernel);
    w.kv(p + ".chi_minus", cert.chi_minus.str());
    w.kv(p + ".chi_plus", cert.chi_plus.str());
    w.kv(p + ".shared_factor", cert.shared_factor.str());
    w.kv(p + ".changed", cert.changed);
  }

  for (size_t f = 0; f < families.size(); ++f) {
    const auto& fam = families[f];
    const std::string p = "family." + std::to_string(f + 1);
    w.kv(p + ".j0", fam.j0);
    w.kv(p + ".branch", fam.branch);
    w.kv(p + ".lambda_quadratic_coeff", fam.lambda_quadratic_coeff);
    if (!fam.truncation_note.empty()) w.kv(p + ".truncated", fam.truncation_note);
    std::ostringstream rows;
    rows << "[";
    for (const auto& row : fam.rows)
      rows << " (" << format_double(row.amplitude) << "," << format_double(row.lambda) << ","
           << format_double(row.period) << "," << format_double(row.residual) << ","
           << format_double(row.closure_error) << "," << format_double(row.dist_to_orbit) << ","
           << fmt_bool(row.minimal_period_ok) << ")";
    rows << " ]";
    w.kv(p + ".rows", rows.str());
  }

  for (size_t i = 0; i < warnings.size(); ++i)
    w.kv("warning." + std::to_string(i + 1), warnings[i]);
  return w.str();
}

namespace {

class Reader {
public:
  explicit Reader(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      const auto eq = line.find(" = ");
      if (eq == std::string::npos)
        fail(ErrorCode::parse, "report line " + std::to_string(lineno) + ": expected 'key = value'");
      entries_[line.substr(0, eq)] = line.substr(eq + 3);
    }
  }

  bool has(const std::string& key) const { return entries_.count(key) > 0; }

  const std::string& str(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) fail(ErrorCode::parse, "report is missing key '" + key + "'");
    return it->second;
  }

  double num(const std::string& key) const {
    const auto& s = str(key);
    try {
      return std::stod(s);
    } catch (const std::logic_error&) {
      fail(ErrorCode::parse, "report key '" + key + "' is not a number: " + s);
    }
  }

  int integer(const std::string& key) const { return static_cast<int>(num(key)); }

  bool boolean(const std::string& key) const {
    const auto& s = str(key);
    if (s == "true") return true;
    if (s == "false") return false;
    fail(ErrorCode::parse, "report key '" + key + "' is not a boolean: " + s);
  }

  /// Tokens inside "[ ... ]".
  std::vector<std::string> list(const std::string& key) const {
    const auto& s = str(key);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
      fail(ErrorCode::parse, "report key '" + key + "' is not a list: " + s);
    std::istringstream in(s.substr(1, s.size() - 2));
    std::vector<std::string> tokens;
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    return tokens;
  }

private:
  std::map<std::string, std::string> entries_;
};

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::vector<std::string> tuple_fields(const std::string& token, const std::string& what) {
  if (token.size() < 2 || token.front() != '(' || token.back() != ')')
    fail(ErrorCode::parse, "malformed " + what + " entry: " + token);
  return split_on(token.substr(1, token.size() - 2), ',');
}

double to_num(const std::string& s) { return std::stod(s); }

bool to_bool(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  fail(ErrorCode::parse, "expected a boolean, got: " + s);
}

Window parse_window(const std::string& token) {
  const auto f = tuple_fields(token, "window");
  if (f.size() != 3) fail(ErrorCode::parse, "window needs three fields: " + token);
  return Window{to_num(f[0]), to_num(f[1]), to_num(f[2])};
}

SpectralData parse_spectral(const Reader& r, const std::string& prefix) {
  SpectralData d;
  d.mode = spectral_mode_from_string(r.str(prefix + ".mode"));
  d.dim = r.integer(prefix + ".dim");
  for (const auto& tok : r.list(prefix + ".eigenvalues")) {
    const auto f = tuple_fields(tok, "eigenvalue");
    d.eigenvalues.emplace_back(to_num(f.at(0)), static_cast<int>(to_num(f.at(1))));
  }
  d.kernel_dim = r.integer(prefix + ".kernel_dim");
  d.extra_kernel_dim = r.integer(prefix + ".extra_kernel_dim");
  d.morse_index = r.integer(prefix + ".morse_index");
  for (const auto& tok : r.list(prefix + ".betas")) {
    const auto f = tuple_fields(tok, "beta");
    d.betas.emplace_back(to_num(f.at(0)), static_cast<int>(to_num(f.at(1))));
  }
  return d;
}

}  // namespace

AnalysisReport AnalysisReport::parse(const std::string& text) {
  Reader r(text);
  if (r.integer("slct-report") != 1)
    fail(ErrorCode::parse, "unsupported report version");

  AnalysisReport rep;
  rep.case_name = r.str("case");
  rep.problem = r.str("problem");
  rep.mode = spectral_mode_from_string(r.str("mode"));
  rep.exit_code = r.integer("exit_code");

  rep.orbit.n = r.integer("orbit.n");
  const auto coord_toks = r.list("orbit.coords");
  rep.orbit.coords = Vector(coord_toks.size());
  for (size_t i = 0; i < coord_toks.size(); ++i) rep.orbit.coords[i] = to_num(coord_toks[i]);
  rep.orbit.value = r.num("orbit.value");
  rep.orbit.grad_norm = r.num("orbit.grad_norm");
  rep.orbit.com_zero = r.boolean("orbit.com_zero");

  rep.spectral_ambient = parse_spectral(r, "spectral.ambient");
  rep.spectral_reduced = parse_spectral(r, "spectral.com_reduced");

  rep.isolation.slice_radius = r.num("isolation.slice_radius");
  rep.isolation.samples = r.integer("isolation.samples");
  rep.isolation.min_grad_norm_on_annulus = r.num("isolation.min_grad_norm");
  rep.isolation.verdict = r.str("isolation.verdict") == "isolated_on_slice"
                              ? IsolationReport::Verdict::isolated_on_slice
                              : IsolationReport::Verdict::inconclusive;

  rep.hypotheses.minimal = r.boolean("hypotheses.minimal");
  rep.hypotheses.isolated = r.boolean("hypotheses.isolated");
  rep.hypotheses.free_action = r.boolean("hypotheses.free_action");
  rep.hypotheses.positive_spectrum = r.boolean("hypotheses.positive_spectrum");

  if (r.has("resonance.lambda_max")) {
    ResonanceReport res;
    res.betas = rep.mode == SpectralMode::ambient ? rep.spectral_ambient.betas
                                                  : rep.spectral_reduced.betas;
    res.lambda_max = r.num("resonance.lambda_max");
    for (const auto& tok : r.list("resonance.lambda_set")) {
      const auto at = tok.find('@');
      if (at == std::string::npos)
        fail(ErrorCode::parse, "malformed lambda_set entry: " + tok);
      LambdaPoint p;
      p.value = to_num(tok.substr(0, at));
      for (const auto& prov : split_on(tok.substr(at + 1), ';')) {
        const auto kj = split_on(prov, '/');
        if (kj.size() != 2) fail(ErrorCode::parse, "malformed provenance: " + prov);
        p.provenance.emplace_back(static_cast<int>(to_num(kj[0])),
                                  static_cast<int>(to_num(kj[1])));
      }
      res.lambda_points.push_back(std::move(p));
    }
    for (const auto& tok : r.list("resonance.admissible"))
      res.admissibility.admissible.push_back(static_cast<int>(to_num(tok)));
    for (const auto& tok : r.list("resonance.rejections")) {
      const auto f = tuple_fields(tok, "rejection");
      if (f.size() != 4) fail(ErrorCode::parse, "malformed rejection: " + tok);
      res.admissibility.rejections.emplace_back(
          static_cast<int>(to_num(f[0])),
          RatioDiagnostic{static_cast<int>(to_num(f[1])), to_num(f[2]),
                          static_cast<int>(to_num(f[3]))});
    }
    const auto ratio_rows = r.list("resonance.ratios");
    if (!ratio_rows.empty()) {
      const auto first = tuple_fields(ratio_rows[0], "ratios row");
      res.admissibility.ratios = Matrix(ratio_rows.size(), first.size());
      for (size_t i = 0; i < ratio_rows.size(); ++i) {
        const auto f = tuple_fields(ratio_rows[i], "ratios row");
        for (size_t j = 0; j < f.size(); ++j) res.admissibility.ratios(i, j) = to_num(f[j]);
      }
    }
    for (int b = 1; r.has("resonance.branch." + std::to_string(b) + ".j0"); ++b) {
      const std::string p = "resonance.branch." + std::to_string(b);
      ResonanceReport::PerJ0 br;
      br.j0 = r.integer(p + ".j0");
      br.lambda0 = r.num(p + ".lambda0");
      br.window = parse_window(r.str(p + ".window"));
      br.predicted_period = r.num(p + ".period");
      br.minimal_period.guaranteed = r.boolean(p + ".minimal_period_guaranteed");
      br.minimal_period.k_checked = r.integer(p + ".minimal_period_k_checked");
      res.branches.push_back(std::move(br));
    }
    rep.resonance = std::move(res);
  }

  for (int c = 1; r.has("certificate." + std::to_string(c) + ".j0"); ++c) {
    const std::string p = "certificate." + std::to_string(c);
    BifurcationCertificate cert;
    cert.j0 = r.integer(p + ".j0");
    cert.beta = r.num(p + ".beta");
    cert.window = parse_window(r.str(p + ".window"));
    cert.n0 = r.integer(p + ".n0");
    cert.margin = r.num(p + ".margin");
    cert.r_minus = r.integer(p + ".r_minus");
    cert.r_plus = r.integer(p + ".r_plus");
    cert.dim_extra_kernel = r.integer(p + ".dim_extra_kernel");
    cert.chi_minus = euler_eval(r.str(p + ".chi_minus"));
    cert.chi_plus = euler_eval(r.str(p + ".chi_plus"));
    cert.shared_factor = euler_eval(r.str(p + ".shared_factor"));
    cert.changed = r.boolean(p + ".changed");
    rep.certificates.push_back(std::move(cert));
  }

  for (int f = 1; r.has("family." + std::to_string(f) + ".j0"); ++f) {
    const std::string p = "family." + std::to_string(f);
    FamilySummary fam;
    fam.j0 = r.integer(p + ".j0");
    fam.branch = r.integer(p + ".branch");
    fam.lambda_quadratic_coeff = r.num(p + ".lambda_quadratic_coeff");
    if (r.has(p + ".truncated")) fam.truncation_note = r.str(p + ".truncated");
    for (const auto& tok : r.list(p + ".rows")) {
      const auto fields = tuple_fields(tok, "family row");
      if (fields.size() != 7) fail(ErrorCode::parse, "malformed family row: " + tok);
      FamilySummaryRow row;
      row.amplitude = to_num(fields[0]);
      row.lambda = to_num(fields[1]);
      row.period = to_num(fields[2]);
      row.residual = to_num(fields[3]);
      row.closure_error = to_num(fields[4]);
      row.dist_to_orbit = to_num(fields[5]);
      row.minimal_period_ok = to_bool(fields[6]);
      fam.rows.push_back(row);
    }
    rep.families.push_back(std::move(fam));
  }

  for (int i = 1; r.has("warning." + std::to_string(i)); ++i)
    rep.warnings.push_back(r.str("warning." + std::to_string(i)));
  return rep;
}

}  // namespace slct
