#include "torsionkit/io.hpp"

#include "torsionkit/pairs.hpp"
#include "torsionkit/tau.hpp"
#include "torsionkit/warped.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <tuple>

namespace torsionkit {

namespace {

constexpr const char* kVersion = "0.1.0";

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  fail(ErrorCode::kSchema, path.empty() ? what : path + ": " + what);
}

const Json& require_field(const Json& j, const std::string& path, const char* key) {
  if (!j.is_object()) schema_error(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema_error(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

long long require_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) schema_error(path, "expected an integer");
  return j.get<long long>();
}

double require_number(const Json& j, const std::string& path) {
  if (!j.is_number()) schema_error(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) schema_error(path, "number is not finite");
  return v;
}

int require_dim(const Json& j, const std::string& path, int max_dim) {
  const long long d = require_int(require_field(j, path, "dim"), join(path, "dim"));
  if (d < 0 || d > max_dim) schema_error(join(path, "dim"), "dimension " + std::to_string(d) + " outside 0.." + std::to_string(max_dim));
  return static_cast<int>(d);
}

// Cholesky factor L of the Gram matrix (basis b_i = sum_k L_ik u_k), or
// nullopt when no metric is given.
std::optional<Matrix> gram_factor(const Json& j, const std::string& path, int n) {
  auto it = j.find("metric");
  if (it == j.end()) return std::nullopt;
  const std::string mpath = join(path, "metric");
  if (!it->is_array() || static_cast<int>(it->size()) != n) schema_error(mpath, "expected " + std::to_string(n) + " rows");
  Matrix g(n, n);
  for (int r = 0; r < n; ++r) {
    const Json& row = (*it)[static_cast<std::size_t>(r)];
    const std::string rpath = mpath + "[" + std::to_string(r) + "]";
    if (!row.is_array() || static_cast<int>(row.size()) != n) schema_error(rpath, "expected " + std::to_string(n) + " entries");
    for (int c = 0; c < n; ++c) g(r, c) = require_number(row[static_cast<std::size_t>(c)], rpath + "[" + std::to_string(c) + "]");
  }
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, g.cwiseAbs().maxCoeff()))
    schema_error(mpath, "Gram matrix is not symmetric");
  Eigen::LLT<Matrix> llt(g);
  if (llt.info() != Eigen::Success) schema_error(mpath, "Gram matrix is not positive definite");
  return Matrix(llt.matrixL());
}

std::vector<std::pair<std::vector<int>, double>> sorted_terms(const KForm& f) {
  std::vector<std::pair<std::vector<int>, double>> out;
  for (const auto& [blade, v] : f.terms()) out.emplace_back(indices_of(blade), v);
  std::sort(out.begin(), out.end());
  return out;
}

Json header(const std::string& command, const InputRef& in, const RunOptions& opt) {
  Json j;
  j["command"] = command;
  j["version"] = kVersion;
  j["inputs"] = Json::array({Json{{"name", in.name}, {"fnv1a64", in.digest}}});
  j["seed"] = opt.seed;
  return j;
}

void finish(Report& r) { r.body["verdict"] = to_string(r.verdict); }

Json vector_json(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex_digest(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json parse_json_text(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // byte offsets are 1-based and point just past the offending character
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(stop), '\n');
    const auto nl = text.substr(0, stop).rfind('\n');
    const std::size_t col = nl == std::string_view::npos ? stop + 1 : stop - nl;
    fail(ErrorCode::kParse, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": malformed JSON");
  }
}

KForm parse_form(const Json& j) {
  const std::string path;
  const int n = require_dim(j, path, kMaxDim);
  const long long k = require_int(require_field(j, path, "degree"), "degree");
  if (k < 0 || k > n) schema_error("degree", "degree " + std::to_string(k) + " outside 0.." + std::to_string(n));
  const Json& coeffs = require_field(j, path, "coeffs");
  if (!coeffs.is_array()) schema_error("coeffs", "expected an array");
  KForm f(Space(n), static_cast<int>(k));
  std::set<Blade> seen;
  for (std::size_t e = 0; e < coeffs.size(); ++e) {
    const std::string epath = "coeffs[" + std::to_string(e) + "]";
    const Json& entry = coeffs[e];
    if (!entry.is_array() || entry.size() != static_cast<std::size_t>(k) + 1)
      schema_error(epath, "expected " + std::to_string(k) + " indices followed by a value");
    std::vector<int> idx;
    for (long long r = 0; r < k; ++r) {
      const std::string ipath = epath + "[" + std::to_string(r) + "]";
      const long long i = require_int(entry[static_cast<std::size_t>(r)], ipath);
      if (i < 1 || i > n) schema_error(ipath, "index " + std::to_string(i) + " out of range 1.." + std::to_string(n));
      if (!idx.empty() && i - 1 <= idx.back()) schema_error(ipath, "indices must be strictly increasing");
      idx.push_back(static_cast<int>(i - 1));
    }
    const double v = require_number(entry[static_cast<std::size_t>(k)], epath + "[" + std::to_string(k) + "]");
    const Blade b = blade_of(idx);
    if (!seen.insert(b).second) schema_error(epath, "duplicate multi-index");
    f.set(b, v);
  }
  if (auto l = gram_factor(j, path, n)) {
    // coefficients are given on the coframe dual to b; u_k = sum_i (L^{-T})_ik b_i
    const Matrix q = l->inverse().transpose();
    return pullback(f, q);
  }
  return f;
}

Json form_to_json(const KForm& f) {
  Json j;
  j["dim"] = f.dim();
  j["degree"] = f.degree();
  Json coeffs = Json::array();
  for (const auto& [idx, v] : sorted_terms(f)) {
    Json e = Json::array();
    for (int i : idx) e.push_back(i + 1);
    e.push_back(v);
    coeffs.push_back(std::move(e));
  }
  j["coeffs"] = std::move(coeffs);
  return j;
}

KForm parse_tau(const Json& j) {
  const bool wrapped = j.is_object() && j.contains("tau") && !j.contains("degree");
  const KForm f = parse_form(wrapped ? j.at("tau") : j);
  if (f.degree() != 3) schema_error(wrapped ? "tau.degree" : "degree", "expected a 3-form");
  return f;
}

TorsionTensor parse_torsion(const Json& j) {
  const Json* slices = &j;
  std::string prefix;
  std::optional<int> declared;
  if (j.is_object()) {
    declared = require_dim(j, "", kMaxDim);
    slices = &require_field(j, "", "slices");
    prefix = "slices";
  }
  if (!slices->is_array()) schema_error(prefix, "expected an array of 2-forms");
  std::vector<KForm> forms;
  const int n = static_cast<int>(slices->size());
  if (declared && *declared != n) schema_error(prefix, "expected " + std::to_string(*declared) + " slices");
  for (int i = 0; i < n; ++i) {
    const std::string spath = prefix + "[" + std::to_string(i) + "]";
    try {
      forms.push_back(parse_form((*slices)[static_cast<std::size_t>(i)]));
    } catch (const Error& e) {
      fail(e.code(), spath + "." + e.what());
    }
    if (forms.back().degree() != 2) schema_error(spath + ".degree", "torsion slices must be 2-forms");
    if (forms.back().dim() != n) schema_error(spath + ".dim", "slice dimension must equal the number of slices");
  }
  if (n == 0) schema_error(prefix, "torsion needs at least one slice");
  return TorsionTensor(std::move(forms));
}

Json torsion_to_json(const TorsionTensor& t) {
  Json a = Json::array();
  for (const auto& s : t.slices()) a.push_back(form_to_json(s));
  return a;
}

MetricLieAlgebra parse_algebra(const Json& j) {
  constexpr int kMaxAlgebraDim = 256;
  const int n = require_dim(j, "", kMaxAlgebraDim);
  const Json& entries = require_field(j, "", "c");
  if (!entries.is_array()) schema_error("c", "expected an array");
  std::vector<double> c(static_cast<std::size_t>(n) * n * n, 0.0);
  std::set<std::tuple<int, int, int>> seen;
  for (std::size_t e = 0; e < entries.size(); ++e) {
    const std::string epath = "c[" + std::to_string(e) + "]";
    const Json& entry = entries[e];
    if (!entry.is_array() || entry.size() != 4) schema_error(epath, "expected [i, j, k, value]");
    int idx[3];
    for (int r = 0; r < 3; ++r) {
      const std::string ipath = epath + "[" + std::to_string(r) + "]";
      const long long i = require_int(entry[static_cast<std::size_t>(r)], ipath);
      if (i < 1 || i > n) schema_error(ipath, "index " + std::to_string(i) + " out of range 1.." + std::to_string(n));
      idx[r] = static_cast<int>(i - 1);
    }
    double v = require_number(entry[3], epath + "[3]");
    int a = idx[0], b = idx[1];
    if (a == b) {
      if (v != 0.0) schema_error(epath, "c_ii^k must vanish");
      continue;
    }
    if (a > b) {
      std::swap(a, b);
      v = -v;
    }
    if (!seen.emplace(a, b, idx[2]).second) schema_error(epath, "duplicate entry");
    c[(static_cast<std::size_t>(a) * n + b) * n + idx[2]] = v;
    c[(static_cast<std::size_t>(b) * n + a) * n + idx[2]] = -v;
  }
  MetricLieAlgebra l(n, std::move(c));
  if (auto lf = gram_factor(j, "", n)) {
    // Orthonormal u_a = sum_i Q_ia b_i with Q = L^{-T}; b-coordinates v become L^T v.
    const Matrix q = lf->inverse().transpose();
    std::vector<double> out(static_cast<std::size_t>(n) * n * n, 0.0);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        const Vector br = lf->transpose() * l.bracket(q.col(a), q.col(b));
        for (int k = 0; k < n; ++k) {
          out[(static_cast<std::size_t>(a) * n + b) * n + k] = br(k);
          out[(static_cast<std::size_t>(b) * n + a) * n + k] = -br(k);
        }
      }
    return MetricLieAlgebra(n, std::move(out));
  }
  return l;
}

Json algebra_to_json(const MetricLieAlgebra& l, const std::string& name) {
  Json j;
  j["dim"] = l.dim();
  if (!name.empty()) j["name"] = name;
  Json entries = Json::array();
  for (int a = 0; a < l.dim(); ++a)
    for (int b = a + 1; b < l.dim(); ++b)
      for (int k = 0; k < l.dim(); ++k)
        if (l.c(a, b, k) != 0.0) entries.push_back(Json::array({a + 1, b + 1, k + 1, l.c(a, b, k)}));
  j["c"] = std::move(entries);
  return j;
}

MetricLieAlgebra builtin_algebra(std::string_view name) {
  if (name == "su2") return su2();
  if (name == "su3") return su3();
  if (name == "so4") return so4();
  constexpr std::string_view prefix = "soN:";
  if (name.substr(0, prefix.size()) == prefix) {
    const std::string rest(name.substr(prefix.size()));
    std::size_t used = 0;
    int k = 0;
    try {
      k = std::stoi(rest, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == rest.size() && !rest.empty() && k >= 2 && k <= 10) return so(k);
    fail(ErrorCode::kUnknownGenerator, "soN:k needs an integer k in 2..10, got '" + rest + "'");
  }
  fail(ErrorCode::kUnknownGenerator, "unknown generator '" + std::string(name) + "' (expected su2, su3, so4 or soN:k)");
}

Json example_fixture(std::string_view kind, std::string_view generator) {
  const MetricLieAlgebra l = builtin_algebra(generator);
  const std::string gen(generator);
  if (kind == "algebra") return algebra_to_json(l, gen);
  if (kind == "canonical") return form_to_json(canonical_three_form(l));
  if (kind == "volume") {
    std::vector<int> idx(static_cast<std::size_t>(l.dim()));
    for (int i = 0; i < l.dim(); ++i) idx[static_cast<std::size_t>(i)] = i;
    return form_to_json(KForm::basis(Space(l.dim()), std::span<const int>(idx)));
  }
  if (kind == "type2" || kind == "type4") {
    const SymmetricPairModel p = kind == "type2" ? build_type_II(l) : build_type_IV(l);
    Json j;
    j["kind"] = p.kind;
    j["generator"] = gen;
    j["epsilon"] = p.epsilon;
    j["psi_scale"] = p.psi_scale;
    j["h_dim"] = p.half_dim();
    j["algebra"] = algebra_to_json(p.g, p.kind + "(" + gen + ")");
    j["tau"] = form_to_json(example_tau(p));
    return j;
  }
  fail(ErrorCode::kUnknownGenerator,
       "unknown example kind '" + std::string(kind) + "' (expected type2, type4, canonical, volume or algebra)");
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "pass";
    case Verdict::kFail: return "fail";
    case Verdict::kDiagnostic: return "diagnostic";
  }
  return "diagnostic";
}

Report report_decompose(const TorsionTensor& t, const InputRef& in, const RunOptions& opt) {
  const double tol = opt.tol >= 0 ? opt.tol : kTorsionTypeTol;
  constexpr double kReconstructionTol = 1e-9;
  Report r;
  r.body = header("decompose", in, opt);
  r.body["tolerances"] = {{"type", tol}, {"reconstruction", kReconstructionTol}};
  const double total = t.norm();
  const TorsionDecomposition d = decompose(t);
  const TorsionType type = classify_type(d, total, tol);
  std::string label = type.label();
  if (type.twistor_free()) label += " (twistor-free)";
  if (type.twistor_like()) label += " (twistor-like)";
  Json res;
  res["dim"] = t.dim();
  res["norms"] = {{"total", total}, {"vectorial", d.vectorial_norm}, {"twistorial", d.twistorial_norm}, {"skew", d.skew_norm}};
  res["type"] = type.label();
  res["label"] = label;
  res["twistor_free"] = type.twistor_free();
  res["twistor_like"] = type.twistor_like();
  res["components"] = {{"vectorial", form_to_json(KForm::one_form(d.vectorial))},
                       {"twistorial", torsion_to_json(d.twistorial)},
                       {"skew", form_to_json(d.skew)}};
  r.body["results"] = std::move(res);
  const double rel = total == 0.0 ? d.residual_norm : d.residual_norm / total;
  r.body["residuals"] = {{"reconstruction", rel}};
  r.verdict = rel <= kReconstructionTol ? Verdict::kPass : Verdict::kFail;
  finish(r);
  return r;
}

namespace {

Json defects_json(const TauJacobiDefects& d) {
  return {{"derivation", d.relative(d.derivation)},
          {"commutator", d.relative(d.commutator)},
          {"four_form", d.relative(d.four_form)}};
}

}  // namespace

Report report_check_jacobi(const KForm& tau, const InputRef& in, const RunOptions& opt) {
  const double tol = opt.tol >= 0 ? opt.tol : kTolTauJacobi;
  Report r;
  r.body = header("check-jacobi", in, opt);
  r.body["tolerances"] = {{"defect", tol}};
  const TauJacobiDefects d = tau_jacobi_defects(tau);
  r.body["results"] = {{"dim", tau.dim()}, {"norm", std::sqrt(d.norm_sq)}, {"formulations_agree", d.consistent(tol)}};
  r.body["residuals"] = defects_json(d);
  r.verdict = d.holds(tol) ? Verdict::kPass : Verdict::kFail;
  finish(r);
  return r;
}

Report report_classify(const KForm& tau, const InputRef& in, const RunOptions& opt) {
  const double tol = opt.tol >= 0 ? opt.tol : kTolTauJacobi;
  Report r;
  r.body = header("classify", in, opt);
  r.body["tolerances"] = {{"defect", tol}, {"rank", kTolRank}};
  const TauJacobiDefects d = tau_jacobi_defects(tau);
  if (!d.holds(tol)) {
    r.body["results"] = {{"dim", tau.dim()}, {"refused", true}, {"reason", "tau-Jacobi condition fails"}};
    r.body["residuals"] = defects_json(d);
    r.verdict = Verdict::kFail;
    finish(r);
    return r;
  }
  Rng rng(opt.seed);
  const BrickReport b = classify_bricks(tau, rng, tol);
  Json bricks = Json::array();
  for (const auto& br : b.bricks) {
    Json e;
    e["dim"] = br.dim;
    e["rank"] = br.rank;
    e["candidates"] = br.type.candidates;
    e["label"] = br.type.label();
    e["scale"] = br.scale;
    e["case_tag"] = br.case_tag;
    if (br.type.long_roots + br.type.short_roots > 0)
      e["roots"] = {{"long", br.type.long_roots}, {"short", br.type.short_roots}};
    Json basis = Json::array();
    for (Eigen::Index c = 0; c < br.basis.cols(); ++c) basis.push_back(vector_json(br.basis.col(c)));
    e["basis"] = std::move(basis);
    bricks.push_back(std::move(e));
  }
  r.body["results"] = {{"dim", tau.dim()}, {"refused", false}, {"kernel_dim", b.kernel_dim}, {"bricks", std::move(bricks)}};
  Json res = defects_json(d);
  res["cross_terms"] = b.cross_terms;
  r.body["residuals"] = std::move(res);
  r.verdict = Verdict::kPass;
  finish(r);
  return r;
}

Report report_verify_warped(const MetricLieAlgebra& base, const InputRef& in, const RunOptions& opt) {
  const double tol = opt.tol >= 0 ? opt.tol : 1e-8;
  constexpr double kExactTol = 1e-10;
  Report r;
  r.body = header("verify-warped", in, opt);
  r.body["tolerances"] = {{"residual", tol}, {"xi_formula", kExactTol}, {"conformal", kExactTol}};
  const WarpedModel model = make_warped_model(base, opt.scale, default_t_samples(opt.t_samples));
  const WarpedReport w = verify_warped(model);
  r.body["results"] = {{"base_dim", base.dim()},
                       {"compact_type", to_string(is_compact_type(base))},
                       {"tau_scale", opt.scale},
                       {"t_samples", opt.t_samples},
                       {"t_range", Json::array({model.t_samples.front(), model.t_samples.back()})},
                       {"nu_is_zero", model.nu().is_zero()}};
  Json res;
  res["metric_compatibility"] = w.max_metric;
  res["torsion_free"] = w.max_torsion;
  res["xi_formula"] = w.max_xi_formula;
  res["second_fundamental_form"] = w.max_second_fundamental;
  res["nabla_xi"] = w.max_nabla_xi;
  res["nabla_nu"] = w.max_nabla_nu;
  res["nu_xi"] = w.max_nu_xi;
  res["d_xi"] = w.max_d_xi;
  res["four_form"] = w.max_four_form;
  res["d_nu_minus_3_xi_nu"] = w.max_d_nu;
  res["lie_xi_nu_minus_3_nu_cartan"] = w.max_lie_cartan;
  res["lie_xi_nu_minus_3_nu_direct"] = w.max_lie_direct;
  res["conformal_frame"] = w.max_conformal_frame;
  res["conformal_formula"] = w.max_conformal_formula;
  Json samples = Json::array();
  for (std::size_t i = 0; i < model.t_samples.size(); ++i) {
    samples.push_back({{"t", model.t_samples[i]},
                       {"nabla_xi", w.parallel[i].nabla_xi},
                       {"nabla_nu", w.parallel[i].nabla_nu},
                       {"d_nu", w.identities[i].d_nu},
                       {"lie", w.identities[i].lie_direct},
                       {"conformal", w.conformal[i].frame}});
  }
  res["samples"] = std::move(samples);
  const bool ok = std::max({w.max_metric, w.max_torsion, w.max_second_fundamental, w.max_nabla_xi, w.max_nabla_nu,
                            w.max_nu_xi, w.max_d_xi, w.max_four_form, w.max_d_nu, w.max_lie_cartan,
                            w.max_lie_direct}) <= tol &&
                  std::max({w.max_xi_formula, w.max_conformal_frame, w.max_conformal_formula}) <= kExactTol;
  r.body["residuals"] = std::move(res);
  r.verdict = ok ? Verdict::kPass : Verdict::kFail;
  finish(r);
  return r;
}

Report report_error(const std::string& command, const InputRef& in, const RunOptions& opt, const Error& e) {
  Report r;
  r.body = header(command, in, opt);
  r.body["error"] = {{"code", static_cast<int>(e.code())}, {"message", e.what()}};
  r.verdict = Verdict::kDiagnostic;
  finish(r);
  return r;
}

namespace {

void flatten(const Json& j, const std::string& prefix, std::ostringstream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, os);
    return;
  }
  if (j.is_array()) {
    const bool scalars = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
    if (scalars) {
      os << prefix << ": " << j.dump() << "\n";
      return;
    }
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", os);
    return;
  }
  os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
}

}  // namespace

namespace {

void pretty(const Json& j, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  const std::string inner(static_cast<std::size_t>(2 * depth + 2), ' ');
  if (j.is_object() && !j.empty()) {
    out += "{\n";
    std::size_t i = 0;
    for (const auto& [k, v] : j.items()) {
      out += inner + Json(k).dump() + ": ";
      pretty(v, depth + 1, out);
      out += ++i < j.size() ? ",\n" : "\n";
    }
    out += pad + "}";
    return;
  }
  const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
  if (j.is_array() && !j.empty() && !flat) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += inner;
      pretty(j[i], depth + 1, out);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += pad + "]";
    return;
  }
  out += j.dump();
}

}  // namespace

std::string dump_pretty(const Json& j) {
  std::string out;
  pretty(j, 0, out);
  return out + "\n";
}

std::string render(const Report& r, std::string_view format) {
  if (format == "json") return dump_pretty(r.body);
  if (format == "text") {
    std::ostringstream os;
    flatten(r.body, "", os);
    return os.str();
  }
  fail(ErrorCode::kSchema, "unknown format '" + std::string(format) + "' (expected json or text)");
}

}  // namespace torsionkit
