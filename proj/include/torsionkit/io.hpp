#pragma once

// JSON file formats and command reports. Files use 1-based indices.
//
// FormFile:     {"dim": n, "degree": k, "coeffs": [[i1, .., ik, value], ..]}
// AlgebraFile:  {"dim": n, "c": [[i, j, k, value], ..], "name": "..."}
// Torsion file: [FormFile, ..] with n 2-forms, or {"dim": n, "slices": [..]}
//
// FormFile and AlgebraFile accept an optional "metric" Gram matrix; the input
// is then re-expressed in the orthonormal basis obtained by Gram-Schmidt
// (Cholesky) from the given basis.

#include "torsionkit/lie.hpp"
#include "torsionkit/torsion.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace torsionkit {

using Json = nlohmann::ordered_json;

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex_digest(std::uint64_t h);

/// Throws kParse with line and column on malformed text.
Json parse_json_text(std::string_view text);

KForm parse_form(const Json& j);
Json form_to_json(const KForm& f);

/// A FormFile, or an object carrying one under "tau".
KForm parse_tau(const Json& j);

TorsionTensor parse_torsion(const Json& j);
Json torsion_to_json(const TorsionTensor& t);

MetricLieAlgebra parse_algebra(const Json& j);
Json algebra_to_json(const MetricLieAlgebra& l, const std::string& name = "");

/// su2, su3, so4 (= su2 + su2) or soN:k. Throws kUnknownGenerator.
MetricLieAlgebra builtin_algebra(std::string_view name);

/// kind is type2, type4, canonical, volume or algebra.
Json example_fixture(std::string_view kind, std::string_view generator);

struct RunOptions {
  double tol = -1;  // negative: command default
  std::uint64_t seed = 42;
  double scale = 1.0;
  int t_samples = 50;
};

struct InputRef {
  std::string name;
  std::string digest;
};

enum class Verdict { kPass, kFail, kDiagnostic };
std::string to_string(Verdict v);

struct Report {
  Json body;
  Verdict verdict = Verdict::kDiagnostic;
};

Report report_decompose(const TorsionTensor& t, const InputRef& in, const RunOptions& opt);
Report report_check_jacobi(const KForm& tau, const InputRef& in, const RunOptions& opt);
Report report_classify(const KForm& tau, const InputRef& in, const RunOptions& opt);
Report report_verify_warped(const MetricLieAlgebra& base, const InputRef& in, const RunOptions& opt);

/// A report for an analysis that threw: verdict diagnostic, error recorded.
Report report_error(const std::string& command, const InputRef& in, const RunOptions& opt, const Error& e);

/// Two-space indentation with arrays of scalars kept on one line.
std::string dump_pretty(const Json& j);

/// format is "json" or "text".
std::string render(const Report& r, std::string_view format);

}  // namespace torsionkit
