#include "torsionkit.h"

#include "torsionkit/io.hpp"

#include <cmath>
#include <cstring>
#include <new>
#include <string>

using namespace torsionkit;

struct tk_form {
  KForm value;
  InputRef ref;
};

struct tk_torsion {
  TorsionTensor value;
  InputRef ref;
};

struct tk_algebra {
  MetricLieAlgebra value;
  InputRef ref;
};

struct tk_report {
  Report value;
};

namespace {

thread_local std::string g_last_error;

tk_status record(tk_status s, const std::string& message) {
  g_last_error = message;
  return s;
}

// Runs f, translating exceptions into status codes.
template <class F>
tk_status guarded(F&& f) {
  try {
    g_last_error.clear();
    f();
    return TK_OK;
  } catch (const Error& e) {
    return record(static_cast<tk_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return record(TK_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return record(TK_ERR_INTERNAL, e.what());
  } catch (...) {
    return record(TK_ERR_INTERNAL, "unknown exception");
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) fail(ErrorCode::kNullArgument, std::string(what) + " is NULL");
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

InputRef make_ref(const char* text, std::size_t len, const char* name) {
  return {name ? name : "-", hex_digest(fnv1a64(std::string_view(text, len)))};
}

RunOptions to_options(const tk_options* o) {
  RunOptions r;
  if (o == nullptr) return r;
  if (std::isnan(o->tol)) fail(ErrorCode::kOutOfRange, "tol is NaN");
  if (!std::isfinite(o->scale)) fail(ErrorCode::kOutOfRange, "scale must be finite");
  if (o->t_samples < 2) fail(ErrorCode::kOutOfRange, "t_samples must be at least 2");
  r.tol = o->tol;
  r.seed = o->seed;
  r.scale = o->scale;
  r.t_samples = o->t_samples;
  return r;
}

// Analyses turn mathematical errors into diagnostic reports.
template <class F>
tk_status analyse(const char* command, const InputRef& ref, const tk_options* options, tk_report** out, F&& f) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    const RunOptions opt = to_options(options);
    try {
      *out = new tk_report{f(opt)};
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kInternal) throw;
      *out = new tk_report{report_error(command, ref, opt, e)};
      g_last_error = e.what();
    }
  });
}

}  // namespace

extern "C" {

TK_API const char* tk_version(void) { return "0.1.0"; }

TK_API const char* tk_status_string(tk_status status) {
  switch (status) {
    case TK_OK: return "ok";
    case TK_ERR_NULL_ARGUMENT: return "null argument";
    case TK_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
    case TK_ERR_DEGREE: return "degree mismatch";
    case TK_ERR_INVARIANT_VIOLATION: return "invariant violation";
    case TK_ERR_DEGENERATE_DIMENSION: return "degenerate dimension";
    case TK_ERR_PARSE: return "parse error";
    case TK_ERR_SCHEMA: return "schema error";
    case TK_ERR_NOT_LIE_STRUCTURE: return "not a Lie structure";
    case TK_ERR_INVALID_ALGEBRA: return "invalid algebra";
    case TK_ERR_UNSUPPORTED_SIGNATURE: return "unsupported signature";
    case TK_ERR_PRECONDITION: return "precondition failed";
    case TK_ERR_INTERNAL_CONSISTENCY: return "internal consistency check failed";
    case TK_ERR_UNKNOWN_GENERATOR: return "unknown generator";
    case TK_ERR_OUT_OF_RANGE: return "out of range";
    case TK_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

TK_API const char* tk_last_error(void) { return g_last_error.c_str(); }

TK_API tk_options tk_options_default(void) {
  const RunOptions r;
  return tk_options{r.tol, r.seed, r.scale, r.t_samples};
}

TK_API tk_status tk_form_parse(const char* text, size_t len, const char* name, tk_form** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = nullptr;
    KForm f = parse_form(parse_json_text(std::string_view(text, len)));
    *out = new tk_form{std::move(f), make_ref(text, len, name)};
  });
}

TK_API tk_status tk_tau_parse(const char* text, size_t len, const char* name, tk_form** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = nullptr;
    KForm f = parse_tau(parse_json_text(std::string_view(text, len)));
    *out = new tk_form{std::move(f), make_ref(text, len, name)};
  });
}

TK_API int tk_form_dim(const tk_form* form) { return form ? form->value.dim() : -1; }
TK_API int tk_form_degree(const tk_form* form) { return form ? form->value.degree() : -1; }

TK_API tk_status tk_form_to_json(const tk_form* form, char** out) {
  return guarded([&] {
    require(form, "form");
    require(out, "out");
    *out = copy_string(form_to_json(form->value).dump());
  });
}

TK_API void tk_form_free(tk_form* form) { delete form; }

TK_API tk_status tk_torsion_parse(const char* text, size_t len, const char* name, tk_torsion** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = nullptr;
    TorsionTensor t = parse_torsion(parse_json_text(std::string_view(text, len)));
    *out = new tk_torsion{std::move(t), make_ref(text, len, name)};
  });
}

TK_API int tk_torsion_dim(const tk_torsion* torsion) { return torsion ? torsion->value.dim() : -1; }
TK_API void tk_torsion_free(tk_torsion* torsion) { delete torsion; }

TK_API tk_status tk_algebra_parse(const char* text, size_t len, const char* name, tk_algebra** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = nullptr;
    MetricLieAlgebra l = parse_algebra(parse_json_text(std::string_view(text, len)));
    *out = new tk_algebra{std::move(l), make_ref(text, len, name)};
  });
}

TK_API tk_status tk_algebra_builtin(const char* generator, tk_algebra** out) {
  return guarded([&] {
    require(generator, "generator");
    require(out, "out");
    *out = nullptr;
    MetricLieAlgebra l = builtin_algebra(generator);
    const std::string text = algebra_to_json(l, generator).dump();
    *out = new tk_algebra{std::move(l), make_ref(text.data(), text.size(), generator)};
  });
}

TK_API int tk_algebra_dim(const tk_algebra* algebra) { return algebra ? algebra->value.dim() : -1; }

TK_API tk_status tk_algebra_to_json(const tk_algebra* algebra, char** out) {
  return guarded([&] {
    require(algebra, "algebra");
    require(out, "out");
    *out = copy_string(algebra_to_json(algebra->value).dump());
  });
}

TK_API void tk_algebra_free(tk_algebra* algebra) { delete algebra; }

TK_API tk_status tk_decompose(const tk_torsion* torsion, const tk_options* options, tk_report** out) {
  if (torsion == nullptr) return record(TK_ERR_NULL_ARGUMENT, "torsion is NULL");
  return analyse("decompose", torsion->ref, options, out,
                 [&](const RunOptions& o) { return report_decompose(torsion->value, torsion->ref, o); });
}

TK_API tk_status tk_check_jacobi(const tk_form* tau, const tk_options* options, tk_report** out) {
  if (tau == nullptr) return record(TK_ERR_NULL_ARGUMENT, "tau is NULL");
  return analyse("check-jacobi", tau->ref, options, out, [&](const RunOptions& o) {
    if (tau->value.degree() != 3) fail(ErrorCode::kDegree, "check-jacobi needs a 3-form");
    return report_check_jacobi(tau->value, tau->ref, o);
  });
}

TK_API tk_status tk_classify(const tk_form* tau, const tk_options* options, tk_report** out) {
  if (tau == nullptr) return record(TK_ERR_NULL_ARGUMENT, "tau is NULL");
  return analyse("classify", tau->ref, options, out, [&](const RunOptions& o) {
    if (tau->value.degree() != 3) fail(ErrorCode::kDegree, "classify needs a 3-form");
    return report_classify(tau->value, tau->ref, o);
  });
}

TK_API tk_status tk_verify_warped(const tk_algebra* base, const tk_options* options, tk_report** out) {
  if (base == nullptr) return record(TK_ERR_NULL_ARGUMENT, "base is NULL");
  return analyse("verify-warped", base->ref, options, out,
                 [&](const RunOptions& o) { return report_verify_warped(base->value, base->ref, o); });
}

TK_API tk_verdict tk_report_verdict(const tk_report* report) {
  if (report == nullptr) return TK_DIAGNOSTIC;
  switch (report->value.verdict) {
    case Verdict::kPass: return TK_PASS;
    case Verdict::kFail: return TK_FAIL;
    case Verdict::kDiagnostic: return TK_DIAGNOSTIC;
  }
  return TK_DIAGNOSTIC;
}

TK_API tk_status tk_report_render(const tk_report* report, const char* format, char** out) {
  return guarded([&] {
    require(report, "report");
    require(format, "format");
    require(out, "out");
    *out = copy_string(render(report->value, format));
  });
}

TK_API void tk_report_free(tk_report* report) { delete report; }

TK_API tk_status tk_example_json(const char* kind, const char* generator, char** out) {
  return guarded([&] {
    require(kind, "kind");
    require(generator, "generator");
    require(out, "out");
    *out = copy_string(dump_pretty(example_fixture(kind, generator)));
  });
}

TK_API void tk_string_free(char* s) { delete[] s; }

}  // extern "C"
