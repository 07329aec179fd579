// Command-line front end. Links only the C interface.
//
// Exit codes: 0 all checks pass, 1 a mathematical check failed or was
// refused, 2 input or usage error.

#include "torsionkit.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Settings {
  double tol = -1;
  std::uint64_t seed = 42;
  double scale = 1.0;
  int t_samples = 50;
  std::string out;
  std::string format = "json";
  std::string input;
  std::string kind;
  std::string generator;
};

struct Deleter {
  void operator()(tk_form* p) const { tk_form_free(p); }
  void operator()(tk_torsion* p) const { tk_torsion_free(p); }
  void operator()(tk_algebra* p) const { tk_algebra_free(p); }
  void operator()(tk_report* p) const { tk_report_free(p); }
  void operator()(char* p) const { tk_string_free(p); }
};

template <class T>
using Owned = std::unique_ptr<T, Deleter>;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void check(tk_status s, const std::string& context) {
  if (s != TK_OK) {
    const std::string detail = tk_last_error();
    throw UsageError(context + ": " + (detail.empty() ? tk_status_string(s) : detail));
  }
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f || !(f << text)) throw UsageError(out + ": cannot write file");
}

tk_options options_of(const Settings& s) {
  tk_options o = tk_options_default();
  o.tol = s.tol;
  o.seed = s.seed;
  o.scale = s.scale;
  o.t_samples = s.t_samples;
  return o;
}

int finish(const Settings& s, tk_report* raw) {
  Owned<tk_report> report(raw);
  char* text = nullptr;
  check(tk_report_render(report.get(), s.format.c_str(), &text), "render");
  Owned<char> owned(text);
  emit(text, s.out);
  if (tk_report_verdict(report.get()) == TK_DIAGNOSTIC && *tk_last_error() != '\0')
    std::cerr << "torsionkit: " << tk_last_error() << "\n";
  return tk_report_verdict(report.get()) == TK_PASS ? kExitPass : kExitFail;
}

int run_decompose(const Settings& s) {
  const std::string text = read_input(s.input);
  tk_torsion* t = nullptr;
  check(tk_torsion_parse(text.data(), text.size(), s.input.c_str(), &t), s.input);
  Owned<tk_torsion> torsion(t);
  const tk_options o = options_of(s);
  tk_report* r = nullptr;
  check(tk_decompose(torsion.get(), &o, &r), "decompose");
  return finish(s, r);
}

template <class Analysis>
int run_tau(const Settings& s, Analysis analysis, const char* name) {
  const std::string text = read_input(s.input);
  tk_form* f = nullptr;
  check(tk_tau_parse(text.data(), text.size(), s.input.c_str(), &f), s.input);
  Owned<tk_form> tau(f);
  const tk_options o = options_of(s);
  tk_report* r = nullptr;
  check(analysis(tau.get(), &o, &r), name);
  return finish(s, r);
}

int run_verify_warped(const Settings& s) {
  const std::string text = read_input(s.input);
  tk_algebra* a = nullptr;
  check(tk_algebra_parse(text.data(), text.size(), s.input.c_str(), &a), s.input);
  Owned<tk_algebra> base(a);
  const tk_options o = options_of(s);
  tk_report* r = nullptr;
  check(tk_verify_warped(base.get(), &o, &r), "verify-warped");
  return finish(s, r);
}

int run_example(const Settings& s) {
  char* text = nullptr;
  check(tk_example_json(s.kind.c_str(), s.generator.c_str(), &text), "example");
  Owned<char> owned(text);
  emit(text, s.out);
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  Settings s;
  CLI::App app{"Torsion decomposition, tau-Jacobi classification and warped-product checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tk_version());

  const auto add_common = [&](CLI::App* sub, bool with_format) {
    sub->add_option("--tol", s.tol, "acceptance tolerance (default: per command)")->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", s.seed, "seed for randomized steps")->capture_default_str();
    sub->add_option("--out", s.out, "write output to this file instead of stdout");
    if (with_format)
      sub->add_option("--format", s.format, "report format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  };

  auto* decompose = app.add_subcommand("decompose", "split a torsion tensor into its three components");
  decompose->add_option("torsion", s.input, "torsion JSON file ('-' for stdin)")->required();
  add_common(decompose, true);

  auto* jacobi = app.add_subcommand("check-jacobi", "evaluate the three tau-Jacobi defects of a 3-form");
  jacobi->add_option("tau", s.input, "3-form JSON file ('-' for stdin)")->required();
  add_common(jacobi, true);

  auto* classify = app.add_subcommand("classify", "split a tau-Jacobi 3-form into kernel and simple bricks");
  classify->add_option("tau", s.input, "3-form JSON file ('-' for stdin)")->required();
  add_common(classify, true);

  auto* example = app.add_subcommand("example", "emit a fixture file");
  example->add_option("kind", s.kind, "type2, type4, canonical, volume or algebra")
      ->required()
      ->check(CLI::IsMember({"type2", "type4", "canonical", "volume", "algebra"}));
  example->add_option("generator", s.generator, "su2, su3, so4 or soN:k")->required();
  add_common(example, false);

  auto* warped = app.add_subcommand("verify-warped", "check the warped-product model over a compact Lie algebra");
  warped->add_option("algebra", s.input, "algebra JSON file ('-' for stdin)")->required();
  warped->add_option("--scale", s.scale, "multiple of the canonical 3-form used as tau")->capture_default_str();
  warped->add_option("--t-samples", s.t_samples, "number of samples of t in [-2, 2]")
      ->check(CLI::Range(2, 100000))
      ->capture_default_str();
  add_common(warped, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*decompose) return run_decompose(s);
    if (*jacobi) return run_tau(s, tk_check_jacobi, "check-jacobi");
    if (*classify) return run_tau(s, tk_classify, "classify");
    if (*example) return run_example(s);
    if (*warped) return run_verify_warped(s);
  } catch (const UsageError& e) {
    std::cerr << "torsionkit: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "torsionkit: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
