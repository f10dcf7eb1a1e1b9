#include "hindex/cli.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "hindex/acceptance.hpp"
#include "hindex/execution.hpp"
#include "hindex/json_io.hpp"
#include "hindex/minimal_index.hpp"
#include "hindex/norm_index.hpp"
#include "hindex/operator_inequality.hpp"
#include "hindex/random.hpp"
#include "hindex/spectral_index.hpp"

namespace hindex::cli {

namespace {

enum class Format { Default, Json, Table };

struct Globals {
  bool json = false;
  bool table = false;
  std::uint64_t seed = OracleConfig{}.seed;
  int restarts = OracleConfig{}.restarts;
  double tol_range = Tolerances{}.range;

  Format format() const {
    if (table) return Format::Table;
    if (json) return Format::Json;
    return Format::Default;
  }
  OracleConfig oracle() const {
    OracleConfig cfg;
    cfg.seed = seed;
    cfg.restarts = restarts;
    return cfg;
  }
  Tolerances tolerances() const {
    Tolerances tol;
    tol.range = tol_range;
    return tol;
  }
};

struct Input {
  std::string bytes;
  std::string digest;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot read file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Json load_document(const std::string& path) { return parse_json_text(read_file(path), path); }

HermitianMatrix load_matrix(const std::string& path) {
  try {
    return hermitian_from_json(load_document(path));
  } catch (const InputError& e) {
    const std::string what = e.what();
    if (what.rfind(path, 0) == 0) throw;
    throw InputError(path + ": " + what);
  }
}

// diagonal of S from a diagonal matrix file
VectorR load_diagonal(const std::string& path) {
  const HermitianMatrix s = load_matrix(path);
  if (!s.is_diagonal(0.0)) throw InputError(path + ": entries: S must be diagonal");
  return s.diagonal_entries();
}

Json optional_vector(const std::optional<VectorC>& v) { return v ? vector_to_json(*v) : Json(nullptr); }

Json index_set_json(const IndexSet& j) {
  Json out = Json::array();
  for (int i : j) out.push_back(i);
  return out;
}

Json spectral_json(const SpectralIndexResult& r) {
  Json out = {{"value", number_to_json(r.value)},
              {"method", method_name(r.method)},
              {"lower_bound", number_to_json(r.lower_bound)},
              {"witness_x", optional_vector(r.witness_x)},
              {"witness_subset", r.witness_subset ? index_set_json(*r.witness_subset) : Json(nullptr)},
              {"witness_u", r.witness_u ? vector_to_json(*r.witness_u) : Json(nullptr)}};
  if (r.method == SpectralMethod::RankOneSearch) {
    out["restarts"] = r.restarts;
    out["saturation"] = number_to_json(r.saturation);
  }
  return out;
}

Json minimal_json(const MinimalIndexResult& r) {
  return {{"value", number_to_json(r.value)},
          {"in_range", r.in_range},
          {"residual", number_to_json(r.residual)},
          {"witness", optional_vector(r.witness_y)}};
}

std::string join(const std::vector<std::string>& args) {
  std::string s = "hindex";
  for (const auto& a : args) s += " " + a;
  return s;
}

// "key.sub  value" rows for the scalar leaves of a JSON object
void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
    return;
  }
  if (j.is_number_float()) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", j.get<double>());
    rows.emplace_back(prefix, buf);
    return;
  }
  if (j.is_string()) {
    rows.emplace_back(prefix, j.get<std::string>());
    return;
  }
  rows.emplace_back(prefix, j.dump());
}

void print_table(const Json& report, std::ostream& out) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  for (const auto& [k, v] : rows) out << std::left << std::setw(static_cast<int>(width) + 2) << k << v << '\n';
}

class Runner {
 public:
  Runner(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
      : args_(args), out_(out), err_(err) {}

  int run();

 private:
  int emit(const Json& results, const std::optional<std::string>& digest_source);

  int cmd_minimal();
  int cmd_spectral();
  int cmd_frobenius();
  int cmd_norm();
  int cmd_mconst();
  int cmd_verify();
  int cmd_hunt();
  int cmd_probe();
  int cmd_selftest();

  const std::vector<std::string>& args_;
  std::ostream& out_;
  std::ostream& err_;
  Globals g_;
  std::string subcommand_;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();

  std::string matrix_path_;
  std::string minimal_method_ = "all";
  std::string spectral_method_ = "auto";
  std::string norm_text_;
  bool norm_search_ = false;
  std::string spectrum_;
  std::string s_path_;
  std::string t_path_;
  int budget_ = -1;
  std::string output_path_;
  bool quick_ = false;
  std::string fixtures_dir_;
};

int Runner::emit(const Json& results, const std::optional<std::string>& digest_source) {
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  Json report = {{"command", join(args_)},
                 {"subcommand", subcommand_},
                 {"input_digest", digest_source ? Json(content_digest(*digest_source)) : Json(nullptr)},
                 {"results", results},
                 {"config",
                  {{"seed", g_.seed},
                   {"restarts", g_.restarts},
                   {"tol_range", g_.tol_range},
                   {"rng", Rng::kAlgorithm},
                   {"threads", worker_count()}}},
                 {"wall_time_s", round_significant(wall, 6)}};
  if (g_.format() == Format::Table) {
    print_table(report, out_);
  } else {
    out_ << report.dump(2) << '\n';
  }
  return kExitOk;
}

int Runner::cmd_minimal() {
  const std::string bytes = read_file(matrix_path_);
  const HermitianMatrix a = load_matrix(matrix_path_);
  const Tolerances tol = g_.tolerances();
  const std::string& m = minimal_method_;
  Json methods = Json::object();
  Json results;
  if (m == "pinv" || m == "all") {
    const MinimalIndexResult r = minimal_index(a, tol);
    results = minimal_json(r);
    methods["pinv"] = number_to_json(r.value);
  }
  if (m == "simplex" || m == "all") {
    const SimplexMinimum r = minimal_index_simplex(a);
    methods["simplex"] = number_to_json(r.value);
    if (m == "simplex") results = {{"value", number_to_json(r.value)}, {"argmin", vector_to_json(r.z)}};
  }
  if (m == "det" || m == "all") {
    try {
      const double v = minimal_index_determinant(a, tol);
      methods["det"] = number_to_json(v);
      if (m == "det") results = {{"value", number_to_json(v)}};
    } catch (const IndexError& e) {
      if (m == "det") throw;
      methods["det"] = {{"error", e.what()}};
    }
  }
  results["methods"] = methods;
  return emit(results, bytes);
}

int Runner::cmd_spectral() {
  const std::string bytes = read_file(matrix_path_);
  const HermitianMatrix a = load_matrix(matrix_path_);
  const OracleConfig cfg = g_.oracle();
  const std::string& m = spectral_method_;
  if (m == "relax") {
    const DiagonalRelaxation r = spectral_index_diag_relax(a, cfg);
    return emit({{"value", number_to_json(r.value)},
                 {"method", method_name(SpectralMethod::DiagonalOnly)},
                 {"lower_bound", number_to_json(r.lower_bound)},
                 {"diagonal", vector_to_json(r.d)}},
                bytes);
  }
  SpectralIndexResult r;
  if (m == "comb" || (m == "auto" && a.is_nonnegative(0.0))) {
    r = spectral_index_combinatorial(a, kDefaultSubsetLimit, cfg.exec, g_.tolerances());
  } else {
    r = spectral_index_search(a, cfg);
  }
  return emit(spectral_json(r), bytes);
}

int Runner::cmd_frobenius() {
  const std::string bytes = read_file(matrix_path_);
  const HermitianMatrix a = load_matrix(matrix_path_);
  const NormIndexResult r = frobenius_index(a);
  return emit({{"value", number_to_json(r.value)},
               {"method", r.method},
               {"witness_x", optional_vector(r.witness_x)}},
              bytes);
}

int Runner::cmd_norm() {
  const std::string bytes = read_file(matrix_path_);
  const HermitianMatrix a = load_matrix(matrix_path_);
  NormDescriptor norm = NormDescriptor::frobenius();
  try {
    norm = NormDescriptor::parse(norm_text_);
  } catch (const IndexError& e) {
    throw InputError(std::string("--norm: ") + e.what());
  }
  const NormIndexResult r = norm_search_ ? norm_index_search(norm, a, g_.oracle()) : norm_index(norm, a, g_.oracle());
  return emit({{"value", number_to_json(r.value)},
               {"norm", r.norm.name()},
               {"method", r.method},
               {"upper_bound", r.upper_bound},
               {"lower_bound", number_to_json(norm_index_lower_bound(norm, a))},
               {"witness_x", optional_vector(r.witness_x)}},
              bytes);
}

int Runner::cmd_mconst() {
  SpectrumList s;
  try {
    s = SpectrumList::parse(spectrum_);
  } catch (const IndexError& e) {
    throw InputError(std::string("--spectrum: ") + e.what());
  }
  const LambdaIndex m = best_constant(s);
  Json argmin = Json::array();
  for (double v : m.argmin) argmin.push_back(number_to_json(v));
  return emit({{"M", number_to_json(m.value)},
               {"M1", number_to_json(m.m1)},
               {"M2", number_to_json(m.m2)},
               {"argmin", argmin}},
              spectrum_);
}

int Runner::cmd_verify() {
  const std::string bytes = read_file(s_path_) + '\0' + read_file(t_path_);
  const VectorR s = load_diagonal(s_path_);
  const HermitianMatrix t = load_matrix(t_path_);
  const InequalityCheck c = verify_inequality(s, t);
  std::vector<double> values(s.data(), s.data() + s.size());
  return emit({{"lhs", number_to_json(c.lhs)},
               {"rhs", number_to_json(c.rhs)},
               {"M", number_to_json(best_constant({values}).value)},
               {"holds", c.lhs >= c.rhs - 1e-9},
               {"hadamard_error", number_to_json(c.hadamard_error)}},
              bytes);
}

int Runner::cmd_hunt() {
  OracleConfig cfg = g_.oracle();
  if (budget_ >= 0) cfg.sample_budget = budget_;
  const auto found = counterexample_search_inf2(cfg);
  Json results = {{"found", found.has_value()}, {"budget", cfg.sample_budget}};
  if (found) {
    results["sample"] = found->sample;
    results["relaxed"] = number_to_json(found->relaxed);
    results["frobenius"] = number_to_json(found->frobenius);
    results["gap"] = number_to_json(found->gap);
    results["matrix"] = matrix_to_json(found->a.entries());
    if (!output_path_.empty()) {
      Json fixture = matrix_to_json(found->a.entries());
      fixture["relaxed"] = results["relaxed"];
      fixture["frobenius"] = results["frobenius"];
      fixture["gap"] = results["gap"];
      fixture["seed"] = cfg.seed;
      fixture["sample"] = found->sample;
      std::ofstream f(output_path_);
      if (!f) throw InputError(output_path_ + ": cannot write file");
      f << fixture.dump(2) << '\n';
    }
  }
  return emit(results, std::nullopt);
}

int Runner::cmd_probe() {
  OracleConfig cfg = g_.oracle();
  cfg.sample_budget = budget_ >= 0 ? budget_ : 2000;
  const ConjectureProbe p = probe_conjecture(cfg);
  Json results = {{"samples", p.samples},
                  {"equal_cases", p.equal_cases},
                  {"counterexample", p.counterexample ? matrix_to_json(p.counterexample->entries()) : Json(nullptr)}};
  if (p.counterexample) {
    results["minimal"] = number_to_json(p.minimal);
    results["spectral"] = number_to_json(p.spectral);
  }
  return emit(results, std::nullopt);
}

int Runner::cmd_selftest() {
  AcceptanceOptions options;
  options.quick = quick_;
  options.seed = g_.seed;
  const bool lines = g_.format() != Format::Json;
  std::vector<CheckResult> checks = run_acceptance(options, [&](const CheckResult& r) {
    if (!lines) return;
    char head[64];
    std::snprintf(head, sizeof head, "%-5s %-12s %8.3fs  ", r.id.c_str(), status_label(r), r.seconds);
    out_ << head << r.detail << '\n' << std::flush;
  });

  if (!fixtures_dir_.empty()) {
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(fixtures_dir_))
      if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& path : files) {
      CheckResult r;
      r.id = "fixture:" + path.stem().string();
      const auto t0 = std::chrono::steady_clock::now();
      try {
        const Json doc = load_document(path.string());
        if (!doc.is_object() || !doc.contains("expected")) continue;
        const HermitianMatrix a = hermitian_from_json(doc);
        std::ostringstream detail;
        r.passed = true;
        for (auto it = doc["expected"].begin(); it != doc["expected"].end(); ++it) {
          const double want = it.value().get<double>();
          double got = 0.0;
          if (it.key() == "minimal") got = minimal_index(a).value;
          else if (it.key() == "spectral") got = spectral_index_search(a).value;
          else if (it.key() == "frobenius") got = frobenius_index(a).value;
          else throw InputError("expected." + it.key() + ": unknown quantity");
          const bool ok = std::abs(got - want) <= 1e-6 * std::max(1.0, std::abs(want));
          r.passed = r.passed && ok;
          detail << it.key() << " " << std::setprecision(12) << got << (ok ? " == " : " != ") << want << "; ";
        }
        r.detail = detail.str();
      } catch (const std::exception& e) {
        r.passed = false;
        r.detail = e.what();
      }
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (lines) {
        char head[96];
        std::snprintf(head, sizeof head, "%-5s %-12s %8.3fs  ", r.id.c_str(), status_label(r), r.seconds);
        out_ << head << r.detail << '\n';
      }
      checks.push_back(r);
    }
  }

  const bool ok = std::none_of(checks.begin(), checks.end(),
                               [](const CheckResult& r) { return !r.passed && !r.inconclusive; });
  if (lines) {
    out_ << (ok ? "selftest passed" : "selftest FAILED") << '\n';
  } else {
    Json list = Json::array();
    for (const auto& r : checks)
      list.push_back({{"id", r.id},
                      {"name", r.name},
                      {"status", status_label(r)},
                      {"detail", r.detail},
                      {"seconds", round_significant(r.seconds, 6)}});
    emit({{"passed", ok}, {"quick", quick_}, {"checks", list}}, std::nullopt);
  }
  return ok ? kExitOk : kExitComputation;
}

int Runner::run() {
  CLI::App app{"Hadamard product indexes of positive semidefinite matrices", "hindex"};
  app.require_subcommand(1);
  app.add_flag("--json", g_.json, "JSON report (default)");
  app.add_flag("--table", g_.table, "fixed-width table instead of JSON");
  app.add_option("--seed", g_.seed, "seed for randomized searches");
  app.add_option("--restarts", g_.restarts, "restart cap for sphere searches")->check(CLI::PositiveNumber);
  app.add_option("--tol-range", g_.tol_range, "relative residual for p in range(A)")->check(CLI::PositiveNumber);

  auto* minimal = app.add_subcommand("minimal", "minimal index I(A)");
  minimal->add_option("matrix", matrix_path_, "matrix JSON file")->required();
  minimal->add_option("--method", minimal_method_, "pinv|simplex|det|all")
      ->check(CLI::IsMember({"pinv", "simplex", "det", "all"}));

  auto* spectral = app.add_subcommand("spectral", "spectral index I(sp,A)");
  spectral->add_option("matrix", matrix_path_, "matrix JSON file")->required();
  spectral->add_option("--method", spectral_method_, "auto|comb|search|relax")
      ->check(CLI::IsMember({"auto", "comb", "search", "relax"}));

  auto* frobenius = app.add_subcommand("frobenius", "Frobenius index I(2,A)");
  frobenius->add_option("matrix", matrix_path_, "matrix JSON file")->required();

  auto* norm = app.add_subcommand("norm", "index for a Schatten or Ky Fan norm");
  norm->add_option("matrix", matrix_path_, "matrix JSON file")->required();
  norm->add_option("--norm", norm_text_, "schatten:p | schatten:inf | kyfan:k")->required();
  norm->add_flag("--search", norm_search_, "randomized upper bound instead of the exact method");

  auto* mconst = app.add_subcommand("mconst", "best constant M(S) from a spectrum");
  mconst->add_option("--spectrum", spectrum_, "comma-separated eigenvalues of S")->required();

  auto* verify = app.add_subcommand("verify-op", "check |STS + S^-1 T S^-1| >= M(S)|T|");
  verify->add_option("S", s_path_, "diagonal of S (vector or diagonal matrix JSON)")->required();
  verify->add_option("T", t_path_, "PSD matrix JSON")->required();

  auto* hunt = app.add_subcommand("hunt-inf2", "search for a gap in the diagonal relaxation of I(2,.)");
  hunt->add_option("--budget", budget_, "number of random matrices (default 10000)")->check(CLI::NonNegativeNumber);
  hunt->add_option("--output", output_path_, "write the witness as a fixture file");

  auto* probe = app.add_subcommand("probe-conjecture", "look for I(A) = I(sp,A) with a non-nonnegative entry");
  probe->add_option("--budget", budget_, "number of random matrices (default 2000)")->check(CLI::NonNegativeNumber);

  auto* selftest = app.add_subcommand("selftest", "run the acceptance checks");
  selftest->add_flag("--quick", quick_, "small instances only");
  selftest->add_option("--fixtures", fixtures_dir_, "also check golden fixture files in this directory");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<std::string> reversed(args_.rbegin(), args_.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out_, err_);
    return code == 0 ? kExitOk : kExitUsage;
  }
  subcommand_ = app.get_subcommands().front()->get_name();

  if (subcommand_ == "minimal") return cmd_minimal();
  if (subcommand_ == "spectral") return cmd_spectral();
  if (subcommand_ == "frobenius") return cmd_frobenius();
  if (subcommand_ == "norm") return cmd_norm();
  if (subcommand_ == "mconst") return cmd_mconst();
  if (subcommand_ == "verify-op") return cmd_verify();
  if (subcommand_ == "hunt-inf2") return cmd_hunt();
  if (subcommand_ == "probe-conjecture") return cmd_probe();
  return cmd_selftest();
}

}  // namespace

std::string content_digest(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream hex;
  hex << "sha256:";
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return hex.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  apply_worker_cap_from_env();
  try {
    Runner runner(args, out, err);
    return runner.run();
  } catch (const InputError& e) {
    err << "hindex: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IndexError& e) {
    err << "hindex: " << e.what() << '\n';
    return kExitComputation;
  } catch (const std::exception& e) {
    err << "hindex: " << e.what() << '\n';
    return kExitComputation;
  }
}

}  // namespace hindex::cli
