// Command-line front end. Talks to the library only through the C API.
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "tetracode/tetracode.h"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitHerald = 2;
constexpr int kExitRuntime = 3;

// Bad input or config: exit 1. Anything else raised from the library: exit 3.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct RuntimeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(tc_status s) {
  if (s == TC_OK) return;
  if (s == TC_ERR_INVALID_ARGUMENT) throw UsageError(tc_last_error());
  throw RuntimeError(tc_last_error());
}

struct CodeHandle {
  tc_code* ptr = nullptr;
  explicit CodeHandle(int d) { check(tc_code_build(d, &ptr)); }
  ~CodeHandle() { tc_code_free(ptr); }
  CodeHandle(const CodeHandle&) = delete;
  CodeHandle& operator=(const CodeHandle&) = delete;
  tc_code_info info() const {
    tc_code_info i{};
    check(tc_code_get_info(ptr, &i));
    return i;
  }
};

template <typename Fn>
std::string fetch_text(Fn&& fn) {
  size_t need = 0;
  check(fn(nullptr, 0, &need));
  std::string buf(need, '\0');
  check(fn(buf.data(), buf.size(), &need));
  buf.resize(need ? need - 1 : 0);
  return buf;
}

std::string csv_row(const tc_run_stats& s) {
  return fetch_text([&](char* b, size_t c, size_t* n) { return tc_csv_row(&s, b, c, n); });
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw RuntimeError("write to '" + path + "' failed");
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<int> parse_id_list(const std::string& text, const std::string& origin) {
  std::vector<int> ids;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    const auto e = line.find_last_not_of(" \t\r");
    const std::string tok = line.substr(b, e - b + 1);
    std::size_t used = 0;
    long v = -1;
    try {
      v = std::stol(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || v < 0 || v > INT32_MAX)
      throw UsageError(origin + ":" + std::to_string(line_no) + ": expected a non-negative integer id, got '" + tok + "'");
    ids.push_back(static_cast<int>(v));
  }
  return ids;
}

tc_error_type error_type(const std::string& t) { return t == "x" ? TC_ERROR_X : TC_ERROR_Z; }

const char* stage_name(tc_failure_stage s) {
  switch (s) {
    case TC_STAGE_SWEEP: return "sweep";
    case TC_STAGE_LIFT: return "lift";
    case TC_STAGE_MATCHING: return "matching";
    default: return "none";
  }
}

const char* membership_name(tc_membership m) {
  switch (m) {
    case TC_MEMBER_STABILIZER: return "stabilizer";
    case TC_MEMBER_LOGICAL: return "logical";
    default: return "outside-normalizer";
  }
}

std::uint64_t default_seed() {
  const char* env = std::getenv("TETRACODE_SEED");
  if (!env || !*env) return 1;
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(env, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != std::string(env).size()) throw UsageError(std::string("TETRACODE_SEED is not an integer: '") + env + "'");
  return v;
}

// Decoder and simulation flags shared by several subcommands.
struct DecoderOptions {
  std::string lift_color = "r";
  bool gf2_fallback = false;
  bool three_restrictions = false;
  int rounds_per_direction = 0;
  int max_sweep_rounds = 0;

  void add(CLI::App* app) {
    app->add_option("--lift-color", lift_color, "Lift color")->check(CLI::IsMember({"r", "g", "b", "y"}));
    app->add_flag("--gf2-fallback", gf2_fallback, "Exact GF(2) solve instead of the sweep rule");
    app->add_flag("--three-restrictions", three_restrictions, "Z decoder: only the pairs containing the lift color");
    app->add_option("--rounds-per-direction", rounds_per_direction, "Sweep rounds per direction (0: ceil(d/2))")
        ->check(CLI::NonNegativeNumber);
    app->add_option("--max-sweep-rounds", max_sweep_rounds, "Sweep round budget (0: 32 d)")->check(CLI::NonNegativeNumber);
  }
  tc_decoder_config config() const {
    tc_decoder_config c;
    tc_decoder_config_default(&c);
    c.lift_color = lift_color[0];
    c.gf2_fallback = gf2_fallback;
    c.all_restrictions = !three_restrictions;
    c.rounds_per_direction = rounds_per_direction;
    c.max_sweep_rounds = max_sweep_rounds;
    return c;
  }
  json to_json() const {
    return {{"lift_color", lift_color},
            {"gf2_fallback", gf2_fallback},
            {"restrictions", three_restrictions ? 3 : 6},
            {"rounds_per_direction", rounds_per_direction},
            {"max_sweep_rounds", max_sweep_rounds}};
  }
};

struct SimOptions {
  DecoderOptions decoder;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  bool heralded_not_failure = false;
  bool verify = false;

  void add(CLI::App* app) {
    decoder.add(app);
    app->add_option("--trials,-N", trials, "Trials per point")->check(CLI::PositiveNumber);
    app->add_option("--seed", seed, "Master seed (default: TETRACODE_SEED or 1)");
    app->add_option("--workers,-j", workers, "Worker threads")->check(CLI::Range(1u, 1024u));
    app->add_flag("--heralded-not-failure", heralded_not_failure, "Do not count heralded failures as logical failures");
    app->add_flag("--verify", verify, "Cross-check every trial against the GF(2) oracle");
  }
  tc_sim_config config() const {
    tc_sim_config c;
    tc_sim_config_default(&c);
    c.decoder = decoder.config();
    c.workers = workers;
    c.heralded_as_failure = !heralded_not_failure;
    c.verify = verify;
    return c;
  }
  json to_json() const {
    return {{"decoder", decoder.to_json()},
            {"trials", trials},
            {"seed", seed},
            {"workers", workers},
            {"heralded_as_failure", !heralded_not_failure},
            {"verify", verify}};
  }
};

// Metadata goes next to the output file, or to stderr when writing to stdout.
void emit_metadata(const std::string& out, json meta) {
  meta["tool_version"] = tc_version();
  if (out.empty() || out == "-") {
    std::cerr << "# metadata " << meta.dump() << "\n";
  } else {
    write_file(out + ".meta.json", meta.dump(2) + "\n");
  }
}

void emit_text(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-")
    std::cout << text << std::flush;
  else
    write_file(out, text);
}

std::vector<int> parse_distances(const std::vector<int>& ds) {
  if (ds.empty()) throw UsageError("at least one distance is required");
  for (int d : ds)
    if (d < 3 || d % 2 == 0) throw UsageError("distance must be odd and >= 3, got " + std::to_string(d));
  return ds;
}

// Minimal CSV reader for the results format written by simulate and sweep.
std::vector<tc_run_stats> read_results_csv(const std::string& path) {
  std::istringstream in(read_file(path));
  std::string line;
  std::vector<std::string> header;
  std::vector<tc_run_stats> rows;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (header.empty()) {
      header = cells;
      if (header.empty() || header[0] != "d") throw UsageError(path + ": missing CSV header");
      continue;
    }
    if (cells.size() != header.size()) throw UsageError(path + ":" + std::to_string(line_no) + ": wrong column count");
    std::map<std::string, std::string> row;
    for (std::size_t i = 0; i < cells.size(); ++i) row[header[i]] = cells[i];
    auto need = [&](const char* key) -> const std::string& {
      auto it = row.find(key);
      if (it == row.end()) throw UsageError(path + ": column '" + key + "' missing");
      return it->second;
    };
    try {
      tc_run_stats s{};
      s.distance = std::stoi(need("d"));
      s.n_qubits = std::stoull(need("n_qubits"));
      s.beta = std::stod(need("beta"));
      s.error_type = error_type(need("error_type"));
      s.p = std::stod(need("p"));
      s.trials = std::stoull(need("trials"));
      s.failures = std::stoull(need("failures"));
      s.heralded_failures = std::stoull(need("heralded_failures"));
      s.p_fail = std::stod(need("p_fail"));
      s.std_err = std::stod(need("std_err"));
      s.seed = std::stoull(need("seed"));
      rows.push_back(s);
    } catch (const std::logic_error&) {
      throw UsageError(path + ":" + std::to_string(line_no) + ": malformed value");
    }
  }
  return rows;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tetrahedral 3D color code toolkit: build, decode and simulate"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);
  app.set_version_flag("--version", std::string(tc_version()));

  json argv_json = json::array();
  for (int i = 0; i < argc; ++i) argv_json.push_back(argv[i]);

  // build
  int b_distance = 3;
  std::string b_out = "code.json", b_lattice;
  auto* build = app.add_subcommand("build", "Build a code; write the lattice JSON and the code sidecar");
  build->add_option("--distance,-d", b_distance, "Odd code distance >= 3")->required();
  build->add_option("--out,-o", b_out, "Code sidecar path")->capture_default_str();
  build->add_option("--lattice", b_lattice, "Lattice JSON path (default: <out stem>.lattice.json)");

  // validate
  int v_distance = 3;
  std::uint64_t v_budget = 0;
  auto* validate = app.add_subcommand("validate", "Check structure, ranks and low-weight logicals");
  validate->add_option("--distance,-d", v_distance, "Odd code distance >= 3")->required();
  validate->add_option("--budget", v_budget, "Candidate supports per weight in the distance search (0: default)");

  // decode
  int dc_distance = 3;
  std::string dc_type = "x", dc_error, dc_syndrome, dc_out;
  DecoderOptions dc_opts;
  auto* decode = app.add_subcommand("decode", "Decode one error or syndrome given as an id file");
  decode->add_option("--distance,-d", dc_distance, "Odd code distance >= 3")->required();
  decode->add_option("--type,-t", dc_type, "Error type")->check(CLI::IsMember({"x", "z"}))->capture_default_str();
  auto* dc_err_opt = decode->add_option("--error", dc_error, "File of qubit ids in error");
  auto* dc_syn_opt = decode->add_option("--syndrome", dc_syndrome, "File of syndrome ids (edges for x, vertices for z)");
  dc_err_opt->excludes(dc_syn_opt);
  decode->add_option("--out,-o", dc_out, "Correction output path (default: stdout)");
  dc_opts.add(decode);

  // simulate
  int s_distance = 3;
  std::string s_type = "x", s_out;
  double s_p = 0.0;
  SimOptions s_opts;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo run at one error probability");
  simulate->add_option("--distance,-d", s_distance, "Odd code distance >= 3")->required();
  simulate->add_option("--type,-t", s_type, "Error type")->check(CLI::IsMember({"x", "z"}))->capture_default_str();
  simulate->add_option("--p", s_p, "Physical error probability")->required()->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--out,-o", s_out, "CSV output path (default: stdout)");
  s_opts.add(simulate);

  // sweep
  std::vector<int> w_distances;
  std::vector<double> w_ps;
  std::string w_type = "x", w_out;
  double w_min = 0.0, w_max = 0.0;
  int w_steps = 0;
  bool w_linear = false;
  SimOptions w_opts;
  auto* sweep = app.add_subcommand("sweep", "Monte Carlo runs over distances and a probability grid");
  sweep->add_option("--distances", w_distances, "Comma-separated odd distances")->required()->delimiter(',');
  sweep->add_option("--type,-t", w_type, "Error type")->check(CLI::IsMember({"x", "z"}))->capture_default_str();
  auto* w_list = sweep->add_option("--p", w_ps, "Explicit comma-separated probabilities")->delimiter(',');
  auto* w_min_opt = sweep->add_option("--p-min", w_min, "Grid start")->check(CLI::Range(0.0, 1.0));
  auto* w_max_opt = sweep->add_option("--p-max", w_max, "Grid end")->check(CLI::Range(0.0, 1.0));
  auto* w_steps_opt = sweep->add_option("--steps", w_steps, "Grid points")->check(CLI::PositiveNumber);
  sweep->add_flag("--linear", w_linear, "Linear grid (default: log-spaced)");
  w_list->excludes(w_min_opt)->excludes(w_max_opt)->excludes(w_steps_opt);
  w_min_opt->needs(w_max_opt)->needs(w_steps_opt);
  sweep->add_option("--out,-o", w_out, "CSV output path (default: stdout)");
  w_opts.add(sweep);

  // beta
  std::vector<int> bt_distances;
  auto* beta = app.add_subcommand("beta", "Boundary-to-bulk qubit ratio per distance");
  beta->add_option("--distances", bt_distances, "Comma-separated odd distances")->required()->delimiter(',');

  // crossing
  std::string c_input, c_type;
  int c_d1 = 0, c_d2 = 0;
  auto* crossing = app.add_subcommand("crossing", "Crossing of two p_fail curves from a results CSV");
  crossing->add_option("--input,-i", c_input, "Results CSV")->required();
  crossing->add_option("--d1", c_d1, "Smaller distance (default: smallest in the file)");
  crossing->add_option("--d2", c_d2, "Larger distance (default: next smallest)");
  crossing->add_option("--type,-t", c_type, "Error type filter")->check(CLI::IsMember({"x", "z"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };
    json meta = {{"command", app.get_subcommands().front()->get_name()}, {"argv", argv_json}};

    if (*build) {
      CodeHandle code(parse_distances({b_distance})[0]);
      const tc_code_info i = code.info();
      std::string lattice_path = b_lattice;
      if (lattice_path.empty()) {
        const auto dot = b_out.rfind('.');
        const auto slash = b_out.rfind('/');
        const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
        lattice_path = (has_ext ? b_out.substr(0, dot) : b_out) + ".lattice.json";
      }
      write_file(b_out, fetch_text([&](char* b, size_t c, size_t* n) { return tc_code_sidecar_json(code.ptr, b, c, n); }));
      write_file(lattice_path,
                 fetch_text([&](char* b, size_t c, size_t* n) { return tc_code_lattice_json(code.ptr, b, c, n); }));
      meta["config"] = {{"distance", b_distance}, {"out", b_out}, {"lattice", lattice_path}};
      meta["seed"] = nullptr;
      emit_metadata(b_out, meta);
      std::cout << "n=" << i.n_qubits << " Sx=" << i.n_x_stabilizers << " Sz=" << i.n_z_stabilizers << "\n";
      return kExitOk;
    }

    if (*validate) {
      CodeHandle code(parse_distances({v_distance})[0]);
      tc_validation v{};
      check(tc_code_validate(code.ptr, v_budget, &v));
      const tc_code_info i = code.info();
      // Nothing found means every weight up to the searched one is ruled out.
      auto report = [](int found, int weight, int searched) {
        return found ? std::to_string(weight) : ">=" + std::to_string(searched + 1);
      };
      std::cout << "n=" << i.n_qubits << " k=" << v.logical_qubits << " rank_hx=" << v.rank_hx
                << " rank_hz=" << v.rank_hz << " x_distance=" << report(v.x_found, v.x_weight, v.x_searched)
                << " z_distance=" << report(v.z_found, v.z_weight, v.z_searched);
      if (v.x_found || v.z_found) {
        int d = v.x_found && v.z_found ? std::min(v.x_weight, v.z_weight) : (v.x_found ? v.x_weight : v.z_weight);
        // A weight found on one side only bounds the minimum when the other side was searched at least that far.
        const bool exact = (v.x_found && v.z_found) || d <= 1 + (v.x_found ? v.z_searched : v.x_searched);
        std::cout << " distance=" << (exact ? std::to_string(d) : "<=" + std::to_string(d));
      } else {
        std::cout << " distance=>=" << 1 + std::min(v.x_searched, v.z_searched);
      }
      std::cout << " searched_weight=" << v.x_searched << "\n";
      for (size_t k = 0; k < v.problem_count; ++k)
        std::cout << "problem: "
                  << fetch_text([&](char* b, size_t c, size_t* n) { return tc_code_problem(code.ptr, k, b, c, n); })
                  << "\n";
      return v.problem_count == 0 && v.logical_qubits == 1 ? kExitOk : kExitRuntime;
    }

    if (*decode) {
      if (dc_error.empty() && dc_syndrome.empty()) throw UsageError("decode needs --error or --syndrome");
      CodeHandle code(parse_distances({dc_distance})[0]);
      const tc_error_type type = error_type(dc_type);
      const tc_decoder_config cfg = dc_opts.config();
      tc_decoder* dec = nullptr;
      check(tc_decoder_create(code.ptr, &cfg, &dec));
      std::unique_ptr<tc_decoder, void (*)(tc_decoder*)> dec_guard(dec, tc_decoder_free);

      std::vector<int> error, syndrome;
      if (!dc_error.empty()) {
        error = parse_id_list(read_file(dc_error), dc_error);
        size_t need = 0;
        check(tc_extract_syndrome(code.ptr, type, error.data(), error.size(), nullptr, 0, &need));
        syndrome.resize(need);
        if (need) check(tc_extract_syndrome(code.ptr, type, error.data(), error.size(), syndrome.data(), need, &need));
      } else {
        syndrome = parse_id_list(read_file(dc_syndrome), dc_syndrome);
      }
      tc_decode_result* res = nullptr;
      check(tc_decode(dec, type, syndrome.data(), syndrome.size(), &res));
      std::unique_ptr<tc_decode_result, void (*)(tc_decode_result*)> res_guard(res, tc_decode_result_free);

      meta["config"] = {{"distance", dc_distance},
                        {"type", dc_type},
                        {"error", dc_error},
                        {"syndrome", dc_syndrome},
                        {"decoder", dc_opts.to_json()}};
      meta["seed"] = nullptr;
      if (res->heralded_failure) {
        meta["result"] = {{"heralded_failure", true}, {"stage", stage_name(res->failure_stage)}};
        emit_metadata(dc_out, meta);
        std::cerr << "heralded failure: stage=" << stage_name(res->failure_stage) << "\n";
        return kExitHerald;
      }
      std::string text;
      for (size_t k = 0; k < res->correction_size; ++k) text += std::to_string(res->correction[k]) + "\n";
      emit_text(dc_out, text);
      meta["result"] = {{"heralded_failure", false},
                        {"syndrome_size", syndrome.size()},
                        {"correction_size", res->correction_size}};
      std::cerr << "syndrome=" << syndrome.size() << " correction=" << res->correction_size;
      if (!dc_error.empty()) {
        // Residual = error xor correction.
        std::map<int, int> count;
        for (int q : error) count[q] ^= 1;
        for (size_t k = 0; k < res->correction_size; ++k) count[res->correction[k]] ^= 1;
        std::vector<int> residual;
        for (auto [q, c] : count)
          if (c) residual.push_back(q);
        tc_membership m{};
        check(tc_code_classify(code.ptr, type, residual.data(), residual.size(), &m));
        std::cerr << " residual=" << membership_name(m);
        meta["result"]["residual"] = membership_name(m);
      }
      std::cerr << "\n";
      emit_metadata(dc_out, meta);
      return kExitOk;
    }

    if (*simulate || *sweep) {
      const bool single = static_cast<bool>(*simulate);
      SimOptions& opts = single ? s_opts : w_opts;
      auto* sub = single ? simulate : sweep;
      if (sub->count("--seed") == 0) opts.seed = default_seed();
      const std::string& type_name = single ? s_type : w_type;
      std::vector<int> distances = single ? std::vector<int>{s_distance} : w_distances;
      parse_distances(distances);
      std::vector<double> ps;
      json grid;
      if (single) {
        ps = {s_p};
      } else if (!w_ps.empty()) {
        ps = w_ps;
        grid = {{"values", ps}};
      } else {
        if (w_steps == 0) throw UsageError("sweep needs --p or --p-min/--p-max/--steps");
        ps.resize(static_cast<std::size_t>(w_steps));
        check(tc_probability_grid(w_min, w_max, w_steps, !w_linear, ps.data()));
        grid = {{"min", w_min}, {"max", w_max}, {"steps", w_steps}, {"spacing", w_linear ? "linear" : "log"}};
      }
      const tc_sim_config cfg = opts.config();
      const std::string& out = single ? s_out : w_out;
      std::string text = std::string(tc_csv_header()) + "\n";
      json runs = json::array();
      for (int d : distances) {
        CodeHandle code(d);
        for (double p : ps) {
          tc_run_stats st{};
          check(tc_simulate(code.ptr, error_type(type_name), p, opts.trials, opts.seed, &cfg, &st));
          text += csv_row(st) + "\n";
          runs.push_back({{"d", d}, {"p", p}, {"wall_time_s", st.wall_time}});
        }
      }
      emit_text(out, text);
      meta["config"] = {{"distances", distances}, {"type", type_name}, {"p", ps}, {"sim", opts.to_json()}};
      if (!grid.is_null()) meta["config"]["grid"] = grid;
      meta["seed"] = opts.seed;
      meta["runs"] = runs;
      meta["wall_time_s"] = elapsed();
      emit_metadata(out, meta);
      return kExitOk;
    }

    if (*beta) {
      std::cout << "d,n_qubits,boundary_qubits,bulk_qubits,beta,beta_vs_1\n";
      for (int d : parse_distances(bt_distances)) {
        CodeHandle code(d);
        const tc_code_info i = code.info();
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.10g", i.beta);
        std::cout << d << ',' << i.n_qubits << ',' << i.boundary_qubits << ',' << i.bulk_qubits << ','
                  << (std::isfinite(i.beta) ? buf : "inf") << ',' << (i.beta > 1.0 ? ">1" : i.beta < 1.0 ? "<1" : "=1")
                  << "\n";
      }
      return kExitOk;
    }

    if (*crossing) {
      std::vector<tc_run_stats> rows = read_results_csv(c_input);
      if (!c_type.empty()) {
        std::erase_if(rows, [&](const tc_run_stats& s) { return s.error_type != error_type(c_type); });
      } else if (!rows.empty()) {
        for (const auto& s : rows)
          if (s.error_type != rows.front().error_type) throw UsageError("results mix error types; pass --type");
      }
      std::vector<int> ds;
      for (const auto& s : rows)
        if (std::find(ds.begin(), ds.end(), s.distance) == ds.end()) ds.push_back(s.distance);
      std::sort(ds.begin(), ds.end());
      if (c_d1 == 0 && ds.size() >= 1) c_d1 = ds[0];
      if (c_d2 == 0) {
        for (int d : ds)
          if (d != c_d1) {
            c_d2 = d;
            break;
          }
      }
      auto curve = [&](int d) {
        std::vector<tc_run_stats> c;
        for (const auto& s : rows)
          if (s.distance == d) c.push_back(s);
        std::sort(c.begin(), c.end(), [](const tc_run_stats& a, const tc_run_stats& b) { return a.p < b.p; });
        return c;
      };
      const auto a = curve(c_d1), b = curve(c_d2);
      if (a.empty() || b.empty()) throw UsageError("input needs rows for two distinct distances");
      if (a.size() != b.size()) throw UsageError("the two curves have different p grids");
      tc_crossing x{};
      check(tc_estimate_crossing(a.data(), b.data(), a.size(), &x));
      if (!x.found) {
        std::cout << "d1=" << c_d1 << " d2=" << c_d2 << " crossing=none\n";
        return kExitOk;
      }
      char buf[160];
      std::snprintf(buf, sizeof buf, "d1=%d d2=%d crossing=%.6g interval=[%.6g,%.6g]%s\n", c_d1, c_d2, x.p, x.low, x.high,
                    x.clamped ? " clamped" : "");
      std::cout << buf;
      return kExitOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
