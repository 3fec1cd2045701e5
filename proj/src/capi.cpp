// extern-C facade over the C++ core. Exceptions never cross this boundary.
#include "tetracode/tetracode.h"

#include <cmath>
#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "tetracode/gf2.hpp"
#include "tetracode/noise.hpp"
#include "tetracode/serialize.hpp"
#include "tetracode/z_decoder.hpp"

using namespace tetracode;

struct tc_code {
  TetrahedralCode code;
  std::vector<std::string> problems;
};

struct tc_decoder {
  const tc_code* owner;  // must outlive the decoder
  XDecoder x;
  ZDecoder z;
};

namespace {

thread_local std::string last_error;

tc_status fail(tc_status s, std::string msg) {
  last_error = std::move(msg);
  return s;
}

template <typename F>
tc_status guarded(F&& body) {
  try {
    return body();
  } catch (const ContractError& e) {
    return fail(TC_ERR_INVALID_ARGUMENT, e.what());
  } catch (const ConstructionError& e) {
    return fail(TC_ERR_CONSTRUCTION, e.what());
  } catch (const std::bad_alloc&) {
    return fail(TC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(TC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(TC_ERR_INTERNAL, "unknown error");
  }
}

// Copies text plus a terminating NUL; `needed` counts the NUL.
tc_status copy_text(const std::string& text, char* buf, size_t cap, size_t* needed) {
  if (needed) *needed = text.size() + 1;
  if (cap == 0) return TC_OK;
  if (!buf) return fail(TC_ERR_INVALID_ARGUMENT, "buffer is null");
  if (cap < text.size() + 1) return fail(TC_ERR_BUFFER_TOO_SMALL, "buffer too small");
  std::memcpy(buf, text.c_str(), text.size() + 1);
  return TC_OK;
}

PauliType pauli(tc_error_type t) {
  if (t == TC_ERROR_X) return PauliType::X;
  if (t == TC_ERROR_Z) return PauliType::Z;
  throw ContractError("unknown error type");
}

std::vector<int> id_vector(const int* ids, size_t count) {
  if (count && !ids) throw ContractError("id array is null");
  return std::vector<int>(ids, ids + count);
}

Chain qubit_chain(const TetrahedralCode& code, const int* ids, size_t count) {
  for (int q : id_vector(ids, count))
    if (q < 0 || static_cast<std::size_t>(q) >= code.n_qubits())
      throw ContractError("qubit id " + std::to_string(q) + " out of range");
  return Chain(3, id_vector(ids, count));
}

LiftConfig lift_config(const tc_decoder_config& c) {
  LiftConfig cfg;
  cfg.lift_color = parse_color(std::string(1, c.lift_color));
  cfg.gf2_fallback = c.gf2_fallback != 0;
  if (c.rounds_per_direction < 0 || c.max_sweep_rounds < 0) throw ContractError("sweep round counts must be non-negative");
  cfg.rounds_per_direction = c.rounds_per_direction;
  cfg.max_sweep_rounds = c.max_sweep_rounds;
  cfg.validate();
  return cfg;
}

tc_failure_stage stage(FailureStage s) {
  switch (s) {
    case FailureStage::None: return TC_STAGE_NONE;
    case FailureStage::Sweep: return TC_STAGE_SWEEP;
    case FailureStage::Lift: return TC_STAGE_LIFT;
    case FailureStage::Matching: return TC_STAGE_MATCHING;
  }
  return TC_STAGE_NONE;
}

tc_run_stats to_c(const RunStats& s) {
  tc_run_stats o{};
  o.distance = s.distance;
  o.n_qubits = s.n_qubits;
  o.beta = s.beta;
  o.error_type = s.error_type == PauliType::X ? TC_ERROR_X : TC_ERROR_Z;
  o.p = s.p;
  o.trials = s.trials;
  o.failures = s.failures;
  o.heralded_failures = s.heralded_failures;
  o.p_fail = s.p_fail;
  o.std_err = s.std_err;
  o.seed = s.seed;
  o.wall_time = s.wall_time;
  return o;
}

RunStats from_c(const tc_run_stats& o) {
  RunStats s;
  s.distance = o.distance;
  s.n_qubits = o.n_qubits;
  s.beta = o.beta;
  s.error_type = pauli(o.error_type);
  s.p = o.p;
  s.trials = o.trials;
  s.failures = o.failures;
  s.heralded_failures = o.heralded_failures;
  s.p_fail = o.p_fail;
  s.std_err = o.std_err;
  s.seed = o.seed;
  s.wall_time = o.wall_time;
  return s;
}

// Largest weight whose subset count stays within the budget.
int searchable_weight(std::size_t n, std::uint64_t budget) {
  int w = 0;
  double subsets = 1.0;
  while (static_cast<std::size_t>(w) < n) {
    subsets = subsets * static_cast<double>(n - static_cast<std::size_t>(w)) / static_cast<double>(w + 1);
    if (subsets > static_cast<double>(budget)) break;
    ++w;
  }
  return w;
}

}  // namespace

extern "C" {

const char* tc_version(void) { return "0.1.0"; }

const char* tc_last_error(void) { return last_error.c_str(); }

tc_status tc_code_build(int distance, tc_code** out) {
  return guarded([&] {
    if (!out) return fail(TC_ERR_INVALID_ARGUMENT, "output pointer is null");
    *out = nullptr;
    auto h = std::make_unique<tc_code>();
    h->code = carve_tetrahedral_code(CodeSpec{distance});
    h->problems = validate_code(h->code);
    *out = h.release();
    return TC_OK;
  });
}

void tc_code_free(tc_code* code) { delete code; }

tc_status tc_code_get_info(const tc_code* code, tc_code_info* out) {
  return guarded([&] {
    if (!code || !out) return fail(TC_ERR_INVALID_ARGUMENT, "null argument");
    const TetrahedralCode& c = code->code;
    const BoundaryRatio beta = boundary_bulk_ratio(c);
    out->distance = c.distance;
    out->n_qubits = c.n_qubits();
    out->n_x_stabilizers = c.x_stabilizers.size();
    out->n_z_stabilizers = c.z_stabilizers.size();
    out->n_vertices = c.lattice->count(0);
    out->n_edges = c.lattice->count(1);
    out->n_faces = c.lattice->count(2);
    out->boundary_qubits = beta.boundary;
    out->bulk_qubits = beta.bulk;
    out->beta = beta.value();
    return TC_OK;
  });
}

tc_status tc_code_validate(const tc_code* code, uint64_t search_budget, tc_validation* out) {
  return guarded([&] {
    if (!code || !out) return fail(TC_ERR_INVALID_ARGUMENT, "null argument");
    const TetrahedralCode& c = code->code;
    const StabilizerOracle oracle(c);
    out->problem_count = code->problems.size();
    out->rank_hx = gf2_rank(oracle.hx());
    out->rank_hz = gf2_rank(oracle.hz());
    out->logical_qubits = static_cast<long>(c.n_qubits()) - static_cast<long>(out->rank_hx) -
                          static_cast<long>(out->rank_hz);
    const int w = searchable_weight(c.n_qubits(), search_budget ? search_budget : 100000);
    const LogicalWeightReport x = min_logical_weight(c, PauliType::X, w);
    const LogicalWeightReport z = min_logical_weight(c, PauliType::Z, w);
    out->x_weight = x.weight;
    out->x_found = x.found;
    out->x_searched = w;
    out->z_weight = z.weight;
    out->z_found = z.found;
    out->z_searched = w;
    return TC_OK;
  });
}

tc_status tc_code_problem(const tc_code* code, size_t index, char* buf, size_t cap, size_t* needed) {
  return guarded([&] {
    if (!code) return fail(TC_ERR_INVALID_ARGUMENT, "null code");
    if (index >= code->problems.size()) return fail(TC_ERR_INVALID_ARGUMENT, "problem index out of range");
    return copy_text(code->problems[index], buf, cap, needed);
  });
}

tc_status tc_code_lattice_json(const tc_code* code, char* buf, size_t cap, size_t* needed) {
  return guarded([&] {
    if (!code) return fail(TC_ERR_INVALID_ARGUMENT, "null code");
    return copy_text(lattice_to_json(*code->code.lattice), buf, cap, needed);
  });
}

tc_status tc_code_sidecar_json(const tc_code* code, char* buf, size_t cap, size_t* needed) {
  return guarded([&] {
    if (!code) return fail(TC_ERR_INVALID_ARGUMENT, "null code");
    return copy_text(code_to_json(code->code), buf, cap, needed);
  });
}

tc_status tc_code_classify(const tc_code* code, tc_error_type type, const int* qubits, size_t count,
                           tc_membership* out) {
  return guarded([&] {
    if (!code || !out) return fail(TC_ERR_INVALID_ARGUMENT, "null argument");
    const Chain residual = qubit_chain(code->code, qubits, count);
    const Membership m = stabilizer_membership(code->code, residual.ids(), pauli(type));
    *out = m == Membership::Stabilizer ? TC_MEMBER_STABILIZER
           : m == Membership::Logical  ? TC_MEMBER_LOGICAL
                                       : TC_MEMBER_OUTSIDE_NORMALIZER;
    return TC_OK;
  });
}

tc_status tc_extract_syndrome(const tc_code* code, tc_error_type type, const int* qubits, size_t count, int* out,
                              size_t cap, size_t* needed) {
  return guarded([&] {
    if (!code) return fail(TC_ERR_INVALID_ARGUMENT, "null code");
    const Chain error = qubit_chain(code->code, qubits, count);
    const std::vector<int> ids =
        pauli(type) == PauliType::X ? extract_x_syndrome(code->code, error).ids() : extract_z_syndrome(code->code, error);
    if (needed) *needed = ids.size();
    if (cap == 0) return TC_OK;
    if (!out) return fail(TC_ERR_INVALID_ARGUMENT, "output buffer is null");
    if (cap < ids.size()) return fail(TC_ERR_BUFFER_TOO_SMALL, "buffer too small");
    std::copy(ids.begin(), ids.end(), out);
    return TC_OK;
  });
}

void tc_decoder_config_default(tc_decoder_config* cfg) {
  if (!cfg) return;
  cfg->lift_color = 'r';
  cfg->gf2_fallback = 0;
  cfg->all_restrictions = 1;
  cfg->rounds_per_direction = 0;
  cfg->max_sweep_rounds = 0;
}

tc_status tc_decoder_create(const tc_code* code, const tc_decoder_config* cfg, tc_decoder** out) {
  return guarded([&] {
    if (!code || !out) return fail(TC_ERR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    tc_decoder_config c;
    tc_decoder_config_default(&c);
    if (cfg) c = *cfg;
    const LiftConfig lift = lift_config(c);
    ZConfig z;
    z.all_restrictions = c.all_restrictions != 0;
    *out = new tc_decoder{code, XDecoder(code->code, lift), ZDecoder(code->code, lift, z)};
    return TC_OK;
  });
}

void tc_decoder_free(tc_decoder* decoder) { delete decoder; }

tc_status tc_decode(const tc_decoder* decoder, tc_error_type type, const int* syndrome, size_t count,
                    tc_decode_result** out) {
  return guarded([&] {
    if (!decoder || !out) return fail(TC_ERR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    const TetrahedralCode& code = decoder->owner->code;
    DecodeOutcome o;
    if (pauli(type) == PauliType::X) {
      o = decoder->x.decode(Chain(1, id_vector(syndrome, count)));
    } else {
      const Chain flagged(0, id_vector(syndrome, count));
      for (int v : flagged.ids())
        if (v < 0 || static_cast<std::size_t>(v) >= code.lattice->count(0) || code.lattice->vertex(v).is_quasi)
          throw ContractError("syndrome vertex " + std::to_string(v) + " is not a stabilizer");
      o = decoder->z.decode(flagged.ids());
    }
    auto r = std::make_unique<tc_decode_result>();
    r->heralded_failure = o.heralded_failure;
    r->failure_stage = stage(o.failure_stage);
    r->correction_size = o.correction.size();
    r->correction = nullptr;
    if (!o.correction.empty()) {
      r->correction = new int[o.correction.size()];
      std::copy(o.correction.ids().begin(), o.correction.ids().end(), r->correction);
    }
    *out = r.release();
    return TC_OK;
  });
}

void tc_decode_result_free(tc_decode_result* result) {
  if (!result) return;
  delete[] result->correction;
  delete result;
}

void tc_sim_config_default(tc_sim_config* cfg) {
  if (!cfg) return;
  tc_decoder_config_default(&cfg->decoder);
  cfg->workers = 1;
  cfg->heralded_as_failure = 1;
  cfg->verify = 0;
}

tc_status tc_simulate(const tc_code* code, tc_error_type type, double p, uint64_t trials, uint64_t seed,
                      const tc_sim_config* cfg, tc_run_stats* out) {
  return guarded([&] {
    if (!code || !out) return fail(TC_ERR_INVALID_ARGUMENT, "null argument");
    tc_sim_config c;
    tc_sim_config_default(&c);
    if (cfg) c = *cfg;
    SimConfig sc;
    sc.lift = lift_config(c.decoder);
    sc.z.all_restrictions = c.decoder.all_restrictions != 0;
    sc.workers = c.workers;
    sc.heralded_as_failure = c.heralded_as_failure != 0;
    sc.verify = c.verify != 0;
    *out = to_c(run_trials(code->code, NoiseModel{pauli(type), p}, trials, seed, sc));
    return TC_OK;
  });
}

const char* tc_csv_header(void) {
  static const std::string header = csv_header();
  return header.c_str();
}

tc_status tc_csv_row(const tc_run_stats* stats, char* buf, size_t cap, size_t* needed) {
  return guarded([&] {
    if (!stats) return fail(TC_ERR_INVALID_ARGUMENT, "null stats");
    return copy_text(csv_row(from_c(*stats)), buf, cap, needed);
  });
}

tc_status tc_estimate_crossing(const tc_run_stats* a, const tc_run_stats* b, size_t n, tc_crossing* out) {
  return guarded([&] {
    if (!a || !b || !out) return fail(TC_ERR_INVALID_ARGUMENT, "null argument");
    std::vector<RunStats> ca, cb;
    for (size_t i = 0; i < n; ++i) {
      ca.push_back(from_c(a[i]));
      cb.push_back(from_c(b[i]));
    }
    const CrossingEstimate e = estimate_crossing(ca, cb);
    out->found = e.found;
    out->p = e.p;
    out->low = e.low;
    out->high = e.high;
    out->clamped = e.clamped;
    return TC_OK;
  });
}

tc_status tc_probability_grid(double lo, double hi, int n, int log_spaced, double* out) {
  return guarded([&] {
    if (!out) return fail(TC_ERR_INVALID_ARGUMENT, "null output");
    const auto grid = probability_grid(lo, hi, n, log_spaced != 0);
    std::copy(grid.begin(), grid.end(), out);
    return TC_OK;
  });
}

}  // extern "C"
