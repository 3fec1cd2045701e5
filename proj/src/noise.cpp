#include "tetracode/noise.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <thread>

namespace tetracode {

const char* error_type_name(PauliType t) noexcept { return t == PauliType::X ? "x" : "z"; }

PauliType parse_error_type(std::string_view text) {
  if (text == "x" || text == "X") return PauliType::X;
  if (text == "z" || text == "Z") return PauliType::Z;
  throw ContractError("error type must be x or z, got '" + std::string(text) + "'");
}

void NoiseModel::validate() const {
  if (!(p >= 0.0 && p <= 1.0)) throw ContractError("error probability must lie in [0, 1]");
}

double standard_error(double p_fail, std::uint64_t trials) {
  if (trials == 0) return 0.0;
  return std::sqrt(p_fail * (1.0 - p_fail) / static_cast<double>(trials));
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial_index) noexcept {
  // Two rounds of splitmix64 over (seed, index).
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(seed) ^ trial_index);
}

Chain sample_iid_error(std::size_t n, const NoiseModel& model, std::mt19937_64& rng) {
  model.validate();
  std::vector<int> ids;
  if (model.p >= 1.0) {
    ids.resize(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<int>(i);
    return Chain(3, std::move(ids));
  }
  // Include qubit iff a uniform 64-bit draw falls below p * 2^64.
  const auto threshold = static_cast<std::uint64_t>(std::ldexp(model.p, 64));
  for (std::size_t i = 0; i < n; ++i)
    if (rng() < threshold) ids.push_back(static_cast<int>(i));
  return Chain(3, std::move(ids));
}

bool logical_failure(const TetrahedralCode& code, const Chain& error, const DecodeOutcome& outcome, PauliType type,
                     const StabilizerOracle* oracle) {
  if (outcome.heralded_failure) return true;
  const Chain residual = Chain(3, error.ids()) ^ Chain(3, outcome.correction.ids());
  const bool odd = residual.size() % 2 == 1;
  if (oracle) {
    const Membership m = oracle->classify(residual.ids(), type);
    if (m == Membership::OutsideNormalizer)
      throw std::logic_error("decoder returned a correction with the wrong syndrome");
    if ((m == Membership::Logical) != odd) throw std::logic_error("parity shortcut disagrees with the stabilizer oracle");
  }
  (void)code;
  return odd;
}

Simulator::Simulator(const TetrahedralCode& code, SimConfig cfg)
    : code_(&code),
      cfg_(std::move(cfg)),
      beta_(boundary_bulk_ratio(code).value()),
      x_(code, cfg_.lift),
      z_(code, cfg_.lift, cfg_.z) {
  if (cfg_.workers == 0) throw ContractError("worker count must be at least 1");
  if (cfg_.verify) oracle_ = std::make_unique<StabilizerOracle>(code);
}

Simulator::Tally Simulator::run_range(const NoiseModel& model, std::uint64_t seed, std::uint64_t begin,
                                      std::uint64_t end) const {
  Tally t;
  const std::size_t n = code_->n_qubits();
  for (std::uint64_t i = begin; i < end; ++i) {
    std::mt19937_64 rng(trial_seed(seed, i));
    const Chain error = sample_iid_error(n, model, rng);
    DecodeOutcome out;
    if (model.error_type == PauliType::X) {
      const Chain sigma = extract_x_syndrome(*code_, error);
      out = x_.decode(sigma);
      if (cfg_.verify && !out.heralded_failure && extract_x_syndrome(*code_, out.correction) != sigma)
        throw std::logic_error("X correction does not reproduce the syndrome");
    } else {
      const auto syndrome = extract_z_syndrome(*code_, error);
      out = z_.decode(syndrome);
      if (cfg_.verify && !out.heralded_failure && extract_z_syndrome(*code_, out.correction) != syndrome)
        throw std::logic_error("Z correction does not reproduce the syndrome");
    }
    if (out.heralded_failure) {
      ++t.heralded;
      if (cfg_.heralded_as_failure) ++t.failures;
    } else if (logical_failure(*code_, error, out, model.error_type, oracle_.get())) {
      ++t.failures;
    }
  }
  return t;
}

RunStats Simulator::run(const NoiseModel& model, std::uint64_t trials, std::uint64_t seed) const {
  model.validate();
  if (trials == 0) throw ContractError("trial count must be at least 1");
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t workers = std::min<std::uint64_t>(cfg_.workers, trials);
  std::vector<Tally> tallies(workers);
  auto slice = [&](std::uint64_t w) {
    const std::uint64_t begin = trials * w / workers;
    const std::uint64_t end = trials * (w + 1) / workers;
    tallies[w] = run_range(model, seed, begin, end);
  };
  if (workers == 1) {
    slice(0);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::uint64_t w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          slice(w);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  RunStats s;
  s.distance = code_->distance;
  s.n_qubits = code_->n_qubits();
  s.beta = beta_;
  s.error_type = model.error_type;
  s.p = model.p;
  s.trials = trials;
  for (const auto& t : tallies) {
    s.failures += t.failures;
    s.heralded_failures += t.heralded;
  }
  s.p_fail = static_cast<double>(s.failures) / static_cast<double>(trials);
  s.std_err = standard_error(s.p_fail, trials);
  s.seed = seed;
  s.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return s;
}

RunStats run_trials(const TetrahedralCode& code, const NoiseModel& model, std::uint64_t trials, std::uint64_t seed,
                    const SimConfig& cfg) {
  return Simulator(code, cfg).run(model, trials, seed);
}

std::vector<RunStats> sweep_probabilities(const std::vector<const TetrahedralCode*>& codes, PauliType type,
                                          const std::vector<double>& ps, std::uint64_t trials, std::uint64_t seed,
                                          const SimConfig& cfg) {
  if (ps.empty()) throw ContractError("probability grid must not be empty");
  std::vector<RunStats> rows;
  for (const TetrahedralCode* code : codes) {
    const Simulator sim(*code, cfg);
    for (double p : ps) rows.push_back(sim.run({type, p}, trials, seed));
  }
  return rows;
}

std::vector<double> probability_grid(double lo, double hi, int n, bool log_spaced) {
  if (n < 1) throw ContractError("grid needs at least one point");
  if (!(lo >= 0.0 && hi <= 1.0 && lo <= hi)) throw ContractError("grid bounds must satisfy 0 <= lo <= hi <= 1");
  if (log_spaced && lo <= 0.0) throw ContractError("log-spaced grid needs lo > 0");
  std::vector<double> out;
  if (n == 1) return {lo};
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / (n - 1);
    out.push_back(log_spaced ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))) : lo + t * (hi - lo));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

namespace {

// Zero of the line through (x0, y0), (x1, y1); assumes y0 and y1 differ in sign or one is zero.
double zero_between(double x0, double y0, double x1, double y1) {
  if (y0 == y1) return 0.5 * (x0 + x1);
  return x0 + (x1 - x0) * y0 / (y0 - y1);
}

// Zeros of a piecewise-linear curve sampled on xs.
std::vector<double> zeros_of(const std::vector<double>& xs, const std::vector<double>& ys) {
  std::vector<double> out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (ys[i] == 0.0) {
      out.push_back(xs[i]);
      continue;
    }
    if (i + 1 < xs.size() && ys[i + 1] != 0.0 && (ys[i] < 0) != (ys[i + 1] < 0))
      out.push_back(zero_between(xs[i], ys[i], xs[i + 1], ys[i + 1]));
  }
  return out;
}

}  // namespace

CrossingEstimate estimate_crossing(const std::vector<RunStats>& a, const std::vector<RunStats>& b) {
  if (a.size() != b.size() || a.size() < 2) throw ContractError("crossing needs two curves on a common grid of >= 2 points");
  const std::size_t n = a.size();
  std::vector<double> xs(n), diff(n), sigma(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].p <= 0.0 || std::fabs(a[i].p - b[i].p) > 1e-12 * std::max(1.0, a[i].p))
      throw ContractError("curves must share a positive p grid");
    if (i > 0 && a[i].p <= a[i - 1].p) throw ContractError("p grid must be increasing");
    xs[i] = std::log(a[i].p);
    diff[i] = a[i].p_fail - b[i].p_fail;
    sigma[i] = std::sqrt(a[i].std_err * a[i].std_err + b[i].std_err * b[i].std_err);
  }

  // Brackets between consecutive nonzero differences of opposite sign; an
  // exact zero in between pins the crossing to that grid point.
  CrossingEstimate best;
  double best_score = -1.0;
  double best_slope = 0.0;
  std::size_t prev = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (diff[i] == 0.0) continue;
    if (prev < n && (diff[prev] < 0) != (diff[i] < 0)) {
      double x = zero_between(xs[prev], diff[prev], xs[i], diff[i]);
      if (i > prev + 1) x = 0.5 * (xs[prev + 1] + xs[i - 1]);
      const double score = std::fabs(diff[prev]) / std::max(sigma[prev], 1e-300) +
                           std::fabs(diff[i]) / std::max(sigma[i], 1e-300);
      if (score > best_score) {
        best_score = score;
        best.found = true;
        best.p = x;
        best_slope = diff[i] - diff[prev];
      }
    }
    prev = i;
  }
  if (!best.found) return best;

  // Interval: nearest zeros of diff +- sigma on the side each shifted curve
  // must cross, or the grid end when it never does.
  const double xc = best.p;
  auto bound = [&](double sign, bool want_right) {
    std::vector<double> ys(n);
    for (std::size_t i = 0; i < n; ++i) ys[i] = diff[i] + sign * sigma[i];
    double pick = want_right ? xs.back() : xs.front();
    bool hit = false;
    for (double z : zeros_of(xs, ys)) {
      if (want_right ? z < xc : z > xc) continue;
      if (!hit || std::fabs(z - xc) < std::fabs(pick - xc)) pick = z;
      hit = true;
    }
    if (!hit && sigma[0] + sigma[n - 1] > 0.0) best.clamped = true;
    if (!hit && sigma[0] + sigma[n - 1] == 0.0) pick = xc;
    return pick;
  };
  // For a falling difference, diff + sigma crosses later and diff - sigma earlier.
  const bool falling = best_slope < 0;
  const double x_plus = bound(+1.0, falling);
  const double x_minus = bound(-1.0, !falling);
  best.low = std::exp(std::min({x_plus, x_minus, xc}));
  best.high = std::exp(std::max({x_plus, x_minus, xc}));
  best.p = std::exp(xc);
  return best;
}

std::string format_probability(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string csv_header() { return "d,n_qubits,beta,error_type,p,trials,failures,heralded_failures,p_fail,std_err,seed"; }

std::string csv_row(const RunStats& s) {
  std::string out;
  out += std::to_string(s.distance) + ',';
  out += std::to_string(s.n_qubits) + ',';
  out += format_probability(s.beta) + ',';
  out += std::string(error_type_name(s.error_type)) + ',';
  out += format_probability(s.p) + ',';
  out += std::to_string(s.trials) + ',';
  out += std::to_string(s.failures) + ',';
  out += std::to_string(s.heralded_failures) + ',';
  out += format_probability(s.p_fail) + ',';
  out += format_probability(s.std_err) + ',';
  out += std::to_string(s.seed);
  return out;
}

}  // namespace tetracode
