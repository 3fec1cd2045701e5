#include <algorithm>
#include <map>

#include "tetracode/x_decoder.hpp"

namespace tetracode {

Point3 sweep_direction(int label) {
  if (label < 0 || label >= static_cast<int>(kSweepDirections))
    throw ContractError("sweep direction must be in 0..7, got " + std::to_string(label));
  Point3 w = kFacetNormals[static_cast<std::size_t>(label % 4)];
  if (label >= 4)
    for (auto& c : w) c = -c;
  return w;
}

std::array<Color, 3> LiftConfig::sweep_colors() const {
  std::array<Color, 3> out{};
  std::size_t i = 0;
  for (Color c : kAllColors)
    if (c != lift_color) out[i++] = c;
  return out;
}

void LiftConfig::validate() const {
  if (sweep_direction_schedule.empty()) throw ContractError("sweep direction schedule must not be empty");
  for (int dir : sweep_direction_schedule)
    (void)sweep_direction(dir);
  if (rounds_per_direction < 0) throw ContractError("rounds per direction must be non-negative");
  if (max_sweep_rounds < 0) throw ContractError("max sweep rounds must be non-negative");
}

const char* to_string(FailureStage s) noexcept {
  switch (s) {
    case FailureStage::None: return "none";
    case FailureStage::Sweep: return "sweep";
    case FailureStage::Lift: return "lift";
    case FailureStage::Matching: return "matching";
  }
  return "?";
}

Chain extract_x_syndrome(const TetrahedralCode& code, const Chain& error) {
  if (!error.empty() && error.dimension() != 3) throw ContractError("X error must be a tetrahedron chain");
  for (int t : error.ids())
    if (t < 0 || static_cast<std::size_t>(t) >= code.n_qubits()) throw ContractError("qubit id out of range");
  Chain all = boundary_project(*code.lattice, Chain(3, error.ids()), 1);
  std::vector<int> ids;
  for (int e : all.ids())
    if (code.edge_measured[static_cast<std::size_t>(e)]) ids.push_back(e);
  return Chain(1, std::move(ids));
}

XDecoder::XDecoder(const TetrahedralCode& code, LiftConfig cfg) : code_(&code), cfg_(std::move(cfg)), sweep_(code) {
  cfg_.validate();
}

DecodeOutcome XDecoder::decode(const Chain& sigma, XDecodeStats* stats) const {
  const DualLattice& lat = *code_->lattice;
  if (!sigma.empty() && sigma.dimension() != 1) throw ContractError("X syndrome must be an edge chain");
  for (int e : sigma.ids()) {
    if (e < 0 || static_cast<std::size_t>(e) >= lat.count(1)) throw ContractError("edge id out of range");
    if (!code_->edge_measured[static_cast<std::size_t>(e)])
      throw ContractError("syndrome edge " + std::to_string(e) + " is not a stabilizer");
  }
  if (sigma.empty()) return {};

  // Sweep each restriction; the outputs miss distinct colors so they are disjoint.
  std::vector<std::uint8_t> in_gamma(lat.count(2), 0);
  std::map<int, std::vector<int>> by_vertex;
  for (Color k : cfg_.sweep_colors()) {
    Chain sk = restrict_syndrome_by_sweep_color(lat, sigma, k);
    if (sk.empty()) continue;
    SweepResult sr = sweep_.run(sk, k, cfg_);
    if (stats) stats->sweep_rounds += sr.rounds;
    if (!sr.ok) return DecodeOutcome::failure(FailureStage::Sweep);
    for (int f : sr.faces.ids()) {
      auto& slot = in_gamma[static_cast<std::size_t>(f)];
      if (slot) throw ContractError("sweep outputs overlap on face " + std::to_string(f));
      slot = 1;
      int owner = -1;
      for (int v : lat.simplex_vertices(2, f))
        if (lat.vertex(v).color == cfg_.lift_color) owner = v;
      if (owner < 0) throw ContractError("sweep face without a lift-colored vertex");
      by_vertex[owner].push_back(f);
    }
  }

  std::vector<std::uint8_t> tau(lat.count(3), 0);
  for (auto& [v, faces] : by_vertex) {
    LiftResult lr = lift_vertex_peel(lat, v, Chain(2, faces));
    if (stats) stats->lift_work += lr.work;
    if (!lr.ok) return DecodeOutcome::failure(FailureStage::Lift);
    for (int t : lr.tetrahedra.ids()) tau[static_cast<std::size_t>(t)] ^= 1;
  }
  DecodeOutcome out;
  std::vector<int> ids;
  for (std::size_t t = 0; t < tau.size(); ++t)
    if (tau[t]) ids.push_back(static_cast<int>(t));
  out.correction = Chain(3, std::move(ids));
  // The lifts are local; only the global boundary check certifies the result.
  if (extract_x_syndrome(*code_, out.correction) != sigma) return DecodeOutcome::failure(FailureStage::Lift);
  return out;
}

DecodeOutcome decode_x(const TetrahedralCode& code, const Chain& sigma, const LiftConfig& cfg) {
  return XDecoder(code, cfg).decode(sigma);
}

}  // namespace tetracode
