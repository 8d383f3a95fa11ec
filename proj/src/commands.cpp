#include "scarlab/commands.hpp"

#include <fmt/format.h>

#include <atomic>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "scarlab/basis.hpp"
#include "scarlab/circuits.hpp"
#include "scarlab/dynamics.hpp"
#include "scarlab/entanglement.hpp"
#include "scarlab/fermion.hpp"
#include "scarlab/geometry.hpp"
#include "scarlab/hamiltonian.hpp"
#include "scarlab/scars.hpp"

namespace scarlab {

namespace {

using nlohmann::json;

CouplingConfig couplings(const RunConfig& cfg) {
  CouplingConfig c;
  c.g = cfg.g;
  c.epsilon = cfg.epsilon;
  c.epsilon_plaquette = cfg.epsilon_plaquette;
  return c;
}

SectorBasis make_basis(const RunConfig& cfg) {
  const Side side = side_from_name(cfg.side);
  if (side == Side::lgt) {
    const LadderGeometry geom(cfg.L, cfg.k);
    return enumerate_lgt_sector(geom, cfg.vx, cfg.vy);
  }
  if (cfg.k != 2)
    throw std::invalid_argument("the spin-chain dual exists for k = 2 only");
  return enumerate_ising_basis(cfg.L);
}

ScarLabel make_label(const RunConfig& cfg) {
  ScarLabel label;
  if (cfg.L % 2 == 0) {
    if (cfg.alpha < 1 || cfg.alpha > 2)
      throw std::invalid_argument(
          "even ladders have two scar labels: --alpha 1 or 2");
    label.even = true;
    label.which = cfg.alpha;
  } else {
    if (cfg.alpha < 1 || cfg.alpha > 4)
      throw std::invalid_argument("scar family --alpha must be 1..4");
    if (cfg.kidx < 1 || cfg.kidx > cfg.L)
      throw std::invalid_argument("scar defect column --kidx must be 1..L");
    label.even = false;
    label.alpha = cfg.alpha;
    label.k = cfg.kidx;
  }
  return label;
}

Cut make_cut(const RunConfig& cfg) {
  int a = cfg.cut_a, b = cfg.cut_b;
  if (a == 0 && b == 0) {  // default: half cut along the long direction
    a = 1;
    b = cfg.L == 3 ? 2 : 1 + cfg.L / 2;
  }
  if (side_from_name(cfg.side) == Side::lgt)
    return lgt_cut(LadderGeometry(cfg.L, cfg.k), a, b);
  return ising_cut(cfg.L, a, b);
}

std::vector<double> time_grid(const RunConfig& cfg) {
  if (cfg.nt < 1)
    throw std::invalid_argument("time grid required: --times t0:t1:n");
  if (cfg.nt == 1)
    return {cfg.t0};
  if (!(cfg.t1 > cfg.t0))
    throw std::invalid_argument("time grid needs t1 > t0");
  std::vector<double> ts(cfg.nt);
  for (int i = 0; i < cfg.nt; ++i)
    ts[i] = cfg.t0 + (cfg.t1 - cfg.t0) * double(i) / double(cfg.nt - 1);
  return ts;
}

StateVector initial_state(const SectorBasis& basis, const RunConfig& cfg) {
  if (cfg.initial == "scar") return scar_state(basis, make_label(cfg));
  if (cfg.initial == "thermal") return nonscar_product_state(basis);
  throw std::invalid_argument("--initial must be scar or thermal");
}

// ------------------------------------------------------------------ spectrum

Table cmd_spectrum(const RunConfig& cfg) {
  const SectorBasis basis = make_basis(cfg);
  const SparseOperator h = build_hamiltonian(basis, couplings(cfg));
  SpectrumResult eig = spectrum_dense(h, true);
  const Cut cut = make_cut(cfg);

  std::vector<StateVector> span;
  if (cfg.k == 2) span = scar_states(basis);

  const int64_t dim = eig.n;
  Table t;
  t.columns = {"index", "energy", "s_dist", "s_symm", "s_total", "is_scar"};
  t.rows.assign(size_t(dim), {});

  std::atomic<int64_t> next{0};
  auto worker = [&]() {
    std::vector<std::complex<double>> proj(static_cast<size_t>(dim));
    for (;;) {
      const int64_t j = next.fetch_add(1);
      if (j >= dim) return;
      StateVector psi(basis);
      const double* col = eig.vec(j);
      for (int64_t i = 0; i < dim; ++i) psi.amp[size_t(i)] = col[i];
      const EntropyDecomposition dec = entanglement_split(psi, cut);
      double flag = 0.0;
      if (!span.empty()) {
        project_onto_span(span, psi.amp.data(), proj.data());
        double r2 = 0.0;
        for (int64_t i = 0; i < dim; ++i)
          r2 += std::norm(psi.amp[size_t(i)] - proj[size_t(i)]);
        flag = std::sqrt(r2) <= 1e-8 ? 1.0 : 0.0;
      }
      t.rows[size_t(j)] = {double(j),  eig.evals[size_t(j)], dec.s_dist,
                           dec.s_symm, dec.s_total,          flag};
    }
  };

  const int nthreads = thread_count();
  std::vector<std::thread> pool;
  for (int i = 1; i < nthreads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return t;
}

// ---------------------------------------------------------------------- echo

Table echo_table(const EchoSeries& series) {
  Table t;
  t.columns = {"t", "re", "im", "abs"};
  for (size_t i = 0; i < series.times.size(); ++i)
    t.rows.push_back({series.times[i], series.values[i].real(),
                      series.values[i].imag(), std::abs(series.values[i])});
  return t;
}

Table cmd_echo(const RunConfig& cfg) {
  if (cfg.route == "subspace") {
    if (cfg.L % 2 == 0)
      throw std::invalid_argument("the scar-subspace echo needs odd L");
    if (cfg.initial != "scar")
      throw std::invalid_argument("the scar-subspace echo evolves a scar label");
    return echo_table(
        scar_subspace_echo(cfg.L, couplings(cfg), make_label(cfg),
                           time_grid(cfg)));
  }
  if (cfg.route == "circuit") {
    if (cfg.layers < 1)
      throw std::invalid_argument("--layers must be positive");
    const SectorBasis basis = make_basis(cfg);
    const RandomCircuitEngine eng(basis);
    const StateVector psi0 = initial_state(basis, cfg);
    return echo_table(random_circuit_echo(
        eng, psi0, RandomCircuitAngles::sample(cfg.layers, cfg.seed),
        cfg.layers));
  }
  if (cfg.route.empty() || cfg.route == "hamiltonian") {
    const SectorBasis basis = make_basis(cfg);
    const SparseOperator h = build_hamiltonian(basis, couplings(cfg));
    return echo_table(loschmidt_echo(h, initial_state(basis, cfg),
                                     time_grid(cfg)));
  }
  throw std::invalid_argument(
      "echo --route must be hamiltonian, subspace, or circuit");
}

// ------------------------------------------------------- entanglement series

Table entanglement_table(const EntanglementSeries& series) {
  Table t;
  t.columns = {"t", "s_dist", "s_symm", "s_total"};
  for (size_t i = 0; i < series.times.size(); ++i)
    t.rows.push_back({series.times[i], series.s_dist[i], series.s_symm[i],
                      series.s_dist[i] + series.s_symm[i]});
  return t;
}

Table cmd_entanglement_dynamics(const RunConfig& cfg) {
  const SectorBasis basis = make_basis(cfg);
  const StateVector psi0 = initial_state(basis, cfg);
  const Cut cut = make_cut(cfg);
  if (cfg.route == "circuit") {
    if (cfg.layers < 1)
      throw std::invalid_argument("--layers must be positive");
    const RandomCircuitEngine eng(basis);
    return entanglement_table(circuit_entanglement_trajectory(
        eng, psi0, RandomCircuitAngles::sample(cfg.layers, cfg.seed),
        cfg.layers, cut));
  }
  if (cfg.route.empty() || cfg.route == "hamiltonian") {
    const SparseOperator h = build_hamiltonian(basis, couplings(cfg));
    const Propagator prop(h);
    return entanglement_table(
        entanglement_trajectory(prop, psi0, cut, time_grid(cfg)));
  }
  throw std::invalid_argument(
      "entanglement-dynamics --route must be hamiltonian or circuit");
}

// --------------------------------------------------------------- observables

Table cmd_observables(const RunConfig& cfg) {
  if (side_from_name(cfg.side) != Side::lgt)
    throw std::invalid_argument(
        "observables are gauge-side electric expectations (--side lgt)");
  const SectorBasis basis = make_basis(cfg);
  const LadderGeometry geom(cfg.L, cfg.k);
  const SparseOperator h = build_hamiltonian(basis, couplings(cfg));
  const Propagator prop(h);
  StateVector psi = initial_state(basis, cfg);
  const std::vector<double> ts = time_grid(cfg);

  Table t;
  t.columns = {"t"};
  for (int link = 0; link < geom.n_links; ++link)
    t.columns.push_back(fmt::format("z_{}{}_{}",
                                    geom.is_horizontal(link) ? 'h' : 'v',
                                    geom.link_col(link), geom.link_row(link)));

  double now = 0.0;
  for (double sample : ts) {
    prop.advance(psi.amp, sample - now);
    now = sample;
    std::vector<double> row = {sample};
    for (int link = 0; link < geom.n_links; ++link)
      row.push_back(electric_expectation(psi, link));
    t.rows.push_back(std::move(row));
  }
  return t;
}

// -------------------------------------------------------------------- verify

StateVector random_span_state(const std::vector<StateVector>& span,
                              uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  StateVector psi(*span.front().basis);
  for (const auto& s : span) {
    const std::complex<double> c(gauss(rng), gauss(rng));
    for (int64_t i = 0; i < psi.dimension(); ++i)
      psi.amp[size_t(i)] += c * s.amp[size_t(i)];
  }
  psi.normalize();
  return psi;
}

CommandResult cmd_verify(const RunConfig& cfg) {
  if (cfg.k != 2)
    throw std::invalid_argument("verify runs the k = 2 ladder suites");
  const int L = cfg.L;
  const CouplingConfig cc = couplings(cfg);
  const LadderGeometry geom(L, 2);
  std::vector<CheckResult> checks;

  for (auto& c : verify_duality(L, cc, cfg.vx, cfg.vy)) checks.push_back(c);
  if (geom.n_links <= 24)
    for (auto& c : verify_lgt_symmetries(geom, cc)) checks.push_back(c);
  if (L <= 5)
    for (auto& c : run_fermion_checks(L)) checks.push_back(c);

  if (cfg.vy == +1) {
    const SectorBasis lgt = enumerate_lgt_sector(geom, cfg.vx, +1);
    const SectorBasis ising = enumerate_ising_basis(L);
    const SparseOperator h_lgt = build_hamiltonian(lgt, cc);
    const SparseOperator h_ising = build_hamiltonian(ising, cc);
    const auto scars_lgt = scar_states(lgt);
    const auto scars_ising = scar_states(ising);

    if (L % 2 == 0) {
      checks.push_back(make_check("scar_energy_residual_lgt",
                                  scar_eigen_residual(h_lgt, scars_lgt),
                                  1e-12));
      checks.push_back(make_check("scar_energy_residual_ising",
                                  scar_eigen_residual(h_ising, scars_ising),
                                  1e-12));
    } else {
      checks.push_back(make_check("scar_gram_deviation_lgt",
                                  gram_deviation(scars_lgt), 1e-12));
      checks.push_back(make_check("scar_subspace_leakage_lgt",
                                  subspace_leakage(h_lgt, scars_lgt), 1e-12));
      checks.push_back(make_check("scar_gram_deviation_ising",
                                  gram_deviation(scars_ising), 1e-12));
      checks.push_back(make_check("scar_subspace_leakage_ising",
                                  subspace_leakage(h_ising, scars_ising),
                                  1e-12));
      const DenseMatrix numeric = projected_hamiltonian(h_lgt, scars_lgt);
      const DenseMatrix analytic = effective_scar_hamiltonian(L, cc, cfg.vx);
      checks.push_back(make_check("effective_hamiltonian_max_diff",
                                  numeric.max_abs_diff(analytic), 1e-12));

      // Preparation circuits: every label, measurement-free route plus all
      // feedforward branches of the measured route, against the stabilizer
      // targets.
      double worst_direct = 0.0, worst_branch = 0.0;
      for (const auto& label : scar_labels(L)) {
        const auto targets = scar_circuit_targets(L, label);
        const ShotResult direct =
            run_circuit(prep_scar_circuit(L, label), nullptr);
        if (!tableau_satisfies(direct.tableau, targets)) worst_direct = 1.0;
        const auto branches =
            run_all_branches(prep_scar_circuit_mcm(L, label));
        for (const auto& b : branches)
          if (!tableau_satisfies(b.tableau, targets) ||
              !b.tableau.same_state(branches.front().tableau))
            worst_branch = 1.0;
      }
      checks.push_back(make_check("prep_circuit_targets", worst_direct, 0.5));
      checks.push_back(make_check("prep_circuit_branches", worst_branch, 0.5));

      // Superselection split: scar superpositions carry no distillable
      // entropy, and the split always reassembles the plain entropy.
      const Cut cut = lgt_cut(geom, 1, L == 3 ? 2 : 1 + L / 2);
      const StateVector mix = random_span_state(scars_lgt, cfg.seed);
      checks.push_back(make_check("scar_distillable_entropy",
                                  entanglement_split(mix, cut).s_dist,
                                  1e-10));
    }

    StateVector generic(lgt);
    std::mt19937_64 rng(cfg.seed + 1);
    std::normal_distribution<double> gauss;
    for (auto& a : generic.amp) a = {gauss(rng), gauss(rng)};
    generic.normalize();
    const Cut cut = lgt_cut(geom, 1, L == 3 ? 2 : 1 + L / 2);
    const EntropyDecomposition dec = entanglement_split(generic, cut);
    const double svn = entanglement_entropy(reduced_density_matrix(generic, cut));
    checks.push_back(make_check("entropy_split_consistency",
                                std::abs(dec.s_total - svn), 1e-10));
  }

  json arr = json::array();
  bool passed = true;
  for (const auto& c : checks) {
    arr.push_back({{"name", c.name},
                   {"residual", c.residual},
                   {"tolerance", c.tolerance},
                   {"passed", c.passed}});
    passed = passed && c.passed;
  }
  json doc;
  doc["config"] = json::parse(cfg.to_json());
  doc["checks"] = std::move(arr);
  doc["passed"] = passed;

  CommandResult res;
  res.exit_code = passed ? 0 : 1;
  res.payload = doc.dump(2) + "\n";
  return res;
}

// --------------------------------------------------------- basis / scar-table

std::string cmd_basis(const RunConfig& cfg) {
  const SectorBasis basis = make_basis(cfg);
  std::string out;
  out.reserve(size_t(basis.dimension()) * size_t(basis.n_qubits + 1));
  for (int64_t i = 0; i < basis.dimension(); ++i) {
    const uint64_t s = basis.state_at(i);
    for (int q = basis.n_qubits - 1; q >= 0; --q)
      out += char('0' + ((s >> q) & 1));
    out += '\n';
  }
  return out;
}

std::string cmd_scar_table(const RunConfig& cfg) {
  json arr = json::array();
  for (const auto& label : scar_labels(cfg.L)) {
    json e;
    e["name"] = label.name();
    if (label.even) {
      e["which"] = label.which;
    } else {
      e["alpha"] = label.alpha;
      e["k"] = label.k;
    }
    json zz = json::array(), xx = json::array();
    for (int p = 1; p <= cfg.L; ++p) {
      zz.push_back(scar_zz_sign(label, cfg.L, p));
      xx.push_back(scar_xx_sign(label, cfg.L, p));
    }
    e["zz"] = std::move(zz);
    e["xx"] = std::move(xx);
    arr.push_back(std::move(e));
  }
  json doc;
  doc["config"] = json::parse(cfg.to_json());
  doc["scars"] = std::move(arr);
  return doc.dump(2) + "\n";
}

std::string cmd_circuit(const RunConfig& cfg) {
  const ScarLabel label = make_label(cfg);
  if (cfg.L % 2 == 0)
    throw std::invalid_argument("preparation circuits exist for odd L");
  const std::string& route = cfg.route;
  if (route == "mcm") return prep_scar_circuit_mcm(cfg.L, label, cfg.vy).to_text();
  if (cfg.vy != +1)
    throw std::invalid_argument(
        "the mirrored ribbon sector is prepared by --route mcm");
  if (route.empty() || route == "resolve")
    return prep_scar_circuit(cfg.L, label, true).to_text();
  if (route == "local") return prep_scar_circuit(cfg.L, label, false).to_text();
  throw std::invalid_argument("circuit --route must be resolve, local, or mcm");
}

}  // namespace

// ----------------------------------------------------------------- RunConfig

std::string RunConfig::to_json() const {
  json j;
  j["command"] = command;
  j["side"] = side;
  j["L"] = L;
  j["k"] = k;
  j["g"] = g;
  j["epsilon"] = epsilon;
  j["epsilon_plaquette"] = epsilon_plaquette;
  j["vx"] = vx;
  j["vy"] = vy;
  j["cut_a"] = cut_a;
  j["cut_b"] = cut_b;
  j["t0"] = t0;
  j["t1"] = t1;
  j["nt"] = nt;
  j["layers"] = layers;
  j["initial"] = initial;
  j["alpha"] = alpha;
  j["kidx"] = kidx;
  j["route"] = route;
  j["seed"] = seed;
  j["out"] = out;
  j["format"] = format;
  return j.dump();
}

RunConfig RunConfig::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(fmt::format("config is not JSON: {}", e.what()));
  }
  if (!j.is_object())
    throw std::invalid_argument("config must be a JSON object");
  RunConfig cfg;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "command") cfg.command = value.get<std::string>();
      else if (key == "side") cfg.side = value.get<std::string>();
      else if (key == "L") cfg.L = value.get<int>();
      else if (key == "k") cfg.k = value.get<int>();
      else if (key == "g") cfg.g = value.get<double>();
      else if (key == "epsilon") cfg.epsilon = value.get<double>();
      else if (key == "epsilon_plaquette")
        cfg.epsilon_plaquette = value.get<int>();
      else if (key == "vx") cfg.vx = value.get<int>();
      else if (key == "vy") cfg.vy = value.get<int>();
      else if (key == "cut_a") cfg.cut_a = value.get<int>();
      else if (key == "cut_b") cfg.cut_b = value.get<int>();
      else if (key == "t0") cfg.t0 = value.get<double>();
      else if (key == "t1") cfg.t1 = value.get<double>();
      else if (key == "nt") cfg.nt = value.get<int>();
      else if (key == "layers") cfg.layers = value.get<int>();
      else if (key == "initial") cfg.initial = value.get<std::string>();
      else if (key == "alpha") cfg.alpha = value.get<int>();
      else if (key == "kidx") cfg.kidx = value.get<int>();
      else if (key == "route") cfg.route = value.get<std::string>();
      else if (key == "seed") cfg.seed = value.get<uint64_t>();
      else if (key == "out") cfg.out = value.get<std::string>();
      else if (key == "format") cfg.format = value.get<std::string>();
      else
        throw std::invalid_argument(
            fmt::format("unknown config key '{}'", key));
    }
  } catch (const json::type_error& e) {
    throw std::invalid_argument(fmt::format("bad config value: {}", e.what()));
  }
  return cfg;
}

CommandResult run_command(const RunConfig& cfg) {
  CommandResult res;
  const std::string& cmd = cfg.command;
  if (cmd == "spectrum" || cmd == "echo" || cmd == "entanglement-dynamics" ||
      cmd == "observables") {
    Table t;
    if (cmd == "spectrum") t = cmd_spectrum(cfg);
    else if (cmd == "echo") t = cmd_echo(cfg);
    else if (cmd == "entanglement-dynamics") t = cmd_entanglement_dynamics(cfg);
    else t = cmd_observables(cfg);
    if (cfg.format == "csv")
      res.payload = table_to_csv(t, cfg.to_json());
    else if (cfg.format == "json")
      res.payload = table_to_json(t, cfg.to_json());
    else
      throw std::invalid_argument("--format must be csv or json");
  } else if (cmd == "verify") {
    res = cmd_verify(cfg);
  } else if (cmd == "basis") {
    res.payload = cmd_basis(cfg);
  } else if (cmd == "scar-table") {
    res.payload = cmd_scar_table(cfg);
  } else if (cmd == "circuit") {
    res.payload = cmd_circuit(cfg);
  } else {
    throw std::invalid_argument(fmt::format(
        "unknown command '{}' (expected spectrum, echo, "
        "entanglement-dynamics, observables, verify, basis, scar-table, or "
        "circuit)",
        cmd));
  }
  if (!cfg.out.empty()) write_text_file(cfg.out, res.payload);
  return res;
}

}  // namespace scarlab
