#include "scarlab/circuits.hpp"

#include <deque>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "scarlab/geometry.hpp"

namespace scarlab {

namespace {

struct GateInfo {
  const char* name;
  int qubits;
  bool measures;
};

const GateInfo& gate_info(GateKind kind) {
  static const GateInfo table[] = {
      {"h", 1, false},   {"s", 1, false},  {"x", 1, false},
      {"z", 1, false},   {"cnot", 2, false}, {"cz", 2, false},
      {"measure", 1, true},
  };
  return table[int(kind)];
}

}  // namespace

Gate& Circuit::add(GateKind kind, int q0, int q1, int cbit) {
  gates.push_back({kind, q0, q1, cbit, -1, true});
  return gates.back();
}

void Circuit::validate() const {
  if (n_data < 1 || n_ancillas < 0 || n_cbits < 0)
    throw std::invalid_argument("circuit needs at least one data qubit");
  std::vector<char> written(size_t(n_cbits), 0);
  for (const Gate& g : gates) {
    const GateInfo& info = gate_info(g.kind);
    if (g.q0 < 0 || g.q0 >= width())
      throw std::invalid_argument(
          fmt::format("{} target out of range", info.name));
    if (info.qubits == 2) {
      if (g.q1 < 0 || g.q1 >= width())
        throw std::invalid_argument(
            fmt::format("{} target out of range", info.name));
      if (g.q1 == g.q0)
        throw std::invalid_argument(
            fmt::format("{} needs two distinct qubits", info.name));
    }
    if (info.measures) {
      if (g.cbit < 0 || g.cbit >= n_cbits)
        throw std::invalid_argument("measurement writes no classical bit");
      if (g.cond >= 0)
        throw std::invalid_argument("measurements cannot be conditioned");
      written[size_t(g.cbit)] = 1;
    } else if (g.cond >= 0) {
      if (g.cond >= n_cbits || !written[size_t(g.cond)])
        throw std::invalid_argument(
            "classical condition precedes its measurement");
    }
  }
}

std::string Circuit::to_text() const {
  std::string out = fmt::format("qubits {}\n", n_data);
  if (n_ancillas) out += fmt::format("ancillas {}\n", n_ancillas);
  if (n_cbits) out += fmt::format("creg {}\n", n_cbits);
  for (const Gate& g : gates) {
    const GateInfo& info = gate_info(g.kind);
    out += info.name;
    out += fmt::format(" {}", g.q0);
    if (info.qubits == 2) out += fmt::format(" {}", g.q1);
    if (info.measures) out += fmt::format(" -> c{}", g.cbit);
    if (g.cond >= 0)
      out += fmt::format(" if {}c{}", g.cond_value ? "" : "!", g.cond);
    out += '\n';
  }
  return out;
}

Circuit Circuit::from_text(const std::string& text) {
  Circuit c;
  std::istringstream stream(text);
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument(
        fmt::format("circuit line {}: {}", lineno, why));
  };
  auto parse_cbit = [&](const std::string& tok, bool* value) {
    std::string t = tok;
    if (value) *value = true;
    if (value && !t.empty() && t[0] == '!') {
      *value = false;
      t = t.substr(1);
    }
    if (t.size() < 2 || t[0] != 'c') fail("expected a classical bit like c0");
    return std::stoi(t.substr(1));
  };
  while (std::getline(stream, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    const std::string& op = tok[0];
    if (op == "qubits" || op == "ancillas" || op == "creg") {
      if (tok.size() != 2) fail("directive takes one count");
      int v = std::stoi(tok[1]);
      (op == "qubits" ? c.n_data : op == "ancillas" ? c.n_ancillas : c.n_cbits) = v;
      continue;
    }
    Gate g;
    size_t used = 0;
    if (op == "h" || op == "s" || op == "x" || op == "z") {
      g.kind = op == "h"   ? GateKind::H
               : op == "s" ? GateKind::S
               : op == "x" ? GateKind::X
                           : GateKind::Z;
      if (tok.size() < 2) fail("missing qubit");
      g.q0 = std::stoi(tok[1]);
      used = 2;
    } else if (op == "cnot" || op == "cz") {
      g.kind = op == "cnot" ? GateKind::CNOT : GateKind::CZ;
      if (tok.size() < 3) fail("missing qubits");
      g.q0 = std::stoi(tok[1]);
      g.q1 = std::stoi(tok[2]);
      used = 3;
    } else if (op == "measure") {
      g.kind = GateKind::MeasureZ;
      if (tok.size() < 4 || tok[2] != "->") fail("expected: measure Q -> cK");
      g.q0 = std::stoi(tok[1]);
      g.cbit = parse_cbit(tok[3], nullptr);
      used = 4;
    } else {
      fail(fmt::format("unknown gate '{}'", op));
    }
    if (used < tok.size()) {
      if (tok[used] != "if" || used + 2 != tok.size())
        fail("trailing tokens (expected: if [!]cK)");
      bool value = true;
      g.cond = parse_cbit(tok[used + 1], &value);
      g.cond_value = value;
    }
    c.gates.push_back(g);
  }
  c.validate();
  return c;
}

namespace {

void apply_plain_gate(Tableau& t, const Gate& g) {
  switch (g.kind) {
    case GateKind::H: t.h(g.q0); break;
    case GateKind::S: t.s(g.q0); break;
    case GateKind::X: t.x(g.q0); break;
    case GateKind::Z: t.z(g.q0); break;
    case GateKind::CNOT: t.cnot(g.q0, g.q1); break;
    case GateKind::CZ: t.cz(g.q0, g.q1); break;
    case GateKind::MeasureZ: throw std::logic_error("not a plain gate");
  }
}

}  // namespace

ShotResult run_circuit(const Circuit& circuit, std::mt19937_64* rng) {
  circuit.validate();
  ShotResult shot{Tableau(circuit.width()), std::vector<uint8_t>(
                      size_t(circuit.n_cbits), 0), {}};
  for (const Gate& g : circuit.gates) {
    if (g.kind == GateKind::MeasureZ) {
      int outcome = shot.tableau.measure_z(g.q0, 0, rng);
      uint8_t bit = outcome < 0;
      shot.cbits[size_t(g.cbit)] = bit;
      shot.outcomes.push_back(bit);
      continue;
    }
    if (g.cond >= 0 && bool(shot.cbits[size_t(g.cond)]) != g.cond_value)
      continue;
    apply_plain_gate(shot.tableau, g);
  }
  return shot;
}

std::vector<ShotResult> run_all_branches(const Circuit& circuit,
                                         int max_branches) {
  circuit.validate();
  struct Partial {
    ShotResult shot;
    size_t next_gate;
  };
  std::deque<Partial> work;
  work.push_back({{Tableau(circuit.width()),
                   std::vector<uint8_t>(size_t(circuit.n_cbits), 0), {}},
                  0});
  std::vector<ShotResult> done;
  while (!work.empty()) {
    Partial p = std::move(work.front());
    work.pop_front();
    bool forked = false;
    for (size_t gi = p.next_gate; gi < circuit.gates.size(); ++gi) {
      const Gate& g = circuit.gates[gi];
      if (g.kind == GateKind::MeasureZ) {
        if (p.shot.tableau.z_deterministic(g.q0)) {
          uint8_t bit = p.shot.tableau.measure_z(g.q0) < 0;
          p.shot.cbits[size_t(g.cbit)] = bit;
          p.shot.outcomes.push_back(bit);
          continue;
        }
        if (int(work.size() + done.size()) + 2 > max_branches)
          throw std::runtime_error("branch enumeration exceeds the cap");
        for (int forced : {+1, -1}) {
          Partial q = p;
          uint8_t bit = q.shot.tableau.measure_z(g.q0, forced) < 0;
          q.shot.cbits[size_t(g.cbit)] = bit;
          q.shot.outcomes.push_back(bit);
          q.next_gate = gi + 1;
          work.push_back(std::move(q));
        }
        forked = true;
        break;
      }
      if (g.cond >= 0 && bool(p.shot.cbits[size_t(g.cond)]) != g.cond_value)
        continue;
      apply_plain_gate(p.shot.tableau, g);
    }
    if (!forked) done.push_back(std::move(p.shot));
  }
  return done;
}

std::vector<StabilizerTarget> scar_circuit_targets(int L,
                                                   const ScarLabel& label,
                                                   int vy) {
  if (vy != +1 && vy != -1)
    throw std::invalid_argument("vy must be +1 or -1");
  LadderGeometry geom(L, 2);
  auto targets = scar_stabilizer_targets_lgt(geom, label, +1);
  if (vy == -1) {
    // The mirrored sector is sigma^x on every row-1 horizontal link applied
    // to the vy=+1 state: row-1 z singles flip, everything else commutes.
    for (auto& t : targets) {
      if (!t.op.x.none() || t.op.z.count() != 1) continue;
      int link = t.op.z.lowest_set();
      if (geom.is_horizontal(link) && geom.link_row(link) == 1)
        t.sign = -t.sign;
    }
  }
  {
    StabilizerTarget ribbon;
    ribbon.op = PauliString::z_mask_u64(geom.n_links, geom.y_ribbon_mask());
    ribbon.sign = vy;
    ribbon.name = "Vy";
    targets.push_back(std::move(ribbon));
  }
  return targets;
}

bool tableau_satisfies(const Tableau& t,
                       const std::vector<StabilizerTarget>& targets) {
  for (const StabilizerTarget& target : targets) {
    PauliString op = target.op;
    if (op.n > t.n())
      throw std::invalid_argument("target is wider than the tableau");
    if (op.n < t.n()) {
      PauliString wide(t.n());
      for (int q = 0; q < op.n; ++q) {
        wide.x.set(q, op.x.test(q));
        wide.z.set(q, op.z.test(q));
      }
      wide.phase = op.phase;
      op = std::move(wide);
    }
    if (t.expectation(op) != target.sign) return false;
  }
  return true;
}

namespace {

struct RungSigns {
  std::vector<int> zz;   // rung z pattern, 1-based columns in [0..L-1] slots
  std::vector<int> zeta; // vertical-pair ZZ sign per column
  std::vector<int> chi;  // per-rung XX sign realizing the pair targets
};

RungSigns rung_signs(int L, const ScarLabel& label) {
  RungSigns s;
  s.zz.resize(L);
  s.zeta.resize(L);
  s.chi.resize(L);
  for (int p = 1; p <= L; ++p) s.zz[p - 1] = scar_zz_sign(label, L, p);
  for (int c = 0; c < L; ++c)
    s.zeta[c] = s.zz[(c - 1 + L) % L] * s.zz[c % L];
  s.chi[0] = +1;
  for (int c = 1; c < L; ++c)
    s.chi[c] = s.chi[c - 1] * scar_xx_sign(label, L, c);
  return s;
}

void check_prep_args(int L, const ScarLabel& label) {
  if (L < 3 || L % 2 == 0)
    throw std::invalid_argument("preparation circuits need odd L >= 3");
  if (label.even || label.alpha < 1 || label.alpha > 4 || label.k < 1 ||
      label.k > L)
    throw std::invalid_argument("invalid odd-ladder scar label");
}

}  // namespace

Circuit prep_scar_circuit(int L, const ScarLabel& label, bool resolve_sector) {
  check_prep_args(L, label);
  LadderGeometry geom(L, 2);
  RungSigns sg = rung_signs(L, label);
  Circuit c;
  c.n_data = geom.n_links;

  // Horizontal links: sigma^z eigenstates carrying the rung pattern.
  for (int col = 0; col < L; ++col)
    if (sg.zz[col] < 0)
      for (int r = 0; r < 2; ++r) c.add(GateKind::X, geom.h_link(col, r));

  if (!resolve_sector) {
    // Constant-depth layer: one Bell pair per rung with the target
    // (XX, ZZ) = (chi, zeta) signs; the ribbon stays unresolved.
    for (int col = 0; col < L; ++col) {
      c.add(GateKind::H, geom.v_link(col, 0));
      c.add(GateKind::CNOT, geom.v_link(col, 0), geom.v_link(col, 1));
      if (sg.zeta[col] < 0) c.add(GateKind::X, geom.v_link(col, 1));
      if (sg.chi[col] < 0) c.add(GateKind::Z, geom.v_link(col, 0));
    }
    return c;
  }

  // Sector-resolved route: an even-parity superposition over the row-0
  // vertical links pins V_x = +1, diagonal phases write the rung XX pattern,
  // and rung CNOTs copy it onto row 1 with the ZZ offsets.
  for (int col = 0; col < L; ++col)
    if (sg.zeta[col] < 0) c.add(GateKind::X, geom.v_link(col, 1));
  for (int col = 1; col < L; ++col) c.add(GateKind::H, geom.v_link(col, 0));
  for (int col = 1; col < L; ++col)
    c.add(GateKind::CNOT, geom.v_link(col, 0), geom.v_link(0, 0));
  for (int col = 0; col < L; ++col)
    if (sg.chi[col] < 0) c.add(GateKind::Z, geom.v_link(col, 0));
  for (int col = 0; col < L; ++col)
    c.add(GateKind::CNOT, geom.v_link(col, 0), geom.v_link(col, 1));
  return c;
}

Circuit prep_scar_circuit_mcm(int L, const ScarLabel& label, int vy) {
  check_prep_args(L, label);
  if (vy != +1 && vy != -1)
    throw std::invalid_argument("vy must be +1 or -1");
  LadderGeometry geom(L, 2);
  RungSigns sg = rung_signs(L, label);
  Circuit c;
  c.n_data = geom.n_links;
  c.n_ancillas = L;
  c.n_cbits = L + 1;
  auto anc = [&](int i) { return geom.n_links + i; };

  // Product-state initialization: horizontal pattern (row 1 mirrored in the
  // vy = -1 sector) and z-product rungs realizing the ZZ signs.
  for (int col = 0; col < L; ++col) {
    if (sg.zz[col] < 0) c.add(GateKind::X, geom.h_link(col, 0));
    if (vy * sg.zz[col] < 0) c.add(GateKind::X, geom.h_link(col, 1));
    if (sg.zeta[col] < 0) c.add(GateKind::X, geom.v_link(col, 1));
  }

  // Ancilla c measures the rung parity sigma^x sigma^x of column c.
  for (int col = 0; col < L; ++col) {
    c.add(GateKind::H, anc(col));
    c.add(GateKind::CNOT, anc(col), geom.v_link(col, 0));
    c.add(GateKind::CNOT, anc(col), geom.v_link(col, 1));
    c.add(GateKind::H, anc(col));
    c.add(GateKind::MeasureZ, anc(col), -1, col);
  }

  // Feedforward: steer each rung's XX sign onto the chi pattern.  A sigma^z
  // on the row-0 link flips the measured sign, so the correction fires on
  // outcome -1 for chi = +1 targets and on outcome +1 for chi = -1 targets.
  for (int col = 0; col < L; ++col) {
    Gate& g = c.add(GateKind::Z, geom.v_link(col, 0));
    g.cond = col;
    g.cond_value = sg.chi[col] > 0;
  }

  // Reuse ancilla 0 (classically reset) to measure the x ribbon V_x.
  {
    Gate& g = c.add(GateKind::X, anc(0));
    g.cond = 0;
    g.cond_value = true;
  }
  for (int col = 0; col < L; ++col)
    c.add(GateKind::CNOT, geom.v_link(col, 0), anc(0));
  c.add(GateKind::MeasureZ, anc(0), -1, L);
  // V_x = -1 branches are repaired by sigma^x sigma^x on rung 0, which
  // commutes with every other target and flips only the ribbon.
  for (int q : {geom.v_link(0, 0), geom.v_link(0, 1)}) {
    Gate& g = c.add(GateKind::X, q);
    g.cond = L;
    g.cond_value = true;
  }

  // Reset all ancillas so every branch ends in the identical tableau.
  {
    Gate& g = c.add(GateKind::X, anc(0));
    g.cond = L;
    g.cond_value = true;
  }
  for (int col = 1; col < L; ++col) {
    Gate& g = c.add(GateKind::X, anc(col));
    g.cond = col;
    g.cond_value = true;
  }
  c.validate();
  return c;
}

}  // namespace scarlab
