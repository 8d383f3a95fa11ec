#pragma once

#include <cstdint>
#include <string>

#include "scarlab/io.hpp"

namespace scarlab {

// One fully serializable run description; a run is reproducible from its
// RunConfig alone.  Fields irrelevant to a command keep their defaults and
// are still echoed, so every output names the exact configuration.
struct RunConfig {
  std::string command;       // spectrum | echo | entanglement-dynamics |
                             // observables | verify | basis | scar-table |
                             // circuit
  std::string side = "lgt";  // lgt | ising
  int L = 3;
  int k = 2;
  double g = 0.9;
  double epsilon = 0.0;
  int epsilon_plaquette = 1;
  int vx = +1;
  int vy = +1;
  int cut_a = 0;  // 0 = default half cut
  int cut_b = 0;
  double t0 = 0.0;  // time grid t0:t1:nt (inclusive endpoints)
  double t1 = 0.0;
  int nt = 0;
  int layers = 0;                    // random-circuit depth
  std::string initial = "scar";      // scar | thermal
  int alpha = 1;                     // scar label: family (odd L) or
                                     // which (even L)
  int kidx = 1;                      // scar label: defect column, odd L
  std::string route = "";           // echo/entanglement-dynamics:
                                     // hamiltonian | subspace | circuit;
                                     // circuit command: resolve | local | mcm
  uint64_t seed = 1;
  std::string out;                   // output file; empty = payload only
  std::string format = "csv";        // csv | json (tabular commands)

  std::string to_json() const;
  // Unknown keys throw std::invalid_argument; absent keys keep defaults.
  static RunConfig from_json(const std::string& text);
};

struct CommandResult {
  int exit_code = 0;  // 0 pass, 1 verification failure
  std::string payload;
};

// Dispatches cfg.command, writes cfg.out when set, and returns the payload.
// Usage errors (unknown command, invalid ranges, wrong side) throw
// std::invalid_argument; callers map that to exit code 2.
CommandResult run_command(const RunConfig& cfg);

}  // namespace scarlab
