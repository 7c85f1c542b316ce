// bundled.hpp: Ready-made scenario files for the four reference molecules.
//
// Frequency grids and unstated field or coupling directions are choices made
// here; the molecular and cavity parameters are the published ones.

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace qudit {

struct BundledScenario {
    std::string_view name;
    std::string_view summary;
    std::string_view yaml;
};

inline const std::vector<BundledScenario>& bundled_scenarios() {
    static const std::vector<BundledScenario> all = {
        {"toy-nv", "S = 1 NV-like qutrit, |t_c| and phase for M = 0, +1, -1", R"(name: toy-nv
description: S = 1 uniaxial qutrit (NV centre ensemble) read out through transmission peaks
model:
  kind: toy_s1
  d_ghz: 2.87
  g: [2.0, 2.0, 2.0]
cavity:
  omega_ghz: 2.6899
  gamma1_ghz: 4.0e-5
  gamma2_ghz: 4.0e-5
lineshape:
  eta_ghz: 9.4e-3
  n_molecules: 1
coupling:
  # g_x lambda_x sqrt(N) = 19.2 MHz, carried by one effective molecule
  lambda_ghz: [9.6e-3, 0.0, 0.0]
field:
  # below D - Omega, where the phase truth table applies
  xi_z_ghz: 0.1
preparation:
  states: all
task:
  kind: spectrum
  omega_start_ghz: 2.6849
  omega_stop_ghz: 2.6949
  points: 10001
  refine_peaks: true
  peak_step_ghz: 2.0e-6
output:
  prefix: toy-nv
  svg: true
)"},
        {"toy-nv-qnd", "S = 1 commutator [H_S, V~] at the cancelling field", R"(name: toy-nv-qnd
description: QND-violating commutator of the S = 1 model at xi_z = sqrt(D^2 - Omega^2)
model:
  kind: toy_s1
  d_ghz: 2.87
cavity:
  omega_ghz: 2.6899
  gamma1_ghz: 4.0e-5
  gamma2_ghz: 4.0e-5
lineshape:
  eta_ghz: 9.4e-3
coupling:
  lambda_ghz: [9.6e-3, 0.0, 0.0]
field:
  xi_z_ghz: 1.0006687713724256
task:
  kind: qnd
output:
  prefix: toy-nv-qnd
)"},
        {"toy-nv-swcheck", "S = 1 effective Hamiltonian against exact diagonalization", R"(name: toy-nv-swcheck
description: second-order effective levels against exact diagonalization versus field
model:
  kind: toy_s1
  d_ghz: 2.87
cavity:
  omega_ghz: 2.6899
  gamma1_ghz: 4.0e-5
  gamma2_ghz: 4.0e-5
lineshape:
  eta_ghz: 9.4e-3
coupling:
  lambda_ghz: [9.6e-3, 0.0, 0.0]
field:
  sweep:
    direction: [0.0, 0.0, 1.0]
    b_start_t: 0.0
    b_stop_t: 0.05
    points: 101
task:
  kind: sw-check
  n_max: 8
output:
  prefix: toy-nv-swcheck
  svg: true
)"},
        {"toy-nv-optimize", "S = 1 working point along z maximizing shift separation", R"(name: toy-nv-optimize
description: field along z that maximizes the smallest separation between the three shifts
model:
  kind: toy_s1
  d_ghz: 2.87
cavity:
  omega_ghz: 2.6899
  gamma1_ghz: 4.0e-5
  gamma2_ghz: 4.0e-5
lineshape:
  eta_ghz: 9.4e-3
coupling:
  lambda_ghz: [9.6e-3, 0.0, 0.0]
field:
  direction: [0.0, 0.0, 1.0]
  magnitude_t: 0.0
task:
  kind: optimize
  directions: [[0.0, 0.0, 1.0]]
  b_min_t: 0.0
  b_max_t: 0.1
  b_step_t: 0.002
  refine_iterations: 30
output:
  prefix: toy-nv-optimize
)"},
        {"gdw30", "GdW30 S = 7/2 crystal, eight state-dependent peaks", R"(name: gdw30
description: GdW30 (S = 7/2) crystal at b = 0.1475 T along (1, 0.3, 0.3)
model:
  kind: giant_spin
  s: 3.5
  stevens_ghz:
    - {k: 2, q: 0, value: 0.427}    # D / 3 with D = 1.281 GHz
    - {k: 2, q: 2, value: 0.294}    # E
  g: [2.0, 2.0, 2.0]
  zeeman_sign: -1
cavity:
  omega_ghz: 5.0
  gamma1_ghz: 1.0e-6
  gamma2_ghz: 1.0e-6
lineshape:
  eta_ghz: 1.0e-4
  n_molecules: 1.6e14
coupling:
  # single-molecule zero-point field 0.1 nT, transverse to the static field
  b_rms_t: [0.0, 1.0e-10, 0.0]
field:
  # the quoted field vector b (1, 0.3, 0.3), not normalized
  vector_t: [0.1475, 0.04425, 0.04425]
preparation:
  states: all
task:
  kind: spectrum
  omega_start_ghz: 4.985
  omega_stop_ghz: 5.015
  points: 6001
  refine_peaks: true
  peak_step_ghz: 1.0e-6
output:
  prefix: gdw30
  svg: true
)"},
        {"gdw30-broadened", "GdW30 with eta = 0.1 GHz: suppressed, overlapping peaks", R"(name: gdw30-broadened
description: GdW30 with the inhomogeneous broadening of diluted samples
model:
  kind: giant_spin
  s: 3.5
  stevens_ghz:
    - {k: 2, q: 0, value: 0.427}
    - {k: 2, q: 2, value: 0.294}
  g: [2.0, 2.0, 2.0]
  zeeman_sign: -1
cavity:
  omega_ghz: 5.0
  gamma1_ghz: 1.0e-6
  gamma2_ghz: 1.0e-6
lineshape:
  eta_ghz: 0.1
  n_molecules: 1.6e14
coupling:
  b_rms_t: [0.0, 1.0e-10, 0.0]
field:
  vector_t: [0.1475, 0.04425, 0.04425]
preparation:
  states: all
task:
  kind: spectrum
  omega_start_ghz: 4.985
  omega_stop_ghz: 5.015
  points: 6001
  refine_peaks: true
  peak_step_ghz: 1.0e-6
output:
  prefix: gdw30-broadened
  svg: true
)"},
        {"gdw30-optimize", "GdW30 working-point search over three field directions", R"(name: gdw30-optimize
description: GdW30 field magnitude and direction maximizing the smallest shift separation
model:
  kind: giant_spin
  s: 3.5
  stevens_ghz:
    - {k: 2, q: 0, value: 0.427}
    - {k: 2, q: 2, value: 0.294}
  g: [2.0, 2.0, 2.0]
  zeeman_sign: -1
cavity:
  omega_ghz: 5.0
  gamma1_ghz: 1.0e-6
  gamma2_ghz: 1.0e-6
lineshape:
  eta_ghz: 1.0e-4
  n_molecules: 1.6e14
coupling:
  b_rms_t: [0.0, 1.0e-10, 0.0]
field:
  direction: [1.0, 0.3, 0.3]
  magnitude_t: 0.1475
task:
  kind: optimize
  directions: [[1.0, 0.3, 0.3], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]
  b_min_t: 0.0
  b_max_t: 0.3
  b_step_t: 0.005
  refine_iterations: 25
output:
  prefix: gdw30-optimize
)"},
        {"ceer", "[CeEr] dimer transmission spectra at B_z = 0.02 T", R"(name: ceer
description: Er-Ce dimer of effective spins 1/2, field along the Er z axis
model:
  kind: dimer
  s1: 0.5
  s2: 0.5
  g1: [1.8, 3.7, 10.0]     # Er
  g2: [1.0, 1.75, 2.67]    # Ce, rotated by theta in the x-z plane
  theta_deg: 70.0
  j12_k: -0.015
  gj1: 1.2                 # 6/5
  gj2: 0.857142857142857   # 6/7
  zeeman_sign: -1
cavity:
  omega_ghz: 2.45
  gamma1_ghz: 1.0e-6
  gamma2_ghz: 1.0e-6
lineshape:
  eta_ghz: 1.0e-4
  n_molecules: 2.7e14
coupling:
  # single-molecule zero-point field 0.1 nT, transverse to the static field
  b_rms_t: [1.0e-10, 0.0, 0.0]
field:
  vector_t: [0.0, 0.0, 0.02]
preparation:
  states: all
task:
  kind: spectrum
  omega_start_ghz: 2.44
  omega_stop_ghz: 2.46
  points: 4001
  refine_peaks: true
  peak_step_ghz: 1.0e-6
output:
  prefix: ceer
  svg: true
)"},
        {"ceer-sweep", "[CeEr] |t_c(Omega)| per state versus B_z, lossy cavity", R"(name: ceer-sweep
description: single-frequency readout of the Er-Ce dimer versus longitudinal field
model:
  kind: dimer
  s1: 0.5
  s2: 0.5
  g1: [1.8, 3.7, 10.0]
  g2: [1.0, 1.75, 2.67]
  theta_deg: 70.0
  j12_k: -0.015
  gj1: 1.2
  gj2: 0.857142857142857
  zeeman_sign: -1
cavity:
  omega_ghz: 2.45
  gamma1_ghz: 1.0e-4
  gamma2_ghz: 1.0e-4
lineshape:
  eta_ghz: 1.0e-4
  n_molecules: 2.7e14
coupling:
  b_rms_t: [1.0e-10, 0.0, 0.0]
field:
  sweep:
    direction: [0.0, 0.0, 1.0]
    b_start_t: 0.0
    b_stop_t: 0.05
    points: 501
preparation:
  states: all
task:
  kind: field-sweep
output:
  prefix: ceer-sweep
  svg: true
)"},
        {"yb-trensal", "173Yb-trensal logical states |1~> and |4~> at B_z = 0.1 T", R"(name: yb-trensal
description: 173Yb-trensal (S = 1/2, I = 5/2) logical qubit states in the mS = -1/2 multiplet
model:
  kind: electronuclear
  s: 0.5
  i: 2.5
  g_perp: 2.935
  g_par: 4.225
  g_i: -0.02592
  a_par_ghz: -0.897
  a_perp_ghz: -0.615
  p_ghz: -0.066
  zeeman_sign: 1
cavity:
  omega_ghz: 6.0
  gamma1_ghz: 5.0e-7       # total gamma = 1e-3 MHz
  gamma2_ghz: 5.0e-7
lineshape:
  eta_ghz: 0.012
  n_molecules: 1
coupling:
  # collective lambda_S^x = 20 MHz; lambda_I follows through mu_N / mu_B
  lambda_ghz: [0.02, 0.0, 0.0]
field:
  vector_t: [0.0, 0.0, 0.1]
preparation:
  # [mS, mI] of |1~> and |4~>
  product_states: [[-0.5, -1.5], [-0.5, 1.5]]
task:
  kind: spectrum
  omega_start_ghz: 5.998
  omega_stop_ghz: 6.002
  points: 8001
  refine_peaks: true
  peak_step_ghz: 5.0e-7
output:
  prefix: yb-trensal
  svg: true
)"},
    };
    return all;
}

inline const BundledScenario* find_bundled(std::string_view name) {
    for (const auto& s : bundled_scenarios())
        if (s.name == name) return &s;
    return nullptr;
}

} // namespace qudit
